use std::iter::FusedIterator;

use crate::arith::Fraction;

use super::{left_child, right_child};

/// Deepest level whose positions fit the iterator's `u64` counter.
pub const MAX_LEVEL: u32 = 64;

/// Streams one tree level left to right.
///
/// The iterator keeps the fractions along the current root-to-leaf path and
/// advances like a binary counter: moving to the next position rebuilds only
/// the suffix below the lowest flipped bit, so the amortized cost per element
/// is a constant number of child steps and memory is `O(level)`.
#[derive(Debug, Clone)]
pub struct LevelIter {
    level: u32,
    /// `spine[d]` is the ancestor at depth `d`; the last entry is the current node.
    spine: Vec<Fraction>,
    /// 0-based position of the current node.
    index: u64,
    /// One past the last 0-based position to yield.
    end: u64,
}

/// All `2^(n-1)` fractions of level `n`, in order.
///
/// # Panics
///
/// If `n` is 0 or greater than 64.
pub fn level_iter(n: u32) -> LevelIter {
    LevelIter::new(n)
}

impl LevelIter {
    pub fn new(level: u32) -> Self {
        assert!(
            (1..=MAX_LEVEL).contains(&level),
            "level {level} out of range"
        );
        Self::range(level, 1, width(level))
    }

    /// Positions `first..=last` (1-based) of `level`.
    pub fn range(level: u32, first: u64, last: u64) -> Self {
        assert!(
            (1..=MAX_LEVEL).contains(&level),
            "level {level} out of range"
        );
        assert!(first >= 1 && last <= width(level), "position out of range");
        let index = first - 1;
        let mut it = Self {
            level,
            spine: Vec::with_capacity(level as usize),
            index,
            end: last,
        };
        if first <= last {
            it.spine.push(Fraction::one());
            it.extend_from(0);
        }
        it
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// 1-based position of the element `next` would yield.
    pub fn next_position(&self) -> u64 {
        self.index + 1
    }

    /// Rebuilds `spine[depth + 1..]` from `spine[depth]` according to the
    /// bits of `index`.
    fn extend_from(&mut self, depth: usize) {
        let steps = self.level as usize - 1;
        self.spine.truncate(depth + 1);
        for d in depth..steps {
            let bit = (self.index >> (steps - 1 - d)) & 1;
            let cur = &self.spine[d];
            let next = if bit == 1 {
                right_child(cur)
            } else {
                left_child(cur)
            };
            self.spine.push(next);
        }
    }
}

fn width(level: u32) -> u64 {
    1u64 << (level - 1)
}

impl Iterator for LevelIter {
    type Item = Fraction;

    fn next(&mut self) -> Option<Fraction> {
        if self.index >= self.end {
            return None;
        }
        let out = self.spine.last().expect("nonempty while in range").clone();
        self.index += 1;
        if self.index < self.end {
            // The lowest set bit of the new index is the deepest step that
            // changed; everything above it is shared with the previous node.
            let changed = self.index.trailing_zeros() as usize;
            let steps = self.level as usize - 1;
            self.extend_from(steps - 1 - changed);
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.end - self.index).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

impl ExactSizeIterator for LevelIter {}

impl FusedIterator for LevelIter {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{fraction_at, path_of_rank};
    use num_bigint::BigUint;

    fn row(n: u32) -> String {
        level_iter(n)
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    #[test]
    fn small_levels() {
        assert_eq!(row(1), "1/1");
        assert_eq!(row(3), "1/3 3/2 2/3 3/1");
        assert_eq!(row(4), "1/4 4/3 3/5 5/2 2/5 5/3 3/4 4/1");
        assert_eq!(level_iter(4).len(), 8);
    }

    #[test]
    fn matches_unrank_oracle() {
        for n in 1..=11u32 {
            let base = 1u64 << (n - 1);
            for (i, f) in level_iter(n).enumerate() {
                let rank = BigUint::from(base + i as u64);
                assert_eq!(f, fraction_at(&path_of_rank(&rank).unwrap()));
            }
        }
    }

    #[test]
    fn ranges_partition_levels() {
        let full: Vec<_> = level_iter(9).collect();
        let mut pieces = Vec::new();
        for (first, last) in [(1u64, 1u64), (2, 100), (101, 101), (102, 256)] {
            let it = LevelIter::range(9, first, last);
            assert_eq!(it.len() as u64, last - first + 1);
            pieces.extend(it);
        }
        assert_eq!(pieces, full);
        assert_eq!(LevelIter::range(9, 5, 4).count(), 0);
    }

    #[test]
    #[should_panic]
    fn level_zero_panics() {
        let _ = level_iter(0);
    }
}
