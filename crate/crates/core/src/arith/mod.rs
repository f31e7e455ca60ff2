//! Exact positive-rational and dyadic arithmetic.
//!
//! Level-wide aggregates over the tree involve hundreds of thousands of terms
//! whose exact sums and products run to thousands of digits. The helpers here
//! keep those computations balanced: [`BalancedFold`] combines a stream
//! pairwise like a binary counter, and [`DenominatorSum`] buckets terms by
//! denominator so only distinct denominators ever meet in a gcd.

mod dyadic;
mod fraction;

use std::borrow::Borrow;
use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

pub use dyadic::Dyadic;
pub use fraction::Fraction;

use crate::error::{Error, Result};

/// Streaming pairwise reduction.
///
/// Holds at most `log2(n) + 1` partial results. Partials are combined
/// left-to-right, so the result equals `items.reduce(combine)` for any
/// associative `combine`.
pub struct BalancedFold<T, F> {
    stack: Vec<(u32, T)>,
    combine: F,
}

impl<T, F: FnMut(T, T) -> T> BalancedFold<T, F> {
    pub fn new(combine: F) -> Self {
        Self {
            stack: Vec::new(),
            combine,
        }
    }

    pub fn push(&mut self, item: T) {
        let mut rank = 0u32;
        let mut acc = item;
        while let Some((r, _)) = self.stack.last() {
            if *r != rank {
                break;
            }
            let (_, left) = self.stack.pop().expect("checked above");
            acc = (self.combine)(left, acc);
            rank += 1;
        }
        self.stack.push((rank, acc));
    }

    pub fn finish(mut self) -> Option<T> {
        let mut acc: Option<T> = None;
        while let Some((_, left)) = self.stack.pop() {
            acc = Some(match acc {
                None => left,
                Some(right) => (self.combine)(left, right),
            });
        }
        acc
    }
}

/// Exact product of a stream of integers, computed with a balanced tree.
pub fn product_balanced<I>(items: I) -> BigUint
where
    I: IntoIterator<Item = BigUint>,
{
    let mut fold = BalancedFold::new(|a: BigUint, b: BigUint| a * b);
    for x in items {
        fold.push(x);
    }
    fold.finish().unwrap_or_else(BigUint::one)
}

/// Streaming exact sum of fractions that groups numerators by denominator.
#[derive(Default)]
pub struct DenominatorSum {
    buckets: HashMap<BigUint, BigUint>,
    count: u64,
}

impl DenominatorSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, f: &Fraction) {
        self.count += 1;
        *self.buckets.entry(f.den().clone()).or_default() += f.num();
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// `None` when nothing was pushed.
    pub fn finish(self) -> Option<Fraction> {
        let mut entries: Vec<_> = self.buckets.into_iter().collect();
        // Sorting keeps merge order, and therefore running time, deterministic.
        entries.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut fold = BalancedFold::new(|a: Fraction, b: Fraction| &a + &b);
        for (den, num) in entries {
            fold.push(Fraction::from_parts(num, den));
        }
        fold.finish()
    }
}

/// Exact sum of a nonempty sequence of fractions.
pub fn fraction_sum_exact<I>(items: I) -> Result<Fraction>
where
    I: IntoIterator,
    I::Item: Borrow<Fraction>,
{
    let mut sum = DenominatorSum::new();
    for f in items {
        sum.push(f.borrow());
    }
    sum.finish()
        .ok_or_else(|| Error::domain("sum of an empty sequence"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(p: u64, q: u64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    #[test]
    fn sum_examples() {
        assert_eq!(
            fraction_sum_exact([frac(1, 2), frac(2, 1)]).unwrap(),
            frac(5, 2)
        );
        assert_eq!(fraction_sum_exact([frac(1, 1)]).unwrap(), frac(1, 1));
        let level3 = [frac(1, 3), frac(3, 2), frac(2, 3), frac(3, 1)];
        assert_eq!(fraction_sum_exact(&level3).unwrap(), frac(11, 2));
    }

    #[test]
    fn empty_sum_is_domain_error() {
        assert!(matches!(
            fraction_sum_exact(Vec::<Fraction>::new()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn balanced_fold_preserves_order() {
        for n in 0..40usize {
            let mut fold = BalancedFold::new(|a: String, b: String| format!("{a}{b}"));
            let expected: String = (0..n).map(|i| char::from(b'a' + (i % 26) as u8)).collect();
            for c in expected.chars() {
                fold.push(c.to_string());
            }
            assert_eq!(fold.finish().unwrap_or_default(), expected);
        }
    }

    #[test]
    fn balanced_product_matches_naive() {
        let xs: Vec<BigUint> = (1u32..=60).map(BigUint::from).collect();
        let naive = xs.iter().fold(BigUint::one(), |a, b| a * b);
        assert_eq!(product_balanced(xs), naive);
        assert_eq!(product_balanced(Vec::new()), BigUint::one());
    }

    #[test]
    fn denominator_sum_matches_pairwise() {
        let xs: Vec<Fraction> = (1u64..200).map(|k| frac(k % 7 + 1, k % 11 + 1)).collect();
        let naive = xs.iter().skip(1).fold(xs[0].clone(), |a, b| &a + b);
        assert_eq!(fraction_sum_exact(&xs).unwrap(), naive);
    }
}
