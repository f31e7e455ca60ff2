//! Navigation and enumeration of the Calkin-Wilf tree.
//!
//! The root is `1/1` and `a/b` has children `a/(a+b)` and `(a+b)/b`. Levels
//! are 1-based (the root is level 1) and so are positions within a level; a
//! node at level `n`, position `j` has breadth-first rank `2^(n-1) + j - 1`,
//! whose binary digits after the leading one spell the path (`0 = L`,
//! `1 = R`).

mod level;
mod path;
mod stats;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::Fraction;
use crate::error::{Error, Result};

pub use level::{level_iter, LevelIter};
pub use path::{Direction, Path, Run};
pub use stats::{level_stats, streaming_level_stats, LevelStats, StreamingLevelStats};

/// Longest path, in steps, for which a rank is materialized.
pub const MAX_RANK_BITS: u64 = 1 << 28;

/// Tree coordinates of a node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeAddress {
    /// Root is level 1.
    pub level: u64,
    /// In `1..=2^(level-1)`.
    pub position: BigUint,
}

pub fn children(r: &Fraction) -> (Fraction, Fraction) {
    let (a, b) = (r.num(), r.den());
    let s = a + b;
    (
        Fraction::from_coprime(a.clone(), s.clone()),
        Fraction::from_coprime(s, b.clone()),
    )
}

pub fn left_child(r: &Fraction) -> Fraction {
    Fraction::from_coprime(r.num().clone(), r.num() + r.den())
}

pub fn right_child(r: &Fraction) -> Fraction {
    Fraction::from_coprime(r.num() + r.den(), r.den().clone())
}

pub fn child(r: &Fraction, dir: Direction) -> Fraction {
    match dir {
        Direction::Left => left_child(r),
        Direction::Right => right_child(r),
    }
}

pub fn parent(r: &Fraction) -> Result<Fraction> {
    let (a, b) = (r.num(), r.den());
    if a < b {
        // r is a left child
        Ok(Fraction::from_coprime(a.clone(), b - a))
    } else if a > b {
        Ok(Fraction::from_coprime(a - b, b.clone()))
    } else {
        // reduced with a == b means r == 1/1
        Err(Error::RootHasNoParent)
    }
}

/// Root-to-node path, found by batched parent iteration.
pub fn path_of(r: &Fraction) -> Path {
    let (mut a, mut b) = (r.num().clone(), r.den().clone());
    let mut upward: Vec<(Direction, BigUint)> = Vec::new();
    let one = BigUint::one();
    while a != b {
        if a > b {
            // k right-steps bring a into 1..=b
            let k = (&a - &one) / &b;
            a -= &k * &b;
            upward.push((Direction::Right, k));
        } else {
            let k = (&b - &one) / &a;
            b -= &k * &a;
            upward.push((Direction::Left, k));
        }
    }
    let mut p = Path::root();
    for (dir, k) in upward.into_iter().rev() {
        p.push(dir, k);
    }
    p
}

pub fn fraction_at(path: &Path) -> Fraction {
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    for run in path.runs() {
        match run.dir {
            Direction::Right => a += &run.count * &b,
            Direction::Left => b += &run.count * &a,
        }
    }
    Fraction::from_coprime(a, b)
}

/// Level of `r`: path length plus one.
pub fn level_of(r: &Fraction) -> BigUint {
    path_of(r).len() + 1u32
}

pub fn rank_of_path(path: &Path) -> Result<BigUint> {
    let len = path.len();
    if len > BigUint::from(MAX_RANK_BITS) {
        return Err(Error::TooLarge(format!(
            "path of {len} steps has no materializable rank"
        )));
    }
    let mut rank = BigUint::one();
    for run in path.runs() {
        let k = run.count.to_u64().expect("bounded by MAX_RANK_BITS");
        rank <<= k;
        if run.dir == Direction::Right {
            rank += (BigUint::one() << k) - 1u32;
        }
    }
    Ok(rank)
}

/// 1-based breadth-first index.
pub fn rank_of(r: &Fraction) -> Result<BigUint> {
    rank_of_path(&path_of(r))
}

pub fn path_of_rank(k: &BigUint) -> Result<Path> {
    if k.is_zero() {
        return Err(Error::domain("ranks start at 1"));
    }
    let bits = k.bits() - 1;
    let mut p = Path::root();
    for i in (0..bits).rev() {
        let dir = if k.bit(i) {
            Direction::Right
        } else {
            Direction::Left
        };
        p.push(dir, 1u32);
    }
    Ok(p)
}

pub fn unrank(k: &BigUint) -> Result<Fraction> {
    path_of_rank(k).map(|p| fraction_at(&p))
}

pub fn address_of(r: &Fraction) -> Result<NodeAddress> {
    let rank = rank_of(r)?;
    let level = rank.bits();
    let position = rank - (BigUint::one() << (level - 1)) + 1u32;
    Ok(NodeAddress { level, position })
}

pub fn fraction_at_address(addr: &NodeAddress) -> Result<Fraction> {
    if addr.level == 0 {
        return Err(Error::domain("levels start at 1"));
    }
    let width = BigUint::one() << (addr.level - 1);
    if addr.position.is_zero() || addr.position > width {
        return Err(Error::domain(format!(
            "position {} outside 1..={width} at level {}",
            addr.position, addr.level
        )));
    }
    unrank(&(width + &addr.position - 1u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Direction::*;

    fn frac(p: u64, q: u64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    /// One parent step at a time; independent of the batched walk.
    fn path_by_single_steps(r: &Fraction) -> Path {
        let mut steps = Vec::new();
        let mut cur = r.clone();
        while let Ok(p) = parent(&cur) {
            steps.push(if cur < p { Left } else { Right });
            cur = p;
        }
        steps.reverse();
        Path::from_steps(steps)
    }

    #[test]
    fn children_examples() {
        assert_eq!(children(&frac(1, 1)), (frac(1, 2), frac(2, 1)));
        assert_eq!(children(&frac(2, 3)), (frac(2, 5), frac(5, 3)));
        assert_eq!(children(&frac(5, 3)), (frac(5, 8), frac(8, 3)));
    }

    #[test]
    fn parent_examples() {
        assert_eq!(parent(&frac(1, 2)).unwrap(), frac(1, 1));
        assert_eq!(parent(&frac(7, 5)).unwrap(), frac(2, 5));
        assert_eq!(parent(&frac(8, 3)).unwrap(), frac(5, 3));
        assert_eq!(parent(&frac(1, 1)), Err(Error::RootHasNoParent));
    }

    #[test]
    fn path_examples() {
        assert!(path_of(&frac(1, 1)).is_root());
        assert_eq!(
            path_of(&frac(5, 8)),
            Path::from_steps([Right, Left, Right, Left])
        );
        let p = path_of(&frac(7, 5));
        assert_eq!(p, Path::from_steps([Right, Left, Left, Right]));
        assert_eq!(p.to_string(), "R L^2 R");
        assert_eq!(fraction_at(&Path::from_steps([Left, Left])), frac(1, 3));
        assert_eq!(fraction_at(&Path::from_steps([Right, Left])), frac(2, 3));
        assert_eq!(fraction_at(&Path::root()), frac(1, 1));
    }

    #[test]
    fn batched_walk_matches_single_steps() {
        for p in 1..60u64 {
            for q in 1..60u64 {
                let Ok(r) = Fraction::new(p, q) else { continue };
                if r.num() != &BigUint::from(p) {
                    continue;
                }
                assert_eq!(path_of(&r), path_by_single_steps(&r), "{r}");
                assert_eq!(fraction_at(&path_of(&r)), r);
            }
        }
    }

    #[test]
    fn huge_runs_stay_cheap() {
        let big: BigUint = BigUint::from(10u32).pow(30);
        let r = Fraction::integer(big.clone()).unwrap();
        let p = path_of(&r);
        assert_eq!(p.runs().len(), 1);
        assert_eq!(p.len(), &big - 1u32);
        assert_eq!(fraction_at(&p), r);
        assert!(matches!(rank_of(&r), Err(Error::TooLarge(_))));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(unrank(&6u32.into()).unwrap(), frac(2, 3));
        assert_eq!(unrank(&11u32.into()).unwrap(), frac(5, 2));
        assert_eq!(rank_of(&frac(1, 1)).unwrap(), BigUint::one());
        assert!(matches!(unrank(&BigUint::zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn address_roundtrip() {
        let addr = address_of(&frac(5, 2)).unwrap();
        assert_eq!(addr.level, 4);
        assert_eq!(addr.position, BigUint::from(4u32));
        assert_eq!(fraction_at_address(&addr).unwrap(), frac(5, 2));
        let bad = NodeAddress {
            level: 3,
            position: 5u32.into(),
        };
        assert!(fraction_at_address(&bad).is_err());
    }
}
