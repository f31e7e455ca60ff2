//! Finite simple continued fractions and their correspondence with tree
//! paths.
//!
//! The canonical form ends in a term of at least 2 whenever there is more than
//! one term, which makes the Euclidean expansion of a positive rational
//! unique. Under that convention a node's path, read from the node back up to
//! the root, is `R^a0 L^a1 R^a2 ...` with the final exponent decremented by
//! one.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Fraction;
use crate::error::{Error, Result};
use crate::tree::{Direction, Path};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    terms: Vec<BigUint>,
}

impl ContinuedFraction {
    /// Accepts any term list denoting a positive rational: at least one term,
    /// partial denominators `a1..` at least 1, and not the lone `[0]`.
    pub fn new(terms: Vec<BigUint>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::domain("continued fraction with no terms"));
        }
        if let Some(i) = terms.iter().skip(1).position(Zero::is_zero) {
            return Err(Error::domain(format!(
                "partial denominator a{} must be at least 1",
                i + 1
            )));
        }
        if terms.len() == 1 && terms[0].is_zero() {
            return Err(Error::domain("[0] is not a positive rational"));
        }
        Ok(Self { terms })
    }

    pub fn from_u64s(terms: &[u64]) -> Result<Self> {
        Self::new(terms.iter().map(|&t| BigUint::from(t)).collect())
    }

    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<BigUint> {
        self.terms
    }

    /// `Σ a_i`
    pub fn digit_sum(&self) -> BigUint {
        self.terms.iter().sum()
    }

    pub fn is_canonical(&self) -> bool {
        match self.terms.len() {
            1 => true,
            _ => self.terms.last().is_some_and(|t| *t >= BigUint::from(2u32)),
        }
    }

    /// Folds a trailing `.., a, 1]` into `.., a + 1]`.
    pub fn canonical(&self) -> Self {
        let mut terms = self.terms.clone();
        if terms.len() >= 2 && terms.last().is_some_and(One::is_one) {
            terms.pop();
            *terms.last_mut().expect("len >= 1") += 1u32;
        }
        Self { terms }
    }

    /// The expansion of `1/r`: prepend a zero, or drop a leading one.
    pub fn reciprocal(&self) -> Self {
        let mut terms = self.terms.clone();
        if terms[0].is_zero() {
            terms.remove(0);
        } else {
            terms.insert(0, BigUint::zero());
        }
        Self { terms }
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.terms[0])?;
        for (i, t) in self.terms.iter().enumerate().skip(1) {
            let sep = if i == 1 { "; " } else { ", " };
            write!(f, "{sep}{t}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `[a0; a1, a2, ...]`. The brackets are optional and `,` is accepted
/// in place of `;`.
impl FromStr for ContinuedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix('[').unwrap_or(body);
        let body = body.strip_suffix(']').unwrap_or(body);
        let terms = body
            .split([';', ','])
            .map(|t| {
                let t = t.trim();
                let v: BigInt = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid term `{t}` in `{s}`")))?;
                if v.is_negative() {
                    return Err(Error::domain(format!("negative term {v} in `{s}`")));
                }
                Ok(v.into_parts().1)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(terms)
    }
}

/// Canonical expansion by the Euclidean algorithm.
pub fn to_cf(r: &Fraction) -> ContinuedFraction {
    let (mut p, mut q) = (r.num().clone(), r.den().clone());
    let mut terms = Vec::new();
    while !q.is_zero() {
        let (quot, rem) = p.div_rem(&q);
        terms.push(quot);
        p = q;
        q = rem;
    }
    ContinuedFraction { terms }
}

/// Exact back-substitution; aliases evaluate to the same value.
pub fn from_cf(cf: &ContinuedFraction) -> Fraction {
    let mut terms = cf.terms.iter().rev();
    let mut p = terms.next().expect("nonempty").clone();
    let mut q = BigUint::one();
    for a in terms {
        // a + q/p = (a*p + q)/p; stays coprime
        let next = a * &p + &q;
        q = p;
        p = next;
    }
    Fraction::from_coprime(p, q)
}

/// Root-to-node path of the node whose canonical expansion is `cf`.
pub fn cf_to_path(cf: &ContinuedFraction) -> Result<Path> {
    if !cf.is_canonical() {
        return Err(Error::NonCanonical(cf.to_string()));
    }
    let last = cf.terms.len() - 1;
    // node-to-root reading: R^a0 L^a1 R^a2 ... with the last exponent minus one
    let mut upward: Vec<(Direction, BigUint)> = Vec::with_capacity(cf.terms.len());
    let mut dir = Direction::Right;
    for (i, a) in cf.terms.iter().enumerate() {
        let count = if i == last { a - 1u32 } else { a.clone() };
        upward.push((dir, count));
        dir = dir.flip();
    }
    let mut path = Path::root();
    for (dir, count) in upward.into_iter().rev() {
        path.push(dir, count);
    }
    Ok(path)
}

pub fn path_to_cf(path: &Path) -> ContinuedFraction {
    let upward = path.reversed();
    let mut terms: Vec<BigUint> = Vec::with_capacity(upward.runs().len() + 1);
    let starts_left = upward
        .runs()
        .first()
        .is_none_or(|r| r.dir == Direction::Left);
    if starts_left {
        terms.push(BigUint::zero());
    }
    terms.extend(upward.runs().iter().map(|r| r.count.clone()));
    *terms.last_mut().expect("at least one term") += 1u32;
    ContinuedFraction { terms }
}
