//! Left and right diagonals of the tree.
//!
//! The `n`-th left diagonal is column `n` of the level matrix: its `j`-th
//! element sits at level `ceil(log2 n) + j`, position `n`. Every diagonal is an
//! affine family `j -> (aj + b)/(cj + d)`; `L1 = 1/j` and `L2 = (j+1)/j` are
//! seeded and `L_m` has children `L_{2m-1}` (left) and `L_{2m}` (right) for
//! `m >= 2`, so the coefficients follow the tree's own child rule.

use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Fraction;
use crate::error::{Error, Result};
use crate::tree::LevelIter;

/// `j -> (a j + b) / (c j + d)`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagonal {
    pub index: u64,
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
    pub d: BigUint,
}

impl Diagonal {
    fn seed(index: u64, a: u32, b: u32, c: u32, d: u32) -> Self {
        Self {
            index,
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    fn left_child(&self, index: u64) -> Self {
        Self {
            index,
            a: self.a.clone(),
            b: self.b.clone(),
            c: &self.a + &self.c,
            d: &self.b + &self.d,
        }
    }

    fn right_child(&self, index: u64) -> Self {
        Self {
            index,
            a: &self.a + &self.c,
            b: &self.b + &self.d,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    /// Element `j >= 1`.
    pub fn element(&self, j: &BigUint) -> Result<Fraction> {
        if j.is_zero() {
            return Err(Error::domain("diagonal elements start at j = 1"));
        }
        let num = &self.a * j + &self.b;
        let den = &self.c * j + &self.d;
        Ok(Fraction::from_parts(num, den))
    }

    /// `a d - b c`
    pub fn determinant(&self) -> BigInt {
        BigInt::from(&self.a * &self.d) - BigInt::from(&self.b * &self.c)
    }

    /// Limit `a / c` of the elements as `j` grows; `None` when it is 0.
    pub fn limit(&self) -> Option<Fraction> {
        if self.a.is_zero() {
            None
        } else {
            Some(Fraction::from_parts(self.a.clone(), self.c.clone()))
        }
    }

    /// `(3j+2)/(2j+1)`, `1/j`, `(j+1)/j`, ...
    pub fn label(&self) -> String {
        let (num, num_compound) = linear(&self.a, &self.b);
        let (den, den_compound) = linear(&self.c, &self.d);
        let wrap = |s: String, compound: bool| if compound { format!("({s})") } else { s };
        format!("{}/{}", wrap(num, num_compound), wrap(den, den_compound))
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

fn linear(coef: &BigUint, constant: &BigUint) -> (String, bool) {
    let var = if coef.is_one() {
        "j".to_string()
    } else {
        format!("{coef}j")
    };
    match (coef.is_zero(), constant.is_zero()) {
        (true, _) => (constant.to_string(), false),
        (false, true) => (var, false),
        (false, false) => (format!("{var}+{constant}"), true),
    }
}

/// The `n`-th left diagonal, built by the child recurrence.
pub fn diagonal(n: u64) -> Result<Diagonal> {
    match n {
        0 => Err(Error::domain("diagonals are indexed from 1")),
        1 => Ok(Diagonal::seed(1, 0, 1, 1, 0)),
        _ => {
            let mut chain = Vec::new();
            let mut m = n;
            while m > 2 {
                chain.push(m);
                m = m.div_ceil(2);
            }
            let mut cur = Diagonal::seed(2, 1, 1, 1, 0);
            for &idx in chain.iter().rev() {
                cur = if idx % 2 == 1 {
                    cur.left_child(idx)
                } else {
                    cur.right_child(idx)
                };
            }
            Ok(cur)
        }
    }
}

pub fn diagonal_element(n: u64, j: &BigUint) -> Result<Fraction> {
    diagonal(n)?.element(j)
}

/// Right diagonals are the elementwise reciprocals of the left ones.
pub fn right_diagonal_element(n: u64, j: &BigUint) -> Result<Fraction> {
    diagonal_element(n, j).map(|f| f.recip())
}

/// Numerators of the tree in breadth-first order: `1, 1, 2, 1, 3, 2, 3, ...`.
///
/// Values are memoized; the cache is shared between threads and extended
/// under a write lock.
#[derive(Debug, Default)]
pub struct SternSequence {
    cache: RwLock<Vec<BigUint>>,
}

impl SternSequence {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide shared instance.
    pub fn global() -> &'static SternSequence {
        static GLOBAL: OnceLock<SternSequence> = OnceLock::new();
        GLOBAL.get_or_init(SternSequence::new)
    }

    /// `b_m` for `m >= 0`.
    pub fn get(&self, m: u64) -> BigUint {
        let idx = usize::try_from(m).expect("index fits in memory");
        {
            let cache = self.cache.read().expect("stern cache poisoned");
            if let Some(v) = cache.get(idx) {
                return v.clone();
            }
        }
        let mut cache = self.cache.write().expect("stern cache poisoned");
        Self::extend(&mut cache, m);
        cache[idx].clone()
    }

    pub fn cached_len(&self) -> usize {
        self.cache.read().expect("stern cache poisoned").len()
    }

    /// Fills `cache` through index `m` by walking tree levels.
    fn extend(cache: &mut Vec<BigUint>, m: u64) {
        while (cache.len() as u64) <= m {
            let rank = cache.len() as u64 + 1;
            let level = 64 - rank.leading_zeros();
            let start = 1u64 << (level - 1);
            let first = rank - start + 1;
            let last = start.min(m + 2 - start);
            for f in LevelIter::range(level, first, last) {
                cache.push(f.into_parts().0);
            }
        }
    }
}

/// `b_m`, the `m`-th (0-based) breadth-first numerator.
pub fn stern(m: u64) -> BigUint {
    SternSequence::global().get(m)
}

/// `(b_{n-1}, b_n)`: the unreduced coefficient pair `(a, c)` of `L_{n+1}`.
pub fn coefficient_ratio(n: u64) -> Result<(BigUint, BigUint)> {
    if n == 0 {
        return Err(Error::domain("coefficient_ratio needs n >= 1"));
    }
    Ok((stern(n - 1), stern(n)))
}

/// Which Stern ratio supplies the constant pair `(b, d)` of `L_{n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantIndex {
    /// `(b, d) = (b_{m-1}, b_m)`.
    Index(u64),
    /// `n = 2^(L+1) - 1`: the index formula yields a half-integer and the
    /// constant term is `1/0`, i.e. `(b, d) = (1, 0)`.
    Pole,
}

/// Evaluates the constant-index formula for `L_{n+1}`.
///
/// With `L = floor(log2 n)`, `k` is the largest `x >= 0` with
/// `n - Σ_{i=0..=x} 2^(L-i) >= 0`, and `m = n + 2^(L-k-1) - Σ_{i=0..=k} 2^(L-i)`.
pub fn constant_index(n: u64) -> Result<ConstantIndex> {
    if n == 0 {
        return Err(Error::domain("constant_index needs n >= 1"));
    }
    let log = i64::from(63 - n.leading_zeros());
    let pow = |e: i64| -> i128 { 1i128 << e };
    let partial = |x: i64| -> i128 { (0..=x).map(|i| pow(log - i)).sum() };
    let n_wide = i128::from(n);
    // The max is at most `log`: beyond it the bound 2^(L-x) >= 2^(L+1) - n >= 1 fails.
    let mut k = 0;
    while k < log && n_wide - partial(k + 1) >= 0 {
        k += 1;
    }
    let exponent = log - k - 1;
    if exponent < 0 {
        return Ok(ConstantIndex::Pole);
    }
    let m = n_wide + pow(exponent) - partial(k);
    Ok(ConstantIndex::Index(
        u64::try_from(m).expect("m lies in 1..=n"),
    ))
}

/// `(b, d)` of `L_{n+1}` as predicted by [`constant_index`].
pub fn constant_terms(n: u64) -> Result<(BigUint, BigUint)> {
    Ok(match constant_index(n)? {
        ConstantIndex::Index(m) => (stern(m - 1), stern(m)),
        ConstantIndex::Pole => (BigUint::one(), BigUint::zero()),
    })
}

/// The `j >= 1` with `diagonal_element(n, j) = r`, if any.
pub fn solve_membership(r: &Fraction, n: u64) -> Result<Option<BigUint>> {
    let diag = diagonal(n)?;
    let (p, q) = (BigInt::from(r.num().clone()), BigInt::from(r.den().clone()));
    let [a, b, c, d] = [&diag.a, &diag.b, &diag.c, &diag.d].map(|x| BigInt::from(x.clone()));
    // q (a j + b) = p (c j + d)  =>  j (q a - p c) = p d - q b
    let coef = &q * &a - &p * &c;
    let rhs = &p * &d - &q * &b;
    if coef.is_zero() {
        // ad - bc = -1 rules out a constant family, so no j solves this.
        return Ok(None);
    }
    let (j, rem) = rhs.div_rem(&coef);
    if !rem.is_zero() || j.sign() != Sign::Plus {
        return Ok(None);
    }
    let j = j.into_parts().1;
    debug_assert_eq!(&diag.element(&j)?, r);
    Ok(Some(j))
}

/// Limit of `L_n` as `j` grows, `None` for `L1` whose limit is 0.
pub fn diagonal_limit(n: u64) -> Result<Option<Fraction>> {
    diagonal(n).map(|d| d.limit())
}

/// Index of the `i`-th diagonal in the family covering `(n-1, n]`:
/// `2^n i - 2^(n-1)`.
pub fn coverage_family_index(n: u32, i: u64) -> Option<u64> {
    if n == 0 || i == 0 {
        return None;
    }
    let step = 1u64.checked_shl(n)?;
    step.checked_mul(i)?.checked_sub(step / 2)
}
