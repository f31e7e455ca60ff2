use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A positive rational number in lowest terms.
///
/// Every constructor reduces, so two equal values always have identical
/// numerator and denominator and derived `Eq`/`Hash` agree with numeric
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FractionRepr", into = "FractionRepr")]
pub struct Fraction {
    num: BigUint,
    den: BigUint,
}

impl Fraction {
    /// Builds the reduced fraction `num/den`. Both parts must be positive.
    pub fn new<N: Into<BigInt>, D: Into<BigInt>>(num: N, den: D) -> Result<Self> {
        let (num, den) = (num.into(), den.into());
        match (num.sign(), den.sign()) {
            (Sign::Plus, Sign::Plus) => {
                Ok(Self::from_parts(num.into_parts().1, den.into_parts().1))
            }
            _ => Err(Error::domain(format!(
                "fraction parts must be positive, got {num}/{den}"
            ))),
        }
    }

    /// Reduces `num/den`. Panics on a zero part; callers guarantee positivity.
    pub(crate) fn from_parts(num: BigUint, den: BigUint) -> Self {
        assert!(!num.is_zero() && !den.is_zero(), "zero fraction part");
        if num == den {
            return Self::one();
        }
        if num.is_one() || den.is_one() {
            return Self { num, den };
        }
        let g = num.gcd(&den);
        if g.is_one() {
            Self { num, den }
        } else {
            Self {
                num: num / &g,
                den: den / &g,
            }
        }
    }

    /// Wraps parts already known to be coprime and positive.
    pub(crate) fn from_coprime(num: BigUint, den: BigUint) -> Self {
        debug_assert!(!num.is_zero() && !den.is_zero());
        debug_assert!(num.gcd(&den).is_one(), "{num}/{den} not reduced");
        Self { num, den }
    }

    pub fn one() -> Self {
        Self {
            num: BigUint::one(),
            den: BigUint::one(),
        }
    }

    pub fn integer(n: impl Into<BigUint>) -> Result<Self> {
        let n = n.into();
        if n.is_zero() {
            return Err(Error::domain("0 is not a positive rational"));
        }
        Ok(Self {
            num: n,
            den: BigUint::one(),
        })
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    pub fn into_parts(self) -> (BigUint, BigUint) {
        (self.num, self.den)
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn recip(&self) -> Self {
        Self {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    pub fn floor(&self) -> BigUint {
        &self.num / &self.den
    }

    /// `t(a/b) = a + b`
    pub fn trace(&self) -> BigUint {
        &self.num + &self.den
    }

    /// `c(a/b) = a * b`
    pub fn complexity(&self) -> BigUint {
        &self.num * &self.den
    }

    /// `s(a/b) = 1 / (a * b)`
    pub fn simplicity(&self) -> Self {
        Self {
            num: BigUint::one(),
            den: self.complexity(),
        }
    }

    /// `self + k` for a nonnegative integer `k`.
    pub fn add_integer(&self, k: &BigUint) -> Self {
        // (a + kb, b) stays coprime.
        Self {
            num: &self.num + k * &self.den,
            den: self.den.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        match (self.num.to_f64(), self.den.to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => f64::NAN,
        }
    }

    /// Parses `p/q` or `p`, reducing if necessary. The flag reports whether a
    /// reduction happened.
    pub fn parse_lenient(s: &str) -> Result<(Self, bool)> {
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let parse = |t: &str| {
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("invalid integer `{t}` in `{s}`")))
        };
        let (p, q) = (parse(p)?, parse(q)?);
        let f = Self::new(p.clone(), q.clone())?;
        let reduced = BigInt::from(f.num.clone()) != p;
        Ok((f, reduced))
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_lenient(s).map(|(f, _)| f)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Fraction {
    type Output = Fraction;

    fn add(self, rhs: &Fraction) -> Fraction {
        if self.den == rhs.den {
            return Fraction::from_parts(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let lhs_scale = &rhs.den / &g;
        let rhs_scale = &self.den / &g;
        let num = &self.num * &lhs_scale + &rhs.num * &rhs_scale;
        let den = &self.den * lhs_scale;
        Fraction::from_parts(num, den)
    }
}

impl Add for Fraction {
    type Output = Fraction;

    fn add(self, rhs: Fraction) -> Fraction {
        &self + &rhs
    }
}

impl Mul for &Fraction {
    type Output = Fraction;

    fn mul(self, rhs: &Fraction) -> Fraction {
        // Cross-cancel before multiplying so the result needs no further gcd.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = (&self.num / &g1) * (&rhs.num / &g2);
        let den = (&self.den / &g2) * (&rhs.den / &g1);
        Fraction::from_coprime(num, den)
    }
}

impl Mul for Fraction {
    type Output = Fraction;

    fn mul(self, rhs: Fraction) -> Fraction {
        &self * &rhs
    }
}

/// Wire form: decimal strings, since deep-level values overflow 64 bits.
#[derive(Serialize, Deserialize)]
struct FractionRepr {
    num: String,
    den: String,
}

impl From<Fraction> for FractionRepr {
    fn from(f: Fraction) -> Self {
        Self {
            num: f.num.to_string(),
            den: f.den.to_string(),
        }
    }
}

impl TryFrom<FractionRepr> for Fraction {
    type Error = Error;

    fn try_from(r: FractionRepr) -> Result<Self> {
        let parse = |t: &str| {
            t.parse::<BigUint>()
                .map_err(|_| Error::Parse(format!("invalid decimal string `{t}`")))
        };
        Fraction::new(parse(&r.num)?, parse(&r.den)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn frac(p: u64, q: u64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    #[test]
    fn new_reduces() {
        assert_eq!(frac(2, 4).to_string(), "1/2");
        assert_eq!(frac(7, 5).to_string(), "7/5");
        assert_eq!(frac(12, 18).to_string(), "2/3");
        assert_eq!(frac(9, 9).to_string(), "1/1");
    }

    #[test]
    fn new_rejects_zero_and_negative() {
        assert!(matches!(Fraction::new(0, 3), Err(Error::Domain(_))));
        assert!(matches!(Fraction::new(3, 0), Err(Error::Domain(_))));
        assert!(matches!(Fraction::new(-1, 3), Err(Error::Domain(_))));
        assert!(matches!(Fraction::new(1, -3), Err(Error::Domain(_))));
    }

    #[test]
    fn parse_reports_reduction() {
        let (f, reduced) = Fraction::parse_lenient("6/4").unwrap();
        assert_eq!(f, frac(3, 2));
        assert!(reduced);
        let (f, reduced) = Fraction::parse_lenient("5").unwrap();
        assert_eq!(f, frac(5, 1));
        assert!(!reduced);
        assert!(matches!(
            Fraction::parse_lenient("x/2"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            Fraction::parse_lenient("0/2"),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn ordering_and_arith() {
        assert!(frac(1, 3) < frac(1, 2));
        assert!(frac(5, 3) > frac(8, 5));
        assert_eq!(&frac(1, 2) + &frac(1, 3), frac(5, 6));
        assert_eq!(&frac(1, 6) + &frac(1, 3), frac(1, 2));
        assert_eq!(&frac(2, 3) * &frac(3, 2), Fraction::one());
        assert_eq!(&frac(4, 9) * &frac(3, 8), frac(1, 6));
    }

    #[test]
    fn serde_uses_decimal_strings() {
        let f = frac(3, 7);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"num":"3","den":"7"}"#);
        let back: Fraction = serde_json::from_str(r#"{"num":"6","den":"14"}"#).unwrap();
        assert_eq!(back, f);
    }

    proptest! {
        #[test]
        fn new_is_idempotent(p in 1u64..1_000_000, q in 1u64..1_000_000) {
            let f = frac(p, q);
            let g = Fraction::new(f.num().clone(), f.den().clone()).unwrap();
            prop_assert_eq!(&f, &g);
            prop_assert!(f.num().gcd(f.den()).is_one());
        }

        #[test]
        fn recip_is_involution(p in 1u64..1_000_000, q in 1u64..1_000_000) {
            let f = frac(p, q);
            prop_assert_eq!(f.recip().recip(), f.clone());
            prop_assert_eq!(&f * &f.recip(), Fraction::one());
        }
    }
}
