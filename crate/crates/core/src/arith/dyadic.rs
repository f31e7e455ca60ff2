use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::Fraction;
use crate::error::{Error, Result};

/// An exact nonnegative dyadic rational `mantissa / 2^exp`.
///
/// Normalized: either `exp == 0` or `mantissa` is odd. Zero is `0 / 2^0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigUint,
    exp: u64,
}

impl Dyadic {
    pub fn new(mantissa: impl Into<BigUint>, exp: u64) -> Self {
        let mut mantissa = mantissa.into();
        let mut exp = exp;
        if mantissa.is_zero() {
            return Self::zero();
        }
        if exp > 0 {
            let tz = mantissa.trailing_zeros().unwrap_or(0).min(exp);
            mantissa >>= tz;
            exp -= tz;
        }
        Self { mantissa, exp }
    }

    pub fn zero() -> Self {
        Self {
            mantissa: BigUint::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::integer(1u32)
    }

    pub fn integer(n: impl Into<BigUint>) -> Self {
        Self {
            mantissa: n.into(),
            exp: 0,
        }
    }

    /// `2^-k`
    pub fn inv_pow2(k: u64) -> Self {
        Self {
            mantissa: BigUint::one(),
            exp: k,
        }
    }

    pub fn mantissa(&self) -> &BigUint {
        &self.mantissa
    }

    pub fn exp(&self) -> u64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn floor(&self) -> BigUint {
        &self.mantissa >> self.exp
    }

    pub fn denominator(&self) -> BigUint {
        BigUint::one() << self.exp
    }

    /// Multiplies by `2^shift`; negative shifts divide.
    pub fn scale_pow2(&self, shift: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if shift >= 0 {
            let shift = shift.unsigned_abs();
            if shift <= self.exp {
                Self {
                    mantissa: self.mantissa.clone(),
                    exp: self.exp - shift,
                }
            } else {
                Self {
                    mantissa: &self.mantissa << (shift - self.exp),
                    exp: 0,
                }
            }
        } else {
            // Odd or integral mantissa: only a zero-exponent value can absorb
            // trailing zeros, which `new` handles.
            Self::new(self.mantissa.clone(), self.exp + shift.unsigned_abs())
        }
    }

    fn aligned(&self, other: &Self) -> (BigUint, BigUint, u64) {
        let exp = self.exp.max(other.exp);
        (
            &self.mantissa << (exp - self.exp),
            &other.mantissa << (exp - other.exp),
            exp,
        )
    }

    /// `self - other`; results below zero are a domain error.
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let (a, b, exp) = self.aligned(other);
        if a < b {
            return Err(Error::domain(format!(
                "dyadic subtraction underflow: {self} - {other}"
            )));
        }
        Ok(Self::new(a - b, exp))
    }

    /// `None` for zero, which is not a positive rational.
    pub fn to_fraction(&self) -> Option<Fraction> {
        if self.is_zero() {
            None
        } else {
            Some(Fraction::from_coprime(
                self.mantissa.clone(),
                self.denominator(),
            ))
        }
    }

    /// Exact comparison with a positive rational.
    pub fn eq_fraction(&self, f: &Fraction) -> bool {
        // A reduced fraction equals a dyadic only if its denominator is 2^exp.
        !self.is_zero() && f.num() == &self.mantissa && f.den() == &self.denominator()
    }

    pub fn to_f64(&self) -> f64 {
        let m = self.mantissa.to_f64().unwrap_or(f64::INFINITY);
        let e = i32::try_from(self.exp).unwrap_or(i32::MAX);
        m * 2f64.powi(-e)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, exp) = self.aligned(rhs);
        Dyadic::new(a + b, exp)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Self {
        iter.fold(Dyadic::zero(), |acc, x| &acc + &x)
    }
}

impl<'a> std::iter::Sum<&'a Dyadic> for Dyadic {
    fn sum<I: Iterator<Item = &'a Dyadic>>(iter: I) -> Self {
        iter.fold(Dyadic::zero(), |acc, x| &acc + x)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integers render bare (`3`), everything else as `p/q` with `q = 2^exp`.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.mantissa)
        } else {
            write!(f, "{}/{}", self.mantissa, self.denominator())
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.mantissa, self.exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(m: u64, e: u64) -> Dyadic {
        Dyadic::new(m, e)
    }

    #[test]
    fn normalizes() {
        assert_eq!(d(4, 3), d(1, 1));
        assert_eq!(d(4, 3).exp(), 1);
        assert_eq!(d(8, 2), Dyadic::integer(2u32));
        assert_eq!(d(0, 7), Dyadic::zero());
        assert_eq!(d(0, 7).exp(), 0);
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&d(1, 1) + &d(1, 2), d(3, 2));
        assert_eq!(d(5, 4).scale_pow2(2), d(5, 2));
        assert_eq!(d(5, 4).scale_pow2(2).to_string(), "5/4");
        assert_eq!(d(3, 0).scale_pow2(-2).to_string(), "3/4");
        assert_eq!(d(3, 1).scale_pow2(5), Dyadic::integer(48u32));
        let v = Dyadic::one()
            .checked_sub(&d(1, 2))
            .map(|x| &x + &d(1, 4))
            .unwrap();
        assert_eq!(v, d(13, 4));
        assert_eq!(v.to_string(), "13/16");
    }

    #[test]
    fn sub_underflow_is_error() {
        assert!(matches!(
            d(1, 2).checked_sub(&d(1, 1)),
            Err(Error::Domain(_))
        ));
        assert_eq!(d(1, 1).checked_sub(&d(1, 1)).unwrap(), Dyadic::zero());
    }

    #[test]
    fn fraction_conversion() {
        assert_eq!(d(3, 2).to_fraction().unwrap(), Fraction::new(3, 4).unwrap());
        assert!(d(3, 2).eq_fraction(&Fraction::new(3, 4).unwrap()));
        assert!(!d(3, 2).eq_fraction(&Fraction::new(3, 5).unwrap()));
        assert_eq!(Dyadic::zero().to_fraction(), None);
        assert_eq!(d(13, 3).floor(), BigUint::from(1u32));
    }

    proptest! {
        #[test]
        fn add_then_sub_roundtrips(a in 0u64..1 << 40, ea in 0u64..64, b in 0u64..1 << 40, eb in 0u64..64) {
            let (x, y) = (d(a, ea), d(b, eb));
            prop_assert_eq!((&x + &y).checked_sub(&y).unwrap(), x.clone());
            let sum = &x + &y;
            prop_assert!(sum.exp() == 0 || sum.mantissa().bit(0));
        }

        #[test]
        fn scale_roundtrips(a in 1u64..1 << 40, e in 0u64..64, s in -70i64..70) {
            let x = d(a, e);
            prop_assert_eq!(x.scale_pow2(s).scale_pow2(-s), x);
        }
    }
}
