//! Exact rational scalars.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_parts(num: BigInt, den: BigInt) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, e: i32) -> Result<Self, Error> {
        if e < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(num_traits::Pow::pow(&self.0, e)))
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// `num/den`, or just `num` when the denominator is one.
    pub fn to_canonical_string(&self) -> String {
        if self.0.is_integer() {
            self.0.numer().to_string()
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }

    /// n!
    pub fn factorial(n: u64) -> Self {
        Scalar::from_bigint(factorial_big(n))
    }

    /// Binomial coefficient C(n, k); zero when k < 0 or k > n.
    pub fn binomial(n: i64, k: i64) -> Self {
        if k < 0 || n < 0 || k > n {
            return Scalar::zero();
        }
        let k = k.min(n - k) as u64;
        let n = n as u64;
        let mut acc = BigInt::one();
        for i in 0..k {
            acc *= BigInt::from(n - i);
            acc /= BigInt::from(i + 1);
        }
        Scalar::from_bigint(acc)
    }

    /// Rising factorial (x)_k = x (x + 1) ... (x + k - 1); (x)_0 = 1.
    pub fn pochhammer(x: &Scalar, k: u64) -> Self {
        let mut acc = Scalar::one();
        let mut factor = x.clone();
        for _ in 0..k {
            acc *= &factor;
            factor += &Scalar::one();
        }
        acc
    }

    /// 1/n! with the convention 1/(negative)! = 0.
    pub fn inv_factorial(n: i64) -> Self {
        if n < 0 {
            Scalar::zero()
        } else {
            Scalar(BigRational::new(BigInt::one(), factorial_big(n as u64)))
        }
    }
}

fn factorial_big(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar(r)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `n`, `-n`, and `n/d` with decimal integers.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("invalid rational literal `{s}`"),
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        Scalar::from_parts(num, den)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self.to_canonical_string())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::recip`] for a fallible path.
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_on_construction() {
        let s = Scalar::new(6, -4);
        assert_eq!(s.numer(), &BigInt::from(-3));
        assert_eq!(s.denom(), &BigInt::from(2));
    }

    #[test]
    fn parses_and_prints() {
        let s: Scalar = "-10/4".parse().unwrap();
        assert_eq!(s.to_canonical_string(), "-5/2");
        assert_eq!("7".parse::<Scalar>().unwrap(), Scalar::from_int(7));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn combinatorial_helpers() {
        assert_eq!(Scalar::factorial(5), Scalar::from_int(120));
        assert_eq!(Scalar::binomial(6, 2), Scalar::from_int(15));
        assert_eq!(Scalar::binomial(2, 3), Scalar::zero());
        assert_eq!(Scalar::binomial(2, -1), Scalar::zero());
        assert_eq!(Scalar::pochhammer(&Scalar::from_int(-2), 1), Scalar::from_int(-2));
        assert_eq!(Scalar::pochhammer(&Scalar::from_int(-2), 3), Scalar::zero());
        assert_eq!(Scalar::pochhammer(&Scalar::new(1, 2), 2), Scalar::new(3, 4));
        assert_eq!(Scalar::inv_factorial(-1), Scalar::zero());
        assert_eq!(Scalar::inv_factorial(3), Scalar::new(1, 6));
    }

    #[test]
    fn negative_powers() {
        assert_eq!(Scalar::from_int(2).pow(-2).unwrap(), Scalar::new(1, 4));
        assert!(Scalar::zero().pow(-1).is_err());
    }
}
