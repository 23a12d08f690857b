//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// An exact rational number. Thin wrapper over an arbitrary-precision
/// fraction; every coefficient in the kernel is one of these.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(k: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_bigint(k: BigInt) -> Self {
        Rat(BigRational::from_integer(k))
    }

    /// `num/den` in lowest terms. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rat(self.0.recip())
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn pow_u32(&self, e: u32) -> Self {
        let mut acc = Rat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for Rat {
    /// Lowest terms, `p/q` with the sign on the numerator; integers print
    /// without the denominator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n: BigInt = num.trim().parse().map_err(|_| format!("bad numerator `{num}`"))?;
            let d: BigInt = den.trim().parse().map_err(|_| format!("bad denominator `{den}`"))?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Rat(BigRational::new(n, d)))
        } else {
            let n: BigInt = s.parse().map_err(|_| format!("bad integer `{s}`"))?;
            Ok(Rat(BigRational::from_integer(n)))
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl From<i64> for Rat {
    fn from(k: i64) -> Self {
        Rat::from_int(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_lowest_terms() {
        assert_eq!(Rat::new(2, 4).to_string(), "1/2");
        assert_eq!(Rat::new(-3, 1).to_string(), "-3");
        assert_eq!(Rat::new(3, -2).to_string(), "-3/2");
        assert_eq!(Rat::zero().to_string(), "0");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "7", "-7", "1/2", "-22/7"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = Rat::new(1, 2);
        let b = Rat::new(1, 3);
        assert_eq!(&a + &b, Rat::new(5, 6));
        assert_eq!(&a * &b, Rat::new(1, 6));
        assert_eq!(&a - &b, Rat::new(1, 6));
        assert_eq!(&a / &b, Rat::new(3, 2));
        assert_eq!(a.recip(), Rat::from_int(2));
    }
}
