//! Split-complex numbers `a + b j` with `j^2 = 1` over exact rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitComplex {
    pub re: BigRational,
    pub jm: BigRational,
}

impl SplitComplex {
    pub fn new(re: BigRational, jm: BigRational) -> Self {
        Self { re, jm }
    }

    pub fn from_ints(re: i64, jm: i64) -> Self {
        Self::new(BigRational::from_integer(re.into()), BigRational::from_integer(jm.into()))
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn j() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.jm.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.jm.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.jm.is_zero()
    }

    /// `re^2 - jm^2`; the number is invertible iff this is nonzero.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re - &self.jm * &self.jm
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.jm.clone())
    }

    /// Multiplicative inverse, `None` on the zero-divisor locus `re = ±jm`.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &n, -&self.jm / &n))
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub(crate) fn scale_int(&self, k: i64) -> Self {
        let k = BigRational::from_integer(BigInt::from(k));
        Self::new(&self.re * &k, &self.jm * &k)
    }

    /// Sign used when printing a coefficient inside a sum: `true` when the
    /// coefficient is a single negative part (real or pure `j`).
    pub(crate) fn is_negative_single(&self) -> bool {
        (self.jm.is_zero() && self.re.is_negative()) || (self.re.is_zero() && self.jm.is_negative())
    }
}

impl Default for SplitComplex {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a SplitComplex> for &'a SplitComplex {
    type Output = SplitComplex;
    fn add(self, rhs: &SplitComplex) -> SplitComplex {
        SplitComplex::new(&self.re + &rhs.re, &self.jm + &rhs.jm)
    }
}

impl Add for SplitComplex {
    type Output = SplitComplex;
    fn add(self, rhs: SplitComplex) -> SplitComplex {
        &self + &rhs
    }
}

impl AddAssign<&SplitComplex> for SplitComplex {
    fn add_assign(&mut self, rhs: &SplitComplex) {
        self.re += &rhs.re;
        self.jm += &rhs.jm;
    }
}

impl<'a> Sub<&'a SplitComplex> for &'a SplitComplex {
    type Output = SplitComplex;
    fn sub(self, rhs: &SplitComplex) -> SplitComplex {
        SplitComplex::new(&self.re - &rhs.re, &self.jm - &rhs.jm)
    }
}

impl Sub for SplitComplex {
    type Output = SplitComplex;
    fn sub(self, rhs: SplitComplex) -> SplitComplex {
        &self - &rhs
    }
}

impl<'a> Mul<&'a SplitComplex> for &'a SplitComplex {
    type Output = SplitComplex;
    fn mul(self, rhs: &SplitComplex) -> SplitComplex {
        // (a + bj)(c + dj) = (ac + bd) + (ad + bc)j
        SplitComplex::new(
            &self.re * &rhs.re + &self.jm * &rhs.jm,
            &self.re * &rhs.jm + &self.jm * &rhs.re,
        )
    }
}

impl Mul for SplitComplex {
    type Output = SplitComplex;
    fn mul(self, rhs: SplitComplex) -> SplitComplex {
        &self * &rhs
    }
}

impl Neg for SplitComplex {
    type Output = SplitComplex;
    fn neg(self) -> SplitComplex {
        SplitComplex::new(-self.re, -self.jm)
    }
}

impl Neg for &SplitComplex {
    type Output = SplitComplex;
    fn neg(self) -> SplitComplex {
        SplitComplex::new(-self.re.clone(), -self.jm.clone())
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Prints as `a`, `b*j` or `a+b*j` (`a-b*j` when the `j` part is negative).
impl fmt::Display for SplitComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.jm.is_zero()) {
            (_, true) => fmt_rational(&self.re, f),
            (true, false) => {
                fmt_rational(&self.jm, f)?;
                f.write_str("*j")
            }
            (false, false) => {
                fmt_rational(&self.re, f)?;
                if self.jm.is_negative() {
                    f.write_str("-")?;
                    fmt_rational(&-self.jm.clone(), f)?;
                } else {
                    f.write_str("+")?;
                    fmt_rational(&self.jm, f)?;
                }
                f.write_str("*j")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_squared_is_one() {
        assert_eq!(&SplitComplex::j() * &SplitComplex::j(), SplitComplex::one());
    }

    #[test]
    fn zero_divisors() {
        let a = SplitComplex::from_ints(1, 1);
        let b = SplitComplex::from_ints(1, -1);
        assert!((&a * &b).is_zero());
        assert!(a.inverse().is_none());
        assert!(b.inverse().is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = SplitComplex::from_ints(3, -2);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, SplitComplex::one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(SplitComplex::from_ints(2, 0).to_string(), "2");
        assert_eq!(SplitComplex::from_ints(0, 3).to_string(), "3*j");
        assert_eq!(SplitComplex::from_ints(1, 1).to_string(), "1+1*j");
        assert_eq!(SplitComplex::from_ints(1, -2).to_string(), "1-2*j");
        let half = SplitComplex::new(BigRational::new(1.into(), 2.into()), BigRational::zero());
        assert_eq!(half.to_string(), "1/2");
    }

    #[test]
    fn pow_of_j() {
        assert_eq!(SplitComplex::j().pow(3), SplitComplex::j());
        assert_eq!(SplitComplex::j().pow(0), SplitComplex::one());
    }
}
