//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Exact rational number. `BigRational` keeps gcd-reduced form with a
/// positive denominator, which is exactly the canonical form we need.
pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rational {
    Rational::from(BigInt::from(p))
}

/// An element of Q(i), stored componentwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(rat_int(k))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRational {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn zero() -> Self {
        GaussRational {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in Q(i)");
        let norm = &self.re * &self.re + &self.im * &self.im;
        GaussRational {
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        }
    }
}

impl Add for GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: GaussRational) -> GaussRational {
        GaussRational {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<'a> AddAssign<&'a GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &'a GaussRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: GaussRational) -> GaussRational {
        GaussRational {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<'a> SubAssign<&'a GaussRational> for GaussRational {
    fn sub_assign(&mut self, rhs: &'a GaussRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Mul for GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: GaussRational) -> GaussRational {
        &self * &rhs
    }
}

impl<'a, 'b> Mul<&'b GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &'b GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl MulAssign<&GaussRational> for GaussRational {
    fn mul_assign(&mut self, rhs: &GaussRational) {
        *self = &*self * rhs;
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im_str = if self.im.is_one() {
            "i".to_string()
        } else if (-self.im.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", fmt_rational(&self.im))
        };
        if self.re.is_zero() {
            return write!(f, "{}", im_str);
        }
        // Mixed value: parenthesized so it composes as one factor.
        if self.im.is_negative() {
            let pos = -self.im.clone();
            let im_mag = if pos.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", fmt_rational(&pos))
            };
            write!(f, "({} - {})", fmt_rational(&self.re), im_mag)
        } else {
            write!(f, "({} + {})", fmt_rational(&self.re), im_str)
        }
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_arithmetic() {
        let i = GaussRational::i();
        let m1 = &i * &i;
        assert_eq!(m1, GaussRational::from_int(-1));
        assert_eq!(i.inv(), -GaussRational::i());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussRational::from_int(3).to_string(), "3");
        assert_eq!(GaussRational::i().to_string(), "i");
        let z = GaussRational::new(rat(1, 2), rat_int(-2));
        assert_eq!(z.to_string(), "(1/2 - 2*i)");
    }
}
