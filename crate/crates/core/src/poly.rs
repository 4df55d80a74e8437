//! Sparse multivariate polynomials over Q(i) in coordinates x0..x_{2n}.

use crate::scalar::{fmt_rational, GaussRational, Rational};
use num::traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector of length 2n+1, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with Gaussian-rational coefficients.
///
/// `n` is the half-dimension of the ambient contact space: there are
/// 2n+1 coordinates x0..x_{2n}. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Monomial, GaussRational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        2 * self.n + 1
    }

    pub fn half_dim(&self) -> usize {
        self.n
    }

    pub fn constant(n: usize, c: GaussRational) -> Self {
        let mut p = Poly::zero(n);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; 2 * n + 1]), c);
        }
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, GaussRational::one())
    }

    pub fn int(n: usize, k: i64) -> Self {
        Self::constant(n, GaussRational::from_int(k))
    }

    /// The coordinate function x_i.
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i <= 2 * n, "coordinate index {} out of range for n={}", i, n);
        let mut exp = vec![0; 2 * n + 1];
        exp[i] = 1;
        let mut p = Poly::zero(n);
        p.terms.insert(Monomial(exp), GaussRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_constant())
    }

    /// The constant term as a scalar (zero if absent).
    pub fn constant_term(&self) -> GaussRational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_constant())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(GaussRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussRational) {
        assert_eq!(m.0.len(), self.nvars(), "exponent vector length mismatch");
        let entry = self.terms.entry(m).or_insert_with(GaussRational::zero);
        *entry += &c;
        if entry.is_zero() {
            // The key we need to remove is the one we just touched; find it
            // by recomputing (BTreeMap has no entry-removal on occupied).
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scalar_mul(&self, c: &GaussRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        let mut out = Poly::zero(self.n);
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    /// Formal partial derivative with respect to x_i.
    pub fn partial(&self, i: usize) -> Poly {
        assert!(i <= 2 * self.n, "coordinate index {} out of range", i);
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exp = m.0.clone();
            exp[i] = e - 1;
            out.add_term(
                Monomial(exp),
                c * &GaussRational::from_int(i64::from(e)),
            );
        }
        out
    }

    /// True iff the polynomial does not depend on x0 (i.e. eta(p) = 0).
    pub fn is_basic(&self) -> bool {
        self.terms.keys().all(|m| m.0[0] == 0)
    }

    /// Exact evaluation at a rational point of length 2n+1.
    pub fn eval(&self, point: &[Rational]) -> GaussRational {
        assert_eq!(point.len(), self.nvars(), "evaluation point length mismatch");
        let mut acc = GaussRational::zero();
        for (m, c) in &self.terms {
            let mut factor = Rational::one();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    factor *= &point[i];
                }
            }
            acc += &(c * &GaussRational::from_rational(factor));
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn assert_compatible(&self, other: &Poly) {
        assert_eq!(
            self.n, other.n,
            "polynomial half-dimension mismatch: {} vs {}",
            self.n, other.n
        );
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        let mut out = Poly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let exp: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(exp), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scalar_mul(&GaussRational::from_int(-1))
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", i)),
            _ => parts.push(format!("x{}**{}", i, e)),
        }
    }
    parts.join("*")
}

/// Renders one term (without leading sign handling) given a magnitude-style
/// coefficient string. Used by `Display`.
fn fmt_term(c: &GaussRational, m: &Monomial) -> String {
    if m.is_constant() {
        return c.to_string();
    }
    let mono = fmt_monomial(m);
    if c == &GaussRational::one() {
        mono
    } else {
        format!("{}*{}", c, mono)
    }
}

impl fmt::Display for Poly {
    /// Canonical graded-lex printing, leading term first. The output is
    /// valid input for the CLI expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            // Peel a leading minus for purely real or purely imaginary
            // negative coefficients so we can print "a - b".
            let (neg, mag) = if c.im.is_zero() && c.re.is_negative() {
                (true, GaussRational::from_rational(-c.re.clone()))
            } else if c.re.is_zero() && c.im.is_negative() {
                (true, GaussRational::new(Rational::zero(), -c.im.clone()))
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-{}", fmt_term(&mag, m))?;
                } else {
                    write!(f, "{}", fmt_term(&mag, m))?;
                }
                first = false;
            } else if neg {
                write!(f, " - {}", fmt_term(&mag, m))?;
            } else {
                write!(f, " + {}", fmt_term(&mag, m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub use crate::scalar::rat;
pub use crate::scalar::rat_int;

#[allow(unused)]
fn fmt_rational_unused(r: &Rational) -> String {
    fmt_rational(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn x(i: usize) -> Poly {
        Poly::var(1, i)
    }

    #[test]
    fn ring_identities() {
        let p = &(&x(1) + &x(2)) * &(&x(1) - &x(2));
        let q = &(&x(1) * &x(1)) - &(&x(2) * &x(2));
        assert_eq!(p, q);

        assert!((&p * &Poly::zero(1)).is_zero());

        let half_x0 = x(0).scalar_mul(&GaussRational::from_rational(rat(1, 2)));
        assert_eq!(&half_x0 + &half_x0, x(0));
    }

    #[test]
    fn partial_derivatives() {
        let p = &(&x(1) * &x(1)) * &x(2); // x1^2 x2
        let expect = (&x(1) * &x(2)).scalar_mul(&GaussRational::from_int(2));
        assert_eq!(p.partial(1), expect);
        assert!(x(0).partial(2).is_zero());
        assert_eq!((&x(0) * &x(1)).partial(0), x(1));
    }

    #[test]
    fn basic_predicate() {
        assert!((&x(1) * &(&x(2) * &x(2))).is_basic());
        assert!(!(&x(0) + &x(1)).is_basic());
        assert!(Poly::zero(1).is_basic());
    }

    #[test]
    fn evaluation() {
        let p = &x(1) * &x(2);
        let v = p.eval(&[rat(0, 1), rat(2, 1), rat(3, 1)]);
        assert_eq!(v, GaussRational::from_int(6));
        assert_eq!(
            Poly::one(1).eval(&[rat(7, 3), rat(1, 5), rat(0, 1)]),
            GaussRational::one()
        );
        let sq = &x(0) * &x(0);
        assert_eq!(
            sq.eval(&[rat(1, 2), rat(0, 1), rat(0, 1)]),
            GaussRational::from_rational(rat(1, 4))
        );
    }

    #[test]
    fn display_roundtrip_shape() {
        let p = &(&x(1) * &x(2)) - &Poly::int(1, 2);
        assert_eq!(p.to_string(), "x1*x2 - 2");
    }
}
