//! Prequantization: first-order operators o(f) on the weight spaces H_h
//! of the canonical vector field, with the rescaled-bracket homomorphism
//! law. The weight symbol E_h is formal: a wave function p*E_h is stored
//! as its basic polynomial part, and applying an operator substitutes
//! Dx0 |-> multiplication by ih.

use crate::contact::ContactSpace;
use crate::exterior::{schouten, MultiVec};
use crate::poly::Poly;
use crate::scalar::{GaussRational, Rational};
use num::Zero;

/// Which of the two o(f) normalizations to use. The weight-space form
/// (inverse-ih) is the default: o(f) acts as f - (i/h) ham(df) on H_h.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Normalization {
    TimesIh,
    InverseIh,
}

impl Default for Normalization {
    fn default() -> Self {
        Normalization::InverseIh
    }
}

/// An element p * E_h of the weight space H_h, with basic polynomial p.
#[derive(Clone, PartialEq, Debug)]
pub struct WaveFn {
    h: Rational,
    p: Poly,
}

impl WaveFn {
    pub fn new(h: Rational, p: Poly) -> Result<WaveFn, String> {
        if h.is_zero() {
            return Err("weight h must be nonzero".into());
        }
        if !p.is_basic() {
            return Err(format!("wave function part must be basic, got {}", p));
        }
        Ok(WaveFn { h, p })
    }

    pub fn h(&self) -> &Rational {
        &self.h
    }

    pub fn part(&self) -> &Poly {
        &self.p
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }
}

impl std::fmt::Display for WaveFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})*E", self.p)
    }
}

/// A first-order differential operator a + X with polynomial coefficients
/// over Q(i); X is kept as a degree-1 multivector so that operator
/// commutators reuse the Schouten bracket.
#[derive(Clone, PartialEq, Debug)]
pub struct PreqOp {
    zeroth: Poly,
    field: MultiVec,
}

impl PreqOp {
    pub fn new(zeroth: Poly, field: MultiVec) -> PreqOp {
        assert_eq!(zeroth.half_dim(), field.half_dim());
        assert!(
            field.terms().all(|(t, _)| t.len() == 1),
            "first-order part must be a vector field"
        );
        PreqOp { zeroth, field }
    }

    pub fn identity(n: usize) -> PreqOp {
        PreqOp::new(Poly::one(n), MultiVec::zero(n))
    }

    pub fn zero(n: usize) -> PreqOp {
        PreqOp::new(Poly::zero(n), MultiVec::zero(n))
    }

    pub fn zeroth(&self) -> &Poly {
        &self.zeroth
    }

    pub fn field(&self) -> &MultiVec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.zeroth.is_zero() && self.field.is_zero()
    }

    pub fn scale(&self, c: &GaussRational) -> PreqOp {
        PreqOp::new(self.zeroth.scalar_mul(c), self.field.scalar_mul(c))
    }

    pub fn sub(&self, other: &PreqOp) -> PreqOp {
        PreqOp::new(
            &self.zeroth - &other.zeroth,
            self.field.sub(&other.field),
        )
    }
}

impl std::fmt::Display for PreqOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.zeroth.is_zero(), self.field.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.zeroth),
            (true, false) => write!(f, "{}", self.field),
            (false, false) => {
                if self.zeroth.num_terms() > 1 {
                    write!(f, "({}) + {}", self.zeroth, self.field)
                } else {
                    write!(f, "{} + {}", self.zeroth, self.field)
                }
            }
        }
    }
}

/// o(f) = c * (f*eta + ham(df)) with c = ih (times-ih) or 1/(ih)
/// (inverse-ih, the default).
pub fn lift(
    space: &ContactSpace,
    f: &Poly,
    h: &Rational,
    norm: Normalization,
) -> Result<PreqOp, String> {
    if h.is_zero() {
        return Err("weight h must be nonzero".into());
    }
    if !f.is_basic() {
        return Err(format!("lift needs a basic function, got {}", f));
    }
    let ih = GaussRational::new(Rational::zero(), h.clone());
    let c = match norm {
        Normalization::TimesIh => ih,
        Normalization::InverseIh => ih.inv(),
    };
    Ok(PreqOp::new(Poly::zero(space.n()), space.hat(f).scalar_mul(&c)))
}

/// Applies the operator with the weight rule Dx0 |-> ih. Fails if the
/// result leaves the weight space (never happens for lifts of basic f).
pub fn apply(op: &PreqOp, phi: &WaveFn) -> Result<WaveFn, String> {
    let n = op.zeroth.half_dim();
    assert_eq!(n, phi.p.half_dim(), "half-dimension mismatch");
    let ih = GaussRational::new(Rational::zero(), phi.h.clone());
    let mut out = &op.zeroth * &phi.p;
    for (t, a) in op.field.terms() {
        if t[0] == 0 {
            out = &out + &(a * &phi.p).scalar_mul(&ih);
        } else {
            out = &out + &(a * &phi.p.partial(t[0] as usize));
        }
    }
    if !out.is_basic() {
        return Err(format!("operator leaves the weight space: {}", out));
    }
    Ok(WaveFn {
        h: phi.h.clone(),
        p: out,
    })
}

/// [A, B] = (X(b) - Y(a)) + [X, Y]: the second-order parts of AB - BA
/// cancel identically, so the commutator is again first-order.
pub fn commutator(a: &PreqOp, b: &PreqOp) -> PreqOp {
    let zeroth = &a.field.apply(&b.zeroth) - &b.field.apply(&a.zeroth);
    PreqOp::new(zeroth, schouten(&a.field, &b.field))
}

/// The rescaled-bracket defect c'*[o(f), o(g)] - o({f, g}) with the
/// rescaling matched to the normalization; identically zero.
pub fn homomorphism_defect(
    space: &ContactSpace,
    f: &Poly,
    g: &Poly,
    h: &Rational,
    norm: Normalization,
) -> Result<PreqOp, String> {
    let of = lift(space, f, h, norm)?;
    let og = lift(space, g, h, norm)?;
    let ih = GaussRational::new(Rational::zero(), h.clone());
    let rescale = match norm {
        Normalization::InverseIh => ih,
        Normalization::TimesIh => ih.inv(),
    };
    let bracket = lift(space, &space.poisson(f, g), h, norm)?;
    Ok(commutator(&of, &og).scale(&rescale).sub(&bracket))
}
