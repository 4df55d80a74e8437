//! The canonical contact structure on R^{2n+1} in Darboux coordinates:
//! Poisson bracket of basic functions, Hamiltonian and contact lifts,
//! classification of infinitesimal contact transformations, and the basic
//! multivector complex with its isomorphism onto basic forms.

use crate::exterior::{flat, pair, schouten, sharp, Form, MultiVec};
use crate::poly::Poly;

/// The Darboux-chart contact structure: alpha = dx0 + sum x_{2i-1} dx_{2i},
/// omega = d(alpha), the canonical vector field eta = Dx0, and the canonical
/// bivector mu = sum Dx_{2i-1} ^ (Dx_{2i} - x_{2i-1} Dx0).
#[derive(Clone)]
pub struct ContactSpace {
    n: usize,
    alpha: Form,
    omega: Form,
    eta: MultiVec,
    mu: MultiVec,
}

/// Classification of a vector field against L_X(alpha) = phi * alpha.
#[derive(Clone, PartialEq, Debug)]
pub enum ContactClass {
    /// L_X(alpha) = 0.
    Automorphism,
    /// L_X(alpha) = phi * alpha with phi != 0.
    Transformation(Poly),
    /// L_X(alpha) is not a polynomial multiple of alpha.
    NotContact,
}

/// An equivalence class of invariant multivector fields modulo the ideal
/// eta ^ V_I, held by its unique representative with no Dx0 factor.
#[derive(Clone, PartialEq)]
pub struct BasicClass {
    rep: MultiVec,
}

impl BasicClass {
    pub fn rep(&self) -> &MultiVec {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

impl std::fmt::Display for BasicClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl std::fmt::Debug for BasicClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

impl ContactSpace {
    pub fn new(n: usize) -> Result<ContactSpace, String> {
        if n < 1 {
            return Err("contact space needs half-dimension n >= 1".into());
        }
        let mut alpha = Form::basis(n, &[0]);
        let mut mu = MultiVec::zero(n);
        for i in 1..=n {
            let odd = (2 * i - 1) as u8;
            let even = (2 * i) as u8;
            let x_odd = Poly::var(n, odd as usize);
            alpha = alpha.add(&Form::basis(n, &[even]).poly_mul(&x_odd));
            mu = mu.add(
                &MultiVec::basis(n, &[odd]).wedge(
                    &MultiVec::basis(n, &[even])
                        .sub(&MultiVec::basis(n, &[0]).poly_mul(&x_odd)),
                ),
            );
        }
        let omega = alpha.d();
        let eta = MultiVec::basis(n, &[0]);

        let space = ContactSpace {
            n,
            alpha,
            omega,
            eta,
            mu,
        };
        // Structural self-checks pinned at construction time.
        assert_eq!(
            space.alpha.interior(&space.eta),
            Form::scalar(Poly::one(n)),
            "i_eta(alpha) = 1"
        );
        assert!(space.omega.interior(&space.eta).is_zero(), "i_eta(omega) = 0");
        assert_eq!(flat(&space.omega, &space.mu), space.omega, "flat(omega, mu) = omega");
        assert!(
            space.mu.contract_tilde(&space.alpha).is_zero(),
            "mu lies in the second exterior power of ker(alpha)"
        );
        Ok(space)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn alpha(&self) -> &Form {
        &self.alpha
    }
    pub fn omega(&self) -> &Form {
        &self.omega
    }
    pub fn eta(&self) -> &MultiVec {
        &self.eta
    }
    pub fn mu(&self) -> &MultiVec {
        &self.mu
    }

    /// {f, g} = (df ^ dg)(mu). Satisfies Jacobi on basic functions only.
    pub fn poisson(&self, f: &Poly, g: &Poly) -> Poly {
        let df = Form::scalar(f.clone()).d();
        let dg = Form::scalar(g.clone()).d();
        pair(&df.wedge(&dg), &self.mu)
    }

    /// {{f,g},h} + {{g,h},f} + {{h,f},g}; vanishes on basic triples.
    pub fn jacobiator(&self, f: &Poly, g: &Poly, h: &Poly) -> Poly {
        let a = self.poisson(&self.poisson(f, g), h);
        let b = self.poisson(&self.poisson(g, h), f);
        let c = self.poisson(&self.poisson(h, f), g);
        &(&a + &b) + &c
    }

    /// The Hamiltonian vector field mu~(df); always horizontal.
    pub fn ham(&self, f: &Poly) -> MultiVec {
        sharp(&self.mu, &Form::scalar(f.clone()).d())
    }

    /// The contact lift f |-> f * eta + ham(f).
    pub fn hat(&self, f: &Poly) -> MultiVec {
        self.eta.poly_mul(f).add(&self.ham(f))
    }

    /// Classifies X by computing L_X(alpha), extracting the candidate
    /// multiplier phi = i_eta(L_X alpha), and verifying L_X(alpha) = phi*alpha
    /// by exact subtraction.
    pub fn contact_class(&self, x: &MultiVec) -> ContactClass {
        let lx = self.alpha.lie(x);
        if lx.is_zero() {
            return ContactClass::Automorphism;
        }
        let phi = lx.interior(&self.eta).coeff(&[]);
        if lx.sub(&self.alpha.poly_mul(&phi)).is_zero() {
            ContactClass::Transformation(phi)
        } else {
            ContactClass::NotContact
        }
    }

    /// True iff [eta, w] = 0, i.e. every coefficient of w is basic.
    pub fn is_invariant(&self, w: &MultiVec) -> bool {
        schouten(&self.eta, w).is_zero()
    }

    /// Unique representative of an invariant multivector modulo eta ^ V_I:
    /// drop every term carrying a Dx0 factor.
    pub fn basic_normal_form(&self, w: &MultiVec) -> Result<BasicClass, String> {
        if !self.is_invariant(w) {
            return Err(format!("multivector is not invariant: [eta, w] != 0 for w = {}", w));
        }
        let mut rep = MultiVec::zero(self.n);
        for (t, c) in w.terms() {
            if !t.contains(&0) {
                rep.insert(t.clone(), c.clone());
            }
        }
        Ok(BasicClass { rep })
    }

    /// The coboundary operator on basic classes: [mu, -] followed by the
    /// normal-form projection. Squares to zero on classes even though
    /// [mu, mu] != 0 on representatives.
    pub fn delta_mu(&self, c: &BasicClass) -> BasicClass {
        self.basic_normal_form(&schouten(&self.mu, &c.rep))
            .expect("[mu, w] stays invariant for invariant w")
    }

    /// Complex isomorphism onto basic forms: flat(omega, rep).
    pub fn iso_to_basic_forms(&self, c: &BasicClass) -> Form {
        flat(&self.omega, &c.rep)
    }

    /// Left inverse of the isomorphism: normal form of sharp(mu, theta).
    pub fn iso_inverse(&self, theta: &Form) -> Result<BasicClass, String> {
        self.basic_normal_form(&sharp(&self.mu, theta))
    }

    /// The contact volume form alpha ^ omega^n.
    pub fn volume(&self) -> Form {
        self.alpha.wedge(&self.omega.wedge_pow(self.n as u32))
    }

    /// For an infinitesimal contact automorphism X returns the pair
    /// (L_X(alpha ^ omega^n), X(f)*alpha^omega^n - d(i_X(f*alpha^omega^n)));
    /// both vanish identically. Refuses non-automorphisms, for which the
    /// identities are not guaranteed.
    pub fn volume_identities(&self, f: &Poly, x: &MultiVec) -> Result<(Form, Form), String> {
        if self.contact_class(x) != ContactClass::Automorphism {
            return Err(format!(
                "volume identities need an infinitesimal contact automorphism, got {}",
                x
            ));
        }
        let vol = self.volume();
        let first = vol.lie(x);
        let second = vol
            .poly_mul(&x.apply(f))
            .sub(&vol.poly_mul(f).interior(x).d());
        Ok((first, second))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> ContactSpace {
        ContactSpace::new(n).unwrap()
    }

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn construction() {
        let c1 = space(1);
        // mu = Dx1^Dx2 - x1*Dx1^Dx0 = Dx1^Dx2 + x1*Dx0^Dx1.
        let expect_mu = MultiVec::basis(1, &[1])
            .wedge(&MultiVec::basis(1, &[2]))
            .add(&MultiVec::basis(1, &[0]).wedge(&MultiVec::basis(1, &[1])).poly_mul(&x(1, 1)));
        assert_eq!(c1.mu(), &expect_mu);

        let c2 = space(2);
        assert_eq!(c2.mu().terms().count(), 4);
        assert!(ContactSpace::new(0).is_err());
    }

    #[test]
    fn poisson_examples() {
        let c = space(1);
        assert_eq!(c.poisson(&x(1, 1), &x(1, 2)), Poly::one(1));
        let x1x2 = &x(1, 1) * &x(1, 2);
        assert_eq!(c.poisson(&x(1, 2), &x1x2), -&x(1, 2));
        assert!(c.poisson(&x1x2, &x1x2).is_zero());
        // Jacobi holds on basic functions and with constants.
        assert!(c.jacobiator(&x(1, 1), &x(1, 2), &x1x2).is_zero());
        assert!(c.jacobiator(&x(1, 0), &x(1, 1), &Poly::one(1)).is_zero());
        // Non-basic triple: the Jacobiator does not vanish.
        assert_eq!(c.jacobiator(&x(1, 0), &x(1, 1), &x(1, 2)), Poly::one(1));
    }

    #[test]
    fn hamiltonian_fields() {
        let c = space(1);
        assert_eq!(
            c.ham(&x(1, 1)),
            MultiVec::basis(1, &[2]).sub(&MultiVec::basis(1, &[0]).poly_mul(&x(1, 1)))
        );
        assert_eq!(c.ham(&x(1, 2)), MultiVec::basis(1, &[1]).neg());
        assert_eq!(c.ham(&x(1, 0)), MultiVec::basis(1, &[1]).poly_mul(&x(1, 1)));
        // Horizontality.
        for f in [x(1, 0), x(1, 1), &x(1, 1) * &x(1, 2)] {
            assert!(c.alpha().interior(&c.ham(&f)).is_zero());
        }
        // flat(omega, ham f) = -df exactly for basic f.
        let basic = &x(1, 1) * &x(1, 2);
        assert_eq!(
            flat(c.omega(), &c.ham(&basic)),
            Form::scalar(basic.clone()).d().neg()
        );
        assert_ne!(
            flat(c.omega(), &c.ham(&x(1, 0))),
            Form::scalar(x(1, 0)).d().neg()
        );
    }

    #[test]
    fn contact_lifts() {
        let c = space(1);
        let hat_x0 = c.hat(&x(1, 0));
        let expect = MultiVec::basis(1, &[0])
            .poly_mul(&x(1, 0))
            .add(&MultiVec::basis(1, &[1]).poly_mul(&x(1, 1)));
        assert_eq!(hat_x0, expect);
        assert_eq!(c.alpha().lie(&hat_x0), *c.alpha());

        assert_eq!(c.hat(&x(1, 1)), MultiVec::basis(1, &[2]));
        assert!(c.alpha().lie(&c.hat(&x(1, 1))).is_zero());
        assert_eq!(c.hat(&Poly::one(1)), *c.eta());

        // L_{hat f} alpha = eta(f) * alpha in general.
        let f = &x(1, 0) * &x(1, 2);
        assert_eq!(
            c.alpha().lie(&c.hat(&f)),
            c.alpha().poly_mul(&f.partial(0))
        );
    }

    #[test]
    fn classification() {
        let c = space(1);
        let f = &(&x(1, 1) * &x(1, 1)) * &x(1, 2);
        assert_eq!(c.contact_class(&c.hat(&f)), ContactClass::Automorphism);
        assert_eq!(
            c.contact_class(&c.hat(&x(1, 0))),
            ContactClass::Transformation(Poly::one(1))
        );
        assert_eq!(
            c.contact_class(&MultiVec::basis(1, &[1])),
            ContactClass::NotContact
        );
    }

    #[test]
    fn invariance_and_normal_form() {
        let c = space(1);
        assert!(c.is_invariant(c.mu()));
        assert!(!c.is_invariant(&MultiVec::basis(1, &[1]).poly_mul(&x(1, 0))));
        assert!(c.is_invariant(&MultiVec::basis(1, &[0]).poly_mul(&x(1, 1))));

        let nf = c.basic_normal_form(c.mu()).unwrap();
        assert_eq!(nf.rep(), &MultiVec::basis(1, &[1]).wedge(&MultiVec::basis(1, &[2])));
        assert!(c
            .basic_normal_form(&MultiVec::basis(1, &[0]).poly_mul(&x(1, 1)))
            .unwrap()
            .is_zero());
        assert!(c
            .basic_normal_form(&MultiVec::basis(1, &[1]).poly_mul(&x(1, 0)))
            .is_err());
    }

    #[test]
    fn basic_complex() {
        let c = space(1);
        let class_mu = c.basic_normal_form(c.mu()).unwrap();

        let w = MultiVec::basis(1, &[1]).poly_mul(&x(1, 1));
        let dw = c.delta_mu(&c.basic_normal_form(&w).unwrap());
        assert_eq!(dw, class_mu);

        let w2 = MultiVec::basis(1, &[1]).poly_mul(&x(1, 2));
        assert!(c.delta_mu(&c.basic_normal_form(&w2).unwrap()).is_zero());

        // Coboundary property on a sample class.
        let sample = c
            .basic_normal_form(&MultiVec::basis(1, &[2]).poly_mul(&(&x(1, 1) * &x(1, 2))))
            .unwrap();
        assert!(c.delta_mu(&c.delta_mu(&sample)).is_zero());

        // Isomorphism values.
        assert_eq!(c.iso_to_basic_forms(&class_mu), *c.omega());
        assert_eq!(
            c.iso_to_basic_forms(&c.basic_normal_form(&MultiVec::basis(1, &[1])).unwrap()),
            Form::basis(1, &[2])
        );
        assert_eq!(
            c.iso_to_basic_forms(&c.basic_normal_form(&MultiVec::scalar(Poly::one(1))).unwrap()),
            Form::scalar(Poly::one(1))
        );
        // d of iso = iso of delta_mu on the primitive above.
        let w_class = c.basic_normal_form(&w).unwrap();
        assert_eq!(
            c.iso_to_basic_forms(&w_class).d(),
            c.iso_to_basic_forms(&c.delta_mu(&w_class))
        );
        // Left inverse.
        assert_eq!(c.iso_inverse(c.omega()).unwrap(), class_mu);
    }

    #[test]
    fn splitting_primitive() {
        // delta_mu(class(sum x_{2i-1} Dx_{2i-1})) = class(mu) for n = 1, 2.
        for n in 1..=2 {
            let c = space(n);
            let mut w = MultiVec::zero(n);
            for i in 1..=n {
                let odd = (2 * i - 1) as u8;
                w = w.add(&MultiVec::basis(n, &[odd]).poly_mul(&Poly::var(n, odd as usize)));
            }
            let lhs = c.delta_mu(&c.basic_normal_form(&w).unwrap());
            let rhs = c.basic_normal_form(c.mu()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn volume() {
        let c = space(1);
        let (a, b) = c.volume_identities(&x(1, 2), &c.hat(&x(1, 1))).unwrap();
        assert!(a.is_zero() && b.is_zero());
        let (a, b) = c.volume_identities(&Poly::one(1), c.eta()).unwrap();
        assert!(a.is_zero() && b.is_zero());
        let f = &x(1, 1) * &x(1, 2);
        let (a, b) = c.volume_identities(&x(1, 1), &c.hat(&f)).unwrap();
        assert!(a.is_zero() && b.is_zero());
        assert!(c.volume_identities(&x(1, 1), &c.hat(&x(1, 0))).is_err());
    }
}
