//! Property tests for the algebraic substrate: polynomial ring axioms and
//! the graded-commutativity of the wedge product, over generated inputs.

use darboux::{Form, Monomial, MultiVec, Poly};
use darboux::{rat, GaussRational, Rational};
use num::Zero;
use proptest::prelude::*;

const N: usize = 1;
const VARS: usize = 3;

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (
            prop::collection::vec(0u32..3, VARS),
            -3i64..=3,
            -1i64..=1,
        ),
        0..4,
    )
    .prop_map(|terms| {
        let mut p = Poly::zero(N);
        for (exps, re, im) in terms {
            p.add_term(
                Monomial(exps),
                GaussRational::new(rat(re, 1), rat(im, 1)),
            );
        }
        p
    })
}

fn arb_form(degree: usize) -> impl Strategy<Value = Form> {
    let tuples: Vec<Vec<u8>> = match degree {
        0 => vec![vec![]],
        1 => vec![vec![0], vec![1], vec![2]],
        2 => vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        _ => vec![vec![0, 1, 2]],
    };
    prop::collection::vec(arb_poly(), tuples.len()).prop_map(move |coeffs| {
        let mut f = Form::zero(N);
        for (t, p) in tuples.iter().zip(coeffs) {
            f.insert(t.clone(), p);
        }
        f
    })
}

proptest! {
    #[test]
    fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&p - &p, Poly::zero(N));
        prop_assert_eq!(&p * &Poly::one(N), p.clone());
    }

    #[test]
    fn partial_leibniz(p in arb_poly(), q in arb_poly(), i in 0usize..VARS) {
        let lhs = (&p * &q).partial(i);
        let rhs = &(&p.partial(i) * &q) + &(&p * &q.partial(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_sign(a in arb_form(1), b in arb_form(2)) {
        // odd * even degree: a^b = b^a; odd * odd: anticommute.
        prop_assert_eq!(a.wedge(&b), b.wedge(&a));
        let c = a.clone();
        prop_assert_eq!(a.wedge(&c).clone(), c.wedge(&a).neg());
    }

    #[test]
    fn d_squared_zero(a in arb_form(0), b in arb_form(1), c in arb_form(2)) {
        prop_assert!(a.d().d().is_zero());
        prop_assert!(b.d().d().is_zero());
        prop_assert!(c.d().d().is_zero());
    }

    #[test]
    fn d_leibniz(a in arb_form(1), b in arb_form(1)) {
        let lhs = a.wedge(&b).d();
        let rhs = a.d().wedge(&b).add(&a.wedge(&b.d()).neg());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_is_ring_homomorphism(p in arb_poly(), q in arb_poly()) {
        let pt = [rat(1, 2), rat(-1, 1), rat(2, 3)];
        let sum = (&p + &q).eval(&pt);
        let prod = (&p * &q).eval(&pt);
        prop_assert_eq!(sum, p.eval(&pt) + q.eval(&pt));
        prop_assert_eq!(prod, p.eval(&pt) * q.eval(&pt));
    }
}

#[test]
fn zero_poly_behaves() {
    let z = Poly::zero(N);
    assert!(z.is_zero());
    assert!(z.is_basic());
    assert_eq!(z.eval(&[Rational::zero(), Rational::zero(), Rational::zero()]), GaussRational::zero());
    assert!(Form::zero(N).d().is_zero());
    assert!(MultiVec::zero(N).is_zero());
}
