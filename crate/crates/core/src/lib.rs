//! Exact symbolic calculus for contact geometry in a global Darboux chart
//! and for finite-dimensional Lie algebra (co)homology over the rationals.
//!
//! Everything is computed exactly: coefficients live in Q or Q(i), linear
//! algebra is fraction-free or rational Gauss-Jordan, and every identity
//! checked by the verification suites is checked to literal zero.

pub mod contact;
pub mod exterior;
pub mod liealg;
pub mod poly;
pub mod prequant;
pub mod scalar;
pub mod verify;

pub use contact::{BasicClass, ContactClass, ContactSpace};
pub use exterior::{flat, pair, schouten, sharp, Form, MultiVec};
pub use poly::{Monomial, Poly};
pub use scalar::{rat, rat_int, GaussRational, Rational};
