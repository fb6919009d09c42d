//! Numerical tools for hunting ideal points of hyperbolic 3-manifold
//! character varieties whose associated roots of unity are not `±1`.
//!
//! The crate has four layers:
//!
//! * [`triangulation`] reads ideal triangulations (SnapPea-style gluing
//!   tables), computes edge classes and builds gluing equations in
//!   monomial-exponent form.
//! * [`deformation`] evaluates and solves gluing systems, follows orbifold
//!   Dehn-filling paths and classifies where they end up (a hyperbolic
//!   structure, or a degeneration toward an ideal point).
//! * [`sl2`] is an `SL(2,C)` matrix and trace calculus for rank-2 free
//!   groups, reducing any word's trace to a polynomial in `tr A`, `tr B`,
//!   `tr AB`.
//! * [`ptb`] builds the explicit character-variety component of the
//!   punctured-torus bundle with monodromy `-(R^2 L^2)` and checks its
//!   trace identities and ideal points.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod deformation;
pub mod expr;
pub mod json;
pub mod ptb;
pub mod sl2;
pub mod triangulation;

pub use num_complex::Complex64;
