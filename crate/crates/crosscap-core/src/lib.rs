//! Exact-arithmetic invariants and concordance obstructions for three
//! parametric knot families and 2-cable knots.
//!
//! The library decides a necessary condition for a knot to have concordance
//! crosscap number 1: such a knot is concordant to a `(2,q)`-cable, the
//! signature pins down the admissible `q`, and the connected sum with the
//! mirrored cable is slice, which forces the product of the two knot
//! determinants to be an odd perfect square. When every admissible product
//! fails the square test, the concordance crosscap number is at least 2,
//! while an explicit non-orientable surface in the 4-ball keeps the
//! 4-dimensional crosscap number at 1 — exhibiting a gap between the two.
//!
//! Everything is computed in exact integer/rational arithmetic; no floating
//! point is used anywhere.
//!
//! Module map:
//!
//! - [`exactmath`] — integer square roots, perfect-square tests, p-adic
//!   valuations, deterministic primality, and exact determinants/inertia of
//!   small symmetric integer matrices.
//! - [`knotmodel`] — the parametric families, their pretzel forms, Goeritz
//!   presentations with normal Euler numbers, and signature/determinant
//!   computations.
//! - [`obstruction`] — the decision procedure: signature → admissible cable
//!   candidates → determinant product → odd-square test.
//! - [`familysearch`] — parameter-grid sweeps with certified-subfamily
//!   predicates (3-adic valuation and primality certificates).

pub mod exactmath;
pub mod familysearch;
pub mod knotmodel;
pub mod obstruction;
