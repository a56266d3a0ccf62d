//! Exact computation in hom-associative Ore extensions of `K[y]`.
//!
//! The crate covers the two families `Q_q^k` (hom-associative quantum planes)
//! and `U^k(L)` (hom-associative enveloping algebras of the two-dimensional
//! non-abelian Lie algebra), built as `(K[y][x; sigma, delta], *, alpha_k)`
//! with `a * b = alpha_k(a . b)`, together with their formal deformations in
//! `t = k - 1`.
//!
//! Modules, bottom-up:
//!
//! * [`coefficients`]: `Q[q, q^-1, k, t]` with optional truncation in `t`.
//! * [`base_ring`]: `K[y]`, endomorphisms and sigma-derivations.
//! * [`ore`]: normal-form elements, `pi_i^m`, the Ore and star products.
//! * [`hom`]: associators, brackets and the exhaustive identity checker.
//! * [`deformation`]: `t`-series, `alpha_t`, the deformed product and bracket.
//! * [`expr`]: a small expression language for elements.

pub mod base_ring;
pub mod coefficients;
pub mod deformation;
pub mod error;
pub mod expr;
pub mod hom;
pub mod ore;
mod render;

pub use base_ring::{apply_deriv, apply_endo, maps_commute, BasePoly, MapKind, MapSpec, Verdict};
pub use coefficients::{ParamExp, ParamScalar, Rational};
pub use deformation::{
    alpha_t, check_deformation, series_from_star, DeformationCheck, DeformedStructure, SeriesOrePoly,
};
pub use error::{Error, Result};
pub use expr::{eval_str, evaluate_expr, parse, EvalConfig, Evaluation, Expr};
pub use hom::{
    associator, bracket, certify, certify_weak_unit, hom_associator, hom_jacobiator, CheckReport, Identity,
    ProductHandle, ProductMode, Witness,
};
pub use ore::{
    extend_alpha, monomial_grid, ore_mul, pi, pi_row, star, weak_unit_check, AlgebraPreset, Bidegree, OrePoly,
    PresetName,
};
