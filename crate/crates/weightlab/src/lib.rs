//! Numerical laboratory for weighted Hardy-type inequalities on `(0, ∞)`.
//!
//! The crate provides the half-line plumbing shared by the rest of the
//! workspace — log-uniform quadrature windows with analytic power-law tail
//! completion, closed-form and sampled positive functions — and on top of it
//! the operator theory of the Hardy operator `P`, its adjoint `Q` and the
//! Calderón operator `P + Q`:
//!
//! * weighted boundedness constants on `L¹_w` and `L^∞_w` with a
//!   deterministic divergence policy ([`hardy`]),
//! * the Stieltjes transform and the two-sided comparison
//!   `Sw <= Pw + Qw <= 2 Sw` ([`hardy`]),
//! * dilation indices, integral index criteria, least concave majorants and
//!   sup-type representations of quasi-concave functions ([`shape`]),
//! * fundamental weights and the admissibility checks used by extrapolation
//!   arguments ([`weights`]).
//!
//! Everything is generic over the scalar type through the [`Real`] trait
//! (`f32` or `f64`); the `*F64`/`*F32` aliases at the crate root pick a
//! concrete precision.
//!
//! ```
//! use weightlab::{FunctionOnHalfLineF64, QuadratureSpecF64, Verdict};
//!
//! let w = FunctionOnHalfLineF64::power(-0.5);
//! let q = QuadratureSpecF64::standard();
//! let report = weightlab::hardy::calderon_bound_l1(&w, &q);
//! assert_eq!(report.verdict, Verdict::Finite);
//! // ∫_0^∞ s^{-1/2}/(t+s) ds / t^{-1/2} = π for every t.
//! assert!((report.expect_constant() - std::f64::consts::PI).abs() < 1e-2);
//! ```

pub mod error;
pub mod func;
pub mod hardy;
pub mod quad;
pub mod report;
pub mod scalar;
pub mod shape;
pub mod weights;

pub use error::{Result, WeightError};
pub use func::FunctionOnHalfLine;
pub use hardy::{
    adjoint_apply, bound_p_l1, bound_p_linf, bound_q_l1, bound_q_linf, calderon_bound_l1,
    calderon_bound_linf, calderon_upper_curve, hardy_apply, stieltjes, stieltjes_curve,
};
pub use quad::{QuadratureRule, QuadratureSpec, TailLaw};
pub use report::{curve_to_csv, ConditionReport, Verdict};
pub use scalar::Real;
pub use shape::{
    dilation_function, dilation_indices, integral_index_check, least_concave_majorant,
    linf_phi_representation, DilationIndices, IntegralIndexReport,
};
pub use weights::{
    fundamental_weight, log_convexity_check, non_increasing_check, ratio_monotone_check,
    tail_ratio,
};

/// Double-precision alias for [`FunctionOnHalfLine`].
pub type FunctionOnHalfLineF64 = FunctionOnHalfLine<f64>;
/// Single-precision alias for [`FunctionOnHalfLine`].
pub type FunctionOnHalfLineF32 = FunctionOnHalfLine<f32>;
/// Double-precision alias for [`QuadratureSpec`].
pub type QuadratureSpecF64 = QuadratureSpec<f64>;
/// Single-precision alias for [`QuadratureSpec`].
pub type QuadratureSpecF32 = QuadratureSpec<f32>;
/// Double-precision alias for [`ConditionReport`].
pub type ConditionReportF64 = ConditionReport<f64>;
/// Single-precision alias for [`ConditionReport`].
pub type ConditionReportF32 = ConditionReport<f32>;
