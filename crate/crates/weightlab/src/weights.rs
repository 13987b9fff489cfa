//! Derived weights and admissibility checks: the fundamental weight
//! generated by an admissible base weight, translation-ratio monotonicity,
//! log-convexity and the tail ratio used by extrapolation arguments.

use crate::error::{Result, WeightError};
use crate::func::FunctionOnHalfLine;
use crate::hardy::{calderon_bound_l1, calderon_upper_curve};
use crate::quad::QuadratureSpec;
use crate::report::Verdict;
use crate::scalar::Real;

/// The fundamental weight `v(t) = (1/t) ∫_0^t w(s) ds + ∫_t^∞ w(s)/s ds`
/// generated by `w`, sampled on the window nodes.
///
/// Requires `w` to be Calderón-admissible on `L¹` (finite verdict); the
/// Hardy operator and its adjoint are then bounded on `L¹_v` as well, and
/// `v <= ([w]_P + [w]_Q) · w` holds on the nodes.
pub fn fundamental_weight<T: Real>(
    w: &FunctionOnHalfLine<T>,
    q: &QuadratureSpec<T>,
) -> Result<FunctionOnHalfLine<T>> {
    let cert = calderon_bound_l1(w, q);
    if cert.verdict != Verdict::Finite {
        return Err(WeightError::Domain(
            "the fundamental weight needs a Calderón-admissible base weight".into(),
        ));
    }
    let values = calderon_upper_curve(w, q).ok_or_else(|| {
        WeightError::Domain("base weight has a non-integrable boundary tail".into())
    })?;
    FunctionOnHalfLine::sampled(q.nodes(), values)
}

/// Checks that `s ↦ v(t+s)/v(s)` is non-decreasing over the window nodes.
///
/// Constant ratios (exponential weights) pass; a relative slack of `1e-9`
/// absorbs rounding.
pub fn ratio_monotone_check<T: Real>(
    v: &FunctionOnHalfLine<T>,
    t: T,
    q: &QuadratureSpec<T>,
) -> bool {
    if !(t > T::zero()) || !t.is_finite() {
        return false;
    }
    let slack = T::of(1e-9);
    let mut prev = T::neg_infinity();
    for &s in &q.nodes() {
        let r = v.eval(t + s) / v.eval(s);
        if !r.is_finite() {
            return false;
        }
        if r < prev - slack * prev.abs() {
            return false;
        }
        prev = r;
    }
    true
}

/// Midpoint log-convexity test: for adjacent nodes `t_i < t_{i+1}` the value
/// of `ln v` at the arithmetic midpoint must not exceed the average of the
/// endpoint values (up to rounding slack).
pub fn log_convexity_check<T: Real>(v: &FunctionOnHalfLine<T>, q: &QuadratureSpec<T>) -> bool {
    let nodes = q.nodes();
    let half = T::of(0.5);
    for pair in nodes.windows(2) {
        let (t1, t2) = (pair[0], pair[1]);
        let m = half * (t1 + t2);
        let (v1, v2, vm) = (v.eval(t1), v.eval(t2), v.eval(m));
        if !(v1 > T::zero()) || !(v2 > T::zero()) || !(vm > T::zero()) {
            return false;
        }
        let lhs = vm.ln();
        let rhs = half * (v1.ln() + v2.ln());
        let tol = T::of(1e-9) * (T::one() + lhs.abs().max(rhs.abs()));
        if lhs > rhs + tol {
            return false;
        }
    }
    true
}

/// Checks that `v` is non-increasing over the window nodes.
pub fn non_increasing_check<T: Real>(v: &FunctionOnHalfLine<T>, q: &QuadratureSpec<T>) -> bool {
    let slack = T::of(1e-12);
    let mut prev = T::infinity();
    for &t in &q.nodes() {
        let val = v.eval(t);
        if !val.is_finite() {
            return false;
        }
        if val > prev * (T::one() + slack) {
            return false;
        }
        prev = val;
    }
    true
}

/// The translation tail ratio `v(t + s)/v(s)` at the largest node
/// `s = t_max`, together with a stability flag from the two-refinement
/// policy (widening the window twice moves the ratio by less than
/// `rel_tol` each time).
pub fn tail_ratio<T: Real>(
    v: &FunctionOnHalfLine<T>,
    t: T,
    q: &QuadratureSpec<T>,
) -> (T, bool) {
    let ratio = |qq: &QuadratureSpec<T>| {
        let s = qq.t_max();
        v.eval(t + s) / v.eval(s)
    };
    let r0 = ratio(q);
    let r1 = ratio(&q.widened(1));
    let r2 = ratio(&q.widened(2));
    let floor = T::min_positive_value();
    let stable = r0.is_finite()
        && r1.is_finite()
        && r2.is_finite()
        && (r1 - r0).abs() <= q.rel_tol() * r0.abs().max(floor)
        && (r2 - r1).abs() <= q.rel_tol() * r1.abs().max(floor);
    (r0, stable)
}
