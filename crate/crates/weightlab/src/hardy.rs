//! The Hardy operator `P`, its adjoint `Q`, the Calderón operator `P + Q`
//! and the weighted boundedness constants attached to them.
//!
//! For a positive weight `w` on `(0, ∞)` the scans estimate
//!
//! ```text
//! [w]_{P,L1}   = sup_t (1/w(t))      ∫_t^∞ w(s)/s ds
//! [w]_{Q,L1}   = sup_t (1/(t w(t)))  ∫_0^t w(s)  ds
//! [w]_{P,L∞}   = sup_t (w(t)/t)      ∫_0^t ds/w(s)
//! [w]_{Q,L∞}   = sup_t  w(t)         ∫_t^∞ ds/(s w(s))
//! [w]_{P+Q,L1} = sup_t (1/w(t))      ∫_0^∞ w(s)/(t+s) ds
//! [w]_{P+Q,L∞} = sup_t  w(t)         ∫_0^∞ ds/((t+s) w(s))
//! ```
//!
//! Each supremum is approximated by the maximum over the window's nodes;
//! integrals use the logarithmic trapezoid core plus analytic power-law tail
//! completion. Divergence is decided analytically (non-integrable tail law,
//! overflow) or by the two-refinement policy: widening the window twice must
//! move the estimate by more than `rel_tol` both times.

use crate::error::{Result, WeightError};
use crate::func::FunctionOnHalfLine;
use crate::quad::QuadratureSpec;
use crate::report::ConditionReport;
use crate::scalar::Real;

/// `(Pf)(t) = (1/t) ∫_0^t f(s) ds`, sampled on the window nodes.
///
/// Fails when `f` is not integrable near zero (the average would be infinite
/// at every `t`).
pub fn hardy_apply<T: Real>(
    f: &FunctionOnHalfLine<T>,
    q: &QuadratureSpec<T>,
) -> Result<FunctionOnHalfLine<T>> {
    let low = f.tail_low().moment_low(q.t_min()).ok_or_else(|| {
        WeightError::Domain("f is not integrable near 0; Hardy averages diverge".into())
    })?;
    let nodes = q.nodes();
    let prefix = q.cumulative(|t| f.eval(t));
    let values: Vec<T> = nodes
        .iter()
        .zip(&prefix)
        .map(|(&t, &p)| ((low + p) / t).max(T::min_positive_value()))
        .collect();
    FunctionOnHalfLine::sampled(nodes, values)
}

/// `(Qf)(t) = ∫_t^∞ f(s)/s ds`, sampled on the window nodes.
///
/// Fails when `f(s)/s` is not integrable at infinity. Values that underflow
/// to zero at the far end of the window are clamped to the smallest positive
/// float so the returned table stays a valid positive function.
pub fn adjoint_apply<T: Real>(
    f: &FunctionOnHalfLine<T>,
    q: &QuadratureSpec<T>,
) -> Result<FunctionOnHalfLine<T>> {
    let utail = f
        .tail_high()
        .mul_power(-T::one())
        .moment_high(q.t_max())
        .ok_or_else(|| {
            WeightError::Domain("f(s)/s is not integrable at infinity; Q f diverges".into())
        })?;
    let nodes = q.nodes();
    let suffix = q.suffix(|s| f.eval(s) / s);
    let values: Vec<T> = suffix
        .iter()
        .map(|&s| (s + utail).max(T::min_positive_value()))
        .collect();
    FunctionOnHalfLine::sampled(nodes, values)
}

/// Runs a sup-scan under the two-refinement divergence policy.
///
/// `estimator` returns `(max, argmax)` over the nodes of the window it is
/// given, or `None` when an analytic tail diverges or an evaluation
/// overflows. The base window's estimate is reported; widening twice decides
/// the verdict.
pub(crate) fn scan_with_refinement<T, F>(q: &QuadratureSpec<T>, estimator: F) -> ConditionReport<T>
where
    T: Real,
    F: Fn(&QuadratureSpec<T>) -> Option<(T, T)>,
{
    let Some((v0, arg0)) = estimator(q) else {
        return ConditionReport::diverging(q.t_min(), q);
    };
    if !v0.is_finite() {
        return ConditionReport::diverging(arg0, q);
    }
    let q1 = q.widened(1);
    let q2 = q.widened(2);
    let (Some((v1, _)), Some((v2, arg2))) = (estimator(&q1), estimator(&q2)) else {
        return ConditionReport::diverging(arg0, q);
    };
    if !v1.is_finite() || !v2.is_finite() {
        return ConditionReport::diverging(arg0, q);
    }
    let floor = T::min_positive_value();
    let moved1 = (v1 - v0).abs() > q.rel_tol() * v1.abs().max(floor);
    let moved2 = (v2 - v1).abs() > q.rel_tol() * v2.abs().max(floor);
    match (moved1, moved2) {
        (true, true) => ConditionReport::diverging(arg0, q),
        (false, false) => ConditionReport::finite(v0, arg0, q),
        // Settled only after widening once: the wider window's estimate is
        // the meaningful one, so report it together with that window.
        (true, false) => ConditionReport::finite(v2, arg2, &q2),
        // Stable, then moving again: refinement trajectory is wobbling.
        (false, true) => ConditionReport::inconclusive(v0, arg0, q),
    }
}

/// Scans `sup_t (1/w(t)) ∫_t^∞ w(s)/s ds`.
pub fn bound_p_l1<T: Real>(
    w: &FunctionOnHalfLine<T>,
    q: &QuadratureSpec<T>,
) -> ConditionReport<T> {
    scan_with_refinement(q, |qq| {
        let utail = w
            .tail_high()
            .mul_power(-T::one())
            .moment_high(qq.t_max())?;
        let nodes = qq.nodes();
        let suf = qq.suffix(|s| w.eval(s) / s);
        max_over_nodes(&nodes, |i, t| {
            let wt = w.eval(t);
            positive(wt)?;
            Some((suf[i] + utail) / wt)
        })
    })
}

/// Scans `sup_t (1/(t w(t))) ∫_0^t w(s) ds`.
pub fn bound_q_l1<T: Real>(
    w: &FunctionOnHalfLine<T>,
    q: &QuadratureSpec<T>,
) -> ConditionReport<T> {
    scan_with_refinement(q, |qq| {
        let ltail = w.tail_low().moment_low(qq.t_min())?;
        let nodes = qq.nodes();
        let pre = qq.cumulative(|s| w.eval(s));
        max_over_nodes(&nodes, |i, t| {
            let wt = w.eval(t);
            positive(wt)?;
            Some((ltail + pre[i]) / (t * wt))
        })
    })
}

/// Scans `sup_t (w(t)/t) ∫_0^t ds/w(s)`.
pub fn bound_p_linf<T: Real>(
    w: &FunctionOnHalfLine<T>,
    q: &QuadratureSpec<T>,
) -> ConditionReport<T> {
    scan_with_refinement(q, |qq| {
        let ltail = w.tail_low().recip()?.moment_low(qq.t_min())?;
        let nodes = qq.nodes();
        let pre = qq.cumulative(|s| w.eval(s).recip());
        max_over_nodes(&nodes, |i, t| {
            let wt = w.eval(t);
            positive(wt)?;
            Some(wt / t * (ltail + pre[i]))
        })
    })
}

/// Scans `sup_t w(t) ∫_t^∞ ds/(s w(s))`.
pub fn bound_q_linf<T: Real>(
    w: &FunctionOnHalfLine<T>,
    q: &QuadratureSpec<T>,
) -> ConditionReport<T> {
    scan_with_refinement(q, |qq| {
        let utail = w
            .tail_high()
            .recip()?
            .mul_power(-T::one())
            .moment_high(qq.t_max())?;
        let nodes = qq.nodes();
        let suf = qq.suffix(|s| (s * w.eval(s)).recip());
        max_over_nodes(&nodes, |i, t| {
            let wt = w.eval(t);
            positive(wt)?;
            Some(wt * (suf[i] + utail))
        })
    })
}

/// The Stieltjes transform `(Sw)(t) = ∫_0^∞ w(s)/(t+s) ds` at every node of
/// the window. `None` when a boundary tail is not integrable or an
/// evaluation overflows.
pub fn stieltjes_curve<T: Real>(
    w: &FunctionOnHalfLine<T>,
    q: &QuadratureSpec<T>,
) -> Option<Vec<T>> {
    let low = w.tail_low();
    let high = w.tail_high();
    let nodes = q.nodes();
    let masses = trapezoid_masses(&nodes, q.log_step(), |s| w.eval(s))?;
    let mut out = Vec::with_capacity(nodes.len());
    for &t in &nodes {
        let mut acc = low.stieltjes_low(q.t_min(), t)? + high.stieltjes_high(q.t_max(), t)?;
        for (j, &s) in nodes.iter().enumerate() {
            acc += masses[j] / (t + s);
        }
        if !acc.is_finite() {
            return None;
        }
        out.push(acc);
    }
    Some(out)
}

/// The Calderón comparison curve `(Pw)(t) + (Qw)(t)` at every node, built
/// from exactly the same samples and tail laws as [`stieltjes_curve`], so
/// the pointwise sandwich `Sw <= Pw + Qw <= 2 Sw` survives in floating
/// point. `None` under the same conditions as the Stieltjes curve.
pub fn calderon_upper_curve<T: Real>(
    w: &FunctionOnHalfLine<T>,
    q: &QuadratureSpec<T>,
) -> Option<Vec<T>> {
    let ltail = w.tail_low().moment_low(q.t_min())?;
    let utail = w
        .tail_high()
        .mul_power(-T::one())
        .moment_high(q.t_max())?;
    let nodes = q.nodes();
    let pre = q.cumulative(|s| w.eval(s));
    let suf = q.suffix(|s| w.eval(s) / s);
    let mut out = Vec::with_capacity(nodes.len());
    for (i, &t) in nodes.iter().enumerate() {
        let v = (ltail + pre[i]) / t + suf[i] + utail;
        if !v.is_finite() {
            return None;
        }
        out.push(v);
    }
    Some(out)
}

/// Scans `[w]_{P+Q,L1} = sup_t (1/w(t)) (Sw)(t)`.
pub fn calderon_bound_l1<T: Real>(
    w: &FunctionOnHalfLine<T>,
    q: &QuadratureSpec<T>,
) -> ConditionReport<T> {
    scan_with_refinement(q, |qq| {
        let curve = stieltjes_curve(w, qq)?;
        let nodes = qq.nodes();
        max_over_nodes(&nodes, |i, t| {
            let wt = w.eval(t);
            positive(wt)?;
            Some(curve[i] / wt)
        })
    })
}

/// Scans `[w]_{P+Q,L∞} = sup_t w(t) ∫_0^∞ ds/((t+s) w(s))`.
pub fn calderon_bound_linf<T: Real>(
    w: &FunctionOnHalfLine<T>,
    q: &QuadratureSpec<T>,
) -> ConditionReport<T> {
    scan_with_refinement(q, |qq| {
        let lowr = w.tail_low().recip()?;
        let highr = w.tail_high().recip()?;
        let nodes = qq.nodes();
        let masses = trapezoid_masses(&nodes, qq.log_step(), |s| w.eval(s).recip())?;
        let mut curve = Vec::with_capacity(nodes.len());
        for &t in &nodes {
            let mut acc =
                lowr.stieltjes_low(qq.t_min(), t)? + highr.stieltjes_high(qq.t_max(), t)?;
            for (j, &s) in nodes.iter().enumerate() {
                acc += masses[j] / (t + s);
            }
            if !acc.is_finite() {
                return None;
            }
            curve.push(acc);
        }
        max_over_nodes(&nodes, |i, t| {
            let wt = w.eval(t);
            positive(wt)?;
            Some(wt * curve[i])
        })
    })
}

/// The Stieltjes transform at a single point `t` inside the window.
///
/// Returns `+∞` when a boundary tail is not integrable.
pub fn stieltjes<T: Real>(
    w: &FunctionOnHalfLine<T>,
    t: T,
    q: &QuadratureSpec<T>,
) -> Result<T> {
    if !(t >= q.t_min()) || !(t <= q.t_max()) {
        return Err(WeightError::Domain(format!(
            "evaluation point {t} lies outside the window [{}, {}]",
            q.t_min(),
            q.t_max()
        )));
    }
    let nodes = q.nodes();
    let Some(masses) = trapezoid_masses(&nodes, q.log_step(), |s| w.eval(s)) else {
        return Err(WeightError::Domain("weight overflowed on the window".into()));
    };
    let tails = (
        w.tail_low().stieltjes_low(q.t_min(), t),
        w.tail_high().stieltjes_high(q.t_max(), t),
    );
    let (Some(lo), Some(hi)) = tails else {
        return Ok(T::infinity());
    };
    let mut acc = lo + hi;
    for (j, &s) in nodes.iter().enumerate() {
        acc += masses[j] / (t + s);
    }
    Ok(acc)
}

/// Trapezoid masses `f(s_j) · s_j · Δu · edge_j` for a log-uniform node set;
/// `None` on overflow.
fn trapezoid_masses<T: Real, F: Fn(T) -> T>(nodes: &[T], du: T, f: F) -> Option<Vec<T>> {
    let n = nodes.len();
    let half = T::of(0.5);
    let mut out = Vec::with_capacity(n);
    for (j, &s) in nodes.iter().enumerate() {
        let edge = if j == 0 || j == n - 1 { half } else { T::one() };
        let v = f(s);
        if !v.is_finite() {
            return None;
        }
        out.push(v * s * du * edge);
    }
    Some(out)
}

/// Maximum of `e(i, t_i)` over the nodes; `None` propagates overflow.
fn max_over_nodes<T: Real, F: Fn(usize, T) -> Option<T>>(
    nodes: &[T],
    e: F,
) -> Option<(T, T)> {
    let mut best = T::neg_infinity();
    let mut arg = nodes[0];
    for (i, &t) in nodes.iter().enumerate() {
        let v = e(i, t)?;
        if !v.is_finite() {
            return None;
        }
        if v > best {
            best = v;
            arg = t;
        }
    }
    Some((best, arg))
}

fn positive<T: Real>(v: T) -> Option<()> {
    (v.is_finite() && v > T::zero()).then_some(())
}
