//! Shape analysis for quasi-concave functions: the dilation function and its
//! indices, the integral index criteria, the least concave majorant and the
//! sup-type representation derived from a weight.

use crate::error::{Result, WeightError};
use crate::func::FunctionOnHalfLine;
use crate::hardy::scan_with_refinement;
use crate::quad::QuadratureSpec;
use crate::report::ConditionReport;
use crate::scalar::Real;
use serde::Serialize;

/// Lower and upper dilation indices of a quasi-concave function.
///
/// `alpha` and `beta` are least-squares slopes of `ln s_φ` against `ln t`
/// over the outermost decade of the window at each end. For a quasi-concave
/// `φ` both land in `[0, 1]` with `alpha <= beta` up to regression noise.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DilationIndices<T: Real> {
    pub alpha: T,
    pub beta: T,
}

/// Finiteness of the two integral index criteria together with the index
/// estimates they should agree with.
///
/// `near_zero` reports `sup_t (1/φ(t)) ∫_0^t φ(s)/s ds`, finite exactly when
/// `alpha > 0`; `near_infinity` reports `sup_t (t/φ(t)) ∫_t^∞ φ(s)/s² ds`,
/// finite exactly when `beta < 1`. `consistent` is true when both verdicts
/// match the index conditions (with a `1e-6` margin on the indices).
#[derive(Debug, Clone, Serialize)]
pub struct IntegralIndexReport<T: Real> {
    pub near_zero: ConditionReport<T>,
    pub near_infinity: ConditionReport<T>,
    pub alpha: T,
    pub beta: T,
    pub consistent: bool,
}

/// The dilation function `s_φ(t) = sup_r φ(rt)/φ(r)` on the window nodes.
///
/// The supremum is scanned over the window's node set; products `r·t` land
/// on a doubled log-uniform grid, so `φ` is tabulated once and the scan is
/// pure arithmetic. Requires `φ` quasi-concave.
pub fn dilation_function<T: Real>(
    phi: &FunctionOnHalfLine<T>,
    q: &QuadratureSpec<T>,
) -> Result<(Vec<T>, Vec<T>)> {
    if !phi.is_quasi_concave(q) {
        return Err(WeightError::InvalidFunction(
            "dilation analysis requires a quasi-concave function".into(),
        ));
    }
    let nodes = q.nodes();
    let n = nodes.len();
    let du = q.log_step();
    let u_min = q.t_min().ln();
    // φ on the node grid and on the product grid { t_j · t_k } =
    // { exp(2 u_min + m Δu) : 0 <= m <= 2n-2 }.
    let phi_nodes: Vec<T> = nodes.iter().map(|&t| phi.eval(t)).collect();
    let products: Vec<T> = (0..2 * n - 1)
        .map(|m| {
            let u = T::of(2.0) * u_min + T::of_usize(m) * du;
            phi.eval(u.exp())
        })
        .collect();
    let mut s_values = Vec::with_capacity(n);
    for k in 0..n {
        let mut best = T::neg_infinity();
        for j in 0..n {
            let ratio = products[j + k] / phi_nodes[j];
            if ratio > best {
                best = ratio;
            }
        }
        if !best.is_finite() {
            return Err(WeightError::InvalidFunction(
                "dilation ratio overflowed on the window".into(),
            ));
        }
        s_values.push(best);
    }
    Ok((nodes, s_values))
}

/// Dilation indices `α_φ`, `β_φ` from log-log regression of the dilation
/// function over the outermost decade at each window end.
pub fn dilation_indices<T: Real>(
    phi: &FunctionOnHalfLine<T>,
    q: &QuadratureSpec<T>,
) -> Result<DilationIndices<T>> {
    let (nodes, s_values) = dilation_function(phi, q)?;
    let ten = T::of(10.0);
    let alpha = log_log_slope(&nodes, &s_values, |t| t <= q.t_min() * ten)?;
    let beta = log_log_slope(&nodes, &s_values, |t| t >= q.t_max() / ten)?;
    Ok(DilationIndices { alpha, beta })
}

/// Least-squares slope of `ln v` against `ln t` over the selected nodes.
fn log_log_slope<T: Real, P: Fn(T) -> bool>(
    nodes: &[T],
    values: &[T],
    select: P,
) -> Result<T> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&t, &v) in nodes.iter().zip(values) {
        if select(t) {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(WeightError::InvalidFunction(
                    "regression window contains a non-positive value".into(),
                ));
            }
            xs.push(t.ln());
            ys.push(v.ln());
        }
    }
    if xs.len() < 2 {
        return Err(WeightError::Domain(
            "regression window selects fewer than two nodes".into(),
        ));
    }
    let n = T::of_usize(xs.len());
    let xbar = xs.iter().fold(T::zero(), |a, &x| a + x) / n;
    let ybar = ys.iter().fold(T::zero(), |a, &y| a + y) / n;
    let mut num = T::zero();
    let mut den = T::zero();
    for (&x, &y) in xs.iter().zip(&ys) {
        num += (x - xbar) * (y - ybar);
        den += (x - xbar) * (x - xbar);
    }
    Ok(num / den)
}

/// Decides the two integral index criteria for a quasi-concave `φ` and
/// checks the verdicts against the index conditions `α_φ > 0`, `β_φ < 1`.
pub fn integral_index_check<T: Real>(
    phi: &FunctionOnHalfLine<T>,
    q: &QuadratureSpec<T>,
) -> Result<IntegralIndexReport<T>> {
    let indices = dilation_indices(phi, q)?;
    // sup_t (1/φ(t)) ∫_0^t φ(s)/s ds.
    let near_zero = scan_with_refinement(q, |qq| {
        let ltail = phi
            .tail_low()
            .mul_power(-T::one())
            .moment_low(qq.t_min())?;
        let nodes = qq.nodes();
        let pre = qq.cumulative(|s| phi.eval(s) / s);
        let mut best = T::neg_infinity();
        let mut arg = nodes[0];
        for (i, &t) in nodes.iter().enumerate() {
            let e = (ltail + pre[i]) / phi.eval(t);
            if !e.is_finite() {
                return None;
            }
            if e > best {
                best = e;
                arg = t;
            }
        }
        Some((best, arg))
    });
    // sup_t (t/φ(t)) ∫_t^∞ φ(s)/s² ds.
    let near_infinity = scan_with_refinement(q, |qq| {
        let utail = phi
            .tail_high()
            .mul_power(-T::of(2.0))
            .moment_high(qq.t_max())?;
        let nodes = qq.nodes();
        let suf = qq.suffix(|s| phi.eval(s) / (s * s));
        let mut best = T::neg_infinity();
        let mut arg = nodes[0];
        for (i, &t) in nodes.iter().enumerate() {
            let e = t * (suf[i] + utail) / phi.eval(t);
            if !e.is_finite() {
                return None;
            }
            if e > best {
                best = e;
                arg = t;
            }
        }
        Some((best, arg))
    });
    let eps = T::of(1e-6);
    let consistent = (near_zero.is_finite() == (indices.alpha > eps))
        && (near_infinity.is_finite() == (indices.beta < T::one() - eps));
    Ok(IntegralIndexReport {
        near_zero,
        near_infinity,
        alpha: indices.alpha,
        beta: indices.beta,
        consistent,
    })
}

/// The least concave majorant of `φ` on the window, sampled on the nodes.
///
/// The upper concave hull of the node samples is built in linear
/// coordinates by a monotone-chain sweep and evaluated back on every node.
/// For quasi-concave `φ` the result `φ̂` satisfies `φ <= φ̂ <= 2 φ` on the
/// nodes. Requires `φ` quasi-concave.
pub fn least_concave_majorant<T: Real>(
    phi: &FunctionOnHalfLine<T>,
    q: &QuadratureSpec<T>,
) -> Result<FunctionOnHalfLine<T>> {
    if !phi.is_quasi_concave(q) {
        return Err(WeightError::InvalidFunction(
            "the concave majorant bound needs a quasi-concave function".into(),
        ));
    }
    let nodes = q.nodes();
    let values: Vec<T> = nodes.iter().map(|&t| phi.eval(t)).collect();
    for &v in &values {
        if !v.is_finite() || !(v > T::zero()) {
            return Err(WeightError::InvalidFunction(
                "majorant input must be positive and finite on the window".into(),
            ));
        }
    }
    // Upper hull by monotone chain: pop while the middle point sits on or
    // below the chord of its neighbours.
    let mut hull: Vec<(T, T)> = Vec::new();
    for (&t, &v) in nodes.iter().zip(&values) {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            let cross = (x2 - x1) * (v - y1) - (y2 - y1) * (t - x1);
            if cross >= T::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((t, v));
    }
    let mut majorant = Vec::with_capacity(nodes.len());
    let mut seg = 0usize;
    for &t in &nodes {
        while seg + 1 < hull.len() && hull[seg + 1].0 < t {
            seg += 1;
        }
        let (x1, y1) = hull[seg];
        let value = if seg + 1 < hull.len() {
            let (x2, y2) = hull[seg + 1];
            y1 + (y2 - y1) * (t - x1) / (x2 - x1)
        } else {
            y1
        };
        majorant.push(value.max(T::min_positive_value()));
    }
    FunctionOnHalfLine::sampled(nodes, majorant)
}

/// The quasi-concave function `φ(t) = inf_s max(1, t/s) · s/w(s)` generated
/// by a weight `w`, with the infimum scanned over the window nodes.
///
/// Each `s`-term is quasi-concave in `t`, hence so is the pointwise
/// infimum; the output always passes the quasi-concavity check.
pub fn linf_phi_representation<T: Real>(
    w: &FunctionOnHalfLine<T>,
    q: &QuadratureSpec<T>,
) -> Result<FunctionOnHalfLine<T>> {
    let nodes = q.nodes();
    // s / w(s) cached per node.
    let base: Vec<T> = nodes.iter().map(|&s| s / w.eval(s)).collect();
    for &b in &base {
        if !b.is_finite() || !(b > T::zero()) {
            return Err(WeightError::InvalidFunction(
                "weight must be positive and finite on the window".into(),
            ));
        }
    }
    let mut phi = Vec::with_capacity(nodes.len());
    for &t in &nodes {
        let mut inf = T::infinity();
        for (j, &s) in nodes.iter().enumerate() {
            let factor = if t > s { t / s } else { T::one() };
            let v = factor * base[j];
            if v < inf {
                inf = v;
            }
        }
        phi.push(inf);
    }
    FunctionOnHalfLine::sampled(nodes, phi)
}
