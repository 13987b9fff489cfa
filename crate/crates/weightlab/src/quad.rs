//! Logarithmic trapezoid quadrature on the half-line, with analytic
//! completion of the two boundary tails.
//!
//! Every improper integral in this workspace is computed the same way: a
//! trapezoid rule in `u = ln t` over `n_nodes` log-uniform nodes spanning
//! `[t_min, t_max]`, plus closed-form corrections for the mass outside the
//! window. The corrections assume the integrand follows a power law beyond
//! the boundary — exact for the canonical power weights, and consistent with
//! how sampled tables extrapolate. A tail whose power law is not integrable
//! reports divergence instead of a number.

use serde::Serialize;

use crate::error::{Result, WeightError};
use crate::scalar::Real;

/// Quadrature rule tag. Only the logarithmic trapezoid rule is provided;
/// the tag exists so reports can name the rule they were produced with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureRule {
    LogTrapezoid,
}

/// A quadrature window on `(0, ∞)`: `n_nodes` log-uniform nodes over
/// `[t_min, t_max]`, a rule tag and a relative tolerance used by the
/// divergence-detection policy.
#[derive(Clone, Debug, Serialize)]
pub struct QuadratureSpec<T: Real> {
    t_min: T,
    t_max: T,
    n_nodes: usize,
    rule: QuadratureRule,
    rel_tol: T,
}

impl<T: Real> QuadratureSpec<T> {
    /// Builds a spec after validating `0 < t_min < t_max`, `n_nodes >= 16`
    /// and `rel_tol > 0`.
    pub fn new(t_min: T, t_max: T, n_nodes: usize, rel_tol: T) -> Result<Self> {
        if !(t_min > T::zero()) || !t_min.is_finite() {
            return Err(WeightError::InvalidQuadrature(format!(
                "t_min must be positive and finite, got {t_min}"
            )));
        }
        if !(t_max > t_min) || !t_max.is_finite() {
            return Err(WeightError::InvalidQuadrature(format!(
                "t_max must exceed t_min, got [{t_min}, {t_max}]"
            )));
        }
        if n_nodes < 16 {
            return Err(WeightError::InvalidQuadrature(format!(
                "need at least 16 nodes, got {n_nodes}"
            )));
        }
        if !(rel_tol > T::zero()) {
            return Err(WeightError::InvalidQuadrature(format!(
                "rel_tol must be positive, got {rel_tol}"
            )));
        }
        Ok(Self {
            t_min,
            t_max,
            n_nodes,
            rule: QuadratureRule::LogTrapezoid,
            rel_tol,
        })
    }

    /// The default laboratory window: `[1e-6, 1e6]`, 4096 nodes, `rel_tol`
    /// of `1e-3`.
    pub fn standard() -> Self {
        Self::new(T::of(1e-6), T::of(1e6), 4096, T::of(1e-3))
            .expect("default spec is valid")
    }

    /// Same window, different node count.
    pub fn with_nodes(&self, n_nodes: usize) -> Result<Self> {
        Self::new(self.t_min, self.t_max, n_nodes, self.rel_tol)
    }

    /// Widens the window by `2^k` on both ends, keeping the node density
    /// roughly constant. Used by the divergence-detection policy.
    pub fn widened(&self, k: u32) -> Self {
        let factor = T::of_usize(1 << k);
        let t_min = self.t_min / factor;
        let t_max = self.t_max * factor;
        // Two extra octaves of range per step; keep log-density comparable.
        let extra = (self.n_nodes as f64 * 0.08).ceil() as usize * k as usize;
        Self {
            t_min,
            t_max,
            n_nodes: self.n_nodes + extra,
            rule: self.rule,
            rel_tol: self.rel_tol,
        }
    }

    pub fn t_min(&self) -> T {
        self.t_min
    }

    pub fn t_max(&self) -> T {
        self.t_max
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn rel_tol(&self) -> T {
        self.rel_tol
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }

    /// Spacing of the log-uniform grid in `u = ln t`.
    pub fn log_step(&self) -> T {
        (self.t_max.ln() - self.t_min.ln()) / T::of_usize(self.n_nodes - 1)
    }

    /// The log-uniform nodes `t_i = exp(ln t_min + i Δu)`, endpoints included.
    pub fn nodes(&self) -> Vec<T> {
        let u0 = self.t_min.ln();
        let du = self.log_step();
        let mut out = Vec::with_capacity(self.n_nodes);
        for i in 0..self.n_nodes {
            out.push((u0 + du * T::of_usize(i)).exp());
        }
        // Pin the endpoints exactly; exp/ln round-tripping may drift an ulp.
        out[0] = self.t_min;
        let last = self.n_nodes - 1;
        out[last] = self.t_max;
        out
    }

    /// `∫_{t_min}^{t_max} f(t) dt` by the trapezoid rule in `u = ln t`
    /// (the integrand becomes `f(e^u) e^u`).
    pub fn integrate<F: Fn(T) -> T>(&self, f: F) -> T {
        let nodes = self.nodes();
        let du = self.log_step();
        let half = T::of(0.5);
        let mut acc = T::zero();
        let mut prev = f(nodes[0]) * nodes[0];
        for &t in &nodes[1..] {
            let cur = f(t) * t;
            acc += half * du * (prev + cur);
            prev = cur;
        }
        acc
    }

    /// Prefix integrals at the nodes: `out[i] = ∫_{t_min}^{t_i} f(t) dt`.
    pub fn cumulative<F: Fn(T) -> T>(&self, f: F) -> Vec<T> {
        let nodes = self.nodes();
        let du = self.log_step();
        let half = T::of(0.5);
        let mut out = Vec::with_capacity(self.n_nodes);
        let mut acc = T::zero();
        out.push(acc);
        let mut prev = f(nodes[0]) * nodes[0];
        for &t in &nodes[1..] {
            let cur = f(t) * t;
            acc += half * du * (prev + cur);
            out.push(acc);
            prev = cur;
        }
        out
    }

    /// Suffix integrals at the nodes: `out[i] = ∫_{t_i}^{t_max} f(t) dt`.
    pub fn suffix<F: Fn(T) -> T>(&self, f: F) -> Vec<T> {
        let mut out = self.cumulative(f);
        let total = out[self.n_nodes - 1];
        for v in out.iter_mut() {
            *v = total - *v;
        }
        out
    }
}

/// Power-law boundary behavior of a positive function near `0` or `∞`.
///
/// The coefficient is stored as a logarithm so that extreme exponents fitted
/// from sampled tables cannot overflow an intermediate.
#[derive(Clone, Copy, Debug)]
pub enum TailLaw<T> {
    /// `exp(ln_coeff) · t^exponent`.
    Power { ln_coeff: T, exponent: T },
    /// Decays faster than every power; all tail integrals vanish.
    Negligible,
}

impl<T: Real> TailLaw<T> {
    /// Law `coeff · t^exponent` with a plain positive coefficient.
    pub fn power(coeff: T, exponent: T) -> Self {
        TailLaw::Power {
            ln_coeff: coeff.ln(),
            exponent,
        }
    }

    /// Law fitted through two positive samples `(t0, v0)`, `(t1, v1)` in
    /// log-log coordinates.
    pub fn through(t0: T, v0: T, t1: T, v1: T) -> Self {
        let p = (v1.ln() - v0.ln()) / (t1.ln() - t0.ln());
        if !p.is_finite() {
            // Identical abscissae cannot happen for validated tables; a
            // vertical fit would mean a genuinely pathological edge.
            return TailLaw::Negligible;
        }
        TailLaw::Power {
            ln_coeff: v0.ln() - p * t0.ln(),
            exponent: p,
        }
    }

    /// Value of the law at `t`.
    pub fn value(&self, t: T) -> T {
        match *self {
            TailLaw::Power { ln_coeff, exponent } => (ln_coeff + exponent * t.ln()).exp(),
            TailLaw::Negligible => T::zero(),
        }
    }

    /// The law multiplied by `t^dp` (for kernels such as `1/s` or `1/s²`).
    pub fn mul_power(&self, dp: T) -> Self {
        match *self {
            TailLaw::Power { ln_coeff, exponent } => TailLaw::Power {
                ln_coeff,
                exponent: exponent + dp,
            },
            TailLaw::Negligible => TailLaw::Negligible,
        }
    }

    /// The reciprocal law. `None` when the function decays faster than any
    /// power, so its reciprocal grows too fast for any tail integral.
    pub fn recip(&self) -> Option<Self> {
        match *self {
            TailLaw::Power { ln_coeff, exponent } => Some(TailLaw::Power {
                ln_coeff: -ln_coeff,
                exponent: -exponent,
            }),
            TailLaw::Negligible => None,
        }
    }

    /// `∫_0^a law(s) ds`; `None` when the integral diverges at `0`.
    pub fn moment_low(&self, a: T) -> Option<T> {
        match *self {
            TailLaw::Negligible => Some(T::zero()),
            TailLaw::Power { ln_coeff, exponent } => {
                let one = T::one();
                if exponent <= -one {
                    return None;
                }
                let v = (ln_coeff + (exponent + one) * a.ln()).exp() / (exponent + one);
                v.is_finite().then_some(v)
            }
        }
    }

    /// `∫_b^∞ law(s) ds`; `None` when the integral diverges at `∞`.
    pub fn moment_high(&self, b: T) -> Option<T> {
        match *self {
            TailLaw::Negligible => Some(T::zero()),
            TailLaw::Power { ln_coeff, exponent } => {
                let one = T::one();
                if exponent >= -one {
                    return None;
                }
                let v = -(ln_coeff + (exponent + one) * b.ln()).exp() / (exponent + one);
                v.is_finite().then_some(v)
            }
        }
    }

    /// `∫_0^a law(s) / (t + s) ds` for `t >= a`, via the alternating series
    /// `(c a^{p+1} / t) Σ_j (-a/t)^j / (p+1+j)`; `None` when divergent.
    pub fn stieltjes_low(&self, a: T, t: T) -> Option<T> {
        match *self {
            TailLaw::Negligible => Some(T::zero()),
            TailLaw::Power { ln_coeff, exponent } => {
                let one = T::one();
                if exponent <= -one {
                    return None;
                }
                let r = a / t;
                let scale = (ln_coeff + (exponent + one) * a.ln() - t.ln()).exp();
                Some(scale * alternating_series(exponent + one, r))
            }
        }
    }

    /// `∫_b^∞ law(s) / (t + s) ds` for `t <= b`, via the alternating series
    /// `c b^p Σ_j (-t/b)^j / (j - p)`; `None` when divergent.
    pub fn stieltjes_high(&self, b: T, t: T) -> Option<T> {
        match *self {
            TailLaw::Negligible => Some(T::zero()),
            TailLaw::Power { ln_coeff, exponent } => {
                if exponent >= T::zero() {
                    return None;
                }
                let r = t / b;
                let scale = (ln_coeff + exponent * b.ln()).exp();
                Some(scale * alternating_series(-exponent, r))
            }
        }
    }
}

/// `Σ_{j>=0} (-r)^j / (q + j)` for `q > 0`, `0 <= r <= 1`.
///
/// The series alternates, so the truncation error is below the first omitted
/// term. Convergence is geometric for `r < 1`; at the extreme node `r = 1`
/// the 400-term cap still leaves a relative error far below the quadrature
/// tolerance, and that node never attains the suprema being reported.
fn alternating_series<T: Real>(q: T, r: T) -> T {
    let mut sum = T::zero();
    let mut rj = T::one();
    let eps = T::of(1e-17);
    for j in 0..400 {
        let term = rj / (q + T::of_usize(j));
        sum += term;
        if term.abs() < eps * sum.abs() {
            break;
        }
        rj = -rj * r;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rejects_bad_specs() {
        assert!(QuadratureSpec::<f64>::new(0.0, 1.0, 64, 1e-3).is_err());
        assert!(QuadratureSpec::<f64>::new(2.0, 1.0, 64, 1e-3).is_err());
        assert!(QuadratureSpec::<f64>::new(1e-6, 1e6, 8, 1e-3).is_err());
        assert!(QuadratureSpec::<f64>::new(1e-6, 1e6, 64, 0.0).is_err());
    }

    #[test]
    fn nodes_are_log_uniform_with_exact_endpoints() {
        let q = QuadratureSpec::<f64>::new(1e-3, 1e3, 61, 1e-3).unwrap();
        let nodes = q.nodes();
        assert_eq!(nodes.len(), 61);
        assert_eq!(nodes[0], 1e-3);
        assert_eq!(nodes[60], 1e3);
        let du = q.log_step();
        for w in nodes.windows(2) {
            assert_relative_eq!(w[1].ln() - w[0].ln(), du, max_relative = 1e-9);
        }
    }

    #[test]
    fn integrates_power_functions_accurately() {
        let q = QuadratureSpec::<f64>::standard();
        // ∫_{1e-6}^{1e6} t^{-1/2} dt = 2(1e3 - 1e-3)
        let got = q.integrate(|t| t.powf(-0.5));
        assert_relative_eq!(got, 2.0 * (1e3 - 1e-3), max_relative = 3e-6);
    }

    #[test]
    fn integrates_exponential_decay() {
        // ∫_0^∞ e^{-t} dt = 1; the window truncation costs ~1e-6 at zero.
        let q = QuadratureSpec::<f64>::standard();
        let got = q.integrate(|t| (-t).exp());
        assert_relative_eq!(got, 1.0, max_relative = 3e-5);
    }

    #[test]
    fn cumulative_and_suffix_are_consistent() {
        let q = QuadratureSpec::<f64>::new(1e-4, 1e4, 512, 1e-3).unwrap();
        let f = |t: f64| 1.0 / (1.0 + t * t);
        let total = q.integrate(f);
        let pre = q.cumulative(f);
        let suf = q.suffix(f);
        for i in 0..q.n_nodes() {
            assert_relative_eq!(pre[i] + suf[i], total, max_relative = 1e-12);
        }
        assert_eq!(pre[0], 0.0);
        assert_relative_eq!(pre[q.n_nodes() - 1], total, max_relative = 1e-12);
    }

    #[test]
    fn widened_extends_both_ends() {
        let q = QuadratureSpec::<f64>::standard();
        let w = q.widened(1);
        assert_relative_eq!(w.t_min(), 5e-7, max_relative = 1e-12);
        assert_relative_eq!(w.t_max(), 2e6, max_relative = 1e-12);
        assert!(w.n_nodes() > q.n_nodes());
    }

    #[test]
    fn moment_tails_match_closed_forms() {
        // ∫_0^a s^{-1/2} ds = 2 √a, ∫_b^∞ s^{-3/2} ds = 2 / √b
        let low = TailLaw::power(1.0f64, -0.5).moment_low(1e-6).unwrap();
        assert_relative_eq!(low, 2e-3, max_relative = 1e-12);
        let high = TailLaw::power(1.0f64, -1.5).moment_high(1e6).unwrap();
        assert_relative_eq!(high, 2e-3, max_relative = 1e-12);
        // Divergent cases report None.
        assert!(TailLaw::power(1.0f64, -1.0).moment_low(1.0).is_none());
        assert!(TailLaw::power(1.0f64, -1.0).moment_high(1.0).is_none());
        assert!(TailLaw::power(1.0f64, 0.0).moment_high(1.0).is_none());
    }

    #[test]
    fn stieltjes_tails_match_numerical_reference() {
        // Reference by dense Gauss-type refinement of the same tail integral.
        let a = 1e-2;
        let t = 0.7;
        let p = -0.6;
        let law = TailLaw::power(1.0f64, p);
        let got = law.stieltjes_low(a, t).unwrap();
        // Dense trapezoid in log space over [1e-30, a]:
        let n = 400_000;
        let (ua, ub) = ((1e-30f64).ln(), a.ln());
        let du = (ub - ua) / n as f64;
        let mut acc = 0.0;
        let mut prev = {
            let s = ua.exp();
            s.powf(p) / (t + s) * s
        };
        for i in 1..=n {
            let s = (ua + du * i as f64).exp();
            let cur = s.powf(p) / (t + s) * s;
            acc += 0.5 * du * (prev + cur);
            prev = cur;
        }
        assert_relative_eq!(got, acc, max_relative = 1e-8);

        let b = 1e3;
        let law = TailLaw::power(2.0f64, -0.4);
        let got = law.stieltjes_high(b, t).unwrap();
        let (ua, ub) = (b.ln(), (1e20f64).ln());
        let du = (ub - ua) / n as f64;
        let mut acc = 0.0;
        let mut prev = {
            let s: f64 = b;
            2.0 * s.powf(-0.4) / (t + s) * s
        };
        for i in 1..=n {
            let s = (ua + du * i as f64).exp();
            let cur = 2.0 * s.powf(-0.4) / (t + s) * s;
            acc += 0.5 * du * (prev + cur);
            prev = cur;
        }
        assert_relative_eq!(got, acc, max_relative = 1e-6);
    }

    #[test]
    fn stieltjes_tail_detects_divergence() {
        assert!(TailLaw::power(1.0f64, -1.2).stieltjes_low(1e-6, 1.0).is_none());
        assert!(TailLaw::power(1.0f64, 0.3).stieltjes_high(1e6, 1.0).is_none());
    }

    #[test]
    fn tail_fit_reproduces_powers() {
        let law = TailLaw::through(0.5f64, 2.0 * 0.5f64.powf(-0.3), 1.0, 2.0);
        assert_relative_eq!(law.value(0.25), 2.0 * 0.25f64.powf(-0.3), max_relative = 1e-12);
    }

    #[test]
    fn works_in_single_precision() {
        let q = QuadratureSpec::<f32>::new(1e-3, 1e3, 256, 1e-3).unwrap();
        let got = q.integrate(|t| t.powf(-0.5));
        let want = 2.0 * (1e3f32.sqrt() - 1e-3f32.sqrt());
        assert!((got - want).abs() / want < 1e-3);
    }
}
