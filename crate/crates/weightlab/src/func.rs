//! Positive functions on the half-line `(0, ∞)`.
//!
//! A function is either a closed-form member of a small tagged family or a
//! sampled table. Tables interpolate linearly in log-log coordinates and
//! extrapolate beyond their node range by the power law fitted through the
//! outermost pair of samples — exact on pure powers, which are the canonical
//! weights of this laboratory.

use serde::Serialize;

use crate::error::{Result, WeightError};
use crate::quad::{QuadratureSpec, TailLaw};
use crate::scalar::Real;

/// A positive function on `(0, ∞)`.
#[derive(Clone, Debug, Serialize)]
pub enum FunctionOnHalfLine<T: Real> {
    /// `coeff · t^exponent`.
    Power { coeff: T, exponent: T },
    /// `coeff · e^{-rate t}`.
    ExpDecay { coeff: T, rate: T },
    /// A positive constant.
    Constant { value: T },
    /// `min(t, 1)` — the canonical quasi-concave test shape.
    MinWithOne,
    /// Log-log piecewise-linear table over strictly increasing nodes.
    Sampled { nodes: Vec<T>, values: Vec<T> },
}

impl<T: Real> FunctionOnHalfLine<T> {
    /// `t^exponent` (coefficient one). Any real exponent is allowed.
    pub fn power(exponent: T) -> Self {
        FunctionOnHalfLine::Power {
            coeff: T::one(),
            exponent,
        }
    }

    /// `coeff · t^exponent` with `coeff > 0`.
    pub fn scaled_power(coeff: T, exponent: T) -> Result<Self> {
        if !(coeff > T::zero()) || !coeff.is_finite() {
            return Err(WeightError::InvalidFunction(format!(
                "power coefficient must be positive and finite, got {coeff}"
            )));
        }
        Ok(FunctionOnHalfLine::Power { coeff, exponent })
    }

    /// `e^{-t}`.
    pub fn exp_decay() -> Self {
        FunctionOnHalfLine::ExpDecay {
            coeff: T::one(),
            rate: T::one(),
        }
    }

    /// `coeff · e^{-rate t}` with positive coefficient and rate.
    pub fn scaled_exp_decay(coeff: T, rate: T) -> Result<Self> {
        if !(coeff > T::zero()) || !coeff.is_finite() || !(rate > T::zero()) || !rate.is_finite()
        {
            return Err(WeightError::InvalidFunction(format!(
                "exponential decay needs positive finite coeff and rate, got {coeff}, {rate}"
            )));
        }
        Ok(FunctionOnHalfLine::ExpDecay { coeff, rate })
    }

    /// A positive constant.
    pub fn constant(value: T) -> Result<Self> {
        if !(value > T::zero()) || !value.is_finite() {
            return Err(WeightError::InvalidFunction(format!(
                "constant must be positive and finite, got {value}"
            )));
        }
        Ok(FunctionOnHalfLine::Constant { value })
    }

    /// `min(t, 1)`.
    pub fn min_with_one() -> Self {
        FunctionOnHalfLine::MinWithOne
    }

    /// A sampled table over strictly increasing positive nodes with strictly
    /// positive finite values; at least two samples.
    pub fn sampled(nodes: Vec<T>, values: Vec<T>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(WeightError::InvalidFunction(format!(
                "sampled table needs at least 2 nodes, got {}",
                nodes.len()
            )));
        }
        if nodes.len() != values.len() {
            return Err(WeightError::InvalidFunction(format!(
                "node/value length mismatch: {} vs {}",
                nodes.len(),
                values.len()
            )));
        }
        if !(nodes[0] > T::zero()) {
            return Err(WeightError::InvalidFunction(
                "sampled nodes must be positive".into(),
            ));
        }
        for w in nodes.windows(2) {
            if !(w[1] > w[0]) || !w[1].is_finite() {
                return Err(WeightError::InvalidFunction(
                    "sampled nodes must be strictly increasing and finite".into(),
                ));
            }
        }
        for &v in &values {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(WeightError::InvalidFunction(format!(
                    "sampled values must be strictly positive and finite, got {v}"
                )));
            }
        }
        Ok(FunctionOnHalfLine::Sampled { nodes, values })
    }

    /// Samples an arbitrary closure on the nodes of `q` into a table.
    pub fn tabulate<F: Fn(T) -> T>(q: &QuadratureSpec<T>, f: F) -> Result<Self> {
        let nodes = q.nodes();
        let values = nodes.iter().map(|&t| f(t)).collect();
        Self::sampled(nodes, values)
    }

    /// Evaluates the function at `t > 0`.
    pub fn eval(&self, t: T) -> T {
        match self {
            FunctionOnHalfLine::Power { coeff, exponent } => *coeff * t.powf(*exponent),
            FunctionOnHalfLine::ExpDecay { coeff, rate } => *coeff * (-*rate * t).exp(),
            FunctionOnHalfLine::Constant { value } => *value,
            FunctionOnHalfLine::MinWithOne => t.min(T::one()),
            FunctionOnHalfLine::Sampled { nodes, values } => {
                let n = nodes.len();
                if t <= nodes[0] {
                    return self.tail_low().value(t);
                }
                if t >= nodes[n - 1] {
                    return self.tail_high().value(t);
                }
                // Binary search for the segment containing t.
                let idx = nodes.partition_point(|&x| x < t);
                let (t0, t1) = (nodes[idx - 1], nodes[idx]);
                let (v0, v1) = (values[idx - 1], values[idx]);
                let lam = (t.ln() - t0.ln()) / (t1.ln() - t0.ln());
                (v0.ln() + lam * (v1.ln() - v0.ln())).exp()
            }
        }
    }

    /// Power-law behavior near `0` (used for analytic tail completion).
    pub fn tail_low(&self) -> TailLaw<T> {
        match self {
            FunctionOnHalfLine::Power { coeff, exponent } => TailLaw::power(*coeff, *exponent),
            FunctionOnHalfLine::ExpDecay { coeff, .. } => TailLaw::power(*coeff, T::zero()),
            FunctionOnHalfLine::Constant { value } => TailLaw::power(*value, T::zero()),
            FunctionOnHalfLine::MinWithOne => TailLaw::power(T::one(), T::one()),
            FunctionOnHalfLine::Sampled { nodes, values } => {
                TailLaw::through(nodes[0], values[0], nodes[1], values[1])
            }
        }
    }

    /// Power-law behavior near `∞`. Super-polynomial decay is reported as
    /// [`TailLaw::Negligible`].
    pub fn tail_high(&self) -> TailLaw<T> {
        match self {
            FunctionOnHalfLine::Power { coeff, exponent } => TailLaw::power(*coeff, *exponent),
            FunctionOnHalfLine::ExpDecay { .. } => TailLaw::Negligible,
            FunctionOnHalfLine::Constant { value } => TailLaw::power(*value, T::zero()),
            FunctionOnHalfLine::MinWithOne => TailLaw::power(T::one(), T::zero()),
            FunctionOnHalfLine::Sampled { nodes, values } => {
                let n = nodes.len();
                TailLaw::through(nodes[n - 2], values[n - 2], nodes[n - 1], values[n - 1])
            }
        }
    }

    /// Checks quasi-concavity on the nodes of `q`: the function must be
    /// non-decreasing and `f(t)/t` non-increasing, with a small relative
    /// slack for rounding.
    pub fn is_quasi_concave(&self, q: &QuadratureSpec<T>) -> bool {
        let slack = T::of(1e-12);
        let nodes = q.nodes();
        let mut prev_t = nodes[0];
        let mut prev_v = self.eval(prev_t);
        if !prev_v.is_finite() {
            return false;
        }
        for &t in &nodes[1..] {
            let v = self.eval(t);
            if !v.is_finite() {
                return false;
            }
            // Non-decreasing values.
            if v < prev_v * (T::one() - slack) {
                return false;
            }
            // Non-increasing v/t.
            if v / t > prev_v / prev_t * (T::one() + slack) {
                return false;
            }
            prev_t = t;
            prev_v = v;
        }
        true
    }
}
