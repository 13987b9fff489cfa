//! Condition reports: the serialized outcome of a boundedness-constant scan.

use serde::Serialize;

use crate::quad::QuadratureSpec;
use crate::scalar::Real;

/// Outcome classification for a supremum scan.
///
/// `Diverging` is declared when the analytic tail of the integrand is not
/// integrable, when an evaluation overflows, or when widening the quadrature
/// window moves the estimate by more than `rel_tol` twice in a row.
/// `Inconclusive` marks a scan whose refinement trajectory wobbled without
/// settling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Finite,
    Diverging,
    Inconclusive,
}

/// Result of estimating `sup_t E(t)` over the quadrature window.
///
/// The supremum is approximated by the maximum over the window's nodes; for
/// genuinely discontinuous sampled weights that is a policy, not a theorem,
/// and consumers should treat `constant` accordingly. `constant` is `None`
/// exactly when the scan established divergence (the `+∞` flag); otherwise
/// it holds the estimate computed with the reported window.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport<T: Real> {
    /// Estimated constant; `None` encodes `+∞`.
    pub constant: Option<T>,
    /// Node at which the maximum was attained.
    pub arg_sup: T,
    /// Lower end of the window the estimate was computed with.
    pub t_min: T,
    /// Upper end of the window.
    pub t_max: T,
    /// Number of log-uniform nodes.
    pub n_nodes: usize,
    /// Outcome classification.
    pub verdict: Verdict,
}

impl<T: Real> ConditionReport<T> {
    /// A finite estimate at the given window.
    pub fn finite(constant: T, arg_sup: T, q: &QuadratureSpec<T>) -> Self {
        debug_assert!(constant.is_finite());
        Self {
            constant: Some(constant),
            arg_sup,
            t_min: q.t_min(),
            t_max: q.t_max(),
            n_nodes: q.n_nodes(),
            verdict: Verdict::Finite,
        }
    }

    /// A divergent scan (`constant` becomes the `+∞` flag `None`).
    pub fn diverging(arg_sup: T, q: &QuadratureSpec<T>) -> Self {
        Self {
            constant: None,
            arg_sup,
            t_min: q.t_min(),
            t_max: q.t_max(),
            n_nodes: q.n_nodes(),
            verdict: Verdict::Diverging,
        }
    }

    /// An unsettled scan; the estimate at the requested window is retained.
    pub fn inconclusive(constant: T, arg_sup: T, q: &QuadratureSpec<T>) -> Self {
        Self {
            constant: Some(constant),
            arg_sup,
            t_min: q.t_min(),
            t_max: q.t_max(),
            n_nodes: q.n_nodes(),
            verdict: Verdict::Inconclusive,
        }
    }

    /// True when the verdict is `Finite`.
    pub fn is_finite(&self) -> bool {
        self.verdict == Verdict::Finite
    }

    /// The constant, panicking when the scan diverged. Convenience for tests
    /// and pipelines that have already checked the verdict.
    pub fn expect_constant(&self) -> T {
        self.constant.expect("report holds no finite constant")
    }

    /// Serializes to the workspace's JSON schema:
    /// `{constant, arg_sup, t_min, t_max, n_nodes, verdict}`.
    pub fn to_json(&self) -> String
    where
        T: Serialize,
    {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Renders a sampled curve as `t,value` CSV lines with a header.
pub fn curve_to_csv<T: Real>(nodes: &[T], values: &[T]) -> String {
    let mut out = String::from("t,value\n");
    for (t, v) in nodes.iter().zip(values.iter()) {
        out.push_str(&format!("{t},{v}\n"));
    }
    out
}
