//! Scalar abstraction shared by the numeric kernels.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar the numeric kernels are generic over.
///
/// Both `f32` and `f64` implement it. Precision-critical pipelines in the
/// workspace instantiate at `f64` (see the crate-root aliases); the `f32`
/// instantiation is kept honest by smoke tests.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + core::fmt::Debug + core::fmt::Display + 'static
{
    /// Lifts an `f64` constant into the scalar type.
    ///
    /// Panics only if the value is not representable, which cannot happen for
    /// the finite literals used in this workspace (`f32` conversion rounds).
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant must be representable")
    }

    /// Lifts a `usize` (node counts, indices) into the scalar type.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize must be representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}
