//! Symmetries of bicycle geodesics and numerical monodromy.

mod monodromy;
mod rescale;

pub use monodromy::{
    conjecture_check, extract_monodromy, half_monodromy, ConjectureCheck, HalfMonodromy,
    MonodromyFit,
};
pub use rescale::{torsion_shift_rescale, TorsionShift};

use crate::dynamics::{SampledPath, Vec3};

/// `(x, v) ↦ (x − 2v, −v)`: the frame flipped over its back wheel.
pub fn flip(x: Vec3, v: Vec3) -> (Vec3, Vec3) {
    (x - 2.0 * v, -v)
}

/// Pointwise flip of a path; `p` is kept and `r` rebuilt from the flipped
/// front velocity, so the result is again a geodesic with the same (a, b).
pub fn flip_path(path: &SampledPath) -> SampledPath {
    path.flipped()
}

/// Mirror image parameters `(a, b) ↦ (a, −b)`.
pub fn reflect_params(a: f64, b: f64) -> (f64, f64) {
    (a, -b)
}
