//! Front tracks as Kirchhoff rods: curvature, torsion, Frenet frame,
//! curvature extrema and the back-wheel frame they determine.

mod extrema;
mod frenet;
mod kirchhoff;

pub use extrema::{
    back_frame_at_kappa_max, back_frame_at_kappa_min, closedness_check, kappa_extrema, BackFrame,
    Closedness, ExtremumKind, KappaExtremum,
};
pub use frenet::{curvature_torsion, frenet_series, FrenetSample};
pub use kirchhoff::{
    kappa_sq_polynomial, kirchhoff_params, period, ranges, CubicPolynomial, KirchhoffParams,
    Periods, Ranges,
};
