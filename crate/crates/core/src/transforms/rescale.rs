use crate::closedform::{kappa_closed, tau_closed};
use crate::error::{Error, Result};
use crate::params::GeodesicParams;

/// Parameters `(1/a, b/a)` with scale `λ = a`, and how well their closed-form
/// curvature and torsion follow the rescaled, torsion-shifted originals
///
/// ```text
/// κ̃(t) = κ(t/a)/a,   τ̃(t) = τ(t/a)/a − b/a
/// ```
///
/// `mirrored_tau_residual` repeats the torsion comparison for the mirror
/// image parameters `(1/a, −b/a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorsionShift {
    pub params: GeodesicParams,
    pub scale: f64,
    pub kappa_residual: f64,
    pub tau_residual: f64,
    pub mirrored_tau_residual: f64,
}

const SAMPLES: usize = 400;

pub fn torsion_shift_rescale(params: &GeodesicParams) -> Result<TorsionShift> {
    let (a, b) = (params.a, params.b);
    if a == 0.0 {
        return Err(Error::domain(
            "a = 0: the circle has no partner under a ↦ 1/a",
        ));
    }
    let shifted = GeodesicParams::new(1.0 / a, b / a)?;
    let mirrored = GeodesicParams::new(1.0 / a, -b / a)?;
    let span = 2.0 * shifted.period_t.unwrap_or(10.0);

    let (mut dk, mut dt, mut dm) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..=SAMPLES {
        let t = span * i as f64 / SAMPLES as f64;
        let kappa = kappa_closed(t / a, params) / a;
        let tau = tau_closed(t / a, params) / a - b / a;
        dk = dk.max((kappa_closed(t, &shifted) - kappa).abs());
        dt = dt.max((tau_closed(t, &shifted) - tau).abs());
        dm = dm.max((tau_closed(t, &mirrored) - tau).abs());
    }
    Ok(TorsionShift {
        params: shifted,
        scale: a,
        kappa_residual: dk,
        tau_residual: dt,
        mirrored_tau_residual: dm,
    })
}
