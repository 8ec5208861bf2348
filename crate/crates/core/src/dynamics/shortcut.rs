use super::path::SampledPath;
use super::state::Vec3;
use crate::error::{Error, Result};
use crate::params::GeodesicParams;

/// Geodesic length `nT` versus the length of the competing path that turns
/// the frame about its back wheel towards `y(nT)`, rides straight there and
/// turns again into the final placement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortcutBound {
    pub n_periods: usize,
    pub geodesic_len: f64,
    pub shortcut_len: f64,
}

impl ShortcutBound {
    pub fn is_shorter(&self) -> bool {
        self.shortcut_len < self.geodesic_len
    }
}

fn angle_between(u: &Vec3, w: &Vec3) -> f64 {
    u.cross(w).norm().atan2(u.dot(w))
}

/// Compares `nT` with the reorient–ride–reorient competitor built on the
/// same endpoints.
pub fn shortcut_bound(path: &SampledPath, n_periods: usize) -> Result<ShortcutBound> {
    let s0 = *path.first().ok_or_else(|| Error::domain("empty path"))?;
    let params = GeodesicParams::from_state(&s0)?;
    if path
        .samples()
        .iter()
        .all(|s| s.magnetic_field().norm() < 1e-12)
    {
        return Err(Error::NotApplicable(
            "front track is a straight line".into(),
        ));
    }
    let period = params.period()?;
    let t_end = s0.t + n_periods as f64 * period;
    let s1 = path.state_at(t_end).ok_or_else(|| {
        Error::domain(format!(
            "path does not reach t = {t_end} ({n_periods} periods)"
        ))
    })?;
    let chord = s1.back() - s0.back();
    let ride = chord.norm();
    let turn = if ride < 1e-12 {
        angle_between(&s0.v, &s1.v)
    } else {
        let d = chord / ride;
        angle_between(&s0.v, &d) + angle_between(&d, &s1.v)
    };
    Ok(ShortcutBound {
        n_periods,
        geodesic_len: n_periods as f64 * period,
        shortcut_len: turn + ride,
    })
}
