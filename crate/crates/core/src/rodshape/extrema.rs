use crate::dynamics::{PhaseState, SampledPath, Vec3};
use crate::error::{Error, Result};
use crate::params::GeodesicParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaExtremum {
    pub t: f64,
    pub kappa_sq: f64,
    pub kind: ExtremumKind,
    pub state: PhaseState,
}

fn kappa_sq(s: &PhaseState) -> f64 {
    let b = s.b();
    s.r.norm_squared() - b * b
}

// (κ²)′ = 2 (v·p)(κ² + b²)
fn slope(s: &PhaseState) -> f64 {
    s.v.dot(&s.p)
}

const EVENT_TOL: f64 = 1e-12;

/// Curvature extrema located as the zeros of `v·p` on the continuous
/// solution, refined by bisection to `1e-12` in `t`.
pub fn kappa_extrema(path: &SampledPath) -> Result<Vec<KappaExtremum>> {
    if !path.is_dense() {
        return Err(Error::domain("event location needs an integrated path"));
    }
    let samples = path.samples();
    let mut out = Vec::new();
    let mut push = |state: PhaseState, before: f64, after: f64| {
        let kind = if before > 0.0 || after < 0.0 {
            ExtremumKind::Max
        } else {
            ExtremumKind::Min
        };
        out.push(KappaExtremum {
            t: state.t,
            kappa_sq: kappa_sq(&state),
            kind,
            state,
        });
    };
    for (i, w) in samples.windows(2).enumerate() {
        let (g0, g1) = (slope(&w[0]), slope(&w[1]));
        if g0 == 0.0 {
            let before = if i > 0 { slope(&samples[i - 1]) } else { 0.0 };
            if before != 0.0 || g1 != 0.0 {
                push(w[0], before, g1);
            }
            continue;
        }
        if g0 * g1 >= 0.0 {
            continue;
        }
        let (mut lo, mut hi) = (w[0].t, w[1].t);
        while (hi - lo).abs() > EVENT_TOL {
            let mid = 0.5 * (lo + hi);
            let s = path.state_at(mid).expect("bisection stays inside the path");
            if slope(&s) * g0 > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t = 0.5 * (lo + hi);
        push(path.state_at(t).expect("event inside the path"), g0, g1);
    }
    Ok(out)
}

/// Frame direction at a curvature extremum together with the residual of
/// the alignment with the acceleration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackFrame {
    pub t: f64,
    pub v: Vec3,
    pub residual: f64,
}

fn is_linear(path: &SampledPath) -> bool {
    path.samples()
        .iter()
        .all(|s| s.magnetic_field().norm() < 1e-12)
}

fn constant_curvature(path: &SampledPath) -> bool {
    path.samples().iter().all(|s| slope(s).abs() < 1e-12)
}

/// `v` at the first curvature maximum, where `v = −x″/(1 + a)`.
pub fn back_frame_at_kappa_max(path: &SampledPath) -> Result<BackFrame> {
    back_frame(path, ExtremumKind::Max)
}

/// `v` at the first curvature minimum, where `(a − 1) v = x″`.
pub fn back_frame_at_kappa_min(path: &SampledPath) -> Result<BackFrame> {
    back_frame(path, ExtremumKind::Min)
}

fn back_frame(path: &SampledPath, kind: ExtremumKind) -> Result<BackFrame> {
    let s0 = *path.first().ok_or_else(|| Error::domain("empty path"))?;
    if is_linear(path) {
        return Err(Error::NotApplicable(
            "front track is a straight line".into(),
        ));
    }
    let a = GeodesicParams::from_state(&s0)?.a;
    let state = if constant_curvature(path) {
        s0
    } else {
        kappa_extrema(path)?
            .into_iter()
            .find(|e| e.kind == kind)
            .ok_or_else(|| {
                Error::domain("no curvature extremum of the requested kind on the path")
            })?
            .state
    };
    let accel = state.acceleration();
    let residual = match kind {
        ExtremumKind::Max => (state.v + accel / (1.0 + a)).norm(),
        ExtremumKind::Min => ((a - 1.0) * state.v - accel).norm(),
    };
    Ok(BackFrame {
        t: state.t,
        v: state.v,
        residual,
    })
}

/// Outcome of [`closedness_check`]: the front track closes only on the
/// circle branch; otherwise the screw translation per period is reported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Closedness {
    pub closed: bool,
    pub delta_z: Option<f64>,
}

pub fn closedness_check(params: &GeodesicParams, path: &SampledPath) -> Result<Closedness> {
    if params.a == 0.0 {
        return Ok(Closedness {
            closed: true,
            delta_z: Some(0.0),
        });
    }
    if params.is_soliton() {
        return Ok(Closedness {
            closed: false,
            delta_z: None,
        });
    }
    let s0 = path.first().ok_or_else(|| Error::domain("empty path"))?;
    let period = params.period()?;
    let s1 = path
        .state_at(s0.t + period)
        .ok_or_else(|| Error::domain("path shorter than one period"))?;
    let dz = (s1.x - s0.x).dot(&s0.p) / s0.p.norm();
    Ok(Closedness {
        closed: dz.abs() < 1e-9,
        delta_z: Some(dz),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{
        apex_initial_state, canonical_initial_state, integrate, IntegrationOptions,
    };

    #[test]
    fn extrema_alternate_at_half_periods() {
        let g = GeodesicParams::new(0.5, 1.0).unwrap();
        let t = g.period().unwrap();
        let path = integrate(
            &canonical_initial_state(0.5, 1.0).unwrap(),
            2.2 * t,
            &IntegrationOptions::default(),
        )
        .unwrap();
        let ex = kappa_extrema(&path).unwrap();
        assert!(ex.len() >= 4);
        assert_eq!(ex[0].kind, ExtremumKind::Min);
        assert_eq!(ex[1].kind, ExtremumKind::Max);
        assert!((ex[1].t - 0.5 * t).abs() < 1e-9);
        assert!((ex[1].kappa_sq - 2.25).abs() < 1e-9);
        assert!((ex[2].t - t).abs() < 1e-9);
    }

    #[test]
    fn back_frame_alignment() {
        let path = integrate(
            &canonical_initial_state(0.5, 1.0).unwrap(),
            4.0,
            &IntegrationOptions::default(),
        )
        .unwrap();
        let bf = back_frame_at_kappa_max(&path).unwrap();
        assert!(bf.residual < 1e-7);
        let bf = back_frame_at_kappa_min(&path).unwrap();
        assert!(bf.residual < 1e-7 && bf.t == 0.0);

        let circle = integrate(
            &canonical_initial_state(0.0, 0.0).unwrap(),
            1.0,
            &IntegrationOptions::default(),
        )
        .unwrap();
        assert!(back_frame_at_kappa_max(&circle).unwrap().residual < 1e-12);

        let line = integrate(
            &canonical_initial_state(1.0, 0.0).unwrap(),
            1.0,
            &IntegrationOptions::default(),
        )
        .unwrap();
        assert!(matches!(
            back_frame_at_kappa_max(&line),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn only_circles_close() {
        let g = GeodesicParams::new(0.5, 1.0).unwrap();
        let path = integrate(
            &apex_initial_state(0.5, 1.0).unwrap(),
            1.1 * g.period().unwrap(),
            &IntegrationOptions::default(),
        )
        .unwrap();
        let c = closedness_check(&g, &path).unwrap();
        assert!(!c.closed && c.delta_z.unwrap() > 0.0);
        let g = GeodesicParams::new(0.0, 1.0).unwrap();
        assert!(closedness_check(&g, &path).unwrap().closed);
        let g = GeodesicParams::new(1.0, 0.0).unwrap();
        assert!(!closedness_check(&g, &path).unwrap().closed);
    }
}
