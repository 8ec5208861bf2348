use std::f64::consts::PI;

use crate::closedform::monodromy_increments;
use crate::dynamics::{SampledPath, Vec3};
use crate::error::{Error, Result};
use crate::params::GeodesicParams;
use crate::rigid::{angle_distance, procrustes, reduce_angle, RigidMotion, ScrewMotion};

/// Number of sample times per registration; each contributes a front and a
/// back wheel position.
const PAIRS: usize = 16;
const MAX_RMS: f64 = 1e-7;
const AXIS_TOL: f64 = 1e-6;

/// A rigid motion fitted to sampled point correspondences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonodromyFit {
    pub screw: ScrewMotion,
    pub rigid: RigidMotion,
    pub rms: f64,
    /// `|axis_dir × p/|p||`
    pub axis_misalignment: f64,
}

fn check_applicable(params: &GeodesicParams) -> Result<f64> {
    if params.a == 0.0 {
        return Err(Error::NotApplicable(
            "circle: the monodromy is the identity".into(),
        ));
    }
    if params.is_soliton() {
        return Err(Error::NotApplicable(
            "soliton or line: curvature is not periodic".into(),
        ));
    }
    params.period()
}

fn correspondences(
    from: &SampledPath,
    to: &SampledPath,
    shift: f64,
) -> Result<(Vec<Vec3>, Vec<Vec3>)> {
    let (lo, hi) = from.span().ok_or_else(|| Error::domain("empty path"))?;
    let window = hi - lo - shift.abs();
    if window <= 0.0 {
        return Err(Error::domain("path too short for the requested shift"));
    }
    let base = if shift >= 0.0 { lo } else { lo - shift };
    let mut src = Vec::with_capacity(2 * PAIRS);
    let mut dst = Vec::with_capacity(2 * PAIRS);
    for i in 0..PAIRS {
        let t = base + window * i as f64 / PAIRS as f64;
        let (a, b) = match (from.state_at(t), to.state_at(t + shift)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::domain("correspondence outside the integrated span")),
        };
        src.push(a.x);
        src.push(a.back());
        dst.push(b.x);
        dst.push(b.back());
    }
    Ok((src, dst))
}

fn fit(src: &[Vec3], dst: &[Vec3], p: &Vec3) -> Result<MonodromyFit> {
    let (rigid, rms) = procrustes(src, dst)?;
    if rms > MAX_RMS {
        return Err(Error::Extraction(format!(
            "registration RMS {rms:e} exceeds {MAX_RMS:e}"
        )));
    }
    let screw = rigid.to_screw(Some(p));
    Ok(MonodromyFit {
        screw,
        rigid,
        rms,
        axis_misalignment: screw.axis_dir.cross(&(p / p.norm())).norm(),
    })
}

/// Registers `{x(tᵢ), y(tᵢ)}` onto `{x(tᵢ + T), y(tᵢ + T)}` and converts the
/// fitted motion to a screw with axis oriented along `+p`. The path must
/// span at least two periods.
pub fn extract_monodromy(path: &SampledPath, params: &GeodesicParams) -> Result<MonodromyFit> {
    let period = check_applicable(params)?;
    let (lo, hi) = path.span().ok_or_else(|| Error::domain("empty path"))?;
    if hi - lo < 2.0 * period - 1e-9 {
        return Err(Error::domain(format!(
            "path spans {} but two periods need {}",
            hi - lo,
            2.0 * period
        )));
    }
    let p = path.samples()[0].p;
    let (src, dst) = correspondences(path, path, period)?;
    let out = fit(&src, &dst, &p)?;
    if out.axis_misalignment > AXIS_TOL && out.screw.delta_theta.abs() > 1e-9 {
        return Err(Error::Extraction(format!(
            "screw axis not parallel to p (misalignment {:e})",
            out.axis_misalignment
        )));
    }
    Ok(out)
}

/// The isometry `I` with `x̃(t + T/2) = I(x(t))`, compared against the
/// monodromy `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfMonodromy {
    pub half: MonodromyFit,
    pub full: MonodromyFit,
    /// Max `|I(I(q)) − M(q)|` over the test points.
    pub square_residual: f64,
    /// `|Δz(I) − Δz(M)/2|`
    pub translation_residual: f64,
}

fn test_points(center: &Vec3) -> [Vec3; 4] {
    [
        center + Vec3::new(1.0, 0.0, 0.0),
        center + Vec3::new(0.0, -2.0, 1.0),
        center + Vec3::new(-3.0, 1.5, 2.0),
        center + Vec3::new(0.5, 4.0, -6.0),
    ]
}

pub fn half_monodromy(path: &SampledPath, params: &GeodesicParams) -> Result<HalfMonodromy> {
    let period = check_applicable(params)?;
    if params.b == 0.0 {
        return Err(Error::NotApplicable(
            "planar geodesic: the half monodromy is not considered".into(),
        ));
    }
    let full = extract_monodromy(path, params)?;
    let flipped = path.flipped();
    let p = path.samples()[0].p;
    let (src, dst) = correspondences(path, &flipped, 0.5 * period)?;
    let half = fit(&src, &dst, &p)?;

    let center = path.samples()[0].x;
    let square_residual = test_points(&center)
        .iter()
        .map(|q| (half.rigid.apply(&half.rigid.apply(q)) - full.rigid.apply(q)).norm())
        .fold(0.0, f64::max);
    Ok(HalfMonodromy {
        half,
        full,
        square_residual,
        translation_residual: (half.screw.delta_z - 0.5 * full.screw.delta_z).abs(),
    })
}

/// Comparison of the rotation angle of `I` with `Δθ/2 + π`, where `Δθ` is
/// the unwound closed-form monodromy angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjectureCheck {
    pub angle_found: f64,
    pub angle_predicted: f64,
    /// Distance on the circle between the two.
    pub discrepancy: f64,
    pub matches: bool,
}

pub const CONJECTURE_TOL: f64 = 1e-4;

pub fn conjecture_check(path: &SampledPath, params: &GeodesicParams) -> Result<ConjectureCheck> {
    if params.b == 0.0 {
        return Err(Error::NotApplicable(
            "planar geodesic: the statement assumes b ≠ 0".into(),
        ));
    }
    let hm = half_monodromy(path, params)?;
    let dtheta = monodromy_increments(params)?.delta_theta;
    let (predicted, _) = reduce_angle(0.5 * dtheta + PI);
    let found = hm.half.screw.delta_theta;
    let discrepancy = angle_distance(found, predicted);
    Ok(ConjectureCheck {
        angle_found: found,
        angle_predicted: predicted,
        discrepancy,
        matches: discrepancy <= CONJECTURE_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::monodromy_closed;
    use crate::dynamics::{apex_initial_state, integrate, IntegrationOptions};

    fn path_for(a: f64, b: f64, periods: f64) -> (SampledPath, GeodesicParams) {
        let g = GeodesicParams::new(a, b).unwrap();
        let s0 = apex_initial_state(a, b).unwrap();
        let path = integrate(
            &s0,
            periods * g.period().unwrap(),
            &IntegrationOptions::tight(),
        )
        .unwrap();
        (path, g)
    }

    #[test]
    fn extracted_monodromy_matches_closed_form() {
        let (path, g) = path_for(0.5, 1.0, 2.0);
        let fit = extract_monodromy(&path, &g).unwrap();
        let closed = monodromy_closed(&g).unwrap();
        assert!(fit.rms < 1e-7);
        assert!(angle_distance(fit.screw.delta_theta, closed.delta_theta) < 1e-6);
        assert!((fit.screw.delta_z - closed.delta_z).abs() < 1e-6);
        assert!(fit.axis_misalignment < 1e-6);
        let off = fit.screw.axis_point - closed.axis_point;
        assert!(off.cross(&closed.axis_dir).norm() < 1e-6);
    }

    #[test]
    fn planar_monodromy_is_translation() {
        let (path, g) = path_for(0.6, 0.0, 2.0);
        let fit = extract_monodromy(&path, &g).unwrap();
        assert!((fit.rigid.rotation - nalgebra::Matrix3::identity()).amax() < 1e-8);
        assert!(matches!(
            half_monodromy(&path, &g),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn half_monodromy_squares_to_monodromy() {
        let (path, g) = path_for(0.5, 1.0, 2.0);
        let hm = half_monodromy(&path, &g).unwrap();
        assert!(hm.square_residual < 1e-6, "{hm:?}");
        assert!(hm.translation_residual < 1e-8);
        let c = conjecture_check(&path, &g).unwrap();
        assert!(c.matches, "{c:?}");
    }

    #[test]
    fn requires_two_periods() {
        let (path, g) = path_for(0.5, 1.0, 1.5);
        assert!(matches!(
            extract_monodromy(&path, &g),
            Err(Error::Domain(_))
        ));
        let circle = GeodesicParams::new(0.0, 1.0).unwrap();
        assert!(matches!(
            extract_monodromy(&path, &circle),
            Err(Error::NotApplicable(_))
        ));
    }
}
