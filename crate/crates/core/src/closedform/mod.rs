//! Elliptic closed forms of curvature, cylindrical track and monodromy.
//!
//! All formulas are phased so that `t = 0` is a curvature maximum, which is
//! where [`apex_initial_state`] places its seed:
//!
//! ```text
//! κ²(t) = (1 + a)² − 4a sn²(ωt, k)
//! r(t)  = √(A − 4a sn²(ωt, k)) / |p|
//! θ(t)  = b/(2|p|) [t + (B/ω) Π(ωt, n, k)]
//! z(t)  = [(|p|² + 1) t − 4ω E(ωt, k)] / (2|p|)
//! ```

mod axis;

pub use crate::rigid::ScrewMotion;
pub use axis::AxisFrame;

use std::f64::consts::PI;

use crate::dynamics::{apex_initial_state, magnetic_data, PhaseState, Vec3};
use crate::elliptic::{complete_e, complete_k, incomplete_e, incomplete_pi, jacobi_sn_cn_dn};
use crate::error::{Error, Result};
use crate::params::GeodesicParams;
use crate::quadrature;

/// Below this `|1 − n|` the Π form of θ is replaced by quadrature of θ′.
pub const N_GUARD: f64 = 1e-6;

pub fn kappa_sq_closed(t: f64, params: &GeodesicParams) -> f64 {
    let a = params.a;
    let sn = jacobi_sn_cn_dn(params.omega * t, params.modulus).sn;
    (1.0 + a) * (1.0 + a) - 4.0 * a * sn * sn
}

/// Curvature with its sign: `2 cn(ωt, k)` when `a = 1` (which changes sign
/// at inflections), the positive root of κ² otherwise.
pub fn kappa_closed(t: f64, params: &GeodesicParams) -> f64 {
    if params.a == 1.0 {
        2.0 * jacobi_sn_cn_dn(params.omega * t, params.modulus).cn
    } else {
        kappa_sq_closed(t, params).max(0.0).sqrt()
    }
}

/// Torsion from `κ²(2τ − b) = b(a² − 1)`.
pub fn tau_closed(t: f64, params: &GeodesicParams) -> f64 {
    let (a, b) = (params.a, params.b);
    if a == 1.0 {
        return 0.5 * b;
    }
    0.5 * b + b * (a * a - 1.0) / (2.0 * kappa_sq_closed(t, params))
}

/// A point of the front track in cylindrical coordinates about the axis
/// of its Killing field. `theta` is unwound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylindricalSample {
    pub t: f64,
    pub r: f64,
    pub theta: f64,
    pub z: f64,
}

impl CylindricalSample {
    /// `(r cos θ, r sin θ, z)`.
    pub fn to_cartesian(&self) -> Vec3 {
        Vec3::new(self.r * self.theta.cos(), self.r * self.theta.sin(), self.z)
    }
}

fn require_axis(params: &GeodesicParams) -> Result<()> {
    if params.p_norm == 0.0 {
        return Err(Error::CircleBranch(
            "p = 0: no Killing axis, the front track is a unit circle about a fixed back wheel"
                .into(),
        ));
    }
    Ok(())
}

pub fn cylindrical_track(t: f64, params: &GeodesicParams) -> Result<CylindricalSample> {
    require_axis(params)?;
    let g = params;
    let u = g.omega * t;
    let sn = jacobi_sn_cn_dn(u, g.modulus).sn;
    let r = (g.a_coef - 4.0 * g.a * sn * sn).max(0.0).sqrt() / g.p_norm;
    let z = ((g.p_norm * g.p_norm + 1.0) * t - 4.0 * g.omega * incomplete_e(u, g.modulus)?)
        / (2.0 * g.p_norm);
    Ok(CylindricalSample {
        t,
        r,
        theta: theta_closed(t, g)?,
        z,
    })
}

/// Unwound angle θ(t). Uses the Π form unless `|1 − n| < N_GUARD`.
pub fn theta_closed(t: f64, params: &GeodesicParams) -> Result<f64> {
    require_axis(params)?;
    let g = params;
    if g.b == 0.0 {
        return Ok(0.0);
    }
    let pre = g.b / (2.0 * g.p_norm);
    let u = g.omega * t;
    let pi_part = if g.near_singular_characteristic(N_GUARD) {
        singular_pi_part(u, g)?
    } else {
        g.b_coef * incomplete_pi(u, g.n, g.modulus)?
    };
    Ok(pre * (t + pi_part / g.omega))
}

/// `∫₀ᵘ B/(1 − n sn²) ds = ∫₀ᵘ B/(B² + n cn²) ds` near `n = 1`, where the
/// integrand has narrow peaks of area `π/(√n k′)` at the zeros of cn.
/// Each half-period window is integrated in the offset `d` from its peak,
/// with `cn²(c + d) = k′² sn²(d)/dn²(d)` and cuts graded from the peak
/// width outwards. At `B = 0` the peaks are replaced by their areas (the
/// track crosses the axis there).
fn singular_pi_part(u: f64, g: &GeodesicParams) -> Result<f64> {
    if u == 0.0 {
        return Ok(0.0);
    }
    let md = g.modulus;
    let quarter = complete_k(md)?;
    let kc2 = md.mc();
    let b = g.b_coef;
    let (lo, hi, sign) = if u > 0.0 {
        (0.0, u, 1.0)
    } else {
        (u, 0.0, -1.0)
    };
    let first = ((lo - quarter) / (2.0 * quarter)).round() as i64;
    let last = ((hi - quarter) / (2.0 * quarter)).round() as i64;

    let area = PI / (g.n.sqrt() * kc2.sqrt());
    let width = b.abs() / (g.n.sqrt() * kc2.sqrt());
    let f = |d: f64| {
        let j = jacobi_sn_cn_dn(d, md);
        let dn2 = j.dn * j.dn;
        b * dn2 / (b * b * dn2 + g.n * kc2 * j.sn * j.sn)
    };
    let mut total = 0.0;
    for j in first..=last {
        let c = quarter + 2.0 * j as f64 * quarter;
        let d_lo = (lo - c).max(-quarter);
        let d_hi = (hi - c).min(quarter);
        if d_lo >= d_hi {
            continue;
        }
        if b == 0.0 {
            if d_lo <= 0.0 && d_hi >= 0.0 {
                let covered = if d_lo == 0.0 || d_hi == 0.0 { 0.5 } else { 1.0 };
                total += covered * area;
            }
            continue;
        }
        let mut cuts = vec![d_lo, d_hi, 0.0];
        let mut w = width;
        while w < quarter {
            cuts.push(-w);
            cuts.push(w);
            w *= 8.0;
        }
        cuts.retain(|&d| d >= d_lo && d <= d_hi);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        for seg in cuts.windows(2) {
            total += quadrature::integrate(f, seg[0], seg[1], 1e-13)?;
        }
    }
    Ok(sign * total)
}

/// The closed-form track in the axis frame: axis along `e₃` through the
/// origin, `θ = 0` along `e₁`.
pub fn front_track_cartesian(t: f64, params: &GeodesicParams) -> Result<Vec3> {
    Ok(cylindrical_track(t, params)?.to_cartesian())
}

/// Front velocity and acceleration `(x′, x″)` in the axis frame, from the
/// derivatives of `r`, `θ` and `z`. Undefined where the track meets the axis.
pub fn front_derivatives_closed(t: f64, params: &GeodesicParams) -> Result<(Vec3, Vec3)> {
    let g = params;
    let c = cylindrical_track(t, g)?;
    if c.r < 1e-12 {
        return Err(Error::Degenerate("the front track meets the axis".into()));
    }
    let (w, m) = (g.omega, g.modulus.m());
    let j = jacobi_sn_cn_dn(w * t, g.modulus);
    let (sn, cn, dn) = (j.sn, j.cn, j.dn);
    let scd = sn * cn * dn;
    let dscd = w * (cn * cn * dn * dn - sn * sn * dn * dn - m * sn * sn * cn * cn);
    let p2 = g.p_norm * g.p_norm;

    // r² = (A − 4a sn²)/|p|²
    let dr = -4.0 * g.a * w * scd / (p2 * c.r);
    let ddr = (-4.0 * g.a * w * dscd / p2 - dr * dr) / c.r;
    let denom = 1.0 - g.n * sn * sn;
    let pre = g.b / (2.0 * g.p_norm);
    let dtheta = pre * (1.0 + g.b_coef / denom);
    let ddtheta = pre * g.b_coef * 2.0 * g.n * w * scd / (denom * denom);
    let dz = (p2 + 1.0 - 4.0 * w * w * dn * dn) / (2.0 * g.p_norm);
    let ddz = 4.0 * m * w * w * w * scd / g.p_norm;

    let (sin, cos) = c.theta.sin_cos();
    let radial = Vec3::new(cos, sin, 0.0);
    let angular = Vec3::new(-sin, cos, 0.0);
    let first = dr * radial + c.r * dtheta * angular + dz * Vec3::z();
    let second = (ddr - c.r * dtheta * dtheta) * radial
        + (2.0 * dr * dtheta + c.r * ddtheta) * angular
        + ddz * Vec3::z();
    Ok((first, second))
}

/// Frame direction `v(t)` in the axis frame. With `p` along `e₃` and
/// `r = x′ − p`, `x″ = (x′·v) r − (1 − p·x′) v` and
/// `x′·v = (κ²)′/(2(κ² + b²))`.
pub fn frame_direction_closed(t: f64, params: &GeodesicParams) -> Result<Vec3> {
    let g = params;
    let (first, second) = front_derivatives_closed(t, g)?;
    let p = Vec3::new(0.0, 0.0, g.p_norm);
    let denom = 1.0 - p.dot(&first);
    if denom.abs() < 1e-12 {
        return Err(Error::Degenerate("x′·r vanishes".into()));
    }
    let j = jacobi_sn_cn_dn(g.omega * t, g.modulus);
    let dk2 = -8.0 * g.a * g.omega * j.sn * j.cn * j.dn;
    let vx = dk2 / (2.0 * (kappa_sq_closed(t, g) + g.b * g.b));
    Ok((vx * (first - p) - second) / denom)
}

/// Screw-motion increments of one curvature period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonodromyIncrements {
    /// Unwound rotation angle.
    pub delta_theta: f64,
    pub delta_z: f64,
    pub period: f64,
}

/// `Δθ = b/(ω|p|)[K + BΠ(n, k)]` and `Δz = [(|p|² + 1)K − 4ω²E]/(ω|p|)`.
pub fn monodromy_increments(params: &GeodesicParams) -> Result<MonodromyIncrements> {
    require_axis(params)?;
    let g = params;
    let period = g
        .period_t
        .ok_or_else(|| Error::Soliton("K(1) = ∞ at (a, b) = (1, 0)".into()))?;
    let kk = complete_k(g.modulus)?;
    let ee = complete_e(g.modulus);
    let delta_theta = if g.b == 0.0 {
        0.0
    } else if g.near_singular_characteristic(N_GUARD) {
        theta_closed(period, g)?
    } else {
        g.b / (g.omega * g.p_norm) * (kk + g.b_coef * crate::elliptic::complete_pi(g.n, g.modulus)?)
    };
    let delta_z =
        ((g.p_norm * g.p_norm + 1.0) * kk - 4.0 * g.omega * g.omega * ee) / (g.omega * g.p_norm);
    Ok(MonodromyIncrements {
        delta_theta,
        delta_z,
        period,
    })
}

/// Closed-form monodromy of the geodesic through `s0`, with the axis of
/// the Killing field at `s0`.
pub fn monodromy_closed_at(params: &GeodesicParams, s0: &PhaseState) -> Result<ScrewMotion> {
    let inc = monodromy_increments(params)?;
    let field = magnetic_data(s0)?;
    Ok(ScrewMotion::new(
        field.axis_point,
        field.axis_direction(),
        inc.delta_theta,
        inc.delta_z,
    ))
}

/// Closed-form monodromy placed at the apex seed.
pub fn monodromy_closed(params: &GeodesicParams) -> Result<ScrewMotion> {
    monodromy_closed_at(params, &apex_initial_state(params.a, params.b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{integrate, IntegrationOptions};

    #[test]
    fn curvature_at_extremes() {
        let g = GeodesicParams::new(0.5, 1.0).unwrap();
        assert!((kappa_sq_closed(0.0, &g) - 2.25).abs() < 1e-15);
        let t = g.period().unwrap();
        assert!((kappa_sq_closed(0.5 * t, &g) - 0.25).abs() < 1e-12);
        assert!((kappa_sq_closed(t, &g) - 2.25).abs() < 1e-12);
    }

    #[test]
    fn soliton_curvature() {
        let g = GeodesicParams::new(1.0, 0.0).unwrap();
        for t in [-3.0, -0.5, 0.0, 1.2, 6.0] {
            assert!((kappa_closed(t, &g) - 2.0 / f64::cosh(t)).abs() < 1e-15);
        }
    }

    #[test]
    fn cylindrical_start_and_planar_case() {
        let g = GeodesicParams::new(0.5, 1.0).unwrap();
        let c = cylindrical_track(0.0, &g).unwrap();
        assert!((c.r - g.a_coef.sqrt() / g.p_norm).abs() < 1e-15);
        assert_eq!((c.theta, c.z), (0.0, 0.0));
        assert!((c.r - 1.4).abs() < 1e-15);
        let planar = GeodesicParams::new(0.7, 0.0).unwrap();
        for t in [0.3, 2.0, 5.0] {
            let x = front_track_cartesian(t, &planar).unwrap();
            assert_eq!(x.y, 0.0);
        }
        let circle = GeodesicParams::new(0.0, 0.0).unwrap();
        assert!(matches!(
            cylindrical_track(1.0, &circle),
            Err(Error::CircleBranch(_))
        ));
    }

    #[test]
    fn period_increments_match_the_track() {
        for (a, b) in [(0.5, 1.0), (1.5, 0.5), (1.0, 2.0), (0.3, 0.2)] {
            let g = GeodesicParams::new(a, b).unwrap();
            let inc = monodromy_increments(&g).unwrap();
            let t = inc.period;
            let c0 = cylindrical_track(0.3, &g).unwrap();
            let c1 = cylindrical_track(0.3 + t, &g).unwrap();
            assert!((c1.r - c0.r).abs() < 1e-10);
            assert!((c1.theta - c0.theta - inc.delta_theta).abs() < 1e-9);
            assert!((c1.z - c0.z - inc.delta_z).abs() < 1e-9);
        }
    }

    #[test]
    fn circle_monodromy_has_no_translation() {
        let g = GeodesicParams::new(0.0, 1.5).unwrap();
        assert!(monodromy_increments(&g).unwrap().delta_z.abs() < 1e-14);
        let g = GeodesicParams::new(1.0, 0.0).unwrap();
        assert!(matches!(monodromy_closed(&g), Err(Error::Soliton(_))));
    }

    #[test]
    fn planar_monodromy_is_a_translation() {
        let m = monodromy_closed(&GeodesicParams::new(0.4, 0.0).unwrap()).unwrap();
        assert_eq!(m.delta_theta, 0.0);
        assert!(m.delta_z != 0.0);
    }

    #[test]
    fn singular_characteristic_is_continuous() {
        // a² + b² = a exactly at (0.5, 0.5); compare with nearby regular points.
        let at = GeodesicParams::new(0.5, 0.5).unwrap();
        assert!(at.near_singular_characteristic(N_GUARD));
        let near = GeodesicParams::new(0.5, 0.5 + 1e-4).unwrap();
        let t = 0.9 * at.period().unwrap();
        let th_at = theta_closed(t, &at).unwrap();
        let th_near = theta_closed(t, &near).unwrap();
        assert!((th_at - th_near).abs() < 1e-2, "{th_at} vs {th_near}");
        let close = GeodesicParams::new(0.5, 0.5 + 1e-8).unwrap();
        assert!(close.near_singular_characteristic(N_GUARD));
        let th_close = theta_closed(t, &close).unwrap();
        assert!((th_close - th_at).abs() < 1e-6, "{th_close} vs {th_at}");
    }

    #[test]
    fn closed_form_frame_matches_integration() {
        for (a, b) in [(0.5, 1.0), (1.5, 0.5), (2.0, 2.0), (0.7, 0.0)] {
            let g = GeodesicParams::new(a, b).unwrap();
            let s0 = apex_initial_state(a, b).unwrap();
            let frame = AxisFrame::from_state(&s0).unwrap();
            let path = integrate(&s0, 6.0, &IntegrationOptions::tight().with_dt_out(0.37)).unwrap();
            for s in path.samples() {
                let xv = frame.to_world_direction(&front_derivatives_closed(s.t, &g).unwrap().0);
                let v = frame.to_world_direction(&frame_direction_closed(s.t, &g).unwrap());
                assert!(
                    (xv - s.velocity()).norm() < 1e-8,
                    "x' at ({a},{b}) t={}",
                    s.t
                );
                assert!((v - s.v).norm() < 1e-8, "v at ({a},{b}) t={}", s.t);
                assert!((v.norm() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn closed_form_track_matches_integration() {
        let g = GeodesicParams::new(0.5, 1.0).unwrap();
        let s0 = apex_initial_state(0.5, 1.0).unwrap();
        let frame = AxisFrame::from_state(&s0).unwrap();
        let path = integrate(
            &s0,
            g.period().unwrap(),
            &IntegrationOptions::default().with_dt_out(0.1),
        )
        .unwrap();
        for s in path.samples() {
            let q = frame.to_axis(&s.x);
            let c = front_track_cartesian(s.t, &g).unwrap();
            assert!((q - c).norm() < 1e-8, "t = {}", s.t);
        }
    }
}
