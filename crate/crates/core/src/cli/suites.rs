//! Invariant suites behind `bikegeo check`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use clap::ValueEnum;

use crate::closedform::{frame_direction_closed, kappa_sq_closed, monodromy_closed, AxisFrame};
use crate::dynamics::{
    apex_initial_state, canonical_initial_state, integrate, invariant_report, shortcut_bound,
    IntegrationOptions, SampledPath,
};
use crate::elliptic::{complete_e, complete_k, jacobi_sn_cn_dn, Modulus};
use crate::error::Result;
use crate::params::GeodesicParams;
use crate::rigid::angle_distance;
use crate::rodshape::{back_frame_at_kappa_max, frenet_series};
use crate::shooting::{shoot, FramePlacement, ShootingOptions};
use crate::transforms::{conjecture_check, extract_monodromy, half_monodromy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Elliptic,
    Dynamics,
    Closedform,
    Rodshape,
    Monodromy,
    Correspondence,
    Shooting,
}

/// One checked quantity against its bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub passed: bool,
    pub error: Option<String>,
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        match &self.error {
            Some(e) => write!(f, "{tag} {}: {e}", self.name),
            None => write!(
                f,
                "{tag} {}: {:.3e} <= {:.1e}",
                self.name, self.value, self.bound
            ),
        }
    }
}

fn outcome(name: &str, bound: f64, value: Result<f64>) -> SuiteOutcome {
    match value {
        Ok(v) => SuiteOutcome {
            name: name.into(),
            value: v,
            bound,
            passed: v <= bound,
            error: None,
        },
        Err(e) => SuiteOutcome {
            name: name.into(),
            value: f64::NAN,
            bound,
            passed: false,
            error: Some(e.to_string()),
        },
    }
}

fn apex_path(a: f64, b: f64, periods: f64) -> Result<(SampledPath, GeodesicParams)> {
    let g = GeodesicParams::new(a, b)?;
    let path = integrate(
        &apex_initial_state(a, b)?,
        periods * g.period()?,
        &IntegrationOptions::tight().with_dt_out(0.05),
    )?;
    Ok((path, g))
}

fn elliptic() -> Vec<SuiteOutcome> {
    let legendre = || -> Result<f64> {
        let mut worst: f64 = 0.0;
        for i in 1..20 {
            let md = Modulus::from_parameter(i as f64 / 20.0)?;
            let mc = md.complement();
            let (k, e) = (complete_k(md)?, complete_e(md));
            let (kc, ec) = (complete_k(mc)?, complete_e(mc));
            worst = worst.max((e * kc + ec * k - k * kc - FRAC_PI_2).abs());
        }
        Ok(worst)
    };
    let pythagoras = || -> Result<f64> {
        let mut worst: f64 = 0.0;
        for i in 0..20 {
            let md = Modulus::from_parameter(i as f64 / 20.0)?;
            for j in 0..20 {
                let t = jacobi_sn_cn_dn(-5.0 + 0.5 * j as f64, md);
                worst = worst
                    .max((t.sn * t.sn + t.cn * t.cn - 1.0).abs())
                    .max((t.dn * t.dn + md.m() * t.sn * t.sn - 1.0).abs());
            }
        }
        Ok(worst)
    };
    vec![
        outcome("elliptic: Legendre relation", 1e-12, legendre()),
        outcome("elliptic: sn²+cn² and dn²+k²sn²", 1e-12, pythagoras()),
    ]
}

fn dynamics() -> Vec<SuiteOutcome> {
    let drift = || -> Result<f64> {
        let (path, _) = apex_path(0.5, 1.0, 10.0)?;
        Ok(invariant_report(&path)?.max_drift())
    };
    let circle = || -> Result<f64> {
        let s0 = canonical_initial_state(0.0, 0.0)?;
        let path = integrate(&s0, 7.0, &IntegrationOptions::tight().with_dt_out(0.1))?;
        let y0 = s0.back();
        Ok(path
            .samples()
            .iter()
            .map(|s| ((s.back() - y0).norm()).max(((s.x - y0).norm() - 1.0).abs()))
            .fold(0.0, f64::max))
    };
    vec![
        outcome(
            "dynamics: invariant drift over 10T at (0.5, 1)",
            1e-9,
            drift(),
        ),
        outcome("dynamics: circle branch", 1e-9, circle()),
    ]
}

fn closedform() -> Vec<SuiteOutcome> {
    let mut out = Vec::new();
    for (a, b) in [(0.5, 1.0), (1.5, 0.5), (1.0, 1.0)] {
        let compare = || -> Result<(f64, f64)> {
            let (path, g) = apex_path(a, b, 2.0)?;
            let frame = AxisFrame::from_state(&path.samples()[0])?;
            let mut kappa: f64 = 0.0;
            let mut back: f64 = 0.0;
            for s in path.samples() {
                let k2 = s.r.norm_squared() - b * b;
                kappa = kappa.max((k2 - kappa_sq_closed(s.t, &g)).abs());
                let v = frame.to_world_direction(&frame_direction_closed(s.t, &g)?);
                back = back.max((v - s.v).norm());
            }
            Ok((kappa, back))
        };
        let r = compare();
        out.push(outcome(
            &format!("closedform: κ² at ({a}, {b})"),
            1e-7,
            r.as_ref().map(|x| x.0).map_err(Clone::clone),
        ));
        out.push(outcome(
            &format!("closedform: frame direction at ({a}, {b})"),
            1e-7,
            r.map(|x| x.1),
        ));
    }
    out
}

fn rodshape() -> Vec<SuiteOutcome> {
    let run = || -> Result<[f64; 4]> {
        let (path, g) = apex_path(0.5, 1.0, 2.0)?;
        let p0 = path.samples()[0].p;
        let mut worst = [0.0f64; 4];
        for f in frenet_series(&path, &g)? {
            worst[0] = worst[0].max((f.reconstructed_p(&g) - p0).norm());
            worst[1] = worst[1].max(f.energy_residual(&g).abs());
            if f.kappa * f.kappa > 1e-6 {
                worst[2] = worst[2].max(f.torsion_law_residual(&g).abs());
            }
        }
        worst[3] = back_frame_at_kappa_max(&path)?.residual;
        Ok(worst)
    };
    let r = run();
    let pick = |i: usize| r.as_ref().map(|w| w[i]).map_err(Clone::clone);
    vec![
        outcome("rodshape: p from Frenet data", 1e-7, pick(0)),
        outcome("rodshape: energy law", 1e-8, pick(1)),
        outcome("rodshape: torsion law", 1e-8, pick(2)),
        outcome("rodshape: back frame at κ maximum", 1e-7, pick(3)),
    ]
}

fn monodromy() -> Vec<SuiteOutcome> {
    let mut out = Vec::new();
    for (a, b) in [(0.5, 1.0), (1.5, 0.5), (0.7, 0.0)] {
        let compare = || -> Result<f64> {
            let (path, g) = apex_path(a, b, 2.05)?;
            let fit = extract_monodromy(&path, &g)?;
            let closed = monodromy_closed(&g)?;
            Ok(angle_distance(fit.screw.delta_theta, closed.delta_theta)
                .max((fit.screw.delta_z - closed.delta_z).abs()))
        };
        out.push(outcome(
            &format!("monodromy: extracted vs closed at ({a}, {b})"),
            1e-6,
            compare(),
        ));
    }
    out
}

fn correspondence() -> Vec<SuiteOutcome> {
    let run = || -> Result<[f64; 3]> {
        let (path, g) = apex_path(0.5, 1.0, 2.05)?;
        let hm = half_monodromy(&path, &g)?;
        let c = conjecture_check(&path, &g)?;
        Ok([hm.square_residual, hm.translation_residual, c.discrepancy])
    };
    let r = run();
    let pick = |i: usize| r.as_ref().map(|w| w[i]).map_err(Clone::clone);
    vec![
        outcome("correspondence: I² = M", 1e-6, pick(0)),
        outcome("correspondence: Δz(I) = Δz(M)/2", 1e-8, pick(1)),
        outcome("correspondence: rotation of I is Δθ/2 + π", 1e-4, pick(2)),
    ]
}

fn shooting() -> Vec<SuiteOutcome> {
    let round_trip = || -> Result<f64> {
        let s0 = canonical_initial_state(0.5, 1.0)?;
        let path = integrate(&s0, 1.5, &IntegrationOptions::tight().with_dt_out(1.5))?;
        let to = FramePlacement::of_state(path.samples().last().expect("non-empty path"));
        let sols = shoot(
            &FramePlacement::of_state(&s0),
            &to,
            &ShootingOptions::default(),
        )?;
        Ok(sols
            .iter()
            .map(|s| s.residual)
            .fold(f64::INFINITY, f64::min))
    };
    let witness = || -> Result<f64> {
        let (path, _) = apex_path(0.5, 1.0, 12.0)?;
        for n in 1..=12 {
            let bound = shortcut_bound(&path, n)?;
            if bound.is_shorter() {
                return Ok(0.0);
            }
        }
        Ok(1.0)
    };
    vec![
        outcome("shooting: round trip", 1e-7, round_trip()),
        outcome("shooting: shortcut beats nT at (0.5, 1)", 0.0, witness()),
    ]
}

/// Runs the named suite and returns one outcome per checked quantity.
pub fn run_suite(suite: Suite) -> Vec<SuiteOutcome> {
    match suite {
        Suite::All => [
            Suite::Elliptic,
            Suite::Dynamics,
            Suite::Closedform,
            Suite::Rodshape,
            Suite::Monodromy,
            Suite::Correspondence,
            Suite::Shooting,
        ]
        .into_iter()
        .flat_map(run_suite)
        .collect(),
        Suite::Elliptic => elliptic(),
        Suite::Dynamics => dynamics(),
        Suite::Closedform => closedform(),
        Suite::Rodshape => rodshape(),
        Suite::Monodromy => monodromy(),
        Suite::Correspondence => correspondence(),
        Suite::Shooting => shooting(),
    }
}
