//! Geodesics connecting two placements of the frame, by Levenberg–Marquardt
//! shooting on the initial velocity, the momentum and the duration.
//!
//! The unknowns are `s ∈ R³` with `x′₀ = s/|s|`, the two components `q` of
//! `p` orthogonal to `v₀` (the component along `v₀` is forced to
//! `x′₀·v₀`), and the duration. Every choice is admissible: `r₀ = x′₀ − p`
//! is orthogonal to `v₀` and `|p + r₀| = 1`.

use nalgebra::{SMatrix, SVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[cfg(test)]
use crate::dynamics::integrate;
use crate::dynamics::{integrate_endpoint, IntegrationOptions, PhaseState, Vec3};
use crate::error::{Error, Result};

type Unknowns = SVector<f64, 6>;
type Residual = SVector<f64, 6>;
type Jacobian = SMatrix<f64, 6, 6>;

/// Position of the front wheel and direction of the frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FramePlacement {
    pub x: Vec3,
    pub v: Vec3,
}

impl FramePlacement {
    pub fn new(x: Vec3, v: Vec3) -> Result<Self> {
        if (v.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "frame direction must be a unit vector, |v| = {}",
                v.norm()
            )));
        }
        Ok(FramePlacement { x, v })
    }

    pub fn of_state(s: &PhaseState) -> Self {
        FramePlacement { x: s.x, v: s.v }
    }

    pub fn back(&self) -> Vec3 {
        self.x - self.v
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingOptions {
    pub restarts: usize,
    pub seed: u64,
    pub max_iterations: usize,
    /// Solutions shorter than this are discarded.
    pub min_duration: f64,
    /// Longest duration tried; by default grows with the distance between placements.
    pub max_duration: Option<f64>,
    /// Residual below which a run counts as converged.
    pub tolerance: f64,
    /// Distance in (x′₀, p, duration) below which two solutions are merged.
    pub cluster_distance: f64,
    pub integration: IntegrationOptions,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        ShootingOptions {
            restarts: 16,
            seed: 0x5eed_b1c7,
            max_iterations: 60,
            min_duration: 1e-3,
            max_duration: None,
            tolerance: 1e-8,
            cluster_distance: 1e-4,
            integration: IntegrationOptions {
                rel_tol: 1e-12,
                abs_tol: 1e-13,
                ..IntegrationOptions::default()
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingResult {
    pub p: Vec3,
    /// Initial front velocity `x′₀`.
    pub velocity: Vec3,
    pub duration: f64,
    /// `√(|x(T) − x_target|² + |v(T) − v_target|²)`
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl ShootingResult {
    /// Initial phase state of the connecting geodesic.
    pub fn initial_state(&self, from: &FramePlacement) -> PhaseState {
        PhaseState {
            x: from.x,
            v: from.v,
            p: self.p,
            r: self.velocity - self.p,
            t: 0.0,
        }
    }
}

struct Problem<'a> {
    from: &'a FramePlacement,
    to: &'a FramePlacement,
    e1: Vec3,
    e2: Vec3,
    max_duration: f64,
    opts: &'a ShootingOptions,
}

const MAX_TRANSVERSE_MOMENTUM: f64 = 10.0;

impl Problem<'_> {
    fn new<'a>(
        from: &'a FramePlacement,
        to: &'a FramePlacement,
        opts: &'a ShootingOptions,
    ) -> Problem<'a> {
        let v = from.v;
        let helper = if v.x.abs() < 0.9 {
            Vec3::x()
        } else {
            Vec3::y()
        };
        let e1 = (helper - helper.dot(&v) * v).normalize();
        let e2 = v.cross(&e1);
        let max_duration = opts
            .max_duration
            .unwrap_or(4.0 * (to.x - from.x).norm() + 4.0 * std::f64::consts::PI);
        Problem {
            from,
            to,
            e1,
            e2,
            max_duration,
            opts,
        }
    }

    fn decode(&self, z: &Unknowns) -> (Vec3, Vec3, f64) {
        let s = Vec3::new(z[0], z[1], z[2]);
        let velocity = s / s.norm();
        let p = velocity.dot(&self.from.v) * self.from.v + z[3] * self.e1 + z[4] * self.e2;
        (velocity, p, z[5])
    }

    fn residual(&self, z: &Unknowns) -> Option<Residual> {
        let (velocity, p, duration) = self.decode(z);
        if !(duration > 0.0) || !velocity.iter().all(|c| c.is_finite()) {
            return None;
        }
        let s0 = PhaseState {
            x: self.from.x,
            v: self.from.v,
            p,
            r: velocity - p,
            t: 0.0,
        };
        if duration > self.max_duration || z[3].hypot(z[4]) > MAX_TRANSVERSE_MOMENTUM {
            return None;
        }
        let end = integrate_endpoint(&s0, duration, &self.opts.integration).ok()?;
        let dx = end.x - self.to.x;
        let dv = end.v - self.to.v;
        Some(Residual::from_column_slice(&[
            dx.x, dx.y, dx.z, dv.x, dv.y, dv.z,
        ]))
    }

    /// Forward differences far from a solution, central differences near one.
    fn jacobian(&self, z: &Unknowns, fz: &Residual) -> Option<Jacobian> {
        let central = fz.norm() < 1e-3;
        let mut jac = Jacobian::zeros();
        for j in 0..6 {
            let mut zp = *z;
            if central {
                let h = 1e-6 * z[j].abs().max(1.0);
                let mut zm = *z;
                zp[j] += h;
                zm[j] -= h;
                jac.set_column(
                    j,
                    &((self.residual(&zp)? - self.residual(&zm)?) / (2.0 * h)),
                );
            } else {
                let h = 1e-7 * z[j].abs().max(1.0);
                zp[j] += h;
                jac.set_column(j, &((self.residual(&zp)? - fz) / h));
            }
        }
        Some(jac)
    }

    fn solve(&self, mut z: Unknowns) -> ShootingResult {
        let mut f = self.residual(&z);
        let mut lambda = 1e-3;
        let mut iterations = 0;
        let mut checkpoint = f64::INFINITY;
        while let Some(fz) = f {
            let norm = fz.norm();
            if norm <= 0.01 * self.opts.tolerance || iterations >= self.opts.max_iterations {
                break;
            }
            // give up on runs that stall far from a solution
            if iterations % 8 == 0 {
                if iterations > 0 && norm > 1e-4 && norm > 0.5 * checkpoint {
                    break;
                }
                checkpoint = norm;
            }
            iterations += 1;
            let Some(jac) = self.jacobian(&z, &fz) else {
                break;
            };
            let jtj = jac.transpose() * jac;
            let grad = jac.transpose() * fz;
            let mut improved = false;
            for _ in 0..12 {
                let mut damped = jtj;
                for i in 0..6 {
                    damped[(i, i)] += lambda * (jtj[(i, i)] + 1e-12);
                }
                let Some(step) = damped.lu().solve(&(-grad)) else {
                    lambda *= 10.0;
                    continue;
                };
                let mut trial = z + step;
                let s = trial.fixed_rows::<3>(0).norm();
                trial.fixed_rows_mut::<3>(0).unscale_mut(s);
                match self.residual(&trial) {
                    Some(ft) if ft.norm() < fz.norm() => {
                        z = trial;
                        f = Some(ft);
                        lambda = (lambda / 3.0).max(1e-12);
                        improved = true;
                        break;
                    }
                    _ => lambda *= 4.0,
                }
            }
            if !improved {
                break;
            }
        }
        let (velocity, p, duration) = self.decode(&z);
        let residual = f.map(|v| v.norm()).unwrap_or(f64::INFINITY);
        ShootingResult {
            p,
            velocity,
            duration,
            residual,
            iterations,
            converged: residual <= self.opts.tolerance,
        }
    }

    fn initial_guesses(&self) -> Vec<Unknowns> {
        let chord = self.to.x - self.from.x;
        let dist = chord.norm();
        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
        let mut out = Vec::with_capacity(self.opts.restarts);
        if dist > 0.0 {
            // straight ride along the chord: p = x′₀, r₀ = 0
            let d = chord / dist;
            let q = d - d.dot(&self.from.v) * self.from.v;
            out.push(Unknowns::from_column_slice(&[
                d.x,
                d.y,
                d.z,
                q.dot(&self.e1),
                q.dot(&self.e2),
                dist.max(self.opts.min_duration),
            ]));
        }
        while out.len() < self.opts.restarts {
            let s = loop {
                let c = Vec3::new(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                );
                let n = c.norm();
                if n > 0.1 && n <= 1.0 {
                    break c / n;
                }
            };
            let q1: f64 = rng.gen_range(-1.5..1.5);
            let q2: f64 = rng.gen_range(-1.5..1.5);
            let duration = dist.max(self.opts.min_duration) * rng.gen_range(1.0..1.6)
                + rng.gen_range(0.0..1.5);
            out.push(Unknowns::from_column_slice(&[
                s.x, s.y, s.z, q1, q2, duration,
            ]));
        }
        out
    }
}

fn parameter_distance(a: &ShootingResult, b: &ShootingResult) -> f64 {
    (a.velocity - b.velocity)
        .norm()
        .max((a.p - b.p).norm())
        .max((a.duration - b.duration).abs())
}

/// Searches for geodesics from `from` to `to`. Restarts run in parallel;
/// the output does not depend on scheduling. Returns the distinct converged
/// solutions sorted by duration.
pub fn shoot(
    from: &FramePlacement,
    to: &FramePlacement,
    opts: &ShootingOptions,
) -> Result<Vec<ShootingResult>> {
    FramePlacement::new(from.x, from.v)?;
    FramePlacement::new(to.x, to.v)?;
    if opts.restarts == 0 {
        return Err(Error::domain("at least one restart is needed"));
    }
    let problem = Problem::new(from, to, opts);
    let runs: Vec<ShootingResult> = problem
        .initial_guesses()
        .into_par_iter()
        .map(|z| problem.solve(z))
        .collect();

    let best_residual = runs
        .iter()
        .map(|r| r.residual)
        .fold(f64::INFINITY, f64::min);
    let mut found: Vec<ShootingResult> = Vec::new();
    for r in runs
        .into_iter()
        .filter(|r| r.converged && r.duration >= opts.min_duration)
    {
        match found
            .iter_mut()
            .find(|f| parameter_distance(f, &r) < opts.cluster_distance)
        {
            Some(f) if r.residual < f.residual => *f = r,
            Some(_) => {}
            None => found.push(r),
        }
    }
    if found.is_empty() {
        return Err(Error::NoSolutionFound {
            restarts: opts.restarts,
            best_residual,
        });
    }
    found.sort_by(|a, b| a.duration.total_cmp(&b.duration));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::canonical_initial_state;

    fn forward(a: f64, b: f64, t: f64) -> (FramePlacement, FramePlacement) {
        let s0 = canonical_initial_state(a, b).unwrap();
        let opts = IntegrationOptions::tight().with_dt_out(t);
        let path = integrate(&s0, t, &opts).unwrap();
        (
            FramePlacement::of_state(&s0),
            FramePlacement::of_state(path.samples().last().unwrap()),
        )
    }

    #[test]
    fn recovers_a_forward_generated_geodesic() {
        let (from, to) = forward(0.5, 1.0, 1.5);
        let sols = shoot(&from, &to, &ShootingOptions::default()).unwrap();
        let best = sols
            .iter()
            .find(|s| (s.duration - 1.5).abs() < 1e-5)
            .expect("a solution of the generating duration");
        assert!(best.residual <= 1e-8);
        let check = integrate(
            &best.initial_state(&from),
            best.duration,
            &IntegrationOptions::tight().with_dt_out(best.duration),
        )
        .unwrap();
        let end = check.samples().last().unwrap();
        assert!((end.x - to.x).norm() < 1e-7 && (end.v - to.v).norm() < 1e-7);
    }

    #[test]
    fn deterministic_across_runs() {
        let (from, to) = forward(1.2, 0.4, 1.0);
        let opts = ShootingOptions::default();
        let a = shoot(&from, &to, &opts).unwrap();
        let b = shoot(&from, &to, &opts).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn identical_placements_have_no_short_solution() {
        let (from, _) = forward(0.5, 1.0, 1.0);
        let opts = ShootingOptions {
            restarts: 4,
            max_iterations: 15,
            ..ShootingOptions::default()
        };
        match shoot(&from, &from, &opts) {
            Ok(sols) => assert!(sols.iter().all(|s| s.duration >= opts.min_duration)),
            Err(e) => assert!(matches!(e, Error::NoSolutionFound { .. })),
        }
    }

    #[test]
    fn rejects_non_unit_frames() {
        let bad = FramePlacement {
            x: Vec3::zeros(),
            v: Vec3::new(0.0, 0.0, 2.0),
        };
        let good = FramePlacement::new(Vec3::zeros(), Vec3::z()).unwrap();
        assert!(matches!(
            shoot(&bad, &good, &ShootingOptions::default()),
            Err(Error::Domain(_))
        ));
    }
}
