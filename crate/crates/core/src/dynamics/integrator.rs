//! Dormand–Prince 5(4) with PI step-size control, post-step constraint
//! projection and the method's fourth-order continuous extension.

use std::sync::Arc;

use super::path::{IntegrationStats, SampledPath};
use super::state::{hamiltonian_rhs, PhaseState, Vec3};
use crate::error::{Error, Result};

/// Tolerances and output spacing for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub dt_out: f64,
    pub max_steps: usize,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        IntegrationOptions {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            dt_out: 0.01,
            max_steps: 2_000_000,
        }
    }
}

impl IntegrationOptions {
    pub fn tight() -> Self {
        IntegrationOptions {
            rel_tol: 1e-12,
            abs_tol: 1e-13,
            ..Self::default()
        }
    }

    pub fn with_dt_out(mut self, dt_out: f64) -> Self {
        self.dt_out = dt_out;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::domain("tolerances must be positive"));
        }
        if !(self.dt_out > 0.0) {
            return Err(Error::domain("dt_out must be positive"));
        }
        Ok(())
    }
}

const DIM: usize = 9;
type Y = [f64; DIM];

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

fn pack(s: &PhaseState) -> Y {
    let mut y = [0.0; DIM];
    y[0..3].copy_from_slice(s.x.as_slice());
    y[3..6].copy_from_slice(s.v.as_slice());
    y[6..9].copy_from_slice(s.r.as_slice());
    y
}

fn unpack(y: &Y, p: Vec3, t: f64) -> PhaseState {
    PhaseState {
        x: Vec3::new(y[0], y[1], y[2]),
        v: Vec3::new(y[3], y[4], y[5]),
        p,
        r: Vec3::new(y[6], y[7], y[8]),
        t,
    }
}

fn rhs(y: &Y, p: &Vec3) -> Y {
    let d = hamiltonian_rhs(&unpack(y, *p, 0.0));
    let mut out = [0.0; DIM];
    out[0..3].copy_from_slice(d.x.as_slice());
    out[3..6].copy_from_slice(d.v.as_slice());
    out[6..9].copy_from_slice(d.r.as_slice());
    out
}

fn combine(y: &Y, h: f64, terms: &[(f64, &Y)]) -> Y {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..DIM {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// One accepted step's continuous extension.
#[derive(Debug, Clone)]
pub(crate) struct DenseSegment {
    t0: f64,
    h: f64,
    coeffs: [Y; 5],
}

impl DenseSegment {
    fn eval(&self, t: f64) -> Y {
        let theta = (t - self.t0) / self.h;
        let theta1 = 1.0 - theta;
        let c = &self.coeffs;
        let mut y = [0.0; DIM];
        for i in 0..DIM {
            y[i] = c[0][i]
                + theta * (c[1][i] + theta1 * (c[2][i] + theta * (c[3][i] + theta1 * c[4][i])));
        }
        y
    }

    fn t_end(&self) -> f64 {
        self.t0 + self.h
    }
}

/// Piecewise continuous solution over the integrated interval.
#[derive(Debug, Clone)]
pub(crate) struct DenseOutput {
    p: Vec3,
    segments: Vec<DenseSegment>,
    forward: bool,
}

impl DenseOutput {
    pub(crate) fn span(&self) -> (f64, f64) {
        let first = self.segments.first().map(|s| s.t0).unwrap_or(0.0);
        let last = self.segments.last().map(|s| s.t_end()).unwrap_or(first);
        (first.min(last), first.max(last))
    }

    /// Projected state at `t`, or `None` outside the integrated interval.
    pub(crate) fn state_at(&self, t: f64) -> Option<PhaseState> {
        let (lo, hi) = self.span();
        let slack = 1e-12 * (1.0 + hi.abs().max(lo.abs()));
        if t < lo - slack || t > hi + slack || self.segments.is_empty() {
            return None;
        }
        let idx = if self.forward {
            self.segments.partition_point(|s| s.t_end() < t)
        } else {
            self.segments.partition_point(|s| s.t_end() > t)
        };
        let seg = &self.segments[idx.min(self.segments.len() - 1)];
        let mut s = unpack(&seg.eval(t), self.p, t);
        s.project();
        Some(s)
    }
}

fn error_norm(y0: &Y, y1: &Y, err: &Y, opts: &IntegrationOptions) -> f64 {
    let mut acc = 0.0;
    for i in 0..DIM {
        let sc = opts.abs_tol + opts.rel_tol * y0[i].abs().max(y1[i].abs());
        acc += (err[i] / sc).powi(2);
    }
    (acc / DIM as f64).sqrt()
}

/// Integrates the geodesic equations from `s0` to `t_end` (which may lie on
/// either side of `s0.t`) and samples the result every `opts.dt_out`.
///
/// After each accepted step `v` is renormalized and `r` projected onto the
/// plane orthogonal to `v`; the largest pre-projection residuals are kept in
/// the path's [`IntegrationStats`].
pub fn integrate(s0: &PhaseState, t_end: f64, opts: &IntegrationOptions) -> Result<SampledPath> {
    let (start, _, segments, stats) = march(s0, t_end, opts, true)?;
    let dense = Arc::new(DenseOutput {
        p: start.p,
        segments,
        forward: t_end > start.t,
    });
    let samples = sample_times(start.t, t_end, opts.dt_out)
        .into_iter()
        .map(|ts| {
            if ts == start.t {
                start
            } else {
                dense
                    .state_at(ts)
                    .expect("sample time inside integrated span")
            }
        })
        .collect();
    Ok(SampledPath::from_parts(samples, Some(dense), stats))
}

/// State at `t_end` only, without keeping the continuous solution.
pub fn integrate_endpoint(
    s0: &PhaseState,
    t_end: f64,
    opts: &IntegrationOptions,
) -> Result<PhaseState> {
    let (_, end, _, _) = march(s0, t_end, opts, false)?;
    Ok(end)
}

fn march(
    s0: &PhaseState,
    t_end: f64,
    opts: &IntegrationOptions,
    keep_dense: bool,
) -> Result<(PhaseState, PhaseState, Vec<DenseSegment>, IntegrationStats)> {
    opts.validate()?;
    if !t_end.is_finite() || t_end == s0.t {
        return Err(Error::domain(
            "t_end must be finite and differ from the start time",
        ));
    }
    let mut start = *s0;
    start.project();
    let p = start.p;
    let direction = (t_end - start.t).signum();

    let mut stats = IntegrationStats::default();
    let mut segments = Vec::new();
    let mut t = start.t;
    let mut y = pack(&start);
    let mut k1 = rhs(&y, &p);
    let span = (t_end - t).abs();
    let mut h = direction * initial_step(&y, &k1, &p, opts).min(span);
    let mut err_old: f64 = 1e-4;
    let mut last_rejected = false;

    const BETA: f64 = 0.04;
    const SAFE: f64 = 0.9;
    let expo1 = 0.2 - BETA * 0.75;

    loop {
        if (t_end - t) * direction <= 0.0 {
            break;
        }
        if stats.accepted + stats.rejected >= opts.max_steps {
            return Err(Error::Integration {
                reason: format!("exceeded {} steps", opts.max_steps),
                last_good: Box::new(unpack(&y, p, t)),
            });
        }
        if (t + h - t_end) * direction > 0.0 {
            h = t_end - t;
        }
        if h.abs() < 1e-14 * t.abs().max(1.0) {
            return Err(Error::Integration {
                reason: format!("step size underflow (h = {h:e})"),
                last_good: Box::new(unpack(&y, p, t)),
            });
        }

        let k2 = rhs(&combine(&y, h, &[(A21, &k1)]), &p);
        let k3 = rhs(&combine(&y, h, &[(A31, &k1), (A32, &k2)]), &p);
        let k4 = rhs(&combine(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]), &p);
        let k5 = rhs(
            &combine(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            &p,
        );
        let k6 = rhs(
            &combine(
                &y,
                h,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
            &p,
        );
        let y1 = combine(
            &y,
            h,
            &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
        );
        let k7 = rhs(&y1, &p);
        let mut err = [0.0; DIM];
        for i in 0..DIM {
            err[i] =
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        }
        let en = error_norm(&y, &y1, &err, opts);
        if !en.is_finite() {
            return Err(Error::Integration {
                reason: "non-finite error estimate".into(),
                last_good: Box::new(unpack(&y, p, t)),
            });
        }
        let fac11 = en.powf(expo1);

        if en <= 1.0 {
            let mut next = unpack(&y1, p, t + h);
            let (dv, rv, _) = next.constraint_residuals();
            stats.max_pre_projection_vnorm = stats.max_pre_projection_vnorm.max(dv.abs());
            stats.max_pre_projection_rv = stats.max_pre_projection_rv.max(rv.abs());
            next.project();
            let y1p = pack(&next);
            let k7p = rhs(&y1p, &p);

            if keep_dense {
                let mut coeffs = [[0.0; DIM]; 5];
                for i in 0..DIM {
                    let dy = y1p[i] - y[i];
                    let bspl = h * k1[i] - dy;
                    coeffs[0][i] = y[i];
                    coeffs[1][i] = dy;
                    coeffs[2][i] = bspl;
                    coeffs[3][i] = dy - h * k7p[i] - bspl;
                    coeffs[4][i] = h
                        * (D1 * k1[i]
                            + D3 * k3[i]
                            + D4 * k4[i]
                            + D5 * k5[i]
                            + D6 * k6[i]
                            + D7 * k7p[i]);
                }
                segments.push(DenseSegment { t0: t, h, coeffs });
            }

            stats.accepted += 1;
            t += h;
            y = y1p;
            k1 = k7p;

            let fac = (fac11 / err_old.powf(BETA) / SAFE).clamp(0.1, 5.0);
            let mut h_new = h / fac;
            if last_rejected {
                h_new = direction * h_new.abs().min(h.abs());
            }
            err_old = en.max(1e-4);
            last_rejected = false;
            h = h_new;
        } else {
            stats.rejected += 1;
            h /= (fac11 / SAFE).min(5.0);
            last_rejected = true;
        }
    }

    Ok((start, unpack(&y, p, t_end), segments, stats))
}

fn sample_times(t0: f64, t1: f64, dt: f64) -> Vec<f64> {
    let dir = (t1 - t0).signum();
    let n = ((t1 - t0).abs() / dt).floor() as usize;
    let mut ts: Vec<f64> = (0..=n).map(|i| t0 + dir * i as f64 * dt).collect();
    if (t1 - ts[n]).abs() > 1e-9 * dt {
        ts.push(t1);
    } else {
        ts[n] = t1;
    }
    ts
}

fn initial_step(y: &Y, f0: &Y, p: &Vec3, opts: &IntegrationOptions) -> f64 {
    let sc = |i: usize| opts.abs_tol + opts.rel_tol * y[i].abs();
    let d0 = (0..DIM).map(|i| (y[i] / sc(i)).powi(2)).sum::<f64>().sqrt();
    let d1 = (0..DIM)
        .map(|i| (f0[i] / sc(i)).powi(2))
        .sum::<f64>()
        .sqrt();
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    let y1 = combine(y, h0, &[(1.0, f0)]);
    let f1 = rhs(&y1, p);
    let d2 = (0..DIM)
        .map(|i| ((f1[i] - f0[i]) / sc(i)).powi(2))
        .sum::<f64>()
        .sqrt()
        / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1).min(1.0)
}
