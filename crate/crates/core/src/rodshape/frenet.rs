use crate::dynamics::{hamiltonian_rhs, PhaseState, SampledPath, Vec3};
use crate::error::{Error, Result};
use crate::params::GeodesicParams;

/// Frenet data of a front track at one sample.
///
/// `kappa` may be negative on paths with inflections (`a = 1`), where the
/// sign is chosen by continuity of the binormal. `tau` comes from the
/// torsion law `κ²(2τ − b) = b(a² − 1)`; `tau_geometric` is the torsion of
/// the curve computed from `x′, x″, x‴` and serves as an independent check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetSample {
    pub t: f64,
    pub kappa: f64,
    pub tau: f64,
    pub tau_geometric: f64,
    pub kappa_prime: f64,
    pub t_vec: Vec3,
    pub n_vec: Vec3,
    pub b_vec: Vec3,
    /// `F = v·x′`
    pub f: f64,
    /// `G = p·x′`
    pub g: f64,
}

impl FrenetSample {
    /// `((1 + a² − κ²)/2) T − κ′ N − κ(τ − b) B`, which equals `p`.
    pub fn reconstructed_p(&self, params: &GeodesicParams) -> Vec3 {
        let (a, b) = (params.a, params.b);
        0.5 * (1.0 + a * a - self.kappa * self.kappa) * self.t_vec
            - self.kappa_prime * self.n_vec
            - self.kappa * (self.tau - b) * self.b_vec
    }

    /// `(κ′)² + ¼(1 + a² − κ²)² + κ²(τ − b)² − (a² + b²)`.
    pub fn energy_residual(&self, params: &GeodesicParams) -> f64 {
        let (a, b) = (params.a, params.b);
        let k2 = self.kappa * self.kappa;
        self.kappa_prime.powi(2) + 0.25 * (1.0 + a * a - k2).powi(2) + k2 * (self.tau - b).powi(2)
            - (a * a + b * b)
    }

    /// `κ²(2τ − b) − b(a² − 1)` evaluated with the geometric torsion.
    pub fn torsion_law_residual(&self, params: &GeodesicParams) -> f64 {
        let (a, b) = (params.a, params.b);
        self.kappa * self.kappa * (2.0 * self.tau_geometric - b) - b * (a * a - 1.0)
    }

    /// `2G − (1 + a² − κ²)`.
    pub fn g_residual(&self, params: &GeodesicParams) -> f64 {
        2.0 * self.g - (1.0 + params.a * params.a - self.kappa * self.kappa)
    }

    /// Max deviation of `(T, N, B)` from an orthonormal frame.
    pub fn frame_residual(&self) -> f64 {
        let (t, n, b) = (&self.t_vec, &self.n_vec, &self.b_vec);
        [
            (t.norm() - 1.0).abs(),
            (n.norm() - 1.0).abs(),
            (b.norm() - 1.0).abs(),
            t.dot(n).abs(),
            t.dot(b).abs(),
            n.dot(b).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

const INFLECTION_KAPPA: f64 = 1e-9;

/// Curvature, torsion and Frenet frame at a phase state, with `κ ≥ 0`.
///
/// `κB = −bT − K` with `K = r × v`, so that `κ² = |r|² − b²`.
pub fn curvature_torsion(s: &PhaseState, params: &GeodesicParams) -> Result<FrenetSample> {
    let b = params.b;
    let t_vec = s.velocity();
    let field = s.magnetic_field();
    if field.norm_squared() == 0.0 {
        return Err(Error::Degenerate(
            "κ² + b² = 0: the front track is a straight line".into(),
        ));
    }
    // |w|² = |r|² − b² = κ², without the cancellation near inflections
    let w = -b * t_vec - field;
    let kappa = w.norm();
    let k2 = kappa * kappa;

    let d = hamiltonian_rhs(s);
    let field_rate = d.r.cross(&s.v) + s.r.cross(&d.v);
    let accel = t_vec.cross(&field);
    let jerk = accel.cross(&field) + t_vec.cross(&field_rate);

    let b_vec = if kappa > INFLECTION_KAPPA {
        w / w.norm()
    } else {
        // At an inflection W = 0 and W′ = κ′B = −K′.
        let wr = -field_rate;
        if wr.norm() == 0.0 {
            return Err(Error::Degenerate(
                "binormal undefined at a flat point".into(),
            ));
        }
        wr / wr.norm()
    };
    let n_vec = b_vec.cross(&t_vec);
    let tau = if k2 > INFLECTION_KAPPA * INFLECTION_KAPPA {
        0.5 * b + b * (params.a * params.a - 1.0) / (2.0 * k2)
    } else {
        0.5 * b
    };
    let tau_geometric = if kappa > INFLECTION_KAPPA {
        w.dot(&jerk) / k2
    } else {
        tau
    };
    Ok(FrenetSample {
        t: s.t,
        kappa,
        tau,
        tau_geometric,
        kappa_prime: -s.p.dot(&n_vec),
        t_vec,
        n_vec,
        b_vec,
        f: s.v.dot(&t_vec),
        g: s.p.dot(&t_vec),
    })
}

/// Frenet samples along a path with the curvature sign chosen by continuity
/// of the binormal and made positive at the first curvature maximum.
pub fn frenet_series(path: &SampledPath, params: &GeodesicParams) -> Result<Vec<FrenetSample>> {
    let mut out: Vec<FrenetSample> = Vec::with_capacity(path.len());
    for s in path.samples() {
        let mut f = curvature_torsion(s, params)?;
        if let Some(prev) = out.last() {
            if prev.b_vec.dot(&f.b_vec) < 0.0 {
                flip_sign(&mut f);
            }
        }
        out.push(f);
    }
    if let Some(peak) = first_peak(&out) {
        if out[peak].kappa < 0.0 {
            out.iter_mut().for_each(flip_sign);
        }
    }
    Ok(out)
}

fn flip_sign(f: &mut FrenetSample) {
    f.kappa = -f.kappa;
    f.kappa_prime = -f.kappa_prime;
    f.n_vec = -f.n_vec;
    f.b_vec = -f.b_vec;
}

fn first_peak(series: &[FrenetSample]) -> Option<usize> {
    let mag = |i: usize| series[i].kappa.abs();
    let n = series.len();
    if n == 0 {
        return None;
    }
    if n == 1 || mag(0) >= mag(1) {
        return Some(0);
    }
    (1..n - 1)
        .find(|&i| mag(i) >= mag(i - 1) && mag(i) >= mag(i + 1))
        .or(Some(n - 1))
}
