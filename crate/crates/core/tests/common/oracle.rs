//! Reference values computed by plain quadrature and a fixed-step RK4,
//! sharing no code with the library.

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

/// Adaptive Simpson with Richardson correction.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let diff = left + right - whole;
        let floor = 64.0 * f64::EPSILON * (left.abs() + right.abs());
        if depth == 0 || diff.abs() <= 15.0 * tol.max(floor) {
            return left + right + diff / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    // a few fixed panels first so narrow features are not skipped
    let panels = 16;
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let (x0, x1) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            let (f0, fm, f1) = (f(x0), f(0.5 * (x0 + x1)), f(x1));
            let whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
            rec(f, x0, x1, f0, fm, f1, whole, tol / panels as f64, 26)
        })
        .sum()
}

const TOL: f64 = 1e-13;

/// `∫₀^φ dθ / √(1 − m sin²θ)`
pub fn legendre_f(phi: f64, m: f64) -> f64 {
    simpson(
        &|t: f64| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt(),
        0.0,
        phi,
        TOL,
    )
}

/// `∫₀^φ √(1 − m sin²θ) dθ`
pub fn legendre_e(phi: f64, m: f64) -> f64 {
    simpson(&|t: f64| (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, phi, TOL)
}

/// `∫₀^φ dθ / ((1 − n sin²θ) √(1 − m sin²θ))`
pub fn legendre_pi(phi: f64, n: f64, m: f64) -> f64 {
    simpson(
        &|t: f64| {
            let s2 = t.sin().powi(2);
            1.0 / ((1.0 - n * s2) * (1.0 - m * s2).sqrt())
        },
        0.0,
        phi,
        TOL,
    )
}

pub fn k(m: f64) -> f64 {
    legendre_f(FRAC_PI_2, m)
}

pub fn e(m: f64) -> f64 {
    legendre_e(FRAC_PI_2, m)
}

pub fn pi(n: f64, m: f64) -> f64 {
    legendre_pi(FRAC_PI_2, n, m)
}

/// `K(m) = π / (2 AGM(1, √(1 − m)))`
pub fn k_agm(m: f64) -> f64 {
    let (mut a, mut b) = (1.0f64, (1.0 - m).sqrt());
    for _ in 0..60 {
        let next = (0.5 * (a + b), (a * b).sqrt());
        a = next.0;
        b = next.1;
    }
    FRAC_PI_2 / a
}

/// Jacobi amplitude: solves `F(φ, m) = u` by Newton's method.
pub fn am(u: f64, m: f64) -> f64 {
    let quarter = k(m);
    // F(φ + π) = F(φ) + 2K
    let j = (u / (2.0 * quarter)).round();
    let r = u - 2.0 * j * quarter;
    // F is increasing, so bracket on [−π/2, π/2] before polishing
    let (mut lo, mut hi) = (-FRAC_PI_2, FRAC_PI_2);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if legendre_f(mid, m) < r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut phi = 0.5 * (lo + hi);
    for _ in 0..4 {
        phi -= (legendre_f(phi, m) - r) * (1.0 - m * phi.sin().powi(2)).sqrt();
    }
    phi + j * std::f64::consts::PI
}

/// `(sn, cn, dn)` from the amplitude.
pub fn sn_cn_dn(u: f64, m: f64) -> (f64, f64, f64) {
    let phi = am(u, m);
    let s = phi.sin();
    (s, phi.cos(), (1.0 - m * s * s).sqrt())
}

/// Jacobi-form `E(u) = ∫₀^{am u} √(1 − m sin²θ) dθ`.
pub fn jacobi_e(u: f64, m: f64) -> f64 {
    legendre_e(am(u, m), m)
}

/// Jacobi-form `Π(u, n) = ∫₀^{am u} dθ / ((1 − n sin²θ) √(1 − m sin²θ))`.
pub fn jacobi_pi(u: f64, n: f64, m: f64) -> f64 {
    legendre_pi(am(u, m), n, m)
}

/// Carlson `RF` through `t = c tan²φ`, which turns the half-line into
/// `[0, π/2]` with a smooth integrand.
pub fn rf(x: f64, y: f64, z: f64) -> f64 {
    let c = x.max(y).max(z);
    simpson(
        &|phi: f64| {
            let (s, co) = phi.sin_cos();
            let (s2, c2) = (s * s, co * co);
            let prod = (c * s2 + x * c2) * (c * s2 + y * c2) * (c * s2 + z * c2);
            if prod == 0.0 {
                return 0.0;
            }
            c * s / prod.sqrt()
        },
        0.0,
        FRAC_PI_2,
        TOL,
    )
}

/// Carlson `RJ` through the same substitution.
pub fn rj(x: f64, y: f64, z: f64, p: f64) -> f64 {
    let c = x.max(y).max(z).max(p);
    simpson(
        &|phi: f64| {
            let (s, co) = phi.sin_cos();
            let (s2, c2) = (s * s, co * co);
            let prod = (c * s2 + x * c2) * (c * s2 + y * c2) * (c * s2 + z * c2);
            if prod == 0.0 {
                return 0.0;
            }
            3.0 * c * s * c2 / ((c * s2 + p * c2) * prod.sqrt())
        },
        0.0,
        FRAC_PI_2,
        TOL,
    )
}

pub fn rd(x: f64, y: f64, z: f64) -> f64 {
    rj(x, y, z, z)
}

/// Curvature squared from the oracle `sn`, phased at a maximum.
pub fn kappa_sq(t: f64, a: f64, b: f64) -> f64 {
    let denom = (a + 1.0).powi(2) + b * b;
    let omega = 0.5 * denom.sqrt();
    let m = 4.0 * a / denom;
    let (sn, _, _) = sn_cn_dn(omega * t, m);
    (1.0 + a).powi(2) - 4.0 * a * sn * sn
}

/// Period of κ²: `2K(m)/ω`.
pub fn period(a: f64, b: f64) -> f64 {
    let denom = (a + 1.0).powi(2) + b * b;
    2.0 * k(4.0 * a / denom) / (0.5 * denom.sqrt())
}

pub type V3 = [f64; 3];

fn dot(u: &V3, w: &V3) -> f64 {
    u[0] * w[0] + u[1] * w[1] + u[2] * w[2]
}

/// `(x, v, r)` rates with fixed `p`:
/// `x′ = p + r`, `v′ = p + r − (v·p) v`, `r′ = (v·p) r − (r·(r + p)) v`.
fn rates(state: &[V3; 3], p: &V3) -> [V3; 3] {
    let [_, v, r] = state;
    let vp = dot(v, p);
    let rrp = dot(r, r) + dot(r, p);
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        out[0][i] = p[i] + r[i];
        out[1][i] = p[i] + r[i] - vp * v[i];
        out[2][i] = vp * r[i] - rrp * v[i];
    }
    out
}

/// Classical RK4 with a fixed step. Returns `(x, v, r)` at `t_end`.
pub fn rk4(x: V3, v: V3, p: V3, r: V3, t_end: f64, steps: usize) -> [V3; 3] {
    let h = t_end / steps as f64;
    let mut y = [x, v, r];
    let add = |y: &[V3; 3], k: &[V3; 3], c: f64| {
        let mut out = *y;
        for j in 0..3 {
            for i in 0..3 {
                out[j][i] += c * k[j][i];
            }
        }
        out
    };
    for _ in 0..steps {
        let k1 = rates(&y, &p);
        let k2 = rates(&add(&y, &k1, 0.5 * h), &p);
        let k3 = rates(&add(&y, &k2, 0.5 * h), &p);
        let k4 = rates(&add(&y, &k3, h), &p);
        for j in 0..3 {
            for i in 0..3 {
                y[j][i] += h / 6.0 * (k1[j][i] + 2.0 * k2[j][i] + 2.0 * k3[j][i] + k4[j][i]);
            }
        }
    }
    y
}
