//! Carlson symmetric elliptic integrals by the duplication theorem.
//!
//! Truncation follows Carlson (1995): iterate until `4^-m Q < |A_m|`, then
//! sum the fifth-order Taylor expansion about the mean. With `r = 1e-16`
//! the truncation error is below binary64 rounding.

use crate::error::{Error, Result};

const DUPLICATION_TOL: f64 = 1e-16;
const MAX_DUPLICATIONS: usize = 64;

fn check_nonneg(name: &str, values: &[f64]) -> Result<()> {
    for &v in values {
        if !(v >= 0.0) || !v.is_finite() {
            return Err(Error::domain(format!(
                "{name}: arguments must be finite and non-negative, got {v}"
            )));
        }
    }
    Ok(())
}

/// RF(x, y, z) = ½ ∫₀^∞ dt / √((t+x)(t+y)(t+z)).
pub fn carlson_rf(x: f64, y: f64, z: f64) -> Result<f64> {
    check_nonneg("RF", &[x, y, z])?;
    if [x, y, z].iter().filter(|&&v| v == 0.0).count() >= 2 {
        return Err(Error::domain("RF: at most one argument may be zero"));
    }

    let a0 = (x + y + z) / 3.0;
    let q = (3.0 * DUPLICATION_TOL).powf(-1.0 / 6.0)
        * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let (mut xm, mut ym, mut zm, mut am) = (x, y, z, a0);
    let mut scale = 1.0; // 4^-m
    for _ in 0..MAX_DUPLICATIONS {
        if scale * q < am.abs() {
            break;
        }
        let (sx, sy, sz) = (xm.sqrt(), ym.sqrt(), zm.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        am = 0.25 * (am + lambda);
        xm = 0.25 * (xm + lambda);
        ym = 0.25 * (ym + lambda);
        zm = 0.25 * (zm + lambda);
        scale *= 0.25;
    }
    let xx = (a0 - x) * scale / am;
    let yy = (a0 - y) * scale / am;
    let zz = -(xx + yy);
    let e2 = xx * yy - zz * zz;
    let e3 = xx * yy * zz;
    let series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0;
    Ok(series / am.sqrt())
}

/// RC(x, y) = RF(x, y, y) for y > 0.
pub fn carlson_rc(x: f64, y: f64) -> Result<f64> {
    check_nonneg("RC", &[x])?;
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::domain(format!("RC: y must be positive, got {y}")));
    }
    let a0 = (x + 2.0 * y) / 3.0;
    let q = (3.0 * DUPLICATION_TOL).powf(-1.0 / 8.0) * (a0 - x).abs();
    let (mut xm, mut ym, mut am) = (x, y, a0);
    let mut scale = 1.0;
    for _ in 0..MAX_DUPLICATIONS {
        if scale * q < am.abs() {
            break;
        }
        let lambda = 2.0 * xm.sqrt() * ym.sqrt() + ym;
        am = 0.25 * (am + lambda);
        xm = 0.25 * (xm + lambda);
        ym = 0.25 * (ym + lambda);
        scale *= 0.25;
    }
    let s = (y - a0) * scale / am;
    let series = 1.0
        + s * s
            * (3.0 / 10.0
                + s * (1.0 / 7.0
                    + s * (3.0 / 8.0 + s * (9.0 / 22.0 + s * (159.0 / 208.0 + s * 9.0 / 8.0)))));
    Ok(series / am.sqrt())
}

/// RD(x, y, z) = (3/2) ∫₀^∞ dt / ((t+z) √((t+x)(t+y)(t+z))), z > 0.
pub fn carlson_rd(x: f64, y: f64, z: f64) -> Result<f64> {
    check_nonneg("RD", &[x, y, z])?;
    if z == 0.0 || (x == 0.0 && y == 0.0) {
        return Err(Error::domain("RD: z must be positive and x + y > 0"));
    }

    let a0 = (x + y + 3.0 * z) / 5.0;
    let q = (0.25 * DUPLICATION_TOL).powf(-1.0 / 6.0)
        * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let (mut xm, mut ym, mut zm, mut am) = (x, y, z, a0);
    let mut scale = 1.0;
    let mut sum = 0.0;
    for _ in 0..MAX_DUPLICATIONS {
        if scale * q < am.abs() {
            break;
        }
        let (sx, sy, sz) = (xm.sqrt(), ym.sqrt(), zm.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        sum += scale / (sz * (zm + lambda));
        am = 0.25 * (am + lambda);
        xm = 0.25 * (xm + lambda);
        ym = 0.25 * (ym + lambda);
        zm = 0.25 * (zm + lambda);
        scale *= 0.25;
    }
    let xx = (a0 - x) * scale / am;
    let yy = (a0 - y) * scale / am;
    let zz = -(xx + yy) / 3.0;
    let xy = xx * yy;
    let z2 = zz * zz;
    let e2 = xy - 6.0 * z2;
    let e3 = (3.0 * xy - 8.0 * z2) * zz;
    let e4 = 3.0 * (xy - z2) * z2;
    let e5 = xy * z2 * zz;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
        - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    Ok(scale * series / (am * am.sqrt()) + 3.0 * sum)
}

/// RJ(x, y, z, p) = (3/2) ∫₀^∞ dt / ((t+p) √((t+x)(t+y)(t+z))) for p > 0.
///
/// The Cauchy principal value (p < 0) is not supported.
pub fn carlson_rj(x: f64, y: f64, z: f64, p: f64) -> Result<f64> {
    check_nonneg("RJ", &[x, y, z])?;
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::domain(format!(
            "RJ: p must be positive (principal value unsupported), got {p}"
        )));
    }
    if [x, y, z].iter().filter(|&&v| v == 0.0).count() >= 2 {
        return Err(Error::domain("RJ: at most one of x, y, z may be zero"));
    }

    let a0 = (x + y + z + 2.0 * p) / 5.0;
    let delta = (p - x) * (p - y) * (p - z);
    let q = (0.25 * DUPLICATION_TOL).powf(-1.0 / 6.0)
        * (a0 - x)
            .abs()
            .max((a0 - y).abs())
            .max((a0 - z).abs())
            .max((a0 - p).abs());
    let (mut xm, mut ym, mut zm, mut pm, mut am) = (x, y, z, p, a0);
    let mut scale = 1.0;
    let mut sum = 0.0;
    for _ in 0..MAX_DUPLICATIONS {
        if scale * q < am.abs() {
            break;
        }
        let (sx, sy, sz, sp) = (xm.sqrt(), ym.sqrt(), zm.sqrt(), pm.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        let d = (sp + sx) * (sp + sy) * (sp + sz);
        let e = scale * scale * scale * delta / (d * d);
        sum += scale * carlson_rc(1.0, 1.0 + e)? / d;
        am = 0.25 * (am + lambda);
        xm = 0.25 * (xm + lambda);
        ym = 0.25 * (ym + lambda);
        zm = 0.25 * (zm + lambda);
        pm = 0.25 * (pm + lambda);
        scale *= 0.25;
    }
    let xx = (a0 - x) * scale / am;
    let yy = (a0 - y) * scale / am;
    let zz = (a0 - z) * scale / am;
    let pp = -0.5 * (xx + yy + zz);
    let p2 = pp * pp;
    let xyz = xx * yy * zz;
    let e2 = xx * yy + xx * zz + yy * zz - 3.0 * p2;
    let e3 = xyz + 2.0 * e2 * pp + 4.0 * p2 * pp;
    let e4 = (2.0 * xyz + e2 * pp + 3.0 * p2 * pp) * pp;
    let e5 = xyz * p2;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
        - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    Ok(scale * series / (am * am.sqrt()) + 6.0 * sum)
}
