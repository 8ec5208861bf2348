use crate::error::{Error, Result};
use crate::params::GeodesicParams;

/// `P(u) = (u + b²)[(1 + a)² − u][u − (1 − a)²]`, the right-hand side of
/// `(u′)² = P(u)` for `u = κ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicPolynomial {
    /// Roots `−b², (1 − a)², (1 + a)²`.
    pub roots: [f64; 3],
    /// `c[i]` multiplies `uⁱ`.
    pub coeffs: [f64; 4],
}

impl CubicPolynomial {
    pub fn eval(&self, u: f64) -> f64 {
        let c = &self.coeffs;
        ((c[3] * u + c[2]) * u + c[1]) * u + c[0]
    }

    /// True when two roots coincide to within `tol`.
    pub fn has_multiple_root(&self, tol: f64) -> bool {
        let r = &self.roots;
        (r[0] - r[1]).abs() <= tol || (r[0] - r[2]).abs() <= tol || (r[1] - r[2]).abs() <= tol
    }
}

pub fn kappa_sq_polynomial(a: f64, b: f64) -> CubicPolynomial {
    let r0 = -b * b;
    let r1 = (1.0 - a) * (1.0 - a);
    let r2 = (1.0 + a) * (1.0 + a);
    // −(u − r0)(u − r1)(u − r2)
    CubicPolynomial {
        roots: [r0, r1, r2],
        coeffs: [
            r0 * r1 * r2,
            -(r0 * r1 + r0 * r2 + r1 * r2),
            r0 + r1 + r2,
            -1.0,
        ],
    }
}

/// Bounds of curvature and torsion along a front track.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ranges {
    pub kappa_min: f64,
    pub kappa_max: f64,
    pub tau_min: f64,
    pub tau_max: f64,
}

/// Curvature and torsion ranges. The torsion bounds are the values of
/// `τ = b/2 + b(a² − 1)/(2κ²)` at the curvature extremes; at `a = 1` the
/// curvature changes sign and `τ = b/2`.
pub fn ranges(a: f64, b: f64) -> Result<Ranges> {
    if a < 0.0 || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!("invalid parameters ({a}, {b})")));
    }
    if a == 1.0 {
        if b == 0.0 {
            return Err(Error::Soliton("curvature 2 sech t never repeats".into()));
        }
        return Ok(Ranges {
            kappa_min: -2.0,
            kappa_max: 2.0,
            tau_min: 0.5 * b,
            tau_max: 0.5 * b,
        });
    }
    let lo = (1.0 - a).abs();
    let hi = 1.0 + a;
    let tau = |k: f64| 0.5 * b + b * (a * a - 1.0) / (2.0 * k * k);
    let (t1, t2) = (tau(lo), tau(hi));
    Ok(Ranges {
        kappa_min: lo,
        kappa_max: hi,
        tau_min: t1.min(t2),
        tau_max: t1.max(t2),
    })
}

/// Periods of κ² and of κ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Periods {
    pub kappa_sq: f64,
    /// Twice `kappa_sq` at `a = 1`, where κ is antiperiodic.
    pub kappa: f64,
}

pub fn period(params: &GeodesicParams) -> Result<Periods> {
    let t = params.period()?;
    Ok(Periods {
        kappa_sq: t,
        kappa: if params.a == 1.0 { 2.0 * t } else { t },
    })
}

/// Coefficients of the Kirchhoff rod equations
///
/// ```text
/// κ″ = κ[τ(τ − a₂) + a₁ − κ²/2]
/// κ²(2τ − a₂) = a₃
/// (κ′)² + (a₁ − κ²/2)² + κ²(τ − a₂)² = a₄²
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KirchhoffParams {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
}

impl KirchhoffParams {
    /// Coefficients of the rod `λ x(t/λ)`.
    pub fn rescaled(&self, lambda: f64) -> KirchhoffParams {
        KirchhoffParams {
            a1: self.a1 / (lambda * lambda),
            a2: self.a2 / lambda,
            a3: self.a3 / lambda.powi(3),
            a4: self.a4 / (lambda * lambda),
        }
    }

    /// `a₃ − 2a₂(a₁ − 1)`, zero for every geodesic front track.
    pub fn geodesic_defect(&self) -> f64 {
        self.a3 - 2.0 * self.a2 * (self.a1 - 1.0)
    }
}

pub fn kirchhoff_params(a: f64, b: f64) -> KirchhoffParams {
    KirchhoffParams {
        a1: 0.5 * (1.0 + a * a),
        a2: b,
        a3: b * (a * a - 1.0),
        a4: (a * a + b * b).sqrt(),
    }
}
