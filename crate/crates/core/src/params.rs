//! The (a, b) parameter pair of a geodesic and the quantities derived from it.

use serde::{Deserialize, Serialize};

use crate::dynamics::PhaseState;
use crate::elliptic::{complete_k, Modulus};
use crate::error::{Error, Result};

/// Parameters of a unit-speed bicycle geodesic.
///
/// `a ≥ 0` and `b` fix the curvature/torsion family; `|p|² = a² + b²`.
/// `a_coef`, `b_coef` and `n` are the coefficients of the cylindrical
/// closed form; at `a = 0` they take their limits `A = b²`, `B = 1`, `n = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicParams {
    pub a: f64,
    pub b: f64,
    pub p_norm: f64,
    pub omega: f64,
    pub modulus: Modulus,
    #[serde(rename = "A")]
    pub a_coef: f64,
    #[serde(rename = "B")]
    pub b_coef: f64,
    pub n: f64,
    /// `1 − n = B²`, kept separately to avoid cancellation near `n = 1`.
    pub one_minus_n: f64,
    /// Period of κ², `2K(k)/ω`; `None` for the soliton/line point (1, 0).
    pub period_t: Option<f64>,
}

impl GeodesicParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::domain("parameters must be finite"));
        }
        if a < 0.0 {
            return Err(Error::domain(format!(
                "a must be non-negative (reflect b instead), got {a}"
            )));
        }
        let p_sq = a * a + b * b;
        let p_norm = p_sq.sqrt();
        let denom = (a + 1.0) * (a + 1.0) + b * b;
        let omega = 0.5 * denom.sqrt();
        let m = 4.0 * a / denom;
        let mc = ((a - 1.0) * (a - 1.0) + b * b) / denom;
        let modulus = Modulus::from_parameter_pair(m.min(1.0), mc.max(0.0))?;

        let (a_coef, b_coef, n) = if p_sq > 0.0 {
            let a_coef = (p_sq + a) * (p_sq + a) / p_sq;
            let b_coef = (p_sq - a) / (p_sq + a);
            (a_coef, b_coef, 4.0 * a / a_coef)
        } else {
            (0.0, 1.0, 0.0)
        };
        let period_t = if modulus.is_one() {
            None
        } else {
            Some(2.0 * complete_k(modulus)? / omega)
        };
        Ok(GeodesicParams {
            a,
            b,
            p_norm,
            omega,
            modulus,
            a_coef,
            b_coef,
            n,
            one_minus_n: b_coef * b_coef,
            period_t,
        })
    }

    /// Recovers (a, b) from a phase state: `b = p·(v × x′)`, `a² = |p|² − b²`.
    pub fn from_state(state: &PhaseState) -> Result<Self> {
        let b = state.b();
        let a_sq = state.p.norm_squared() - b * b;
        Self::new(a_sq.max(0.0).sqrt(), b)
    }

    /// Period of κ²; fails on the soliton/line point.
    pub fn period(&self) -> Result<f64> {
        self.period_t
            .ok_or_else(|| Error::Soliton("K(1) = ∞ at (a, b) = (1, 0)".into()))
    }

    pub fn is_circle(&self) -> bool {
        self.a == 0.0
    }

    pub fn is_soliton(&self) -> bool {
        self.modulus.is_one()
    }

    pub fn is_planar(&self) -> bool {
        self.b == 0.0
    }

    /// `a² + b² = a`, where `n = 1` and the Π-form of θ degenerates.
    pub fn near_singular_characteristic(&self, guard: f64) -> bool {
        self.one_minus_n < guard
    }
}
