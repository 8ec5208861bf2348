//! Elliptic integrals and Jacobi elliptic functions.
//!
//! Complete and incomplete integrals of the first, second and third kind are
//! reduced to Carlson's symmetric forms. The incomplete integrals take the
//! Jacobi argument `x` (not the Legendre amplitude):
//!
//! ```text
//! E(x, k) = x − k² ∫₀ˣ sn²(s, k) ds
//! Π(x, n, k) = ∫₀ˣ ds / (1 − n sn²(s, k))
//! ```
//!
//! so that `E(K, k) = E(k)` and `Π(K, n, k) = Π(n, k)`.

mod carlson;
mod jacobi;

pub use carlson::{carlson_rc, carlson_rd, carlson_rf, carlson_rj};
pub use jacobi::{jacobi_sn_cn_dn, JacobiTriple};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Elliptic modulus `k ∈ [0, 1]` together with its parameter `m = k²` and
/// complementary parameter `1 − m`, all kept to full precision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Modulus {
    k: f64,
    m: f64,
    mc: f64,
}

impl Modulus {
    /// Builds a modulus from `k`.
    pub fn new(k: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) {
            return Err(Error::domain(format!(
                "modulus must lie in [0, 1], got {k}"
            )));
        }
        Ok(Modulus {
            k,
            m: k * k,
            mc: (1.0 - k) * (1.0 + k),
        })
    }

    /// Builds a modulus from the parameter `m = k²`.
    pub fn from_parameter(m: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&m) {
            return Err(Error::domain(format!(
                "parameter must lie in [0, 1], got {m}"
            )));
        }
        Ok(Modulus {
            k: m.sqrt(),
            m,
            mc: 1.0 - m,
        })
    }

    /// Builds a modulus from `m` and an independently computed `1 − m`,
    /// avoiding cancellation when `m` is close to one.
    pub fn from_parameter_pair(m: f64, mc: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&m) || !(0.0..=1.0).contains(&mc) || (m + mc - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "inconsistent parameter pair m = {m}, 1 - m = {mc}"
            )));
        }
        Ok(Modulus { k: m.sqrt(), m, mc })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    /// Complementary parameter `k′² = 1 − k²`.
    pub fn mc(&self) -> f64 {
        self.mc
    }

    /// The complementary modulus `k′`.
    pub fn complement(&self) -> Modulus {
        Modulus {
            k: self.mc.sqrt(),
            m: self.mc,
            mc: self.m,
        }
    }

    pub fn is_one(&self) -> bool {
        self.mc == 0.0
    }
}

/// Which quantity an [`EllipticEval`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EllipticKind {
    K,
    EComplete,
    PiComplete,
    EIncomplete,
    PiIncomplete,
    Sn,
    Cn,
    Dn,
}

/// A tagged evaluation result, used where values are reported alongside the
/// modulus they were computed for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticEval {
    pub value: f64,
    pub modulus: Modulus,
    pub kind: EllipticKind,
}

impl EllipticEval {
    /// Evaluates `kind` at argument `x` (ignored for complete integrals) and
    /// characteristic `n` (only used by the Π variants).
    pub fn evaluate(kind: EllipticKind, modulus: Modulus, x: f64, n: f64) -> Result<Self> {
        let value = match kind {
            EllipticKind::K => complete_k(modulus)?,
            EllipticKind::EComplete => complete_e(modulus),
            EllipticKind::PiComplete => complete_pi(n, modulus)?,
            EllipticKind::EIncomplete => incomplete_e(x, modulus)?,
            EllipticKind::PiIncomplete => incomplete_pi(x, n, modulus)?,
            EllipticKind::Sn => jacobi_sn_cn_dn(x, modulus).sn,
            EllipticKind::Cn => jacobi_sn_cn_dn(x, modulus).cn,
            EllipticKind::Dn => jacobi_sn_cn_dn(x, modulus).dn,
        };
        Ok(EllipticEval {
            value,
            modulus,
            kind,
        })
    }
}

/// Complete integral of the first kind, `K(k) = RF(0, 1 − k², 1)`.
pub fn complete_k(modulus: Modulus) -> Result<f64> {
    if modulus.is_one() {
        return Err(Error::Divergence("K(1) = ∞".into()));
    }
    carlson_rf(0.0, modulus.mc(), 1.0)
}

/// Complete integral of the second kind, `E(k)`; `E(1) = 1`.
pub fn complete_e(modulus: Modulus) -> f64 {
    if modulus.is_one() {
        return 1.0;
    }
    if modulus.m() == 0.0 {
        return std::f64::consts::FRAC_PI_2;
    }
    let mc = modulus.mc();
    // Both calls have exactly one zero argument and positive z: infallible.
    let rf = carlson_rf(0.0, mc, 1.0).expect("RF(0, k'^2, 1) with k < 1");
    let rd = carlson_rd(0.0, mc, 1.0).expect("RD(0, k'^2, 1) with k < 1");
    rf - modulus.m() / 3.0 * rd
}

fn check_characteristic(n: f64) -> Result<()> {
    if !(n < 1.0) || !n.is_finite() {
        return Err(Error::domain(format!(
            "characteristic must satisfy n < 1 (circular case), got {n}"
        )));
    }
    Ok(())
}

/// Complete integral of the third kind
/// `Π(n, k) = ∫₀^{π/2} dθ / ((1 − n sin²θ) √(1 − k² sin²θ))`, for `n < 1`.
pub fn complete_pi(n: f64, modulus: Modulus) -> Result<f64> {
    check_characteristic(n)?;
    let kk = complete_k(modulus)?;
    if n == 0.0 {
        return Ok(kk);
    }
    Ok(kk + n / 3.0 * carlson_rj(0.0, modulus.mc(), 1.0, 1.0 - n)?)
}

/// Legendre-form integrals on an amplitude in [−π/2, π/2], given sin φ,
/// cos φ ≥ 0 and Δ² = 1 − m sin²φ.
struct Amplitude {
    s: f64,
    c: f64,
    delta_sq: f64,
}

impl Amplitude {
    fn from_reduced(x: f64, modulus: Modulus) -> Self {
        let t = jacobi_sn_cn_dn(x, modulus);
        Amplitude {
            s: t.sn,
            c: t.cn.max(0.0),
            delta_sq: t.dn * t.dn,
        }
    }

    fn e(&self, m: f64) -> Result<f64> {
        if self.s == 0.0 {
            return Ok(0.0);
        }
        let c2 = self.c * self.c;
        let rf = carlson_rf(c2, self.delta_sq, 1.0)?;
        let rd = carlson_rd(c2, self.delta_sq, 1.0)?;
        Ok(self.s * rf - m / 3.0 * self.s.powi(3) * rd)
    }

    fn pi(&self, n: f64) -> Result<f64> {
        if self.s == 0.0 {
            return Ok(0.0);
        }
        let c2 = self.c * self.c;
        let rf = carlson_rf(c2, self.delta_sq, 1.0)?;
        if n == 0.0 {
            return Ok(self.s * rf);
        }
        let s2 = self.s * self.s;
        let rj = carlson_rj(c2, self.delta_sq, 1.0, 1.0 - n * s2)?;
        Ok(self.s * rf + n / 3.0 * s2 * self.s * rj)
    }
}

/// Splits `x = 2jK + r` with `r ∈ [−K, K]`.
fn reduce_half_period(x: f64, quarter: f64) -> (f64, f64) {
    let j = (x / (2.0 * quarter)).round();
    (j, x - 2.0 * j * quarter)
}

// Beyond this argument tanh(x) = 1 and sech²(x) < 1e-34 in binary64.
const K1_SATURATION: f64 = 40.0;

/// Incomplete integral of the second kind in Jacobi form,
/// `E(x, k) = x − k² ∫₀ˣ sn²`; `E(x + 2K, k) = E(x, k) + 2E(k)`.
pub fn incomplete_e(x: f64, modulus: Modulus) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("argument must be finite, got {x}")));
    }
    if modulus.m() == 0.0 {
        return Ok(x);
    }
    if modulus.is_one() {
        return Ok(x.tanh());
    }
    let quarter = complete_k(modulus)?;
    let (j, r) = reduce_half_period(x, quarter);
    let partial = Amplitude::from_reduced(r, modulus).e(modulus.m())?;
    Ok(2.0 * j * complete_e(modulus) + partial)
}

/// Incomplete integral of the third kind in Jacobi form,
/// `Π(x, n, k) = ∫₀ˣ ds / (1 − n sn²(s, k))`, for `n < 1`.
pub fn incomplete_pi(x: f64, n: f64, modulus: Modulus) -> Result<f64> {
    check_characteristic(n)?;
    if !x.is_finite() {
        return Err(Error::domain(format!("argument must be finite, got {x}")));
    }
    if n == 0.0 {
        return Ok(x);
    }
    if modulus.is_one() {
        // sin φ = tanh x, cos φ = sech x along the Gudermannian amplitude.
        let amp = |x: f64| Amplitude {
            s: x.tanh(),
            c: 1.0 / x.cosh(),
            delta_sq: (1.0 / x.cosh()).powi(2),
        };
        if x.abs() <= K1_SATURATION {
            return amp(x).pi(n);
        }
        let edge = K1_SATURATION.copysign(x);
        return Ok(amp(edge).pi(n)? + (x - edge) / (1.0 - n));
    }
    let quarter = complete_k(modulus)?;
    let (j, r) = reduce_half_period(x, quarter);
    let partial = Amplitude::from_reduced(r, modulus).pi(n)?;
    let full = if j == 0.0 {
        0.0
    } else {
        2.0 * j * complete_pi(n, modulus)?
    };
    Ok(full + partial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn agm_k(m: f64) -> f64 {
        let (mut a, mut b) = (1.0f64, (1.0 - m).sqrt());
        for _ in 0..40 {
            let next = 0.5 * (a + b);
            b = (a * b).sqrt();
            a = next;
        }
        PI / (2.0 * a)
    }

    #[test]
    fn modulus_validation() {
        assert!(Modulus::new(-0.1).is_err());
        assert!(Modulus::new(1.1).is_err());
        let md = Modulus::new(0.6).unwrap();
        assert!((md.m() - 0.36).abs() < 1e-15);
        assert!((md.mc() - 0.64).abs() < 1e-15);
        assert!(Modulus::from_parameter_pair(0.3, 0.5).is_err());
    }

    #[test]
    fn complete_k_values() {
        assert!((complete_k(Modulus::new(0.0).unwrap()).unwrap() - FRAC_PI_2).abs() < 1e-15);
        let half = complete_k(Modulus::from_parameter(0.5).unwrap()).unwrap();
        assert!((half - agm_k(0.5)).abs() < 1e-14 * half);
        assert!((half - 1.854_074_677_301_372).abs() < 1e-14);
        assert!(matches!(
            complete_k(Modulus::new(1.0).unwrap()),
            Err(Error::Divergence(_))
        ));
    }

    #[test]
    fn complete_e_endpoints() {
        assert_eq!(complete_e(Modulus::new(0.0).unwrap()), FRAC_PI_2);
        assert_eq!(complete_e(Modulus::new(1.0).unwrap()), 1.0);
    }

    #[test]
    fn complete_pi_reduces_to_k() {
        let md = Modulus::from_parameter(0.7).unwrap();
        assert_eq!(complete_pi(0.0, md).unwrap(), complete_k(md).unwrap());
        assert!((complete_pi(0.0, Modulus::new(0.0).unwrap()).unwrap() - FRAC_PI_2).abs() < 1e-15);
        // Π(n, 0) = π / (2 √(1 − n))
        let n = 0.36;
        let expected = PI / (2.0 * (1.0f64 - n).sqrt());
        assert!((complete_pi(n, Modulus::new(0.0).unwrap()).unwrap() - expected).abs() < 1e-14);
        assert!(matches!(complete_pi(1.0, md), Err(Error::Domain(_))));
    }

    #[test]
    fn incomplete_at_quarter_period() {
        let md = Modulus::from_parameter(0.6).unwrap();
        let kk = complete_k(md).unwrap();
        assert_eq!(incomplete_e(0.0, md).unwrap(), 0.0);
        assert!((incomplete_e(kk, md).unwrap() - complete_e(md)).abs() < 1e-14);
        let n = 0.4;
        let pi_k = incomplete_pi(kk, n, md).unwrap();
        assert!((pi_k - complete_pi(n, md).unwrap()).abs() < 1e-13);
        assert!((incomplete_pi(1.3, 0.0, Modulus::new(0.0).unwrap()).unwrap() - 1.3).abs() < 1e-16);
        assert_eq!(incomplete_pi(0.0, n, md).unwrap(), 0.0);
    }

    #[test]
    fn incomplete_e_two_quarter_periods() {
        let md = Modulus::from_parameter(0.5).unwrap();
        let kk = complete_k(md).unwrap();
        let e2k = incomplete_e(2.0 * kk, md).unwrap();
        assert!((e2k - 2.0 * complete_e(md)).abs() < 1e-14);
    }

    #[test]
    fn incomplete_at_unit_modulus() {
        let one = Modulus::new(1.0).unwrap();
        assert!((incomplete_e(0.8, one).unwrap() - 0.8f64.tanh()).abs() < 1e-16);
        // ∫₀ˣ ds / (1 − n tanh² s) grows like x / (1 − n)
        let n = 0.5;
        let far = incomplete_pi(60.0, n, one).unwrap() - incomplete_pi(50.0, n, one).unwrap();
        assert!((far - 10.0 / (1.0 - n)).abs() < 1e-12);
    }

    #[test]
    fn legendre_relation_spot() {
        let md = Modulus::from_parameter(0.3).unwrap();
        let cm = md.complement();
        let (k, kp) = (complete_k(md).unwrap(), complete_k(cm).unwrap());
        let (e, ep) = (complete_e(md), complete_e(cm));
        assert!((e * kp + ep * k - k * kp - FRAC_PI_2).abs() < 1e-14);
    }
}
