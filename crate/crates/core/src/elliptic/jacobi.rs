//! Jacobi elliptic functions by descending Landen transformation.

use super::Modulus;

const MAX_LANDEN: usize = 32;

/// Values of sn, cn, dn at a single argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// sn(u, k), cn(u, k), dn(u, k).
///
/// The AGM sequence a₀ = 1, b₀ = k′, c₀ = k is run until cₙ vanishes, then
/// the amplitude is recovered by the backward recurrence
/// φₙ₋₁ = (φₙ + asin((cₙ/aₙ) sin φₙ)) / 2 starting from φ_N = 2^N a_N u,
/// and dn² = k′² + k² cn².
/// k = 0 and k = 1 are closed-form branches.
pub fn jacobi_sn_cn_dn(u: f64, modulus: Modulus) -> JacobiTriple {
    let m = modulus.m();
    if m == 0.0 {
        let (s, c) = u.sin_cos();
        return JacobiTriple {
            sn: s,
            cn: c,
            dn: 1.0,
        };
    }
    if m == 1.0 {
        let sech = 1.0 / u.cosh();
        return JacobiTriple {
            sn: u.tanh(),
            cn: sech,
            dn: sech,
        };
    }

    let mut a = [0.0; MAX_LANDEN + 1];
    let mut c = [0.0; MAX_LANDEN + 1];
    a[0] = 1.0;
    c[0] = modulus.k();
    let mut b = modulus.mc().sqrt();
    let mut n = 0;
    while n < MAX_LANDEN && c[n].abs() > f64::EPSILON * a[n] {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        n += 1;
    }

    let mut phi = (n as f64).exp2() * a[n] * u;
    for j in (1..=n).rev() {
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    let dn = (modulus.mc() + m * cn * cn).sqrt();
    JacobiTriple { sn, cn, dn }
}
