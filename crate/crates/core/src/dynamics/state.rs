use nalgebra::Vector3;

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

/// A point `(x, v, p, r)` of the constrained cotangent bundle, at arc length
/// `t` along the front track.
///
/// `x` is the front wheel, `v = x − y` the unit frame direction, `p` the
/// (constant) momentum conjugate to `x` and `r ⊥ v` the fiber momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseState {
    pub x: Vec3,
    pub v: Vec3,
    pub p: Vec3,
    pub r: Vec3,
    pub t: f64,
}

/// Time derivative of a [`PhaseState`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRate {
    pub x: Vec3,
    pub v: Vec3,
    pub p: Vec3,
    pub r: Vec3,
}

/// Right-hand side of the geodesic equations:
///
/// ```text
/// x′ = p + r
/// v′ = p + r − (v·p) v
/// p′ = 0
/// r′ = (v·p) r − [r·(r + p)] v
/// ```
pub fn hamiltonian_rhs(s: &PhaseState) -> PhaseRate {
    let vp = s.v.dot(&s.p);
    let xdot = s.p + s.r;
    PhaseRate {
        x: xdot,
        v: xdot - vp * s.v,
        p: Vec3::zeros(),
        r: vp * s.r - s.r.dot(&xdot) * s.v,
    }
}

impl PhaseState {
    /// Front-track velocity `x′ = p + r`.
    pub fn velocity(&self) -> Vec3 {
        self.p + self.r
    }

    /// Back wheel `y = x − v`.
    pub fn back(&self) -> Vec3 {
        self.x - self.v
    }

    /// Hamiltonian `H = ½|p + r|²`.
    pub fn hamiltonian(&self) -> f64 {
        0.5 * self.velocity().norm_squared()
    }

    /// The conserved triple product `b = p·(v × x′)`.
    pub fn b(&self) -> f64 {
        self.p.dot(&self.v.cross(&self.velocity()))
    }

    /// `K = r × v`, the magnetic field felt at the front wheel.
    pub fn magnetic_field(&self) -> Vec3 {
        self.r.cross(&self.v)
    }

    /// Front-track acceleration `x″ = x′ × K`.
    pub fn acceleration(&self) -> Vec3 {
        self.velocity().cross(&self.magnetic_field())
    }

    /// Normalizes `v` and removes the component of `r` along `v`.
    pub fn project(&mut self) {
        self.v /= self.v.norm();
        self.r -= self.r.dot(&self.v) * self.v;
    }

    /// Constraint residuals `(|v| − 1, r·v, |p + r| − 1)`.
    pub fn constraint_residuals(&self) -> (f64, f64, f64) {
        (
            self.v.norm() - 1.0,
            self.r.dot(&self.v),
            self.velocity().norm() - 1.0,
        )
    }

    /// Image under the flip `(x, v) ↦ (x − 2v, −v)` about the back wheel.
    /// `p` is kept and `r` is rebuilt from the flipped velocity.
    pub fn flipped(&self) -> PhaseState {
        let vp = self.v.dot(&self.p);
        PhaseState {
            x: self.x - 2.0 * self.v,
            v: -self.v,
            p: self.p,
            r: -2.0 * self.p - self.r + 2.0 * vp * self.v,
            t: self.t,
        }
    }

    /// Builds a state from a frame placement, an initial front velocity and a
    /// momentum. Requires `|v| = |x′| = 1` and `v·(x′ − p) = 0`.
    pub fn from_placement(x: Vec3, v: Vec3, velocity: Vec3, p: Vec3) -> Result<Self> {
        if ((v.norm() - 1.0).abs() > 1e-12) || ((velocity.norm() - 1.0).abs() > 1e-12) {
            return Err(Error::domain(
                "frame direction and front velocity must be unit vectors",
            ));
        }
        let r = velocity - p;
        if r.dot(&v).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "inadmissible momentum: v·(x′ − p) = {:e}",
                r.dot(&v)
            )));
        }
        Ok(PhaseState { x, v, p, r, t: 0.0 })
    }
}

/// The seed used to realize every (a, b): `v₀ = e₁`, `x′₀ = e₂`,
/// `p = (0, a, b)`, placed at the origin. This seed sits at a curvature
/// minimum, κ = |1 − a|.
pub fn canonical_initial_state(a: f64, b: f64) -> Result<PhaseState> {
    check_seed(a, b)?;
    Ok(PhaseState {
        x: Vec3::zeros(),
        v: Vec3::x(),
        p: Vec3::new(0.0, a, b),
        r: Vec3::new(0.0, 1.0 - a, -b),
        t: 0.0,
    })
}

/// Same frame as [`canonical_initial_state`] but with `p = (0, −a, b)`, which
/// places the seed at a curvature maximum κ = 1 + a. This is the phase the
/// elliptic closed forms use at `t = 0`.
pub fn apex_initial_state(a: f64, b: f64) -> Result<PhaseState> {
    check_seed(a, b)?;
    Ok(PhaseState {
        x: Vec3::zeros(),
        v: Vec3::x(),
        p: Vec3::new(0.0, -a, b),
        r: Vec3::new(0.0, 1.0 + a, -b),
        t: 0.0,
    })
}

fn check_seed(a: f64, b: f64) -> Result<()> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::domain("seed parameters must be finite"));
    }
    if a < 0.0 {
        return Err(Error::domain(format!(
            "a must be non-negative (use the reflection (a, b) -> (a, -b)), got {a}"
        )));
    }
    Ok(())
}

/// Killing-field description `K = (x − x₁) × p + δ p` of a front track.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagneticData {
    pub axis_point: Vec3,
    pub p: Vec3,
    pub delta: f64,
}

impl MagneticData {
    pub fn field_at(&self, x: &Vec3) -> Vec3 {
        (x - self.axis_point).cross(&self.p) + self.delta * self.p
    }

    pub fn axis_direction(&self) -> Vec3 {
        self.p / self.p.norm()
    }
}

/// `x₁ = y₀ + ((x′₀ × v₀) × p)/|p|²` and `δ = ((x′₀ × v₀)·p)/|p|² = −b/|p|²`.
pub fn magnetic_data(s0: &PhaseState) -> Result<MagneticData> {
    let p_sq = s0.p.norm_squared();
    if p_sq == 0.0 {
        return Err(Error::CircleBranch(
            "p = 0: unit circle with y(t) fixed at its center".into(),
        ));
    }
    let w = s0.velocity().cross(&s0.v);
    Ok(MagneticData {
        axis_point: s0.back() + w.cross(&s0.p) / p_sq,
        p: s0.p,
        delta: w.dot(&s0.p) / p_sq,
    })
}
