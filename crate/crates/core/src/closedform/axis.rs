use crate::dynamics::{magnetic_data, PhaseState, Vec3};
use crate::error::{Error, Result};

/// Orthonormal frame with `e₃ = p/|p|` along the Killing axis and origin at
/// the foot of the perpendicular from the start point `x₀`, `e₁` pointing
/// at `x₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisFrame {
    pub origin: Vec3,
    pub e1: Vec3,
    pub e2: Vec3,
    pub e3: Vec3,
}

impl AxisFrame {
    pub fn from_state(s0: &PhaseState) -> Result<Self> {
        let field = magnetic_data(s0)?;
        let e3 = field.axis_direction();
        let rel = s0.x - field.axis_point;
        let origin = field.axis_point + rel.dot(&e3) * e3;
        let radial = s0.x - origin;
        if radial.norm() < 1e-12 {
            return Err(Error::Degenerate("start point lies on the axis".into()));
        }
        let e1 = radial / radial.norm();
        Ok(AxisFrame {
            origin,
            e1,
            e2: e3.cross(&e1),
            e3,
        })
    }

    pub fn to_axis(&self, x: &Vec3) -> Vec3 {
        let q = x - self.origin;
        Vec3::new(q.dot(&self.e1), q.dot(&self.e2), q.dot(&self.e3))
    }

    pub fn to_world(&self, q: &Vec3) -> Vec3 {
        self.origin + self.to_world_direction(q)
    }

    /// Rotates a direction given in axis coordinates into the world.
    pub fn to_world_direction(&self, q: &Vec3) -> Vec3 {
        q.x * self.e1 + q.y * self.e2 + q.z * self.e3
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::apex_initial_state;

    #[test]
    fn apex_frame() {
        let s0 = apex_initial_state(0.5, 1.0).unwrap();
        let f = AxisFrame::from_state(&s0).unwrap();
        assert!((f.to_axis(&s0.x) - Vec3::new(1.4, 0.0, 0.0)).norm() < 1e-14);
        let q = Vec3::new(0.3, -2.0, 1.0);
        assert!((f.to_world(&f.to_axis(&q)) - q).norm() < 1e-14);
    }
}
