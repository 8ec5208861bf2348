//! Proper rigid motions of R³ in matrix and screw form, and least-squares
//! registration of point sets.

use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix3, Rotation3, Unit};

use crate::dynamics::Vec3;
use crate::error::{Error, Result};

/// `q ↦ R q + t` with `R` a rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion {
    pub rotation: Matrix3<f64>,
    pub translation: Vec3,
}

impl RigidMotion {
    pub fn identity() -> Self {
        RigidMotion {
            rotation: Matrix3::identity(),
            translation: Vec3::zeros(),
        }
    }

    pub fn apply(&self, q: &Vec3) -> Vec3 {
        self.rotation * q + self.translation
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RigidMotion) -> RigidMotion {
        RigidMotion {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }

    /// `max |RᵀR − I|` and `|det R − 1|`.
    pub fn orthogonality_residual(&self) -> (f64, f64) {
        let r = &self.rotation;
        (
            (r.transpose() * r - Matrix3::identity()).amax(),
            (r.determinant() - 1.0).abs(),
        )
    }

    /// Screw decomposition. The axis is oriented so that it points along
    /// `orient` when given; the angle is measured right-handedly about it.
    pub fn to_screw(&self, orient: Option<&Vec3>) -> ScrewMotion {
        let r = &self.rotation;
        let cos = ((r.trace() - 1.0) / 2.0).clamp(-1.0, 1.0);
        let vee = Vec3::new(
            r[(2, 1)] - r[(1, 2)],
            r[(0, 2)] - r[(2, 0)],
            r[(1, 0)] - r[(0, 1)],
        );
        let sin_abs = (1.0 - cos * cos).max(0.0).sqrt();

        let mut axis = if vee.norm() > 1e-6 && sin_abs > 1e-3 {
            vee / vee.norm()
        } else if cos < 0.0 {
            // Near a half turn: R + Rᵀ − (tr R − 1) I = 2(1 − cos θ) u uᵀ.
            let s = r + r.transpose() - (r.trace() - 1.0) * Matrix3::identity();
            let col = (0..3)
                .max_by(|&i, &j| s[(i, i)].total_cmp(&s[(j, j)]))
                .unwrap_or(0);
            let c = s.column(col).into_owned();
            let mut u = c / c.norm();
            if u.dot(&vee) < 0.0 {
                u = -u;
            }
            u
        } else if vee.norm() > 1e-9 {
            vee / vee.norm()
        } else if self.translation.norm() > 0.0 {
            self.translation / self.translation.norm()
        } else {
            orient.map(|o| o / o.norm()).unwrap_or_else(Vec3::z)
        };
        if let Some(o) = orient {
            if axis.dot(o) < 0.0 {
                axis = -axis;
            }
        }
        let angle = (axis.dot(&vee) / 2.0).atan2(cos);

        let delta_z = axis.dot(&self.translation);
        let t_perp = self.translation - delta_z * axis;
        let axis_point = (Matrix3::identity() - r)
            .pseudo_inverse(1e-9)
            .map(|pinv| pinv * t_perp)
            .unwrap_or_else(|_| Vec3::zeros());
        let axis_point = axis_point - axis.dot(&axis_point) * axis;
        ScrewMotion::new(axis_point, axis, angle, delta_z)
    }
}

/// Rotation by `delta_theta` about the line through `axis_point` along
/// `axis_dir`, followed by a translation `delta_z` along that line.
///
/// `delta_theta` is kept in `[0, 2π)`; `winding` counts the full turns that
/// were removed when the angle came from an unwound value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScrewMotion {
    pub axis_point: Vec3,
    pub axis_dir: Vec3,
    pub delta_theta: f64,
    pub winding: i64,
    pub delta_z: f64,
}

/// Reduces an angle to `[0, 2π)` and returns the number of full turns removed.
pub fn reduce_angle(theta: f64) -> (f64, i64) {
    let turns = (theta / TAU).floor();
    let mut r = theta - turns * TAU;
    let mut w = turns as i64;
    if r >= TAU {
        r -= TAU;
        w += 1;
    }
    (r, w)
}

/// Distance between two angles on the circle.
pub fn angle_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(TAU);
    d.min(TAU - d)
}

impl ScrewMotion {
    /// Builds a screw from an unwound angle.
    pub fn new(axis_point: Vec3, axis_dir: Vec3, theta: f64, delta_z: f64) -> Self {
        let (delta_theta, winding) = reduce_angle(theta);
        ScrewMotion {
            axis_point,
            axis_dir: axis_dir / axis_dir.norm(),
            delta_theta,
            winding,
            delta_z,
        }
    }

    /// The unwound angle `delta_theta + 2π winding`.
    pub fn unwound_angle(&self) -> f64 {
        self.delta_theta + TAU * self.winding as f64
    }

    /// Angle reported in `(−π, π]`.
    pub fn signed_angle(&self) -> f64 {
        if self.delta_theta > PI {
            self.delta_theta - TAU
        } else {
            self.delta_theta
        }
    }

    pub fn to_rigid(&self) -> RigidMotion {
        let rot = Rotation3::from_axis_angle(&Unit::new_normalize(self.axis_dir), self.delta_theta)
            .into_inner();
        RigidMotion {
            rotation: rot,
            translation: self.axis_point - rot * self.axis_point + self.delta_z * self.axis_dir,
        }
    }

    pub fn apply(&self, q: &Vec3) -> Vec3 {
        self.to_rigid().apply(q)
    }

    /// The screw applied `n` times.
    pub fn power(&self, n: u32) -> ScrewMotion {
        ScrewMotion::new(
            self.axis_point,
            self.axis_dir,
            self.unwound_angle() * n as f64,
            self.delta_z * n as f64,
        )
    }
}

/// Best rigid motion (least squares) taking `src[i]` to `dst[i]`, and the
/// RMS residual of the fit.
pub fn procrustes(src: &[Vec3], dst: &[Vec3]) -> Result<(RigidMotion, f64)> {
    if src.len() != dst.len() || src.len() < 3 {
        return Err(Error::domain(
            "registration needs at least 3 matched points",
        ));
    }
    let n = src.len() as f64;
    let ca = src.iter().sum::<Vec3>() / n;
    let cb = dst.iter().sum::<Vec3>() / n;
    let mut h = Matrix3::zeros();
    for (a, b) in src.iter().zip(dst) {
        h += (a - ca) * (b - cb).transpose();
    }
    let svd = h.svd(true, true);
    let (u, vt) = match (svd.u, svd.v_t) {
        (Some(u), Some(vt)) => (u, vt),
        _ => {
            return Err(Error::Extraction(
                "SVD of the cross-covariance failed".into(),
            ))
        }
    };
    let v = vt.transpose();
    let d = (v * u.transpose()).determinant().signum();
    let fix = Matrix3::from_diagonal(&Vec3::new(1.0, 1.0, d));
    let rotation = v * fix * u.transpose();
    let motion = RigidMotion {
        rotation,
        translation: cb - rotation * ca,
    };
    let sq: f64 = src
        .iter()
        .zip(dst)
        .map(|(a, b)| (motion.apply(a) - b).norm_squared())
        .sum();
    Ok((motion, (sq / n).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cloud() -> Vec<Vec3> {
        (0..10)
            .map(|i| {
                let t = i as f64;
                Vec3::new(t.sin() * 2.0, (1.3 * t).cos(), 0.3 * t - 1.0)
            })
            .collect()
    }

    #[test]
    fn pure_translation_with_noisy_rotation() {
        let noise = nalgebra::Rotation3::from_axis_angle(&Vec3::z_axis(), 1e-13);
        let m = RigidMotion {
            rotation: *noise.matrix(),
            translation: Vec3::new(0.0, -2.8, 0.0),
        };
        let s = m.to_screw(Some(&Vec3::new(0.0, -1.0, 0.0)));
        assert!((s.axis_dir - Vec3::new(0.0, -1.0, 0.0)).norm() < 1e-12);
        assert!((s.delta_z - 2.8).abs() < 1e-12);
        assert!(angle_distance(s.delta_theta, 0.0) < 1e-12);
    }

    #[test]
    fn screw_round_trip() {
        let s = ScrewMotion::new(
            Vec3::new(1.0, -2.0, 0.0),
            Vec3::new(0.0, 0.6, 0.8),
            2.2,
            0.7,
        );
        let back = s.to_rigid().to_screw(Some(&Vec3::new(0.0, 0.6, 0.8)));
        assert!((back.axis_dir - s.axis_dir).norm() < 1e-12);
        assert!((back.delta_theta - 2.2).abs() < 1e-12);
        assert!((back.delta_z - 0.7).abs() < 1e-12);
        let q = Vec3::new(0.3, 0.1, 5.0);
        assert!((back.apply(&q) - s.apply(&q)).norm() < 1e-12);
        // the recovered point lies on the axis
        let off = back.axis_point - s.axis_point;
        assert!(off.cross(&s.axis_dir).norm() < 1e-12);
    }

    #[test]
    fn orientation_flips_the_angle() {
        let s = ScrewMotion::new(Vec3::zeros(), Vec3::z(), 1.0, 0.5);
        let back = s.to_rigid().to_screw(Some(&-Vec3::z()));
        assert!((back.axis_dir + Vec3::z()).norm() < 1e-15);
        assert!((back.signed_angle() + 1.0).abs() < 1e-12);
        assert!((back.delta_z + 0.5).abs() < 1e-15);
    }

    #[test]
    fn half_turn_uses_symmetric_part() {
        let axis = Vec3::new(1.0, 2.0, 2.0) / 3.0;
        let s = ScrewMotion::new(Vec3::new(0.0, 1.0, -1.0), axis, PI, 0.25);
        let back = s.to_rigid().to_screw(Some(&axis));
        assert!((back.axis_dir - axis).norm() < 1e-9);
        assert!(angle_distance(back.delta_theta, PI) < 1e-9);
        let q = Vec3::new(2.0, 0.0, 1.0);
        assert!((back.apply(&q) - s.apply(&q)).norm() < 1e-9);
    }

    #[test]
    fn composition_doubles() {
        let s = ScrewMotion::new(Vec3::new(0.5, 0.0, 0.0), Vec3::y(), 4.0, 0.3);
        let twice = s.power(2);
        assert!((twice.delta_z - 0.6).abs() < 1e-15);
        assert!(angle_distance(twice.delta_theta, 8.0) < 1e-12);
        let q = Vec3::new(1.0, 1.0, 1.0);
        let m = s.to_rigid();
        assert!((twice.apply(&q) - m.apply(&m.apply(&q))).norm() < 1e-12);
    }

    #[test]
    fn pure_translation() {
        let m = RigidMotion {
            rotation: Matrix3::identity(),
            translation: Vec3::new(0.0, 0.0, -2.0),
        };
        let s = m.to_screw(Some(&Vec3::z()));
        assert_eq!(s.delta_theta, 0.0);
        assert!((s.delta_z + 2.0).abs() < 1e-15);
    }

    #[test]
    fn procrustes_recovers_motion() {
        let truth = ScrewMotion::new(Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 0.0, 1.0), 0.9, 1.5)
            .to_rigid();
        let src = cloud();
        let dst: Vec<Vec3> = src.iter().map(|q| truth.apply(q)).collect();
        let (m, rms) = procrustes(&src, &dst).unwrap();
        assert!(rms < 1e-12);
        assert!((m.rotation - truth.rotation).amax() < 1e-12);
        let (orth, det) = m.orthogonality_residual();
        assert!(orth < 1e-12 && det < 1e-12);
        assert!(procrustes(&src[..2], &dst[..2]).is_err());
    }

    #[test]
    fn angle_reduction() {
        assert_eq!(reduce_angle(-0.5).1, -1);
        let (r, w) = reduce_angle(7.0);
        assert!((r - (7.0 - TAU)).abs() < 1e-15 && w == 1);
        assert!(angle_distance(0.1, TAU - 0.1) < 0.2 + 1e-15);
    }
}
