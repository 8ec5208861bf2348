use super::path::SampledPath;
use super::state::magnetic_data;
use crate::error::{Error, Result};

/// Largest deviations of the constants of motion and constraints over a path.
///
/// `drift_*` fields compare each sample with the first one; `drift_vnorm` and
/// `drift_rv` are absolute constraint residuals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantReport {
    pub drift_h: f64,
    pub drift_p: f64,
    pub drift_b: f64,
    pub drift_vnorm: f64,
    pub drift_rv: f64,
    pub b: f64,
    pub a: f64,
    /// max |x″ − x′ × K(x)| with the Killing field fixed at the first sample.
    pub killing_residual: f64,
    pub pre_projection_vnorm: f64,
    pub pre_projection_rv: f64,
}

impl InvariantReport {
    /// Largest of the conserved-quantity and constraint drifts.
    pub fn max_drift(&self) -> f64 {
        self.drift_h
            .max(self.drift_p)
            .max(self.drift_b)
            .max(self.drift_vnorm)
            .max(self.drift_rv)
    }
}

pub fn invariant_report(path: &SampledPath) -> Result<InvariantReport> {
    let s0 = path.first().ok_or_else(|| Error::domain("empty path"))?;
    let h0 = s0.hamiltonian();
    let b0 = s0.b();
    let field = magnetic_data(s0).ok();
    let mut rep = InvariantReport {
        drift_h: 0.0,
        drift_p: 0.0,
        drift_b: 0.0,
        drift_vnorm: 0.0,
        drift_rv: 0.0,
        b: b0,
        a: (s0.p.norm_squared() - b0 * b0).max(0.0).sqrt(),
        killing_residual: 0.0,
        pre_projection_vnorm: path.stats().max_pre_projection_vnorm,
        pre_projection_rv: path.stats().max_pre_projection_rv,
    };
    for s in path.samples() {
        rep.drift_h = rep.drift_h.max((s.hamiltonian() - h0).abs());
        rep.drift_p = rep.drift_p.max((s.p - s0.p).amax());
        rep.drift_b = rep.drift_b.max((s.b() - b0).abs());
        rep.drift_vnorm = rep.drift_vnorm.max((s.v.norm() - 1.0).abs());
        rep.drift_rv = rep.drift_rv.max(s.r.dot(&s.v).abs());
        if let Some(m) = &field {
            let from_field = s.velocity().cross(&m.field_at(&s.x));
            rep.killing_residual = rep
                .killing_residual
                .max((s.acceleration() - from_field).norm());
        }
    }
    Ok(rep)
}
