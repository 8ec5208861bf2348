use std::sync::Arc;

use super::integrator::DenseOutput;
use super::state::{PhaseState, Vec3};

/// Step statistics and the largest constraint residuals seen before projection.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct IntegrationStats {
    pub accepted: usize,
    pub rejected: usize,
    pub max_pre_projection_vnorm: f64,
    pub max_pre_projection_rv: f64,
}

/// Time-stamped phase states of one geodesic, with the continuous solution
/// kept alongside when the path came from [`integrate`](super::integrate).
#[derive(Debug, Clone)]
pub struct SampledPath {
    samples: Vec<PhaseState>,
    dense: Option<Arc<DenseOutput>>,
    flipped: bool,
    stats: IntegrationStats,
}

impl SampledPath {
    pub(crate) fn from_parts(
        samples: Vec<PhaseState>,
        dense: Option<Arc<DenseOutput>>,
        stats: IntegrationStats,
    ) -> Self {
        SampledPath {
            samples,
            dense,
            flipped: false,
            stats,
        }
    }

    /// A path made of the given samples only, without a continuous solution.
    pub fn from_samples(samples: Vec<PhaseState>) -> Self {
        Self::from_parts(samples, None, IntegrationStats::default())
    }

    pub fn samples(&self) -> &[PhaseState] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn stats(&self) -> &IntegrationStats {
        &self.stats
    }

    pub fn first(&self) -> Option<&PhaseState> {
        self.samples.first()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.t)
    }

    pub fn front_track(&self) -> impl Iterator<Item = Vec3> + '_ {
        self.samples.iter().map(|s| s.x)
    }

    /// Back track `y = x − v`.
    pub fn back_track(&self) -> impl Iterator<Item = Vec3> + '_ {
        self.samples.iter().map(|s| s.back())
    }

    /// Smallest and largest sample time.
    pub fn span(&self) -> Option<(f64, f64)> {
        let first = self.samples.first()?.t;
        let last = self.samples.last()?.t;
        Some((first.min(last), first.max(last)))
    }

    pub fn is_dense(&self) -> bool {
        self.dense.is_some()
    }

    /// State at an arbitrary time inside the span. Uses the continuous
    /// solution when present and otherwise only returns exact sample hits.
    pub fn state_at(&self, t: f64) -> Option<PhaseState> {
        let s = match &self.dense {
            Some(d) => d.state_at(t)?,
            None => *self.samples.iter().find(|s| s.t == t)?,
        };
        Some(if self.flipped && self.dense.is_some() {
            s.flipped()
        } else {
            s
        })
    }

    /// Pointwise image under the flip about the back wheel.
    pub fn flipped(&self) -> SampledPath {
        SampledPath {
            samples: self.samples.iter().map(PhaseState::flipped).collect(),
            dense: self.dense.clone(),
            flipped: !self.flipped,
            stats: self.stats,
        }
    }

    /// Copy with every sample passed through `f`; drops the continuous solution.
    pub fn map_samples(&self, f: impl FnMut(&PhaseState) -> PhaseState) -> SampledPath {
        SampledPath::from_parts(self.samples.iter().map(f).collect(), None, self.stats)
    }
}
