//! Phase space of the bicycle geodesic equations and their numerical
//! integration.

mod integrator;
mod invariants;
mod path;
mod shortcut;
mod state;

pub use integrator::{integrate, integrate_endpoint, IntegrationOptions};
pub use invariants::{invariant_report, InvariantReport};
pub use path::{IntegrationStats, SampledPath};
pub use shortcut::{shortcut_bound, ShortcutBound};
pub use state::{
    apex_initial_state, canonical_initial_state, hamiltonian_rhs, magnetic_data, MagneticData,
    PhaseRate, PhaseState, Vec3,
};
