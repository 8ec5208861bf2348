//! Bicycle geodesics in R³.
//!
//! A bike is a unit segment whose back end `y` only moves along the segment
//! direction `v = x − y`. Front tracks `x(t)` of length-critical bike paths
//! are integrated from their Hamiltonian equations ([`dynamics`]), compared
//! with the Jacobi elliptic closed forms ([`closedform`]), analyzed as
//! Kirchhoff rods ([`rodshape`]) and related by rigid symmetries
//! ([`transforms`]). [`shooting`] connects two frame placements.

pub mod cli;
pub mod closedform;
pub mod dynamics;
pub mod elliptic;
pub mod error;
pub mod params;
pub mod quadrature;
pub mod rigid;
pub mod rodshape;
pub mod shooting;
pub mod transforms;

pub use dynamics::{PhaseState, SampledPath, Vec3};
pub use error::{Error, Result};
pub use params::GeodesicParams;
