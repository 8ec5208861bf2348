//! Screw monodromy from the elliptic formulas and from a fitted run.

use bicycle_geodesics::closedform::monodromy_increments;
use bicycle_geodesics::dynamics::{apex_initial_state, integrate, IntegrationOptions};
use bicycle_geodesics::rigid::reduce_angle;
use bicycle_geodesics::transforms::extract_monodromy;
use bicycle_geodesics::GeodesicParams;

fn main() -> bicycle_geodesics::Result<()> {
    for (a, b) in [(0.5, 1.0), (1.5, 0.5), (0.7, 0.0), (2.0, 2.0)] {
        let g = GeodesicParams::new(a, b)?;
        let closed = monodromy_increments(&g)?;
        let path = integrate(
            &apex_initial_state(a, b)?,
            2.05 * closed.period,
            &IntegrationOptions::tight().with_dt_out(0.01),
        )?;
        let fit = extract_monodromy(&path, &g)?;
        println!(
            "(a, b) = ({a}, {b}): T = {:.6}  dtheta = {:.9} / {:.9}  dz = {:+.9} / {:+.9}  rms {:.1e}",
            closed.period,
            reduce_angle(closed.delta_theta).0,
            fit.screw.delta_theta,
            closed.delta_z,
            fit.screw.delta_z,
            fit.rms
        );
    }
    Ok(())
}
