//! Integrates a geodesic and reports the conserved quantities.

use bicycle_geodesics::dynamics::{
    apex_initial_state, integrate, invariant_report, IntegrationOptions,
};
use bicycle_geodesics::GeodesicParams;

fn main() -> bicycle_geodesics::Result<()> {
    let g = GeodesicParams::new(0.5, 1.0)?;
    let path = integrate(
        &apex_initial_state(g.a, g.b)?,
        4.0 * g.period()?,
        &IntegrationOptions::tight().with_dt_out(0.05),
    )?;
    let report = invariant_report(&path)?;
    println!("period T = {:.12}", g.period()?);
    println!(
        "{} samples, {} accepted steps",
        path.len(),
        path.stats().accepted
    );
    println!("worst invariant drift over 4T: {:.3e}", report.max_drift());
    for s in path.samples().iter().step_by(40) {
        println!(
            "t = {:7.3}  x = ({:+.6}, {:+.6}, {:+.6})",
            s.t, s.x.x, s.x.y, s.x.z
        );
    }
    Ok(())
}
