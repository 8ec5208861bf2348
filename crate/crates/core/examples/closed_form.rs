//! Closed-form track against the integrated one.

use bicycle_geodesics::closedform::{
    front_track_cartesian, kappa_sq_closed, tau_closed, AxisFrame,
};
use bicycle_geodesics::dynamics::{apex_initial_state, integrate, IntegrationOptions};
use bicycle_geodesics::GeodesicParams;

fn main() -> bicycle_geodesics::Result<()> {
    let g = GeodesicParams::new(1.5, 0.5)?;
    let s0 = apex_initial_state(g.a, g.b)?;
    let frame = AxisFrame::from_state(&s0)?;
    let path = integrate(
        &s0,
        2.0 * g.period()?,
        &IntegrationOptions::tight().with_dt_out(0.25),
    )?;

    println!(
        "{:>7} {:>12} {:>12} {:>12}",
        "t", "kappa^2", "tau", "|x - x_cf|"
    );
    for s in path.samples() {
        let x_cf = frame.to_world(&front_track_cartesian(s.t, &g)?);
        println!(
            "{:7.3} {:12.8} {:12.8} {:12.3e}",
            s.t,
            kappa_sq_closed(s.t, &g),
            tau_closed(s.t, &g),
            (s.x - x_cf).norm()
        );
    }
    Ok(())
}
