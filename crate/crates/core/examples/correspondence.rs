//! Flipping the bike about its back wheel gives a second geodesic. The
//! half monodromy `I` squares to the full one.

use bicycle_geodesics::dynamics::{apex_initial_state, integrate, IntegrationOptions};
use bicycle_geodesics::transforms::{conjecture_check, half_monodromy};
use bicycle_geodesics::GeodesicParams;

fn main() -> bicycle_geodesics::Result<()> {
    let g = GeodesicParams::new(0.5, 1.0)?;
    let path = integrate(
        &apex_initial_state(g.a, g.b)?,
        2.05 * g.period()?,
        &IntegrationOptions::tight().with_dt_out(0.01),
    )?;
    let flipped = path.flipped();
    let shared_back = path
        .back_track()
        .zip(flipped.back_track())
        .map(|(y, y2)| (y - y2).norm())
        .fold(0.0, f64::max);
    println!("back tracks coincide to {shared_back:.1e}");

    let hm = half_monodromy(&path, &g)?;
    println!(
        "I: angle {:.9}, dz {:+.9}",
        hm.half.screw.delta_theta, hm.half.screw.delta_z
    );
    println!(
        "M: angle {:.9}, dz {:+.9}",
        hm.full.screw.delta_theta, hm.full.screw.delta_z
    );
    println!("|I² − M| = {:.2e}", hm.square_residual);

    let c = conjecture_check(&path, &g)?;
    println!(
        "rotation of I {:.9} vs predicted {:.9}: {}",
        c.angle_found,
        c.angle_predicted,
        if c.matches { "agrees" } else { "differs" }
    );
    Ok(())
}
