//! Connects two frame placements by geodesics.

use bicycle_geodesics::dynamics::{apex_initial_state, integrate_endpoint, IntegrationOptions};
use bicycle_geodesics::shooting::{shoot, FramePlacement, ShootingOptions};

fn main() -> bicycle_geodesics::Result<()> {
    let s0 = apex_initial_state(0.5, 1.0)?;
    let end = integrate_endpoint(&s0, 1.5, &IntegrationOptions::tight())?;
    let from = FramePlacement::of_state(&s0);
    let to = FramePlacement::of_state(&end);
    println!(
        "target generated with p = {:?}, duration 1.5",
        s0.p.as_slice()
    );

    for sol in shoot(&from, &to, &ShootingOptions::default())? {
        println!(
            "duration {:.9}  p = ({:+.6}, {:+.6}, {:+.6})  residual {:.1e}  after {} iterations",
            sol.duration, sol.p.x, sol.p.y, sol.p.z, sol.residual, sol.iterations
        );
    }
    Ok(())
}
