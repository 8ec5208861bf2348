//! Finds how many periods it takes before a reorient–ride–reorient path
//! beats the geodesic between the same placements.

use bicycle_geodesics::dynamics::{
    apex_initial_state, integrate, shortcut_bound, IntegrationOptions,
};
use bicycle_geodesics::GeodesicParams;

fn main() -> bicycle_geodesics::Result<()> {
    for (a, b) in [(0.5, 1.0), (1.5, 0.5), (0.3, 2.0)] {
        let g = GeodesicParams::new(a, b)?;
        let path = integrate(
            &apex_initial_state(a, b)?,
            12.0 * g.period()?,
            &IntegrationOptions::tight().with_dt_out(0.05),
        )?;
        let found = (1..=12)
            .map(|n| shortcut_bound(&path, n))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .find(|s| s.is_shorter());
        match found {
            Some(s) => println!(
                "({a}, {b}): not minimizing after n = {} periods ({:.4} > {:.4})",
                s.n_periods, s.geodesic_len, s.shortcut_len
            ),
            None => println!("({a}, {b}): no witness within 12 periods"),
        }
    }
    Ok(())
}
