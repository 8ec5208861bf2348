//! Closed-form monodromy over a parameter grid, computed in parallel.

use bicycle_geodesics::closedform::monodromy_increments;
use bicycle_geodesics::rigid::reduce_angle;
use bicycle_geodesics::GeodesicParams;
use rayon::prelude::*;

fn main() {
    let grid: Vec<(f64, f64)> = (1..=8)
        .flat_map(|i| (0..=4).map(move |j| (0.25 * i as f64, 0.5 * j as f64)))
        .filter(|&(a, b)| !(a == 1.0 && b == 0.0) && (a * a + b * b - a).abs() > 1e-6)
        .collect();
    let rows: Vec<_> = grid
        .par_iter()
        .map(|&(a, b)| GeodesicParams::new(a, b).and_then(|g| monodromy_increments(&g)))
        .collect();
    println!("a,b,period,dtheta,dz");
    for (&(a, b), row) in grid.iter().zip(rows) {
        match row {
            Ok(m) => println!(
                "{a},{b},{:.10},{:.10},{:.10}",
                m.period,
                reduce_angle(m.delta_theta).0,
                m.delta_z
            ),
            Err(e) => eprintln!("({a}, {b}): {e}"),
        }
    }
}
