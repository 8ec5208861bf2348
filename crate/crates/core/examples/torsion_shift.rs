//! Rescaling by `a` and shifting the torsion relates `(a, b)` to `(1/a, ±b/a)`.

use bicycle_geodesics::transforms::torsion_shift_rescale;
use bicycle_geodesics::GeodesicParams;

fn main() -> bicycle_geodesics::Result<()> {
    for (a, b) in [(0.5, 1.0), (1.5, 0.5), (2.0, 2.0)] {
        let s = torsion_shift_rescale(&GeodesicParams::new(a, b)?)?;
        println!(
            "({a}, {b}) -> ({:.4}, {:+.4}): κ {:.1e}  τ {:.1e}  mirrored τ {:.1e}",
            s.params.a, s.params.b, s.kappa_residual, s.tau_residual, s.mirrored_tau_residual
        );
    }
    Ok(())
}
