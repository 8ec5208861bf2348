#![allow(dead_code)]

pub mod oracle;

/// Prints one verdict line and returns whether `value <= tol`.
pub fn verdict(id: u32, name: &str, value: f64, tol: f64) -> bool {
    let pass = value <= tol;
    println!(
        "criterion {id:>2} {}: {name}: {value:.3e} (tol {tol:.0e})",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}
