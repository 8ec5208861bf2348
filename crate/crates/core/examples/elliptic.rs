use bicycle_geodesics::elliptic::{
    carlson_rf, complete_e, complete_k, complete_pi, jacobi_sn_cn_dn, Modulus,
};

fn main() -> bicycle_geodesics::Result<()> {
    println!("{:>5} {:>18} {:>18} {:>18}", "m", "K", "E", "Π(0.3)");
    for i in 0..10 {
        let md = Modulus::from_parameter(i as f64 / 10.0)?;
        println!(
            "{:5.2} {:18.15} {:18.15} {:18.15}",
            md.m(),
            complete_k(md)?,
            complete_e(md),
            complete_pi(0.3, md)?
        );
    }
    let md = Modulus::from_parameter(0.8)?;
    for u in [0.0, 0.5, 1.0, complete_k(md)?] {
        let t = jacobi_sn_cn_dn(u, md);
        println!(
            "u = {u:.6}: sn {:+.12} cn {:+.12} dn {:+.12}",
            t.sn, t.cn, t.dn
        );
    }
    println!("RF(1, 2, 3) = {:.15}", carlson_rf(1.0, 2.0, 3.0)?);
    Ok(())
}
