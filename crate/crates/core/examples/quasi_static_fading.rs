//! Quasi-static Rayleigh fading: outage versus the finite-blocklength error
//! approximation, which approaches outage as n grows.

use shortpacket::fading::{eps_quasistatic, eps_quasistatic_mc, outage_capacity_siso, outage_prob_siso};

fn main() -> shortpacket::Result<()> {
    let snr = 10.0;
    let rate = outage_capacity_siso(snr, 0.1)?;
    println!("outage capacity at eps = 0.1: {rate:.5} bit/cu");
    println!("outage probability at that rate: {}", outage_prob_siso(snr, rate)?);

    for n in [1e2, 1e3, 1e4, 1e5] {
        let eps = eps_quasistatic(snr, rate, n)?.get();
        println!("n = {n:>8}: eps = {eps:.6}  gap = {:.2e}", (eps - 0.1).abs());
    }

    let mc = eps_quasistatic_mc(snr, rate, 168.0, 200_000, 1)?;
    let quad = eps_quasistatic(snr, rate, 168.0)?.get();
    println!("n = 168: quadrature {quad:.5}, Monte-Carlo {:.5} +/- {:.5}", mc.estimate, mc.std_error);
    Ok(())
}
