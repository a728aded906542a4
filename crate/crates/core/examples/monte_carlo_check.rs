//! Seeded Monte-Carlo checks of the analytic protocol and outage formulas.

use shortpacket::awgn::{Channel, Convention};
use shortpacket::fading::{outage_prob_mimo_mc, outage_prob_siso, QuasiStaticConfig};
use shortpacket::mcsim::{sim_aloha, sim_twoway};
use shortpacket::protocols::{aloha_success_at, twoway_reliability, AlohaConfig, TwoWayConfig, TwoWayObjective};

fn main() -> shortpacket::Result<()> {
    let ch = Channel::new(10.0, Convention::Real)?;
    let trials = 200_000;

    let aloha = AlohaConfig::new(10, 192.0, 800.0, ch)?;
    let sim = sim_aloha(&aloha, 6, trials, 1)?;
    let exact = aloha_success_at(&aloha, 6, 133.0)?;
    let r = &sim.per_slot_throughput;
    println!("aloha: sim {:.5} +/- {:.5}, exact {exact:.5}, z = {:.2}", r.estimate, r.std_error, r.z_score(exact, 0.0));

    let tw = TwoWayConfig::new(193.0, 97.0, 96.0, ch, TwoWayObjective::MaxReliability { n: 203 })?;
    let sim = sim_twoway(&tw, 132.0, 71.0, trials, 2)?;
    let exact = twoway_reliability(&tw, 132.0, 71.0)?.get();
    println!("two-way: sim {:.5}, exact {exact:.5}, z = {:.2}", sim.estimate, sim.z_score(exact, 0.0));

    let cfg = QuasiStaticConfig::new(10.0, 2, 2)?;
    for rate in [2.0, 4.0, 6.0] {
        let siso = outage_prob_siso(10.0, rate)?.get();
        let mimo = outage_prob_mimo_mc(&cfg, 1, rate, trials, 3)?;
        println!("rate {rate}: 1x1 {siso:.4}, 2x2 {:.4} +/- {:.4}", mimo.estimate, mimo.std_error);
    }
    Ok(())
}
