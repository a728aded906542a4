//! Framed ALOHA: choosing the number of slots when shorter slots raise the
//! decoding error.

use shortpacket::awgn::{Channel, Convention};
use shortpacket::protocols::{aloha_optimize, AlohaConfig, Decoding};

fn main() -> shortpacket::Result<()> {
    let ch = Channel::new(10.0, Convention::Real)?;
    let cfg = AlohaConfig::new(10, 192.0, 800.0, ch)?;

    let plan = aloha_optimize(&cfg, Some(12))?;
    for (k, s) in &plan.profile {
        println!("K = {k:>2}: {s:.4}");
    }
    println!("best K = {} ({:.4} packets/slot)", plan.k_opt, plan.success);

    let ideal = aloha_optimize(&cfg.with_decoding(Decoding::ErrorFree), Some(12))?;
    println!("with error-free decoding: best K = {}", ideal.k_opt);
    Ok(())
}
