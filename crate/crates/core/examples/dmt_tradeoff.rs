//! Diversity-multiplexing tradeoff of a 2x2 link with and without channel
//! knowledge at the receiver, and the noncoherent pre-log.

use shortpacket::fading::{dmt_curve, dmt_eval, noncoherent_prelog, CsiMode};

fn main() -> shortpacket::Result<()> {
    let coherent = dmt_curve(2, 2, CsiMode::Coherent, None)?;
    let noncoherent = dmt_curve(2, 2, CsiMode::Noncoherent, Some(10))?;

    println!("{:>5} {:>10} {:>12}", "d", "coherent", "noncoherent");
    for d in [0.0, 0.5, 1.0, 2.0, 2.5, 3.0, 4.0] {
        println!("{d:>5} {:>10.3} {:>12.3}", dmt_eval(&coherent, d)?, dmt_eval(&noncoherent, d)?);
    }

    for nc in [2, 4, 10, 100] {
        println!("pre-log with coherence {nc:>3}: {:.3}", noncoherent_prelog(2, 2, nc)?);
    }
    Ok(())
}
