//! Normal approximation of the maximum coding rate on the AWGN channel, and
//! the shortest blocklength meeting a target error probability.

use shortpacket::awgn::{capacity, eps_star, min_blocklength, rate_na, Channel, CodeSpec, Convention};

fn main() -> shortpacket::Result<()> {
    let ch = Channel::from_db(0.0, Convention::Complex)?;
    println!("capacity at 0 dB: {:.4} bit/cu", capacity(&ch));

    println!("{:>6} {:>10} {:>10}", "n", "eps=1e-3", "eps=1e-6");
    for n in [50.0, 100.0, 138.0, 500.0, 2000.0] {
        let a = rate_na(&ch, n, 1e-3)?.rate;
        let b = rate_na(&ch, n, 1e-6)?.rate;
        println!("{n:>6} {a:>10.4} {b:>10.4}");
    }

    let n = min_blocklength(&ch, 100.0, 1e-3)?;
    let eps = eps_star(&ch, &CodeSpec::new(100.0, n as f64)?)?;
    println!("100 bits at eps <= 1e-3 need n = {n} (eps* = {eps})");
    Ok(())
}
