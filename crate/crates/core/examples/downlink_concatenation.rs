//! Serving several devices: separate TDMA packets versus one concatenated
//! packet over the whole frame.

use shortpacket::awgn::{Channel, Convention};
use shortpacket::protocols::{downlink_compare, DownlinkConfig};

fn main() -> shortpacket::Result<()> {
    let ch = Channel::new(10.0, Convention::Real)?;
    println!("{:>3} {:>12} {:>12}", "M", "tdma", "concat");
    for devices in [1, 2, 5, 10, 20] {
        let d = downlink_compare(&DownlinkConfig::new(devices, 192.0, 125.0, ch)?)?;
        println!("{devices:>3} {:>12.3e} {:>12.3e}", d.eps_tdma, d.eps_concat);
    }
    Ok(())
}
