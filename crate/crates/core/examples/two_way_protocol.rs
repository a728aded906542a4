//! Data/acknowledgement exchange: splitting a blocklength budget between the
//! two directions, and the shortest budget reaching a reliability target.

use shortpacket::awgn::{Channel, Convention};
use shortpacket::protocols::{twoway_optimize, twoway_tdd_eval, TwoWayConfig, TwoWayObjective};

fn main() -> shortpacket::Result<()> {
    let ch = Channel::new(10.0, Convention::Real)?;

    let tdd = twoway_tdd_eval(194.0, 96.0, 125.0, &ch)?;
    println!("fixed 125/125 slots: eps = {:.4}, throughput = {:.3}", tdd.eps, tdd.throughput);

    let fixed = TwoWayConfig::new(193.0, 97.0, 96.0, ch, TwoWayObjective::MaxReliability { n: 250 })?;
    let plan = twoway_optimize(&fixed)?;
    println!(
        "n = 250: split ({}, {}), failure {:.2e}, throughput {:.3}",
        plan.n1,
        plan.n2,
        1.0 - plan.reliability,
        plan.throughput
    );

    let target = TwoWayConfig::new(193.0, 97.0, 96.0, ch, TwoWayObjective::MinBlocklength { target: 0.999 })?;
    let plan = twoway_optimize(&target)?;
    println!("reliability 0.999 needs n = {} split ({}, {})", plan.n, plan.n1, plan.n2);
    Ok(())
}
