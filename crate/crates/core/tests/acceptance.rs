//! End-to-end acceptance table, one test per row. Each row prints a PASS/FAIL
//! line (visible with `--nocapture`).

use shortpacket::awgn::{eps_star, rate_na, Channel, CodeSpec, Convention};
use shortpacket::fading::{
    dmt_curve, dmt_eval, eps_quasistatic, outage_capacity_siso, outage_prob_mimo_mc, outage_prob_siso, CsiMode,
    QuasiStaticConfig,
};
use shortpacket::mcsim::{sim_aloha, sim_twoway};
use shortpacket::protocols::{
    aloha_optimize, aloha_success_at, downlink_compare, twoway_optimize, twoway_reliability, twoway_tdd_eval,
    AlohaConfig, Decoding, DownlinkConfig, TwoWayConfig, TwoWayObjective,
};
use shortpacket::Result;

type Row = Result<(bool, String)>;

fn ch(convention: Convention) -> Channel {
    Channel::new(10.0, convention).unwrap()
}

fn near(x: f64, want: f64, tol: f64) -> bool {
    (x - want).abs() <= tol
}

fn twoway(convention: Convention, objective: TwoWayObjective) -> Result<TwoWayConfig> {
    TwoWayConfig::new(193.0, 97.0, 96.0, ch(convention), objective)
}

fn tdd_throughput(convention: Convention) -> Row {
    let r = twoway_tdd_eval(194.0, 96.0, 125.0, &ch(convention))?;
    let manual = (1.0 - r.eps) * 96.0 / 125.0;
    let ok = near(r.eps, 0.0118, 3e-4) && near(r.throughput, 0.759, 1e-3) && near(manual, r.throughput, 1e-12);
    Ok((ok, format!("eps={:.5} throughput={:.4}", r.eps, r.throughput)))
}

fn min_blocklength_split(convention: Convention) -> Row {
    let plan = twoway_optimize(&twoway(convention, TwoWayObjective::MinBlocklength { target: 0.999 })?)?;
    let at_202 = twoway(convention, TwoWayObjective::MaxReliability { n: 202 })?;
    let mut best_202: f64 = 0.0;
    for n1 in 1..202 {
        best_202 = best_202.max(twoway_reliability(&at_202, n1 as f64, (202 - n1) as f64)?.get());
    }
    let ok = (plan.n, plan.n1, plan.n2) == (203, 132, 71) && best_202 < 0.999;
    Ok((ok, format!("n={} split=({}, {}) best at n=202: {best_202:.6}", plan.n, plan.n1, plan.n2)))
}

fn fixed_blocklength_split(convention: Convention) -> Row {
    let plan = twoway_optimize(&twoway(convention, TwoWayObjective::MaxReliability { n: 250 })?)?;
    let ok = (plan.n1, plan.n2) == (158, 92) && near(plan.throughput, 0.384, 1e-3);
    Ok((ok, format!("split=({}, {}) throughput={:.4}", plan.n1, plan.n2, plan.throughput)))
}

fn downlink_concatenation(convention: Convention) -> Row {
    let d = downlink_compare(&DownlinkConfig::new(10, 192.0, 125.0, ch(convention))?)?;
    let ok = near(d.eps_tdma, 0.007, 5e-4) && (1e-12..=1e-11).contains(&d.eps_concat);
    Ok((ok, format!("eps_tdma={:.5} eps_concat={:.3e}", d.eps_tdma, d.eps_concat)))
}

fn aloha_slots(convention: Convention) -> Row {
    let cfg = AlohaConfig::new(10, 192.0, 800.0, ch(convention))?;
    let k = aloha_optimize(&cfg, None)?.k_opt;
    let k_free = aloha_optimize(&cfg.with_decoding(Decoding::ErrorFree), None)?.k_opt;
    Ok((k == 6 && k_free == 10, format!("K={k} error-free K={k_free}")))
}

fn row1() -> Row {
    tdd_throughput(Convention::Real)
}

fn row2() -> Row {
    min_blocklength_split(Convention::Real)
}

fn row3() -> Row {
    fixed_blocklength_split(Convention::Real)
}

fn row4() -> Row {
    downlink_concatenation(Convention::Real)
}

fn row5() -> Row {
    aloha_slots(Convention::Real)
}

fn row6() -> Row {
    let r = rate_na(&Channel::new(1.0, Convention::Complex)?, 138.0, 1e-3)?;
    Ok((near(r.rate, 0.697, 3e-3), format!("rate={:.5}", r.rate)))
}

fn row7() -> Row {
    let c = Convention::Complex;
    let eps_tdd = eps_star(&ch(c), &CodeSpec::new(194.0, 125.0)?)?.get();
    let d = downlink_compare(&DownlinkConfig::new(10, 192.0, 125.0, ch(c))?)?;
    let plan = twoway_optimize(&twoway(c, TwoWayObjective::MaxReliability { n: 250 })?)?;
    let k = aloha_optimize(&AlohaConfig::new(10, 192.0, 800.0, ch(c))?, None)?.k_opt;
    let collapsed = [eps_tdd, d.eps_tdma, d.eps_concat, 1.0 - plan.reliability].iter().all(|&e| e < 1e-9);

    let rows_fail = !tdd_throughput(c)?.0
        && !min_blocklength_split(c)?.0
        && !fixed_blocklength_split(c)?.0
        && !downlink_concatenation(c)?.0
        && !aloha_slots(c)?.0;
    Ok((
        collapsed && k == 10 && rows_fail,
        format!("complex: eps_tdd={eps_tdd:.2e} eps_tdma={:.2e} K={k} rows 1-5 fail={rows_fail}", d.eps_tdma),
    ))
}

fn row8() -> Row {
    let mut worst: f64 = 0.0;
    for snr in [0.5, 10.0, 100.0] {
        let mut eps = 1e-8;
        while eps < 0.95 {
            let back = outage_prob_siso(snr, outage_capacity_siso(snr, eps)?)?.get();
            worst = worst.max((back - eps).abs());
            eps *= 1.3;
        }
    }
    let mut top_err: f64 = 0.0;
    for snr in [0.5, 10.0, 100.0] {
        let top = outage_prob_siso(snr, (1.0 + snr).log2())?.get();
        top_err = top_err.max((top - (1.0 - (-1f64).exp())).abs());
    }
    Ok((worst <= 1e-10 && top_err <= 1e-12, format!("round trip {worst:.1e}, at log2(1+snr) {top_err:.1e}")))
}

fn row9() -> Row {
    let rate = outage_capacity_siso(10.0, 0.1)?;
    let gap_1e4 = (eps_quasistatic(10.0, rate, 1e4)?.get() - 0.1).abs();
    let gap_1e2 = (eps_quasistatic(10.0, rate, 1e2)?.get() - 0.1).abs();
    Ok((gap_1e4 <= 0.02 && gap_1e4 < gap_1e2, format!("gap n=1e4 {gap_1e4:.2e}, n=1e2 {gap_1e2:.2e}")))
}

fn row10() -> Row {
    let aloha = AlohaConfig::new(10, 192.0, 800.0, ch(Convention::Real))?;
    let slots = 6;
    let aloha_exact = aloha_success_at(&aloha, slots, (800.0f64 / slots as f64).floor())?;
    let tw = twoway(Convention::Real, TwoWayObjective::MaxReliability { n: 203 })?;
    let tw_exact = twoway_reliability(&tw, 132.0, 71.0)?.get();

    let mut worst: f64 = 0.0;
    for seed in [11, 12] {
        let a = sim_aloha(&aloha, slots, 1_000_000, seed)?;
        worst = worst.max(a.per_slot_throughput.z_score(aloha_exact, 0.0));
        let t = sim_twoway(&tw, 132.0, 71.0, 10_000_000, seed)?;
        worst = worst.max(t.z_score(tw_exact, 0.0));
    }
    Ok((worst < 3.0, format!("largest deviation {worst:.2} std errors")))
}

fn row11() -> Row {
    let cfg = QuasiStaticConfig::new(10.0, 1, 1)?;
    let mut worst: f64 = 0.0;
    for rate in [0.25, 0.5, 1.0, 2.0, 3.0] {
        let exact = outage_prob_siso(10.0, rate)?.get();
        worst = worst.max(outage_prob_mimo_mc(&cfg, 1, rate, 1_000_000, 21)?.z_score(exact, 0.0));
    }
    Ok((worst < 3.0, format!("largest deviation {worst:.2} std errors")))
}

fn row12() -> Row {
    let coh = dmt_curve(2, 2, CsiMode::Coherent, None)?;
    let non = dmt_curve(2, 2, CsiMode::Noncoherent, Some(10))?;
    let pts: Vec<(f64, f64)> = coh.breakpoints.iter().map(|p| (p.diversity, p.multiplexing)).collect();
    let mut ok = pts == [(4.0, 0.0), (1.0, 1.0), (0.0, 2.0)] && non.scaling == 0.8;
    for (c, n) in coh.breakpoints.iter().zip(&non.breakpoints) {
        ok &= c.diversity == n.diversity && near(n.multiplexing, 0.8 * c.multiplexing, 1e-15);
        ok &= dmt_eval(&coh, c.diversity)? == c.multiplexing;
        ok &= near(dmt_eval(&non, c.diversity)?, 0.8 * c.multiplexing, 1e-15);
    }
    let mid = dmt_eval(&coh, 2.5)?;
    ok &= mid == 0.5;
    Ok((ok, format!("breakpoints {pts:?}, r(2.5)={mid}")))
}

fn check(name: &str, row: fn() -> Row) {
    let (ok, detail) = row().unwrap_or_else(|e| (false, format!("error: {e}")));
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}

#[test]
fn row_01_twoway_tdd_error_and_throughput() {
    check("row_01_twoway_tdd_error_and_throughput", row1);
}

#[test]
fn row_02_twoway_minimum_blocklength() {
    check("row_02_twoway_minimum_blocklength", row2);
}

#[test]
fn row_03_twoway_fixed_blocklength_split() {
    check("row_03_twoway_fixed_blocklength_split", row3);
}

#[test]
fn row_04_downlink_tdma_vs_concatenation() {
    check("row_04_downlink_tdma_vs_concatenation", row4);
}

#[test]
fn row_05_framed_aloha_slot_count() {
    check("row_05_framed_aloha_slot_count", row5);
}

#[test]
fn row_06_awgn_normal_approximation_rate() {
    check("row_06_awgn_normal_approximation_rate", row6);
}

#[test]
fn row_07_complex_convention_collapses_rows_1_to_5() {
    check("row_07_complex_convention_collapses_rows_1_to_5", row7);
}

#[test]
fn row_08_outage_round_trips() {
    check("row_08_outage_round_trips", row8);
}

#[test]
fn row_09_quasi_static_large_n_limit() {
    check("row_09_quasi_static_large_n_limit", row9);
}

#[test]
fn row_10_monte_carlo_vs_analytic() {
    check("row_10_monte_carlo_vs_analytic", row10);
}

#[test]
fn row_11_mimo_outage_calibration() {
    check("row_11_mimo_outage_calibration", row11);
}

#[test]
fn row_12_dmt_curves() {
    check("row_12_dmt_curves", row12);
}
