//! Quasi-static Rayleigh fading: outage probability, outage capacity, the
//! finite-blocklength error approximation, MIMO outage by Monte-Carlo,
//! diversity-multiplexing tradeoff curves, and the noncoherent block-fading
//! pre-log.
//!
//! The fading analysis uses the complex-symbol convention throughout
//! ([`Convention::Complex`](crate::awgn::Convention::Complex)), unlike the
//! protocol examples which are usually evaluated per real dimension.

mod dmt;
mod mimo;

pub use dmt::{dmt_curve, dmt_eval, noncoherent_prelog, CsiMode, DmtCurve, DmtPoint};
pub use mimo::outage_prob_mimo_mc;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use serde_json::json;

use crate::awgn::{capacity, dispersion, Channel, Convention};
use crate::mcsim::{check_trials, run_trials, SimReport};
use crate::quad::integrate;
use crate::specfun::q_raw;
use crate::{Error, Probability, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuasiStaticConfig {
    pub snr: f64,
    pub tx_antennas: usize,
    pub rx_antennas: usize,
}

impl QuasiStaticConfig {
    pub fn new(snr: f64, tx_antennas: usize, rx_antennas: usize) -> Result<Self> {
        check_snr(snr)?;
        if tx_antennas == 0 || rx_antennas == 0 {
            return Err(Error::domain("antenna counts must be at least 1"));
        }
        Ok(QuasiStaticConfig { snr, tx_antennas, rx_antennas })
    }
}

/// Block-fading structure: `branches` coherence intervals of `coherence`
/// channel uses each, so a codeword spans `branches * coherence` uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockFadingConfig {
    pub coherence: u64,
    pub branches: u64,
}

impl BlockFadingConfig {
    pub fn new(coherence: u64, branches: u64) -> Result<Self> {
        if coherence == 0 || branches == 0 {
            return Err(Error::domain("coherence interval and branch count must be at least 1"));
        }
        Ok(BlockFadingConfig { coherence, branches })
    }

    pub fn blocklength(&self) -> u64 {
        self.coherence * self.branches
    }

    /// `min(m_t, m_r, floor(n_c / 2))`.
    pub fn m_star(&self, tx_antennas: usize, rx_antennas: usize) -> u64 {
        m_star(tx_antennas, rx_antennas, self.coherence)
    }
}

pub(crate) fn m_star(tx: usize, rx: usize, coherence: u64) -> u64 {
    (tx.min(rx) as u64).min(coherence / 2)
}

fn check_snr(snr: f64) -> Result<()> {
    if snr > 0.0 && snr.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("snr must be positive and finite, got {snr}")))
    }
}

fn check_rate(rate: f64) -> Result<()> {
    if rate >= 0.0 && rate.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("rate must be non-negative, got {rate}")))
    }
}

/// Draws one fading coefficient: circularly-symmetric complex Gaussian with
/// unit variance (Rayleigh envelope). This is the only fading law shipped.
pub fn rayleigh_coefficient<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `P[log2(1 + |H|^2 snr) < rate]` under Rayleigh fading.
pub fn outage_prob_siso(snr: f64, rate: f64) -> Result<Probability> {
    check_snr(snr)?;
    check_rate(rate)?;
    let threshold = rate.exp2() - 1.0;
    Ok(Probability::saturating(-(-threshold / snr).exp_m1()))
}

/// Largest rate whose SISO outage probability does not exceed `eps`.
pub fn outage_capacity_siso(snr: f64, eps: f64) -> Result<f64> {
    check_snr(snr)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::domain(format!("eps must lie in (0, 1), got {eps}")));
    }
    Ok((1.0 - snr * (-eps).ln_1p()).log2())
}

/// `Q((C(s) + log2(n)/(2n) - rate) / sqrt(V(s)/n))` at effective SNR `s`,
/// with the pointwise limit at `s = 0`.
fn quasistatic_integrand(s: f64, rate: f64, n: f64, correction: f64) -> f64 {
    let margin = correction - rate;
    if s <= 0.0 {
        return if margin < 0.0 { 1.0 } else { 0.0 };
    }
    let ch = Channel::new(s, Convention::Complex).expect("positive effective snr");
    let v = dispersion(&ch);
    if v == 0.0 {
        return if capacity(&ch) + margin < 0.0 { 1.0 } else { 0.0 };
    }
    q_raw((capacity(&ch) + margin) / (v / n).sqrt())
}

fn check_quasistatic(snr: f64, rate: f64, n: f64) -> Result<()> {
    check_snr(snr)?;
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(Error::domain(format!("rate must be positive, got {rate}")));
    }
    if !(n >= 1.0 && n.is_finite()) {
        return Err(Error::domain(format!("blocklength must be at least 1, got {n}")));
    }
    Ok(())
}

/// Finite-blocklength error approximation for the single-antenna
/// quasi-static Rayleigh channel,
/// `E[Q((C(snr|H|^2) + log2(n)/(2n) - rate) / sqrt(V(snr|H|^2)/n))]`.
///
/// The expectation is computed by adaptive Gauss-Kronrod quadrature in the
/// variable `u = 1 - exp(-|H|^2)`, split around the fading level where the
/// numerator changes sign.
pub fn eps_quasistatic(snr: f64, rate: f64, n: f64) -> Result<Probability> {
    check_quasistatic(snr, rate, n)?;
    let correction = n.log2() / (2.0 * n);
    let to_u = |g: f64| -(-g).exp_m1();

    let mut breaks = vec![0.0];
    if rate > correction {
        let g0 = ((rate - correction).exp2() - 1.0) / snr;
        let s0 = snr * g0;
        let ch = Channel::new(s0, Convention::Complex)?;
        // width in |H|^2 of the Q transition around g0
        let slope = std::f64::consts::LOG2_E / (1.0 + s0) * snr;
        let width = (dispersion(&ch) / n).sqrt() / slope;
        for g in [g0 - 8.0 * width, g0 - width, g0, g0 + width, g0 + 8.0 * width] {
            if g > 0.0 {
                breaks.push(to_u(g));
            }
        }
    }
    breaks.push(1.0);
    breaks.dedup();

    let value = integrate(
        |u: f64| {
            let g = -(-u).ln_1p();
            quasistatic_integrand(snr * g, rate, n, correction)
        },
        &breaks,
        1e-12,
    );
    Ok(Probability::saturating(value))
}

/// Monte-Carlo estimate of the same expectation as [`eps_quasistatic`],
/// averaging the integrand over Rayleigh draws.
pub fn eps_quasistatic_mc(snr: f64, rate: f64, n: f64, trials: u64, seed: u64) -> Result<SimReport> {
    check_quasistatic(snr, rate, n)?;
    check_trials(trials)?;
    let correction = n.log2() / (2.0 * n);
    let m = run_trials(seed, trials, |rng| {
        let gain = rayleigh_coefficient(rng).norm_sqr();
        quasistatic_integrand(snr * gain, rate, n, correction)
    });
    let config = json!({ "snr": snr, "rate": rate, "n": n });
    Ok(SimReport::mean("eps_quasistatic", m, trials, seed, config))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outage_examples() {
        assert_eq!(outage_prob_siso(10.0, 0.0).unwrap().get(), 0.0);
        let p = outage_prob_siso(10.0, 11f64.log2()).unwrap().get();
        assert!((p - (1.0 - (-1f64).exp())).abs() < 1e-12);
        assert!((outage_prob_siso(10.0, 1.03816).unwrap().get() - 0.1).abs() < 1e-4);
    }

    #[test]
    fn outage_capacity_examples() {
        let c = outage_capacity_siso(10.0, 0.1).unwrap();
        assert!((c - 1.038_158_823_620_704).abs() < 1e-12);
        assert!(outage_capacity_siso(10.0, 1e-300).unwrap() < 1e-290);
        let top = outage_capacity_siso(10.0, 1.0 - (-1f64).exp()).unwrap();
        assert!((top - 11f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn outage_domain_errors() {
        assert!(outage_prob_siso(10.0, -0.1).is_err());
        assert!(outage_prob_siso(0.0, 1.0).is_err());
        assert!(outage_capacity_siso(10.0, 0.0).is_err());
        assert!(outage_capacity_siso(10.0, 1.0).is_err());
    }

    #[test]
    fn outage_round_trip_on_grid() {
        for snr in [0.5, 10.0, 1000.0] {
            let mut eps = 1e-6;
            while eps < 0.9 {
                let back = outage_prob_siso(snr, outage_capacity_siso(snr, eps).unwrap()).unwrap();
                assert!((back.get() - eps).abs() < 1e-10, "snr {snr} eps {eps}");
                eps *= 1.5;
            }
        }
    }

    // 40-digit adaptive quadrature of the same expectation.
    const QS_TABLE: &[(f64, f64, f64, f64)] = &[
        (10.0, 1.0, 168.0, 0.093_009_771_416_456_6),
        (10.0, 0.5, 100.0, 0.038_440_600_198_782),
        (3.0, 2.0, 50.0, 0.612_179_849_726_037),
        (10.0, 1.038_158_823_620_704, 100.0, 0.096_775_391_521_537_1),
        (10.0, 1.038_158_823_620_704, 1e4, 0.099_924_884_599_267_5),
        (10.0, 1.038_158_823_620_704, 1e6, 0.099_998_823_128_313_8),
    ];

    #[test]
    fn eps_quasistatic_matches_reference_table() {
        for &(snr, rate, n, want) in QS_TABLE {
            let got = eps_quasistatic(snr, rate, n).unwrap().get();
            assert!((got - want).abs() < 1e-9, "({snr}, {rate}, {n}): {got} vs {want}");
        }
    }

    #[test]
    fn eps_quasistatic_large_n_tends_to_outage() {
        let c = outage_capacity_siso(10.0, 0.1).unwrap();
        let got = eps_quasistatic(10.0, c, 1e6).unwrap().get();
        assert!((got - 0.1).abs() < 2e-3);
    }

    #[test]
    fn eps_quasistatic_gap_shrinks_with_n() {
        for rate in [0.6, 1.0, 1.5, 2.0] {
            let outage = outage_prob_siso(10.0, rate).unwrap().get();
            let mut prev = f64::INFINITY;
            for n in [1e2, 1e3, 1e4] {
                let gap = (eps_quasistatic(10.0, rate, n).unwrap().get() - outage).abs();
                assert!(gap < prev, "rate {rate} n {n}");
                prev = gap;
            }
            assert!(prev <= 0.02);
        }
    }

    #[test]
    fn eps_quasistatic_small_for_tiny_rates() {
        // deep fades keep a residual error even as R -> 0 at fixed n
        let correction = 168f64.log2() / 336.0;
        let mut prev = 1.0;
        for scale in [1.0, 0.5, 0.1, 1e-3] {
            let got = eps_quasistatic(10.0, correction * scale, 168.0).unwrap().get();
            assert!(got < prev && got < 1e-3, "{scale}: {got}");
            prev = got;
        }
    }

    #[test]
    fn eps_quasistatic_domain() {
        assert!(eps_quasistatic(10.0, 1.0, 0.5).is_err());
        assert!(eps_quasistatic(10.0, 0.0, 100.0).is_err());
    }

    #[test]
    fn quadrature_and_monte_carlo_agree() {
        let quad = eps_quasistatic(10.0, 1.0, 168.0).unwrap().get();
        let mc = eps_quasistatic_mc(10.0, 1.0, 168.0, 1_000_000, 5).unwrap();
        assert!(mc.z_score(quad, 0.0) < 3.0, "{mc:?} vs {quad}");
    }

    #[test]
    fn m_star_floor() {
        let b = BlockFadingConfig::new(1, 168).unwrap();
        assert_eq!(b.m_star(2, 2), 0);
        let b = BlockFadingConfig::new(14, 12).unwrap();
        assert_eq!(b.m_star(2, 2), 2);
        assert_eq!(b.blocklength(), 168);
        assert!(BlockFadingConfig::new(0, 1).is_err());
    }
}
