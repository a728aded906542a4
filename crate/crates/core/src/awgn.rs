//! AWGN capacity, dispersion, and the normal approximation of the maximum
//! coding rate together with its inversions.
//!
//! Two dimension conventions are supported. Under [`Convention::Complex`] a
//! channel use is one complex symbol and `C = log2(1 + snr)`. Under
//! [`Convention::Real`] a channel use is one real dimension, which halves both
//! capacity and dispersion at the same SNR.

use serde::Serialize;

use crate::specfun::{ln_q_raw, q_inv, q_raw};
use crate::{Error, Probability, Result};

/// `(log2 e)^2`.
const LOG2_E_SQ: f64 = std::f64::consts::LOG2_E * std::f64::consts::LOG2_E;

/// Largest blocklength [`min_blocklength`] will consider.
pub const MAX_SEARCH_BLOCKLENGTH: u64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// One channel use is a complex symbol.
    Complex,
    /// One channel use is a real dimension.
    Real,
}

impl Convention {
    fn scale(self) -> f64 {
        match self {
            Convention::Complex => 1.0,
            Convention::Real => 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Channel {
    snr: f64,
    convention: Convention,
}

impl Channel {
    /// `snr` is a linear power ratio.
    pub fn new(snr: f64, convention: Convention) -> Result<Self> {
        if !(snr > 0.0 && snr.is_finite()) {
            return Err(Error::domain(format!("snr must be positive and finite, got {snr}")));
        }
        Ok(Channel { snr, convention })
    }

    pub fn from_db(snr_db: f64, convention: Convention) -> Result<Self> {
        Channel::new(10f64.powf(snr_db / 10.0), convention)
    }

    pub fn snr(&self) -> f64 {
        self.snr
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Same SNR, other convention.
    pub fn with_convention(self, convention: Convention) -> Self {
        Channel { convention, ..self }
    }
}

/// A packet: `k` information bits over `n` channel uses.
///
/// Both are real-valued so that fractional slot lengths such as `n/K` can be
/// evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CodeSpec {
    pub k: f64,
    pub n: f64,
}

impl CodeSpec {
    pub fn new(k: f64, n: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::domain(format!("payload k must be positive, got {k}")));
        }
        check_blocklength(n)?;
        Ok(CodeSpec { k, n })
    }
}

fn check_blocklength(n: f64) -> Result<()> {
    if n > 0.0 && n.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("blocklength n must be positive, got {n}")))
    }
}

/// Terms of the normal approximation. `rate = capacity - penalty + correction`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateResult {
    pub rate: f64,
    pub capacity: f64,
    pub dispersion: f64,
    /// `sqrt(V/n) Q^-1(eps)`.
    pub penalty: f64,
    /// `log2(n) / (2n)`.
    pub correction: f64,
}

/// Capacity in bits per channel use.
pub fn capacity(ch: &Channel) -> f64 {
    ch.convention.scale() * ch.snr.ln_1p() * std::f64::consts::LOG2_E
}

/// Dispersion in bits² per channel use.
pub fn dispersion(ch: &Channel) -> f64 {
    let rho = ch.snr;
    ch.convention.scale() * rho * (2.0 + rho) / ((1.0 + rho) * (1.0 + rho)) * LOG2_E_SQ
}

/// Normal approximation `C - sqrt(V/n) Q^-1(eps) + log2(n)/(2n)`.
pub fn rate_na(ch: &Channel, n: f64, eps: f64) -> Result<RateResult> {
    check_blocklength(n)?;
    let q = q_inv(eps)?;
    let capacity = capacity(ch);
    let dispersion = dispersion(ch);
    let penalty = (dispersion / n).sqrt() * q;
    let correction = n.log2() / (2.0 * n);
    Ok(RateResult { rate: capacity - penalty + correction, capacity, dispersion, penalty, correction })
}

/// Argument of `Q` in the packet-error approximation,
/// `(nC - k + log2(n)/2) / sqrt(nV)`.
pub fn eps_argument(ch: &Channel, code: &CodeSpec) -> f64 {
    error_argument(capacity(ch), dispersion(ch), code.k, code.n)
}

pub(crate) fn error_argument(capacity: f64, dispersion: f64, k: f64, n: f64) -> f64 {
    (n * capacity - k + 0.5 * n.log2()) / (n * dispersion).sqrt()
}

/// Packet error probability `eps*(k, n)` from the normal approximation.
///
/// Not clamped at 0.5: payloads above `nC` give values above one half.
pub fn eps_star(ch: &Channel, code: &CodeSpec) -> Result<Probability> {
    Ok(Probability::saturating(q_raw(eps_argument(ch, code))))
}

/// `ln eps*(k, n)`, usable when the probability underflows.
pub fn ln_eps_star(ch: &Channel, code: &CodeSpec) -> Result<f64> {
    Ok(ln_q_raw(eps_argument(ch, code)))
}

/// Precomputed `(C, V)` for evaluating `eps*` many times on one channel.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ErrorModel {
    capacity: f64,
    dispersion: f64,
}

impl ErrorModel {
    pub(crate) fn new(ch: &Channel) -> Self {
        ErrorModel { capacity: capacity(ch), dispersion: dispersion(ch) }
    }

    /// `eps*(k, n)`; zero-length slots cannot carry a packet.
    pub(crate) fn eps(&self, k: f64, n: f64) -> f64 {
        if n <= 0.0 {
            return 1.0;
        }
        q_raw(error_argument(self.capacity, self.dispersion, k, n))
    }
}

/// Smallest integer blocklength `n >= 1` with `eps*(k, n) <= eps_target`.
pub fn min_blocklength(ch: &Channel, k: f64, eps_target: f64) -> Result<u64> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::domain(format!("payload k must be positive, got {k}")));
    }
    if !(eps_target > 0.0 && eps_target < 1.0) {
        return Err(Error::domain(format!("target error must lie in (0, 1), got {eps_target}")));
    }
    let model = ErrorModel::new(ch);
    let meets = |n: u64| model.eps(k, n as f64) <= eps_target;

    if meets(1) {
        return Ok(1);
    }
    let mut lo = 1u64;
    let mut hi = 2u64;
    while !meets(hi) {
        lo = hi;
        hi *= 2;
        if hi > MAX_SEARCH_BLOCKLENGTH {
            return Err(Error::domain(format!(
                "no blocklength up to {MAX_SEARCH_BLOCKLENGTH} reaches eps = {eps_target}"
            )));
        }
    }
    // invariant: !meets(lo) && meets(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if meets(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn real10() -> Channel {
        Channel::new(10.0, Convention::Real).unwrap()
    }

    fn complex(snr: f64) -> Channel {
        Channel::new(snr, Convention::Complex).unwrap()
    }

    fn eps(ch: &Channel, k: f64, n: f64) -> f64 {
        eps_star(ch, &CodeSpec::new(k, n).unwrap()).unwrap().get()
    }

    #[test]
    fn capacity_examples() {
        assert!((capacity(&complex(10.0)) - 3.459_431_618_637_297).abs() < 1e-12);
        assert!((capacity(&real10()) - 1.729_715_809_318_648_6).abs() < 1e-12);
        assert!(capacity(&complex(1e-300)) < 1e-299);
    }

    #[test]
    fn dispersion_examples() {
        let want = LOG2_E_SQ * 120.0 / 121.0;
        assert!((dispersion(&complex(10.0)) - want).abs() < 1e-12);
        assert!((dispersion(&complex(10.0)) - 2.06417).abs() < 1e-4);
        assert!((dispersion(&real10()) - 1.03208).abs() < 1e-4);
        assert!(dispersion(&complex(1e-300)) < 1e-299);
    }

    #[test]
    fn invalid_channels() {
        assert!(Channel::new(0.0, Convention::Complex).is_err());
        assert!(Channel::new(-1.0, Convention::Real).is_err());
        assert!(Channel::new(f64::NAN, Convention::Real).is_err());
        assert!(CodeSpec::new(0.0, 10.0).is_err());
        assert!(CodeSpec::new(10.0, 0.0).is_err());
    }

    #[test]
    fn from_db_converts_once() {
        let ch = Channel::from_db(10.0, Convention::Real).unwrap();
        assert!((ch.snr() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn rate_na_at_zero_db() {
        let r = rate_na(&complex(1.0), 138.0, 1e-3).unwrap();
        assert!((r.capacity - 1.0).abs() < 1e-15);
        assert!((r.dispersion - 0.75 * LOG2_E_SQ).abs() < 1e-15);
        assert!((r.rate - 0.6971).abs() < 5e-4);
        assert_eq!(r.rate, r.capacity - r.penalty + r.correction);
    }

    #[test]
    fn rate_na_inverts_twoway_tdd_point() {
        let r = rate_na(&real10(), 125.0, 0.011_845).unwrap();
        assert!((r.rate - 1.552).abs() < 1e-3);
        assert!((r.rate * 125.0 - 194.0).abs() < 0.2);
    }

    #[test]
    fn rate_na_recovers_capacity() {
        for ch in [complex(1.0), real10(), complex(0.1)] {
            // the penalty sqrt(V/n) Q^-1(eps) stays above 1e-3 at n = 1e7 for
            // eps = 1e-3 when V is near (log2 e)^2, so use a moderate eps
            let r = rate_na(&ch, 1e7, 0.05).unwrap();
            assert!((r.rate - capacity(&ch)).abs() < 1e-3);
        }
    }

    #[test]
    fn eps_star_protocol_points() {
        let ch = real10();
        assert!((eps(&ch, 194.0, 125.0) - 0.01184).abs() < 2e-4);
        assert!((eps(&ch, 192.0, 125.0) - 0.0074).abs() < 3e-4);
        let tiny = eps(&ch, 1920.0, 1250.0);
        assert!(((tiny - 2.9e-12) / 2.9e-12).abs() < 0.3, "{tiny}");
    }

    #[test]
    fn eps_star_is_half_at_break_even_payload() {
        let ch = complex(3.0);
        let n = 300.0;
        let k = n * capacity(&ch) + n.log2() / 2.0;
        assert!((eps(&ch, k, n) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn eps_star_exceeds_half_above_capacity() {
        let ch = real10();
        assert!(eps(&ch, 400.0, 125.0) > 0.5);
    }

    #[test]
    fn ln_eps_star_matches_where_representable() {
        let ch = real10();
        let code = CodeSpec::new(1920.0, 1250.0).unwrap();
        let direct = eps_star(&ch, &code).unwrap().get().ln();
        assert!((ln_eps_star(&ch, &code).unwrap() - direct).abs() < 1e-9);
        // complex convention underflows f64 but keeps a finite log
        let code = CodeSpec::new(1920.0, 1250.0).unwrap();
        let ln = ln_eps_star(&ch.with_convention(Convention::Complex), &code).unwrap();
        assert!(ln.is_finite() && ln < -700.0);
    }

    /// Linear scan over n, the oracle for the bracketed search.
    fn scan_min_n(ch: &Channel, k: f64, target: f64) -> u64 {
        (1u64..).find(|&n| eps(ch, k, n as f64) <= target).unwrap()
    }

    #[test]
    fn min_blocklength_examples() {
        let ch = real10();
        assert_eq!(scan_min_n(&ch, 193.0, 4.4e-4), 132);
        assert_eq!(scan_min_n(&ch, 97.0, 3.8e-4), 71);
        assert_eq!(min_blocklength(&ch, 193.0, 4.4e-4).unwrap(), 132);
        assert_eq!(min_blocklength(&ch, 97.0, 3.8e-4).unwrap(), 71);
        assert_eq!(min_blocklength(&complex(1.0), 1e-9, 0.4).unwrap(), 1);
    }

    #[test]
    fn min_blocklength_agrees_with_scan_on_grid() {
        for ch in [real10(), complex(1.0), complex(100.0)] {
            for k in [8.0, 50.0, 193.0, 1000.0] {
                for target in [0.3, 1e-2, 1e-5, 1e-9] {
                    assert_eq!(
                        min_blocklength(&ch, k, target).unwrap(),
                        scan_min_n(&ch, k, target),
                        "k = {k}, target = {target}"
                    );
                }
            }
        }
    }

    #[test]
    fn min_blocklength_rejects_bad_targets() {
        assert!(min_blocklength(&real10(), 10.0, 0.0).is_err());
        assert!(min_blocklength(&real10(), 10.0, 1.0).is_err());
        assert!(min_blocklength(&real10(), -1.0, 0.1).is_err());
    }

    proptest! {
        #[test]
        fn real_convention_halves_capacity_and_dispersion(snr in 1e-3f64..1e4) {
            let c = complex(snr);
            let r = c.with_convention(Convention::Real);
            prop_assert!((capacity(&r) - capacity(&c) / 2.0).abs() <= 1e-15 * capacity(&c));
            prop_assert!((dispersion(&r) - dispersion(&c) / 2.0).abs() <= 1e-15 * dispersion(&c));
        }

        #[test]
        fn eps_star_monotone(snr in 0.5f64..50.0, k in 10.0f64..500.0, n in 20.0f64..2000.0) {
            let ch = complex(snr);
            let base = eps(&ch, k, n);
            prop_assert!(eps(&ch, k, n + 1.0) <= base);
            prop_assert!(eps(&ch, k + 1.0, n) >= base);
            prop_assert!(eps(&complex(snr * 1.1), k, n) <= base);
        }

        #[test]
        fn inversion_consistency(frac in 0.7f64..1.0, n in 100.0f64..400.0) {
            let ch = real10();
            let k = frac * n * capacity(&ch);
            let e = eps(&ch, k, n);
            prop_assume!(e > 1e-14 && e < 0.99);
            let r = rate_na(&ch, n, e).unwrap();
            prop_assert!(((r.rate * n - k) / k).abs() < 1e-6);
        }
    }
}
