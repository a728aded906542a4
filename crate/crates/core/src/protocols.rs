//! Short-packet protocol analyses built on the packet-error approximation
//! [`eps_star`](crate::awgn::eps_star): the two-way data/ACK exchange,
//! downlink TDMA versus concatenation, and framed ALOHA.

use serde::Serialize;

use crate::awgn::{ln_eps_star, Channel, CodeSpec, ErrorModel};
use crate::{Error, Probability, Result};

/// Largest total blocklength the two-way search will try.
pub const TWOWAY_MAX_BLOCKLENGTH: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoWayObjective {
    /// Best split of a fixed total of `n` channel uses.
    MaxReliability { n: u64 },
    /// Smallest total whose best split reaches `target`.
    MinBlocklength { target: f64 },
}

/// Node 1 sends `data_bits` (payload plus metadata), node 2 answers with an
/// `ack_bits` acknowledgement. `info_bits` is the share of `data_bits` that is
/// user data and enters the throughput.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoWayConfig {
    pub data_bits: f64,
    pub ack_bits: f64,
    pub info_bits: f64,
    pub channel: Channel,
    pub objective: TwoWayObjective,
}

impl TwoWayConfig {
    pub fn new(
        data_bits: f64,
        ack_bits: f64,
        info_bits: f64,
        channel: Channel,
        objective: TwoWayObjective,
    ) -> Result<Self> {
        if !(data_bits > 0.0 && ack_bits > 0.0) {
            return Err(Error::domain("packet sizes must be positive"));
        }
        if info_bits.is_nan() || info_bits < 0.0 {
            return Err(Error::domain("information bits must be non-negative"));
        }
        match objective {
            TwoWayObjective::MaxReliability { n } if n < 2 => {
                return Err(Error::domain(format!("total blocklength must be at least 2, got {n}")))
            }
            TwoWayObjective::MinBlocklength { target } if !(target > 0.0 && target < 1.0) => {
                return Err(Error::domain(format!("target must lie in (0, 1), got {target}")))
            }
            _ => {}
        }
        Ok(TwoWayConfig { data_bits, ack_bits, info_bits, channel, objective })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoWayPlan {
    pub n: u64,
    pub n1: u64,
    pub n2: u64,
    pub reliability: f64,
    /// `reliability * info_bits / n`.
    pub throughput: f64,
}

fn check_uses(n1: f64, n2: f64) -> Result<()> {
    if n1 >= 1.0 && n2 >= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("each direction needs at least one channel use, got ({n1}, {n2})")))
    }
}

fn split_reliability(model: &ErrorModel, cfg: &TwoWayConfig, n1: f64, n2: f64) -> f64 {
    (1.0 - model.eps(cfg.data_bits, n1)) * (1.0 - model.eps(cfg.ack_bits, n2))
}

/// `ln` of [`split_reliability`]; keeps splits apart when both errors are tiny.
fn split_log_reliability(model: &ErrorModel, cfg: &TwoWayConfig, n1: f64, n2: f64) -> f64 {
    (-model.eps(cfg.data_bits, n1)).ln_1p() + (-model.eps(cfg.ack_bits, n2)).ln_1p()
}

/// `(1 - eps*(k1, n1)) (1 - eps*(k2, n2))`.
pub fn twoway_reliability(cfg: &TwoWayConfig, n1: f64, n2: f64) -> Result<Probability> {
    check_uses(n1, n2)?;
    let model = ErrorModel::new(&cfg.channel);
    Ok(Probability::saturating(split_reliability(&model, cfg, n1, n2)))
}

/// Exhaustive scan of `n1 in 1..n`; ties go to the smaller `n1`.
fn best_split(model: &ErrorModel, cfg: &TwoWayConfig, n: u64) -> (u64, f64) {
    let mut best = (1, f64::NEG_INFINITY);
    for n1 in 1..n {
        let score = split_log_reliability(model, cfg, n1 as f64, (n - n1) as f64);
        if score > best.1 {
            best = (n1, score);
        }
    }
    (best.0, split_reliability(model, cfg, best.0 as f64, (n - best.0) as f64))
}

fn plan(cfg: &TwoWayConfig, n: u64, (n1, reliability): (u64, f64)) -> TwoWayPlan {
    TwoWayPlan { n, n1, n2: n - n1, reliability, throughput: reliability * cfg.info_bits / n as f64 }
}

/// Optimizes the data/ACK resource split for the configured objective.
pub fn twoway_optimize(cfg: &TwoWayConfig) -> Result<TwoWayPlan> {
    let model = ErrorModel::new(&cfg.channel);
    match cfg.objective {
        TwoWayObjective::MaxReliability { n } => {
            if n < 2 {
                return Err(Error::domain("total blocklength must be at least 2"));
            }
            Ok(plan(cfg, n, best_split(&model, cfg, n)))
        }
        TwoWayObjective::MinBlocklength { target } => {
            let feasible = |n: u64| {
                let best = best_split(&model, cfg, n);
                (best.1 >= target).then_some(best)
            };
            let infeasible = Error::Infeasible { target, ceiling: TWOWAY_MAX_BLOCKLENGTH };
            if let Some(best) = feasible(2) {
                return Ok(plan(cfg, 2, best));
            }
            let mut lo = 2u64;
            let mut hi = 4u64;
            let mut hi_best = loop {
                if let Some(best) = feasible(hi) {
                    break best;
                }
                if hi >= TWOWAY_MAX_BLOCKLENGTH {
                    return Err(infeasible);
                }
                lo = hi;
                hi = (hi * 2).min(TWOWAY_MAX_BLOCKLENGTH);
            };
            // invariant: lo infeasible, hi feasible
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                match feasible(mid) {
                    Some(best) => {
                        hi = mid;
                        hi_best = best;
                    }
                    None => lo = mid,
                }
            }
            Ok(plan(cfg, hi, hi_best))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TddResult {
    pub eps: f64,
    /// `(1 - eps) * info_bits / slot`.
    pub throughput: f64,
}

/// Fixed time-division duplex with equal slots of `slot` channel uses and the
/// acknowledgement piggybacked on data.
pub fn twoway_tdd_eval(packet_bits: f64, info_bits: f64, slot: f64, ch: &Channel) -> Result<TddResult> {
    let code = CodeSpec::new(packet_bits, slot)?;
    if info_bits.is_nan() || info_bits < 0.0 {
        return Err(Error::domain("information bits must be non-negative"));
    }
    let eps = crate::awgn::eps_star(ch, &code)?.get();
    Ok(TddResult { eps, throughput: (1.0 - eps) * info_bits / slot })
}

/// Base station serving `devices` users with `bits` each; every user owns a
/// TDMA slot of `slot` channel uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DownlinkConfig {
    pub devices: u64,
    pub bits: f64,
    pub slot: f64,
    pub channel: Channel,
}

impl DownlinkConfig {
    pub fn new(devices: u64, bits: f64, slot: f64, channel: Channel) -> Result<Self> {
        if devices == 0 {
            return Err(Error::domain("at least one device is required"));
        }
        CodeSpec::new(bits, slot)?;
        if slot < 1.0 {
            return Err(Error::domain("slot must span at least one channel use"));
        }
        Ok(DownlinkConfig { devices, bits, slot, channel })
    }

    pub fn frame_length(&self) -> f64 {
        self.devices as f64 * self.slot
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DownlinkComparison {
    /// Per-device error with one dedicated slot each.
    pub eps_tdma: f64,
    /// Error of the single concatenated packet; may underflow, see `ln_eps_concat`.
    pub eps_concat: f64,
    pub ln_eps_concat: f64,
    /// Bits every device decodes under concatenation.
    pub per_device_decoded_bits: f64,
}

/// TDMA versus broadcasting one packet of `M D` bits over `M n` channel uses.
pub fn downlink_compare(cfg: &DownlinkConfig) -> Result<DownlinkComparison> {
    let m = cfg.devices as f64;
    let tdma = CodeSpec::new(cfg.bits, cfg.slot)?;
    let concat = CodeSpec::new(m * cfg.bits, m * cfg.slot)?;
    let ln_eps_concat = ln_eps_star(&cfg.channel, &concat)?;
    Ok(DownlinkComparison {
        eps_tdma: crate::awgn::eps_star(&cfg.channel, &tdma)?.get(),
        eps_concat: ln_eps_concat.exp(),
        ln_eps_concat,
        per_device_decoded_bits: m * cfg.bits,
    })
}

/// How singleton packets are decoded in the ALOHA analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decoding {
    /// Error probability `eps*(D, n_K)`.
    #[default]
    FiniteBlocklength,
    /// Collision-free packets always decode (classic framed ALOHA).
    ErrorFree,
}

/// `devices` users each send `bits` within a frame of `frame` channel uses,
/// which is split into slots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlohaConfig {
    pub devices: u64,
    pub bits: f64,
    pub frame: f64,
    pub channel: Channel,
    pub decoding: Decoding,
}

impl AlohaConfig {
    pub fn new(devices: u64, bits: f64, frame: f64, channel: Channel) -> Result<Self> {
        if devices == 0 {
            return Err(Error::domain("at least one device is required"));
        }
        CodeSpec::new(bits, frame)?;
        if frame < 1.0 {
            return Err(Error::domain("frame must span at least one channel use"));
        }
        Ok(AlohaConfig { devices, bits, frame, channel, decoding: Decoding::FiniteBlocklength })
    }

    pub fn with_decoding(self, decoding: Decoding) -> Self {
        AlohaConfig { decoding, ..self }
    }

    /// Error probability of a singleton packet in a slot of `slot_len` uses.
    pub(crate) fn singleton_error(&self, slot_len: f64) -> f64 {
        match self.decoding {
            Decoding::ErrorFree => 0.0,
            Decoding::FiniteBlocklength => ErrorModel::new(&self.channel).eps(self.bits, slot_len),
        }
    }
}

fn check_slots(slots: u64) -> Result<()> {
    if slots == 0 {
        return Err(Error::domain("at least one slot is required"));
    }
    Ok(())
}

/// `(M/K)(1 - 1/K)^(M-1)`: expected collision-free packets per slot.
fn collision_factor(devices: u64, slots: u64) -> f64 {
    let (m, k) = (devices as f64, slots as f64);
    m / k * (1.0 - 1.0 / k).powf(m - 1.0)
}

/// `P_S = (M/K)(1 - 1/K)^(M-1)(1 - eps*(D, n/K))` with real-valued slot
/// length `n/K`. This counts expected successful packets per slot.
pub fn aloha_success(cfg: &AlohaConfig, slots: u64) -> Result<f64> {
    check_slots(slots)?;
    aloha_success_at(cfg, slots, cfg.frame / slots as f64)
}

/// [`aloha_success`] with an explicit slot length, e.g. `floor(n/K)`.
pub fn aloha_success_at(cfg: &AlohaConfig, slots: u64, slot_len: f64) -> Result<f64> {
    check_slots(slots)?;
    Ok(collision_factor(cfg.devices, slots) * (1.0 - cfg.singleton_error(slot_len)))
}

/// Per-device delivery probability `(1 - 1/K)^(M-1)(1 - eps*(D, slot_len))`,
/// i.e. [`aloha_success_at`] without the `M/K` factor.
pub fn aloha_device_success_at(cfg: &AlohaConfig, slots: u64, slot_len: f64) -> Result<f64> {
    Ok(aloha_success_at(cfg, slots, slot_len)? * slots as f64 / cfg.devices as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlohaPlan {
    pub k_opt: u64,
    pub success: f64,
    /// `(K, P_S(K))` for `K = 1..=K_max`.
    pub profile: Vec<(u64, f64)>,
}

/// Exhaustive scan of `K = 1..=k_max` (default `4M`); ties go to the smaller `K`.
pub fn aloha_optimize(cfg: &AlohaConfig, k_max: Option<u64>) -> Result<AlohaPlan> {
    let k_max = k_max.unwrap_or(4 * cfg.devices);
    check_slots(k_max)?;
    let profile = (1..=k_max).map(|k| aloha_success(cfg, k).map(|p| (k, p))).collect::<Result<Vec<_>>>()?;
    let (k_opt, success) =
        profile.iter().copied().fold((1, f64::NEG_INFINITY), |best, (k, p)| if p > best.1 { (k, p) } else { best });
    Ok(AlohaPlan { k_opt, success, profile })
}
