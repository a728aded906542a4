use rand::Rng;
use serde::Serialize;
use serde_json::json;

use super::{check_trials, run_trials, Moments, SimReport};
use crate::awgn::ErrorModel;
use crate::protocols::{AlohaConfig, TwoWayConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlohaSimReport {
    /// Successful packets per slot, averaged over frames.
    pub per_slot_throughput: SimReport,
    /// Successful packets per device, averaged over frames.
    pub per_device_success: SimReport,
}

fn scaled(m: Moments, factor: f64) -> Moments {
    Moments { sum: m.sum * factor, sum_sq: m.sum_sq * factor * factor }
}

/// Simulates `trials` frames of framed ALOHA with `slots` slots of
/// `floor(n/K)` channel uses each.
///
/// Every device picks a uniform slot; slots chosen by two or more devices
/// lose all their packets, and a singleton packet is lost with probability
/// `eps*(D, floor(n/K))`.
pub fn sim_aloha(cfg: &AlohaConfig, slots: u64, trials: u64, seed: u64) -> Result<AlohaSimReport> {
    check_trials(trials)?;
    if slots == 0 {
        return Err(Error::domain("at least one slot is required"));
    }
    let slot_len = (cfg.frame / slots as f64).floor();
    let eps = cfg.singleton_error(slot_len);
    let devices = cfg.devices;

    let successes = run_trials(seed, trials, |rng| {
        let mut occupancy = vec![0u32; slots as usize];
        for _ in 0..devices {
            occupancy[rng.random_range(0..slots) as usize] += 1;
        }
        let mut delivered = 0u32;
        for &count in &occupancy {
            if count == 1 && rng.random::<f64>() >= eps {
                delivered += 1;
            }
        }
        f64::from(delivered)
    });

    let config = json!({
        "devices": devices,
        "bits": cfg.bits,
        "frame": cfg.frame,
        "slots": slots,
        "slot_length": slot_len,
        "channel": cfg.channel,
        "decoding": cfg.decoding,
    });
    Ok(AlohaSimReport {
        per_slot_throughput: SimReport::mean(
            "per_slot_throughput",
            scaled(successes, 1.0 / slots as f64),
            trials,
            seed,
            config.clone(),
        ),
        per_device_success: SimReport::mean(
            "per_device_success",
            scaled(successes, 1.0 / devices as f64),
            trials,
            seed,
            config,
        ),
    })
}

/// Simulates the data/ACK exchange with split `(n1, n2)`; a trial succeeds
/// when both packets decode.
pub fn sim_twoway(cfg: &TwoWayConfig, n1: f64, n2: f64, trials: u64, seed: u64) -> Result<SimReport> {
    check_trials(trials)?;
    if !(n1 >= 1.0 && n2 >= 1.0) {
        return Err(Error::domain(format!("each direction needs at least one channel use, got ({n1}, {n2})")));
    }
    let model = ErrorModel::new(&cfg.channel);
    let eps_data = model.eps(cfg.data_bits, n1);
    let eps_ack = model.eps(cfg.ack_bits, n2);
    let m = run_trials(seed, trials, |rng| {
        let data_ok = rng.random::<f64>() >= eps_data;
        let ack_ok = rng.random::<f64>() >= eps_ack;
        if data_ok && ack_ok {
            1.0
        } else {
            0.0
        }
    });
    let config = json!({
        "data_bits": cfg.data_bits,
        "ack_bits": cfg.ack_bits,
        "n1": n1,
        "n2": n2,
        "channel": cfg.channel,
    });
    Ok(SimReport::proportion("twoway_reliability", m.sum, trials, seed, config))
}
