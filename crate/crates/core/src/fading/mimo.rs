use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::json;

use super::{check_rate, rayleigh_coefficient, QuasiStaticConfig};
use crate::mcsim::{check_trials, run_trials, SimReport};
use crate::{Error, Result};

/// `log2 det(I + (snr/m_t) H^H H)` for an `m_t x m_r` fading matrix `H`.
fn mutual_information(cfg: &QuasiStaticConfig, h: &DMatrix<Complex64>) -> f64 {
    let scale = Complex64::from(cfg.snr / cfg.tx_antennas as f64);
    let gram = DMatrix::identity(cfg.rx_antennas, cfg.rx_antennas) + h.adjoint() * h * scale;
    let chol = gram.cholesky().expect("I + H^H Q H is positive definite");
    let l = chol.l_dirty();
    2.0 * (0..cfg.rx_antennas).map(|i| l[(i, i)].re.ln()).sum::<f64>() * std::f64::consts::LOG2_E
}

/// Monte-Carlo outage probability of the `branches`-fold block-fading MIMO
/// channel with isotropic input `(snr/m_t) I`:
/// `P[(1/l) sum_k log2 det(I + H_k^H Q H_k) <= rate]`.
pub fn outage_prob_mimo_mc(
    cfg: &QuasiStaticConfig,
    branches: u64,
    rate: f64,
    trials: u64,
    seed: u64,
) -> Result<SimReport> {
    check_rate(rate)?;
    check_trials(trials)?;
    if branches == 0 {
        return Err(Error::domain("branch count must be at least 1"));
    }
    let (tx, rx) = (cfg.tx_antennas, cfg.rx_antennas);
    let m = run_trials(seed, trials, |rng| {
        let total: f64 = (0..branches)
            .map(|_| {
                let h = DMatrix::from_fn(tx, rx, |_, _| rayleigh_coefficient(rng));
                mutual_information(cfg, &h)
            })
            .sum();
        if total / branches as f64 <= rate {
            1.0
        } else {
            0.0
        }
    });
    let config = json!({
        "snr": cfg.snr,
        "tx_antennas": tx,
        "rx_antennas": rx,
        "branches": branches,
        "rate": rate,
    });
    Ok(SimReport::proportion("outage_probability", m.sum, trials, seed, config))
}
