use serde::Serialize;

use super::m_star;
use crate::{Error, Result};

/// Receiver channel-state knowledge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CsiMode {
    /// Perfect CSI at the receiver.
    Coherent,
    /// No CSI anywhere; estimation overhead is part of the tradeoff.
    Noncoherent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DmtPoint {
    pub diversity: f64,
    pub multiplexing: f64,
}

/// Piecewise-linear diversity-multiplexing tradeoff.
///
/// Breakpoints run from full diversity (`d = m_t m_r`, `r = 0`) to full
/// multiplexing (`d = 0`), with `d` strictly decreasing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DmtCurve {
    pub breakpoints: Vec<DmtPoint>,
    /// Factor applied to the multiplexing gains, `1 - m*/n_c` without CSI.
    pub scaling: f64,
}

impl DmtCurve {
    pub fn max_diversity(&self) -> f64 {
        self.breakpoints[0].diversity
    }
}

fn check_antennas(tx: usize, rx: usize) -> Result<()> {
    if tx == 0 || rx == 0 {
        return Err(Error::domain("antenna counts must be at least 1"));
    }
    Ok(())
}

/// Breakpoints `((m_t - k)(m_r - k), s k)` for `k = 0..=min(m_t, m_r)`.
pub fn dmt_curve(tx: usize, rx: usize, mode: CsiMode, coherence: Option<u64>) -> Result<DmtCurve> {
    check_antennas(tx, rx)?;
    let scaling = match (mode, coherence) {
        (CsiMode::Coherent, None) => 1.0,
        (CsiMode::Coherent, Some(nc)) => {
            if nc < tx as u64 {
                return Err(Error::Validity(format!(
                    "coherent tradeoff requires n_c >= m_t, got n_c = {nc} < m_t = {tx}"
                )));
            }
            1.0
        }
        (CsiMode::Noncoherent, None) => {
            return Err(Error::Validity("noncoherent tradeoff requires a coherence interval".into()))
        }
        (CsiMode::Noncoherent, Some(nc)) => {
            let ms = m_star(tx, rx, nc);
            let needed = 2 * ms + rx as u64 + 1;
            if nc < needed {
                return Err(Error::Validity(format!(
                    "noncoherent tradeoff requires n_c >= 2m* + m_r + 1 = {needed}, got n_c = {nc}"
                )));
            }
            1.0 - ms as f64 / nc as f64
        }
    };
    let breakpoints = (0..=tx.min(rx))
        .map(|k| DmtPoint { diversity: ((tx - k) * (rx - k)) as f64, multiplexing: scaling * k as f64 })
        .collect();
    Ok(DmtCurve { breakpoints, scaling })
}

/// Multiplexing gain at diversity `d` by linear interpolation.
pub fn dmt_eval(curve: &DmtCurve, d: f64) -> Result<f64> {
    let top = curve.max_diversity();
    if !(0.0..=top).contains(&d) {
        return Err(Error::domain(format!("diversity {d} outside [0, {top}]")));
    }
    for pair in curve.breakpoints.windows(2) {
        let (hi, lo) = (pair[0], pair[1]);
        if d == hi.diversity {
            return Ok(hi.multiplexing);
        }
        if d >= lo.diversity {
            let t = (hi.diversity - d) / (hi.diversity - lo.diversity);
            return Ok(hi.multiplexing + t * (lo.multiplexing - hi.multiplexing));
        }
    }
    // single-point curves cannot occur (min(m_t, m_r) >= 1), so d == 0 is the last breakpoint
    Ok(curve.breakpoints.last().map_or(0.0, |p| p.multiplexing))
}

/// High-SNR pre-log `m*(1 - m*/n_c)` of the noncoherent block-fading capacity.
pub fn noncoherent_prelog(tx: usize, rx: usize, coherence: u64) -> Result<f64> {
    check_antennas(tx, rx)?;
    if coherence == 0 {
        return Err(Error::domain("coherence interval must be at least 1"));
    }
    let ms = m_star(tx, rx, coherence) as f64;
    Ok(ms * (1.0 - ms / coherence as f64))
}
