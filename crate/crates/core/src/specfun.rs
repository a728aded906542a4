//! Gaussian tail function `Q`, its inverse, and `ln Q`.
//!
//! `Q(x) = P[Z > x]` for a standard normal `Z`. In the central region the
//! value comes from `erfc`; beyond `|x| = 8` the tail is evaluated in the log
//! domain through the Mills-ratio continued fraction so that probabilities far
//! below `f64::MIN_POSITIVE` keep a usable logarithm.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// Boundary of the `erfc` region.
const CENTRAL: f64 = 8.0;

/// Depth of the backward continued-fraction evaluation for the Mills ratio.
const MILLS_DEPTH: u32 = 200;

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(Error::domain(format!("probability {value} outside [0, 1]")))
        }
    }

    /// Builds a probability from a value known to lie in `[0, 1]` up to
    /// rounding; the value is clamped.
    pub(crate) fn saturating(value: f64) -> Self {
        Probability(value.clamp(0.0, 1.0))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `1 - p`.
    pub fn complement(self) -> Probability {
        Probability(1.0 - self.0)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("Q argument must be finite, got {x}")))
    }
}

/// `ln φ(x)` for the standard normal density.
fn ln_pdf(x: f64) -> f64 {
    -0.5 * x * x - 0.5 * (2.0 * PI).ln()
}

/// Mills ratio `Q(x)/φ(x)` for large positive `x`.
fn mills_ratio(x: f64) -> f64 {
    // R(x) = 1/(x + 1/(x + 2/(x + 3/(x + ...))))
    let mut t = x;
    for k in (1..=MILLS_DEPTH).rev() {
        t = x + f64::from(k) / t;
    }
    1.0 / t
}

/// `Q(x)` without argument checks.
pub(crate) fn q_raw(x: f64) -> f64 {
    if x > CENTRAL {
        ln_q_raw(x).exp()
    } else if x < -CENTRAL {
        1.0 - ln_q_raw(-x).exp()
    } else {
        0.5 * libm::erfc(x * FRAC_1_SQRT_2)
    }
}

/// `ln Q(x)` without argument checks.
pub(crate) fn ln_q_raw(x: f64) -> f64 {
    if x > CENTRAL {
        ln_pdf(x) + mills_ratio(x).ln()
    } else if x < -CENTRAL {
        (-ln_q_raw(-x).exp()).ln_1p()
    } else {
        (0.5 * libm::erfc(x * FRAC_1_SQRT_2)).ln()
    }
}

/// Gaussian tail probability `Q(x) = P[Z > x]`.
pub fn q_func(x: f64) -> Result<Probability> {
    check_finite(x)?;
    Ok(Probability::saturating(q_raw(x)))
}

/// Natural logarithm of `Q(x)`, finite for every finite `x`.
pub fn log_q_func(x: f64) -> Result<f64> {
    check_finite(x)?;
    Ok(ln_q_raw(x))
}

/// Inverse of the Gaussian tail function: the `x` with `Q(x) = p`.
pub fn q_inv(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("Q^-1 needs p in (0, 1), got {p}")));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if p > 0.5 {
        // 1 - p is exact for p >= 0.5
        return Ok(-upper_tail_inverse(1.0 - p));
    }
    Ok(upper_tail_inverse(p))
}

/// Solves `Q(x) = p` for `p < 0.5` (so `x > 0`).
fn upper_tail_inverse(p: f64) -> f64 {
    let ln_p = p.ln();
    let mut x = -normal_quantile_initial(p);
    // Newton on ln Q(x) - ln p; the derivative is -φ(x)/Q(x).
    for _ in 0..2 {
        let ln_q = ln_q_raw(x);
        x += (ln_q - ln_p) * (ln_q - ln_pdf(x)).exp();
    }
    x
}

/// Rational approximation of the standard normal quantile `Φ^-1(p)`
/// (Acklam), relative error about 1e-9. Valid for `0 < p < 1`.
fn normal_quantile_initial(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] =
        [7.784_695_709_041_462e-3, 3.224_671_290_700_398e-1, 2.445_134_137_142_996, 3.754_408_661_907_416];
    const P_LOW: f64 = 0.02425;

    let tail = |q: f64| {
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    if p < P_LOW {
        tail((-2.0 * p.ln()).sqrt())
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -tail((-2.0 * (1.0 - p).ln()).sqrt())
    }
}
