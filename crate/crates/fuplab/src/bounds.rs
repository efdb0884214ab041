//! Closed-form exponent tables.
//!
//! Every explicit constant the uncertainty-principle machinery produces —
//! the main exponent, the iteration constants C′_R, L, θ, ε₁, the
//! hyperbolic-surface gap improvement, and the open-quantum-map exponents —
//! evaluated in 256-bit log-space arithmetic. The raw values are far below
//! f64 range (10^−447 is a mild case), so results are reported as
//! (mantissa, log10) pairs.

use crate::mp::{ln10, MpFix};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// A positive real stored as log10, with the mantissa in [1, 10).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LogValue {
    pub mantissa: f64,
    pub log10: f64,
}

impl LogValue {
    fn from_log10(l: &MpFix) -> Self {
        let log10 = l.to_f64();
        let frac = log10 - log10.floor();
        LogValue {
            mantissa: 10f64.powf(frac),
            log10,
        }
    }
}

/// Spectral-gap improvement for the quantum baker map family. Explicit only
/// below dimension 1/2; above it the underlying result is existential.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind")]
pub enum BakerGap {
    Explicit { leading: f64, gain: LogValue },
    NoExplicitConstant { leading: f64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsTable {
    pub delta: f64,
    pub delta_prime: f64,
    pub c_r: f64,
    /// Main uncertainty exponent ε₀ = (5C_R)^{−80(1/(δ(1−δ)) + 1/(δ′(1−δ′)))}.
    pub eps0: LogValue,
    /// Iteration regularity constant C′_R = (2C_R)^{2/(1−max(δ,δ′))}.
    pub c_r_prime: LogValue,
    /// Smallest admissible discretization base
    /// L = (2C′_R (6C_R)^{1/δ+1/δ′})⁶.
    pub l_min: LogValue,
    /// Derivative-norm weight θ = 1/(8 C′_R²).
    pub theta: LogValue,
    /// Per-scale contraction ε₁ = 10⁻⁵ (C_R^{1/δ+1/δ′} C′_R)⁻⁴ L⁻⁵ at L = l_min.
    pub eps1: LogValue,
    /// Exponent −log(1−ε₁)/(2 log L) produced by iterating the contraction.
    pub eps0_iter: LogValue,
    /// Essential-spectral-gap improvement (13C_R)^{−320/(δ(1−δ))} for
    /// hyperbolic surfaces; the gap is `hyperbolic_leading + gain`.
    pub hyperbolic_gain: LogValue,
    pub hyperbolic_leading: f64,
    /// Uncertainty exponent (5C_R)^{−160/(δ(1−δ))} in the equal-dimension
    /// discrete setting.
    pub oqm_eps0: LogValue,
    /// Baker-map gap β = (1/2 − δ) + (40 M^{3δ})^{−160/(δ(1−δ))}, present
    /// when base and alphabet size were supplied.
    pub baker: Option<BakerGap>,
}

/// Evaluate the full exponent table.
///
/// `cantor` optionally supplies (base M, alphabet size |A|); when present,
/// both dimensions are replaced by δ = log|A|/log M (computed in extended
/// precision) and the baker-map entry is filled in, exploiting the exact
/// identity M^{3δ} = |A|³.
pub fn bounds_table(
    delta: f64,
    delta_prime: f64,
    c_r: f64,
    cantor: Option<(u64, u64)>,
) -> Result<BoundsTable, BoundsError> {
    if !(c_r >= 1.0) {
        return Err(BoundsError::InvalidArgument(format!(
            "regularity constant must be >= 1, got {c_r}"
        )));
    }
    let (delta_mp, deltap_mp, delta_f, deltap_f, baker_base) = match cantor {
        Some((m, a)) => {
            if m < 2 || a < 2 || a >= m {
                return Err(BoundsError::InvalidArgument(format!(
                    "cantor parameters need 2 <= |A| < M, got M={m}, |A|={a}"
                )));
            }
            let d = MpFix::from_u64(a).ln().div(&MpFix::from_u64(m).ln());
            let df = d.to_f64();
            (d.clone(), d, df, df, Some((m, a)))
        }
        None => {
            for (name, d) in [("delta", delta), ("delta'", delta_prime)] {
                if !(d > 0.0 && d < 1.0) {
                    return Err(BoundsError::InvalidArgument(format!(
                        "{name} must lie strictly in (0,1), got {d}"
                    )));
                }
            }
            (
                MpFix::from_f64(delta),
                MpFix::from_f64(delta_prime),
                delta,
                delta_prime,
                None,
            )
        }
    };

    let one = MpFix::from_u64(1);
    let crm = MpFix::from_f64(c_r);
    // 1/(δ(1−δ)) and the δ′ analogue.
    let inv_dd = one.div(&delta_mp.mul(&one.sub(&delta_mp)));
    let inv_dd_p = one.div(&deltap_mp.mul(&one.sub(&deltap_mp)));
    // 1/δ + 1/δ′.
    let inv_sum = one.div(&delta_mp).add(&one.div(&deltap_mp));

    // log10 of the main exponent.
    let log_5cr = MpFix::from_u64(5).mul(&crm).log10();
    let eps0_log = log_5cr.mul(&inv_dd.add(&inv_dd_p)).mul_i64(-80);

    // C′_R = (2C_R)^{2/(1−max(δ,δ′))}.
    let dmax = if delta_f >= deltap_f {
        delta_mp.clone()
    } else {
        deltap_mp.clone()
    };
    let cpr_log = MpFix::from_u64(2)
        .mul(&crm)
        .log10()
        .mul_i64(2)
        .div(&one.sub(&dmax));

    // L = (2 C′_R (6C_R)^{1/δ+1/δ′})⁶.
    let log_6cr = MpFix::from_u64(6).mul(&crm).log10();
    let lmin_log = MpFix::from_u64(2)
        .log10()
        .add(&cpr_log)
        .add(&log_6cr.mul(&inv_sum))
        .mul_i64(6);

    // θ = 1/(8 C′_R²).
    let theta_log = MpFix::from_u64(8).log10().add(&cpr_log.mul_i64(2)).neg();

    // ε₁ = 10⁻⁵ (C_R^{1/δ+1/δ′} C′_R)⁻⁴ L⁻⁵.
    let eps1_log = MpFix::from_i64(-5)
        .sub(&crm.log10().mul(&inv_sum).add(&cpr_log).mul_i64(4))
        .sub(&lmin_log.mul_i64(5));

    // −log(1−ε₁)/(2 log L): ε₁ ≤ 10^−78 for every admissible input, so the
    // series correction to −log(1−ε₁) = ε₁ is below this precision.
    let ln_l = lmin_log.mul(ln10());
    let eps0_iter_log = eps1_log.sub(&ln_l.mul_i64(2).log10());

    // Hyperbolic gap improvement (13C_R)^{−320/(δ(1−δ))}.
    let hyp_log = MpFix::from_u64(13)
        .mul(&crm)
        .log10()
        .mul(&inv_dd)
        .mul_i64(-320);

    // Equal-dimension discrete exponent (5C_R)^{−160/(δ(1−δ))}.
    let oqm_log = log_5cr.mul(&inv_dd).mul_i64(-160);

    let baker = baker_base.map(|(_, a)| {
        let leading = 0.5 - delta_f;
        if delta_f < 0.5 {
            // (40 M^{3δ})^{−160/(δ(1−δ))} with M^{3δ} = |A|³ exactly.
            let base = MpFix::from_u64(40 * a * a * a);
            let gain_log = base.log10().mul(&inv_dd).mul_i64(-160);
            BakerGap::Explicit {
                leading,
                gain: LogValue::from_log10(&gain_log),
            }
        } else {
            BakerGap::NoExplicitConstant { leading }
        }
    });

    Ok(BoundsTable {
        delta: delta_f,
        delta_prime: deltap_f,
        c_r,
        eps0: LogValue::from_log10(&eps0_log),
        c_r_prime: LogValue::from_log10(&cpr_log),
        l_min: LogValue::from_log10(&lmin_log),
        theta: LogValue::from_log10(&theta_log),
        eps1: LogValue::from_log10(&eps1_log),
        eps0_iter: LogValue::from_log10(&eps0_iter_log),
        hyperbolic_gain: LogValue::from_log10(&hyp_log),
        hyperbolic_leading: 0.5 - delta_f,
        oqm_eps0: LogValue::from_log10(&oqm_log),
        baker,
    })
}
