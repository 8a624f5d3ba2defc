//! Threshold construction and the step-up / step-down rejection engines.
//!
//! SEV procedures compare `p_(i)` (or `p_(i) / w_i` when weighted) with
//! `t_i = alpha * xi(s(i)) / m`. STP procedures are step-down with the
//! generalized Lehmann-Romano critical values, optionally divided by the
//! harmonic correction constant for arbitrary dependence.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{PValueSet, RejectionOutcome, ScalingSpec, ShapeSpec, ThresholdSequence, WeightVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepMode {
    #[default]
    StepUp,
    StepDown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SevProcedureConfig {
    pub alpha: f64,
    pub scaling: ScalingSpec,
    pub shape: ShapeSpec,
    /// `None` means unit weights.
    pub weights: Option<WeightVector>,
    pub mode: StepMode,
}

impl SevProcedureConfig {
    pub fn new(alpha: f64, scaling: ScalingSpec) -> Self {
        Self {
            alpha,
            scaling,
            shape: ShapeSpec::Identity,
            weights: None,
            mode: StepMode::StepUp,
        }
    }

    /// Linear step-up (Benjamini-Hochberg).
    pub fn linear(alpha: f64) -> Self {
        Self::new(alpha, ScalingSpec::Linear)
    }

    /// `s = 1`: Bonferroni.
    pub fn bonferroni(alpha: f64) -> Self {
        Self::new(alpha, ScalingSpec::Constant(1.0))
    }

    pub fn with_shape(mut self, shape: ShapeSpec) -> Self {
        self.shape = shape;
        self
    }

    pub fn with_weights(mut self, weights: WeightVector) -> Self {
        self.weights = Some(weights);
        self
    }

    pub fn with_mode(mut self, mode: StepMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        check_alpha(self.alpha)?;
        self.scaling.validate(m)?;
        if let Some(w) = &self.weights {
            if w.len() != m {
                return Err(Error::LengthMismatch { expected: m, actual: w.len() });
            }
        }
        Ok(())
    }

    /// Weight of hypothesis `i` (1 when unweighted).
    pub fn weight(&self, i: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w.as_slice()[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dependence {
    /// Null p-values satisfy the Simes inequality (independence, MTP2, ...).
    #[default]
    SimesPositive,
    /// No assumption; thresholds are divided by the correction constant.
    Arbitrary,
}

/// Upper summation index `h` of the correction constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrectionUpper {
    /// `h = floor(beta * s(m)) + 1`, capped at `m`.
    #[default]
    Conservative,
    /// `h = floor(beta * s(m))`.
    Literal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StpProcedureConfig {
    pub alpha: f64,
    pub beta: f64,
    pub scaling: ScalingSpec,
    pub dependence: Dependence,
    pub correction_upper: CorrectionUpper,
}

impl StpProcedureConfig {
    pub fn new(alpha: f64, beta: f64, scaling: ScalingSpec) -> Self {
        Self {
            alpha,
            beta,
            scaling,
            dependence: Dependence::SimesPositive,
            correction_upper: CorrectionUpper::Conservative,
        }
    }

    /// `beta = 0`: Holm.
    pub fn holm(alpha: f64) -> Self {
        Self::new(alpha, 0.0, ScalingSpec::Linear)
    }

    pub fn with_dependence(mut self, dependence: Dependence) -> Self {
        self.dependence = dependence;
        self
    }

    pub fn with_correction_upper(mut self, upper: CorrectionUpper) -> Self {
        self.correction_upper = upper;
        self
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        check_alpha(self.alpha)?;
        if !(self.beta.is_finite() && self.beta >= 0.0) {
            return Err(Error::InvalidParameter(format!("beta must be >= 0, got {}", self.beta)));
        }
        self.scaling.validate(m)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("alpha must lie in (0, 1), got {alpha}")))
    }
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::Empty)
    } else {
        Ok(())
    }
}

/// SEV critical values `t_i = alpha * xi(s(i)) / m`, clamped to `[0, 1]`.
/// Weights are not folded in; see [`weighted_transform`].
pub fn sev_thresholds(cfg: &SevProcedureConfig, m: usize) -> Result<ThresholdSequence> {
    check_m(m)?;
    cfg.validate(m)?;
    let mf = m as f64;
    let raw: Vec<f64> = (1..=m)
        .map(|i| cfg.alpha * cfg.shape.eval(cfg.scaling.eval(i), m) / mf)
        .collect();
    ThresholdSequence::new(
        raw,
        cfg.alpha,
        format!("sev scaling={} shape={} alpha={}", cfg.scaling, cfg.shape, cfg.alpha),
    )
}

const SNAP: f64 = 1.0 / 4_294_967_296.0;

/// `floor(x)` after snapping values within 2^-32 of an integer onto it.
pub(crate) fn snapped_floor(x: f64) -> usize {
    let nearest = x.round();
    let x = if (x - nearest).abs() < SNAP { nearest } else { x };
    x.floor() as usize
}

/// `floor(beta * s(i)) + 1`.
pub fn stp_step(beta: f64, scaling: &ScalingSpec, i: usize) -> usize {
    snapped_floor(beta * scaling.eval(i)) + 1
}

/// The harmonic correction divisor `C_{l,h}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Correction {
    pub lower: usize,
    pub upper: usize,
    pub value: f64,
    /// `h < l`: the sum is empty and `value` is 1.
    pub empty: bool,
}

/// `sum_{i=l}^{h} 1/i`, smallest term first. Returns 1 when `h < l`.
pub fn harmonic_range(l: usize, h: usize) -> f64 {
    if h < l || l == 0 {
        return 1.0;
    }
    (l..=h).rev().map(|i| 1.0 / i as f64).sum()
}

/// Correction constant with `l = floor(beta * s(1)) + 1` and `h` chosen by
/// `upper`. `h` never exceeds `m`.
pub fn correction_constant(beta: f64, scaling: &ScalingSpec, m: usize, upper: CorrectionUpper) -> Result<Correction> {
    check_m(m)?;
    scaling.validate(m)?;
    let lower = stp_step(beta, scaling, 1);
    let top = snapped_floor(beta * scaling.eval(m));
    let upper = match upper {
        CorrectionUpper::Conservative => top + 1,
        CorrectionUpper::Literal => top,
    }
    .min(m);
    let empty = upper < lower;
    Ok(Correction {
        lower,
        upper,
        value: harmonic_range(lower, upper),
        empty,
    })
}

/// Generalized Lehmann-Romano step-down critical values.
pub fn stp_thresholds(cfg: &StpProcedureConfig, m: usize) -> Result<ThresholdSequence> {
    check_m(m)?;
    cfg.validate(m)?;
    let raw: Vec<f64> = (1..=m)
        .map(|i| {
            let k = stp_step(cfg.beta, &cfg.scaling, i);
            let denom = if i <= k { m } else { m + k - i };
            k as f64 * cfg.alpha / denom as f64
        })
        .collect();
    let descriptor = format!(
        "stp scaling={} beta={} alpha={} dependence={:?}",
        cfg.scaling, cfg.beta, cfg.alpha, cfg.dependence
    );
    match cfg.dependence {
        Dependence::SimesPositive => ThresholdSequence::new(raw, cfg.alpha, descriptor),
        Dependence::Arbitrary => {
            let c = correction_constant(cfg.beta, &cfg.scaling, m, cfg.correction_upper)?;
            let corrected = raw.into_iter().map(|t| t / c.value).collect();
            let mut seq = ThresholdSequence::new(corrected, cfg.alpha, descriptor)?;
            seq.correction = Some(c.value);
            if c.empty {
                seq.warnings.push(format!(
                    "empty correction sum (l = {}, h = {}); no correction applied",
                    c.lower, c.upper
                ));
            }
            Ok(seq)
        }
    }
}

/// Replaces each `p_i` by `p_i / w_i`. Results may exceed 1.
pub fn weighted_transform(pvals: &PValueSet, weights: &WeightVector) -> Result<PValueSet> {
    if weights.len() != pvals.m() {
        return Err(Error::LengthMismatch {
            expected: pvals.m(),
            actual: weights.len(),
        });
    }
    let values = pvals
        .values()
        .iter()
        .zip(weights.as_slice())
        .enumerate()
        .map(|(index, (&p, &w))| {
            if w.is_finite() && w > 0.0 {
                Ok(p / w)
            } else {
                Err(Error::InvalidWeight { index, value: w })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PValueSet::from_unchecked(values, pvals.ids().map(<[String]>::to_vec)))
}

fn check_lengths(pvals: &PValueSet, t: &ThresholdSequence) -> Result<()> {
    if t.len() != pvals.m() {
        return Err(Error::LengthMismatch {
            expected: pvals.m(),
            actual: t.len(),
        });
    }
    Ok(())
}

/// Largest `i` with `sorted[i-1] <= t_i`, 0 if none.
pub(crate) fn step_up_boundary(sorted: impl DoubleEndedIterator<Item = f64> + ExactSizeIterator, t: &[f64]) -> usize {
    let m = sorted.len();
    sorted
        .rev()
        .zip(t.iter().rev())
        .position(|(p, &ti)| p <= ti)
        .map_or(0, |pos| m - pos)
}

/// Largest `i` such that every rank `j <= i` has `sorted[j-1] <= t_j`.
pub(crate) fn step_down_boundary(sorted: impl Iterator<Item = f64>, t: &[f64]) -> usize {
    sorted.zip(t).take_while(|(p, &ti)| *p <= ti).count()
}

pub fn step_up(pvals: &PValueSet, t: &ThresholdSequence) -> Result<RejectionOutcome> {
    check_lengths(pvals, t)?;
    let sorted = pvals.order().iter().map(|&i| pvals.value(i));
    Ok(RejectionOutcome::from_boundary(pvals, step_up_boundary(sorted, t.values())))
}

pub fn step_down(pvals: &PValueSet, t: &ThresholdSequence) -> Result<RejectionOutcome> {
    check_lengths(pvals, t)?;
    let sorted = pvals.order().iter().map(|&i| pvals.value(i));
    Ok(RejectionOutcome::from_boundary(pvals, step_down_boundary(sorted, t.values())))
}

pub fn run_sev_procedure(pvals: &PValueSet, cfg: &SevProcedureConfig) -> Result<RejectionOutcome> {
    let m = pvals.m();
    cfg.validate(m)?;
    let t = sev_thresholds(cfg, m)?;
    let weighted;
    let input = match &cfg.weights {
        Some(w) if !w.is_unit() => {
            weighted = weighted_transform(pvals, w)?;
            &weighted
        }
        _ => pvals,
    };
    match cfg.mode {
        StepMode::StepUp => step_up(input, &t),
        StepMode::StepDown => step_down(input, &t),
    }
}

/// STP control is a step-down statement; the procedure is always step-down.
pub fn run_stp_procedure(pvals: &PValueSet, cfg: &StpProcedureConfig) -> Result<RejectionOutcome> {
    let t = stp_thresholds(cfg, pvals.m())?;
    step_down(pvals, &t)
}
