//! The gain criterion `E[TP] - lambda E[FP]`: the two-test closed form and
//! the Monte-Carlo search for the best scaling parameter.

use serde::Serialize;

use super::model::{draw_pvalues, GaussianShiftModel};
use super::{run_replications, McSettings};
use crate::error::{Error, Result};
use crate::metrics::Estimate;
use crate::normal::normal_cdf;
use crate::procedures::{sev_thresholds, step_up_boundary, SevProcedureConfig};
use crate::types::ScalingSpec;

/// One null statistic `N(0, 1)` and one alternative `N(delta, 1)`, both
/// rejected above a common critical value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoTestModel {
    pub delta: f64,
    pub lambda: f64,
}

impl TwoTestModel {
    pub fn new(delta: f64, lambda: f64) -> Result<Self> {
        if !(delta.is_finite() && delta >= 0.0) {
            return Err(Error::InvalidParameter(format!("delta must be >= 0, got {delta}")));
        }
        if !(lambda.is_finite() && lambda >= 1.0) {
            return Err(Error::InvalidParameter(format!("lambda must be >= 1, got {lambda}")));
        }
        Ok(Self { delta, lambda })
    }
}

/// `Phi(delta - cv) - lambda * Phi(-cv)`.
pub fn two_test_gain(model: &TwoTestModel, cv: f64) -> f64 {
    normal_cdf(model.delta - cv) - model.lambda * normal_cdf(-cv)
}

/// `log(lambda) / delta + delta / 2`.
pub fn two_test_optimal_cv(model: &TwoTestModel) -> Result<f64> {
    if model.delta <= 0.0 {
        return Err(Error::InvalidParameter("optimal critical value needs delta > 0".into()));
    }
    Ok(model.lambda.ln() / model.delta + model.delta / 2.0)
}

/// Effect size `sqrt(2 log lambda)` at which the optimal critical value is
/// smallest (and equal to it).
pub fn minimizing_effect(lambda: f64) -> f64 {
    (2.0 * lambda.ln()).sqrt()
}

/// Price `lambda = exp(cv^2 / 2)` that makes `cv` the smallest optimal
/// critical value.
pub fn critical_value_price(cv: f64) -> f64 {
    (cv * cv / 2.0).exp()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", content = "values", rename_all = "snake_case")]
pub enum ParameterGrid {
    /// Power scaling `s(r) = r^gamma`.
    Gamma(Vec<f64>),
    /// Truncated linear scaling `s(r) = min(r, tau)`.
    Tau(Vec<usize>),
}

impl ParameterGrid {
    pub fn len(&self) -> usize {
        match self {
            ParameterGrid::Gamma(g) => g.len(),
            ParameterGrid::Tau(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn value(&self, i: usize) -> f64 {
        match self {
            ParameterGrid::Gamma(g) => g[i],
            ParameterGrid::Tau(t) => t[i] as f64,
        }
    }

    pub fn scaling(&self, i: usize) -> ScalingSpec {
        match self {
            ParameterGrid::Gamma(g) => ScalingSpec::Power(g[i]),
            ParameterGrid::Tau(t) => ScalingSpec::TruncatedLinear(t[i]),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ParameterGrid::Gamma(_) => "gamma",
            ParameterGrid::Tau(_) => "tau",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GainStudyConfig {
    pub alpha: f64,
    pub lambdas: Vec<f64>,
    pub grid: ParameterGrid,
}

impl GainStudyConfig {
    fn validate(&self, m: usize) -> Result<()> {
        if self.lambdas.is_empty() || self.grid.is_empty() {
            return Err(Error::InvalidParameter("lambda and parameter grids must be non-empty".into()));
        }
        if self.lambdas.iter().any(|&l| !(l.is_finite() && l >= 1.0)) {
            return Err(Error::InvalidParameter("lambdas must be >= 1".into()));
        }
        if self.lambdas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("lambda grid must be strictly increasing".into()));
        }
        if (1..self.grid.len()).any(|i| self.grid.value(i - 1) >= self.grid.value(i)) {
            return Err(Error::InvalidParameter("parameter grid must be strictly increasing".into()));
        }
        for i in 0..self.grid.len() {
            self.grid.scaling(i).validate(m)?;
        }
        Ok(())
    }
}

/// Estimated gain of one `(lambda, parameter)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GainCell {
    pub lambda: f64,
    pub parameter: f64,
    pub gain: Estimate,
}

/// Best parameter for one `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub lambda: f64,
    pub argmax: f64,
    pub max_gain: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GainStudy {
    pub config: GainStudyConfig,
    pub model: GaussianShiftModel,
    pub settings: McSettings,
    /// Row-major over `(lambda, parameter)`.
    pub cells: Vec<GainCell>,
    pub curve: Vec<CurvePoint>,
}

/// Estimates the gain of the step-up procedure for every parameter in the
/// grid and picks, for each `lambda`, the parameter with the largest
/// estimated gain (ties go to the smaller parameter).
///
/// All parameters share the same draws within a replication, so the
/// comparison across the grid is free of between-draw noise.
pub fn optimize_parameter(study: &GainStudyConfig, model: &GaussianShiftModel, settings: &McSettings) -> Result<GainStudy> {
    model.validate()?;
    let m = model.m();
    study.validate(m)?;
    let thresholds = (0..study.grid.len())
        .map(|i| sev_thresholds(&SevProcedureConfig::new(study.alpha, study.grid.scaling(i)), m))
        .collect::<Result<Vec<_>>>()?;

    // per replication, per parameter: (TP, FP)
    let counts: Vec<Vec<(u32, u32)>> = run_replications(settings, |rng| {
        let (pvals, truth) = draw_pvalues(model, rng)?;
        let mut nulls_before = Vec::with_capacity(m + 1);
        nulls_before.push(0u32);
        for &i in pvals.order() {
            let last = *nulls_before.last().unwrap();
            nulls_before.push(last + u32::from(truth.is_null(i)));
        }
        Ok(thresholds
            .iter()
            .map(|t| {
                let sorted = pvals.order().iter().map(|&i| pvals.value(i));
                let u = step_up_boundary(sorted, t.values());
                let fp = nulls_before[u];
                (u as u32 - fp, fp)
            })
            .collect())
    })?;

    let mut cells = Vec::with_capacity(study.lambdas.len() * study.grid.len());
    let mut curve = Vec::with_capacity(study.lambdas.len());
    for &lambda in &study.lambdas {
        let mut best: Option<GainCell> = None;
        for j in 0..study.grid.len() {
            let gain = Estimate::from_samples(counts.iter().map(|row| {
                let (tp, fp) = row[j];
                f64::from(tp) - lambda * f64::from(fp)
            }));
            let cell = GainCell {
                lambda,
                parameter: study.grid.value(j),
                gain,
            };
            if best.is_none_or(|b| cell.gain.estimate > b.gain.estimate) {
                best = Some(cell);
            }
            cells.push(cell);
        }
        let best = best.expect("grid is non-empty");
        curve.push(CurvePoint {
            lambda,
            argmax: best.parameter,
            max_gain: best.gain.estimate,
            std_error: best.gain.std_error,
        });
    }
    Ok(GainStudy {
        config: study.clone(),
        model: *model,
        settings: *settings,
        cells,
        curve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_anchor_price_for_1_96() {
        let lambda = (3.84f64 / 2.0).exp();
        assert!((lambda - 6.8).abs() < 0.05);
        let delta = 3.84f64.sqrt();
        assert!((delta - 1.9596).abs() < 1e-4);
        // exact price: the optimum sits at delta itself
        let cv = two_test_optimal_cv(&TwoTestModel::new(delta, lambda).unwrap()).unwrap();
        assert!((cv - delta).abs() < 1e-15);
        // rounded price 6.8: log(6.8) / 1.9596 + 0.9798
        let cv = two_test_optimal_cv(&TwoTestModel::new(delta, 6.8).unwrap()).unwrap();
        assert!((cv - 1.958).abs() < 5e-4, "{cv}");
        assert!((critical_value_price(1.645) - 3.9).abs() < 0.05);
    }

    #[test]
    fn unit_price_is_symmetric() {
        let model = TwoTestModel::new(2.0, 1.0).unwrap();
        let cv = two_test_optimal_cv(&model).unwrap();
        assert_eq!(cv, 1.0);
        let h = 1e-5;
        let slope = (two_test_gain(&model, cv + h) - two_test_gain(&model, cv - h)) / (2.0 * h);
        assert!(slope.abs() < 1e-9);
        for x in [0.1, 0.5, 1.3] {
            let d = two_test_gain(&model, cv + x) - two_test_gain(&model, cv - x);
            assert!(d.abs() < 1e-15);
        }
    }

    #[test]
    fn zero_effect_has_no_optimal_cv() {
        let model = TwoTestModel::new(0.0, 2.0).unwrap();
        assert!(two_test_optimal_cv(&model).is_err());
        assert!(TwoTestModel::new(1.0, 0.5).is_err());
        assert!(TwoTestModel::new(-1.0, 2.0).is_err());
    }

    #[test]
    fn minimizing_effect_is_minimum() {
        for lambda in [1.5, 3.0, 6.8, 30.0] {
            let d = minimizing_effect(lambda);
            let at = |delta: f64| two_test_optimal_cv(&TwoTestModel::new(delta, lambda).unwrap()).unwrap();
            assert!((at(d) - d).abs() < 1e-12);
            assert!(at(d * 0.9) > at(d) && at(d * 1.1) > at(d));
        }
    }

    #[test]
    fn separated_mixture_prefers_smallest_gamma() {
        let study = GainStudyConfig {
            alpha: 0.05,
            lambdas: vec![1.0, 10.0],
            grid: ParameterGrid::Gamma(vec![0.0, 0.5, 1.0]),
        };
        let out = optimize_parameter(&study, &GaussianShiftModel::new(15, 5, 20.0), &McSettings::new(200, 1)).unwrap();
        assert_eq!(out.cells.len(), 6);
        // Bonferroni: E[FP] = 15 * 0.05 / 20
        for p in &out.curve {
            assert_eq!(p.argmax, 0.0);
            assert!(p.max_gain <= 5.0 && p.max_gain > 5.0 - 2.0 * p.lambda * 0.0375, "{p:?}");
        }
    }

    #[test]
    fn complete_null_prefers_bonferroni() {
        let study = GainStudyConfig {
            alpha: 0.05,
            lambdas: vec![2.0],
            grid: ParameterGrid::Gamma(vec![0.0, 1.0]),
        };
        let out = optimize_parameter(&study, &GaussianShiftModel::complete_null(100), &McSettings::new(2000, 2)).unwrap();
        assert_eq!(out.curve[0].argmax, 0.0);
        assert!(out.curve[0].max_gain <= 0.0);
    }

    #[test]
    fn singleton_grid() {
        let study = GainStudyConfig {
            alpha: 0.05,
            lambdas: vec![3.0],
            grid: ParameterGrid::Tau(vec![4]),
        };
        let out = optimize_parameter(&study, &GaussianShiftModel::new(20, 5, 2.0), &McSettings::new(50, 3)).unwrap();
        assert_eq!(out.curve.len(), 1);
        assert_eq!(out.curve[0].argmax, 4.0);
    }

    #[test]
    fn invalid_grids() {
        let model = GaussianShiftModel::new(5, 5, 1.0);
        let s = McSettings::new(10, 1);
        let mk = |lambdas: Vec<f64>, grid| GainStudyConfig { alpha: 0.05, lambdas, grid };
        assert!(optimize_parameter(&mk(vec![], ParameterGrid::Gamma(vec![0.5])), &model, &s).is_err());
        assert!(optimize_parameter(&mk(vec![2.0, 1.0], ParameterGrid::Gamma(vec![0.5])), &model, &s).is_err());
        assert!(optimize_parameter(&mk(vec![0.5], ParameterGrid::Gamma(vec![0.5])), &model, &s).is_err());
        assert!(optimize_parameter(&mk(vec![1.0], ParameterGrid::Gamma(vec![0.6, 0.5])), &model, &s).is_err());
        assert!(optimize_parameter(&mk(vec![1.0], ParameterGrid::Tau(vec![1, 20])), &model, &s).is_err());
        assert!(optimize_parameter(&mk(vec![1.0], ParameterGrid::Gamma(vec![1.5])), &model, &s).is_err());
    }
}
