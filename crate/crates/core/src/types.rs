//! Domain types shared by the procedures, the metric estimators and the
//! simulation engine.
//!
//! Hypotheses are addressed by their position in the [`PValueSet`]
//! (`0..m`). Optional string ids are carried for display and I/O only.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The `m` p-values under test, with their rank order.
///
/// The rank order sorts by p-value and breaks ties by position, so the
/// ordering is fully deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct PValueSet {
    values: Vec<f64>,
    ids: Option<Vec<String>>,
    order: Vec<usize>,
}

impl PValueSet {
    /// Builds a set with implicit ids `1..=m`.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        for (index, &value) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::PValueRange { index, value });
            }
        }
        Ok(Self::from_unchecked(values, None))
    }

    pub fn with_ids(ids: Vec<String>, values: Vec<f64>) -> Result<Self> {
        if ids.len() != values.len() {
            return Err(Error::LengthMismatch {
                expected: values.len(),
                actual: ids.len(),
            });
        }
        let mut seen = HashSet::with_capacity(ids.len());
        for id in &ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        let mut set = Self::new(values)?;
        set.ids = Some(ids);
        Ok(set)
    }

    // Transformed values (p / w) may exceed 1; callers guarantee they are
    // finite and non-negative.
    pub(crate) fn from_unchecked(values: Vec<f64>, ids: Option<Vec<String>>) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        Self { values, ids, order }
    }

    pub fn m(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value of the hypothesis at `index` (input order).
    pub fn value(&self, index: usize) -> f64 {
        self.values[index]
    }

    pub fn id(&self, index: usize) -> String {
        match &self.ids {
            Some(ids) => ids[index].clone(),
            None => (index + 1).to_string(),
        }
    }

    pub fn ids(&self) -> Option<&[String]> {
        self.ids.as_deref()
    }

    /// Hypothesis indices sorted by ascending p-value.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `p_(rank)` for `rank` in `1..=m`.
    pub fn ordered(&self, rank: usize) -> f64 {
        self.values[self.order[rank - 1]]
    }

    pub fn sorted_values(&self) -> Vec<f64> {
        self.order.iter().map(|&i| self.values[i]).collect()
    }

    /// 1-based rank of every hypothesis, in input order.
    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.m()];
        for (pos, &i) in self.order.iter().enumerate() {
            ranks[i] = pos + 1;
        }
        ranks
    }
}

/// Which hypotheses are truly null. Only simulations and metric
/// computations see this; procedures never do.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruth {
    is_null: Vec<bool>,
}

impl GroundTruth {
    pub fn from_null_flags(is_null: Vec<bool>) -> Result<Self> {
        if is_null.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { is_null })
    }

    /// Builds the truth from explicit null and alternative id sets, resolved
    /// against the ids of `pvals`. Every hypothesis must appear in exactly one set.
    pub fn from_ids<S: AsRef<str>>(pvals: &PValueSet, null_ids: &[S], alternative_ids: &[S]) -> Result<Self> {
        let m = pvals.m();
        let lookup: std::collections::HashMap<String, usize> =
            (0..m).map(|i| (pvals.id(i), i)).collect();
        let mut flags: Vec<Option<bool>> = vec![None; m];
        for (ids, null) in [(null_ids, true), (alternative_ids, false)] {
            for id in ids {
                let id = id.as_ref();
                let &index = lookup
                    .get(id)
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown id `{id}` in ground truth")))?;
                if flags[index].is_some() {
                    return Err(Error::DuplicateId(id.to_string()));
                }
                flags[index] = Some(null);
            }
        }
        let is_null = flags
            .into_iter()
            .enumerate()
            .map(|(i, f)| f.ok_or_else(|| Error::InvalidParameter(format!("id `{}` missing from ground truth", pvals.id(i)))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_null_flags(is_null)
    }

    /// First `m0` hypotheses null, remaining `m1` alternatives.
    pub fn nulls_first(m0: usize, m1: usize) -> Result<Self> {
        let mut flags = vec![true; m0];
        flags.resize(m0 + m1, false);
        Self::from_null_flags(flags)
    }

    pub fn m(&self) -> usize {
        self.is_null.len()
    }

    pub fn m0(&self) -> usize {
        self.is_null.iter().filter(|&&n| n).count()
    }

    pub fn m1(&self) -> usize {
        self.m() - self.m0()
    }

    pub fn is_null(&self, index: usize) -> bool {
        self.is_null[index]
    }

    pub fn null_flags(&self) -> &[bool] {
        &self.is_null
    }
}

/// Scaling function `s` on ranks `1..=m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "param", rename_all = "snake_case")]
pub enum ScalingSpec {
    /// `s(r) = c`
    Constant(f64),
    /// `s(r) = r`
    Linear,
    /// `s(r) = min(r, tau)`
    TruncatedLinear(usize),
    /// `s(r) = r^gamma`
    Power(f64),
    /// `s(r) = values[r - 1]`
    Tabulated(Vec<f64>),
}

impl ScalingSpec {
    pub fn constant(c: f64) -> Result<Self> {
        let spec = ScalingSpec::Constant(c);
        spec.check_params()?;
        Ok(spec)
    }

    pub fn truncated_linear(tau: usize) -> Result<Self> {
        let spec = ScalingSpec::TruncatedLinear(tau);
        spec.check_params()?;
        Ok(spec)
    }

    pub fn power(gamma: f64) -> Result<Self> {
        let spec = ScalingSpec::Power(gamma);
        spec.check_params()?;
        Ok(spec)
    }

    /// Tabulated scaling; values must be positive and non-decreasing.
    pub fn tabulated(values: Vec<f64>) -> Result<Self> {
        let spec = ScalingSpec::Tabulated(values);
        spec.check_params()?;
        Ok(spec)
    }

    fn check_params(&self) -> Result<()> {
        match self {
            ScalingSpec::Constant(c) if !(c.is_finite() && *c > 0.0) => {
                Err(Error::InvalidScaling(format!("constant must be positive, got {c}")))
            }
            ScalingSpec::TruncatedLinear(0) => Err(Error::InvalidScaling("tau must be at least 1".into())),
            ScalingSpec::Power(g) if !(0.0..=1.0).contains(g) => {
                Err(Error::InvalidScaling(format!("gamma must lie in [0, 1], got {g}")))
            }
            ScalingSpec::Tabulated(values) => {
                if values.is_empty() {
                    return Err(Error::InvalidScaling("empty table".into()));
                }
                if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                    return Err(Error::InvalidScaling(format!("table value {v} is not positive")));
                }
                if values.windows(2).any(|w| w[1] < w[0]) {
                    return Err(Error::InvalidScaling("table is not non-decreasing".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Checks the spec against a family size `m`.
    pub fn validate(&self, m: usize) -> Result<()> {
        self.check_params()?;
        match self {
            ScalingSpec::TruncatedLinear(tau) if *tau > m => {
                Err(Error::InvalidScaling(format!("tau = {tau} exceeds m = {m}")))
            }
            ScalingSpec::Tabulated(values) if values.len() != m => Err(Error::LengthMismatch {
                expected: m,
                actual: values.len(),
            }),
            _ => Ok(()),
        }
    }

    /// `s(r)` without range checks. `r >= 1`.
    pub(crate) fn eval(&self, r: usize) -> f64 {
        match self {
            ScalingSpec::Constant(c) => *c,
            ScalingSpec::Linear => r as f64,
            ScalingSpec::TruncatedLinear(tau) => r.min(*tau) as f64,
            ScalingSpec::Power(g) => (r as f64).powf(*g),
            ScalingSpec::Tabulated(values) => values[r - 1],
        }
    }

    /// Whether `s(r) <= r` for every rank, which makes SEV control imply
    /// weak FWER control.
    pub fn is_sublinear(&self, m: usize) -> bool {
        (1..=m).all(|r| self.eval(r) <= r as f64)
    }
}

/// `s(r)` for a rank `r` in `1..=m`.
pub fn evaluate_scaling(spec: &ScalingSpec, r: usize, m: usize) -> Result<f64> {
    spec.validate(m)?;
    if r == 0 || r > m {
        return Err(Error::RankOutOfRange { rank: r, m });
    }
    Ok(spec.eval(r))
}

impl fmt::Display for ScalingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalingSpec::Constant(c) => write!(f, "constant:{c}"),
            ScalingSpec::Linear => write!(f, "linear"),
            ScalingSpec::TruncatedLinear(tau) => write!(f, "truncated:{tau}"),
            ScalingSpec::Power(g) => write!(f, "power:{g}"),
            ScalingSpec::Tabulated(values) => {
                write!(f, "tabulated:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses `linear`, `constant:C`, `truncated:TAU` (alias `tau:TAU`),
/// `power:GAMMA` and `tabulated:v1;v2;...`.
impl FromStr for ScalingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k.trim(), Some(a.trim())),
            None => (s, None),
        };
        let bad = |what: &str| Error::InvalidScaling(format!("cannot parse {what} in `{s}`"));
        let real = |a: Option<&str>| -> Result<f64> { a.and_then(|a| a.parse().ok()).ok_or_else(|| bad("argument")) };
        match kind.to_ascii_lowercase().as_str() {
            "linear" if arg.is_none() => Ok(ScalingSpec::Linear),
            "constant" | "const" => ScalingSpec::constant(real(arg)?),
            "truncated" | "tau" | "truncated-linear" => {
                let tau = arg.and_then(|a| a.parse().ok()).ok_or_else(|| bad("tau"))?;
                ScalingSpec::truncated_linear(tau)
            }
            "power" | "gamma" => ScalingSpec::power(real(arg)?),
            "tabulated" | "table" => {
                let values = arg
                    .ok_or_else(|| bad("table"))?
                    .split(';')
                    .map(|v| v.trim().parse::<f64>().map_err(|_| bad("table value")))
                    .collect::<Result<Vec<_>>>()?;
                ScalingSpec::tabulated(values)
            }
            _ => Err(Error::InvalidScaling(format!("unknown scaling `{s}`"))),
        }
    }
}

/// Shape function `xi` applied to `s(r)` when building thresholds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "param", rename_all = "snake_case")]
pub enum ShapeSpec {
    Identity,
    /// `xi(x) = x / H_m` with `H_m = 1 + 1/2 + ... + 1/m`.
    HarmonicLinear,
    /// Piecewise-linear through `(x, y)` knots, constant outside the
    /// knot range. Knot abscissae strictly increasing, ordinates positive
    /// and non-decreasing.
    Tabulated(Vec<(f64, f64)>),
}

impl ShapeSpec {
    pub fn tabulated(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::InvalidShape("empty table".into()));
        }
        if knots.iter().any(|&(x, y)| !(x.is_finite() && y.is_finite() && y > 0.0)) {
            return Err(Error::InvalidShape("knots must be finite with positive values".into()));
        }
        if knots.windows(2).any(|w| w[1].0 <= w[0].0 || w[1].1 < w[0].1) {
            return Err(Error::InvalidShape("knots must be increasing in x and non-decreasing in y".into()));
        }
        Ok(ShapeSpec::Tabulated(knots))
    }

    /// The shape `xi = s^{-1}` on integer ranks: knots `(s(i), i)`.
    /// Requires `s` strictly increasing on `1..=m`.
    pub fn inverse_of(scaling: &ScalingSpec, m: usize) -> Result<Self> {
        scaling.validate(m)?;
        let knots: Vec<(f64, f64)> = (1..=m).map(|i| (scaling.eval(i), i as f64)).collect();
        if knots.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidShape(format!("scaling {scaling} is not strictly increasing, no inverse")));
        }
        Self::tabulated(knots)
    }

    pub(crate) fn eval(&self, x: f64, m: usize) -> f64 {
        match self {
            ShapeSpec::Identity => x,
            ShapeSpec::HarmonicLinear => x / harmonic_number(m),
            ShapeSpec::Tabulated(knots) => {
                let idx = knots.partition_point(|&(kx, _)| kx < x);
                if idx < knots.len() && knots[idx].0 == x {
                    return knots[idx].1;
                }
                if idx == 0 {
                    return knots[0].1;
                }
                if idx == knots.len() {
                    return knots[idx - 1].1;
                }
                let (x0, y0) = knots[idx - 1];
                let (x1, y1) = knots[idx];
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
        }
    }
}

impl fmt::Display for ShapeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeSpec::Identity => write!(f, "identity"),
            ShapeSpec::HarmonicLinear => write!(f, "harmonic"),
            ShapeSpec::Tabulated(knots) => write!(f, "tabulated({} knots)", knots.len()),
        }
    }
}

impl FromStr for ShapeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "identity" | "none" => Ok(ShapeSpec::Identity),
            "harmonic" | "harmonic-linear" | "by" => Ok(ShapeSpec::HarmonicLinear),
            other => Err(Error::InvalidShape(format!("unknown shape `{other}`"))),
        }
    }
}

/// `H_m`, summed from the smallest term up.
pub fn harmonic_number(m: usize) -> f64 {
    (1..=m).rev().map(|i| 1.0 / i as f64).sum()
}

/// Per-hypothesis weights `w_i > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Empty);
        }
        for (index, &value) in weights.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidWeight { index, value });
            }
        }
        Ok(Self(weights))
    }

    pub fn unit(m: usize) -> Self {
        Self(vec![1.0; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&w| w == 1.0)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Non-decreasing critical values `t_1 <= ... <= t_m`, clamped to `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdSequence {
    values: Vec<f64>,
    pub alpha: f64,
    /// Human-readable description of how the sequence was built.
    pub descriptor: String,
    /// Number of raw values that exceeded 1 and were clamped.
    pub clamped: usize,
    /// Dependence correction divisor, when one was applied.
    pub correction: Option<f64>,
    pub warnings: Vec<String>,
}

impl ThresholdSequence {
    /// Wraps raw values, clamping into `[0, 1]`. Fails if the raw values
    /// are not non-decreasing or contain NaN.
    pub fn new(raw: Vec<f64>, alpha: f64, descriptor: impl Into<String>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Empty);
        }
        if raw.iter().any(|v| v.is_nan() || *v < 0.0) {
            return Err(Error::InvalidParameter("thresholds must be non-negative numbers".into()));
        }
        if raw.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidParameter("thresholds must be non-decreasing".into()));
        }
        let clamped = raw.iter().filter(|&&v| v > 1.0).count();
        let values = raw.into_iter().map(|v| v.min(1.0)).collect();
        let mut warnings = Vec::new();
        if clamped > 0 {
            warnings.push(format!("{clamped} threshold(s) above 1 clamped to 1"));
        }
        Ok(Self {
            values,
            alpha,
            descriptor: descriptor.into(),
            clamped,
            correction: None,
            warnings,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `t_i` for `i` in `1..=m`.
    pub fn at(&self, i: usize) -> f64 {
        self.values[i - 1]
    }
}

/// Result of a rank-based procedure: the hypotheses with the `U` smallest
/// p-values are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RejectionOutcome {
    /// Boundary rank `U` (0 when nothing is rejected).
    pub boundary: usize,
    /// Rejected hypothesis indices, in rank order.
    pub rejected: Vec<usize>,
    pub m: usize,
}

impl RejectionOutcome {
    pub(crate) fn from_boundary(pvals: &PValueSet, boundary: usize) -> Self {
        Self {
            boundary,
            rejected: pvals.order()[..boundary].to_vec(),
            m: pvals.m(),
        }
    }

    /// Number of rejections `R` (equal to `U`).
    pub fn r(&self) -> usize {
        self.rejected.len()
    }

    /// Per-hypothesis decisions in input order.
    pub fn decisions(&self) -> Vec<bool> {
        let mut d = vec![false; self.m];
        for &i in &self.rejected {
            d[i] = true;
        }
        d
    }

    pub fn rejected_ids(&self, pvals: &PValueSet) -> Vec<String> {
        self.rejected.iter().map(|&i| pvals.id(i)).collect()
    }
}

/// Confusion counts of one application of a procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Confusion {
    pub fp: usize,
    pub tp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tn: usize,
}

impl Confusion {
    pub fn r(&self) -> usize {
        self.fp + self.tp
    }

    pub fn m0(&self) -> usize {
        self.fp + self.tn
    }

    pub fn m1(&self) -> usize {
        self.tp + self.fn_
    }

    pub fn m(&self) -> usize {
        self.m0() + self.m1()
    }

    /// `FP / (R v 1)`.
    pub fn fdp(&self) -> f64 {
        self.fp as f64 / self.r().max(1) as f64
    }
}

pub fn confusion(outcome: &RejectionOutcome, truth: &GroundTruth) -> Result<Confusion> {
    let m = truth.m();
    let mut fp = 0;
    let mut tp = 0;
    for &index in &outcome.rejected {
        if index >= m {
            return Err(Error::UnknownHypothesis { index, m });
        }
        if truth.is_null(index) {
            fp += 1;
        } else {
            tp += 1;
        }
    }
    Ok(Confusion {
        fp,
        tp,
        fn_: truth.m1() - tp,
        tn: truth.m0() - fp,
    })
}

/// Scaled false discovery proportion `FP / s(R)`, or 0 when `R = 0`.
pub fn sfdp(c: &Confusion, spec: &ScalingSpec) -> f64 {
    let r = c.r();
    if r == 0 {
        return 0.0;
    }
    c.fp as f64 / spec.eval(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling_examples() {
        assert_eq!(evaluate_scaling(&ScalingSpec::Power(0.5), 4, 10).unwrap(), 2.0);
        assert_eq!(evaluate_scaling(&ScalingSpec::TruncatedLinear(3), 5, 10).unwrap(), 3.0);
        assert_eq!(evaluate_scaling(&ScalingSpec::Linear, 7, 10).unwrap(), 7.0);
    }

    #[test]
    fn scaling_errors() {
        assert!(matches!(
            evaluate_scaling(&ScalingSpec::Linear, 0, 3),
            Err(Error::RankOutOfRange { .. })
        ));
        assert!(matches!(
            evaluate_scaling(&ScalingSpec::Linear, 4, 3),
            Err(Error::RankOutOfRange { .. })
        ));
        assert!(ScalingSpec::tabulated(vec![1.0, 3.0, 2.0]).is_err());
        assert!(ScalingSpec::tabulated(vec![0.0, 1.0]).is_err());
        let table = ScalingSpec::tabulated(vec![1.0, 1.5, 2.0]).unwrap();
        assert!(matches!(
            evaluate_scaling(&table, 1, 4),
            Err(Error::LengthMismatch { .. })
        ));
        assert_eq!(evaluate_scaling(&table, 2, 3).unwrap(), 1.5);
        assert!(ScalingSpec::power(1.5).is_err());
        assert!(ScalingSpec::constant(0.0).is_err());
        assert!(ScalingSpec::truncated_linear(0).is_err());
        assert!(ScalingSpec::TruncatedLinear(5).validate(4).is_err());
    }

    #[test]
    fn scaling_parse_roundtrip() {
        for s in ["linear", "constant:2", "truncated:5", "power:0.5", "tabulated:1;2;2.5"] {
            let spec: ScalingSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!("tau:3".parse::<ScalingSpec>().unwrap(), ScalingSpec::TruncatedLinear(3));
        assert!("power".parse::<ScalingSpec>().is_err());
        assert!("quadratic".parse::<ScalingSpec>().is_err());
    }

    #[test]
    fn special_case_collapse() {
        let m = 25;
        for r in 1..=m {
            let lin = ScalingSpec::Linear.eval(r);
            assert_eq!(ScalingSpec::Power(1.0).eval(r), lin);
            assert_eq!(ScalingSpec::TruncatedLinear(m).eval(r), lin);
            assert_eq!(ScalingSpec::Power(0.0).eval(r), ScalingSpec::Constant(1.0).eval(r));
        }
    }

    #[test]
    fn harmonic_shape_is_exact() {
        let h3 = harmonic_number(3);
        assert_eq!(h3, 1.0 / 3.0 + 0.5 + 1.0);
        assert_eq!(ShapeSpec::HarmonicLinear.eval(2.0, 3), 2.0 / h3);
    }

    #[test]
    fn tabulated_shape_interpolates() {
        let shape = ShapeSpec::tabulated(vec![(1.0, 1.0), (2.0, 3.0)]).unwrap();
        assert_eq!(shape.eval(1.0, 2), 1.0);
        assert_eq!(shape.eval(1.5, 2), 2.0);
        assert_eq!(shape.eval(2.0, 2), 3.0);
        assert_eq!(shape.eval(0.5, 2), 1.0);
        assert_eq!(shape.eval(9.0, 2), 3.0);
        assert!(ShapeSpec::tabulated(vec![(1.0, 2.0), (1.0, 3.0)]).is_err());
        assert!(ShapeSpec::inverse_of(&ScalingSpec::TruncatedLinear(2), 4).is_err());
    }

    #[test]
    fn pvalue_set_ordering_is_stable() {
        let set = PValueSet::new(vec![0.3, 0.1, 0.3, 0.05]).unwrap();
        assert_eq!(set.order(), &[3, 1, 0, 2]);
        assert_eq!(set.ranks(), vec![3, 2, 4, 1]);
        assert_eq!(set.ordered(1), 0.05);
        assert!(PValueSet::new(vec![]).is_err());
        assert!(PValueSet::new(vec![1.2]).is_err());
        assert!(PValueSet::new(vec![f64::NAN]).is_err());
        assert!(PValueSet::with_ids(vec!["a".into(), "a".into()], vec![0.1, 0.2]).is_err());
    }

    fn ids_set(ids: &[&str], p: &[f64]) -> PValueSet {
        PValueSet::with_ids(ids.iter().map(|s| s.to_string()).collect(), p.to_vec()).unwrap()
    }

    #[test]
    fn confusion_examples() {
        let pvals = ids_set(&["1", "2", "3", "4", "5"], &[0.5, 0.01, 0.6, 0.02, 0.7]);
        let truth = GroundTruth::from_ids(&pvals, &["1", "2", "3"], &["4", "5"]).unwrap();
        let outcome = RejectionOutcome::from_boundary(&pvals, 2);
        assert_eq!(outcome.rejected_ids(&pvals), vec!["2", "4"]);
        let c = confusion(&outcome, &truth).unwrap();
        assert_eq!(c, Confusion { fp: 1, tp: 1, fn_: 1, tn: 2 });

        let none = RejectionOutcome::from_boundary(&pvals, 0);
        let c = confusion(&none, &truth).unwrap();
        assert_eq!((c.fp, c.tp), (0, 0));

        let all_null = GroundTruth::nulls_first(5, 0).unwrap();
        let all = RejectionOutcome::from_boundary(&pvals, 5);
        let c = confusion(&all, &all_null).unwrap();
        assert_eq!((c.fp, c.tp), (5, 0));
    }

    #[test]
    fn confusion_rejects_unknown_index() {
        let outcome = RejectionOutcome { boundary: 1, rejected: vec![7], m: 8 };
        let truth = GroundTruth::nulls_first(2, 2).unwrap();
        assert_eq!(
            confusion(&outcome, &truth),
            Err(Error::UnknownHypothesis { index: 7, m: 4 })
        );
    }

    #[test]
    fn ground_truth_requires_partition() {
        let pvals = ids_set(&["a", "b"], &[0.1, 0.2]);
        assert!(GroundTruth::from_ids(&pvals, &["a"], &[]).is_err());
        assert!(GroundTruth::from_ids(&pvals, &["a", "b"], &["b"]).is_err());
        assert!(GroundTruth::from_ids(&pvals, &["a", "z"], &["b"]).is_err());
    }

    #[test]
    fn sfdp_examples() {
        let c = Confusion { fp: 2, tp: 3, fn_: 0, tn: 0 };
        assert!((sfdp(&c, &ScalingSpec::Power(0.5)) - 2.0 / 5f64.sqrt()).abs() < 1e-15);
        assert!((sfdp(&c, &ScalingSpec::Power(0.5)) - 0.8944).abs() < 1e-4);
        let empty = Confusion { fp: 0, tp: 0, fn_: 3, tn: 4 };
        for spec in [ScalingSpec::Linear, ScalingSpec::Constant(2.0), ScalingSpec::Power(0.3)] {
            assert_eq!(sfdp(&empty, &spec), 0.0);
        }
        let c = Confusion { fp: 3, tp: 1, fn_: 0, tn: 0 };
        assert_eq!(sfdp(&c, &ScalingSpec::Linear), 0.75);
    }

    #[test]
    fn threshold_sequence_clamps_and_validates() {
        let t = ThresholdSequence::new(vec![0.5, 1.0, 1.5], 0.5, "x").unwrap();
        assert_eq!(t.values(), &[0.5, 1.0, 1.0]);
        assert_eq!(t.clamped, 1);
        assert_eq!(t.warnings.len(), 1);
        assert!(ThresholdSequence::new(vec![0.2, 0.1], 0.5, "x").is_err());
        assert!(ThresholdSequence::new(vec![], 0.5, "x").is_err());
    }
}
