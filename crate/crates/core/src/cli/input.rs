use std::path::Path;

use super::CliError;
use crate::types::{PValueSet, WeightVector};

/// Parsed p-value file: values in file order, optional ids and weights.
#[derive(Debug, Clone, PartialEq)]
pub struct PValueInput {
    pub pvals: PValueSet,
    pub weights: Option<WeightVector>,
}

pub fn read_pvalues(path: &Path) -> Result<PValueInput, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    parse_pvalues(&text)
}

fn is_number(token: &str) -> bool {
    token.parse::<f64>().is_ok()
}

/// Accepts one p-value per line, or `id,p` / `id,p,weight` rows (standard
/// CSV quoting applies). The first line is a header when its first token is
/// not numeric and, for multi-column files, neither is its second (so
/// `g1,0.2` is data). Blank lines and lines starting with `#` are skipped.
/// Every row must have the same number of columns.
pub fn parse_pvalues(text: &str) -> Result<PValueInput, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut ids = Vec::new();
    let mut values = Vec::new();
    let mut weights = Vec::new();
    let mut width = None;
    let mut seen_data = false;

    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::input(format!("line {line}: {e}"))
        })?;
        let lineno = record.position().map_or(0, |p| p.line());
        let fields: Vec<&str> = record.iter().collect();
        if fields.iter().all(|f| f.is_empty()) {
            continue;
        }
        if !seen_data {
            seen_data = true;
            if !is_number(fields[0]) && (fields.len() == 1 || !is_number(fields[1])) {
                continue;
            }
        }
        let bad = |what: String| CliError::input(format!("line {lineno}: {what}"));
        match width {
            None => width = Some(fields.len()),
            Some(w) if w != fields.len() => {
                return Err(bad(format!("expected {w} column(s), found {}", fields.len())));
            }
            Some(_) => {}
        }
        let number = |s: &str, what: &str| -> Result<f64, CliError> {
            s.parse::<f64>().map_err(|_| bad(format!("cannot parse {what} `{s}`")))
        };
        let p = match fields.len() {
            1 => number(fields[0], "p-value")?,
            2 | 3 => {
                if fields[0].is_empty() {
                    return Err(bad("empty id".into()));
                }
                ids.push(fields[0].to_string());
                number(fields[1], "p-value")?
            }
            n => return Err(bad(format!("expected 1 to 3 columns, found {n}"))),
        };
        if !(0.0..=1.0).contains(&p) {
            return Err(bad(format!("p-value {p} outside [0, 1]")));
        }
        values.push(p);
        if fields.len() == 3 {
            let w = number(fields[2], "weight")?;
            if !(w.is_finite() && w > 0.0) {
                return Err(bad(format!("weight {w} is not positive")));
            }
            weights.push(w);
        }
    }

    if values.is_empty() {
        return Err(CliError::input("no p-values in input"));
    }
    let pvals = if ids.is_empty() {
        PValueSet::new(values)
    } else {
        PValueSet::with_ids(ids, values)
    }
    .map_err(|e| CliError::input(e.to_string()))?;
    let weights = if weights.is_empty() {
        None
    } else {
        Some(WeightVector::new(weights).map_err(|e| CliError::input(e.to_string()))?)
    };
    Ok(PValueInput { pvals, weights })
}
