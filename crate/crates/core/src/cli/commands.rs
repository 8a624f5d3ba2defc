use std::io::Write as _;

use serde_json::{json, Value};

use super::input::read_pvalues;
use super::{CliError, Format, OptimizeArgs, OutputArgs, RejectArgs, ThresholdsArgs, TwoTestArgs, VerifyArgs};
use crate::procedures::{sev_thresholds, stp_thresholds, weighted_transform, Dependence};
use crate::simulation::{
    minimizing_effect, optimize_parameter, two_test_gain, two_test_optimal_cv, verify_control, GainStudyConfig,
    ParameterGrid, Procedure, TwoTestModel,
};
use crate::types::ThresholdSequence;

fn flag(b: bool) -> u8 {
    u8::from(b)
}

fn emit(out: &OutputArgs, csv: impl FnOnce() -> String, json: impl FnOnce() -> Value) -> Result<(), CliError> {
    let text = match out.format {
        Format::Csv => csv(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json()).map_err(|e| CliError::io(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io(e.to_string())),
    }
}

/// A CSV table followed by `# key=value` footer lines.
fn table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>, footer: &[String]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    let mut s = String::from_utf8(w.into_inner().expect("writing to memory")).expect("fields are UTF-8");
    for line in footer {
        s.push_str("# ");
        s.push_str(line);
        s.push('\n');
    }
    s
}

fn warn(t: &ThresholdSequence) {
    for w in &t.warnings {
        eprintln!("warning: {w}");
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("plain data serializes")
}

pub fn reject(args: &RejectArgs) -> Result<(), CliError> {
    let input = read_pvalues(&args.input)?;
    let pvals = &input.pvals;
    let m = pvals.m();
    let procedure = args.procedure.build(input.weights.clone())?;
    let (thresholds, ranked) = match &procedure {
        Procedure::Sev(cfg) => {
            let t = sev_thresholds(cfg, m)?;
            let ranked = match &cfg.weights {
                Some(w) if !w.is_unit() => weighted_transform(pvals, w)?,
                _ => pvals.clone(),
            };
            (t, ranked)
        }
        Procedure::Stp(cfg) => (stp_thresholds(cfg, m)?, pvals.clone()),
    };
    let outcome = procedure.run(pvals)?;
    warn(&thresholds);

    let ranks = ranked.ranks();
    let rejected = outcome.decisions();
    let alpha = procedure.alpha();
    let scaling = procedure.scaling().to_string();

    emit(
        &args.out,
        || {
            table(
                &["id", "p", "rank", "threshold", "rejected"],
                (0..m).map(|i| {
                    vec![
                        pvals.id(i),
                        pvals.value(i).to_string(),
                        ranks[i].to_string(),
                        thresholds.at(ranks[i]).to_string(),
                        flag(rejected[i]).to_string(),
                    ]
                }),
                &[
                    format!("U={}", outcome.boundary),
                    format!("R={}", outcome.r()),
                    format!("alpha={alpha}"),
                    format!("scaling={scaling}"),
                    format!("procedure={}", procedure.describe()),
                ],
            )
        },
        || {
            let rows: Vec<Value> = (0..m)
                .map(|i| {
                    json!({
                        "id": pvals.id(i),
                        "p": pvals.value(i),
                        "rank": ranks[i],
                        "threshold": thresholds.at(ranks[i]),
                        "rejected": rejected[i],
                    })
                })
                .collect();
            json!({
                "command": "reject",
                "config": to_json(args),
                "procedure": procedure.describe(),
                "rows": rows,
                "summary": {"U": outcome.boundary, "R": outcome.r(), "alpha": alpha, "scaling": scaling},
                "warnings": thresholds.warnings,
            })
        },
    )
}

pub fn thresholds(args: &ThresholdsArgs) -> Result<(), CliError> {
    if args.m == 0 {
        return Err(CliError::params("--m must be at least 1"));
    }
    let procedure = args.procedure.build(None)?;
    let (plain, corrected) = match &procedure {
        Procedure::Sev(cfg) => (sev_thresholds(cfg, args.m)?, None),
        Procedure::Stp(cfg) if cfg.dependence == Dependence::Arbitrary => {
            let plain = stp_thresholds(&cfg.clone().with_dependence(Dependence::SimesPositive), args.m)?;
            (plain, Some(stp_thresholds(cfg, args.m)?))
        }
        Procedure::Stp(cfg) => (stp_thresholds(cfg, args.m)?, None),
    };
    warn(&plain);
    if let Some(c) = &corrected {
        warn(c);
    }

    emit(
        &args.out,
        || {
            let header: &[&str] = if corrected.is_some() { &["i", "t", "t_prime"] } else { &["i", "t"] };
            let rows = (1..=args.m).map(|i| {
                let mut row = vec![i.to_string(), plain.at(i).to_string()];
                if let Some(c) = &corrected {
                    row.push(c.at(i).to_string());
                }
                row
            });
            let mut footer = Vec::new();
            if let Some(c) = corrected.as_ref().and_then(|c| c.correction) {
                footer.push(format!("correction={c}"));
            }
            footer.push(format!("procedure={}", procedure.describe()));
            table(header, rows, &footer)
        },
        || {
            json!({
                "command": "thresholds",
                "config": to_json(args),
                "procedure": procedure.describe(),
                "t": plain.values(),
                "t_prime": corrected.as_ref().map(|c| c.values()),
                "correction": corrected.as_ref().and_then(|c| c.correction),
                "clamped": plain.clamped,
                "warnings": plain.warnings.iter().chain(corrected.iter().flat_map(|c| &c.warnings)).collect::<Vec<_>>(),
            })
        },
    )
}

pub fn verify(args: &VerifyArgs) -> Result<(), CliError> {
    let model = args.model.model()?;
    let procedure = args.procedure.build(None)?;
    let settings = args.mc.settings()?;
    let report = verify_control(&model, &procedure, &settings)?;

    emit(
        &args.out,
        || {
            table(
                &["check", "estimate", "se", "bound", "pass"],
                report.checks.iter().map(|c| {
                    vec![
                        c.name.clone(),
                        c.estimate.to_string(),
                        c.std_error.to_string(),
                        c.bound.to_string(),
                        flag(c.pass).to_string(),
                    ]
                }),
                &[
                    format!("procedure={}", report.procedure),
                    format!("m0={} m1={} delta={}", model.m0, model.m1, model.delta),
                    format!("n_reps={} seed={}", settings.n_reps, settings.seed),
                ],
            )
        },
        || {
            json!({
                "command": "verify",
                "config": to_json(args),
                "report": to_json(&report),
                "passed": report.passed(),
            })
        },
    )?;

    if report.passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        Err(CliError {
            code: CliError::CHECK_FAILED,
            message: format!("control check(s) failed: {}", failed.join(", ")),
        })
    }
}

pub fn optimize(args: &OptimizeArgs) -> Result<(), CliError> {
    let grid = match (&args.gammas, &args.taus) {
        (Some(g), None) => ParameterGrid::Gamma(g.clone()),
        (None, Some(t)) => ParameterGrid::Tau(t.clone()),
        _ => return Err(CliError::params("give exactly one of --gammas and --taus")),
    };
    let model = args.model.model()?;
    let settings = args.mc.settings()?;
    let config = GainStudyConfig { alpha: args.alpha, lambdas: args.lambdas.clone(), grid };
    let study = optimize_parameter(&config, &model, &settings)?;

    emit(
        &args.out,
        || {
            let cells = study.cells.iter().map(|c| {
                vec![
                    "cell".to_string(),
                    c.lambda.to_string(),
                    c.parameter.to_string(),
                    c.gain.estimate.to_string(),
                    c.gain.std_error.to_string(),
                ]
            });
            let best = study.curve.iter().map(|p| {
                vec![
                    "best".to_string(),
                    p.lambda.to_string(),
                    p.argmax.to_string(),
                    p.max_gain.to_string(),
                    p.std_error.to_string(),
                ]
            });
            table(
                &["kind", "lambda", "parameter", "gain", "se"],
                cells.chain(best),
                &[
                    format!("parameter={}", study.config.grid.name()),
                    format!("m0={} m1={} delta={}", model.m0, model.m1, model.delta),
                    format!("n_reps={} seed={}", settings.n_reps, settings.seed),
                ],
            )
        },
        || {
            json!({
                "command": "optimize",
                "config": to_json(args),
                "study": to_json(&study),
            })
        },
    )
}

pub fn twotest(args: &TwoTestArgs) -> Result<(), CliError> {
    let model = TwoTestModel::new(args.delta, args.lambda)?;
    let cv = two_test_optimal_cv(&model)?;
    let gain = two_test_gain(&model, cv);
    let delta_star = minimizing_effect(args.lambda);

    emit(
        &args.out,
        || {
            let row = [args.lambda, args.delta, cv, gain, delta_star].map(|v| v.to_string()).to_vec();
            table(&["lambda", "delta", "cv_opt", "gain", "delta_star"], [row], &[])
        },
        || {
            json!({
                "command": "twotest",
                "config": to_json(args),
                "cv_opt": cv,
                "gain": gain,
                "delta_star": delta_star,
            })
        },
    )
}
