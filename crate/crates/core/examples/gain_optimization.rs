//! Best power-scaling exponent `gamma` and truncation level `tau` as a
//! function of the price `lambda` of a false positive.
//!
//! ```bash
//! cargo run --release -p scaled-mtp --example gain_optimization -- 200
//! ```

use scaled_mtp::simulation::{optimize_parameter, GainStudyConfig, GaussianShiftModel, McSettings, ParameterGrid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let reps: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(200);
    let lambdas = vec![1.0, 2.0, 5.0, 10.0, 20.0, 30.0];
    let gammas: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    let taus = vec![1, 2, 5, 10, 20, 50, 100, 500, 1000];

    for m1 in [10, 100] {
        let model = GaussianShiftModel::new(1000 - m1, m1, 3.0);
        let settings = McSettings::new(reps, 2024);
        for grid in [ParameterGrid::Gamma(gammas.clone()), ParameterGrid::Tau(taus.clone())] {
            let name = grid.name();
            let study = GainStudyConfig { alpha: 0.05, lambdas: lambdas.clone(), grid };
            let out = optimize_parameter(&study, &model, &settings)?;
            println!("m1 = {m1}, best {name}:");
            for p in &out.curve {
                println!(
                    "  lambda = {:>4}  {name} = {:<5}  gain = {:>8.3} (se {:.3})",
                    p.lambda, p.argmax, p.max_gain, p.std_error
                );
            }
        }
    }
    Ok(())
}
