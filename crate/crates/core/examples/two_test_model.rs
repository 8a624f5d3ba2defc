//! One null and one alternative statistic, both rejected above a common
//! critical value `cv`. The gain `Phi(delta - cv) - lambda * Phi(-cv)` is
//! maximized at `cv = ln(lambda) / delta + delta / 2`.

use scaled_mtp::normal::normal_quantile;
use scaled_mtp::simulation::{critical_value_price, minimizing_effect, two_test_gain, two_test_optimal_cv, TwoTestModel};

fn main() -> scaled_mtp::Result<()> {
    println!("{:>6} {:>5} {:>8} {:>8}", "lambda", "delta", "cv_opt", "gain");
    for lambda in [1.5, 3.0, 6.8, 30.0] {
        for delta in [1.0, 2.0, 3.0, 5.0] {
            let model = TwoTestModel::new(delta, lambda)?;
            let cv = two_test_optimal_cv(&model)?;
            println!("{lambda:>6} {delta:>5} {cv:>8.4} {:>8.4}", two_test_gain(&model, cv));
        }
    }

    // the price of a false positive implied by a classical critical value
    for level in [0.975, 0.95] {
        let cv = normal_quantile(level)?;
        println!(
            "cv = z_{level} = {cv:.4}: lambda = {:.2}, effect with the lowest cv_opt = {:.4}",
            critical_value_price(cv),
            minimizing_effect(critical_value_price(cv))
        );
    }
    Ok(())
}
