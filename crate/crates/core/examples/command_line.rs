//! Drives the command-line front end in-process: writes a p-value file,
//! rejects with a truncated scaling, prints the thresholds of the STP
//! procedure, and runs a short verification.

use scaled_mtp::cli;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("scaled-mtp-example");
    std::fs::create_dir_all(&dir)?;
    let input = dir.join("pvalues.csv");
    std::fs::write(&input, "gene,p\nBRCA1,0.0002\nTP53,0.004\nEGFR,0.011\nMYC,0.03\nKRAS,0.09\nPTEN,0.41\n")?;

    let runs: [&[&str]; 3] = [
        &["reject", input.to_str().unwrap(), "--scaling", "truncated:2", "--alpha", "0.1"],
        &["thresholds", "--stp", "--beta", "0.2", "--m", "6", "--dependence", "arbitrary"],
        &["verify", "--m0", "40", "--m1", "10", "--scaling", "power:0.5", "--reps", "2000", "--seed", "1"],
    ];
    for args in runs {
        println!("$ scaled-mtp {}", args.join(" "));
        cli::run(std::iter::once("scaled-mtp").chain(args.iter().copied()))?;
        println!();
    }
    Ok(())
}
