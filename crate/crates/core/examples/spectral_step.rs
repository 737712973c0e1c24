//! Laplacian spectra, the optimal constant step and the resulting per-step
//! contraction for a few graph families.
//!
//! cargo run --example spectral_step

use active_consensus::spectral::{contraction_norm, step_info};
use active_consensus::topology::{build_laplacian, Family};

fn main() -> active_consensus::Result<()> {
    let families = [
        Family::Chain { n: 10 },
        Family::Star { n: 10 },
        Family::Star { n: 50 },
        Family::Uniform { n: 100, d: 5 },
        Family::Uniform { n: 100, d: 20 },
        Family::Clustered,
    ];
    println!("{:<16} {:>9} {:>9} {:>9} {:>9}", "family", "lambda2", "lambda_n", "step", "|W|");
    for family in families {
        let l = build_laplacian(&family.generate(3)?);
        let info = step_info(&l)?;
        println!(
            "{:<16} {:>9.4} {:>9.4} {:>9.5} {:>9.5}",
            family.to_string(),
            info.lambda2,
            info.lambda_max,
            info.step,
            info.contraction
        );
    }

    // The contraction is smallest at the optimal step.
    let l = build_laplacian(&Family::Uniform { n: 100, d: 5 }.generate(3)?);
    let best = step_info(&l)?.step;
    println!("\nstep scale  |W|");
    for scale in [0.5, 0.8, 0.9, 1.0, 1.1, 1.2] {
        println!("{scale:>10.1}  {:.5}", contraction_norm(&l, scale * best)?);
    }
    Ok(())
}
