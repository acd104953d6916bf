//! Property suite on random states, once clean and once with a deliberately
//! broken energy-preserving sampler.
//!
//! cargo run --release --example verify_suite

use anomalous_flow::verify::{run_verify, Fault, VerifyOptions};

fn main() -> anomalous_flow::error::Result<()> {
    for fault in [None, Some(Fault::NonEnergyPreserving)] {
        let report = run_verify(&VerifyOptions {
            inject_fault: fault,
            ..VerifyOptions::default()
        })?;
        println!("fault: {fault:?}");
        for p in &report.properties {
            println!(
                "  {:<36} {:>6} trials  worst {:>10.3e}  tol {:.0e}  {}",
                p.property,
                p.trials,
                p.worst_residual,
                p.tolerance,
                if p.pass { "ok" } else { "FAIL" }
            );
        }
        println!("  overall: {}\n", if report.pass { "pass" } else { "fail" });
    }
    Ok(())
}
