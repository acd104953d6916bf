//! Catalytic advantage ΔE★_A - ΔE_A^c over a coarse (λ, θ) grid, printed as
//! a text map. Pass a grid size as the first argument (default 9).
//!
//! cargo run --release --example lambda_theta_sweep -- 13

use anomalous_flow::catalysis::{sweep_lambda_theta, SweepConfig, TauScan};

fn main() -> anomalous_flow::error::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(9);
    let config = SweepConfig {
        tau: TauScan::uniform(20.0, 100),
        with_bound: false,
        ..SweepConfig::with_grid(n)
    };
    let records = sweep_lambda_theta(&config)?;

    print!("{:>6}", "θ\\λ");
    for l in &config.lambdas {
        print!("{l:>7.3}");
    }
    println!();
    for t in &config.thetas {
        print!("{t:>6.3}");
        for l in &config.lambdas {
            match records.iter().find(|r| r.lambda == *l && r.theta == *t) {
                Some(r) => print!("{:>7.3}", r.advantage),
                None => print!("{:>7}", "."),
            }
        }
        println!();
    }
    let best = records
        .iter()
        .max_by(|a, b| a.advantage.total_cmp(&b.advantage))
        .expect("non-empty grid");
    println!(
        "\nlargest advantage {:.4} at λ = {:.3}, θ = {:.3}, gτ★ = {:.3}",
        best.advantage, best.lambda, best.theta, best.tau_star
    );
    Ok(())
}
