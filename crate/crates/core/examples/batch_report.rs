//! Runs a small experiment config in-process, the same way `bps report`
//! does, and prints the CSV.
//!
//! ```text
//! cargo run --release --example batch_report
//! ```

use bps::cli::{with_thread_pool, ExperimentConfig, Format};

const CONFIG: &str = "
seed = 2024
job = count --alpha sqrt(2) --beta 3/10 --alpha sqrt(3) --beta 7/10 --c 13/12 --x 1e5,1e6,1e7
job = count --alpha sqrt(2) --x 1e6 --both-paths
job = verify --suite psi --samples 1e4
job = expsum --vdc --a 1e3,1e4,1e5
job = dioph type --omega 1/sqrt(2) --omega 1/sqrt(3) --N 1e6 --t 0.5,1,1.5
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig::parse(CONFIG)?;
    let outputs = with_thread_pool(cfg.threads, || cfg.run_jobs())??;
    print!("{}", cfg.render(&outputs, Format::Csv));
    Ok(())
}
