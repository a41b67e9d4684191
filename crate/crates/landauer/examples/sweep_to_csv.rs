//! Batch interface: parse a config document, run an Omega sweep, write one
//! CSV per run plus summary.json, and print the violation report.

use landauer::cli::{execute, parse_config, report};

const CONFIG: &str = "\
mode = single
T_system = 3
T_reservoirs = 1
J = 0.1
sweep_parameter = Omega
sweep_values = 1.2, 1.3, 1.4
n_collisions = 60
";

fn main() -> Result<(), landauer::Error> {
    let spec = parse_config(CONFIG)?;
    let out_dir = std::env::temp_dir().join("landauer_sweep");
    let summary = execute(&spec, &out_dir)?;

    for run in &summary.runs {
        println!("wrote {}", out_dir.join(&run.csv).display());
    }
    println!("wrote {}\n", out_dir.join("summary.json").display());
    print!("{}", report(&out_dir.join("summary.json"))?);
    Ok(())
}
