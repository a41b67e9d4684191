//! The violation condition: the Landauer bound fails exactly on the steps
//! where the accumulated system-environment mutual information exceeds the
//! entropy production. Sweeps the intracollision strength to show onset.

use landauer::collision::{run_single, RunConfig};

fn main() -> Result<(), landauer::Error> {
    for omega in [0.0, 0.8, 1.2, 1.3, 1.4] {
        let config = RunConfig::single(3.0, 1.0, 0.1, omega).with_collisions(60);
        let traj = run_single(&config)?;
        let max_i = traj
            .records
            .iter()
            .map(|r| r.mutual_info_pre)
            .fold(0.0f64, f64::max);
        let intervals = if traj.violation_intervals.is_empty() {
            "none".to_string()
        } else {
            traj.violation_intervals
                .iter()
                .map(|(a, b)| format!("[{a},{b}]"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        println!("Omega = {omega:<4}  max I = {max_i:.5}  violations: {intervals}");
    }
    Ok(())
}
