//! Non-equilibrium setting: one system qubit colliding in sequence with
//! ancillas from two reservoirs at different temperatures. The ledger
//! identity still closes exactly, now with one beta*heat term per reservoir.

use landauer::collision::{run_multi, RunConfig};

fn main() -> Result<(), landauer::Error> {
    let config = RunConfig::multi(2.0, vec![3.0, 1.0], 0.1, 1.4).with_collisions(60);
    let traj = run_multi(&config)?;

    println!(
        "{:>3} {:>11} {:>11} {:>11} {:>11} {:>11}",
        "n", "Q~(1)", "Q~(2)", "I", "D", "residual"
    );
    for rec in traj.records.iter().step_by(5) {
        println!(
            "{:>3} {:>11.3e} {:>11.3e} {:>11.6} {:>11.6} {:>11.3e}",
            rec.n,
            rec.beta_heat_terms[0].heat,
            rec.beta_heat_terms[1].heat,
            rec.mutual_info_pre,
            rec.entropy_production,
            rec.residual()
        );
    }
    println!("\nmax |lhs - rhs| = {:.3e}", traj.max_abs_residual());
    println!("violation intervals: {:?}", traj.violation_intervals);
    Ok(())
}
