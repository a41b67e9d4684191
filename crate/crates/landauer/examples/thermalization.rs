//! Markovian limit (no intracollisions): the system relaxes monotonically
//! to the reservoir's Gibbs state and the Landauer bound holds throughout.

use landauer::collision::{run_with_observer, RunConfig, Stage};
use landauer::quantum::{partial_trace, thermal_qubit, Label, QubitHamiltonian};

fn main() -> Result<(), landauer::Error> {
    let config = RunConfig::single(3.0, 1.0, 0.1, 0.0).with_collisions(120);
    let h = QubitHamiltonian::new(1.0);
    let gibbs = thermal_qubit(1.0, h, Label::System)?;
    let target_p0 = gibbs.matrix()[(0, 0)].re;

    println!("{:>4} {:>12} {:>12}", "n", "p0(S)", "|p0 - gibbs|");
    let mut result = Ok(());
    run_with_observer(&config, &mut |snap| {
        if snap.stage != Stage::PostCollision || snap.n % 10 != 0 {
            return;
        }
        let others: Vec<Label> = snap
            .state
            .labels()
            .iter()
            .copied()
            .filter(|&l| l != Label::System)
            .collect();
        match partial_trace(snap.state, &others) {
            Ok(s) => {
                let p0 = s.matrix()[(0, 0)].re;
                println!("{:>4} {:>12.8} {:>12.3e}", snap.n, p0, (p0 - target_p0).abs());
            }
            Err(e) => result = Err(e),
        }
    })?;
    result
}
