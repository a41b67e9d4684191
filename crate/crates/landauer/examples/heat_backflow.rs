//! Heat backflow: even with the system hotter than the reservoir, strong
//! intracollisions make the dissipated heat turn negative. The per-step
//! split shows the coherence-driven part taking over the sign.

use landauer::collision::{run_single, RunConfig};

fn main() -> Result<(), landauer::Error> {
    let config = RunConfig::single(3.0, 1.0, 0.1, 1.3).with_collisions(60);
    let traj = run_single(&config)?;

    println!("{:>3} {:>12} {:>12} {:>12}", "n", "Q~", "Q~_dia", "Q~_coh");
    for rec in &traj.records {
        println!(
            "{:>3} {:>12.4e} {:>12.4e} {:>12.4e}",
            rec.n,
            rec.heat_total(),
            rec.heat_dia,
            rec.heat_coh
        );
    }
    match traj.records.iter().find(|r| r.heat_total() < 0.0) {
        Some(rec) => println!(
            "\nfirst negative heat at n = {} (coherent part {:.3e})",
            rec.n, rec.heat_coh
        ),
        None => println!("\nheat never turned negative"),
    }
    println!("sign changes at n = {:?}", traj.heat_sign_change_indices());
    Ok(())
}
