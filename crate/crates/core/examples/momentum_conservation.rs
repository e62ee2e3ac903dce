//! Total momentum under each hybrid coupling: the relative-velocity term
//! conserves it, the position coupling and the one-sided force do not.
//!
//! ```bash
//! cargo run --release --example momentum_conservation
//! ```

use hybrid_galilei::dynamics::{evolve, init_gaussian, AxisSpec, GridSpec, HamiltonianSpec, PacketSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = GridSpec {
        x: AxisSpec::new(64, 16.0),
        q: AxisSpec::new(64, 16.0),
        p: AxisSpec::new(64, 4.0),
        dt: 0.005,
        steps: 400,
    };
    let packet = PacketSpec { x0: 0.5, sigma_x: 2.0, k0: 0.5, q0: -0.5, sigma_q: 2.0, p0: 0.25, sigma_p: 0.5 };
    let free = HamiltonianSpec::free(1.0, 2.0);
    let runs = [
        ("g2 (k/M - p/m)^2", HamiltonianSpec { g2: 0.5, ..free }),
        ("g1 (x - q)^2", HamiltonianSpec { g1: 0.5, ..free }),
        ("g3 force on q", HamiltonianSpec { g3: 0.5, ..free }),
    ];
    println!("{:<20} {:>12} {:>12} {:>12}", "coupling", "d<k+p>", "d<p>", "d norm");
    for (name, h) in runs {
        let mut state = init_gaussian(&grid, &packet)?;
        let series = evolve(&mut state, &h, grid.steps, 20)?;
        println!(
            "{name:<20} {:>12.3e} {:>12.3e} {:>12.3e}",
            series.max_drift(|r| r.ktot),
            series.max_drift(|r| r.p),
            series.max_drift(|r| r.norm)
        );
    }
    Ok(())
}
