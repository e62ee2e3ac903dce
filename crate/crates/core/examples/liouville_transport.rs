//! Free classical transport on the hybrid grid, compared with the exact
//! solution along characteristics.
//!
//! ```bash
//! cargo run --release --example liouville_transport
//! ```

use hybrid_galilei::dynamics::{
    characteristics_oracle, classical_marginal, evolve, gaussian_density, init_gaussian, l2_distance, AxisSpec,
    GridSpec, HamiltonianSpec, PacketSpec,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = GridSpec {
        x: AxisSpec::new(64, 10.0),
        q: AxisSpec::new(64, 10.0),
        p: AxisSpec::new(64, 2.0),
        dt: 0.05,
        steps: 20,
    };
    let packet = PacketSpec { x0: 0.0, sigma_x: 1.25, k0: 0.0, q0: -2.0, sigma_q: 1.25, p0: 0.5, sigma_p: 0.25 };
    let h = HamiltonianSpec::free(1.0, 1.0);
    let mut state = init_gaussian(&grid, &packet)?;
    let rho0 = gaussian_density(&packet);
    for _ in 0..5 {
        evolve(&mut state, &h, grid.steps, grid.steps)?;
        let exact = characteristics_oracle(&grid, &rho0, h.classical_mass, state.time);
        let err = l2_distance(&grid, &classical_marginal(&state), &exact);
        println!("t = {:.1}: L2 error {err:.2e}", state.time);
    }
    Ok(())
}
