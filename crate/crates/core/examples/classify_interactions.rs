//! Classify the Galilei-invariant hybrid interactions of degree at most two
//! and report which of them conserve total momentum or act back on the
//! classical particle.
//!
//! ```bash
//! cargo run --release --example classify_interactions
//! ```

use hybrid_galilei::classify::{acceleration_operator, solve_invariant_space, ClassificationConfig};
use hybrid_galilei::galilei::build_hybrid_rep;
use hybrid_galilei::scalar::{Param, ParamScalar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rep =
        build_hybrid_rep(&ParamScalar::param(Param::QuantumMass), &ParamScalar::param(Param::ClassicalMass), None)?;

    let configs = [
        ("defaults", ClassificationConfig::default()),
        ("momentum conserving", ClassificationConfig { require_momentum_conservation: true, ..Default::default() }),
        ("lp degree <= 2", ClassificationConfig { max_lp_degree: 2, ..Default::default() }),
    ];
    for (name, config) in configs {
        let basis = solve_invariant_space(&config)?;
        println!(
            "{name}: {} candidates, {} constraints, rank {}, dimension {}",
            basis.basis_size, basis.constraint_rows, basis.rank, basis.dimension
        );
        for e in &basis.elements {
            let acc = acceleration_operator(&e.expr, &rep)?;
            println!(
                "  {:<36} momentum {:<5} back-reaction {:<5} classical acceleration {}",
                e.unicode_label,
                e.flags.conserves_momentum,
                e.flags.back_reaction(),
                acc.components[0].unicode()
            );
        }
    }
    Ok(())
}
