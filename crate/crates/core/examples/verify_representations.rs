//! Check the Galilei algebra in the quantum, classical and hybrid
//! representations, with symbolic masses and time.
//!
//! ```bash
//! cargo run --example verify_representations
//! ```

use hybrid_galilei::expr::parse_operator;
use hybrid_galilei::galilei::{
    build_classical_rep, build_hybrid_rep, build_quantum_rep, two_particle_quantum_check, verify_algebra,
};
use hybrid_galilei::scalar::{Param, ParamScalar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let big_m = ParamScalar::param(Param::QuantumMass);
    let m = ParamScalar::param(Param::ClassicalMass);

    for rep in [build_quantum_rep(&big_m)?, build_classical_rep(&m)?, build_hybrid_rep(&big_m, &m, None)?] {
        let report = verify_algebra(&rep);
        println!("{}: charge {}, {}", rep.name, rep.central_charge, summary(&report));
    }

    // A relative-velocity interaction keeps the hybrid algebra intact.
    let v2 = parse_operator("dot(K/M - P/m, K/M - P/m)")?;
    let rep = build_hybrid_rep(&big_m, &m, Some(&v2))?;
    println!("hybrid + (k/M-p/m)^2: {}", summary(&verify_algebra(&rep)));

    // An external potential on the classical particle breaks translations.
    let external = parse_operator("dot(Q, LP)")?;
    let report = verify_algebra(&build_hybrid_rep(&big_m, &m, Some(&external))?);
    println!("hybrid + q.lp: {}", summary(&report));
    for f in report.failures().take(3) {
        println!("  {} residual {}", f.label, f.residual.unicode());
    }

    let report = two_particle_quantum_check(&parse_operator("dot(R - R2, R - R2)")?)?;
    println!("two quantum particles: {}", summary(&report));
    Ok(())
}

fn summary(report: &hybrid_galilei::galilei::AlgebraReport) -> String {
    let failed = report.failures().count();
    format!("{}/{} relations hold", report.entries.len() - failed, report.entries.len())
}
