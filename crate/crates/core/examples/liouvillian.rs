//! Build Koopman-von Neumann Liouvillians from classical Hamiltonians and
//! check that the total momentum of a two-body system is conserved.
//!
//! ```bash
//! cargo run --example liouvillian
//! ```

use hybrid_galilei::expr::parse_operator;
use hybrid_galilei::galilei::{apply_as_differential_operator, liouvillian_from_hamiltonian, PhaseSpacePoly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let free = PhaseSpacePoly::try_from_expr(parse_operator("dot(P,P)/(2*m)")?)?;
    println!("H = {free}");
    println!("L = {}", liouvillian_from_hamiltonian(&free).unicode());

    let two_body =
        PhaseSpacePoly::try_from_expr(parse_operator("dot(P,P)/(2*m1) + dot(P2,P2)/(2*m2) + dot(Q - Q2, Q - Q2)/2")?)?;
    let l = liouvillian_from_hamiltonian(&two_body);
    println!("H = {two_body}");
    println!("L = {}", l.unicode());
    for a in 1..=3 {
        let total = parse_operator(&format!("p[{a}] + p2[{a}]"))?;
        println!("[p[{a}] + p2[{a}], L] = {}", total.commutator(&l).unicode());
    }

    let f = PhaseSpacePoly::try_from_expr(parse_operator("q[1]*p2[1]")?)?;
    println!("L acting on {f}: {}", apply_as_differential_operator(&l, &f)?);
    Ok(())
}
