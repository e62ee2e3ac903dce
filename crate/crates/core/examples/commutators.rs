//! Exact commutators in the hybrid operator algebra.
//!
//! ```bash
//! cargo run --example commutators
//! ```

use hybrid_galilei::expr::parse_operator;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pairs = [
        ("r[1]", "k[1]"),
        ("q[2]", "lq[2]"),
        ("p[3]", "lp[3]"),
        ("r[1]", "q[1]"),
        ("dot(K,K)/(2*M)", "M*r[1] - t*k[1]"),
        ("dot(P,LQ)/m", "m*q[1] - t*lq[1]"),
    ];
    for (a, b) in pairs {
        let (x, y) = (parse_operator(a)?, parse_operator(b)?);
        println!("[{a}, {b}] = {}", x.commutator(&y).unicode());
    }

    let word = parse_operator("lp[1]*p[1]*k[1]*r[1]")?;
    println!("normal form of lp[1]*p[1]*k[1]*r[1]: {}", word.unicode());
    println!("its adjoint: {}", word.adjoint().unicode());
    Ok(())
}
