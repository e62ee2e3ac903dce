//! Parse operator expressions, print them back, and show positioned errors.
//!
//! ```bash
//! cargo run --example parse_expressions
//! ```

use hybrid_galilei::expr::{eval, parse};

fn main() {
    let inputs = [
        "comm(r[1], k[1])",
        "-2*q[1]^2 + i*lq[1]/m",
        "dot(cross(R, K), Q)",
        "adj(i*r[1]*k[1])",
        "(K/M - P/m)[2]",
        "q[1]/p[1]",
        "q[4]",
        "comm(q[1])",
    ];
    for text in inputs {
        match parse(text).and_then(|ast| Ok((ast.to_string(), eval(&ast)?))) {
            Ok((ast, value)) => println!("{text:<24} parsed {ast:<28} = {}", value.unicode()),
            Err(e) => println!("{text:<24} error: {e}"),
        }
    }
}
