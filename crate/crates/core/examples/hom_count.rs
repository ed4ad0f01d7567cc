//! Counts homomorphisms between finite abelian groups by enumeration and by
//! the gcd product formula.
//!
//! cargo run --example hom_count -- Z2xZ4 Z4xZ8

use qcrel::fourier::{count_homs_enumerated, count_homs_formula};
use qcrel::text::parse_group;

fn main() -> qcrel::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let pairs = match args.as_slice() {
        [a, b] => vec![(a.clone(), b.clone())],
        _ => [("Z2xZ2", "Z2"), ("Z4", "Z2xZ8"), ("Z9", "Z3xZ3"), ("Z2xZ4xZ8", "Z2xZ4")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    };
    for (a, b) in pairs {
        let (g, h) = (parse_group(&a)?, parse_group(&b)?);
        println!("{g} -> {h}: enumerated {}, formula {}", count_homs_enumerated(&g, &h), count_homs_formula(&g, &h)?);
    }
    Ok(())
}
