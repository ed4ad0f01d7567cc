//! Classical relations between small groupoids, found by exhaustive search.
//!
//! cargo run --example enumerate_appendix -- Z2+Z2 Z2+Z2

use qcrel::classrel::{enumerate_classical_relations, is_self_conjugate, DEFAULT_CAP};
use qcrel::text::parse_groupoid;

fn main() -> qcrel::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let pairs: Vec<(String, String)> = match args.as_slice() {
        [a, b] => vec![(a.clone(), b.clone())],
        _ => ["Z3", "Z4", "Z2+Z2"].iter().map(|s| (s.to_string(), s.to_string())).collect(),
    };
    for (a, b) in pairs {
        let (za, zb) = (parse_groupoid(&a)?, parse_groupoid(&b)?);
        let found = enumerate_classical_relations(&za, &zb, DEFAULT_CAP)?;
        println!("{za} -> {zb}: {} classical relations", found.len());
        for f in &found {
            let mark = if is_self_conjugate(f) { "" } else { "  (not self-conjugate)" };
            println!("  {}{mark}", f.rel());
        }
    }
    Ok(())
}
