//! Group homomorphism identification: the relational composite on small
//! systems, then the state-vector simulation with query counts.

use qcrel::classrel::{enumerate_classical_relations, DEFAULT_CAP};
use qcrel::fourier::{classical_query_count, enumerate_homs, grouphomid_identify, separation_table, HomOracle};
use qcrel::qcalg::{grouphomid_run, homid_reachable_states};
use qcrel::text::parse_group;
use qcrel::verify::reference_pair;

fn main() -> qcrel::Result<()> {
    let p = reference_pair("Z3")?;
    for f in enumerate_classical_relations(&p.x, &p.x, DEFAULT_CAP)? {
        let out = grouphomid_run(&f, &p, &p, 0, 0)?;
        println!("{:<22} composite {:<16} simplified agrees: {}  reachable {:?}", f.rel().to_string(), out.outcome.composite.to_string(), out.agrees, homid_reachable_states(&f, &p, &p)?);
    }

    let (g, a) = (parse_group("Z2xZ2")?, parse_group("Z2xZ4")?);
    let homs = enumerate_homs(&g, &a);
    let hidden = homs[homs.len() / 2].clone();
    let oracle = HomOracle::new(hidden.clone());
    let id = grouphomid_identify(&g, &a, &oracle)?;
    println!("\n{g} -> {a}: {} homomorphisms", homs.len());
    println!("hidden images {:?}", hidden.image);
    println!("found  images {:?} in {} queries (classical needs {})", id.table.image, id.query_count, classical_query_count(&g));

    println!("\n{:<18} {:<10} quantum", "source", "classical");
    for row in separation_table(6) {
        println!("{:<18} {:<10} {}", row.source, row.classical, row.quantum);
    }
    Ok(())
}
