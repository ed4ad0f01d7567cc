//! Deutsch-Jozsa on the four-element system, for every classical relation.

use qcrel::classrel::{enumerate_classical_relations, DEFAULT_CAP};
use qcrel::comp::build_pair;
use qcrel::qcalg::{dj_run, is_balanced_rel, is_constant_rel};
use qcrel::FiniteAbelianGroup;

fn main() -> qcrel::Result<()> {
    let p = build_pair(&FiniteAbelianGroup::cyclic(2), &FiniteAbelianGroup::cyclic(2));
    println!("data structure {}, measurement states {:?}", p.x, p.z.classical_states().iter().map(|s| s.to_string()).collect::<Vec<_>>());
    for f in enumerate_classical_relations(&p.x, &p.x, DEFAULT_CAP)? {
        let out = dj_run(&f, &p, &p)?;
        let class = match (is_constant_rel(&f), is_balanced_rel(&f, &p, &p)?) {
            (true, _) => "constant",
            (_, true) => "balanced",
            _ => "-",
        };
        println!("{:<28} {class:<9} scalar {} output {}", f.rel().to_string(), out.scalar.is_one() as u8, out.output_state);
    }
    Ok(())
}
