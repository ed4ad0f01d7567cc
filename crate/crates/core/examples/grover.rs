//! Single-shot Grover as a relation composite, with the zero condition
//! checked per measurement state and a marked-state search.

use qcrel::comp::build_pair;
use qcrel::qcalg::{grover_run, marked_search_relation};
use qcrel::text::parse_rel;
use qcrel::FiniteAbelianGroup;

fn main() -> qcrel::Result<()> {
    let p = build_pair(&FiniteAbelianGroup::cyclic(2), &FiniteAbelianGroup::cyclic(2));
    let states = p.z.classical_states();
    for lit in ["{(0,2),(2,2),(1,3),(3,3)}", "{(0,0),(2,0),(0,1),(2,1)}"] {
        let out = grover_run(&parse_rel(lit, 4, 4)?, &p, &p, 1)?;
        println!("f = {lit}");
        println!("  diffusion {} (bijection: {})", out.diffusion, out.diffusion_is_bijection);
        println!("  output {}", out.outcome.output_state);
        for z in &out.zero_condition {
            println!("  {}: possible {}, same as X_0 under f {}", states[z.rho], z.possible, z.condition_holds);
        }
    }

    let s = build_pair(&FiniteAbelianGroup::cyclic(3), &FiniteAbelianGroup::cyclic(2));
    for marked in 0..s.z.num_components() {
        let f = marked_search_relation(&s, &p, marked, 1, 0)?;
        let out = grover_run(&f, &s, &p, 1)?;
        println!("search over {} states, marked {marked}: possible {:?}", s.z.num_components(), out.possible_states());
    }
    Ok(())
}
