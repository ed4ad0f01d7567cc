//! Complementary pairs on an H x G grid: CNOT bijectivity, strong
//! complementarity, and what goes wrong for structures that do not fit.

use qcrel::comp::{build_pair, check_bialgebra, check_resolution_of_identity, cnot_rel, grid_criterion, span_intersection};
use qcrel::verify::{non_complementary_pairs, small_groups};

fn main() -> qcrel::Result<()> {
    println!("{:<8} {:<8} {:<6} {:<7} span meet", "G", "H", "CNOT", "strong");
    for g in small_groups() {
        for h in small_groups() {
            let p = build_pair(&g, &h);
            let cnot = cnot_rel(&p.x, &p.z)?.is_bijection();
            let strong = check_bialgebra(&p.x, &p.z)?.holds();
            println!("{:<8} {:<8} {:<6} {:<7} {}", g.to_string(), h.to_string(), cnot, strong, span_intersection(&p).len());
        }
    }
    println!();
    for (name, z, x) in non_complementary_pairs() {
        let cnot = cnot_rel(&x, &z).map(|r| r.is_bijection()).unwrap_or(false);
        println!("{name}: CNOT bijective {cnot}, grid {}", grid_criterion(&z, &x));
    }
    let p = build_pair(&qcrel::FiniteAbelianGroup::cyclic(2), &qcrel::FiniteAbelianGroup::cyclic(3));
    println!("\nprojectors of {} resolve the identity: {}", p.x, check_resolution_of_identity(&p.x));
    println!("projectors of the discrete structure do: {}", check_resolution_of_identity(&qcrel::AbelianGroupoid::discrete(6)?));
    Ok(())
}
