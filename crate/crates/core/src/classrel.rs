//! Classical relations: relations whose converse preserves groupoid
//! multiplication and sends the identities of the codomain exactly onto the
//! identities of the domain.

use rayon::prelude::*;

use crate::error::{QcrelError, Result};
use crate::groupoid::AbelianGroupoid;
use crate::relcore::{Rel, Subset};

pub const DEFAULT_CAP: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalRelation {
    rel: Rel,
    source: AbelianGroupoid,
    target: AbelianGroupoid,
}

impl ClassicalRelation {
    pub fn new(rel: Rel, source: &AbelianGroupoid, target: &AbelianGroupoid) -> Result<ClassicalRelation> {
        if !is_classical_relation(&rel, source, target)? {
            return Err(QcrelError::NotClassical(rel.to_string()));
        }
        Ok(ClassicalRelation { rel, source: source.clone(), target: target.clone() })
    }

    pub fn rel(&self) -> &Rel {
        &self.rel
    }

    pub fn source(&self) -> &AbelianGroupoid {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroupoid {
        &self.target
    }
}

fn check_shape(r: &Rel, za: &AbelianGroupoid, zb: &AbelianGroupoid) -> Result<()> {
    if r.dom_size() != za.carrier_size() {
        return Err(QcrelError::SizeMismatch { op: "relation domain", expected: za.carrier_size(), found: r.dom_size() });
    }
    if r.cod_size() != zb.carrier_size() {
        return Err(QcrelError::SizeMismatch { op: "relation codomain", expected: zb.carrier_size(), found: r.cod_size() });
    }
    Ok(())
}

fn image_of(r: &Rel, x: usize) -> Subset {
    Subset::from_indices(r.cod_size(), r.image_of(x).iter().map(|&b| b as usize)).expect("in range")
}

/// `R(x . y) = R(x) . R(y)` for all `x, y`, with undefined products sent to
/// the empty set.
pub fn is_groupoid_hom_rel(r: &Rel, za: &AbelianGroupoid, zb: &AbelianGroupoid) -> Result<bool> {
    check_shape(r, za, zb)?;
    let n = za.carrier_size();
    let images: Vec<Subset> = (0..n).map(|x| image_of(r, x)).collect();
    let empty = Subset::empty(zb.carrier_size());
    for x in 0..n {
        for y in 0..n {
            let lhs = za.mult(x, y).map(|p| &images[p]).unwrap_or(&empty);
            if *lhs != zb.set_mult(&images[x], &images[y]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_monoid_hom_rel(r: &Rel, za: &AbelianGroupoid, zb: &AbelianGroupoid) -> Result<bool> {
    check_shape(r, za, zb)?;
    Ok(r.image(&za.identities())? == zb.identities() && is_groupoid_hom_rel(r, za, zb)?)
}

pub fn is_classical_relation(f: &Rel, za: &AbelianGroupoid, zb: &AbelianGroupoid) -> Result<bool> {
    check_shape(f, za, zb)?;
    is_monoid_hom_rel(&f.converse(), zb, za)
}

/// The image meets every component of `zb`.
pub fn is_object_surjective(r: &Rel, zb: &AbelianGroupoid) -> bool {
    let img = r.image(&Subset::full(r.dom_size())).expect("full domain");
    zb.classical_states().iter().all(|c| c.intersects(&img))
}

/// `inv_A(f^-1(inv_B(e))) = f^-1(e)` for every `e` in the codomain.
pub fn is_self_conjugate(f: &ClassicalRelation) -> bool {
    let conv = f.rel.converse();
    (0..f.target.carrier_size()).all(|e| {
        let lhs = f.source.set_inverse(&image_of(&conv, f.target.inverse(e)));
        lhs == image_of(&conv, e)
    })
}

/// Bitmask view of a groupoid, for the enumeration inner loop.
struct MaskTables {
    n: usize,
    /// `mult[x * n + y]`
    mult: Vec<Option<u8>>,
    identities: u64,
}

impl MaskTables {
    fn new(z: &AbelianGroupoid) -> MaskTables {
        let n = z.carrier_size();
        let mut mult = vec![None; n * n];
        for x in 0..n {
            for y in 0..n {
                mult[x * n + y] = z.mult(x, y).map(|p| p as u8);
            }
        }
        let identities = z.identities().indices().fold(0u64, |m, i| m | 1 << i);
        MaskTables { n, mult, identities }
    }

    fn set_mult(&self, s: u64, t: u64) -> u64 {
        let mut out = 0;
        let mut a = s;
        while a != 0 {
            let x = a.trailing_zeros() as usize;
            a &= a - 1;
            let mut b = t;
            while b != 0 {
                let y = b.trailing_zeros() as usize;
                b &= b - 1;
                if let Some(p) = self.mult[x * self.n + y] {
                    out |= 1 << p;
                }
            }
        }
        out
    }
}

/// Candidate `i` contains pairing `k` (the `k`-th pair of `A x B` in
/// lexicographic order) when bit `k` of `i`, counted from the most
/// significant of `|A||B|` bits, is set.
fn candidate_preimages(i: u64, na: usize, nb: usize, pre: &mut [u64]) {
    let bits = na * nb;
    pre.iter_mut().for_each(|p| *p = 0);
    for k in 0..bits {
        if i >> (bits - 1 - k) & 1 == 1 {
            let (a, b) = (k / nb, k % nb);
            pre[b] |= 1 << a;
        }
    }
}

fn passes(pre: &[u64], ta: &MaskTables, tb: &MaskTables) -> bool {
    // unit condition first: f^-1(Id(B)) = Id(A)
    let mut unit = 0;
    let mut ids = tb.identities;
    while ids != 0 {
        let e = ids.trailing_zeros() as usize;
        ids &= ids - 1;
        unit |= pre[e];
    }
    if unit != ta.identities {
        return false;
    }
    for x in 0..tb.n {
        for y in 0..tb.n {
            let lhs = tb.mult[x * tb.n + y].map(|p| pre[p as usize]).unwrap_or(0);
            if lhs != ta.set_mult(pre[x], pre[y]) {
                return false;
            }
        }
    }
    true
}

fn rel_from_preimages(pre: &[u64], na: usize, nb: usize) -> Rel {
    Rel::build(na, nb, |a, out| {
        for (b, &m) in pre.iter().enumerate() {
            if m >> a & 1 == 1 {
                out.push(b as u32);
            }
        }
    })
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub cap: usize,
    /// Number of contiguous index ranges the search is split into.
    pub chunks: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { cap: DEFAULT_CAP, chunks: 64 }
    }
}

pub fn enumerate_classical_relations(
    za: &AbelianGroupoid,
    zb: &AbelianGroupoid,
    cap: usize,
) -> Result<Vec<ClassicalRelation>> {
    enumerate_with(za, zb, &EnumerateOptions { cap, ..Default::default() })
}

/// Exhaustive search over all `2^(|A||B|)` relations, returned sorted by
/// their pair lists.
pub fn enumerate_with(
    za: &AbelianGroupoid,
    zb: &AbelianGroupoid,
    opts: &EnumerateOptions,
) -> Result<Vec<ClassicalRelation>> {
    let (na, nb) = (za.carrier_size(), zb.carrier_size());
    let bits = na * nb;
    if bits > opts.cap || bits > 40 {
        return Err(QcrelError::CapExceeded { bits, cap: opts.cap.min(40) });
    }
    let (ta, tb) = (MaskTables::new(za), MaskTables::new(zb));
    let total: u64 = 1 << bits;
    let chunks = opts.chunks.max(1) as u64;
    let step = total.div_ceil(chunks);
    let found: Vec<Vec<Rel>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut pre = vec![0u64; nb];
            let mut out = Vec::new();
            for i in (c * step)..((c + 1) * step).min(total) {
                candidate_preimages(i, na, nb, &mut pre);
                if passes(&pre, &ta, &tb) {
                    out.push(rel_from_preimages(&pre, na, nb));
                }
            }
            out
        })
        .collect();
    let mut rels: Vec<Rel> = found.into_iter().flatten().collect();
    rels.sort_by_cached_key(|r| r.pairs().collect::<Vec<_>>());
    Ok(rels
        .into_iter()
        .map(|rel| ClassicalRelation { rel, source: za.clone(), target: zb.clone() })
        .collect())
}

/// The relation sending every identity of `za` to all of the classical
/// state `c` of `zb`, and nothing else.
pub fn constant_relation(za: &AbelianGroupoid, zb: &AbelianGroupoid, c: usize) -> Rel {
    let ids = za.identities();
    let state: Vec<u32> = zb.component_elements(c).map(|x| x as u32).collect();
    Rel::build(za.carrier_size(), zb.carrier_size(), |a, out| {
        if ids.contains(a) {
            out.extend_from_slice(&state)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteAbelianGroup;
    use crate::relcore::all_relations;

    fn zg(factors: &[usize]) -> AbelianGroupoid {
        AbelianGroupoid::new(factors.iter().map(|&n| FiniteAbelianGroup::cyclic(n)).collect()).unwrap()
    }

    fn rel(n: usize, pairs: &[(usize, usize)]) -> Rel {
        Rel::from_pairs(n, n, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn monoid_hom_examples() {
        let z3 = zg(&[3]);
        assert!(is_monoid_hom_rel(&rel(3, &[(0, 0), (1, 1), (2, 2)]).converse(), &z3, &z3).unwrap());
        assert!(is_monoid_hom_rel(&rel(3, &[(0, 0), (1, 0), (2, 0)]), &z3, &z3).unwrap());
        assert!(!is_monoid_hom_rel(&rel(3, &[(0, 1)]), &z3, &z3).unwrap());
    }

    #[test]
    fn classical_examples() {
        let z3 = zg(&[3]);
        assert!(is_classical_relation(&rel(3, &[(0, 0), (0, 1), (0, 2)]), &z3, &z3).unwrap());
        assert!(is_classical_relation(&rel(3, &[(0, 0), (1, 2), (2, 1)]), &z3, &z3).unwrap());
        assert!(!is_classical_relation(&Rel::empty(3, 3), &z3, &z3).unwrap());
        assert!(is_classical_relation(&Rel::empty(3, 3), &z3, &zg(&[2])).is_err());
    }

    #[test]
    fn groupoid_hom_examples() {
        let z3 = zg(&[3]);
        assert!(is_groupoid_hom_rel(&Rel::empty(3, 3), &z3, &z3).unwrap());
        assert!(is_groupoid_hom_rel(&rel(3, &[(0, 0), (1, 0), (2, 0)]), &z3, &z3).unwrap());
    }

    /// Multiplicativity plus object surjectivity does not force the unit
    /// law: the full relation on Z3 satisfies both and sends 0 to everything.
    /// With identities sent into identities the implication holds.
    #[test]
    fn object_surjective_groupoid_homs_and_the_unit_law() {
        for z in [zg(&[3]), zg(&[2, 2])] {
            let n = z.carrier_size();
            let mut counterexamples = Vec::new();
            let mut checked = 0;
            for r in all_relations(n, n) {
                let mono = is_monoid_hom_rel(&r, &z, &z).unwrap();
                if mono {
                    assert!(is_groupoid_hom_rel(&r, &z, &z).unwrap());
                }
                if is_groupoid_hom_rel(&r, &z, &z).unwrap() && is_object_surjective(&r, &z) {
                    if r.image(&z.identities()).unwrap().is_subset_of(&z.identities()) {
                        assert!(mono, "{r}");
                        checked += 1;
                    } else if !mono {
                        counterexamples.push(r);
                    }
                }
            }
            assert!(checked > 0);
            if z.num_components() == 1 {
                assert!(counterexamples.contains(&Rel::full(n, n)));
            }
        }
    }

    #[test]
    fn self_conjugacy_hand_example() {
        // f = {(1,0),(0,1),(2,2)} on Z3: f^-1(1) = {0}, while
        // inv(f^-1(inv 1)) = inv(f^-1(2)) = inv({2}) = {1}.
        let z3 = zg(&[3]);
        let f = ClassicalRelation { rel: rel(3, &[(1, 0), (0, 1), (2, 2)]), source: z3.clone(), target: z3.clone() };
        assert!(!is_self_conjugate(&f));
        let g = ClassicalRelation::new(rel(3, &[(0, 0), (1, 2), (2, 1)]), &z3, &z3).unwrap();
        assert!(is_self_conjugate(&g));
    }

    #[test]
    fn enumeration_matches_direct_predicate() {
        for (a, b) in [(vec![3], vec![3]), (vec![2, 1], vec![3]), (vec![2], vec![2, 2]), (vec![1, 1], vec![2])] {
            let (za, zb) = (zg(&a), zg(&b));
            let fast: Vec<Rel> = enumerate_classical_relations(&za, &zb, 25)
                .unwrap()
                .into_iter()
                .map(|c| c.rel)
                .collect();
            let slow: Vec<Rel> = all_relations(za.carrier_size(), zb.carrier_size())
                .filter(|r| is_classical_relation(r, &za, &zb).unwrap())
                .collect();
            let mut slow_sorted = slow.clone();
            slow_sorted.sort_by_cached_key(|r| r.pairs().collect::<Vec<_>>());
            assert_eq!(fast, slow_sorted, "{a:?} -> {b:?}");
        }
    }

    #[test]
    fn enumeration_ignores_partitioning() {
        let z = zg(&[2, 2]);
        let serial = enumerate_with(&z, &z, &EnumerateOptions { cap: 25, chunks: 1 }).unwrap();
        for chunks in [2, 7, 300] {
            assert_eq!(enumerate_with(&z, &z, &EnumerateOptions { cap: 25, chunks }).unwrap(), serial);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let z = zg(&[2, 2]);
        assert_eq!(
            enumerate_classical_relations(&z, &z, 15),
            Err(QcrelError::CapExceeded { bits: 16, cap: 15 })
        );
    }

    #[test]
    fn constants_are_classical() {
        for (a, b) in [(vec![3], vec![3]), (vec![2, 2], vec![2, 2]), (vec![2, 2], vec![3, 1])] {
            let (za, zb) = (zg(&a), zg(&b));
            for c in 0..zb.num_components() {
                let f = constant_relation(&za, &zb, c);
                assert!(is_classical_relation(&f, &za, &zb).unwrap(), "{f}");
            }
        }
    }
}
