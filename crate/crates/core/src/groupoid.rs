//! Abelian groupoids: disjoint unions of finite abelian groups with
//! multiplication defined only inside a component.
//!
//! Canonically an element is `offset(component) + rank(residues)`. A groupoid
//! may additionally be placed on its carrier by a permutation, so that two
//! groupoids with different component layouts can share one set.

use std::fmt;

use crate::error::{QcrelError, Result};
use crate::group::FiniteAbelianGroup;
use crate::relcore::{Rel, Subset};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroupoid {
    components: Vec<FiniteAbelianGroup>,
    offsets: Vec<usize>,
    placement: Vec<usize>,
    slot: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupoidElement {
    pub component: usize,
    pub residues: Vec<usize>,
}

/// One element chosen from every component, as carrier indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Phase(pub Vec<usize>);

impl AbelianGroupoid {
    pub fn new(components: Vec<FiniteAbelianGroup>) -> Result<AbelianGroupoid> {
        let n: usize = components.iter().map(|g| g.order()).sum();
        AbelianGroupoid::with_placement(components, (0..n).collect())
    }

    /// `placement[k]` is the carrier index of the canonical element `k`.
    pub fn with_placement(
        components: Vec<FiniteAbelianGroup>,
        placement: Vec<usize>,
    ) -> Result<AbelianGroupoid> {
        if components.is_empty() {
            return Err(QcrelError::InvalidGroup("a groupoid needs a component".into()));
        }
        let mut offsets = Vec::with_capacity(components.len() + 1);
        offsets.push(0);
        for g in &components {
            offsets.push(offsets.last().unwrap() + g.order());
        }
        let n = *offsets.last().unwrap();
        if placement.len() != n {
            return Err(QcrelError::SizeMismatch { op: "placement", expected: n, found: placement.len() });
        }
        let mut slot = vec![usize::MAX; n];
        for (k, &c) in placement.iter().enumerate() {
            if c >= n || slot[c] != usize::MAX {
                return Err(QcrelError::Precondition("placement is not a permutation".into()));
            }
            slot[c] = k;
        }
        Ok(AbelianGroupoid { components, offsets, placement, slot })
    }

    /// `copies` copies of one group.
    pub fn uniform(g: &FiniteAbelianGroup, copies: usize) -> Result<AbelianGroupoid> {
        AbelianGroupoid::new(vec![g.clone(); copies])
    }

    /// `n` trivial components.
    pub fn discrete(n: usize) -> Result<AbelianGroupoid> {
        AbelianGroupoid::uniform(&FiniteAbelianGroup::trivial(), n)
    }

    pub fn carrier_size(&self) -> usize {
        self.placement.len()
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[FiniteAbelianGroup] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &FiniteAbelianGroup {
        &self.components[i]
    }

    pub fn placement(&self) -> &[usize] {
        &self.placement
    }

    pub fn is_discrete(&self) -> bool {
        self.components.iter().all(|g| g.is_trivial())
    }

    pub fn is_uniform(&self) -> bool {
        self.components.windows(2).all(|w| w[0] == w[1])
    }

    /// Same components and same layout on the carrier.
    pub fn same_structure(&self, other: &AbelianGroupoid) -> bool {
        self == other
    }

    /// (component, rank inside the component) of a carrier element.
    pub fn locate(&self, x: usize) -> (usize, usize) {
        let k = self.slot[x];
        let c = self.offsets.partition_point(|&o| o <= k) - 1;
        (c, k - self.offsets[c])
    }

    pub fn carrier_index(&self, component: usize, rank: usize) -> usize {
        self.placement[self.offsets[component] + rank]
    }

    pub fn element(&self, x: usize) -> GroupoidElement {
        let (c, r) = self.locate(x);
        GroupoidElement { component: c, residues: self.components[c].unrank(r) }
    }

    pub fn from_element(&self, e: &GroupoidElement) -> Result<usize> {
        let g = self
            .components
            .get(e.component)
            .ok_or(QcrelError::OutOfRange { index: e.component, size: self.num_components() })?;
        if e.residues.len() != g.factors().len() || e.residues.iter().zip(g.factors()).any(|(&r, &n)| r >= n) {
            return Err(QcrelError::Precondition("residues out of range".into()));
        }
        Ok(self.carrier_index(e.component, g.rank(&e.residues)))
    }

    pub fn component_of(&self, x: usize) -> usize {
        self.locate(x).0
    }

    pub fn mult(&self, x: usize, y: usize) -> Option<usize> {
        let (cx, rx) = self.locate(x);
        let (cy, ry) = self.locate(y);
        (cx == cy).then(|| self.carrier_index(cx, self.components[cx].add(rx, ry)))
    }

    pub fn inverse(&self, x: usize) -> usize {
        let (c, r) = self.locate(x);
        self.carrier_index(c, self.components[c].neg(r))
    }

    pub fn identity(&self, component: usize) -> usize {
        self.carrier_index(component, 0)
    }

    pub fn identities(&self) -> Subset {
        Subset::from_indices(self.carrier_size(), (0..self.num_components()).map(|c| self.identity(c)))
            .expect("identities lie in the carrier")
    }

    /// Elements of one component, in rank order.
    pub fn component_elements(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.components[c].order()).map(move |r| self.carrier_index(c, r))
    }

    /// Set-extended product; undefined products contribute nothing.
    pub fn set_mult(&self, s: &Subset, t: &Subset) -> Subset {
        let mut out = Subset::empty(self.carrier_size());
        for x in s.indices() {
            let c = self.component_of(x);
            for y in self.component_elements(c).filter(|&y| t.contains(y)) {
                out.insert(self.mult(x, y).expect("same component"));
            }
        }
        out
    }

    pub fn set_inverse(&self, s: &Subset) -> Subset {
        Subset::from_indices(self.carrier_size(), s.indices().map(|x| self.inverse(x))).expect("in range")
    }

    /// `(A x A) -> A`, defined products only.
    pub fn mult_rel(&self) -> Rel {
        let n = self.carrier_size();
        Rel::from_fn(n * n, n, |i| self.mult(i / n, i % n))
    }

    /// `{*} -> A` onto the identities.
    pub fn unit_rel(&self) -> Rel {
        self.identities().as_state()
    }

    pub fn comult_rel(&self) -> Rel {
        self.mult_rel().converse()
    }

    pub fn counit_rel(&self) -> Rel {
        self.unit_rel().converse()
    }

    /// The antipode: elementwise inverse.
    pub fn antipode_rel(&self) -> Rel {
        let n = self.carrier_size();
        Rel::from_fn(n, n, |x| Some(self.inverse(x)))
    }

    pub fn classical_states(&self) -> Vec<Subset> {
        (0..self.num_components())
            .map(|c| Subset::from_indices(self.carrier_size(), self.component_elements(c)).expect("in range"))
            .collect()
    }

    /// For every group element, the set of its copies in all components.
    pub fn unbiased_states(&self) -> Result<Vec<Subset>> {
        if !self.is_uniform() {
            return Err(QcrelError::NonUniform(format!("{self}")));
        }
        Ok((0..self.components[0].order())
            .map(|r| {
                Subset::from_indices(
                    self.carrier_size(),
                    (0..self.num_components()).map(|c| self.carrier_index(c, r)),
                )
                .expect("in range")
            })
            .collect())
    }

    /// Every choice of one element per component.
    pub fn phase_group(&self) -> Vec<Phase> {
        let mut out = vec![Phase(vec![])];
        for c in 0..self.num_components() {
            out = out
                .into_iter()
                .flat_map(|p| {
                    self.component_elements(c).map(move |x| {
                        let mut v = p.0.clone();
                        v.push(x);
                        Phase(v)
                    })
                })
                .collect();
        }
        out
    }

    pub fn check_phase(&self, p: &Phase) -> Result<()> {
        if p.0.len() != self.num_components() {
            return Err(QcrelError::MalformedPhase(format!(
                "expected {} entries, got {}",
                self.num_components(),
                p.0.len()
            )));
        }
        for (c, &x) in p.0.iter().enumerate() {
            if x >= self.carrier_size() || self.component_of(x) != c {
                return Err(QcrelError::MalformedPhase(format!("entry {x} is not in component {c}")));
            }
        }
        Ok(())
    }

    pub fn apply_phase(&self, p: &Phase, s: &Subset) -> Result<Subset> {
        self.check_phase(p)?;
        if s.parent_size() != self.carrier_size() {
            return Err(QcrelError::SizeMismatch {
                op: "apply_phase",
                expected: self.carrier_size(),
                found: s.parent_size(),
            });
        }
        Subset::from_indices(
            self.carrier_size(),
            s.indices().map(|x| self.mult(p.0[self.component_of(x)], x).expect("same component")),
        )
    }

    /// The phase as a relation on the carrier.
    pub fn phase_rel(&self, p: &Phase) -> Result<Rel> {
        self.check_phase(p)?;
        let n = self.carrier_size();
        Ok(Rel::from_fn(n, n, |x| self.mult(p.0[self.component_of(x)], x)))
    }

    /// Triples `(a, b, c)` in one component with `a b c` the identity,
    /// encoded as `a n^2 + b n + c`.
    pub fn ghz_state(&self) -> Subset {
        let n = self.carrier_size();
        let mut out = Subset::empty(n * n * n);
        for c in 0..self.num_components() {
            let id = self.identity(c);
            for a in self.component_elements(c) {
                for b in self.component_elements(c) {
                    let ab = self.mult(a, b).expect("same component");
                    let z = self.mult(self.inverse(ab), id).expect("same component");
                    out.insert(a * n * n + b * n + z);
                }
            }
        }
        out
    }
}

impl fmt::Display for AbelianGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AbelianGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")?;
        if self.placement.iter().enumerate().any(|(k, &c)| k != c) {
            write!(f, " placed {:?}", self.placement)?;
        }
        Ok(())
    }
}

/// Full relation on `s x s`.
pub fn density_matrix(s: &Subset) -> Rel {
    let members: Vec<u32> = s.indices().map(|i| i as u32).collect();
    Rel::build(s.parent_size(), s.parent_size(), |a, out| {
        if s.contains(a) {
            out.extend_from_slice(&members)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Law {
    Associativity,
    Unitality,
    Coassociativity,
    Counitality,
    Frobenius,
    Specialness,
    Symmetry,
    Commutativity,
}

impl Law {
    pub const ALL: [Law; 8] = [
        Law::Associativity,
        Law::Unitality,
        Law::Coassociativity,
        Law::Counitality,
        Law::Frobenius,
        Law::Specialness,
        Law::Symmetry,
        Law::Commutativity,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub results: Vec<(Law, bool)>,
}

impl LawReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|&(_, ok)| ok)
    }

    pub fn failures(&self) -> Vec<Law> {
        self.results.iter().filter(|(_, ok)| !ok).map(|&(l, _)| l).collect()
    }

    pub fn passed(&self, law: Law) -> bool {
        self.results.iter().any(|&(l, ok)| l == law && ok)
    }
}

/// Evaluates the classical-structure laws for a multiplication `m: A x A -> A`
/// and unit `u: I -> A`, with the comonoid taken to be their converses.
pub fn check_structure_laws(m: &Rel, u: &Rel) -> Result<LawReport> {
    let n = u.cod_size();
    if m.dom_size() != n * n || m.cod_size() != n || u.dom_size() != 1 {
        return Err(QcrelError::SizeMismatch { op: "structure laws", expected: n, found: m.cod_size() });
    }
    let id = Rel::identity(n);
    let d = m.converse();
    let e = u.converse();
    let sw = Rel::swap(n, n);

    let assoc = m.compose(&m.tensor(&id))? == m.compose(&id.tensor(m))?;
    let unital = m.compose(&u.tensor(&id))? == id && m.compose(&id.tensor(u))? == id;
    let coassoc = d.tensor(&id).compose(&d)? == id.tensor(&d).compose(&d)?;
    let counital = e.tensor(&id).compose(&d)? == id && id.tensor(&e).compose(&d)? == id;
    let dm = d.compose(m)?;
    let frob = id.tensor(m).compose(&d.tensor(&id))? == dm && m.tensor(&id).compose(&id.tensor(&d))? == dm;
    let special = m.compose(&d)? == id;
    let cup = d.compose(u)?;
    let sym = sw.compose(&cup)? == cup;
    let comm = m.compose(&sw)? == *m;

    Ok(LawReport {
        results: vec![
            (Law::Associativity, assoc),
            (Law::Unitality, unital),
            (Law::Coassociativity, coassoc),
            (Law::Counitality, counital),
            (Law::Frobenius, frob),
            (Law::Specialness, special),
            (Law::Symmetry, sym),
            (Law::Commutativity, comm),
        ],
    })
}

pub fn verify_classical_structure(z: &AbelianGroupoid) -> LawReport {
    check_structure_laws(&z.mult_rel(), &z.unit_rel()).expect("shapes agree by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: &[&[usize]]) -> AbelianGroupoid {
        AbelianGroupoid::new(n.iter().map(|f| FiniteAbelianGroup::new(f.to_vec()).unwrap()).collect()).unwrap()
    }

    fn set(n: usize, v: &[usize]) -> Subset {
        Subset::from_indices(n, v.iter().copied()).unwrap()
    }

    #[test]
    fn z2_mult_is_xor() {
        let m = z(&[&[2]]).mult_rel();
        assert_eq!(m.to_string(), "{(0,0),(1,1),(2,1),(3,0)}");
    }

    #[test]
    fn cross_component_undefined() {
        let g = z(&[&[2], &[2]]);
        let m = g.mult_rel();
        assert!(m.image_of(2).is_empty());
        assert_eq!(m.len(), 8);
        assert_eq!(z(&[&[3], &[2, 2], &[1]]).mult_rel().len(), 9 + 16 + 1);
    }

    #[test]
    fn units() {
        assert_eq!(Subset::from_state(&z(&[&[4]]).unit_rel()).unwrap().to_string(), "{0}");
        assert_eq!(Subset::from_state(&z(&[&[2], &[2]]).unit_rel()).unwrap().to_string(), "{0,2}");
    }

    #[test]
    fn states_of_z2_plus_z2() {
        let g = z(&[&[2], &[2]]);
        let cl: Vec<String> = g.classical_states().iter().map(|s| s.to_string()).collect();
        assert_eq!(cl, vec!["{0,1}", "{2,3}"]);
        let ub: Vec<String> = g.unbiased_states().unwrap().iter().map(|s| s.to_string()).collect();
        assert_eq!(ub, vec!["{0,2}", "{1,3}"]);
        let z3 = z(&[&[3], &[3]]);
        assert!(z3.classical_states().iter().all(|s| s.len() == 3));
        assert!(z(&[&[2], &[3]]).unbiased_states().is_err());
        assert!(z(&[&[2, 2], &[4]]).unbiased_states().is_err());
    }

    #[test]
    fn phase_example() {
        // 00,01,10,11 are 0..3; the phase 11 picks 01 and 11.
        let g = z(&[&[2], &[2]]);
        let p = Phase(vec![1, 3]);
        assert_eq!(g.apply_phase(&p, &set(4, &[0, 2])).unwrap(), set(4, &[1, 3]));
        assert_eq!(g.apply_phase(&Phase(vec![0, 2]), &set(4, &[0, 3])).unwrap(), set(4, &[0, 3]));
        assert_eq!(g.phase_group().len(), 4);
        assert_eq!(z(&[&[3], &[2, 2], &[1]]).phase_group().len(), 12);
        assert!(g.apply_phase(&Phase(vec![1]), &set(4, &[0])).is_err());
        assert!(g.apply_phase(&Phase(vec![2, 3]), &set(4, &[0])).is_err());
    }

    #[test]
    fn ghz_of_z2() {
        let g = z(&[&[2]]);
        let ghz = g.ghz_state();
        let triples: Vec<(usize, usize, usize)> = ghz.indices().map(|i| (i / 4, i / 2 % 2, i % 2)).collect();
        let expected: Vec<(usize, usize, usize)> = (0..8)
            .map(|i| (i / 4, i / 2 % 2, i % 2))
            .filter(|(a, b, c)| (a + b + c) % 2 == 0)
            .collect();
        assert_eq!(triples, expected);
        assert_eq!(triples, vec![(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]);
    }

    #[test]
    fn ghz_triples_stay_in_one_component() {
        let g = z(&[&[3], &[2]]);
        let n = g.carrier_size();
        let ghz = g.ghz_state();
        assert_eq!(ghz.len(), 9 + 4);
        for i in ghz.indices() {
            let (a, b, c) = (i / (n * n), i / n % n, i % n);
            assert!(g.component_of(a) == g.component_of(b) && g.component_of(b) == g.component_of(c));
        }
    }

    #[test]
    fn density_matrices() {
        assert_eq!(density_matrix(&set(1, &[0])).to_string(), "{(0,0)}");
        let d = density_matrix(&set(4, &[0, 2]));
        assert_eq!(d.to_string(), "{(0,0),(0,2),(2,0),(2,2)}");
        assert_eq!(d.compose(&d).unwrap(), d);
    }

    #[test]
    fn trivial_groupoid_passes() {
        assert!(verify_classical_structure(&z(&[&[1]])).all_pass());
    }

    #[test]
    fn mutation_breaks_a_law() {
        let g = z(&[&[2]]);
        let m = g.mult_rel();
        for (a, b) in m.pairs().collect::<Vec<_>>() {
            let mutated = Rel::from_pairs(4, 2, m.pairs().filter(|&p| p != (a, b))).unwrap();
            let report = check_structure_laws(&mutated, &g.unit_rel()).unwrap();
            assert!(!report.all_pass(), "removing ({a},{b}) went unnoticed");
        }
    }

    #[test]
    fn placement_relabels() {
        // Components {0,2} and {1,3}.
        let g = AbelianGroupoid::with_placement(vec![FiniteAbelianGroup::cyclic(2); 2], vec![0, 2, 1, 3]).unwrap();
        let cl: Vec<String> = g.classical_states().iter().map(|s| s.to_string()).collect();
        assert_eq!(cl, vec!["{0,2}", "{1,3}"]);
        assert_eq!(g.mult(2, 2), Some(0));
        assert_eq!(g.mult(0, 1), None);
        assert!(verify_classical_structure(&g).all_pass());
        assert!(AbelianGroupoid::with_placement(vec![FiniteAbelianGroup::cyclic(2)], vec![0, 0]).is_err());
    }

    fn arb_groupoid() -> impl Strategy<Value = AbelianGroupoid> {
        proptest::collection::vec(proptest::collection::vec(1..=4usize, 1..=2), 1..=4)
            .prop_filter("carrier at most 12", |cs| {
                cs.iter().map(|f| f.iter().product::<usize>()).sum::<usize>() <= 12
            })
            .prop_map(|cs| {
                AbelianGroupoid::new(cs.into_iter().map(|f| FiniteAbelianGroup::new(f).unwrap()).collect())
                    .unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn laws_hold(g in arb_groupoid()) {
            let r = verify_classical_structure(&g);
            prop_assert!(r.all_pass(), "{:?} failed {:?}", g, r.failures());
        }

        #[test]
        fn components_are_groups(g in arb_groupoid()) {
            let m = g.mult_rel();
            let n = g.carrier_size();
            for c in 0..g.num_components() {
                for x in g.component_elements(c) {
                    for y in g.component_elements(c) {
                        prop_assert_eq!(m.image_of(x * n + y).len(), 1);
                    }
                }
            }
        }

        #[test]
        fn states_partition(g in arb_groupoid()) {
            let n = g.carrier_size();
            let mut count = vec![0; n];
            for s in g.classical_states() {
                for i in s.indices() { count[i] += 1; }
            }
            prop_assert!(count.iter().all(|&c| c == 1));
            if let Ok(ub) = g.unbiased_states() {
                let mut count = vec![0; n];
                for s in &ub {
                    for i in s.indices() { count[i] += 1; }
                    for c in g.classical_states() {
                        prop_assert_eq!(s.intersection(&c).unwrap().len(), 1);
                    }
                }
                prop_assert!(count.iter().all(|&c| c == 1));
            }
        }

        #[test]
        fn phases_are_bijections(g in arb_groupoid()) {
            for p in g.phase_group().iter().take(32) {
                prop_assert!(g.phase_rel(p).unwrap().is_bijection());
            }
        }

        #[test]
        fn density_idempotent(mask in proptest::collection::vec(any::<bool>(), 1..8)) {
            let s = Subset::from_mask(mask);
            let d = density_matrix(&s);
            prop_assert_eq!(d.compose(&d).unwrap(), d);
        }
    }
}
