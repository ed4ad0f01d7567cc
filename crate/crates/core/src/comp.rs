//! Complementary groupoid pairs on an `H x G` grid, the relational CNOT,
//! the bialgebra test for strong complementarity and the relational
//! Fourier structures.

use crate::error::{QcrelError, Result};
use crate::group::{FiniteAbelianGroup, GroupHomTable};
use crate::groupoid::{density_matrix, AbelianGroupoid};
use crate::relcore::{Rel, Subset};

/// Carrier element `(h, g)` sits at `h * |G| + g`.
///
/// `z` has one `H`-component per `g` (elements `(., g)`), `x` has one
/// `G`-component per `h` (elements `(h, .)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementaryPair {
    pub g: FiniteAbelianGroup,
    pub h: FiniteAbelianGroup,
    pub z: AbelianGroupoid,
    pub x: AbelianGroupoid,
}

pub fn build_pair(g: &FiniteAbelianGroup, h: &FiniteAbelianGroup) -> ComplementaryPair {
    let (ng, nh) = (g.order(), h.order());
    let x = AbelianGroupoid::uniform(g, nh).expect("nonempty");
    // canonical index of (component g, rank h) is g * |H| + h
    let placement = (0..ng * nh).map(|k| (k % nh) * ng + k / nh).collect();
    let z = AbelianGroupoid::with_placement(vec![h.clone(); ng], placement).expect("a permutation");
    ComplementaryPair { g: g.clone(), h: h.clone(), z, x }
}

impl ComplementaryPair {
    pub fn carrier_size(&self) -> usize {
        self.g.order() * self.h.order()
    }

    pub fn carrier_index(&self, h: usize, g: usize) -> usize {
        h * self.g.order() + g
    }

    pub fn coordinates(&self, i: usize) -> (usize, usize) {
        (i / self.g.order(), i % self.g.order())
    }
}

fn check_same_carrier(a: &AbelianGroupoid, b: &AbelianGroupoid) -> Result<()> {
    if a.carrier_size() != b.carrier_size() {
        return Err(QcrelError::SizeMismatch {
            op: "shared carrier",
            expected: a.carrier_size(),
            found: b.carrier_size(),
        });
    }
    Ok(())
}

/// `{((x,y),(a, b o y)) | a . b = x}` with `.` from `target` and `o` from
/// `control`, listed by running over all factorizations.
pub fn cnot_rel(target: &AbelianGroupoid, control: &AbelianGroupoid) -> Result<Rel> {
    check_same_carrier(target, control)?;
    let n = target.carrier_size();
    let mut pairs = Vec::new();
    for a in 0..n {
        let c = target.component_of(a);
        for b in target.component_elements(c) {
            let x = target.mult(a, b).expect("same component");
            let cb = control.component_of(b);
            for y in control.component_elements(cb) {
                let out = control.mult(b, y).expect("same component");
                pairs.push((x * n + y, a * n + out));
            }
        }
    }
    Rel::from_pairs(n * n, n * n, pairs)
}

pub fn are_complementary(z: &AbelianGroupoid, x: &AbelianGroupoid) -> Result<bool> {
    Ok(cnot_rel(z, x)?.is_bijection())
}

/// CNOT is a bijection in both orientations.
pub fn check_complementarity(pair: &ComplementaryPair) -> bool {
    are_complementary(&pair.z, &pair.x).expect("shared carrier")
        && are_complementary(&pair.x, &pair.z).expect("shared carrier")
}

/// All components of each structure share one group, and every component of
/// one meets every component of the other in exactly one element.
pub fn grid_criterion(z: &AbelianGroupoid, x: &AbelianGroupoid) -> bool {
    if z.carrier_size() != x.carrier_size() {
        return false;
    }
    let iso = |g: &AbelianGroupoid| g.components().iter().all(|c| c.is_isomorphic(g.component(0)));
    iso(z)
        && iso(x)
        && z.classical_states().iter().all(|a| {
            x.classical_states().iter().all(|b| a.intersection(b).map(|s| s.len() == 1).unwrap_or(false))
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongComplementarity {
    pub bialgebra: bool,
    pub comult_of_unit: bool,
    pub counit_of_mult: bool,
    pub counit_of_unit: bool,
}

impl StrongComplementarity {
    pub fn holds(&self) -> bool {
        self.bialgebra && self.comult_of_unit && self.counit_of_mult && self.counit_of_unit
    }
}

/// Bialgebra law between the monoid of `white` and the comonoid of `black`,
/// together with the three coherence equations.
pub fn check_bialgebra(white: &AbelianGroupoid, black: &AbelianGroupoid) -> Result<StrongComplementarity> {
    check_same_carrier(white, black)?;
    let n = white.carrier_size();
    let id = Rel::identity(n);
    let (mu, eta) = (white.mult_rel(), white.unit_rel());
    let (delta, eps) = (black.comult_rel(), black.counit_rel());

    let lhs = delta.compose(&mu)?;
    let middle = id.tensor(&Rel::swap(n, n)).tensor(&id);
    let rhs = mu.tensor(&mu).compose(&middle)?.compose(&delta.tensor(&delta))?;

    Ok(StrongComplementarity {
        bialgebra: lhs == rhs,
        comult_of_unit: delta.compose(&eta)? == eta.tensor(&eta),
        counit_of_mult: eps.compose(&mu)? == eps.tensor(&eps),
        counit_of_unit: eps.compose(&eta)? == Rel::identity(1),
    })
}

pub fn check_strong_complementarity(z: &AbelianGroupoid, x: &AbelianGroupoid) -> Result<bool> {
    Ok(check_bialgebra(x, z)?.holds())
}

/// Classical states of `z` next to the unbiased states of `x` they are sent to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelFourier {
    pub computational: Vec<Subset>,
    pub fourier: Vec<Subset>,
    /// `forward[i]` is the unbiased state of `x` assigned to classical state `i` of `z`.
    pub forward: Vec<Subset>,
}

impl RelFourier {
    /// Index of the classical state of `z` that an unbiased state of `x` comes from.
    pub fn inverse(&self, s: &Subset) -> Option<usize> {
        self.forward.iter().position(|t| t == s)
    }
}

/// The classical state `H_g` of `z` goes to the unbiased state of `x` built
/// from the `g`-th element of every `G`-component; as subsets these coincide.
pub fn rel_fourier(pair: &ComplementaryPair) -> RelFourier {
    let computational = pair.z.classical_states();
    let unbiased = pair.x.unbiased_states().expect("x is uniform");
    let forward = (0..pair.g.order()).map(|g| unbiased[g].clone()).collect();
    RelFourier { computational, fourier: pair.x.classical_states(), forward }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierMatrixRel {
    pub t: Rel,
    pub bijection: bool,
    pub comonoid_hom: bool,
    pub counit_hom: bool,
    pub monoid_hom: bool,
    pub unit_hom: bool,
}

impl FourierMatrixRel {
    pub fn all_hold(&self) -> bool {
        self.bijection && self.comonoid_hom && self.counit_hom && self.monoid_hom && self.unit_hom
    }
}

/// `t = {((h,g),(psi g, psi^-1 h))}` for an isomorphism `psi: G -> H`.
pub fn rel_fourier_matrix(pair: &ComplementaryPair, psi: &GroupHomTable) -> Result<FourierMatrixRel> {
    if pair.g.order() != pair.h.order() {
        return Err(QcrelError::NotIsomorphism(format!("|{}| != |{}|", pair.g, pair.h)));
    }
    if psi.source != pair.g || psi.target != pair.h {
        return Err(QcrelError::GroupoidMismatch("psi must map G to H".into()));
    }
    if !psi.is_isomorphism() {
        return Err(QcrelError::NotIsomorphism("psi is not a bijective homomorphism".into()));
    }
    let inv = psi.inverse()?;
    let n = pair.carrier_size();
    let t = Rel::from_fn(n, n, |i| {
        let (h, g) = pair.coordinates(i);
        Some(pair.carrier_index(psi.apply(g), inv.apply(h)))
    });
    let (z, x) = (&pair.z, &pair.x);
    Ok(FourierMatrixRel {
        bijection: t.is_bijection(),
        comonoid_hom: x.comult_rel().compose(&t)? == t.tensor(&t).compose(&z.comult_rel())?,
        counit_hom: x.counit_rel().compose(&t)? == z.counit_rel(),
        monoid_hom: t.compose(&x.mult_rel())? == z.mult_rel().compose(&t.tensor(&t))?,
        unit_hom: t.compose(&x.unit_rel())? == z.unit_rel(),
        t,
    })
}

/// Whether the projectors onto the classical states add up to the identity.
pub fn check_resolution_of_identity(z: &AbelianGroupoid) -> bool {
    let n = z.carrier_size();
    let sum = z
        .classical_states()
        .iter()
        .fold(Rel::empty(n, n), |acc, s| acc.union(&density_matrix(s)).expect("same shape"));
    sum == Rel::identity(n)
}

/// All unions of the given states, in binary order of the chosen states.
pub fn span(states: &[Subset], n: usize) -> Vec<Subset> {
    assert!(states.len() < 24, "span too large to list");
    let mut out: Vec<Subset> = (0u32..1 << states.len())
        .map(|bits| {
            states
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .fold(Subset::empty(n), |acc, (_, s)| acc.union(s).expect("same parent"))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn span_intersection(pair: &ComplementaryPair) -> Vec<Subset> {
    let n = pair.carrier_size();
    let a = span(&pair.z.classical_states(), n);
    let b = span(&pair.x.classical_states(), n);
    a.into_iter().filter(|s| b.binary_search(s).is_ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n)
    }

    fn names(v: &[Subset]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn pair_layouts() {
        let p = build_pair(&cyc(3), &cyc(2));
        assert_eq!(p.carrier_size(), 6);
        assert_eq!(p.z.to_string(), "Z2+Z2+Z2");
        assert_eq!(p.x.to_string(), "Z3+Z3");
        assert_eq!(names(&p.z.classical_states()), vec!["{0,3}", "{1,4}", "{2,5}"]);
        assert_eq!(names(&p.x.classical_states()), vec!["{0,1,2}", "{3,4,5}"]);

        let q = build_pair(&cyc(2), &cyc(2));
        assert_eq!(names(&q.x.classical_states()), vec!["{0,1}", "{2,3}"]);
        assert_eq!(names(&q.z.classical_states()), vec!["{0,2}", "{1,3}"]);

        let d = build_pair(&cyc(1), &cyc(4));
        assert_eq!(d.z.num_components(), 1);
        assert_eq!(d.x.num_components(), 4);
        assert!(d.x.is_discrete());
    }

    #[test]
    fn qubit_cnot_truth_table() {
        let p = build_pair(&cyc(2), &cyc(1));
        let cnot = cnot_rel(&p.x, &p.z).unwrap();
        // target first, control second: (x, y) -> (x xor y, y)
        let expected = Rel::from_fn(4, 4, |i| {
            let (x, y) = (i / 2, i % 2);
            Some((x ^ y) * 2 + y)
        });
        assert_eq!(cnot, expected);
    }

    #[test]
    fn aligned_structures_are_not_complementary() {
        let g = AbelianGroupoid::uniform(&cyc(2), 2).unwrap();
        assert!(!are_complementary(&g, &g).unwrap());
        assert!(!check_strong_complementarity(&g, &g).unwrap());
    }

    #[test]
    fn interleaved_z4() {
        let z4 = AbelianGroupoid::new(vec![cyc(4)]).unwrap();
        let x = AbelianGroupoid::with_placement(vec![cyc(2); 2], vec![0, 2, 1, 3]).unwrap();
        assert_eq!(check_strong_complementarity(&z4, &x).unwrap(), grid_criterion(&z4, &x));
        assert!(!grid_criterion(&z4, &x));
    }

    #[test]
    fn bialgebra_is_symmetric_on_pairs() {
        for (g, h) in [(2, 3), (3, 2), (2, 2), (1, 3)] {
            let p = build_pair(&cyc(g), &cyc(h));
            assert!(check_bialgebra(&p.x, &p.z).unwrap().holds());
            assert!(check_bialgebra(&p.z, &p.x).unwrap().holds());
        }
    }

    #[test]
    fn fourier_examples() {
        let p = build_pair(&cyc(2), &cyc(1));
        let f = rel_fourier(&p);
        assert_eq!(names(&f.computational), vec!["{0}", "{1}"]);
        assert_eq!(names(&f.fourier), vec!["{0,1}"]);
        assert_eq!(names(&f.forward), vec!["{0}", "{1}"]);

        let q = build_pair(&cyc(2), &cyc(2));
        let f = rel_fourier(&q);
        assert_eq!(names(&f.computational), vec!["{0,2}", "{1,3}"]);
        assert_eq!(f.forward, f.computational);
        for i in 0..2 {
            assert_eq!(f.inverse(&f.forward[i]), Some(i));
        }
    }

    #[test]
    fn fourier_matrix_for_z2() {
        let p = build_pair(&cyc(2), &cyc(2));
        let fm = rel_fourier_matrix(&p, &GroupHomTable::identity(&cyc(2))).unwrap();
        assert!(fm.all_hold());
        assert_eq!(fm.t.len(), 4);
        assert_eq!(fm.t.compose(&fm.t).unwrap(), Rel::identity(4));
        let q = build_pair(&cyc(2), &cyc(3));
        let psi = GroupHomTable::function(cyc(2), cyc(3), vec![0, 1]).unwrap();
        assert!(matches!(rel_fourier_matrix(&q, &psi), Err(QcrelError::NotIsomorphism(_))));
        let bad = GroupHomTable::function(cyc(3), cyc(3), vec![0, 1, 1]).unwrap();
        assert!(rel_fourier_matrix(&build_pair(&cyc(3), &cyc(3)), &bad).is_err());
    }

    #[test]
    fn fourier_matrix_with_automorphisms() {
        let z4 = cyc(4);
        let p = build_pair(&z4, &z4);
        for psi in [vec![0, 1, 2, 3], vec![0, 3, 2, 1]] {
            let psi = GroupHomTable::new(z4.clone(), z4.clone(), psi).unwrap();
            assert!(rel_fourier_matrix(&p, &psi).unwrap().all_hold());
        }
        let v = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let p = build_pair(&v, &v);
        let swap = GroupHomTable::new(v.clone(), v.clone(), vec![0, 2, 1, 3]).unwrap();
        assert!(rel_fourier_matrix(&p, &swap).unwrap().all_hold());
    }

    #[test]
    fn resolution_of_identity() {
        assert!(check_resolution_of_identity(&AbelianGroupoid::discrete(4).unwrap()));
        assert!(!check_resolution_of_identity(&AbelianGroupoid::uniform(&cyc(2), 2).unwrap()));
        assert!(check_resolution_of_identity(&AbelianGroupoid::discrete(1).unwrap()));
    }

    #[test]
    fn spans() {
        let p = build_pair(&cyc(2), &cyc(2));
        assert_eq!(names(&span_intersection(&p)), vec!["{}", "{0,1,2,3}"]);
        let d = build_pair(&cyc(1), &cyc(3));
        assert_eq!(span_intersection(&d), span(&d.z.classical_states(), 3));
        let e = build_pair(&cyc(3), &cyc(1));
        assert_eq!(span_intersection(&e), span(&e.x.classical_states(), 3));
    }

    #[test]
    fn complementarity_for_small_pairs() {
        for g in 1..=4 {
            for h in 1..=4 {
                let p = build_pair(&cyc(g), &cyc(h));
                assert!(check_complementarity(&p), "{g} {h}");
                assert!(grid_criterion(&p.z, &p.x));
                let c = cnot_rel(&p.x, &p.z).unwrap();
                assert_eq!(c.is_bijection(), c.is_unitary());
            }
        }
    }
}
