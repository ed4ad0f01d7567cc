//! Deutsch-Jozsa, single-shot Grover and group homomorphism identification,
//! each evaluated as one relation composite.
//!
//! On every system the classical data lives in the pair's `x` structure
//! (`⊕^|H| G`, contiguous components) and the complementary structure used
//! for state preparation and measurement is the pair's `z`. So for the
//! four-element system the data components are `{0,1},{2,3}` and the
//! measurement states are `{0,2},{1,3}`.

use crate::classrel::{constant_relation, enumerate_classical_relations, is_classical_relation, ClassicalRelation};
use crate::comp::ComplementaryPair;
use crate::error::{QcrelError, Result};
use crate::groupoid::{density_matrix, AbelianGroupoid};
use crate::relcore::{Rel, Scalar, Subset};

/// `{((x,y),(a, c o y)) | a . b = x, b f c}` on `A x B`, with `.` from
/// `data_a` and `o` from `phase_b`. `f` need not be classical.
pub fn oracle_relation(f: &Rel, data_a: &AbelianGroupoid, phase_b: &AbelianGroupoid) -> Result<Rel> {
    let (na, nb) = (data_a.carrier_size(), phase_b.carrier_size());
    if f.dom_size() != na || f.cod_size() != nb {
        return Err(QcrelError::SizeMismatch { op: "oracle", expected: na * nb, found: f.dom_size() * f.cod_size() });
    }
    let mut pairs = Vec::new();
    for a in 0..na {
        for b in data_a.component_elements(data_a.component_of(a)) {
            let x = data_a.mult(a, b).expect("same component");
            for &c in f.image_of(b) {
                let c = c as usize;
                for y in phase_b.component_elements(phase_b.component_of(c)) {
                    let out = phase_b.mult(c, y).expect("same component");
                    pairs.push((x * nb + y, a * nb + out));
                }
            }
        }
    }
    Rel::from_pairs(na * nb, na * nb, pairs)
}

#[derive(Clone, Debug)]
pub struct OracleRel {
    pub f: ClassicalRelation,
    pub rel: Rel,
}

fn check_data(f: &ClassicalRelation, pair_a: &ComplementaryPair, pair_b: &ComplementaryPair) -> Result<()> {
    if f.source() != &pair_a.x || f.target() != &pair_b.x {
        return Err(QcrelError::GroupoidMismatch(format!(
            "relation is classical for {} -> {}, systems carry {} -> {}",
            f.source(),
            f.target(),
            pair_a.x,
            pair_b.x
        )));
    }
    Ok(())
}

pub fn build_oracle(f: &ClassicalRelation, pair_a: &ComplementaryPair, pair_b: &ComplementaryPair) -> Result<OracleRel> {
    check_data(f, pair_a, pair_b)?;
    let rel = oracle_relation(f.rel(), &pair_a.x, &pair_b.z)?;
    if !rel.is_bijection() {
        return Err(QcrelError::Precondition(format!("oracle for {} is not a bijection", f.rel())));
    }
    Ok(OracleRel { f: f.clone(), rel })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgorithmOutcome {
    pub scalar: Scalar,
    /// What survives on the unmeasured system (Deutsch-Jozsa, GroupHomID), or
    /// the union of the possible measured states (Grover).
    pub output_state: Subset,
    pub possible_classical_outcomes: Vec<(usize, bool)>,
    pub composite: Rel,
}

fn state(g: &AbelianGroupoid, i: usize) -> Result<Subset> {
    g.classical_states()
        .into_iter()
        .nth(i)
        .ok_or(QcrelError::OutOfRange { index: i, size: g.num_components() })
}

/// `<s| x id_B` as a relation `S x B -> B`.
fn effect_on_first(s: &Subset, nb: usize) -> Rel {
    s.as_effect().tensor(&Rel::identity(nb))
}

fn outcome_from(composite: Rel, phase_b: &AbelianGroupoid) -> Result<AlgorithmOutcome> {
    let output_state = Subset::from_state(&composite)?;
    let possible = phase_b
        .classical_states()
        .iter()
        .enumerate()
        .map(|(k, s)| (k, s.intersects(&output_state)))
        .collect();
    Ok(AlgorithmOutcome {
        scalar: Scalar::from_bool(!output_state.is_empty()),
        output_state,
        possible_classical_outcomes: possible,
        composite,
    })
}

/// `(<H0^A| x id) . Oracle(f) . (|H0^A> x |H1^B>)`.
pub fn dj_run(f: &ClassicalRelation, pair_a: &ComplementaryPair, pair_b: &ComplementaryPair) -> Result<AlgorithmOutcome> {
    if pair_b.z.num_components() < 2 {
        return Err(QcrelError::Precondition("the target needs two measurement states".into()));
    }
    let oracle = build_oracle(f, pair_a, pair_b)?;
    let h0 = state(&pair_a.z, 0)?;
    let h1 = state(&pair_b.z, 1)?;
    let composite = effect_on_first(&h0, pair_b.carrier_size())
        .compose(&oracle.rel)?
        .compose(&h0.as_state().tensor(&h1.as_state()))?;
    outcome_from(composite, &pair_b.z)
}

/// Relates every identity of the source to all of one data state of the
/// target and nothing else.
pub fn is_constant_rel(f: &ClassicalRelation) -> bool {
    (0..f.target().num_components()).any(|c| *f.rel() == constant_relation(f.source(), f.target(), c))
}

/// No element of the first measurement state of `A` is related to the second
/// measurement state of `B`.
pub fn is_balanced_rel(f: &ClassicalRelation, pair_a: &ComplementaryPair, pair_b: &ComplementaryPair) -> Result<bool> {
    let x0 = state(&pair_a.z, 0)?;
    let x1 = state(&pair_b.z, 1)?;
    Ok(!f.rel().image(&x0)?.intersects(&x1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageLemma {
    pub relations: usize,
    pub constant: usize,
    pub balanced: usize,
    /// Balanced relations whose support lies inside the first measurement state.
    pub balanced_inside_x0: usize,
    /// Constant relations whose support is not exactly the identities.
    pub constant_off_identities: usize,
}

impl PreimageLemma {
    pub fn holds(&self) -> bool {
        self.balanced_inside_x0 == 0 && self.constant_off_identities == 0
    }
}

pub fn check_balanced_preimage_lemma(pair_a: &ComplementaryPair, pair_b: &ComplementaryPair, cap: usize) -> Result<PreimageLemma> {
    let rels = enumerate_classical_relations(&pair_a.x, &pair_b.x, cap)?;
    let x0 = state(&pair_a.z, 0)?;
    let ids = pair_a.x.identities();
    let mut report = PreimageLemma { relations: rels.len(), constant: 0, balanced: 0, balanced_inside_x0: 0, constant_off_identities: 0 };
    for f in &rels {
        let support = f.rel().support();
        if is_balanced_rel(f, pair_a, pair_b)? {
            report.balanced += 1;
            report.balanced_inside_x0 += support.is_subset_of(&x0) as usize;
        }
        if is_constant_rel(f) {
            report.constant += 1;
            report.constant_off_identities += (support != ids) as usize;
        }
    }
    Ok(report)
}

/// `id` symmetric-differenced with the square of the unit image of the data
/// structure.
pub fn diffusion_rel(pair_s: &ComplementaryPair) -> Rel {
    let n = pair_s.carrier_size();
    Rel::identity(n).sym_diff(&density_matrix(&pair_s.x.identities())).expect("same shape")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCondition {
    pub rho: usize,
    /// The composite for this measurement state is nonempty.
    pub possible: bool,
    /// `<sigma| f |X_rho> = <sigma| f |X_0>`.
    pub condition_holds: bool,
}

impl ZeroCondition {
    pub fn agrees(&self) -> bool {
        self.possible != self.condition_holds
    }
}

#[derive(Clone, Debug)]
pub struct GroverOutcome {
    pub outcome: AlgorithmOutcome,
    pub diffusion: Rel,
    pub diffusion_is_bijection: bool,
    pub f_is_classical: bool,
    pub zero_condition: Vec<ZeroCondition>,
}

impl GroverOutcome {
    pub fn possible_states(&self) -> Vec<usize> {
        self.outcome.possible_classical_outcomes.iter().filter(|(_, p)| *p).map(|&(k, _)| k).collect()
    }

    /// Nonzero composite implies the zero condition fails.
    pub fn implication_holds(&self) -> bool {
        self.zero_condition.iter().all(|z| !z.possible || !z.condition_holds)
    }

    pub fn biconditional_holds(&self) -> bool {
        self.zero_condition.iter().all(ZeroCondition::agrees)
    }
}

/// For every measurement state `X_rho` of `S`, the composite
/// `(<X_rho| x id) . (D x id) . Oracle(f) . (|X_0> x |X_sigma>)`.
pub fn grover_run(f: &Rel, pair_s: &ComplementaryPair, pair_b: &ComplementaryPair, sigma: usize) -> Result<GroverOutcome> {
    let (ns, nb) = (pair_s.carrier_size(), pair_b.carrier_size());
    let oracle = oracle_relation(f, &pair_s.x, &pair_b.z)?;
    let diffusion = diffusion_rel(pair_s);
    let xs = pair_s.z.classical_states();
    let sig = state(&pair_b.z, sigma)?;
    let prepared = diffusion
        .tensor(&Rel::identity(nb))
        .compose(&oracle)?
        .compose(&xs[0].as_state().tensor(&sig.as_state()))?;

    let meets_sigma = |s: &Subset| -> Result<bool> { Ok(f.image(s)?.intersects(&sig)) };
    let baseline = meets_sigma(&xs[0])?;
    let mut zero_condition = Vec::new();
    let mut union = Subset::empty(ns);
    for (rho, x) in xs.iter().enumerate() {
        let c = effect_on_first(x, nb).compose(&prepared)?;
        let possible = !c.is_empty();
        if possible {
            union = union.union(x)?;
        }
        zero_condition.push(ZeroCondition { rho, possible, condition_holds: meets_sigma(x)? == baseline });
    }
    let possible_classical_outcomes = zero_condition.iter().map(|z| (z.rho, z.possible)).collect();
    Ok(GroverOutcome {
        outcome: AlgorithmOutcome {
            scalar: Scalar::from_bool(!union.is_empty()),
            output_state: union,
            possible_classical_outcomes,
            composite: prepared,
        },
        diffusion_is_bijection: diffusion.is_bijection(),
        diffusion,
        f_is_classical: is_classical_relation(f, &pair_s.x, &pair_b.x)?,
        zero_condition,
    })
}

/// Search relation for Grover: every measurement state of `S` goes onto
/// `X^B_sigma` except `marked`, which goes onto `X^B_other`.
pub fn marked_search_relation(
    pair_s: &ComplementaryPair,
    pair_b: &ComplementaryPair,
    marked: usize,
    sigma: usize,
    other: usize,
) -> Result<Rel> {
    let xs = pair_s.z.classical_states();
    if marked >= xs.len() {
        return Err(QcrelError::Precondition(format!("no measurement state {marked}")));
    }
    let (hit, miss) = (state(&pair_b.z, sigma)?, state(&pair_b.z, other)?);
    let mut pairs = Vec::new();
    for (rho, x) in xs.iter().enumerate() {
        let target = if rho == marked { &miss } else { &hit };
        pairs.extend(x.indices().flat_map(|a| target.indices().map(move |b| (a, b))));
    }
    Rel::from_pairs(pair_s.carrier_size(), pair_b.carrier_size(), pairs)
}

#[derive(Clone, Debug)]
pub struct HomIdOutcome {
    pub outcome: AlgorithmOutcome,
    /// `<rho| S f^-1 |sigma>` tensored with `|sigma>`, where `S` is the antipode.
    pub simplified: Rel,
    pub agrees: bool,
    /// Some `x` in `rho` and `y` in `sigma` with `x^-1 f y`, found by search.
    pub witness: bool,
    /// Some `x` in `rho` and `y` in `sigma` with `x f y`.
    pub witness_without_inverse: bool,
}

/// `(<rho| x id) . Oracle(f) . (|H_0> x |sigma>)`.
pub fn grouphomid_run(
    f: &ClassicalRelation,
    pair_g: &ComplementaryPair,
    pair_a: &ComplementaryPair,
    rho: usize,
    sigma: usize,
) -> Result<HomIdOutcome> {
    let oracle = build_oracle(f, pair_g, pair_a)?;
    let h0 = state(&pair_g.z, 0)?;
    let r = state(&pair_g.z, rho)?;
    let s = state(&pair_a.z, sigma)?;
    let composite = effect_on_first(&r, pair_a.carrier_size())
        .compose(&oracle.rel)?
        .compose(&h0.as_state().tensor(&s.as_state()))?;
    let outcome = outcome_from(composite, &pair_a.z)?;

    let scalar = r
        .as_effect()
        .compose(&pair_g.x.antipode_rel())?
        .compose(&f.rel().converse())?
        .compose(&s.as_state())?;
    let simplified = scalar.tensor(&s.as_state());

    let rel = f.rel();
    let search = |inv: bool| {
        r.indices().any(|x| {
            let x = if inv { pair_g.x.inverse(x) } else { x };
            s.indices().any(|y| rel.contains(x, y))
        })
    };
    Ok(HomIdOutcome {
        agrees: simplified == outcome.composite,
        simplified,
        witness: search(true),
        witness_without_inverse: search(false),
        outcome,
    })
}

/// For every measurement state of `G`, whether some `sigma` makes it possible.
pub fn homid_reachable_states(f: &ClassicalRelation, pair_g: &ComplementaryPair, pair_a: &ComplementaryPair) -> Result<Vec<bool>> {
    (0..pair_g.z.num_components())
        .map(|rho| {
            for sigma in 0..pair_a.z.num_components() {
                if grouphomid_run(f, pair_g, pair_a, rho, sigma)?.outcome.scalar.is_one() {
                    return Ok(true);
                }
            }
            Ok(false)
        })
        .collect()
}
