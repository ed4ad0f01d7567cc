//! Self-checking suites over the whole library, one per module. Each check
//! is computed from scratch; `informational` checks report a measured fact
//! without affecting the verdict.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classrel::{
    constant_relation, enumerate_classical_relations, enumerate_with, is_self_conjugate, ClassicalRelation,
    EnumerateOptions, DEFAULT_CAP,
};
use crate::comp::{
    build_pair, check_bialgebra, check_complementarity, check_resolution_of_identity, cnot_rel, grid_criterion,
    rel_fourier_matrix, span_intersection, ComplementaryPair,
};
use crate::error::{QcrelError, Result};
use crate::fourier::{
    character_orthogonality_check, character_value, classical_query_count, convolution_theorem_error, count_homs_enumerated,
    count_homs_formula, dj_amplitude, enumerate_homs, fourier_matrix, fourier_transform, grouphomid_identify,
    inverse_fourier, ComplexMatrix, GroupFunction, HomOracle, TOL,
};
use crate::group::{FiniteAbelianGroup, GroupHomTable};
use crate::groupoid::{check_structure_laws, verify_classical_structure, AbelianGroupoid, Phase};
use crate::qcalg::{
    build_oracle, check_balanced_preimage_lemma, dj_run, grouphomid_run, grover_run, homid_reachable_states,
    is_balanced_rel, is_constant_rel,
};
use crate::relcore::{all_relations, Rel, Scalar, Subset};
use crate::text::{parse_groupoid, parse_rel};

/// Classical relations `Z3 -> Z3`.
pub const TABLE_Z3: [&str; 3] = ["{(0,0),(0,1),(0,2)}", "{(0,0),(1,1),(2,2)}", "{(0,0),(1,2),(2,1)}"];

/// Classical relations `Z4 -> Z4`.
pub const TABLE_Z4: [&str; 4] = [
    "{(0,0),(0,1),(0,2),(0,3)}",
    "{(0,0),(1,1),(2,2),(3,3)}",
    "{(0,0),(2,1),(0,2),(2,3)}",
    "{(0,0),(3,1),(2,2),(1,3)}",
];

/// Classical relations `Z2+Z2 -> Z2+Z2`, components `{0,1},{2,3}`.
pub const TABLE_Z2_Z2: [&str; 16] = [
    "{(0,2),(2,2),(1,3),(3,3)}",
    "{(0,0),(1,1),(2,2),(3,3)}",
    "{(0,2),(2,2),(1,3),(2,3)}",
    "{(0,0),(1,1),(2,2),(2,3)}",
    "{(0,2),(2,2),(0,3),(3,3)}",
    "{(0,0),(0,1),(2,2),(3,3)}",
    "{(0,2),(2,2),(0,3),(2,3)}",
    "{(0,0),(0,1),(2,2),(2,3)}",
    "{(2,0),(3,1),(0,2),(1,3)}",
    "{(0,0),(2,0),(1,1),(3,1)}",
    "{(2,0),(3,1),(0,2),(0,3)}",
    "{(0,0),(2,0),(1,1),(2,1)}",
    "{(2,0),(2,1),(0,2),(1,3)}",
    "{(0,0),(2,0),(0,1),(3,1)}",
    "{(2,0),(2,1),(0,2),(0,3)}",
    "{(0,0),(2,0),(0,1),(2,1)}",
];

/// `(spec, rows)` for the three reference enumerations; domain and codomain coincide.
pub fn reference_tables() -> [(&'static str, &'static [&'static str]); 3] {
    [("Z3", &TABLE_Z3), ("Z4", &TABLE_Z4), ("Z2+Z2", &TABLE_Z2_Z2)]
}

pub const DJ_CONSTANT: [&str; 2] = ["{(0,0),(0,1),(2,0),(2,1)}", "{(0,2),(0,3),(2,2),(2,3)}"];
pub const DJ_BALANCED: [&str; 4] = [
    "{(0,2),(2,2),(1,3),(3,3)}",
    "{(0,0),(1,1),(2,2),(3,3)}",
    "{(2,0),(3,1),(0,2),(1,3)}",
    "{(0,0),(2,0),(1,1),(3,1)}",
];
pub const GROVER_EXAMPLES: [&str; 2] = ["{(0,2),(2,2),(1,3),(3,3)}", "{(0,0),(2,0),(0,1),(2,1)}"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Rel,
    Groupoid,
    Comp,
    Classrel,
    Qcalg,
    Fourier,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Rel, Suite::Groupoid, Suite::Comp, Suite::Classrel, Suite::Qcalg, Suite::Fourier];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rel => "rel",
            Suite::Groupoid => "groupoid",
            Suite::Comp => "comp",
            Suite::Classrel => "classrel",
            Suite::Qcalg => "qcalg",
            Suite::Fourier => "fourier",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub informational: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub elapsed_ms: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }

    /// `(passed, failed, informational)` counts.
    pub fn counts(&self) -> (usize, usize, usize) {
        let info = self.checks.iter().filter(|c| c.informational).count();
        let pass = self.checks.iter().filter(|c| !c.informational && c.passed).count();
        (pass, self.checks.len() - info - pass, info)
    }
}

#[derive(Default)]
struct Collector {
    checks: Vec<Check>,
}

impl Collector {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, informational: false, detail: detail.into() });
    }

    fn info(&mut self, name: &str, holds: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed: holds, informational: true, detail: detail.into() });
    }

    /// Turns an internal error into a failed check.
    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        match f() {
            Ok((ok, detail)) => self.check(name, ok, detail),
            Err(e) => self.check(name, false, format!("error: {e}")),
        }
    }
}

/// Runs one suite. With `mutate`, one input of the suite is deliberately
/// corrupted so that at least one check must fail.
pub fn run_suite(suite: Suite, mutate: bool) -> SuiteReport {
    let start = Instant::now();
    let mut c = Collector::default();
    match suite {
        Suite::Rel => rel_suite(&mut c, mutate),
        Suite::Groupoid => groupoid_suite(&mut c, mutate),
        Suite::Comp => comp_suite(&mut c, mutate),
        Suite::Classrel => classrel_suite(&mut c, mutate),
        Suite::Qcalg => qcalg_suite(&mut c, mutate),
        Suite::Fourier => fourier_suite(&mut c, mutate),
    }
    SuiteReport { suite, checks: c.checks, elapsed_ms: start.elapsed().as_secs_f64() * 1e3 }
}

pub fn run_suites(suites: &[Suite], mutate: bool) -> Vec<SuiteReport> {
    suites.iter().map(|&s| run_suite(s, mutate)).collect()
}

// ---------------------------------------------------------------- helpers

pub fn random_rel(rng: &mut impl Rng, dom: usize, cod: usize, density: f64) -> Rel {
    let pairs: Vec<(usize, usize)> =
        (0..dom).flat_map(|a| (0..cod).map(move |b| (a, b))).filter(|_| rng.gen_bool(density)).collect();
    Rel::from_pairs(dom, cod, pairs).expect("in range")
}

/// Composition straight from the definition, over pair lists.
fn naive_compose(g: &Rel, f: &Rel) -> Rel {
    let mut out = Vec::new();
    for (a, b) in f.pairs() {
        for (b2, c) in g.pairs() {
            if b == b2 {
                out.push((a, c));
            }
        }
    }
    Rel::from_pairs(f.dom_size(), g.cod_size(), out).expect("in range")
}

/// Every factor presentation (factors at least 2, nondecreasing) of order at
/// most `max`, plus the trivial group.
pub fn groups_up_to(max: usize) -> Vec<FiniteAbelianGroup> {
    fn rec(min: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for f in min..=left {
            cur.push(f);
            rec(f, left / f, cur, out);
            cur.pop();
        }
    }
    let mut lists = vec![vec![1]];
    rec(2, max, &mut Vec::new(), &mut lists);
    lists.into_iter().map(|f| FiniteAbelianGroup::new(f).expect("nonzero")).collect()
}

/// Every groupoid on at most `max` elements, up to relabeling of the
/// carrier: sequences of groups whose orders sum to the carrier size.
pub fn groupoids_up_to(max: usize) -> Vec<AbelianGroupoid> {
    let groups = groups_up_to(max);
    fn rec(left: usize, groups: &[FiniteAbelianGroup], cur: &mut Vec<FiniteAbelianGroup>, out: &mut Vec<AbelianGroupoid>) {
        if !cur.is_empty() {
            out.push(AbelianGroupoid::new(cur.clone()).expect("nonempty"));
        }
        for g in groups.iter().filter(|g| g.order() <= left) {
            cur.push(g.clone());
            rec(left - g.order(), groups, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max, &groups, &mut Vec::new(), &mut out);
    out
}

/// Groups with order 1 to 4, one per presentation.
pub fn small_groups() -> Vec<FiniteAbelianGroup> {
    groups_up_to(4)
}

/// Structures on a shared carrier that are not complementary.
pub fn non_complementary_pairs() -> Vec<(String, AbelianGroupoid, AbelianGroupoid)> {
    let g = |s: &str| parse_groupoid(s).expect("valid spec");
    let p22 = build_pair(&FiniteAbelianGroup::cyclic(2), &FiniteAbelianGroup::cyclic(2));
    let p23 = build_pair(&FiniteAbelianGroup::cyclic(2), &FiniteAbelianGroup::cyclic(3));
    vec![
        ("Z2+Z2 with itself".into(), p22.x.clone(), p22.x.clone()),
        ("Z4 with Z2+Z2".into(), g("Z4"), g("Z2+Z2")),
        ("Z2xZ2 with Z4".into(), g("Z2xZ2"), g("Z4")),
        ("discrete 4 with Z2+Z2".into(), AbelianGroupoid::discrete(4).expect("nonempty"), g("Z2+Z2")),
        ("strided Z3+Z3 with itself".into(), p23.z.clone(), p23.z.clone()),
        ("Z3+Z3 with Z2+Z2+Z2 contiguous".into(), g("Z3+Z3"), g("Z2+Z2+Z2")),
    ]
}

fn reference(spec: &str, rows: &[&str]) -> Result<(AbelianGroupoid, Vec<Rel>)> {
    let z = parse_groupoid(spec)?;
    let n = z.carrier_size();
    let mut rels = rows.iter().map(|r| parse_rel(r, n, n)).collect::<Result<Vec<_>>>()?;
    rels.sort_by_key(|r| r.pairs().collect::<Vec<_>>());
    Ok((z, rels))
}

fn four() -> ComplementaryPair {
    build_pair(&FiniteAbelianGroup::cyclic(2), &FiniteAbelianGroup::cyclic(2))
}

/// Systems whose contiguous structure is each reference groupoid.
pub fn reference_pair(spec: &str) -> Result<ComplementaryPair> {
    let (g, k) = crate::text::parse_uniform(spec)?;
    Ok(build_pair(&g, &FiniteAbelianGroup::cyclic(k)))
}

// ------------------------------------------------------------------ suites

fn rel_suite(c: &mut Collector, mutate: bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    let small: Vec<Rel> = all_relations(2, 2).collect();
    let mut bad = 0;
    for f in &small {
        for g in &small {
            bad += (g.compose(f).expect("shapes") != naive_compose(g, f)) as usize;
        }
    }
    for _ in 0..200 {
        let (a, b, d) = (rng.gen_range(1..7), rng.gen_range(1..7), rng.gen_range(1..7));
        let f = random_rel(&mut rng, a, b, 0.4);
        let g = random_rel(&mut rng, b, d, 0.4);
        bad += (g.compose(&f).expect("shapes") != naive_compose(&g, &f)) as usize;
    }
    c.check("composition matches the pairwise definition", bad == 0, format!("{bad} mismatches over 456 composites"));

    let mut bad = 0;
    for _ in 0..200 {
        let n: Vec<usize> = (0..4).map(|_| rng.gen_range(1..6)).collect();
        let f = random_rel(&mut rng, n[0], n[1], 0.35);
        let g = random_rel(&mut rng, n[1], n[2], 0.35);
        let h = random_rel(&mut rng, n[2], n[3], 0.35);
        let l = h.compose(&g).and_then(|hg| hg.compose(&f)).expect("shapes");
        let r = h.compose(&g.compose(&f).expect("shapes")).expect("shapes");
        bad += (l != r) as usize;
    }
    c.check("composition is associative", bad == 0, format!("{bad} failures in 200 random triples"));

    let mut bad = 0;
    for _ in 0..200 {
        let (a, b) = (rng.gen_range(1..7), rng.gen_range(1..7));
        let f = random_rel(&mut rng, a, b, 0.4);
        let (ia, ib) = if mutate {
            let broken = |n: usize| Rel::from_pairs(n, n, (1..n).map(|i| (i, i))).expect("in range");
            (broken(a), broken(b))
        } else {
            (Rel::identity(a), Rel::identity(b))
        };
        bad += (f.compose(&ia).expect("shapes") != f || ib.compose(&f).expect("shapes") != f) as usize;
    }
    c.check("identities are units for composition", bad == 0, format!("{bad} failures in 200 random relations"));

    let mut bad = 0;
    for _ in 0..200 {
        let (a, b, d) = (rng.gen_range(1..6), rng.gen_range(1..6), rng.gen_range(1..6));
        let f = random_rel(&mut rng, a, b, 0.4);
        let g = random_rel(&mut rng, b, d, 0.4);
        let lhs = g.compose(&f).expect("shapes").converse();
        let rhs = f.converse().compose(&g.converse()).expect("shapes");
        bad += (f.converse().converse() != f || lhs != rhs) as usize;
    }
    c.check("converse is an involution reversing composition", bad == 0, format!("{bad} failures"));

    let mut bad = 0;
    for _ in 0..100 {
        let n: Vec<usize> = (0..6).map(|_| rng.gen_range(1..4)).collect();
        let f = random_rel(&mut rng, n[0], n[1], 0.5);
        let f2 = random_rel(&mut rng, n[1], n[2], 0.5);
        let g = random_rel(&mut rng, n[3], n[4], 0.5);
        let g2 = random_rel(&mut rng, n[4], n[5], 0.5);
        let lhs = f2.tensor(&g2).compose(&f.tensor(&g)).expect("shapes");
        let rhs = f2.compose(&f).expect("shapes").tensor(&g2.compose(&g).expect("shapes"));
        bad += (lhs != rhs) as usize;
    }
    c.check("tensor is functorial", bad == 0, format!("{bad} failures in 100 random quadruples"));

    let all: Vec<Rel> = all_relations(3, 3).collect();
    let bij = all.iter().filter(|r| r.is_bijection()).count();
    let unitary_agrees = all.iter().all(|r| r.is_bijection() == r.is_unitary());
    c.check(
        "bijections on three elements are the unitaries",
        all.len() == 512 && bij == 6 && unitary_agrees,
        format!("{} relations, {bij} bijections", all.len()),
    );
}

fn groupoid_suite(c: &mut Collector, mutate: bool) {
    let specs = ["Z1", "Z3", "Z4", "Z2xZ2", "Z2+Z2", "Z2+Z3", "Z2xZ2+Z4", "Z1+Z1+Z1", "Z3+Z3+Z1"];
    let mut failing = Vec::new();
    for s in specs {
        let z = parse_groupoid(s).expect("valid spec");
        let report = if mutate && s == "Z2+Z2" {
            let m = z.mult_rel();
            let pairs: Vec<_> = m.pairs().skip(1).collect();
            let broken = Rel::from_pairs(m.dom_size(), m.cod_size(), pairs).expect("in range");
            check_structure_laws(&broken, &z.unit_rel()).expect("shapes")
        } else {
            verify_classical_structure(&z)
        };
        if !report.all_pass() {
            failing.push(format!("{s}: {:?}", report.failures()));
        }
    }
    let placed = build_pair(&FiniteAbelianGroup::cyclic(2), &FiniteAbelianGroup::cyclic(3)).z;
    if !verify_classical_structure(&placed).all_pass() {
        failing.push(format!("{placed} (strided)"));
    }
    c.check("classical structure laws hold", failing.is_empty(), if failing.is_empty() { format!("{} groupoids", specs.len() + 1) } else { failing.join("; ") });

    let mut detail = Vec::new();
    let mut ok = true;
    for s in ["Z2+Z2", "Z3", "Z2+Z3"] {
        let z = parse_groupoid(s).expect("valid spec");
        let phases = z.phase_group();
        let expected: usize = z.components().iter().map(|g| g.order()).product();
        let bij = phases.iter().all(|p| z.phase_rel(p).map(|r| r.is_bijection()).unwrap_or(false));
        ok &= phases.len() == expected && bij;
        detail.push(format!("{s}: {}", phases.len()));
    }
    c.check("phase groups have the product order and act bijectively", ok, detail.join(", "));

    c.run("phase {1,3} sends {0,2} to {1,3} on Z2+Z2", || {
        let z = parse_groupoid("Z2+Z2")?;
        let out = z.apply_phase(&Phase(vec![1, 3]), &Subset::from_indices(4, [0, 2])?)?;
        Ok((out.to_string() == "{1,3}", out.to_string()))
    });
    c.run("malformed phases are rejected", || {
        let z = parse_groupoid("Z2+Z2")?;
        let wrong = [Phase(vec![1]), Phase(vec![2, 3]), Phase(vec![0, 9])];
        Ok((wrong.iter().all(|p| matches!(z.check_phase(p), Err(QcrelError::MalformedPhase(_)))), "3 cases".into()))
    });

    let mut ok = true;
    for s in ["Z2+Z2", "Z3", "Z2xZ2+Z3"] {
        let z = parse_groupoid(s).expect("valid spec");
        let n = z.carrier_size();
        let ghz = z.ghz_state();
        let size: usize = z.components().iter().map(|g| g.order() * g.order()).sum();
        let closed = ghz.indices().all(|t| {
            let (a, b, d) = (t / (n * n), t / n % n, t % n);
            let comp = z.component_of(a);
            z.mult(a, b).and_then(|ab| z.mult(ab, d)) == Some(z.identity(comp))
        });
        ok &= ghz.len() == size && closed;
    }
    c.check("GHZ states are the identity-multiplying triples", ok, "3 groupoids");

    let mut ok = true;
    for s in ["Z2+Z2", "Z3+Z3", "Z2xZ2+Z2xZ2+Z2xZ2"] {
        let z = parse_groupoid(s).expect("valid spec");
        let unbiased = z.unbiased_states().expect("uniform");
        ok &= unbiased.iter().all(|u| z.classical_states().iter().all(|k| u.intersection(k).map(|i| i.len() == 1).unwrap_or(false)));
    }
    ok &= matches!(parse_groupoid("Z2+Z3").expect("valid").unbiased_states(), Err(QcrelError::NonUniform(_)));
    c.check("unbiased states meet every classical state once", ok, "3 uniform groupoids, 1 non-uniform rejected");
}

fn comp_suite(c: &mut Collector, mutate: bool) {
    let groups = small_groups();
    let mut failing = Vec::new();
    let mut count = 0;
    let mut pairs = Vec::new();
    for g in &groups {
        for h in &groups {
            let p = build_pair(g, h);
            count += 1;
            let ok = if mutate && g.order() == 2 && h.order() == 2 {
                cnot_rel(&p.x, &p.x).map(|r| r.is_bijection()).unwrap_or(false)
            } else {
                check_complementarity(&p)
            };
            if !ok {
                failing.push(format!("({g},{h})"));
            }
            pairs.push((format!("pair ({g},{h})"), p.z.clone(), p.x.clone()));
        }
    }
    c.check("CNOT is a bijection for every constructed pair", failing.is_empty(), format!("{count} pairs; failing: {failing:?}"));

    let nc = non_complementary_pairs();
    let bijective: Vec<&String> = nc.iter().filter(|(_, z, x)| cnot_rel(z, x).map(|r| r.is_bijection()).unwrap_or(true)).map(|(n, _, _)| n).collect();
    c.check("CNOT fails to be a bijection for non-complementary structures", bijective.is_empty() && nc.len() >= 3, format!("{} pairs; bijective: {bijective:?}", nc.len()));

    pairs.extend(nc);
    let mut disagree = Vec::new();
    for (name, z, x) in &pairs {
        let strong = check_bialgebra(x, z).map(|s| s.holds()).unwrap_or(false);
        if strong != grid_criterion(z, x) {
            disagree.push(name.clone());
        }
    }
    c.check("bialgebra law agrees with the grid criterion", disagree.is_empty(), format!("{} pairs; disagreeing: {disagree:?}", pairs.len()));

    let all = groupoids_up_to(8);
    let wrong: Vec<String> = all.iter().filter(|z| check_resolution_of_identity(z) != z.is_discrete()).map(|z| z.to_string()).collect();
    c.check("classical projectors resolve the identity exactly when discrete", wrong.is_empty(), format!("{} groupoids; wrong: {wrong:?}", all.len()));

    let mut wrong = Vec::new();
    let mut n = 0;
    for g in groups.iter().filter(|g| g.order() >= 2) {
        for h in groups.iter().filter(|h| h.order() >= 2) {
            let p = build_pair(g, h);
            let inter = span_intersection(&p);
            n += 1;
            let trivial = inter.len() == 2 && inter.iter().any(|s| s.is_empty()) && inter.iter().any(|s| s.is_full());
            if !trivial {
                wrong.push(format!("({g},{h})"));
            }
        }
    }
    c.check("spans of complementary structures meet only in empty and full", wrong.is_empty(), format!("{n} pairs; wrong: {wrong:?}"));

    let mut wrong = Vec::new();
    for g in groups.iter().filter(|g| g.order() >= 2) {
        let p = build_pair(g, g);
        let t = rel_fourier_matrix(&p, &GroupHomTable::identity(g));
        if !t.map(|t| t.all_hold()).unwrap_or(false) {
            wrong.push(g.to_string());
        }
    }
    c.check("relational Fourier matrix is a bijective bialgebra map", wrong.is_empty(), format!("failing: {wrong:?}"));
}

fn classrel_suite(c: &mut Collector, mutate: bool) {
    for (spec, rows) in reference_tables() {
        c.run(&format!("enumeration {spec} -> {spec} equals the reference table"), || {
            let (z, mut expected) = reference(spec, rows)?;
            if mutate {
                let n = z.carrier_size();
                expected[0] = Rel::identity(n).union(&Rel::from_pairs(n, n, [(0, n - 1)])?)?;
            }
            let got: Vec<Rel> = enumerate_classical_relations(&z, &z, DEFAULT_CAP)?.into_iter().map(|f| f.rel().clone()).collect();
            Ok((got == expected, format!("{} found, {} expected", got.len(), expected.len())))
        });
    }
    c.run("every enumerated classical relation is self-conjugate", || {
        let mut total = 0;
        let mut bad = Vec::new();
        for (spec, _) in reference_tables() {
            let z = parse_groupoid(spec)?;
            for f in enumerate_classical_relations(&z, &z, DEFAULT_CAP)? {
                total += 1;
                if !is_self_conjugate(&f) {
                    bad.push(f.rel().to_string());
                }
            }
        }
        Ok((bad.is_empty() && total == 23, format!("{total} relations; failing: {bad:?}")))
    });
    c.run("constant relations are classical", || {
        let mut ok = true;
        for (spec, _) in reference_tables() {
            let z = parse_groupoid(spec)?;
            let found = enumerate_classical_relations(&z, &z, DEFAULT_CAP)?;
            for k in 0..z.num_components() {
                let r = constant_relation(&z, &z, k);
                ok &= found.iter().any(|f| *f.rel() == r);
            }
        }
        Ok((ok, "3 instances".into()))
    });
    c.run("enumeration does not depend on the work split", || {
        let z = parse_groupoid("Z2+Z2")?;
        let a = enumerate_with(&z, &z, &EnumerateOptions { cap: DEFAULT_CAP, chunks: 1 })?;
        let b = enumerate_with(&z, &z, &EnumerateOptions { cap: DEFAULT_CAP, chunks: 7 })?;
        let d = enumerate_with(&z, &z, &EnumerateOptions { cap: DEFAULT_CAP, chunks: 1000 })?;
        Ok((a == b && b == d, "1, 7 and 1000 chunks".into()))
    });
    c.run("the search cap is enforced", || {
        let z = parse_groupoid("Z2+Z2+Z2")?;
        let r = enumerate_classical_relations(&z, &z, DEFAULT_CAP);
        Ok((matches!(r, Err(QcrelError::CapExceeded { bits: 36, .. })), "Z2+Z2+Z2 has 36 candidate pairs".into()))
    });
}

fn qcalg_suite(c: &mut Collector, mutate: bool) {
    c.run("oracles of all reference classical relations are bijections", || {
        let mut total = 0;
        let mut bad = Vec::new();
        for (spec, _) in reference_tables() {
            let p = reference_pair(spec)?;
            for f in enumerate_classical_relations(&p.x, &p.x, DEFAULT_CAP)? {
                total += 1;
                if !build_oracle(&f, &p, &p).map(|o| o.rel.is_bijection()).unwrap_or(false) {
                    bad.push(f.rel().to_string());
                }
            }
        }
        Ok((bad.is_empty() && total == 23, format!("{total} oracles; failing: {bad:?}")))
    });

    c.run("Deutsch-Jozsa on the worked example", || {
        let p = four();
        let mut ok = true;
        for (rows, want) in [(&DJ_CONSTANT[..], Scalar::One), (&DJ_BALANCED[..], Scalar::Zero)] {
            for r in rows {
                let f = ClassicalRelation::new(parse_rel(r, 4, 4)?, &p.x, &p.x)?;
                let want = if mutate && want == Scalar::Zero { Scalar::One } else { want };
                ok &= dj_run(&f, &p, &p)?.scalar == want;
                ok &= if want == Scalar::One { is_constant_rel(&f) } else { is_balanced_rel(&f, &p, &p)? };
            }
        }
        Ok((ok, "2 constant give one, 4 balanced give zero".into()))
    });

    c.run("Deutsch-Jozsa scalar agrees with the predicates", || {
        let p = four();
        let (mut constant, mut balanced, mut neither, mut bad) = (0, 0, 0, 0);
        for f in enumerate_classical_relations(&p.x, &p.x, DEFAULT_CAP)? {
            let s = dj_run(&f, &p, &p)?.scalar;
            match (is_constant_rel(&f), is_balanced_rel(&f, &p, &p)?) {
                (true, false) => {
                    constant += 1;
                    bad += (s != Scalar::One) as usize;
                }
                (false, true) => {
                    balanced += 1;
                    bad += (s != Scalar::Zero) as usize;
                }
                (false, false) => neither += 1,
                (true, true) => bad += 1,
            }
        }
        Ok((bad == 0, format!("{constant} constant, {balanced} balanced, {neither} neither, {bad} disagreements")))
    });

    c.run("no balanced relation has support inside the first measurement state", || {
        let mut parts = Vec::new();
        let mut ok = true;
        for (spec, _) in reference_tables() {
            let p = reference_pair(spec)?;
            let lemma = check_balanced_preimage_lemma(&p, &p, DEFAULT_CAP)?;
            ok &= lemma.holds();
            parts.push(format!("{spec}: {} rel, {} balanced, {} constant", lemma.relations, lemma.balanced, lemma.constant));
        }
        Ok((ok, parts.join("; ")))
    });

    c.run("Grover first example gives {1,3}", || {
        let p = four();
        let out = grover_run(&parse_rel(GROVER_EXAMPLES[0], 4, 4)?, &p, &p, 1)?;
        let s = out.outcome.output_state.to_string();
        Ok((s == "{1,3}" && out.diffusion_is_bijection && out.f_is_classical, format!("output {s}")))
    });

    let p = four();
    if let Ok(out) = parse_rel(GROVER_EXAMPLES[1], 4, 4).and_then(|f| grover_run(&f, &p, &p, 1)) {
        let s = out.outcome.output_state.to_string();
        c.info("Grover second example, expected {1,3}", s == "{1,3}", format!("composite gives {s}"));
    }
    if let Ok(rels) = enumerate_classical_relations(&p.x, &p.x, DEFAULT_CAP) {
        let mut holds = 0;
        let mut total = 0;
        for f in &rels {
            for sigma in 0..2 {
                if let Ok(out) = grover_run(f.rel(), &p, &p, sigma) {
                    total += 1;
                    holds += out.biconditional_holds() as usize;
                }
            }
        }
        c.info("Grover zero-condition biconditional", holds == total, format!("holds for {holds} of {total} (f, sigma)"));
    }

    c.run("GroupHomID full composite equals the simplified form", || {
        let mut cases = 0;
        let mut bad = 0;
        for spec in ["Z2+Z2", "Z3", "Z4", "Z2+Z2+Z2"] {
            let p = reference_pair(spec)?;
            let n = p.carrier_size();
            let rels: Vec<ClassicalRelation> = if n * n <= DEFAULT_CAP {
                enumerate_classical_relations(&p.x, &p.x, DEFAULT_CAP)?
            } else {
                (0..p.x.num_components())
                    .map(|k| ClassicalRelation::new(constant_relation(&p.x, &p.x, k), &p.x, &p.x))
                    .chain(std::iter::once(ClassicalRelation::new(Rel::identity(n), &p.x, &p.x)))
                    .collect::<Result<_>>()?
            };
            for f in &rels {
                for rho in 0..p.z.num_components() {
                    for sigma in 0..p.z.num_components() {
                        let out = grouphomid_run(f, &p, &p, rho, sigma)?;
                        cases += 1;
                        bad += (!out.agrees || out.outcome.scalar.is_one() != out.witness) as usize;
                    }
                }
            }
        }
        Ok((bad == 0, format!("{cases} cases, {bad} disagreements")))
    });

    c.run("GroupHomID with an isomorphism reaches every state", || {
        let mut n = 0;
        let mut ok = true;
        for spec in ["Z2+Z2", "Z3", "Z4", "Z2+Z2+Z2"] {
            let p = reference_pair(spec)?;
            let id = ClassicalRelation::new(Rel::identity(p.carrier_size()), &p.x, &p.x)?;
            ok &= homid_reachable_states(&id, &p, &p)?.iter().all(|&b| b);
            n += 1;
        }
        Ok((ok, format!("{n} identity isomorphisms")))
    });
}

fn fourier_suite(c: &mut Collector, mutate: bool) {
    let groups = groups_up_to(24);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let random_fn = |rng: &mut ChaCha8Rng, g: &FiniteAbelianGroup| {
        let v = (0..g.order()).map(|_| num_complex::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        GroupFunction::new(g, v).expect("length matches")
    };

    let z2 = FiniteAbelianGroup::cyclic(2);
    let mut ok = character_value(&z2, 1, 1) == num_complex::Complex64::new(-1.0, 0.0);
    for g in &groups {
        for _ in 0..20 {
            let (h, x, y) = (rng.gen_range(0..g.order()), rng.gen_range(0..g.order()), rng.gen_range(0..g.order()));
            let prod = character_value(g, h, x) * character_value(g, h, y);
            ok &= (prod - character_value(g, h, g.add(x, y))).norm() < TOL && character_value(g, 0, x) == num_complex::Complex64::new(1.0, 0.0);
        }
    }
    c.check("characters are multiplicative", ok, format!("{} groups", groups.len()));

    let mut worst: f64 = 0.0;
    for g in &groups {
        for _ in 0..100 {
            let f = random_fn(&mut rng, g);
            let mut back = inverse_fourier(&fourier_transform(&f));
            if mutate {
                back.values[0] += 1e-3;
            }
            worst = worst.max(back.max_abs_diff(&f));
        }
    }
    c.check("inverse transform undoes the transform", worst < TOL, format!("max error {worst:.2e} over {} groups", groups.len()));

    let mut worst: f64 = 0.0;
    for g in &groups {
        for _ in 0..20 {
            let (f, h) = (random_fn(&mut rng, g), random_fn(&mut rng, g));
            worst = worst.max(convolution_theorem_error(&f, &h).expect("same group"));
        }
    }
    c.check("convolution theorem (scaled by the group order)", worst < TOL, format!("max error {worst:.2e}"));

    let worst = groups.iter().map(character_orthogonality_check).fold(0.0, f64::max);
    c.check("characters are orthonormal", worst < TOL, format!("max error {worst:.2e}"));

    let mut worst: f64 = 0.0;
    for g in &groups {
        let m = fourier_matrix(g, &GroupHomTable::identity(g)).expect("identity is an isomorphism");
        worst = worst.max(m.scale(1.0 / (g.order() as f64).sqrt()).unitarity_error());
    }
    c.check("normalised Fourier matrices are unitary", worst < TOL, format!("max error {worst:.2e}"));

    let hmat = ComplexMatrix::from_real(&[vec![1.0, 1.0], vec![1.0, -1.0]]);
    let m2 = fourier_matrix(&z2, &GroupHomTable::identity(&z2)).expect("iso");
    let mut kron_ok = true;
    let mut acc = hmat.clone();
    for n in 2..=4 {
        acc = acc.kron(&hmat);
        let g = FiniteAbelianGroup::new(vec![2; n]).expect("valid");
        kron_ok &= fourier_matrix(&g, &GroupHomTable::identity(&g)).expect("iso").max_abs_diff(&acc) == 0.0;
    }
    c.check("Z2 Fourier matrix is [[1,1],[1,-1]] and Z2^n its tensor power", m2.max_abs_diff(&hmat) == 0.0 && kron_ok, "exact comparison");

    c.run("Deutsch-Jozsa amplitudes", || {
        let g = FiniteAbelianGroup::new(vec![2, 2])?;
        let constant = GroupHomTable::function(g.clone(), z2.clone(), vec![0; 4])?;
        let balanced = GroupHomTable::function(g.clone(), z2.clone(), vec![0, 1, 1, 0])?;
        let projection = GroupHomTable::function(g.clone(), z2.clone(), vec![0, 0, 1, 1])?;
        let ok = (dj_amplitude(&constant, 1).norm() - 1.0).abs() < TOL
            && dj_amplitude(&balanced, 1).norm() < TOL
            && dj_amplitude(&projection, 1).norm() < TOL;
        Ok((ok, "constant 1, balanced 0, projection 0".into()))
    });

    let grid: Vec<FiniteAbelianGroup> = groups_up_to(36)
        .into_iter()
        .filter(|g| g.factors().iter().all(|f| [2, 3, 4, 8, 9].contains(f)))
        .collect();
    let mut mismatches = Vec::new();
    let mut total = 0u64;
    for g in &grid {
        for a in &grid {
            let e = count_homs_enumerated(g, a);
            total += e;
            if count_homs_formula(g, a).ok() != Some(e) {
                mismatches.push(format!("{g}->{a}"));
            }
        }
    }
    c.check(
        "homomorphism count matches the product formula",
        mismatches.is_empty(),
        format!("{} group pairs, {total} homomorphisms; mismatches: {mismatches:?}", grid.len() * grid.len()),
    );

    let mut ok = true;
    let mut parts = Vec::new();
    for (gs, as_) in [("Z6", "Z4"), ("Z2xZ2", "Z2xZ4"), ("Z2xZ2xZ2", "Z2"), ("Z9", "Z3")] {
        let (g, a) = (crate::text::parse_group(gs).expect("valid"), crate::text::parse_group(as_).expect("valid"));
        let homs = enumerate_homs(&g, &a);
        let mut recovered = 0;
        for f in &homs {
            if let Ok(id) = grouphomid_identify(&g, &a, &HomOracle::new(f.clone())) {
                recovered += (id.table == *f && id.query_count == a.factors().len() && id.is_deterministic()) as usize;
            }
        }
        ok &= recovered == homs.len();
        parts.push(format!("{gs}->{as_}: {recovered}/{} in {} queries (classical {})", homs.len(), a.factors().len(), classical_query_count(&g)));
    }
    c.check("quantum identification recovers every homomorphism", ok, parts.join("; "));
}
