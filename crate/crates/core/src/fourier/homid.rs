use std::cell::Cell;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::complex::{ComplexVector, TOL};
use super::transform::character_value;
use crate::error::{QcrelError, Result};
use crate::group::{FiniteAbelianGroup, GroupHomTable};

/// Black-box access to a hidden map `f: G -> A`. The only operation is the
/// unitary `|g, a> -> |g, a + f(g)>`, and every call is counted.
pub struct HomOracle {
    hidden: GroupHomTable,
    queries: Cell<usize>,
}

impl HomOracle {
    pub fn new(hidden: GroupHomTable) -> HomOracle {
        HomOracle { hidden, queries: Cell::new(0) }
    }

    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.hidden.source
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.hidden.target
    }

    pub fn queries(&self) -> usize {
        self.queries.get()
    }

    /// State index is `g * |A| + a`.
    pub fn query(&self, state: &[Complex64]) -> Result<ComplexVector> {
        let (g_ord, a_ord) = (self.hidden.source.order(), self.hidden.target.order());
        if state.len() != g_ord * a_ord {
            return Err(QcrelError::SizeMismatch { op: "oracle query", expected: g_ord * a_ord, found: state.len() });
        }
        self.queries.set(self.queries.get() + 1);
        let mut out = vec![Complex64::new(0.0, 0.0); state.len()];
        for g in 0..g_ord {
            let fg = self.hidden.apply(g);
            for a in 0..a_ord {
                out[g * a_ord + self.hidden.target.add(a, fg)] = state[g * a_ord + a];
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Identification {
    pub table: GroupHomTable,
    pub query_count: usize,
    /// Measurement probabilities over the characters of `G`, one row per query.
    pub distributions: Vec<Vec<f64>>,
}

impl Identification {
    /// One entry at 1 and the rest at 0, within tolerance, in every row.
    pub fn is_deterministic(&self) -> bool {
        self.distributions.iter().all(|row| {
            row.iter().filter(|&&p| (p - 1.0).abs() < TOL).count() == 1
                && row.iter().filter(|&&p| p.abs() >= TOL).count() == 1
        })
    }
}

/// Recovers a promised homomorphism with one query per cyclic factor of `A`.
/// `A` must be given with prime-power factors.
pub fn grouphomid_identify(
    g: &FiniteAbelianGroup,
    a: &FiniteAbelianGroup,
    oracle: &HomOracle,
) -> Result<Identification> {
    if oracle.source() != g || oracle.target() != a {
        return Err(QcrelError::Precondition("oracle groups differ from the stated groups".into()));
    }
    if !a.is_prime_power_factored() {
        return Err(QcrelError::Precondition(format!("{a} is not in prime-power form")));
    }
    let (n, m) = (g.order(), a.order());
    let start = oracle.queries();
    let mut gen_images = vec![vec![0usize; a.factors().len()]; g.factors().len()];
    let mut distributions = Vec::new();

    for (k, &q) in a.factors().iter().enumerate() {
        if q == 1 {
            continue;
        }
        // eigenvector of every shift on A for the fundamental character of factor k
        let rho = |x: usize| {
            let turns = (a.unrank(x)[k] % q) as f64 / q as f64;
            Complex64::from_polar(1.0, std::f64::consts::TAU * turns)
        };
        let eig: Vec<Complex64> = (0..m).map(|x| rho(x).conj() / (m as f64).sqrt()).collect();
        let amp = 1.0 / (n as f64).sqrt();
        let mut state = vec![Complex64::new(0.0, 0.0); n * m];
        for gi in 0..n {
            for x in 0..m {
                state[gi * m + x] = eig[x] * amp;
            }
        }
        let state = oracle.query(&state)?;

        // project the second register onto the eigenvector; the phase kicks back onto G
        let reduced: Vec<Complex64> = (0..n)
            .map(|gi| (0..m).map(|x| eig[x].conj() * state[gi * m + x]).sum())
            .collect();
        // measure in the character basis of G
        let probs: Vec<f64> = (0..n)
            .map(|h| {
                let c: Complex64 = (0..n).map(|gi| character_value(g, h, gi).conj() * reduced[gi]).sum::<Complex64>()
                    / (n as f64).sqrt();
                c.norm_sqr()
            })
            .collect();
        let hits: Vec<usize> = (0..n).filter(|&h| (probs[h] - 1.0).abs() < TOL).collect();
        if hits.len() != 1 || probs.iter().filter(|&&p| p >= TOL).count() != 1 {
            return Err(QcrelError::PromiseViolation(format!(
                "no unique character for factor {k} of {a}; the oracle is not a homomorphism"
            )));
        }
        let h = hits[0];
        for (i, img) in gen_images.iter_mut().enumerate() {
            let z = character_value(g, h, g.generator(i));
            let turns = z.arg() / std::f64::consts::TAU;
            img[k] = ((turns * q as f64).round() as i64).rem_euclid(q as i64) as usize;
        }
        distributions.push(probs);
    }

    let gens: Vec<usize> = gen_images.iter().map(|r| a.rank(r)).collect();
    let table = GroupHomTable::from_generator_images(g, a, &gens);
    Ok(Identification { table, query_count: oracle.queries() - start, distributions })
}

/// Queries a classical algorithm needs: one per cyclic factor of `G`.
pub fn classical_query_count(g: &FiniteAbelianGroup) -> usize {
    g.factors().len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationRow {
    pub source: String,
    pub target: String,
    pub classical: usize,
    pub quantum: usize,
}

/// Classical versus quantum query counts for `Z2^m -> Z2`, `m = 1..=max_m`.
pub fn separation_table(max_m: usize) -> Vec<SeparationRow> {
    let a = FiniteAbelianGroup::cyclic(2);
    (1..=max_m)
        .map(|m| {
            let g = FiniteAbelianGroup::new(vec![2; m]).expect("nonzero factors");
            SeparationRow {
                source: g.to_string(),
                target: a.to_string(),
                classical: classical_query_count(&g),
                quantum: a.factors().len(),
            }
        })
        .collect()
}
