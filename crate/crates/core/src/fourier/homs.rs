use crate::error::{QcrelError, Result};
use crate::group::{FiniteAbelianGroup, GroupHomTable};

/// Lazily walks all homomorphisms `G -> A` by their generator images: the
/// generator of the `i`-th cyclic factor (order `n_i`) may go to any `a`
/// with `n_i a = 0`.
pub struct HomIter {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    allowed: Vec<Vec<usize>>,
    cursor: Vec<usize>,
    done: bool,
}

impl HomIter {
    fn advance(&mut self) {
        for i in (0..self.cursor.len()).rev() {
            self.cursor[i] += 1;
            if self.cursor[i] < self.allowed[i].len() {
                return;
            }
            self.cursor[i] = 0;
        }
        self.done = true;
    }

    /// Current generator images without expanding the table.
    pub fn next_generators(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cursor.iter().zip(&self.allowed).map(|(&c, a)| a[c]).collect();
        self.advance();
        Some(out)
    }

    /// Number of homomorphisms, counted by walking every assignment.
    pub fn count_all(mut self) -> u64 {
        let mut n = 0;
        while !self.done {
            n += 1;
            self.advance();
        }
        n
    }
}

impl Iterator for HomIter {
    type Item = GroupHomTable;

    fn next(&mut self) -> Option<GroupHomTable> {
        let gens = self.next_generators()?;
        Some(GroupHomTable::from_generator_images(&self.source, &self.target, &gens))
    }
}

pub fn homs_iter(source: &FiniteAbelianGroup, target: &FiniteAbelianGroup) -> HomIter {
    let allowed: Vec<Vec<usize>> = source
        .factors()
        .iter()
        .map(|&n| (0..target.order()).filter(|&a| target.scale(n, a) == 0).collect())
        .collect();
    HomIter {
        source: source.clone(),
        target: target.clone(),
        cursor: vec![0; allowed.len()],
        allowed,
        done: false,
    }
}

pub fn enumerate_homs(source: &FiniteAbelianGroup, target: &FiniteAbelianGroup) -> Vec<GroupHomTable> {
    homs_iter(source, target).collect()
}

pub fn count_homs_enumerated(source: &FiniteAbelianGroup, target: &FiniteAbelianGroup) -> u64 {
    homs_iter(source, target).count_all()
}

/// `prod p^min(a, b)` over every pair of a prime-power factor `p^a` of `G`
/// and a prime-power factor `p^b` of `A` with the same prime.
pub fn count_homs_formula(source: &FiniteAbelianGroup, target: &FiniteAbelianGroup) -> Result<u64> {
    let (g, a) = (source.prime_power_factors(), target.prime_power_factors());
    if g.iter().chain(&a).any(|&(p, _)| p > 1 << 16) {
        return Err(QcrelError::InvalidGroup("factor beyond trial division range".into()));
    }
    let mut count: u64 = 1;
    for &(p, x) in &g {
        for &(q, y) in &a {
            if p == q {
                count = count
                    .checked_mul((p as u64).pow(x.min(y)))
                    .ok_or_else(|| QcrelError::InvalidGroup("count overflows".into()))?;
            }
        }
    }
    Ok(count)
}
