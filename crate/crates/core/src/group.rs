//! Finite abelian groups presented as products of cyclic groups, and
//! homomorphism tables between them.
//!
//! Elements are ranked mixed-radix with the first factor most significant.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{QcrelError, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    factors: Vec<usize>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<usize>) -> Result<FiniteAbelianGroup> {
        if factors.is_empty() {
            return Err(QcrelError::InvalidGroup("no factors".into()));
        }
        if factors.contains(&0) {
            return Err(QcrelError::InvalidGroup("cyclic factor of order 0".into()));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn cyclic(n: usize) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(vec![n]).expect("n >= 1")
    }

    pub fn trivial() -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(1)
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn rank(&self, residues: &[usize]) -> usize {
        debug_assert_eq!(residues.len(), self.factors.len());
        residues.iter().zip(&self.factors).fold(0, |acc, (&r, &n)| acc * n + r % n)
    }

    pub fn unrank(&self, mut r: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, &n) in out.iter_mut().zip(&self.factors).rev() {
            *slot = r % n;
            r /= n;
        }
        out
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (mut x, mut y) = (x, y);
        let mut out = 0;
        let mut place = 1;
        for &n in self.factors.iter().rev() {
            out += ((x % n + y % n) % n) * place;
            place *= n;
            x /= n;
            y /= n;
        }
        out
    }

    pub fn neg(&self, x: usize) -> usize {
        let mut x = x;
        let mut out = 0;
        let mut place = 1;
        for &n in self.factors.iter().rev() {
            out += ((n - x % n) % n) * place;
            place *= n;
            x /= n;
        }
        out
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// `k` copies of `x` added together.
    pub fn scale(&self, k: usize, x: usize) -> usize {
        let res: Vec<usize> = self.unrank(x).iter().zip(&self.factors).map(|(&r, &n)| (r * (k % n)) % n).collect();
        self.rank(&res)
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.unrank(x)
            .iter()
            .zip(&self.factors)
            .map(|(&r, &n)| n / gcd(r, n))
            .fold(1, lcm)
    }

    /// Rank of the generator of the `i`-th cyclic factor.
    pub fn generator(&self, i: usize) -> usize {
        let mut res = vec![0; self.factors.len()];
        res[i] = 1 % self.factors[i];
        self.rank(&res)
    }

    /// Prime-power decomposition of every factor, flattened in factor order.
    pub fn prime_power_factors(&self) -> Vec<(usize, u32)> {
        self.factors.iter().flat_map(|&n| factorize(n)).collect()
    }

    /// Isomorphism test via the multiset of elementary divisors.
    pub fn is_isomorphic(&self, other: &FiniteAbelianGroup) -> bool {
        let mut a = self.prime_power_factors();
        let mut b = other.prime_power_factors();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    /// True when every factor is 1 or a power of a single prime.
    pub fn is_prime_power_factored(&self) -> bool {
        self.factors.iter().all(|&n| factorize(n).len() <= 1)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "Z{n}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Trial division; returns (prime, exponent) pairs in increasing prime order.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A map between groups given by its full value table.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupHomTable {
    pub source: FiniteAbelianGroup,
    pub target: FiniteAbelianGroup,
    pub image: Vec<usize>,
}

impl GroupHomTable {
    /// Checks the homomorphism law exhaustively.
    pub fn new(
        source: FiniteAbelianGroup,
        target: FiniteAbelianGroup,
        image: Vec<usize>,
    ) -> Result<GroupHomTable> {
        let t = GroupHomTable { source, target, image };
        t.check_shape()?;
        if !t.is_homomorphism() {
            return Err(QcrelError::NotIsomorphism("table is not a homomorphism".into()));
        }
        Ok(t)
    }

    /// Any function, not necessarily a homomorphism.
    pub fn function(
        source: FiniteAbelianGroup,
        target: FiniteAbelianGroup,
        image: Vec<usize>,
    ) -> Result<GroupHomTable> {
        let t = GroupHomTable { source, target, image };
        t.check_shape()?;
        Ok(t)
    }

    fn check_shape(&self) -> Result<()> {
        if self.image.len() != self.source.order() {
            return Err(QcrelError::SizeMismatch {
                op: "hom table",
                expected: self.source.order(),
                found: self.image.len(),
            });
        }
        if let Some(&x) = self.image.iter().find(|&&x| x >= self.target.order()) {
            return Err(QcrelError::OutOfRange { index: x, size: self.target.order() });
        }
        Ok(())
    }

    /// Extends generator images `a_i` (one per cyclic factor of the source)
    /// to the table `g -> sum g_i a_i`. No order check is made here.
    pub fn from_generator_images(
        source: &FiniteAbelianGroup,
        target: &FiniteAbelianGroup,
        gens: &[usize],
    ) -> GroupHomTable {
        let image = (0..source.order())
            .map(|g| {
                source
                    .unrank(g)
                    .iter()
                    .zip(gens)
                    .fold(0, |acc, (&k, &a)| target.add(acc, target.scale(k, a)))
            })
            .collect();
        GroupHomTable { source: source.clone(), target: target.clone(), image }
    }

    pub fn identity(g: &FiniteAbelianGroup) -> GroupHomTable {
        GroupHomTable { source: g.clone(), target: g.clone(), image: (0..g.order()).collect() }
    }

    pub fn apply(&self, g: usize) -> usize {
        self.image[g]
    }

    pub fn is_homomorphism(&self) -> bool {
        let n = self.source.order();
        self.image.first() == Some(&0)
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    self.image[self.source.add(x, y)] == self.target.add(self.image[x], self.image[y])
                })
            })
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut hit = vec![false; self.target.order()];
        for &x in &self.image {
            if std::mem::replace(&mut hit[x], true) {
                return false;
            }
        }
        true
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_bijective() && self.is_homomorphism()
    }

    pub fn inverse(&self) -> Result<GroupHomTable> {
        if !self.is_bijective() {
            return Err(QcrelError::NotIsomorphism("map is not bijective".into()));
        }
        let mut inv = vec![0; self.image.len()];
        for (g, &h) in self.image.iter().enumerate() {
            inv[h] = g;
        }
        Ok(GroupHomTable { source: self.target.clone(), target: self.source.clone(), image: inv })
    }

    pub fn compose(&self, first: &GroupHomTable) -> Result<GroupHomTable> {
        if first.target != self.source {
            return Err(QcrelError::NotIsomorphism("composable maps need matching groups".into()));
        }
        Ok(GroupHomTable {
            source: first.source.clone(),
            target: self.target.clone(),
            image: first.image.iter().map(|&x| self.image[x]).collect(),
        })
    }
}

impl fmt::Debug for GroupHomTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: {:?}", self.source, self.target, self.image)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ranks_are_first_factor_major() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        assert_eq!(g.rank(&[1, 0]), 3);
        assert_eq!(g.unrank(5), vec![1, 2]);
        assert_eq!(g.add(5, 4), g.rank(&[0, 0]));
        assert_eq!(g.to_string(), "Z2xZ3");
    }

    #[test]
    fn rejects_bad_factors() {
        assert!(FiniteAbelianGroup::new(vec![]).is_err());
        assert!(FiniteAbelianGroup::new(vec![2, 0]).is_err());
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(72), vec![(2, 3), (3, 2)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        let z6 = FiniteAbelianGroup::cyclic(6);
        assert!(z6.is_isomorphic(&FiniteAbelianGroup::new(vec![3, 2]).unwrap()));
        assert!(!FiniteAbelianGroup::cyclic(4).is_isomorphic(&FiniteAbelianGroup::new(vec![2, 2]).unwrap()));
        assert!(!z6.is_prime_power_factored());
    }

    #[test]
    fn element_orders() {
        let g = FiniteAbelianGroup::new(vec![4, 6]).unwrap();
        assert_eq!(g.element_order(g.rank(&[2, 3])), 2);
        assert_eq!(g.element_order(g.rank(&[1, 1])), 12);
        assert_eq!(g.element_order(0), 1);
    }

    #[test]
    fn hom_tables() {
        let z4 = FiniteAbelianGroup::cyclic(4);
        let z2 = FiniteAbelianGroup::cyclic(2);
        let t = GroupHomTable::from_generator_images(&z4, &z2, &[1]);
        assert_eq!(t.image, vec![0, 1, 0, 1]);
        assert!(t.is_homomorphism());
        let bad = GroupHomTable::from_generator_images(&z2, &z4, &[1]);
        assert!(!bad.is_homomorphism());
        assert!(GroupHomTable::identity(&z4).is_isomorphism());
        let doubling = GroupHomTable::new(z4.clone(), z4.clone(), vec![0, 3, 2, 1]).unwrap();
        assert_eq!(doubling.inverse().unwrap().compose(&doubling).unwrap(), GroupHomTable::identity(&z4));
    }

    fn arb_group() -> impl Strategy<Value = FiniteAbelianGroup> {
        proptest::collection::vec(1..6usize, 1..4).prop_map(|f| FiniteAbelianGroup::new(f).unwrap())
    }

    proptest! {
        #[test]
        fn group_laws(g in arb_group(), seed in any::<u64>()) {
            let n = g.order();
            let (x, y, z) = ((seed % n as u64) as usize, (seed / 7 % n as u64) as usize, (seed / 49 % n as u64) as usize);
            prop_assert_eq!(g.add(g.add(x, y), z), g.add(x, g.add(y, z)));
            prop_assert_eq!(g.add(x, y), g.add(y, x));
            prop_assert_eq!(g.add(x, 0), x);
            prop_assert_eq!(g.add(x, g.neg(x)), 0);
            prop_assert_eq!(g.rank(&g.unrank(x)), x);
            prop_assert_eq!(g.scale(g.element_order(x), x), 0);
        }
    }
}
