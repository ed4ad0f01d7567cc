//! Finite sets, relations between them, subset states and the two scalars.
//!
//! A relation `R: A -> B` is stored column-wise: for every domain element the
//! sorted list of codomain elements it is related to. Products of sets use the
//! encoding `(a, c) -> a * |C| + c`, left factor most significant.

use std::fmt;

use crate::error::{QcrelError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSet {
    labels: Vec<String>,
}

impl FinSet {
    pub fn new(labels: Vec<String>) -> Result<FinSet> {
        if labels.is_empty() {
            return Err(QcrelError::Precondition("a set needs at least one element".into()));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(QcrelError::Precondition("labels must be distinct".into()));
        }
        Ok(FinSet { labels })
    }

    /// The set {0, .., n-1} labelled by its indices.
    pub fn range(n: usize) -> Result<FinSet> {
        FinSet::new((0..n).map(|i| i.to_string()).collect())
    }

    /// The one-element set standing in for the monoidal unit.
    pub fn singleton() -> FinSet {
        FinSet { labels: vec!["*".into()] }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn product(&self, other: &FinSet) -> FinSet {
        let mut labels = Vec::with_capacity(self.size() * other.size());
        for a in &self.labels {
            for c in &other.labels {
                labels.push(format!("({a},{c})"));
            }
        }
        FinSet { labels }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rel {
    dom: usize,
    cod: usize,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

fn check_len(op: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(QcrelError::SizeMismatch { op, expected, found })
    }
}

impl Rel {
    /// Builds a relation column by column. `fill(a, out)` pushes the images of
    /// `a` into `out` in any order, duplicates allowed.
    pub fn build(dom: usize, cod: usize, mut fill: impl FnMut(usize, &mut Vec<u32>)) -> Rel {
        let mut offsets = Vec::with_capacity(dom + 1);
        let mut targets: Vec<u32> = Vec::new();
        let mut scratch = Vec::new();
        offsets.push(0);
        for a in 0..dom {
            scratch.clear();
            fill(a, &mut scratch);
            scratch.sort_unstable();
            scratch.dedup();
            debug_assert!(scratch.iter().all(|&b| (b as usize) < cod));
            targets.extend_from_slice(&scratch);
            offsets.push(targets.len());
        }
        Rel { dom, cod, offsets, targets }
    }

    pub fn from_pairs(
        dom: usize,
        cod: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Rel> {
        let mut cols: Vec<Vec<u32>> = vec![Vec::new(); dom];
        for (a, b) in pairs {
            if a >= dom {
                return Err(QcrelError::OutOfRange { index: a, size: dom });
            }
            if b >= cod {
                return Err(QcrelError::OutOfRange { index: b, size: cod });
            }
            cols[a].push(b as u32);
        }
        Ok(Rel::build(dom, cod, |a, out| out.extend_from_slice(&cols[a])))
    }

    /// The graph of a partial function.
    pub fn from_fn(dom: usize, cod: usize, f: impl Fn(usize) -> Option<usize>) -> Rel {
        Rel::build(dom, cod, |a, out| {
            if let Some(b) = f(a) {
                out.push(b as u32)
            }
        })
    }

    pub fn identity(n: usize) -> Rel {
        Rel::from_fn(n, n, Some)
    }

    pub fn empty(dom: usize, cod: usize) -> Rel {
        Rel::build(dom, cod, |_, _| {})
    }

    pub fn full(dom: usize, cod: usize) -> Rel {
        Rel::build(dom, cod, |_, out| out.extend(0..cod as u32))
    }

    /// The symmetry `A x B -> B x A`.
    pub fn swap(a: usize, b: usize) -> Rel {
        Rel::from_fn(a * b, b * a, |i| Some((i % b) * a + i / b))
    }

    pub fn dom_size(&self) -> usize {
        self.dom
    }

    pub fn cod_size(&self) -> usize {
        self.cod
    }

    /// Number of related pairs.
    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn image_of(&self, a: usize) -> &[u32] {
        &self.targets[self.offsets[a]..self.offsets[a + 1]]
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        a < self.dom && self.image_of(a).binary_search(&(b as u32)).is_ok()
    }

    /// Incidence matrix entry `(b, a)`.
    pub fn incidence(&self, b: usize, a: usize) -> bool {
        self.contains(a, b)
    }

    /// Pairs sorted by domain index, then codomain index.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dom).flat_map(move |a| self.image_of(a).iter().map(move |&b| (a, b as usize)))
    }

    /// `self` after `f`.
    pub fn compose(&self, f: &Rel) -> Result<Rel> {
        check_len("compose", self.dom, f.cod)?;
        let mut seen = vec![u32::MAX; self.cod];
        Ok(Rel::build(f.dom, self.cod, |a, out| {
            for &b in f.image_of(a) {
                for &c in self.image_of(b as usize) {
                    if seen[c as usize] != a as u32 {
                        seen[c as usize] = a as u32;
                        out.push(c);
                    }
                }
            }
        }))
    }

    /// `g` after `self`.
    pub fn then(&self, g: &Rel) -> Result<Rel> {
        g.compose(self)
    }

    pub fn converse(&self) -> Rel {
        let mut cols: Vec<Vec<u32>> = vec![Vec::new(); self.cod];
        for (a, b) in self.pairs() {
            cols[b].push(a as u32);
        }
        Rel::build(self.cod, self.dom, |b, out| out.extend_from_slice(&cols[b]))
    }

    pub fn tensor(&self, g: &Rel) -> Rel {
        let (gd, gc) = (g.dom, g.cod);
        Rel::build(self.dom * gd, self.cod * gc, |i, out| {
            let (a, c) = (i / gd, i % gd);
            for &b in self.image_of(a) {
                for &d in g.image_of(c) {
                    out.push(b * gc as u32 + d);
                }
            }
        })
    }

    fn check_same_shape(&self, op: &'static str, g: &Rel) -> Result<()> {
        check_len(op, self.dom, g.dom)?;
        check_len(op, self.cod, g.cod)
    }

    pub fn union(&self, g: &Rel) -> Result<Rel> {
        self.check_same_shape("union", g)?;
        Ok(Rel::build(self.dom, self.cod, |a, out| {
            out.extend_from_slice(self.image_of(a));
            out.extend_from_slice(g.image_of(a));
        }))
    }

    pub fn intersection(&self, g: &Rel) -> Result<Rel> {
        self.check_same_shape("intersection", g)?;
        Ok(Rel::build(self.dom, self.cod, |a, out| {
            let other = g.image_of(a);
            out.extend(self.image_of(a).iter().filter(|b| other.binary_search(b).is_ok()));
        }))
    }

    pub fn sym_diff(&self, g: &Rel) -> Result<Rel> {
        self.check_same_shape("sym_diff", g)?;
        Ok(Rel::build(self.dom, self.cod, |a, out| {
            let (x, y) = (self.image_of(a), g.image_of(a));
            out.extend(x.iter().filter(|b| y.binary_search(b).is_err()));
            out.extend(y.iter().filter(|b| x.binary_search(b).is_err()));
        }))
    }

    pub fn is_subrelation_of(&self, g: &Rel) -> bool {
        self.dom == g.dom
            && self.cod == g.cod
            && (0..self.dom).all(|a| {
                let other = g.image_of(a);
                self.image_of(a).iter().all(|b| other.binary_search(b).is_ok())
            })
    }

    /// Every column and every row holds exactly one entry.
    pub fn is_bijection(&self) -> bool {
        if self.dom != self.cod || self.targets.len() != self.dom {
            return false;
        }
        let mut hit = vec![false; self.cod];
        for a in 0..self.dom {
            let img = self.image_of(a);
            if img.len() != 1 || hit[img[0] as usize] {
                return false;
            }
            hit[img[0] as usize] = true;
        }
        true
    }

    /// Unitarity in the categorical sense: both composites with the converse
    /// are identities.
    pub fn is_unitary(&self) -> bool {
        let conv = self.converse();
        let left = conv.compose(self).expect("shapes agree");
        let right = self.compose(&conv).expect("shapes agree");
        left == Rel::identity(self.dom) && right == Rel::identity(self.cod)
    }

    pub fn is_total_function(&self) -> bool {
        (0..self.dom).all(|a| self.image_of(a).len() == 1)
    }

    pub fn image(&self, s: &Subset) -> Result<Subset> {
        check_len("image", self.dom, s.parent_size())?;
        let mut out = Subset::empty(self.cod);
        for a in s.indices() {
            for &b in self.image_of(a) {
                out.insert(b as usize);
            }
        }
        Ok(out)
    }

    pub fn preimage(&self, s: &Subset) -> Result<Subset> {
        check_len("preimage", self.cod, s.parent_size())?;
        Ok(Subset::from_mask(
            (0..self.dom)
                .map(|a| self.image_of(a).iter().any(|&b| s.contains(b as usize)))
                .collect(),
        ))
    }

    /// Elements of the domain related to at least one element.
    pub fn support(&self) -> Subset {
        Subset::from_mask((0..self.dom).map(|a| !self.image_of(a).is_empty()).collect())
    }

    /// Incidence matrix with rows indexed by the codomain.
    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; self.dom]; self.cod];
        for (a, b) in self.pairs() {
            m[b][a] = true;
        }
        m
    }

    pub fn from_matrix(m: &[Vec<bool>], dom: usize) -> Result<Rel> {
        let mut pairs = Vec::new();
        for (b, row) in m.iter().enumerate() {
            check_len("from_matrix", dom, row.len())?;
            for (a, &x) in row.iter().enumerate() {
                if x {
                    pairs.push((a, b));
                }
            }
        }
        Rel::from_pairs(dom, m.len(), pairs)
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, b)) in self.pairs().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({a},{b})")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rel[{}->{}]{}", self.dom, self.cod, self)
    }
}

/// A subset of a finite set: a state `|s>` or, read the other way, an effect `<s|`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    members: Vec<bool>,
}

impl Subset {
    pub fn empty(n: usize) -> Subset {
        Subset { members: vec![false; n] }
    }

    pub fn full(n: usize) -> Subset {
        Subset { members: vec![true; n] }
    }

    pub fn singleton(n: usize, x: usize) -> Result<Subset> {
        Subset::from_indices(n, [x])
    }

    pub fn from_mask(members: Vec<bool>) -> Subset {
        Subset { members }
    }

    pub fn from_indices(n: usize, idx: impl IntoIterator<Item = usize>) -> Result<Subset> {
        let mut s = Subset::empty(n);
        for i in idx {
            if i >= n {
                return Err(QcrelError::OutOfRange { index: i, size: n });
            }
            s.members[i] = true;
        }
        Ok(s)
    }

    pub fn parent_size(&self) -> usize {
        self.members.len()
    }

    pub fn mask(&self) -> &[bool] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.get(i).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, i: usize) {
        self.members[i] = true;
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i)
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }

    pub fn is_full(&self) -> bool {
        self.members.iter().all(|&m| m)
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.parent_size() == other.parent_size()
            && self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b)
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        self.members.iter().zip(&other.members).any(|(&a, &b)| a && b)
    }

    fn zip_with(&self, other: &Subset, op: &'static str, f: impl Fn(bool, bool) -> bool) -> Result<Subset> {
        check_len(op, self.parent_size(), other.parent_size())?;
        Ok(Subset::from_mask(
            self.members.iter().zip(&other.members).map(|(&a, &b)| f(a, b)).collect(),
        ))
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        self.zip_with(other, "union", |a, b| a || b)
    }

    pub fn intersection(&self, other: &Subset) -> Result<Subset> {
        self.zip_with(other, "intersection", |a, b| a && b)
    }

    pub fn complement(&self) -> Subset {
        Subset::from_mask(self.members.iter().map(|&m| !m).collect())
    }

    /// The state `{*} -> A`.
    pub fn as_state(&self) -> Rel {
        let idx: Vec<u32> = self.indices().map(|i| i as u32).collect();
        Rel::build(1, self.parent_size(), |_, out| out.extend_from_slice(&idx))
    }

    /// The effect `A -> {*}`.
    pub fn as_effect(&self) -> Rel {
        Rel::build(self.parent_size(), 1, |a, out| {
            if self.members[a] {
                out.push(0)
            }
        })
    }

    /// Reads a state `{*} -> A` back as a subset.
    pub fn from_state(r: &Rel) -> Result<Subset> {
        check_len("from_state", 1, r.dom_size())?;
        Subset::from_indices(r.cod_size(), r.image_of(0).iter().map(|&b| b as usize))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset[{}]{}", self.parent_size(), self)
    }
}

/// The only two scalars of the category: the empty relation and the identity
/// on the one-element set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Scalar {
    Zero,
    One,
}

impl Scalar {
    pub fn from_bool(b: bool) -> Scalar {
        if b {
            Scalar::One
        } else {
            Scalar::Zero
        }
    }

    pub fn from_rel(r: &Rel) -> Result<Scalar> {
        check_len("scalar", 1, r.dom_size())?;
        check_len("scalar", 1, r.cod_size())?;
        Ok(Scalar::from_bool(!r.is_empty()))
    }

    pub fn is_one(self) -> bool {
        self == Scalar::One
    }

    pub fn compose(self, other: Scalar) -> Scalar {
        Scalar::from_bool(self.is_one() && other.is_one())
    }

    pub fn to_rel(self) -> Rel {
        match self {
            Scalar::Zero => Rel::empty(1, 1),
            Scalar::One => Rel::identity(1),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scalar::Zero => "0",
            Scalar::One => "1",
        })
    }
}

/// Possibility of observing `effect` on `state`.
pub fn born_scalar(effect: &Subset, state: &Subset) -> Result<Scalar> {
    check_len("born_scalar", effect.parent_size(), state.parent_size())?;
    Ok(Scalar::from_bool(effect.intersects(state)))
}

/// All `2^(dom*cod)` relations between two small sets, in binary index order.
pub fn all_relations(dom: usize, cod: usize) -> impl Iterator<Item = Rel> {
    let n = dom * cod;
    assert!(n < 32, "too many relations to list");
    (0u64..1 << n).map(move |bits| {
        Rel::build(dom, cod, |a, out| {
            for b in 0..cod {
                if bits >> (a * cod + b) & 1 == 1 {
                    out.push(b as u32);
                }
            }
        })
    })
}
