use std::f64::consts::TAU;

use num_complex::Complex64;

use super::complex::{ComplexMatrix, ComplexVector};
use crate::error::{QcrelError, Result};
use crate::group::{FiniteAbelianGroup, GroupHomTable};

#[derive(Clone, Debug, PartialEq)]
pub struct GroupFunction {
    pub group: FiniteAbelianGroup,
    pub values: ComplexVector,
}

impl GroupFunction {
    pub fn new(group: &FiniteAbelianGroup, values: ComplexVector) -> Result<GroupFunction> {
        if values.len() != group.order() {
            return Err(QcrelError::SizeMismatch { op: "group function", expected: group.order(), found: values.len() });
        }
        Ok(GroupFunction { group: group.clone(), values })
    }

    pub fn from_real(group: &FiniteAbelianGroup, values: &[f64]) -> Result<GroupFunction> {
        GroupFunction::new(group, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn delta(group: &FiniteAbelianGroup, g: usize) -> GroupFunction {
        let mut values = vec![Complex64::new(0.0, 0.0); group.order()];
        values[g] = Complex64::new(1.0, 0.0);
        GroupFunction { group: group.clone(), values }
    }

    pub fn max_abs_diff(&self, other: &GroupFunction) -> f64 {
        super::complex::max_abs_diff(&self.values, &other.values)
    }
}

/// `chi_h(g) = exp(i sum_j 2 pi g_j h_j / n_j)`.
pub fn character_value(group: &FiniteAbelianGroup, h: usize, g: usize) -> Complex64 {
    let (hr, gr) = (group.unrank(h), group.unrank(g));
    let turns: f64 = group
        .factors()
        .iter()
        .zip(hr.iter().zip(&gr))
        .map(|(&n, (&a, &b))| ((a * b) % n) as f64 / n as f64)
        .sum();
    let turns = turns.fract();
    // quarter turns are returned exactly
    match (turns * 4.0).round() {
        q if (turns * 4.0 - q).abs() > 1e-12 => Complex64::from_polar(1.0, TAU * turns),
        q => match q as i64 % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        },
    }
}

/// `F(chi) = (1/N) sum_g chi^-1(g) f(g)`, with characters indexed by `G`.
pub fn fourier_transform(f: &GroupFunction) -> GroupFunction {
    let g = &f.group;
    let n = g.order();
    let values = (0..n)
        .map(|h| (0..n).map(|x| character_value(g, h, x).conj() * f.values[x]).sum::<Complex64>() / n as f64)
        .collect();
    GroupFunction { group: g.clone(), values }
}

/// `f(g) = sum_chi chi(g) F(chi)`.
pub fn inverse_fourier(big_f: &GroupFunction) -> GroupFunction {
    let g = &big_f.group;
    let n = g.order();
    let values = (0..n).map(|x| (0..n).map(|h| character_value(g, h, x) * big_f.values[h]).sum()).collect();
    GroupFunction { group: g.clone(), values }
}

fn same_group(f: &GroupFunction, g: &GroupFunction) -> Result<()> {
    if f.group != g.group {
        return Err(QcrelError::GroupoidMismatch(format!("{} vs {}", f.group, g.group)));
    }
    Ok(())
}

/// `(f * f')(h) = sum_g' f(h - g') f'(g')`.
pub fn convolve(f: &GroupFunction, fp: &GroupFunction) -> Result<GroupFunction> {
    same_group(f, fp)?;
    let g = &f.group;
    let n = g.order();
    let values = (0..n).map(|h| (0..n).map(|y| f.values[g.sub(h, y)] * fp.values[y]).sum()).collect();
    Ok(GroupFunction { group: g.clone(), values })
}

pub fn pointwise(f: &GroupFunction, fp: &GroupFunction) -> Result<GroupFunction> {
    same_group(f, fp)?;
    let values = f.values.iter().zip(&fp.values).map(|(a, b)| a * b).collect();
    Ok(GroupFunction { group: f.group.clone(), values })
}

/// Largest deviation of `FT(f * f')` from `N FT(f) FT(f')`. With the `1/N`
/// in the forward transform the product picks up a factor `N`: already
/// `delta_0 * delta_0 = delta_0` has transform `1/N` while the product of
/// transforms is `1/N^2`.
pub fn convolution_theorem_error(f: &GroupFunction, fp: &GroupFunction) -> Result<f64> {
    let lhs = fourier_transform(&convolve(f, fp)?);
    let rhs = pointwise(&fourier_transform(f), &fourier_transform(fp))?;
    let n = f.group.order() as f64;
    Ok(super::complex::max_abs_diff(&lhs.values, &rhs.values.iter().map(|z| z * n).collect::<Vec<_>>()))
}

/// Largest deviation of `(1/N) sum_g chi^-1(g) chi'(g)` from the Kronecker delta.
pub fn character_orthogonality_check(group: &FiniteAbelianGroup) -> f64 {
    let n = group.order();
    let table: Vec<Vec<Complex64>> = (0..n).map(|h| (0..n).map(|g| character_value(group, h, g)).collect()).collect();
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let s: Complex64 = (0..n).map(|g| table[a][g].conj() * table[b][g]).sum::<Complex64>() / n as f64;
            let target = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((s - target).norm());
        }
    }
    worst
}

/// `F[h][g] = chi_{psi(h)}(g)` for an automorphism `psi` of `G`.
pub fn fourier_matrix(group: &FiniteAbelianGroup, psi: &GroupHomTable) -> Result<ComplexMatrix> {
    if psi.source != *group || psi.target != *group {
        return Err(QcrelError::GroupoidMismatch("psi must be a map G -> G".into()));
    }
    if !psi.is_isomorphism() {
        return Err(QcrelError::NotIsomorphism("psi is not a group automorphism".into()));
    }
    let n = group.order();
    Ok(ComplexMatrix::from_fn(n, n, |h, g| character_value(group, psi.apply(h), g)))
}

/// `(1/|G|) sum_g sigma(f(g))` for any function `f: G -> A` and a character
/// `sigma` of `A`, given by its index.
pub fn dj_amplitude(f: &GroupHomTable, sigma: usize) -> Complex64 {
    let n = f.source.order();
    (0..n).map(|g| character_value(&f.target, sigma, f.apply(g))).sum::<Complex64>() / n as f64
}
