//! Textual forms: groupoid specs like `Z2xZ2+Z4`, relation literals like
//! `{(0,1),(2,3)}` and comma-separated numeric vectors.

use num_complex::Complex64;

use crate::error::{QcrelError, Result};
use crate::group::FiniteAbelianGroup;
use crate::groupoid::AbelianGroupoid;
use crate::relcore::Rel;

fn perr(msg: impl Into<String>) -> QcrelError {
    QcrelError::Parse(msg.into())
}

/// `Z2xZ4`; a bare `4` is accepted for `Z4`.
pub fn parse_group(s: &str) -> Result<FiniteAbelianGroup> {
    let factors = s
        .trim()
        .split('x')
        .map(|f| {
            let f = f.trim();
            let digits = f.strip_prefix('Z').unwrap_or(f);
            digits.parse::<usize>().map_err(|_| perr(format!("bad cyclic factor `{f}` in `{s}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteAbelianGroup::new(factors).map_err(|e| perr(format!("`{s}`: {e}")))
}

/// Components separated by `+`, e.g. `Z2+Z2`.
pub fn parse_groupoid(s: &str) -> Result<AbelianGroupoid> {
    if s.trim().is_empty() {
        return Err(perr("empty groupoid spec"));
    }
    let comps = s.split('+').map(parse_group).collect::<Result<Vec<_>>>()?;
    AbelianGroupoid::new(comps).map_err(|e| perr(e.to_string()))
}

/// A groupoid spec that is `k` copies of one group, returned as `(G, k)`.
pub fn parse_uniform(s: &str) -> Result<(FiniteAbelianGroup, usize)> {
    let z = parse_groupoid(s)?;
    let g = z.component(0).clone();
    if z.components().iter().any(|c| *c != g) {
        return Err(perr(format!("`{s}` is not a number of copies of one group")));
    }
    Ok((g, z.num_components()))
}

/// `{(a,b),...}` with flat indices. Whitespace is ignored; `{}` is empty.
pub fn parse_pairs(s: &str) -> Result<Vec<(usize, usize)>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let body = t
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| perr(format!("relation literal must be wrapped in braces: `{s}`")))?;
    let mut pairs = Vec::new();
    let mut rest = body;
    while !rest.is_empty() {
        let inner = rest.strip_prefix('(').ok_or_else(|| perr(format!("expected `(` in `{s}`")))?;
        let close = inner.find(')').ok_or_else(|| perr(format!("unclosed pair in `{s}`")))?;
        let (a, b) = inner[..close].split_once(',').ok_or_else(|| perr(format!("pair without comma in `{s}`")))?;
        let num = |x: &str| x.parse::<usize>().map_err(|_| perr(format!("bad index `{x}` in `{s}`")));
        pairs.push((num(a)?, num(b)?));
        rest = &inner[close + 1..];
        rest = rest.strip_prefix(',').unwrap_or(rest);
    }
    Ok(pairs)
}

pub fn parse_rel(s: &str, dom: usize, cod: usize) -> Result<Rel> {
    Rel::from_pairs(dom, cod, parse_pairs(s)?).map_err(|e| perr(format!("`{s}`: {e}")))
}

/// `1,0,0,0`; entries may be complex as `re+imi` or `re-imi`.
pub fn parse_vector(s: &str) -> Result<Vec<Complex64>> {
    s.split(',')
        .map(|x| {
            let x = x.trim();
            x.parse::<Complex64>().map_err(|_| perr(format!("bad vector entry `{x}`")))
        })
        .collect()
}
