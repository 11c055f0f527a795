//! ρ, atypicality, defect and superdimension.
//!
//! The bilinear form on weights is the diagonal form induced by the
//! supertrace on the coordinate torus: `+1` on even coordinates, `−1` on odd
//! ones. Only vanishing is ever tested, so the normalization is irrelevant.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{LieSuperalgebra, Root};
use crate::invariants;
use crate::linalg::{self, rat, Rational, Vector};
use crate::module::Supermodule;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("{0} carries no invariant form on weights")]
    NoForm(String),
    #[error("weight has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

fn form(a: &LieSuperalgebra) -> Result<&Vector, WeightError> {
    a.weight_form()
        .ok_or_else(|| WeightError::NoForm(a.display_name()))
}

/// `(x, y)` under the weight form of `a`.
pub fn inner(a: &LieSuperalgebra, x: &[Rational], y: &[Rational]) -> Result<Rational, WeightError> {
    let f = form(a)?;
    for v in [x, y] {
        if v.len() != f.len() {
            return Err(WeightError::DimensionMismatch {
                expected: f.len(),
                got: v.len(),
            });
        }
    }
    Ok(f.iter().zip(x).zip(y).map(|((c, a), b)| c * a * b).sum())
}

/// `ρ = ½(Σ_{Φ₀⁺} α − Σ_{Φ₁⁺} α)`.
pub fn rho(a: &LieSuperalgebra) -> Result<Vector, WeightError> {
    let n = form(a)?.len();
    let rs = a.roots();
    let mut acc = linalg::zero_vec(n);
    for r in &rs.even_positive {
        for (x, c) in acc.iter_mut().zip(&r.coords) {
            *x += c;
        }
    }
    for r in &rs.odd_positive {
        for (x, c) in acc.iter_mut().zip(&r.coords) {
            *x -= c;
        }
    }
    let half = linalg::frac(1, 2);
    Ok(acc.into_iter().map(|x| x * &half).collect())
}

/// Largest pairwise-orthogonal, linearly independent subset of `cands`.
fn max_orthogonal_independent(a: &LieSuperalgebra, cands: &[&Root]) -> Result<usize, WeightError> {
    let n = cands.len();
    let mut ortho = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            ortho[i][j] = inner(a, &cands[i].coords, &cands[j].coords)?.is_zero();
        }
    }
    fn search(
        i: usize,
        chosen: &mut Vec<usize>,
        cands: &[&Root],
        ortho: &[Vec<bool>],
        best: &mut usize,
    ) {
        if chosen.len() + (cands.len() - i) <= *best {
            return;
        }
        if i == cands.len() {
            *best = chosen.len();
            return;
        }
        if chosen.iter().all(|&c| ortho[c][i]) {
            chosen.push(i);
            let vecs: Vec<Vector> = chosen.iter().map(|&c| cands[c].coords.clone()).collect();
            if linalg::rank_of_vectors(&vecs, linalg::RankMode::Exact) == vecs.len() {
                search(i + 1, chosen, cands, ortho, best);
            }
            chosen.pop();
        }
        search(i + 1, chosen, cands, ortho, best);
    }
    let mut best = 0;
    search(0, &mut Vec::new(), cands, &ortho, &mut best);
    Ok(best)
}

fn isotropic_positive_odd(a: &LieSuperalgebra) -> Result<Vec<Root>, WeightError> {
    form(a)?;
    let rs = a.roots();
    let mut out = Vec::new();
    for r in rs.odd_positive {
        if inner(a, &r.coords, &r.coords)?.is_zero() {
            out.push(r);
        }
    }
    Ok(out)
}

/// Maximal number of independent, mutually orthogonal, positive isotropic
/// roots `α` with `(λ + ρ, α) = 0`.
pub fn atypicality(a: &LieSuperalgebra, lambda: &[Rational]) -> Result<usize, WeightError> {
    let rho = rho(a)?;
    if lambda.len() != rho.len() {
        return Err(WeightError::DimensionMismatch {
            expected: rho.len(),
            got: lambda.len(),
        });
    }
    let shifted: Vector = lambda.iter().zip(&rho).map(|(x, y)| x + y).collect();
    let iso = isotropic_positive_odd(a)?;
    let mut cands = Vec::new();
    for r in &iso {
        if inner(a, &shifted, &r.coords)?.is_zero() {
            cands.push(r);
        }
    }
    max_orthogonal_independent(a, &cands)
}

/// Size of a maximal pairwise-orthogonal independent set of isotropic roots.
pub fn defect_combinatorial(a: &LieSuperalgebra) -> Result<usize, WeightError> {
    let iso = isotropic_positive_odd(a)?;
    let cands: Vec<&Root> = iso.iter().collect();
    max_orthogonal_independent(a, &cands)
}

/// Number of generators of `S(g₁*)^{G₀}` found through `max_degree`.
pub fn cohomological_defect(a: &LieSuperalgebra, max_degree: u32) -> usize {
    invariants::inferred_generator_degrees(a, max_degree, &Default::default()).len()
}

/// `dim M₀ − dim M₁`.
pub fn superdimension(m: &Supermodule) -> i64 {
    m.dim0() as i64 - m.dim1() as i64
}

/// Highest weight of the natural module in ε/δ coordinates (`ε₁`).
pub fn natural_highest_weight(a: &LieSuperalgebra) -> Vector {
    let n = a.coord_labels().len();
    let mut v = linalg::zero_vec(n);
    if n > 0 {
        v[0] = rat(1);
    }
    v
}
