//! The generic odd element `x₀` and the detecting subalgebras `𝔣` and `𝔢`.
//!
//! `Lie(H)` is the centralizer of `x₀` in `g₀`, `𝔣₁ = g₁^H` is computed
//! infinitesimally, `𝔣₀` is the even stabilizer of `𝔣₁`, and
//! `𝔢 = Lie(H) ⊕ 𝔢₁` with `𝔢₁` spanned by `x_α + x_{−α}` for `α ∈ Ω`.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    build, AlgebraError, AlgebraParts, AlgebraRef, Detecting, Embedding, Family, LieSuperalgebra,
    MatrixRep,
};
use crate::linalg::{self, rat, Rational, SparseMatrix, Vector};
use crate::tables;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetectError {
    #[error("degenerate coefficients for x0: {0}")]
    DegenerateCoefficients(String),
    #[error("no generic element is defined for {0}")]
    Unsupported(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `x₀ = Σ d_α (x_α + x_{−α})`, or a diagonal odd `B` for the Q families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericElement {
    /// Roots of `Ω` in ε/δ coordinates (empty for the Q families).
    #[serde(with = "crate::json::vectors")]
    pub omega: Vec<Vector>,
    #[serde(with = "crate::json::vector")]
    pub coefficients: Vec<Rational>,
    #[serde(with = "crate::json::vector")]
    pub vector: Vector,
    /// Basis indices entering each summand: `[x_α, x_{−α}]`, or `[x_α]`
    /// when `−α` is not a root.
    pub terms: Vec<Vec<usize>>,
}

fn is_q(f: Family) -> bool {
    matches!(f, Family::Q | Family::QHAT)
}

fn odd_root(a: &LieSuperalgebra, coords: &[Rational]) -> Option<usize> {
    a.odd_indices()
        .into_iter()
        .find(|&i| a.weight(i).map(|w| w.as_slice()) == Some(coords))
}

fn eps(n: usize, entries: &[(usize, i64)]) -> Vector {
    let mut v = linalg::zero_vec(n);
    for &(k, c) in entries {
        v[k] += rat(c);
    }
    v
}

/// The set `Ω` of odd positive roots for the non-Q families.
pub fn omega(a: &LieSuperalgebra) -> Result<Vec<Vector>, DetectError> {
    let p = a.params();
    let n = a.coord_labels().len();
    Ok(match a.family() {
        Family::GL | Family::SL | Family::PSL => {
            let (m, k) = (p[0], p[1]);
            (0..m.min(k))
                .map(|i| eps(n, &[(i, 1), (m + i, -1)]))
                .collect()
        }
        Family::OSP => {
            let (ne, nd) = (p[0] / 2, p[1] / 2);
            (0..ne.min(nd))
                .map(|i| eps(n, &[(i, 1), (ne + i, -1)]))
                .collect()
        }
        Family::P => {
            let k = p[0];
            (0..k.div_ceil(2))
                .map(|i| eps(n, &[(i, 1), (k - 1 - i, 1)]))
                .collect()
        }
        Family::Q | Family::QHAT => vec![],
        Family::SUB => return Err(DetectError::Unsupported(a.display_name())),
    })
}

/// `d_i = i`, shifted to trace zero for `Q`.
pub fn default_coefficients(a: &LieSuperalgebra) -> Result<Vec<Rational>, DetectError> {
    Ok(match a.family() {
        Family::QHAT => (1..=a.params()[0] as i64).map(rat).collect(),
        Family::Q => {
            let n = a.params()[0] as i64;
            (1..=n).map(|i| linalg::frac(2 * i - n - 1, 2)).collect()
        }
        _ => (1..=omega(a)?.len() as i64).map(rat).collect(),
    })
}

/// Odd vector with prescribed matrix, solved against the odd basis.
fn odd_from_matrix(a: &LieSuperalgebra, target: &SparseMatrix) -> Result<Vector, DetectError> {
    let rep = a
        .matrix_rep()
        .ok_or_else(|| DetectError::Unsupported(a.display_name()))?;
    let odd = a.odd_indices();
    let size = rep.even + rep.odd;
    let flat = |m: &SparseMatrix| -> Vector {
        let mut v = linalg::zero_vec(size * size);
        for (i, j, x) in m.iter() {
            v[i * size + j] = x.clone();
        }
        v
    };
    let cols: Vec<Vector> = odd.iter().map(|&k| flat(&rep.matrices[k])).collect();
    let c = linalg::coordinates_in(&cols, &flat(target)).ok_or_else(|| {
        DetectError::DegenerateCoefficients("diagonal is not in the odd part".into())
    })?;
    let mut v = linalg::zero_vec(a.dim());
    for (&k, x) in odd.iter().zip(c) {
        v[k] = x;
    }
    Ok(v)
}

/// Odd part with diagonal `B` for the Q families.
fn q_diagonal(a: &LieSuperalgebra, diag: &[Rational]) -> Result<Vector, DetectError> {
    let n = a.params()[0];
    let mut m = SparseMatrix::zeros(2 * n, 2 * n);
    for (i, d) in diag.iter().enumerate() {
        m.set(i, n + i, d.clone());
        m.set(n + i, i, d.clone());
    }
    odd_from_matrix(a, &m)
}

pub fn make_x0(
    a: &LieSuperalgebra,
    coefficients: &[Rational],
) -> Result<GenericElement, DetectError> {
    let degenerate = |s: &str| Err(DetectError::DegenerateCoefficients(s.to_string()));
    if is_q(a.family()) {
        let n = a.params()[0];
        if coefficients.len() != n {
            return degenerate(&format!("expected {n} diagonal entries"));
        }
        for i in 0..n {
            for j in 0..i {
                if coefficients[i] == coefficients[j] {
                    return degenerate("diagonal entries must be distinct");
                }
            }
        }
        if a.family() == Family::Q && !coefficients.iter().sum::<Rational>().is_zero() {
            return degenerate("diagonal must have trace zero");
        }
        return Ok(GenericElement {
            omega: vec![],
            coefficients: coefficients.to_vec(),
            vector: q_diagonal(a, coefficients)?,
            terms: vec![],
        });
    }
    let om = omega(a)?;
    if coefficients.len() != om.len() {
        return degenerate(&format!("expected {} coefficients", om.len()));
    }
    for (i, d) in coefficients.iter().enumerate() {
        if d.is_zero() {
            return degenerate("coefficients must be nonzero");
        }
        if coefficients[..i].iter().any(|e| e.abs() == d.abs()) {
            return degenerate("coefficients must have distinct squares");
        }
    }
    let mut vector = linalg::zero_vec(a.dim());
    let mut terms = Vec::new();
    for (beta, d) in om.iter().zip(coefficients) {
        let pos = odd_root(a, beta)
            .ok_or_else(|| DetectError::Unsupported(format!("missing root {beta:?}")))?;
        let neg_coords: Vector = beta.iter().map(|x| -x).collect();
        let mut t = vec![pos];
        if let Some(neg) = odd_root(a, &neg_coords) {
            t.push(neg);
        }
        for &k in &t {
            vector[k] += d;
        }
        terms.push(t);
    }
    Ok(GenericElement {
        omega: om,
        coefficients: coefficients.to_vec(),
        vector,
        terms,
    })
}

fn lift(a: &LieSuperalgebra, idx: &[usize], v: &[Rational]) -> Vector {
    let mut out = linalg::zero_vec(a.dim());
    for (&k, x) in idx.iter().zip(v) {
        out[k] = x.clone();
    }
    out
}

fn project(idx: &[usize], v: &[Rational]) -> Vector {
    idx.iter().map(|&k| v[k].clone()).collect()
}

/// `Lie(H) = { y ∈ g₀ : [y, x] = 0 }`.
pub fn centralizer_even(a: &LieSuperalgebra, x: &[Rational]) -> Vec<Vector> {
    let (ev, od) = (a.even_indices(), a.odd_indices());
    let m = a.ad_block(x, &od, &ev);
    linalg::kernel_basis(&m)
        .iter()
        .map(|k| lift(a, &ev, k))
        .collect()
}

/// `𝔣₁`: joint kernel of `ad(y)` on `g₁` over `y ∈ Lie(H)`.
pub fn fixed_odd_space(a: &LieSuperalgebra, lie_h: &[Vector]) -> Vec<Vector> {
    let od = a.odd_indices();
    let mut rows = Vec::new();
    for y in lie_h {
        rows.extend(a.ad_block(y, &od, &od).sparse_rows());
    }
    linalg::kernel_of_rows(rows, od.len())
        .iter()
        .map(|k| lift(a, &od, k))
        .collect()
}

/// `𝔣₀ = { y ∈ g₀ : [y, 𝔣₁] ⊆ 𝔣₁ }`.
pub fn normalizer_even(a: &LieSuperalgebra, f1: &[Vector]) -> Vec<Vector> {
    let (ev, od) = (a.even_indices(), a.odd_indices());
    let f1_odd: Vec<Vector> = f1.iter().map(|v| project(&od, v)).collect();
    let ann = linalg::annihilator(&f1_odd, od.len());
    let mut rows = Vec::new();
    for f in f1 {
        // column j holds [b_j, f] in odd coordinates
        let cols: Vec<Vector> = ev
            .iter()
            .map(|&j| {
                let b = a.bracket(&a.basis_vector(j), f).expect("lengths agree");
                project(&od, &b)
            })
            .collect();
        for phi in &ann {
            let row: Vec<(usize, Rational)> = cols
                .iter()
                .enumerate()
                .map(|(j, c)| (j, phi.iter().zip(c).map(|(p, x)| p * x).sum::<Rational>()))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            rows.push(row);
        }
    }
    linalg::kernel_of_rows(rows, ev.len())
        .iter()
        .map(|k| lift(a, &ev, k))
        .collect()
}

/// Spanning set of `𝔢₁`.
pub fn cartan_subspace(
    a: &LieSuperalgebra,
    x0: &GenericElement,
) -> Result<Vec<Vector>, DetectError> {
    if is_q(a.family()) {
        let n = a.params()[0];
        let diags: Vec<Vec<Rational>> = if a.family() == Family::QHAT {
            (0..n).map(|i| linalg::unit_vec(n, i)).collect()
        } else {
            (0..n - 1)
                .map(|i| {
                    let mut d = linalg::unit_vec(n, i);
                    d[n - 1] = -Rational::one();
                    d
                })
                .collect()
        };
        return diags.iter().map(|d| q_diagonal(a, d)).collect();
    }
    Ok(x0
        .terms
        .iter()
        .map(|t| {
            let mut v = linalg::zero_vec(a.dim());
            for &k in t {
                v[k] = Rational::one();
            }
            v
        })
        .collect())
}

/// Result of the three closed-orbit conditions on a weight multiset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedOrbitCheck {
    pub distinct: bool,
    pub zero_interior: bool,
    pub no_root_differences: bool,
}

impl ClosedOrbitCheck {
    pub fn holds(&self) -> bool {
        self.distinct && self.zero_interior && self.no_root_differences
    }
}

/// Is there `λ > 0` with `Σ λ_i w_i = 0`? Phase one of the simplex method
/// on `λ = 1 + μ`, `μ ≥ 0`, with Bland's rule.
pub fn strictly_positive_relation(weights: &[Vector]) -> bool {
    let Some(len) = weights.first().map(|w| w.len()) else {
        return true;
    };
    let k = weights.len();
    // rows: Σ_i μ_i w_i[r] = b[r], with b = −Σ w_i; normalize b ≥ 0
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(len);
    for r in 0..len {
        let mut row: Vec<Rational> = weights.iter().map(|w| w[r].clone()).collect();
        let mut b: Rational = -weights.iter().map(|w| w[r].clone()).sum::<Rational>();
        if b.is_negative() {
            row.iter_mut().for_each(|x| *x = -x.clone());
            b = -b;
        }
        // artificial variables k..k+len
        row.extend((0..len).map(|j| {
            if j == r {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        row.push(b);
        tab.push(row);
    }
    let nv = k + len;
    let mut basis: Vec<usize> = (k..nv).collect();
    // objective: minimize the sum of artificials, reduced costs over all columns
    loop {
        let cost = |j: usize, tab: &Vec<Vec<Rational>>| -> Rational {
            let base = if j >= k {
                Rational::one()
            } else {
                Rational::zero()
            };
            base - tab
                .iter()
                .zip(&basis)
                .filter(|(_, &b)| b >= k)
                .map(|(row, _)| row[j].clone())
                .sum::<Rational>()
        };
        let Some(enter) = (0..nv).find(|&j| !basis.contains(&j) && cost(j, &tab).is_negative())
        else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for (r, row) in tab.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[nv] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((lr, lv)) => ratio < *lv || (ratio == *lv && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else { break };
        let piv = tab[pr][enter].clone();
        tab[pr].iter_mut().for_each(|x| *x = &*x / &piv);
        let prow = tab[pr].clone();
        for (r, row) in tab.iter_mut().enumerate() {
            if r != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
        basis[pr] = enter;
    }
    tab.iter()
        .zip(&basis)
        .filter(|(_, &b)| b >= k)
        .all(|(row, _)| row[nv].is_zero())
}

/// Weight of basis vector `i` evaluated on the Cartan subalgebra.
fn intrinsic(a: &LieSuperalgebra, i: usize) -> Vector {
    a.intrinsic_weight(i).unwrap_or_default()
}

/// Closed-orbit conditions for the weights of the listed basis vectors.
pub fn closed_orbit_conditions(a: &LieSuperalgebra, support: &[usize]) -> ClosedOrbitCheck {
    let ws: Vec<Vector> = support.iter().map(|&i| intrinsic(a, i)).collect();
    let distinct = (0..ws.len()).all(|i| (0..i).all(|j| ws[i] != ws[j]));
    let zero_interior = strictly_positive_relation(&ws);
    let even_roots: Vec<Vector> = a
        .roots()
        .even()
        .map(|r| intrinsic(a, r.basis_index))
        .collect();
    let mut no_root_differences = true;
    for i in 0..ws.len() {
        for j in 0..ws.len() {
            if i == j {
                continue;
            }
            let d: Vector = ws[i].iter().zip(&ws[j]).map(|(x, y)| x - y).collect();
            if even_roots.contains(&d) {
                no_root_differences = false;
            }
        }
    }
    ClosedOrbitCheck {
        distinct,
        zero_interior,
        no_root_differences,
    }
}

/// Closed-orbit precheck for `x₀`; `None` for the Q families, whose `x₀`
/// has weight zero.
pub fn closed_orbit_precheck(a: &LieSuperalgebra, x0: &GenericElement) -> Option<bool> {
    if is_q(a.family()) {
        return None;
    }
    let support: Vec<usize> = x0.terms.iter().flatten().copied().collect();
    Some(closed_orbit_conditions(a, &support).holds())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectionDims {
    pub lie_h: usize,
    pub f0: usize,
    pub f1: usize,
    pub e1: usize,
    pub table_lie_h: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectionChecks {
    pub lie_h_matches_table: Option<bool>,
    /// `dim Lie(H) = dim g₀ − dim g₁ + #generators` on stable rows.
    pub stability_identity: Option<bool>,
    pub f1_contains_e1: bool,
    pub f1_brackets_in_lie_h: bool,
    pub closed_orbit: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub algebra: String,
    pub x0: GenericElement,
    #[serde(with = "crate::json::vectors")]
    pub lie_h_basis: Vec<Vector>,
    #[serde(with = "crate::json::vectors")]
    pub f0_basis: Vec<Vector>,
    #[serde(with = "crate::json::vectors")]
    pub f1_basis: Vec<Vector>,
    #[serde(with = "crate::json::vectors")]
    pub e1_basis: Vec<Vector>,
    pub dims: DetectionDims,
    pub checks: DetectionChecks,
}

fn in_span(basis: &[Vector], v: &[Rational]) -> bool {
    linalg::is_zero_vec(v) || linalg::coordinates_in(basis, v).is_some()
}

/// Runs the whole construction with the given (or default) coefficients.
pub fn detect(
    a: &LieSuperalgebra,
    coefficients: Option<&[Rational]>,
) -> Result<DetectionReport, DetectError> {
    let coeffs = match coefficients {
        Some(c) => c.to_vec(),
        None => default_coefficients(a)?,
    };
    let x0 = make_x0(a, &coeffs)?;
    let lie_h = centralizer_even(a, &x0.vector);
    let f1 = fixed_odd_space(a, &lie_h);
    let f0 = normalizer_even(a, &f1);
    let e1 = cartan_subspace(a, &x0)?;
    let table = tables::centralizer_dim(a.family(), a.params()).ok();
    let stability_identity = match (
        tables::polar_stable(a.family(), a.params()),
        tables::generator_degrees(a.family(), a.params()),
    ) {
        (Ok(ps), Ok(deg)) if ps.stable => {
            Some(lie_h.len() as i64 == a.dim_even() as i64 - a.dim_odd() as i64 + deg.len() as i64)
        }
        _ => None,
    };
    let mut brackets_ok = true;
    for (i, x) in f1.iter().enumerate() {
        for y in &f1[i..] {
            let b = a.bracket(x, y)?;
            if !in_span(&lie_h, &b) {
                brackets_ok = false;
            }
        }
    }
    let dims = DetectionDims {
        lie_h: lie_h.len(),
        f0: f0.len(),
        f1: f1.len(),
        e1: e1.len(),
        table_lie_h: table,
    };
    let checks = DetectionChecks {
        lie_h_matches_table: table.map(|t| t == lie_h.len()),
        stability_identity,
        f1_contains_e1: e1.iter().all(|v| in_span(&f1, v)),
        f1_brackets_in_lie_h: brackets_ok,
        closed_orbit: closed_orbit_precheck(a, &x0),
    };
    Ok(DetectionReport {
        algebra: a.display_name(),
        x0,
        lie_h_basis: lie_h,
        f0_basis: f0,
        f1_basis: f1,
        e1_basis: e1,
        dims,
        checks,
    })
}

/// The subalgebra spanned by `even ∪ odd` as a SUB-family algebra, after
/// checking closure under the bracket.
pub fn subalgebra(
    parent: Arc<LieSuperalgebra>,
    even: &[Vector],
    odd: &[Vector],
    which: Detecting,
) -> Result<LieSuperalgebra, AlgebraError> {
    let vectors: Vec<Vector> = even.iter().chain(odd).cloned().collect();
    let n = vectors.len();
    let mut constants = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let b = parent.bracket(&vectors[i], &vectors[j])?;
            if linalg::is_zero_vec(&b) {
                continue;
            }
            let c = linalg::coordinates_in(&vectors, &b).ok_or_else(|| {
                AlgebraError::ClosureFailure(format!("[v{i}, v{j}] in {}", parent.display_name()))
            })?;
            for (k, v) in c.into_iter().enumerate() {
                if !v.is_zero() {
                    constants.push((i, j, k, v));
                }
            }
        }
    }
    let parity: Vec<u8> = (0..n).map(|i| u8::from(i >= even.len())).collect();
    let labels: Vec<String> = (0..n)
        .map(|i| {
            if i < even.len() {
                format!("h{}", i + 1)
            } else {
                format!("u{}", i - even.len() + 1)
            }
        })
        .collect();
    let rep = parent.matrix_rep().map(|r| MatrixRep {
        even: r.even,
        odd: r.odd,
        matrices: vectors
            .iter()
            .map(|v| {
                let size = r.even + r.odd;
                let mut m = SparseMatrix::zeros(size, size);
                for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    m = m.add(&r.matrices[k].scale(c));
                }
                m
            })
            .collect(),
        is_representation: r.is_representation,
    });
    LieSuperalgebra::from_parts(AlgebraParts {
        family: Family::SUB,
        params: parent.params().to_vec(),
        labels,
        parity,
        constants,
        cartan: vec![],
        cartan_coords: vec![],
        weights: vec![None; n],
        coord_labels: vec![],
        weight_form: None,
        form: None,
        rep,
        embedding: Some(Embedding {
            parent,
            vectors,
            which,
        }),
    })
}

/// Builds `𝔣` or `𝔢` of `parent` with default coefficients.
pub fn assemble_detecting(
    parent: Arc<LieSuperalgebra>,
    which: Detecting,
) -> Result<(LieSuperalgebra, DetectionReport), DetectError> {
    let report = detect(&parent, None)?;
    let sub = match which {
        Detecting::F => subalgebra(parent, &report.f0_basis, &report.f1_basis, which)?,
        Detecting::E => subalgebra(parent, &report.lie_h_basis, &report.e1_basis, which)?,
    };
    Ok((sub, report))
}

/// Builds the algebra named by a reference, including detecting subalgebras.
pub fn resolve(r: &AlgebraRef) -> Result<Arc<LieSuperalgebra>, DetectError> {
    match r {
        AlgebraRef::Base(f, p) => Ok(Arc::new(build(*f, p)?)),
        AlgebraRef::Detecting(which, inner) => {
            let parent = resolve(inner)?;
            Ok(Arc::new(assemble_detecting(parent, *which)?.0))
        }
    }
}
