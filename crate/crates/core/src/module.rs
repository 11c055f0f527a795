//! Finite-dimensional supermodules given by action matrices.
//!
//! Coordinates are laid out even first: indices `0..dim0` are even and
//! `dim0..dim0+dim1` are odd. `action[k]` is the matrix of basis element
//! `b_k` of the algebra.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::LieSuperalgebra;
use crate::linalg::{self, frac, RankMode, Rational, SparseMatrix, Vector};
use crate::rng;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("modules live over different algebras: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("{0} has no matrix realization")]
    NoNaturalModule(String),
    #[error("[x,x] does not act semisimply on the module")]
    NonSemisimpleH,
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector is not odd")]
    NotOdd,
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug)]
pub struct Supermodule {
    algebra: Arc<LieSuperalgebra>,
    dim0: usize,
    dim1: usize,
    action: Vec<SparseMatrix>,
}

impl PartialEq for Supermodule {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra)
            && self.dim0 == other.dim0
            && self.dim1 == other.dim1
            && self.action == other.action
    }
}

fn same_algebra(a: &LieSuperalgebra, b: &LieSuperalgebra) -> bool {
    std::ptr::eq(a, b) || (a.reference() == b.reference() && a.dim() == b.dim())
}

fn check_same(a: &LieSuperalgebra, b: &LieSuperalgebra) -> Result<(), ModuleError> {
    if same_algebra(a, b) {
        Ok(())
    } else {
        Err(ModuleError::AlgebraMismatch(
            a.reference().to_string(),
            b.reference().to_string(),
        ))
    }
}

/// Permutation sending even coordinates first, keeping relative order.
fn even_first(parities: &[u8]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..parities.len()).filter(|&i| parities[i] == 0).collect();
    order.extend((0..parities.len()).filter(|&i| parities[i] == 1));
    order
}

/// Conjugates by the reordering `new[a] = old[order[a]]`.
fn reorder(m: &SparseMatrix, order: &[usize]) -> SparseMatrix {
    let mut pos = vec![0; order.len()];
    for (a, &o) in order.iter().enumerate() {
        pos[o] = a;
    }
    let mut out = SparseMatrix::zeros(m.rows(), m.cols());
    for (i, j, v) in m.iter() {
        out.set(pos[i], pos[j], v.clone());
    }
    out
}

impl Supermodule {
    /// Wraps raw action matrices; run [`Supermodule::validate`] to check them.
    pub fn from_action(
        algebra: Arc<LieSuperalgebra>,
        dim0: usize,
        dim1: usize,
        action: Vec<SparseMatrix>,
    ) -> Result<Self, ModuleError> {
        if action.len() != algebra.dim() {
            return Err(ModuleError::DimensionMismatch {
                expected: algebra.dim(),
                got: action.len(),
            });
        }
        let n = dim0 + dim1;
        for m in &action {
            if m.rows() != n || m.cols() != n {
                return Err(ModuleError::DimensionMismatch {
                    expected: n,
                    got: m.rows().max(m.cols()),
                });
            }
        }
        Ok(Supermodule {
            algebra,
            dim0,
            dim1,
            action,
        })
    }

    pub fn algebra(&self) -> &Arc<LieSuperalgebra> {
        &self.algebra
    }

    pub fn dim0(&self) -> usize {
        self.dim0
    }

    pub fn dim1(&self) -> usize {
        self.dim1
    }

    pub fn dim(&self) -> usize {
        self.dim0 + self.dim1
    }

    pub fn action(&self) -> &[SparseMatrix] {
        &self.action
    }

    pub fn parity_of(&self, i: usize) -> u8 {
        u8::from(i >= self.dim0)
    }

    /// `ρ(x)` for an arbitrary algebra vector.
    pub fn rho(&self, x: &[Rational]) -> Result<SparseMatrix, ModuleError> {
        if x.len() != self.algebra.dim() {
            return Err(ModuleError::DimensionMismatch {
                expected: self.algebra.dim(),
                got: x.len(),
            });
        }
        let mut m = SparseMatrix::zeros(self.dim(), self.dim());
        for (k, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (i, j, v) in self.action[k].iter() {
                m.add_to(i, j, &(c * v));
            }
        }
        Ok(m)
    }

    pub fn trivial(a: Arc<LieSuperalgebra>) -> Self {
        let n = a.dim();
        Supermodule {
            algebra: a,
            dim0: 1,
            dim1: 0,
            action: vec![SparseMatrix::zeros(1, 1); n],
        }
    }

    /// Defining representation of a matrix family.
    pub fn natural(a: Arc<LieSuperalgebra>) -> Result<Self, ModuleError> {
        let rep = match a.matrix_rep() {
            Some(r) if r.is_representation => r.clone(),
            _ => return Err(ModuleError::NoNaturalModule(a.display_name())),
        };
        Ok(Supermodule {
            algebra: a,
            dim0: rep.even,
            dim1: rep.odd,
            action: rep.matrices,
        })
    }

    pub fn adjoint(a: Arc<LieSuperalgebra>) -> Self {
        let n = a.dim();
        let order = even_first(a.parities());
        let action = (0..n)
            .map(|k| {
                let mut m = SparseMatrix::zeros(n, n);
                for l in 0..n {
                    for (r, v) in a.table_entry(k, l) {
                        m.set(*r, l, v.clone());
                    }
                }
                reorder(&m, &order)
            })
            .collect();
        Supermodule {
            dim0: a.dim_even(),
            dim1: a.dim_odd(),
            algebra: a,
            action,
        }
    }

    /// Contragredient dual with `(x·f)(m) = −(−1)^{|x||f|} f(x·m)`.
    pub fn dual(&self) -> Self {
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let px = self.algebra.parity(k);
                let mut out = SparseMatrix::zeros(self.dim(), self.dim());
                for (j, i, v) in m.iter() {
                    let neg = px & self.parity_of(j) == 0;
                    out.set(i, j, if neg { -v.clone() } else { v.clone() });
                }
                out
            })
            .collect();
        Supermodule {
            algebra: self.algebra.clone(),
            dim0: self.dim0,
            dim1: self.dim1,
            action,
        }
    }

    /// `M ⊗ N` with `x(m⊗n) = xm⊗n + (−1)^{|x||m|} m⊗xn`.
    pub fn tensor(&self, other: &Self) -> Result<Self, ModuleError> {
        check_same(&self.algebra, &other.algebra)?;
        let (dm, dn) = (self.dim(), other.dim());
        let idx = |a: usize, b: usize| a * dn + b;
        let parities: Vec<u8> = (0..dm * dn)
            .map(|t| self.parity_of(t / dn) ^ other.parity_of(t % dn))
            .collect();
        let order = even_first(&parities);
        let action = (0..self.algebra.dim())
            .map(|k| {
                let px = self.algebra.parity(k);
                let mut m = SparseMatrix::zeros(dm * dn, dm * dn);
                for (i, j, v) in self.action[k].iter() {
                    for b in 0..dn {
                        m.add_to(idx(i, b), idx(j, b), v);
                    }
                }
                for (i, j, v) in other.action[k].iter() {
                    for a in 0..dm {
                        let s = if px & self.parity_of(a) == 1 {
                            -v.clone()
                        } else {
                            v.clone()
                        };
                        m.add_to(idx(a, i), idx(a, j), &s);
                    }
                }
                reorder(&m, &order)
            })
            .collect();
        let dim0 = parities.iter().filter(|&&p| p == 0).count();
        Ok(Supermodule {
            algebra: self.algebra.clone(),
            dim0,
            dim1: dm * dn - dim0,
            action,
        })
    }

    /// `ΠM` with `ρ_Π(x) = (−1)^{|x|} ρ(x)`.
    pub fn parity_shift(&self) -> Self {
        let n = self.dim();
        let order: Vec<usize> = (self.dim0..n).chain(0..self.dim0).collect();
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let m = if self.algebra.parity(k) == 1 {
                    m.scale(&-Rational::one())
                } else {
                    m.clone()
                };
                reorder(&m, &order)
            })
            .collect();
        Supermodule {
            algebra: self.algebra.clone(),
            dim0: self.dim1,
            dim1: self.dim0,
            action,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, ModuleError> {
        check_same(&self.algebra, &other.algebra)?;
        let (dm, dn) = (self.dim(), other.dim());
        // block coordinates: M then N, reordered to M₀ N₀ M₁ N₁
        let parities: Vec<u8> = (0..dm)
            .map(|i| self.parity_of(i))
            .chain((0..dn).map(|i| other.parity_of(i)))
            .collect();
        let order = even_first(&parities);
        let action = (0..self.algebra.dim())
            .map(|k| {
                let mut m = SparseMatrix::zeros(dm + dn, dm + dn);
                for (i, j, v) in self.action[k].iter() {
                    m.set(i, j, v.clone());
                }
                for (i, j, v) in other.action[k].iter() {
                    m.set(dm + i, dm + j, v.clone());
                }
                reorder(&m, &order)
            })
            .collect();
        Ok(Supermodule {
            algebra: self.algebra.clone(),
            dim0: self.dim0 + other.dim0,
            dim1: self.dim1 + other.dim1,
            action,
        })
    }

    /// Restriction to a subalgebra embedded in this module's algebra.
    pub fn restrict(&self, sub: Arc<LieSuperalgebra>) -> Result<Self, ModuleError> {
        let emb = sub.embedding().ok_or_else(|| {
            ModuleError::Invalid(format!("{} carries no embedding", sub.display_name()))
        })?;
        check_same(&emb.parent, &self.algebra)?;
        let action = emb
            .vectors
            .iter()
            .map(|v| self.rho(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Supermodule {
            algebra: sub,
            dim0: self.dim0,
            dim1: self.dim1,
            action,
        })
    }

    /// `Λ(𝔞₁)` with odd basis vectors acting by wedging and `𝔞₀` acting by
    /// zero. A module whenever `[𝔞₀, 𝔞₁] = 0`, which holds for `𝔢`.
    pub fn exterior_regular(a: Arc<LieSuperalgebra>) -> Self {
        let odd = a.odd_indices();
        let r = odd.len();
        let size = 1usize << r;
        let mut subsets: Vec<usize> = (0..size).collect();
        subsets.sort_by_key(|s| (s.count_ones() % 2, *s));
        let mut pos = vec![0; size];
        for (p, &s) in subsets.iter().enumerate() {
            pos[s] = p;
        }
        let dim0 = subsets.iter().filter(|s| s.count_ones() % 2 == 0).count();
        let mut action = vec![SparseMatrix::zeros(size, size); a.dim()];
        for (t, &k) in odd.iter().enumerate() {
            let m = &mut action[k];
            for s in 0..size {
                if s & (1 << t) != 0 {
                    continue;
                }
                // e_t ∧ e_S: sign from moving e_t past lower indices in S
                let before = (s & ((1 << t) - 1)).count_ones();
                let v = if before % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                m.set(pos[s | (1 << t)], pos[s], v);
            }
        }
        Supermodule {
            algebra: a,
            dim0,
            dim1: size - dim0,
            action,
        }
    }

    /// The two-dimensional `P(λ)` over a rank-one algebra with one even
    /// basis vector `c` and one odd `u` satisfying `[u,u] = 2c`:
    /// `ρ(c) = λ/2`, `ρ(u) = [[0, λ/2], [1, 0]]`.
    pub fn p_lambda(a: Arc<LieSuperalgebra>, lambda: &Rational) -> Result<Self, ModuleError> {
        let (ev, od) = (a.even_indices(), a.odd_indices());
        if ev.len() != 1 || od.len() != 1 {
            return Err(ModuleError::Invalid(format!(
                "{} is not of rank one (dims {}|{})",
                a.display_name(),
                ev.len(),
                od.len()
            )));
        }
        let (c, u) = (ev[0], od[0]);
        let uu = a
            .bracket(&a.basis_vector(u), &a.basis_vector(u))
            .map_err(|e| ModuleError::Invalid(e.to_string()))?;
        if uu[c] != linalg::rat(2) {
            return Err(ModuleError::Invalid("expected [u,u] = 2c".into()));
        }
        let half = lambda * frac(1, 2);
        let mut action = vec![SparseMatrix::zeros(2, 2); a.dim()];
        action[c].set(0, 0, half.clone());
        action[c].set(1, 1, half.clone());
        action[u].set(0, 1, half);
        action[u].set(1, 0, Rational::one());
        Ok(Supermodule {
            algebra: a,
            dim0: 1,
            dim1: 1,
            action,
        })
    }

    /// Exhaustive check of the bracket relation and parity blocks.
    pub fn validate(&self) -> ModuleReport {
        let a = &self.algebra;
        let n = a.dim();
        let mut rep = ModuleReport::default();
        for k in 0..n {
            let px = a.parity(k);
            for (i, j, _) in self.action[k].iter() {
                if self.parity_of(i) != (self.parity_of(j) ^ px) {
                    rep.record(format!("parity: b{k} entry ({i},{j})"));
                }
            }
        }
        let products: Vec<Vec<SparseMatrix>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.action[i].mul(&self.action[j]))
                    .collect()
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                rep.pairs_checked += 1;
                let mut lhs = SparseMatrix::zeros(self.dim(), self.dim());
                for (k, v) in a.table_entry(i, j) {
                    lhs = lhs.add(&self.action[*k].scale(v));
                }
                let rhs = products[i][j].sub(&products[j][i].scale(&a.sign(i, j)));
                if lhs != rhs {
                    rep.record(format!("bracket: (b{i}, b{j})"));
                }
            }
        }
        rep
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleReport {
    pub violations: usize,
    pub examples: Vec<String>,
    pub pairs_checked: usize,
}

impl ModuleReport {
    pub fn is_ok(&self) -> bool {
        self.violations == 0
    }

    fn record(&mut self, s: String) {
        self.violations += 1;
        if self.examples.len() < 5 {
            self.examples.push(s);
        }
    }
}

fn check_odd(a: &LieSuperalgebra, x: &[Rational]) -> Result<(), ModuleError> {
    if x.len() != a.dim() {
        return Err(ModuleError::DimensionMismatch {
            expected: a.dim(),
            got: x.len(),
        });
    }
    if !a.is_homogeneous(x, 1) {
        return Err(ModuleError::NotOdd);
    }
    Ok(())
}

/// Rank-one data of an odd vector `x`: `h = [x,x]`, Case I when `h = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOneRestriction {
    #[serde(with = "crate::json::vector")]
    pub x: Vector,
    #[serde(with = "crate::json::vector")]
    pub h: Vector,
    pub case_two: bool,
}

pub fn rank_one(a: &LieSuperalgebra, x: &[Rational]) -> Result<RankOneRestriction, ModuleError> {
    check_odd(a, x)?;
    let h = a
        .bracket(x, x)
        .map_err(|e| ModuleError::Invalid(e.to_string()))?;
    let case_two = !linalg::is_zero_vec(&h);
    Ok(RankOneRestriction {
        x: x.to_vec(),
        h,
        case_two,
    })
}

/// Half-rank test: with `M₀ = ker ρ([x,x])`, `M` is projective over `⟨x⟩`
/// iff `rank(ρ(x)|M₀) = dim M₀ / 2`.
pub fn is_projective_over_x(m: &Supermodule, x: &[Rational]) -> Result<bool, ModuleError> {
    let r1 = rank_one(&m.algebra, x)?;
    let rx = m.rho(x)?;
    let rh = m.rho(&r1.h)?;
    let kernel = if r1.case_two {
        let r = linalg::rank(&rh, RankMode::Exact);
        if r != linalg::rank(&rh.mul(&rh), RankMode::Exact) {
            return Err(ModuleError::NonSemisimpleH);
        }
        linalg::kernel_basis(&rh)
    } else {
        (0..m.dim()).map(|i| linalg::unit_vec(m.dim(), i)).collect()
    };
    if kernel.is_empty() {
        return Ok(true);
    }
    let images: Vec<Vector> = kernel.iter().map(|v| rx.mul_vec(v)).collect();
    let r = linalg::rank_of_vectors(&images, RankMode::Exact);
    Ok(2 * r == kernel.len())
}

/// `M ⊗ N` projective at `x` iff `M` or `N` is.
pub fn tensor_projectivity_law_check(
    m: &Supermodule,
    n: &Supermodule,
    x: &[Rational],
) -> Result<bool, ModuleError> {
    let t = m.tensor(n)?;
    Ok(
        is_projective_over_x(&t, x)?
            == (is_projective_over_x(m, x)? || is_projective_over_x(n, x)?),
    )
}

/// `M` and `M*` agree on projectivity at `x`.
pub fn duality_check(m: &Supermodule, x: &[Rational]) -> Result<bool, ModuleError> {
    Ok(is_projective_over_x(m, x)? == is_projective_over_x(&m.dual(), x)?)
}

/// `M ⊕ N` projective at `x` iff both are.
pub fn direct_sum_law_check(
    m: &Supermodule,
    n: &Supermodule,
    x: &[Rational],
) -> Result<bool, ModuleError> {
    let s = m.direct_sum(n)?;
    Ok(
        is_projective_over_x(&s, x)?
            == (is_projective_over_x(m, x)? && is_projective_over_x(n, x)?),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplePoint {
    /// Coefficients against the `𝔢₁` basis.
    #[serde(with = "crate::json::vector")]
    pub coords: Vector,
    /// `None` when `[x,x]` failed to act semisimply.
    pub projective: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    /// Support as a bit string over the `𝔢₁` basis, e.g. `"101"`.
    pub pattern: String,
    pub size: usize,
    pub points: Vec<SamplePoint>,
}

impl Stratum {
    pub fn all_nonprojective(&self) -> bool {
        self.points.iter().all(|p| p.projective == Some(false))
    }

    pub fn any_nonprojective(&self) -> bool {
        self.points.iter().any(|p| p.projective == Some(false))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankVarietyReport {
    pub module: String,
    pub seed: u64,
    pub strata: Vec<Stratum>,
    /// Largest stratum on which every sample is nonprojective.
    pub estimated_dim: usize,
    /// Largest stratum on which some sample is nonprojective.
    pub estimated_dim_any: usize,
}

/// Point of the algebra given by coefficients against `basis`.
pub fn combine(basis: &[Vector], coords: &[Rational]) -> Vector {
    let len = basis.first().map_or(0, |b| b.len());
    let mut x = linalg::zero_vec(len);
    for (b, c) in basis.iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi += c * bi;
        }
    }
    x
}

/// Samples `samples` random points with each exact support pattern of
/// `e1_basis` and records projectivity. Strata are visited in increasing
/// bit-pattern order.
pub fn rank_variety_probe(
    m: &Supermodule,
    e1_basis: &[Vector],
    samples: usize,
    seed: u64,
) -> Result<RankVarietyReport, ModuleError> {
    let r = e1_basis.len();
    let mut g = rng::from_seed(seed);
    let mut strata = Vec::with_capacity(1 << r);
    for mask in 0usize..(1 << r) {
        let support: Vec<usize> = (0..r).filter(|i| mask & (1 << (r - 1 - i)) != 0).collect();
        let pattern: String = (0..r)
            .map(|i| if support.contains(&i) { '1' } else { '0' })
            .collect();
        let count = if support.is_empty() { 1 } else { samples };
        let mut points = Vec::with_capacity(count);
        for _ in 0..count {
            let coords = rng::supported_vector(&mut g, r, &support, 9);
            let x = combine(e1_basis, &coords);
            let projective = match is_projective_over_x(m, &x) {
                Ok(b) => Some(b),
                Err(ModuleError::NonSemisimpleH) => None,
                Err(e) => return Err(e),
            };
            points.push(SamplePoint { coords, projective });
        }
        strata.push(Stratum {
            pattern,
            size: support.len(),
            points,
        });
    }
    let estimated_dim = strata
        .iter()
        .filter(|s| s.all_nonprojective())
        .map(|s| s.size)
        .max()
        .unwrap_or(0);
    let estimated_dim_any = strata
        .iter()
        .filter(|s| s.any_nonprojective())
        .map(|s| s.size)
        .max()
        .unwrap_or(0);
    Ok(RankVarietyReport {
        module: format!(
            "{}-module of dims ({},{})",
            m.algebra.display_name(),
            m.dim0,
            m.dim1
        ),
        seed,
        strata,
        estimated_dim,
        estimated_dim_any,
    })
}
