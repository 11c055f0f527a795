//! Relative cohomology `H•(𝔞, 𝔞₀; M)` for `𝔞₀` the even part.
//!
//! Cochains of degree `p` are `𝔞₀`-invariants in `S^p(𝔞₁*) ⊗ M`, stored as
//! dense-indexed sparse vectors with index `monomial · dim M + k` over the
//! lexicographically decreasing monomial basis. On a polynomial cochain
//! `f` the differential is `(df)(y) = ±ρ(y) f(y)` with sign `(−1)^{p+|m_k|}`
//! on the `m_k` component; it squares to zero on invariants.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::LieSuperalgebra;
use crate::invariants::DimensionSeries;
use crate::linalg::{self, RankMode, Rational, SparseMatrix, Vector};
use crate::module::{self, ModuleError, Supermodule};
use crate::poly::{monomials, Exponent, Polynomial};
use crate::rng;

/// `z·ξ_k` as sparse rows, one per variable.
type VarAction = Vec<Vec<(usize, Rational)>>;

/// The complex `C•(𝔞, 𝔞₀; M)`.
pub struct Complex<'a> {
    alg: &'a LieSuperalgebra,
    module: &'a Supermodule,
    nvars: usize,
    dim_m: usize,
    /// Even elements imposed as invariance conditions.
    actions: Vec<(VarAction, SparseMatrix)>,
    /// Cartan weight of each `ξ_k` and of each module basis vector, when
    /// the Cartan acts diagonally on both.
    weights: Option<(Vec<Vector>, Vec<Vector>)>,
    rho_odd: Vec<SparseMatrix>,
}

/// Degree-`p` cochains.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub degree: u32,
    pub monomials: Vec<Exponent>,
    /// Basis of the invariant subspace, in ambient coordinates.
    pub invariant_basis: Vec<Vector>,
}

impl CochainSpace {
    pub fn ambient_dim(&self, dim_m: usize) -> usize {
        self.monomials.len() * dim_m
    }
}

fn mono_index(monos: &[Exponent]) -> HashMap<&Exponent, usize> {
    monos.iter().enumerate().map(|(i, e)| (e, i)).collect()
}

impl<'a> Complex<'a> {
    pub fn new(alg: &'a LieSuperalgebra, module: &'a Supermodule) -> Result<Self, ModuleError> {
        if !std::ptr::eq(alg, module.algebra().as_ref())
            && alg.reference() != module.algebra().reference()
        {
            return Err(ModuleError::AlgebraMismatch(
                alg.reference().to_string(),
                module.algebra().reference().to_string(),
            ));
        }
        let odd = alg.odd_indices();
        let cartan = alg.cartan().to_vec();
        let weights = Self::diagonal_weights(alg, module, &odd);
        let even: Vec<usize> = match &weights {
            Some(_) => alg
                .even_indices()
                .into_iter()
                .filter(|i| !cartan.contains(i))
                .collect(),
            None => alg.even_indices(),
        };
        let actions = even
            .iter()
            .map(|&z| {
                let ad = alg.ad_block(&alg.basis_vector(z), &odd, &odd);
                let mut act: VarAction = vec![Vec::new(); odd.len()];
                for (k, l, v) in ad.iter() {
                    act[k].push((l, -v.clone()));
                }
                (act, module.action()[z].clone())
            })
            .collect();
        Ok(Complex {
            alg,
            module,
            nvars: odd.len(),
            dim_m: module.dim(),
            actions,
            weights,
            rho_odd: odd.iter().map(|&i| module.action()[i].clone()).collect(),
        })
    }

    fn diagonal_weights(
        alg: &LieSuperalgebra,
        m: &Supermodule,
        odd: &[usize],
    ) -> Option<(Vec<Vector>, Vec<Vector>)> {
        let cartan = alg.cartan();
        if cartan.is_empty() {
            return None;
        }
        let vars: Option<Vec<Vector>> = odd
            .iter()
            .map(|&i| {
                alg.intrinsic_weight(i)
                    .map(|w| w.into_iter().map(|x| -x).collect())
            })
            .collect();
        let mut mods = vec![Vec::with_capacity(cartan.len()); m.dim()];
        for &h in cartan {
            let a = &m.action()[h];
            if a.iter().any(|(i, j, _)| i != j) {
                return None;
            }
            for (k, w) in mods.iter_mut().enumerate() {
                w.push(a.get(k, k));
            }
        }
        Some((vars?, mods))
    }

    pub fn algebra(&self) -> &LieSuperalgebra {
        self.alg
    }

    pub fn module(&self) -> &Supermodule {
        self.module
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    /// Ambient indices that can carry invariants.
    fn candidates(&self, monos: &[Exponent]) -> Vec<usize> {
        let all = 0..monos.len() * self.dim_m;
        match &self.weights {
            None => all.collect(),
            Some((vars, mods)) => all
                .filter(|&t| {
                    let (e, k) = (&monos[t / self.dim_m], t % self.dim_m);
                    (0..mods[k].len()).all(|c| {
                        let s: Rational = e
                            .iter()
                            .zip(vars)
                            .filter(|(x, _)| **x > 0)
                            .map(|(&x, w)| &w[c] * Rational::from_integer(x.into()))
                            .sum();
                        (s + &mods[k][c]).is_zero()
                    })
                })
                .collect(),
        }
    }

    /// `z·(ξ^e ⊗ m_k)` for the `zi`-th imposed element.
    fn act_even(
        &self,
        zi: usize,
        monos: &[Exponent],
        index: &HashMap<&Exponent, usize>,
        t: usize,
    ) -> Vec<(usize, Rational)> {
        let (act, rho) = &self.actions[zi];
        let d = self.dim_m;
        let (e, k) = (&monos[t / d], t % d);
        let mut out: Vec<(usize, Rational)> = Vec::new();
        for (v, &ev) in e.iter().enumerate() {
            if ev == 0 {
                continue;
            }
            let mult = Rational::from_integer(ev.into());
            for (l, c) in &act[v] {
                let mut f = e.clone();
                f[v] -= 1;
                f[*l] += 1;
                out.push((index[&f] * d + k, &mult * c));
            }
        }
        // column k of ρ(z)
        for (i, j, c) in rho.iter() {
            if j == k {
                out.push(((t / d) * d + i, c.clone()));
            }
        }
        out
    }

    /// Degree-`p` cochains with an exact basis of the invariants.
    pub fn cochains(&self, p: u32) -> CochainSpace {
        let monos = monomials(self.nvars, p);
        let index = mono_index(&monos);
        let cols = self.candidates(&monos);
        let mut rows: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
        for (ci, &t) in cols.iter().enumerate() {
            for zi in 0..self.actions.len() {
                for (r, c) in self.act_even(zi, &monos, &index, t) {
                    rows.entry(zi * monos.len() * self.dim_m + r)
                        .or_default()
                        .push((ci, c));
                }
            }
        }
        let mut keys: Vec<usize> = rows.keys().copied().collect();
        keys.sort_unstable();
        let rows: Vec<Vec<(usize, Rational)>> = keys
            .into_iter()
            .map(|k| {
                let mut r = rows.remove(&k).unwrap_or_default();
                r.sort_by_key(|(j, _)| *j);
                let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(r.len());
                for (j, c) in r {
                    match merged.last_mut() {
                        Some((lj, lc)) if *lj == j => *lc += c,
                        _ => merged.push((j, c)),
                    }
                }
                merged.retain(|(_, c)| !c.is_zero());
                merged
            })
            .collect();
        let amb = monos.len() * self.dim_m;
        let invariant_basis = linalg::kernel_of_rows(rows, cols.len())
            .into_iter()
            .map(|k| {
                let mut v = linalg::zero_vec(amb);
                for (&t, x) in cols.iter().zip(k) {
                    v[t] = x;
                }
                v
            })
            .collect();
        CochainSpace {
            degree: p,
            monomials: monos,
            invariant_basis,
        }
    }

    fn sign(&self, p: u32, k: usize) -> Rational {
        if (p as usize + usize::from(self.module.parity_of(k))) % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        }
    }

    /// Differential on the ambient space `S^p ⊗ M → S^{p+1} ⊗ M`.
    pub fn ambient_differential(&self, p: u32) -> SparseMatrix {
        let d = self.dim_m;
        let src = monomials(self.nvars, p);
        let dst = monomials(self.nvars, p + 1);
        let index = mono_index(&dst);
        let mut m = SparseMatrix::zeros(dst.len() * d, src.len() * d);
        for (bi, b) in src.iter().enumerate() {
            for (i, rho) in self.rho_odd.iter().enumerate() {
                let mut e = b.clone();
                e[i] += 1;
                let row0 = index[&e] * d;
                for (r, k, c) in rho.iter() {
                    m.add_to(row0 + r, bi * d + k, &(&self.sign(p, k) * c));
                }
            }
        }
        m
    }

    /// Multiplication by `r ∈ S^q(𝔞₁*)` on an ambient cochain of degree `p`.
    pub fn multiply(&self, r: &Polynomial, p: u32, c: &[Rational]) -> Vector {
        let d = self.dim_m;
        let src = monomials(self.nvars, p);
        let q = r.degree().unwrap_or(0);
        let dst = monomials(self.nvars, p + q);
        let index = mono_index(&dst);
        let mut out = linalg::zero_vec(dst.len() * d);
        for (t, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let (b, k) = (&src[t / d], t % d);
            for (e, rc) in r.terms() {
                let f: Exponent = b.iter().zip(e).map(|(x, y)| x + y).collect();
                out[index[&f] * d + k] += x * rc;
            }
        }
        out
    }
}

fn rank_of(vs: &[Vector]) -> usize {
    linalg::rank_of_vectors(vs, RankMode::Exact)
}

/// Matrix of `d^p` against the invariant bases of `C^p` and `C^{p+1}`.
pub fn differential(
    a: &LieSuperalgebra,
    m: &Supermodule,
    p: u32,
) -> Result<SparseMatrix, ModuleError> {
    let cx = Complex::new(a, m)?;
    let src = cx.cochains(p);
    let dst = cx.cochains(p + 1);
    let dmat = cx.ambient_differential(p);
    let cols: Vec<Vector> = src
        .invariant_basis
        .iter()
        .map(|v| {
            let img = dmat.mul_vec(v);
            linalg::coordinates_in(&dst.invariant_basis, &img)
                .or_else(|| {
                    linalg::is_zero_vec(&img).then(|| linalg::zero_vec(dst.invariant_basis.len()))
                })
                .ok_or_else(|| {
                    ModuleError::Invalid("differential leaves the invariant cochains".into())
                })
        })
        .collect::<Result<_, _>>()?;
    Ok(SparseMatrix::from_columns(dst.invariant_basis.len(), &cols))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyResult {
    pub cochain_dims: Vec<usize>,
    /// `rank d^p` for `p = 0..=D`.
    pub ranks: Vec<usize>,
    pub dims: DimensionSeries,
    /// `d^{p+1} d^p = 0` on every computed invariant cochain.
    pub d_squared_zero: bool,
}

impl CohomologyResult {
    /// `Σ(−1)^p dim C^p = Σ(−1)^p dim H^p + (−1)^D rank d^D`.
    pub fn euler_consistent(&self) -> bool {
        let mut c = 0i64;
        let mut h = 0i64;
        for (p, (cp, hp)) in self.cochain_dims.iter().zip(&self.dims.dims).enumerate() {
            let s = if p % 2 == 0 { 1 } else { -1 };
            c += s * *cp as i64;
            h += s * *hp as i64;
        }
        let last = self.ranks.len() - 1;
        let s = if last % 2 == 0 { 1 } else { -1 };
        c == h + s * self.ranks[last] as i64
    }
}

/// Per-degree data kept by [`cohomology_full`].
struct Degree {
    space: CochainSpace,
    /// `d` applied to each invariant basis vector.
    images: Vec<Vector>,
    rank: usize,
}

fn compute(cx: &Complex, max_degree: u32) -> (Vec<Degree>, bool) {
    let mut out = Vec::new();
    let mut dd_zero = true;
    for p in 0..=max_degree {
        let space = cx.cochains(p);
        let dmat = cx.ambient_differential(p);
        let images: Vec<Vector> = space
            .invariant_basis
            .iter()
            .map(|v| dmat.mul_vec(v))
            .collect();
        if p < max_degree {
            let next = cx.ambient_differential(p + 1);
            dd_zero &= images.iter().all(|v| linalg::is_zero_vec(&next.mul_vec(v)));
        }
        let rank = rank_of(&images);
        out.push(Degree {
            space,
            images,
            rank,
        });
    }
    (out, dd_zero)
}

/// `dim H^p(𝔞, 𝔞₀; M)` for `p ≤ max_degree`.
pub fn cohomology_dims(
    a: &LieSuperalgebra,
    m: &Supermodule,
    max_degree: u32,
) -> Result<CohomologyResult, ModuleError> {
    let cx = Complex::new(a, m)?;
    let (degs, d_squared_zero) = compute(&cx, max_degree);
    let cochain_dims: Vec<usize> = degs.iter().map(|d| d.space.invariant_basis.len()).collect();
    let ranks: Vec<usize> = degs.iter().map(|d| d.rank).collect();
    let dims = (0..degs.len())
        .map(|p| cochain_dims[p] - ranks[p] - if p > 0 { ranks[p - 1] } else { 0 })
        .collect();
    Ok(CohomologyResult {
        cochain_dims,
        ranks,
        dims: DimensionSeries { dims },
        d_squared_zero,
    })
}

/// Graded pieces of the annihilator of `H•(𝔢, 𝔢₀; M* ⊗ M)`, each certified
/// only through the cutoff.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedIdeal {
    pub cutoff: u32,
    pub nvars: usize,
    /// `(q, basis of the degree-q part)`.
    pub graded: Vec<(u32, Vec<Polynomial>)>,
}

impl TruncatedIdeal {
    pub fn generators(&self) -> impl Iterator<Item = &Polynomial> {
        self.graded.iter().flat_map(|(_, g)| g)
    }

    pub fn is_zero(&self) -> bool {
        self.generators().next().is_none()
    }

    /// True when every certified element vanishes at `point`.
    pub fn vanishes_at(&self, point: &[Rational]) -> bool {
        self.generators().all(|g| g.eval(point).is_zero())
    }
}

/// Degree-by-degree annihilator of the cohomology of `coeff` (pass
/// `M* ⊗ M` for the support variety of `M`) through degree `cutoff`.
pub fn annihilator_of(
    a: &LieSuperalgebra,
    coeff: &Supermodule,
    cutoff: u32,
) -> Result<TruncatedIdeal, ModuleError> {
    let cx = Complex::new(a, coeff)?;
    let (degs, _) = compute(&cx, cutoff);
    let n = cx.nvars();
    // cohomology representatives of each degree, and functionals vanishing
    // on coboundaries
    let mut reps: Vec<Vec<Vector>> = Vec::new();
    let mut coboundary_ann: Vec<Vec<Vec<(usize, Rational)>>> = Vec::new();
    for (p, d) in degs.iter().enumerate() {
        let amb = d.space.ambient_dim(cx.dim_m());
        let next = monomials(n, p as u32 + 1).len() * cx.dim_m();
        let rows: Vec<Vec<(usize, Rational)>> = (0..next)
            .map(|r| {
                d.images
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v[r].is_zero())
                    .map(|(j, v)| (j, v[r].clone()))
                    .collect()
            })
            .collect();
        let cocycles: Vec<Vector> = linalg::kernel_of_rows(rows, d.images.len())
            .iter()
            .map(|c| {
                let mut v = linalg::zero_vec(amb);
                for (b, x) in d.space.invariant_basis.iter().zip(c) {
                    if x.is_zero() {
                        continue;
                    }
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += x * bi;
                    }
                }
                v
            })
            .collect();
        let boundaries: &[Vector] = if p == 0 { &[] } else { &degs[p - 1].images };
        let mut all: Vec<Vector> = boundaries.to_vec();
        all.extend(cocycles.iter().cloned());
        let keep = linalg::independent_subset(&all);
        reps.push(
            keep.into_iter()
                .filter(|&i| i >= boundaries.len())
                .map(|i| all[i].clone())
                .collect(),
        );
        coboundary_ann.push(
            linalg::annihilator(boundaries, amb)
                .into_iter()
                .map(|l| {
                    l.into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .collect()
                })
                .collect(),
        );
    }
    let mut graded = Vec::new();
    for q in 0..=cutoff {
        let monos = monomials(n, q);
        let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
        for p in 0..=(cutoff - q) {
            for z in &reps[p as usize] {
                let products: Vec<Vector> = monos
                    .iter()
                    .map(|e| {
                        cx.multiply(
                            &Polynomial::from_terms(n, [(e.clone(), Rational::one())]),
                            p,
                            z,
                        )
                    })
                    .collect();
                for lam in &coboundary_ann[(p + q) as usize] {
                    let row: Vec<(usize, Rational)> = products
                        .iter()
                        .enumerate()
                        .map(|(j, w)| (j, lam.iter().map(|(i, a)| a * &w[*i]).sum::<Rational>()))
                        .filter(|(_, v)| !v.is_zero())
                        .collect();
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        let basis: Vec<Polynomial> = linalg::kernel_of_rows(rows, monos.len())
            .into_iter()
            .map(|c| Polynomial::from_coefficients(n, &monos, &c))
            .collect();
        if !basis.is_empty() {
            graded.push((q, basis));
        }
    }
    Ok(TruncatedIdeal {
        cutoff,
        nvars: n,
        graded,
    })
}

/// Annihilator for the support variety of `M`: uses `M* ⊗ M`.
pub fn annihilator_truncated(
    a: &LieSuperalgebra,
    m: &Supermodule,
    cutoff: u32,
) -> Result<TruncatedIdeal, ModuleError> {
    let end = m.dual().tensor(m)?;
    annihilator_of(a, &end, cutoff)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonPoint {
    /// Coefficients against the odd basis of the algebra.
    #[serde(with = "crate::json::vector")]
    pub coords: Vector,
    pub in_rank_variety: Option<bool>,
    pub in_support: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub cutoff: u32,
    pub seed: u64,
    pub ideal: TruncatedIdeal,
    pub points: Vec<ComparisonPoint>,
    pub agreements: usize,
    pub disagreements: usize,
    pub note: String,
}

/// Compares projectivity at sampled odd points with vanishing of the
/// truncated annihilator. Each point has a random nonempty support.
pub fn avrunin_scott_compare(
    a: &LieSuperalgebra,
    m: &Supermodule,
    cutoff: u32,
    samples: usize,
    seed: u64,
) -> Result<ComparisonReport, ModuleError> {
    let ideal = annihilator_truncated(a, m, cutoff)?;
    let odd = a.odd_indices();
    let r = odd.len();
    let mut g = rng::from_seed(seed);
    let mut points = Vec::with_capacity(samples);
    let (mut agree, mut disagree) = (0, 0);
    for _ in 0..samples {
        let mask = if r == 0 {
            0
        } else {
            rng::int_in(&mut g, 1, (1i64 << r) - 1) as usize
        };
        let support: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
        let coords = rng::supported_vector(&mut g, r, &support, 9);
        let mut x = linalg::zero_vec(a.dim());
        for (&k, c) in odd.iter().zip(&coords) {
            x[k] = c.clone();
        }
        let in_rank = match module::is_projective_over_x(m, &x) {
            Ok(p) => Some(!p),
            Err(ModuleError::NonSemisimpleH) => None,
            Err(e) => return Err(e),
        };
        let in_support = ideal.vanishes_at(&coords);
        if in_rank == Some(in_support) {
            agree += 1;
        } else {
            disagree += 1;
        }
        points.push(ComparisonPoint {
            coords,
            in_rank_variety: in_rank,
            in_support,
        });
    }
    Ok(ComparisonReport {
        cutoff,
        seed,
        ideal,
        points,
        agreements: agree,
        disagreements: disagree,
        note: format!(
            "annihilator certified through degree {cutoff}; support membership over-approximates"
        ),
    })
}
