//! Invariants of `G₀` on `S(g₁*)`, degree by degree.
//!
//! Variables `ξ_k` are dual to the odd basis vectors in basis order. An even
//! `z` acts on them contragrediently, `z·ξ_k = −Σ_l ad(z)_{k,l} ξ_l`, and on
//! monomials as a derivation. Since the Cartan elements act diagonally, the
//! joint kernel lives in the weight-zero monomials and only the remaining
//! even basis vectors need to be imposed as equations.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Family, LieSuperalgebra};
use crate::linalg::modular::{ModEchelon, PrimeField, DEFAULT_PRIME, SECOND_PRIME};
use crate::linalg::{self, rat, Rational, SparseMatrix, Vector};
use crate::poly::{monomials, Exponent, Polynomial};
use crate::tables::{self, ReflectionGroupKind, ReflectionGroupSpec, TableError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector is not homogeneous of the required parity")]
    WrongParity,
}

/// Graded dimensions indexed by degree `0..=D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionSeries {
    pub dims: Vec<usize>,
}

impl DimensionSeries {
    pub fn max_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }
}

/// How dimensions are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    Exact,
    Modular(PrimeField),
    /// Rank over two primes; the larger rank is kept.
    TwoPrimes(PrimeField, PrimeField),
}

impl Default for CountMode {
    fn default() -> Self {
        CountMode::TwoPrimes(
            PrimeField::new(DEFAULT_PRIME).expect("prime"),
            PrimeField::new(SECOND_PRIME).expect("prime"),
        )
    }
}

impl CountMode {
    pub fn with_prime(p: PrimeField) -> Self {
        let second = if p.prime() == SECOND_PRIME {
            DEFAULT_PRIME
        } else {
            SECOND_PRIME
        };
        CountMode::TwoPrimes(p, PrimeField::new(second).expect("prime"))
    }

    pub fn first_field(&self) -> PrimeField {
        match self {
            CountMode::Exact => PrimeField::default(),
            CountMode::Modular(f) | CountMode::TwoPrimes(f, _) => *f,
        }
    }
}

/// Dimension in one degree with the per-prime ranks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCount {
    pub degree: u32,
    pub candidates: usize,
    pub dim: usize,
    pub primes_agree: bool,
}

/// `z·ξ_k` for each variable `k`.
type VarAction = Vec<Vec<(usize, Rational)>>;

/// Derivation action of `g₀` on `S(g₁*)`.
pub struct InvariantEngine<'a> {
    alg: &'a LieSuperalgebra,
    odd: Vec<usize>,
    actions: Vec<VarAction>,
    /// Intrinsic weight of each variable, when all odd basis vectors are
    /// Cartan weight vectors.
    var_weights: Option<Vec<Vector>>,
}

fn var_action(alg: &LieSuperalgebra, z: &[Rational], odd: &[usize]) -> VarAction {
    let ad = alg.ad_block(z, odd, odd);
    let mut act: VarAction = vec![Vec::new(); odd.len()];
    for (k, l, v) in ad.iter() {
        act[k].push((l, -v.clone()));
    }
    act
}

fn apply_derivation(act: &VarAction, e: &[u32], out: &mut HashMap<Exponent, Rational>) {
    for (k, &ek) in e.iter().enumerate() {
        if ek == 0 {
            continue;
        }
        let mult = Rational::from_integer(ek.into());
        for (l, c) in &act[k] {
            let mut f = e.to_vec();
            f[k] -= 1;
            f[*l] += 1;
            *out.entry(f).or_insert_with(Rational::zero) += &mult * c;
        }
    }
    out.retain(|_, v| !v.is_zero());
}

impl<'a> InvariantEngine<'a> {
    pub fn new(alg: &'a LieSuperalgebra) -> Self {
        let odd = alg.odd_indices();
        let cartan = alg.cartan();
        let var_weights: Option<Vec<Vector>> = if cartan.is_empty() {
            None
        } else {
            odd.iter().map(|&i| alg.intrinsic_weight(i)).collect()
        };
        let even: Vec<usize> = match &var_weights {
            Some(_) => alg
                .even_indices()
                .into_iter()
                .filter(|i| !cartan.contains(i))
                .collect(),
            None => alg.even_indices(),
        };
        let actions = even
            .iter()
            .map(|&z| var_action(alg, &alg.basis_vector(z), &odd))
            .collect();
        InvariantEngine {
            alg,
            odd,
            actions,
            var_weights,
        }
    }

    pub fn algebra(&self) -> &LieSuperalgebra {
        self.alg
    }

    pub fn nvars(&self) -> usize {
        self.odd.len()
    }

    /// Odd basis indices, one per variable.
    pub fn odd_indices(&self) -> &[usize] {
        &self.odd
    }

    /// Monomials of degree `d` that can carry invariants (weight zero).
    pub fn candidates(&self, d: u32) -> Vec<Exponent> {
        let all = monomials(self.nvars(), d);
        match &self.var_weights {
            None => all,
            Some(w) => {
                let r = self.alg.cartan().len();
                all.into_iter()
                    .filter(|e| {
                        (0..r).all(|c| {
                            e.iter()
                                .zip(w)
                                .filter(|(k, _)| **k > 0)
                                .map(|(&k, wk)| &wk[c] * Rational::from_integer(k.into()))
                                .sum::<Rational>()
                                .is_zero()
                        })
                    })
                    .collect()
            }
        }
    }

    /// The image of each candidate monomial under every imposed derivation,
    /// as sparse vectors over a shared output index.
    fn images(&self, cols: &[Exponent]) -> Vec<Vec<(usize, Rational)>> {
        let mut out_index: HashMap<(usize, Exponent), usize> = HashMap::new();
        let mut images = Vec::with_capacity(cols.len());
        for e in cols {
            let mut v = Vec::new();
            for (zi, act) in self.actions.iter().enumerate() {
                let mut img = HashMap::new();
                apply_derivation(act, e, &mut img);
                for (f, c) in img {
                    let next = out_index.len();
                    let idx = *out_index.entry((zi, f)).or_insert(next);
                    v.push((idx, c));
                }
            }
            v.sort_by_key(|(i, _)| *i);
            images.push(v);
        }
        images
    }

    fn rows(&self, cols: &[Exponent]) -> Vec<Vec<(usize, Rational)>> {
        let images = self.images(cols);
        let mut rows: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
        for (j, img) in images.into_iter().enumerate() {
            for (i, c) in img {
                rows.entry(i).or_default().push((j, c));
            }
        }
        let mut keys: Vec<usize> = rows.keys().copied().collect();
        keys.sort_unstable();
        keys.into_iter()
            .map(|k| rows.remove(&k).unwrap_or_default())
            .collect()
    }

    fn rank_of(&self, images: &[Vec<(usize, Rational)>], mode: CountMode) -> (usize, bool) {
        match mode {
            CountMode::Exact => (
                linalg::rank_of_rows(images.to_vec(), linalg::RankMode::Exact),
                true,
            ),
            CountMode::Modular(f) => (
                linalg::rank_of_rows(images.to_vec(), linalg::RankMode::Modular(f)),
                true,
            ),
            CountMode::TwoPrimes(f, g) => {
                let a = linalg::rank_of_rows(images.to_vec(), linalg::RankMode::Modular(f));
                let b = linalg::rank_of_rows(images.to_vec(), linalg::RankMode::Modular(g));
                (a.max(b), a == b)
            }
        }
    }

    pub fn count(&self, d: u32, mode: CountMode) -> DegreeCount {
        let cols = self.candidates(d);
        let images = self.images(&cols);
        let (rank, agree) = self.rank_of(&images, mode);
        DegreeCount {
            degree: d,
            candidates: cols.len(),
            dim: cols.len() - rank,
            primes_agree: agree,
        }
    }

    /// Exact basis of the degree-`d` invariants.
    pub fn invariants(&self, d: u32) -> Vec<Polynomial> {
        let cols = self.candidates(d);
        let kernel = linalg::kernel_of_rows(self.rows(&cols), cols.len());
        kernel
            .into_iter()
            .map(|v| Polynomial::from_coefficients(self.nvars(), &cols, &v))
            .collect()
    }

    /// Basis of the degree-`d` invariants over a prime field, as coefficient
    /// vectors against the returned monomials.
    pub fn invariants_modular(&self, d: u32, field: &PrimeField) -> (Vec<Exponent>, Vec<Vec<u64>>) {
        let cols = self.candidates(d);
        let rows = self.rows(&cols);
        let kernel = linalg::kernel_modular_rows(&rows, cols.len(), field).unwrap_or_else(|| {
            // the prime divides a denominator: reduce an exact basis instead
            let exact = linalg::kernel_of_rows(rows.clone(), cols.len());
            exact
                .iter()
                .map(|v| {
                    let den = v.iter().fold(num_bigint::BigInt::one(), |acc, x| {
                        num_integer::Integer::lcm(&acc, x.denom())
                    });
                    v.iter()
                        .map(|x| {
                            field
                                .reduce(&(x * Rational::from_integer(den.clone())))
                                .expect("integral")
                        })
                        .collect()
                })
                .collect()
        });
        (cols, kernel)
    }

    /// True when every derivation kills `p`.
    pub fn is_invariant(&self, p: &Polynomial) -> bool {
        if let Some(w) = &self.var_weights {
            let r = self.alg.cartan().len();
            for e in p.terms().keys() {
                for c in 0..r {
                    let s: Rational = e
                        .iter()
                        .zip(w)
                        .map(|(&k, wk)| &wk[c] * Rational::from_integer(k.into()))
                        .sum();
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
        for act in &self.actions {
            let mut acc: HashMap<Exponent, Rational> = HashMap::new();
            for (e, c) in p.terms() {
                let mut img = HashMap::new();
                apply_derivation(act, e, &mut img);
                for (f, v) in img {
                    *acc.entry(f).or_insert_with(Rational::zero) += c * v;
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return false;
            }
        }
        true
    }
}

/// Matrix of an even `z` acting on `S^d(g₁*)` in the monomial basis
/// (lexicographically decreasing).
pub fn derivation_action(
    a: &LieSuperalgebra,
    z: &[Rational],
    d: u32,
) -> Result<SparseMatrix, InvariantError> {
    if z.len() != a.dim() {
        return Err(InvariantError::DimensionMismatch {
            expected: a.dim(),
            got: z.len(),
        });
    }
    if !a.is_homogeneous(z, 0) {
        return Err(InvariantError::WrongParity);
    }
    let odd = a.odd_indices();
    let act = var_action(a, z, &odd);
    let monos = monomials(odd.len(), d);
    let index: HashMap<&Exponent, usize> = monos.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut m = SparseMatrix::zeros(monos.len(), monos.len());
    for (j, e) in monos.iter().enumerate() {
        let mut img = HashMap::new();
        apply_derivation(&act, e, &mut img);
        for (f, c) in img {
            m.set(index[&f], j, c);
        }
    }
    Ok(m)
}

/// `dim S^d(g₁*)^{G₀}` for `d = 0..=max_degree`.
pub fn invariant_dimensions(
    a: &LieSuperalgebra,
    max_degree: u32,
    mode: CountMode,
) -> DimensionSeries {
    let eng = InvariantEngine::new(a);
    DimensionSeries {
        dims: (0..=max_degree).map(|d| eng.count(d, mode).dim).collect(),
    }
}

/// Per-degree counts including prime agreement.
pub fn invariant_counts(a: &LieSuperalgebra, max_degree: u32, mode: CountMode) -> Vec<DegreeCount> {
    let eng = InvariantEngine::new(a);
    (0..=max_degree).map(|d| eng.count(d, mode)).collect()
}

/// Hilbert series coefficients predicted by the generator degrees.
pub fn predicted_series(
    family: Family,
    params: &[usize],
    max_degree: usize,
) -> Result<DimensionSeries, InvariantError> {
    let degrees = tables::generator_degrees(family, params)?;
    Ok(DimensionSeries {
        dims: tables::series_from_degrees(&degrees, max_degree),
    })
}

type ModPoly = HashMap<Exponent, u64>;

fn mod_mul(f: &PrimeField, a: &ModPoly, b: &ModPoly) -> ModPoly {
    let mut out: ModPoly = HashMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert(0);
            *slot = f.add(*slot, f.mul(*ca, *cb));
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Products of generators (with repetition, indices nondecreasing from
/// `start`) of total degree exactly `d`.
fn products(
    f: &PrimeField,
    gens: &[(u32, ModPoly)],
    start: usize,
    d: u32,
    acc: &ModPoly,
    out: &mut Vec<ModPoly>,
) {
    if d == 0 {
        out.push(acc.clone());
        return;
    }
    for i in start..gens.len() {
        let (gd, g) = &gens[i];
        if *gd <= d {
            let next = mod_mul(f, acc, g);
            products(f, gens, i, d - gd, &next, out);
        }
    }
}

/// Degrees of generators inferred greedily: in each degree the new
/// generators are the invariants not spanned by products of earlier ones.
pub fn inferred_generator_degrees(
    a: &LieSuperalgebra,
    max_degree: u32,
    field: &PrimeField,
) -> Vec<u32> {
    let eng = InvariantEngine::new(a);
    let n = eng.nvars();
    let mut gens: Vec<(u32, ModPoly)> = Vec::new();
    let mut degrees = Vec::new();
    let one: ModPoly = HashMap::from([(vec![0; n], 1)]);
    for d in 1..=max_degree {
        let (cols, kernel) = eng.invariants_modular(d, field);
        let index: HashMap<&Exponent, usize> =
            cols.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut ech = ModEchelon::new(*field);
        let mut prods = Vec::new();
        products(field, &gens, 0, d, &one, &mut prods);
        for p in prods {
            let mut row: Vec<(usize, u64)> = p
                .iter()
                .map(|(e, c)| {
                    (
                        *index.get(e).expect("product of invariants has weight zero"),
                        *c,
                    )
                })
                .collect();
            row.sort_unstable();
            ech.insert(row);
        }
        for v in kernel {
            let row: Vec<(usize, u64)> = v
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(i, x)| (i, *x))
                .collect();
            if ech.insert(row) {
                let poly: ModPoly = v
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| **x != 0)
                    .map(|(i, x)| (cols[i].clone(), *x))
                    .collect();
                gens.push((d, poly));
                degrees.push(d);
            }
        }
    }
    degrees
}

/// Restriction of `p ∈ S(g₁*)` to the span of `target` (algebra vectors,
/// all odd), in the coordinates of that basis.
pub fn restrict_polynomial(
    a: &LieSuperalgebra,
    p: &Polynomial,
    target: &[Vector],
) -> Result<Polynomial, InvariantError> {
    let odd = a.odd_indices();
    if p.nvars() != odd.len() {
        return Err(InvariantError::DimensionMismatch {
            expected: odd.len(),
            got: p.nvars(),
        });
    }
    let mut columns = Vec::with_capacity(target.len());
    for t in target {
        if t.len() != a.dim() {
            return Err(InvariantError::DimensionMismatch {
                expected: a.dim(),
                got: t.len(),
            });
        }
        if !a.is_homogeneous(t, 1) {
            return Err(InvariantError::WrongParity);
        }
        columns.push(odd.iter().map(|&i| t[i].clone()).collect::<Vector>());
    }
    Ok(p.pullback(&columns))
}

/// Linear images of the coordinates under swapping diagonal positions `i`
/// and `j` of the Cartan subspace of a Q-type algebra.
fn diagonal_swap(spec: &ReflectionGroupSpec, i: usize, j: usize) -> Vec<Polynomial> {
    let r = spec.rank;
    let trace_zero = spec.points != r;
    // diagonal entry k as a linear form in the coordinates
    let entry = |k: usize| -> Polynomial {
        if k < r {
            Polynomial::var(r, k)
        } else {
            debug_assert!(trace_zero);
            Polynomial::linear(&vec![rat(-1); r])
        }
    };
    (0..r)
        .map(|k| {
            let src = if k == i {
                j
            } else if k == j {
                i
            } else {
                k
            };
            entry(src)
        })
        .collect()
}

fn monomial_condition(kind: ReflectionGroupKind, e: &[u32]) -> bool {
    match kind {
        ReflectionGroupKind::Signed4 => e.iter().all(|x| x % 4 == 0),
        ReflectionGroupKind::Signed4Even => {
            e.iter().all(|x| x % 2 == 0) && e.windows(2).all(|w| (w[0] + w[1]) % 4 == 0)
        }
        ReflectionGroupKind::Hyperoctahedral | ReflectionGroupKind::Symmetric => true,
    }
}

/// Checks `q` against the generators of `W`: coordinate permutations and
/// sign changes by exact substitution, fourth-root scalings by exponent
/// congruences.
pub fn w_invariance_check(
    family: Family,
    params: &[usize],
    q: &Polynomial,
) -> Result<bool, InvariantError> {
    let spec = tables::reflection_group(family, params)?;
    w_invariant_under(&spec, q)
}

pub fn w_invariant_under(
    spec: &ReflectionGroupSpec,
    q: &Polynomial,
) -> Result<bool, InvariantError> {
    let r = spec.rank;
    if q.nvars() != r {
        return Err(InvariantError::DimensionMismatch {
            expected: r,
            got: q.nvars(),
        });
    }
    if !q.terms().keys().all(|e| monomial_condition(spec.kind, e)) {
        return Ok(false);
    }
    let points = if spec.kind == ReflectionGroupKind::Symmetric {
        spec.points
    } else {
        r
    };
    for i in 0..points.saturating_sub(1) {
        let images = if spec.kind == ReflectionGroupKind::Symmetric {
            diagonal_swap(spec, i, i + 1)
        } else {
            let mut v: Vec<Polynomial> = (0..r).map(|k| Polynomial::var(r, k)).collect();
            v.swap(i, i + 1);
            v
        };
        if q.substitute(&images) != *q {
            return Ok(false);
        }
    }
    if spec.kind == ReflectionGroupKind::Hyperoctahedral && r > 0 {
        let mut images: Vec<Polynomial> = (0..r).map(|k| Polynomial::var(r, k)).collect();
        images[0] = images[0].scale(&rat(-1));
        if q.substitute(&images) != *q {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `J` from the reflection-group data, evaluated at a point of the Cartan
/// subspace. Nonzero exactly at points with trivial stabilizer in `W`.
pub fn jacobian_eval(
    family: Family,
    params: &[usize],
    point: &[Rational],
) -> Result<Rational, InvariantError> {
    let spec = tables::reflection_group(family, params)?;
    jacobian_for(&spec, point)
}

pub fn jacobian_for(
    spec: &ReflectionGroupSpec,
    point: &[Rational],
) -> Result<Rational, InvariantError> {
    let r = spec.rank;
    if point.len() != r {
        return Err(InvariantError::DimensionMismatch {
            expected: r,
            got: point.len(),
        });
    }
    let pw = |x: &Rational, k: u32| (0..k).fold(Rational::one(), |acc, _| acc * x);
    let pairs = |k: u32, xs: &[Rational]| {
        let mut acc = Rational::one();
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                acc *= pw(&xs[i], k) - pw(&xs[j], k);
            }
        }
        acc
    };
    let prod = |k: u32| point.iter().fold(Rational::one(), |acc, x| acc * pw(x, k));
    Ok(match spec.kind {
        ReflectionGroupKind::Hyperoctahedral => prod(1) * pairs(2, point),
        ReflectionGroupKind::Signed4 => prod(1) * pairs(4, point),
        ReflectionGroupKind::Signed4Even => prod(2) * pairs(4, point),
        ReflectionGroupKind::Symmetric => {
            let mut diag = point.to_vec();
            if spec.points != r {
                diag.push(-point.iter().sum::<Rational>());
            }
            pairs(1, &diag)
        }
    })
}

fn sorted_exponents(r: usize, d: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == r {
        if d == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for e in (0..=d.min(max)).rev() {
        cur.push(e);
        sorted_exponents(r, d - e, e, cur, out);
        cur.pop();
    }
}

/// `dim S^d(𝔠*)^W` computed directly: orbit counting for the monomial
/// groups and an exact kernel for the trace-zero symmetric case.
pub fn w_invariant_dimensions(spec: &ReflectionGroupSpec, max_degree: u32) -> DimensionSeries {
    let r = spec.rank;
    let mut dims = Vec::new();
    for d in 0..=max_degree {
        let dim = if spec.kind == ReflectionGroupKind::Symmetric && spec.points != r {
            let monos = monomials(r, d);
            let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
            for i in 0..spec.points - 1 {
                let images = diagonal_swap(spec, i, i + 1);
                // columns: monomials; rows: coefficients of σ·m − m
                let mut block: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
                for (j, e) in monos.iter().enumerate() {
                    let m = Polynomial::from_terms(r, [(e.clone(), Rational::one())]);
                    let diff = m.substitute(&images).sub(&m);
                    for (k, c) in monos.iter().map(|f| diff.coefficient(f)).enumerate() {
                        if !c.is_zero() {
                            block.entry(k).or_default().push((j, c));
                        }
                    }
                }
                rows.extend(block.into_values());
            }
            monos.len() - linalg::rank_of_rows(rows, linalg::RankMode::Exact)
        } else {
            let mut all = Vec::new();
            sorted_exponents(r, d, d, &mut Vec::new(), &mut all);
            all.iter()
                .filter(|e| match spec.kind {
                    ReflectionGroupKind::Hyperoctahedral => e.iter().all(|x| x % 2 == 0),
                    k => monomial_condition(k, e),
                })
                .count()
        };
        dims.push(dim);
    }
    DimensionSeries { dims }
}
