//! Lie superalgebras as structure constants over ℚ.
//!
//! Every algebra carries the data the later stages need: parity of each
//! basis vector, the Cartan subalgebra of the even part, ε/δ weights of
//! root vectors, and (for the matrix families) the matrices themselves so
//! the natural module is available.

mod build;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, Rational, SparseMatrix, Vector};

pub use build::build;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParams { family: Family, reason: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cannot parse algebra reference `{0}`")]
    BadReference(String),
    #[error("bracket escapes the span of the chosen basis: {0}")]
    ClosureFailure(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    GL,
    SL,
    PSL,
    OSP,
    P,
    Q,
    QHAT,
    SUB,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::PSL => "PSL",
            Family::OSP => "OSP",
            Family::P => "P",
            Family::Q => "Q",
            Family::QHAT => "QHAT",
            Family::SUB => "SUB",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "GL" => Family::GL,
            "SL" => Family::SL,
            "PSL" => Family::PSL,
            "OSP" => Family::OSP,
            "P" => Family::P,
            "Q" => Family::Q,
            "QHAT" => Family::QHAT,
            "SUB" => Family::SUB,
            _ => return Err(AlgebraError::BadReference(s.to_string())),
        })
    }
}

/// Which detecting subalgebra a SUB algebra is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Detecting {
    F,
    E,
}

/// Textual handle for an algebra, e.g. `GL(2,3)`, `Q(3)` or `E[GL(1,1)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraRef {
    Base(Family, Vec<usize>),
    Detecting(Detecting, Box<AlgebraRef>),
}

impl fmt::Display for AlgebraRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraRef::Base(fam, params) => {
                let ps: Vec<String> = params.iter().map(|p| p.to_string()).collect();
                write!(f, "{}({})", fam, ps.join(","))
            }
            AlgebraRef::Detecting(d, inner) => write!(f, "{:?}[{}]", d, inner),
        }
    }
}

impl FromStr for AlgebraRef {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || AlgebraError::BadReference(s.to_string());
        if let Some(rest) = s.strip_suffix(']') {
            let (head, inner) = rest.split_once('[').ok_or_else(bad)?;
            let which = match head {
                "E" | "e" => Detecting::E,
                "F" | "f" => Detecting::F,
                _ => return Err(bad()),
            };
            return Ok(AlgebraRef::Detecting(which, Box::new(inner.parse()?)));
        }
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let family: Family = head.parse()?;
        let params = body
            .split([',', '|'])
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AlgebraRef::Base(family, params))
    }
}

/// Matrix realization of the basis inside `gl(even|odd)`.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub even: usize,
    pub odd: usize,
    pub matrices: Vec<SparseMatrix>,
    /// False for quotients, where the matrices are only coset representatives.
    pub is_representation: bool,
}

/// Basis of a subalgebra written in the coordinates of its parent.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub parent: Arc<LieSuperalgebra>,
    pub vectors: Vec<Vector>,
    pub which: Detecting,
}

/// A root together with the basis vector spanning its root space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub coords: Vector,
    pub parity: u8,
    pub positive: bool,
    pub basis_index: usize,
}

#[derive(Clone, Debug, Default)]
pub struct RootSystem {
    pub even_positive: Vec<Root>,
    pub even_negative: Vec<Root>,
    pub odd_positive: Vec<Root>,
    pub odd_negative: Vec<Root>,
    /// Odd basis vectors of weight zero (nonempty only for the Q families).
    pub odd_zero_weight: Vec<usize>,
}

impl RootSystem {
    pub fn all(&self) -> impl Iterator<Item = &Root> {
        self.even_positive
            .iter()
            .chain(&self.even_negative)
            .chain(&self.odd_positive)
            .chain(&self.odd_negative)
    }

    pub fn even(&self) -> impl Iterator<Item = &Root> {
        self.even_positive.iter().chain(&self.even_negative)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    ParityAdditivity,
    SuperAntisymmetry,
    SuperJacobi,
    WeightVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub count: usize,
    pub examples: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub triples_checked: usize,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, kind: ViolationKind, example: String) {
        if let Some(v) = self.violations.iter_mut().find(|v| v.kind == kind) {
            v.count += 1;
            if v.examples.len() < 5 {
                v.examples.push(example);
            }
        } else {
            self.violations.push(Violation {
                kind,
                count: 1,
                examples: vec![example],
            });
        }
    }
}

/// Sparse vector in basis coordinates.
pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Clone, Debug)]
pub struct LieSuperalgebra {
    family: Family,
    params: Vec<usize>,
    labels: Vec<String>,
    parity: Vec<u8>,
    /// `table[i * dim + j]` holds `[b_i, b_j]`.
    table: Vec<SparseVec>,
    cartan: Vec<usize>,
    /// Each Cartan element written against the coordinate torus.
    cartan_coords: Vec<Vector>,
    weights: Vec<Option<Vector>>,
    coord_labels: Vec<String>,
    weight_form: Option<Vector>,
    form: Option<SparseMatrix>,
    rep: Option<MatrixRep>,
    embedding: Option<Embedding>,
}

/// Plain data for [`LieSuperalgebra::from_parts`].
#[derive(Clone, Debug)]
pub struct AlgebraParts {
    pub family: Family,
    pub params: Vec<usize>,
    pub labels: Vec<String>,
    pub parity: Vec<u8>,
    pub constants: Vec<(usize, usize, usize, Rational)>,
    pub cartan: Vec<usize>,
    pub cartan_coords: Vec<Vector>,
    pub weights: Vec<Option<Vector>>,
    pub coord_labels: Vec<String>,
    pub weight_form: Option<Vector>,
    pub form: Option<SparseMatrix>,
    pub rep: Option<MatrixRep>,
    pub embedding: Option<Embedding>,
}

impl LieSuperalgebra {
    pub fn from_parts(parts: AlgebraParts) -> Result<Self, AlgebraError> {
        let dim = parts.parity.len();
        let check = |got: usize| {
            if got != dim {
                Err(AlgebraError::DimensionMismatch { expected: dim, got })
            } else {
                Ok(())
            }
        };
        check(parts.labels.len())?;
        check(parts.weights.len())?;
        let mut table = vec![Vec::new(); dim * dim];
        for (i, j, k, v) in parts.constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: dim,
                    got: i.max(j).max(k) + 1,
                });
            }
            if v.is_zero() {
                continue;
            }
            let slot: &mut SparseVec = &mut table[i * dim + j];
            match slot.iter_mut().find(|(kk, _)| *kk == k) {
                Some(e) => e.1 += v,
                None => slot.push((k, v)),
            }
            slot.retain(|(_, v)| !v.is_zero());
            slot.sort_by_key(|(k, _)| *k);
        }
        Ok(LieSuperalgebra {
            family: parts.family,
            params: parts.params,
            labels: parts.labels,
            parity: parts.parity,
            table,
            cartan: parts.cartan,
            cartan_coords: parts.cartan_coords,
            weights: parts.weights,
            coord_labels: parts.coord_labels,
            weight_form: parts.weight_form,
            form: parts.form,
            rep: parts.rep,
            embedding: parts.embedding,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &[usize] {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }

    pub fn parities(&self) -> &[u8] {
        &self.parity
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity[i] == 0).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity[i] == 1).collect()
    }

    pub fn dim_even(&self) -> usize {
        self.parity.iter().filter(|&&p| p == 0).count()
    }

    pub fn dim_odd(&self) -> usize {
        self.dim() - self.dim_even()
    }

    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    pub fn cartan_coords(&self) -> &[Vector] {
        &self.cartan_coords
    }

    pub fn weight(&self, i: usize) -> Option<&Vector> {
        self.weights[i].as_ref()
    }

    pub fn weights(&self) -> &[Option<Vector>] {
        &self.weights
    }

    pub fn coord_labels(&self) -> &[String] {
        &self.coord_labels
    }

    pub fn weight_form(&self) -> Option<&Vector> {
        self.weight_form.as_ref()
    }

    pub fn form(&self) -> Option<&SparseMatrix> {
        self.form.as_ref()
    }

    pub fn matrix_rep(&self) -> Option<&MatrixRep> {
        self.rep.as_ref()
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }

    pub fn reference(&self) -> AlgebraRef {
        match &self.embedding {
            Some(e) => AlgebraRef::Detecting(e.which, Box::new(e.parent.reference())),
            None => AlgebraRef::Base(self.family, self.params.clone()),
        }
    }

    /// Conventional name, e.g. `gl(2|3)`, `P(2)`, `Q(2)`, `q(2)`.
    pub fn display_name(&self) -> String {
        let p = &self.params;
        match self.family {
            Family::GL => format!("gl({}|{})", p[0], p[1]),
            Family::SL => format!("sl({}|{})", p[0], p[1]),
            Family::PSL => format!("psl({}|{})", p[0], p[0]),
            Family::OSP => format!("osp({}|{})", p[0], p[1]),
            Family::P => format!("P({})", p[0] - 1),
            Family::Q => format!("Q({})", p[0] - 1),
            Family::QHAT => format!("q({})", p[0]),
            Family::SUB => match &self.embedding {
                Some(e) => format!(
                    "{}({})",
                    match e.which {
                        Detecting::E => "e",
                        Detecting::F => "f",
                    },
                    e.parent.display_name()
                ),
                None => "sub".to_string(),
            },
        }
    }

    pub fn table_entry(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    /// All nonzero structure constants, ordered lexicographically on (i, j, k).
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Rational)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, v) in &self.table[i * n + j] {
                    out.push((i, j, *k, v.clone()));
                }
            }
        }
        out
    }

    /// Returns a copy with one structure constant overwritten.
    pub fn with_structure_constant(mut self, i: usize, j: usize, k: usize, v: Rational) -> Self {
        let n = self.dim();
        let slot = &mut self.table[i * n + j];
        slot.retain(|(kk, _)| *kk != k);
        if !v.is_zero() {
            slot.push((k, v));
            slot.sort_by_key(|(k, _)| *k);
        }
        self
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        linalg::unit_vec(self.dim(), i)
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), AlgebraError> {
        if v.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let n = self.dim();
        let mut out = linalg::zero_vec(n);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = xi * yj;
                for (k, v) in &self.table[i * n + j] {
                    out[*k] += &c * v;
                }
            }
        }
        Ok(out)
    }

    /// `[b_i, w]` for a sparse `w`.
    pub fn bracket_basis_sparse(&self, i: usize, w: &SparseVec) -> SparseVec {
        let n = self.dim();
        let mut acc: std::collections::BTreeMap<usize, Rational> = Default::default();
        for (l, c) in w {
            for (k, v) in &self.table[i * n + l] {
                *acc.entry(*k).or_insert_with(Rational::zero) += c * v;
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Matrix of `ad(x)` restricted to `cols` → `rows` index sets.
    pub fn ad_block(&self, x: &[Rational], rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let n = self.dim();
        let row_pos: std::collections::HashMap<usize, usize> =
            rows.iter().enumerate().map(|(a, &r)| (r, a)).collect();
        let mut m = SparseMatrix::zeros(rows.len(), cols.len());
        for (ci, &j) in cols.iter().enumerate() {
            for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (k, v) in &self.table[i * n + j] {
                    if let Some(&r) = row_pos.get(k) {
                        m.add_to(r, ci, &(xi * v));
                    }
                }
            }
        }
        m
    }

    /// True when `v` is supported on basis vectors of parity `p`.
    pub fn is_homogeneous(&self, v: &[Rational], p: u8) -> bool {
        v.iter()
            .enumerate()
            .all(|(i, x)| x.is_zero() || self.parity[i] == p)
    }

    /// Eigenvalues of the Cartan basis on `b_i`, if it is a weight vector.
    pub fn intrinsic_weight(&self, i: usize) -> Option<Vector> {
        let mut w = Vec::with_capacity(self.cartan.len());
        for &h in &self.cartan {
            let e = self.table_entry(h, i);
            match e.as_slice() {
                [] => w.push(Rational::zero()),
                [(k, v)] if *k == i => w.push(v.clone()),
                _ => return None,
            }
        }
        Some(w)
    }

    /// Evaluates an ε/δ weight on the `c`-th Cartan element.
    pub fn pair_with_cartan(&self, weight: &[Rational], c: usize) -> Rational {
        weight
            .iter()
            .zip(&self.cartan_coords[c])
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Exhaustive check of parity additivity, super antisymmetry, the super
    /// Jacobi identity on all basis triples, and the stated weights.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut rep = ValidationReport::default();
        for i in 0..n {
            for j in 0..n {
                for (k, _) in &self.table[i * n + j] {
                    if self.parity[*k] != (self.parity[i] ^ self.parity[j]) {
                        rep.record(ViolationKind::ParityAdditivity, format!("[{i},{j}] -> {k}"));
                    }
                }
                let sign = self.sign(i, j);
                let lhs = &self.table[i * n + j];
                let rhs: SparseVec = self.table[j * n + i]
                    .iter()
                    .map(|(k, v)| (*k, -(v * &sign)))
                    .collect();
                if lhs != &rhs {
                    rep.record(ViolationKind::SuperAntisymmetry, format!("({i},{j})"));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i * n + j];
                for k in 0..n {
                    rep.triples_checked += 1;
                    // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
                    let mut acc: std::collections::BTreeMap<usize, Rational> = Default::default();
                    for (l, v) in self.bracket_basis_sparse(i, &self.table[j * n + k]) {
                        *acc.entry(l).or_insert_with(Rational::zero) += v;
                    }
                    for (l, c) in ij {
                        for (m, v) in &self.table[l * n + k] {
                            *acc.entry(*m).or_insert_with(Rational::zero) -= c * v;
                        }
                    }
                    let s = self.sign(i, j);
                    for (l, v) in self.bracket_basis_sparse(j, &self.table[i * n + k]) {
                        *acc.entry(l).or_insert_with(Rational::zero) -= &s * v;
                    }
                    if acc.values().any(|v| !v.is_zero()) {
                        rep.record(ViolationKind::SuperJacobi, format!("({i},{j},{k})"));
                    }
                }
            }
        }
        for (c, &h) in self.cartan.iter().enumerate() {
            for i in 0..n {
                let Some(w) = &self.weights[i] else { continue };
                let mu = self.pair_with_cartan(w, c);
                let expect: SparseVec = if mu.is_zero() { vec![] } else { vec![(i, mu)] };
                if self.table_entry(h, i) != &expect {
                    rep.record(ViolationKind::WeightVector, format!("h{h} on b{i}"));
                }
            }
        }
        rep
    }

    /// `(-1)^{|b_i||b_j|}` as a rational.
    pub fn sign(&self, i: usize, j: usize) -> Rational {
        if self.parity[i] & self.parity[j] == 1 {
            -Rational::one()
        } else {
            Rational::one()
        }
    }

    /// Roots grouped by parity and sign; positivity is lexicographic on the
    /// ε/δ coordinates (upper-triangular root vectors for type A).
    pub fn roots(&self) -> RootSystem {
        let mut rs = RootSystem::default();
        let cartan: std::collections::HashSet<usize> = self.cartan.iter().copied().collect();
        for i in 0..self.dim() {
            if cartan.contains(&i) {
                continue;
            }
            let Some(w) = &self.weights[i] else { continue };
            if linalg::is_zero_vec(w) {
                if self.parity[i] == 1 {
                    rs.odd_zero_weight.push(i);
                }
                continue;
            }
            let positive = w
                .iter()
                .find(|x| !x.is_zero())
                .is_some_and(|x| x.is_positive());
            let root = Root {
                coords: w.clone(),
                parity: self.parity[i],
                positive,
                basis_index: i,
            };
            match (self.parity[i], positive) {
                (0, true) => rs.even_positive.push(root),
                (0, false) => rs.even_negative.push(root),
                (_, true) => rs.odd_positive.push(root),
                (_, false) => rs.odd_negative.push(root),
            }
        }
        rs
    }

    /// Basis index of the root vector with the given ε/δ weight.
    pub fn root_vector(&self, coords: &[Rational]) -> Option<usize> {
        let cartan: std::collections::HashSet<usize> = self.cartan.iter().copied().collect();
        (0..self.dim()).find(|i| {
            !cartan.contains(i)
                && self.weights[*i].as_deref() == Some(coords)
                && !linalg::is_zero_vec(coords)
        })
    }
}
