//! Exact linear algebra over ℚ with a prime-field fast path.
//!
//! Everything downstream (structure constants, invariant spaces, cochain
//! complexes) reduces to ranks and kernels of sparse rational matrices.

mod exact;
pub mod modular;
mod sparse;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use modular::{is_prime, PrimeField, DEFAULT_PRIME, SECOND_PRIME};
pub use sparse::SparseMatrix;

/// Ground field scalar. `BigRational` keeps numerator and denominator
/// coprime with a positive denominator.
pub type Rational = BigRational;
pub type Vector = Vec<Rational>;

/// Above this many columns dimension counts switch to modular elimination.
pub const MODULAR_THRESHOLD: usize = 2000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a usable prime")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    Exact,
    Modular(PrimeField),
}

impl RankMode {
    /// Exact below [`MODULAR_THRESHOLD`] columns, modular above.
    pub fn auto(cols: usize, field: PrimeField) -> Self {
        if cols > MODULAR_THRESHOLD {
            RankMode::Modular(field)
        } else {
            RankMode::Exact
        }
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn zero_vec(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Rank over ℚ (fraction-free) or over a prime field.
///
/// Modular rank never exceeds the rational rank. If the prime divides a
/// denominator the exact path is used instead.
pub fn rank(m: &SparseMatrix, mode: RankMode) -> usize {
    rank_of_rows(m.sparse_rows(), mode)
}

pub fn rank_of_rows(rows: Vec<Vec<(usize, Rational)>>, mode: RankMode) -> usize {
    match mode {
        RankMode::Exact => exact::echelon_of_rows(rows).rank(),
        RankMode::Modular(f) => match modular::mod_rows(&f, &rows) {
            Some(mrows) => modular::rank_of_sparse(&f, mrows),
            None => exact::echelon_of_rows(rows).rank(),
        },
    }
}

/// Rank of a list of dense vectors (as rows).
pub fn rank_of_vectors(vectors: &[Vector], mode: RankMode) -> usize {
    let rows = vectors
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
        .collect();
    rank_of_rows(rows, mode)
}

/// Basis of the right null space, one vector per free column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vector> {
    kernel_of_rows(m.sparse_rows(), m.cols())
}

pub fn kernel_of_rows(rows: Vec<Vec<(usize, Rational)>>, cols: usize) -> Vec<Vector> {
    let reduced = exact::echelon_of_rows(rows).into_reduced();
    exact::kernel_from_reduced(&reduced, cols)
}

/// Null space over the prime field; `None` if the prime divides a denominator.
pub fn kernel_modular(m: &SparseMatrix, field: &PrimeField) -> Option<Vec<Vec<u64>>> {
    kernel_modular_rows(&m.sparse_rows(), m.cols(), field)
}

pub fn kernel_modular_rows(
    rows: &[Vec<(usize, Rational)>],
    cols: usize,
    field: &PrimeField,
) -> Option<Vec<Vec<u64>>> {
    let mrows = modular::mod_rows(field, rows)?;
    let mut e = modular::ModEchelon::new(*field);
    for r in mrows {
        e.insert(r);
    }
    Some(modular::kernel_from_reduced(field, &e.into_reduced(), cols))
}

/// A particular solution of `m·x = b`, or `None` when inconsistent.
pub fn solve(m: &SparseMatrix, b: &[Rational]) -> Result<Option<Vector>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows(),
            got: b.len(),
        });
    }
    let n = m.cols();
    let mut rows = m.sparse_rows();
    for (row, bi) in rows.iter_mut().zip(b) {
        if !bi.is_zero() {
            row.push((n, bi.clone()));
        }
    }
    let reduced = exact::echelon_of_rows(rows).into_reduced();
    if reduced.contains_key(&n) {
        return Ok(None);
    }
    let mut x = zero_vec(n);
    for (&c, row) in &reduced {
        if let Some((_, a)) = row.iter().find(|(j, _)| *j == n) {
            x[c] = Rational::new(a.clone(), row[0].1.clone());
        }
    }
    Ok(Some(x))
}

/// Coordinates of `target` in the span of `basis` (vectors of equal length),
/// or `None` when it is not in the span.
pub fn coordinates_in(basis: &[Vector], target: &[Rational]) -> Option<Vector> {
    let len = target.len();
    let m = SparseMatrix::from_columns(len, basis);
    solve(&m, target).expect("lengths agree")
}

/// Basis of `{ y : y·v = 0 for all v in vectors }`, the annihilator of a span.
pub fn annihilator(vectors: &[Vector], len: usize) -> Vec<Vector> {
    let rows = vectors
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
        .collect();
    kernel_of_rows(rows, len)
}

/// Extracts a maximal independent subset (keeps order).
pub fn independent_subset(vectors: &[Vector]) -> Vec<usize> {
    let mut ech = exact::IntEchelon::default();
    let mut keep = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let row: Vec<(usize, Rational)> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        if ech.insert(exact::int_row(&row)) {
            keep.push(i);
        }
    }
    keep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> RankMode {
        RankMode::Modular(PrimeField::default())
    }

    #[test]
    fn rank_examples() {
        let id = SparseMatrix::identity(2);
        assert_eq!(rank(&id, RankMode::Exact), 2);
        assert_eq!(rank(&id, field()), 2);
        let z = SparseMatrix::zeros(3, 4);
        assert_eq!(rank(&z, RankMode::Exact), 0);
        let prop = SparseMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&prop, RankMode::Exact), 1);
        assert_eq!(rank(&prop, field()), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::zeros(2, 3)).len(), 3);
        let k = kernel_basis(&SparseMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0] + &k[0][1], rat(0));
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn solve_examples() {
        let x = solve(&SparseMatrix::identity(2), &[rat(1), rat(2)])
            .unwrap()
            .unwrap();
        assert_eq!(x, vec![rat(1), rat(2)]);
        let x = solve(&SparseMatrix::from_i64(&[&[1, 1]]), &[rat(3)])
            .unwrap()
            .unwrap();
        assert_eq!(&x[0] + &x[1], rat(3));
        let none = solve(&SparseMatrix::from_i64(&[&[1], &[1]]), &[rat(0), rat(1)]).unwrap();
        assert!(none.is_none());
        assert!(solve(&SparseMatrix::identity(2), &[rat(1)]).is_err());
    }

    #[test]
    fn fractional_entries() {
        let m = SparseMatrix::from_dense(&[vec![frac(1, 2), frac(1, 3)], vec![rat(3), rat(2)]]);
        assert_eq!(rank(&m, RankMode::Exact), 1);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&m.mul_vec(&k[0])));
    }

    #[test]
    fn modular_kernel_matches_exact_dimension() {
        let m = SparseMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let km = kernel_modular(&m, &PrimeField::default()).unwrap();
        assert_eq!(km.len(), kernel_basis(&m).len());
    }
}
