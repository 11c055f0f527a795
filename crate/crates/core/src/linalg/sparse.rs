//! Sparse rational matrices.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Rational, Vector};

/// A rows × cols matrix over ℚ storing only nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| Rational::from_integer(v.into()))
                    .collect()
            })
            .collect();
        Self::from_dense(&dense)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Sets an entry; storing zero removes it.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, j, v) in self.iter() {
            t.entries.insert((j, i), v.clone());
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        if c.is_zero() {
            return out;
        }
        for (i, j, v) in self.iter() {
            out.entries.insert((i, j), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (i, j, v) in other.iter() {
            out.add_to(i, j, v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for (i, j, v) in other.iter() {
            by_row.entry(i).or_default().push((j, v));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, k, a) in self.iter() {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    out.add_to(i, j, &(a * b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let mut out = vec![Rational::zero(); self.rows];
        for (i, j, a) in self.iter() {
            if !v[j].is_zero() {
                out[i] += a * &v[j];
            }
        }
        out
    }

    /// Rows of the matrix as sparse (column, value) lists.
    pub fn sparse_rows(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (i, j, v) in self.iter() {
            rows[i].push((j, v.clone()));
        }
        rows
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (i, j, v) in self.iter() {
            d[i][j] = v.clone();
        }
        d
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[SparseMatrix]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            for (i, j, v) in b.iter() {
                out.entries.insert((i + off, j), v.clone());
            }
            off += b.rows;
        }
        out
    }

    /// Submatrix on the given row and column index lists (in that order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let rmap: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(a, &r)| (r, a)).collect();
        let cmap: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(a, &c)| (c, a)).collect();
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, j, v) in self.iter() {
            if let (Some(&a), Some(&b)) = (rmap.get(&i), cmap.get(&j)) {
                out.entries.insert((a, b), v.clone());
            }
        }
        out
    }

    /// Super trace with the first `even` coordinates even.
    pub fn supertrace(&self, even: usize) -> Rational {
        let mut s = Rational::zero();
        for (i, j, v) in self.iter() {
            if i == j {
                if i < even {
                    s += v;
                } else {
                    s -= v;
                }
            }
        }
        s
    }
}
