//! Elimination over a prime field, used for fast dimension counts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{LinalgError, Rational};

/// Default modulus for dimension counting.
pub const DEFAULT_PRIME: u64 = 2_147_483_629;
/// Confirming modulus used when a second opinion is requested.
pub const SECOND_PRIME: u64 = 2_147_483_587;

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powm = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// ℤ/p for a word-sized prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeField {
    prime: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField {
            prime: DEFAULT_PRIME,
        }
    }
}

impl PrimeField {
    pub fn new(prime: u64) -> Result<Self, LinalgError> {
        if prime >= (1u64 << 63) || !is_prime(prime) {
            return Err(LinalgError::NotPrime(prime));
        }
        Ok(PrimeField { prime })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.prime {
            s - self.prime
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.prime - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.prime as u128) as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.prime - a
        }
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.prime - 2)
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.prime);
        n.mod_floor(&p).to_u64().expect("residue fits in u64")
    }

    /// Image of a rational; `None` when p divides the denominator.
    pub fn reduce(&self, q: &Rational) -> Option<u64> {
        let d = self.reduce_int(q.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(self.reduce_int(q.numer()), self.inv(d)))
    }

    /// Lifts a residue to its symmetric representative as an integer.
    pub fn lift(&self, a: u64) -> i64 {
        if a > self.prime / 2 {
            -((self.prime - a) as i64)
        } else {
            a as i64
        }
    }
}

pub(crate) type ModRow = Vec<(usize, u64)>;

/// `a − c·b` over the field.
fn axpy(f: &PrimeField, a: &ModRow, c: u64, b: &ModRow) -> ModRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.neg(f.mul(c, b[j].1))));
            j += 1;
        } else {
            let v = f.sub(a[i].1, f.mul(c, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental echelon form with monic pivot rows.
pub(crate) struct ModEchelon {
    field: PrimeField,
    pivots: BTreeMap<usize, ModRow>,
}

impl ModEchelon {
    pub fn new(field: PrimeField) -> Self {
        ModEchelon {
            field,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn insert(&mut self, mut row: ModRow) -> bool {
        row.retain(|(_, v)| *v != 0);
        loop {
            let Some(&(lead, lv)) = row.first() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&self.field, &row, lv, p),
                None => {
                    let inv = self.field.inv(lv);
                    for e in row.iter_mut() {
                        e.1 = self.field.mul(e.1, inv);
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn into_reduced(self) -> BTreeMap<usize, ModRow> {
        let f = self.field;
        let mut done: BTreeMap<usize, ModRow> = BTreeMap::new();
        for (c, mut row) in self.pivots.into_iter().rev() {
            loop {
                let hit = row
                    .iter()
                    .skip(1)
                    .find(|(j, _)| done.contains_key(j))
                    .copied();
                let Some((j, v)) = hit else { break };
                row = axpy(&f, &row, v, &done[&j]);
            }
            done.insert(c, row);
        }
        done
    }
}

pub(crate) fn mod_rows(field: &PrimeField, rows: &[Vec<(usize, Rational)>]) -> Option<Vec<ModRow>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|(j, v)| field.reduce(v).map(|x| (*j, x)))
                .collect::<Option<ModRow>>()
        })
        .collect()
}

pub(crate) fn kernel_from_reduced(
    field: &PrimeField,
    reduced: &BTreeMap<usize, ModRow>,
    cols: usize,
) -> Vec<Vec<u64>> {
    let mut basis = Vec::new();
    for fcol in (0..cols).filter(|c| !reduced.contains_key(c)) {
        let mut v = vec![0u64; cols];
        v[fcol] = 1;
        for (&c, row) in reduced {
            if let Some(&(_, a)) = row.iter().find(|(j, _)| *j == fcol) {
                v[c] = field.neg(a);
            }
        }
        basis.push(v);
    }
    basis
}

/// Rank of a set of dense vectors over the field.
pub fn rank_of_vectors(field: &PrimeField, vectors: &[Vec<u64>]) -> usize {
    let mut e = ModEchelon::new(*field);
    for v in vectors {
        let row: ModRow = v
            .iter()
            .enumerate()
            .filter(|(_, x)| **x != 0)
            .map(|(j, x)| (j, *x))
            .collect();
        e.insert(row);
    }
    e.rank()
}

/// Rank of sparse rows over the field.
pub fn rank_of_sparse(field: &PrimeField, rows: Vec<Vec<(usize, u64)>>) -> usize {
    let mut e = ModEchelon::new(*field);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}
