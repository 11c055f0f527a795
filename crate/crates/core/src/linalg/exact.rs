//! Fraction-free elimination over ℤ.
//!
//! Rational rows are cleared of denominators once, then every elimination
//! step is a cross-multiplication `a·r − b·s` followed by division by the
//! row content, so no intermediate fractions ever appear.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, Vector};

/// Sparse integer row, sorted by column, no zero entries.
pub(crate) type IntRow = Vec<(usize, BigInt)>;

pub(crate) fn int_row(row: &[(usize, Rational)]) -> IntRow {
    let mut lcm = BigInt::one();
    for (_, v) in row {
        lcm = lcm.lcm(v.denom());
    }
    let mut out: IntRow = row
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(j, v)| (*j, v.numer() * (&lcm / v.denom())))
        .collect();
    out.sort_by_key(|(j, _)| *j);
    normalize(&mut out);
    out
}

/// Divides out the content and makes the leading entry positive.
fn normalize(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return;
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `ca·a − cb·b`, normalized.
fn combine(a: &IntRow, ca: &BigInt, b: &IntRow, cb: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push((a[i].0, ca * &a[i].1));
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(cb * &b[j].1)));
            j += 1;
        } else {
            let v = ca * &a[i].1 - cb * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    if !out.is_empty() {
        normalize(&mut out);
    }
    out
}

/// Row echelon form built incrementally; each pivot row is keyed by its
/// leading column.
#[derive(Default)]
pub(crate) struct IntEchelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl IntEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots; returns true when it was
    /// independent and has been added.
    pub fn insert(&mut self, mut row: IntRow) -> bool {
        loop {
            let Some((lead, lead_val)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => {
                    let pv = p[0].1.clone();
                    row = combine(&row, &pv, p, &lead_val);
                }
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Gauss–Jordan back substitution: afterwards no pivot row has a nonzero
    /// entry in another pivot column.
    pub fn into_reduced(self) -> BTreeMap<usize, IntRow> {
        let mut done: BTreeMap<usize, IntRow> = BTreeMap::new();
        for (c, mut row) in self.pivots.into_iter().rev() {
            loop {
                let hit = row
                    .iter()
                    .skip(1)
                    .find(|(j, _)| done.contains_key(j))
                    .cloned();
                let Some((j, v)) = hit else { break };
                let r = &done[&j];
                let pj = r[0].1.clone();
                row = combine(&row, &pj, r, &v);
            }
            done.insert(c, row);
        }
        done
    }
}

pub(crate) fn echelon_of_rows(rows: Vec<Vec<(usize, Rational)>>) -> IntEchelon {
    let mut ech = IntEchelon::default();
    let mut int_rows: Vec<IntRow> = rows
        .iter()
        .map(|r| int_row(r))
        .filter(|r| !r.is_empty())
        .collect();
    // short rows first keeps fill-in down
    int_rows.sort_by_key(|r| (r.len(), r[0].0));
    for r in int_rows {
        ech.insert(r);
    }
    ech
}

pub(crate) fn kernel_from_reduced(reduced: &BTreeMap<usize, IntRow>, cols: usize) -> Vec<Vector> {
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !reduced.contains_key(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (&c, row) in reduced {
            if let Some((_, a)) = row.iter().find(|(j, _)| *j == f) {
                v[c] = -Rational::new(a.clone(), row[0].1.clone());
            }
        }
        basis.push(v);
    }
    basis
}
