//! Closed-form reference data for the matrix families: generator degrees of
//! the invariant ring, dimensions of the even and odd parts, dimension of the
//! generic stabilizer, and polar/stable flags with the reflection group.
//!
//! OSP parameters are `(M, N)` with the superspace `ℂ^{M|N}`, so
//! `osp(2m+1|2n)` is `(2m+1, 2n)`. P and Q take the matrix size `n`
//! (`P(n−1)`, `Q(n−1)`); QHAT takes `n` for `q(n)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Family;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("no table row for {0}{1:?}")]
    UnknownFamily(Family, Vec<usize>),
    #[error("{0} is not polar")]
    NotPolar(Family),
}

/// The finite reflection group `W` acting on the Cartan subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReflectionGroupKind {
    /// `Σ_r ⋉ ℤ₂^r`
    Hyperoctahedral,
    /// `Σ_r ⋉ ℤ₄^r`
    Signed4,
    /// `Σ_r ⋉ (ℤ₄^r)_e`, an even number of entries `±√−1`
    Signed4Even,
    /// `Σ_n` permuting diagonal entries
    Symmetric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionGroupSpec {
    pub kind: ReflectionGroupKind,
    /// Number of coordinates on the Cartan subspace.
    pub rank: usize,
    /// Matrix size for the symmetric case (`rank + 1` when trace is zero).
    pub points: usize,
}

impl ReflectionGroupSpec {
    /// Degrees of the basic invariants.
    pub fn degrees(&self) -> Vec<usize> {
        let r = self.rank;
        match self.kind {
            ReflectionGroupKind::Hyperoctahedral => (1..=r).map(|i| 2 * i).collect(),
            ReflectionGroupKind::Signed4 => (1..=r).map(|i| 4 * i).collect(),
            ReflectionGroupKind::Signed4Even => {
                let mut d: Vec<usize> = (1..r).map(|i| 4 * i).collect();
                if r > 0 {
                    d.push(2 * r);
                }
                d
            }
            ReflectionGroupKind::Symmetric => {
                if self.points == r {
                    (1..=r).collect()
                } else {
                    (2..=self.points).collect()
                }
            }
        }
    }
}

fn unknown(f: Family, p: &[usize]) -> TableError {
    TableError::UnknownFamily(f, p.to_vec())
}

/// `(m, n)` for OSP written as `osp(2m+ε|2n)`, with ε = M mod 2.
fn osp_split(p: &[usize]) -> Option<(usize, usize, bool)> {
    match p {
        [big_m, big_n] if *big_m >= 1 && big_n % 2 == 0 && *big_n > 0 => {
            Some((big_m / 2, big_n / 2, big_m % 2 == 1))
        }
        _ => None,
    }
}

fn pair(p: &[usize]) -> Option<(usize, usize)> {
    match p {
        [m, n] => Some((*m, *n)),
        [n] => Some((*n, *n)),
        _ => None,
    }
}

fn single(p: &[usize]) -> Option<usize> {
    match p {
        [n] => Some(*n),
        [n, k] if n == k => Some(*n),
        _ => None,
    }
}

/// Degrees of the generators of `S(g₁*)^{G₀}`.
pub fn generator_degrees(family: Family, params: &[usize]) -> Result<Vec<usize>, TableError> {
    let err = || unknown(family, params);
    Ok(match family {
        Family::GL | Family::SL => {
            let (m, n) = pair(params).ok_or_else(err)?;
            (1..=m.min(n)).map(|i| 2 * i).collect()
        }
        Family::PSL => {
            let n = single(params).ok_or_else(err)?;
            let mut d: Vec<usize> = (1..n).map(|i| 2 * i).collect();
            d.extend([n, n]);
            d
        }
        Family::OSP => {
            let (m, n, odd) = osp_split(params).ok_or_else(err)?;
            let r = m.min(n);
            if odd || m > n {
                (1..=r).map(|i| 4 * i).collect()
            } else {
                let mut d: Vec<usize> = (1..m).map(|i| 4 * i).collect();
                if m > 0 {
                    d.push(2 * m);
                }
                d
            }
        }
        Family::P => {
            let n = single(params).ok_or_else(err)?;
            let l = n / 2;
            if n % 2 == 1 {
                let mut d: Vec<usize> = (1..=l).map(|i| 4 * i).collect();
                d.push(n);
                d
            } else {
                let mut d: Vec<usize> = (1..l).map(|i| 4 * i).collect();
                d.extend([l, n]);
                d
            }
        }
        Family::QHAT => (1..=single(params).ok_or_else(err)?).collect(),
        Family::Q => (2..=single(params).ok_or_else(err)?).collect(),
        Family::SUB => return Err(err()),
    })
}

/// `(dim g₀, dim g₁)`.
pub fn dimensions(family: Family, params: &[usize]) -> Result<(usize, usize), TableError> {
    let err = || unknown(family, params);
    Ok(match family {
        Family::GL => {
            let (m, n) = pair(params).ok_or_else(err)?;
            (m * m + n * n, 2 * m * n)
        }
        Family::SL => {
            let (m, n) = pair(params).ok_or_else(err)?;
            (m * m + n * n - 1, 2 * m * n)
        }
        Family::PSL => {
            let n = single(params).ok_or_else(err)?;
            (2 * n * n - 2, 2 * n * n)
        }
        Family::OSP => {
            let (m, n, odd) = osp_split(params).ok_or_else(err)?;
            if odd {
                (2 * m * m + m + 2 * n * n + n, (2 * m + 1) * 2 * n)
            } else {
                (2 * m * m - m + 2 * n * n + n, 4 * m * n)
            }
        }
        Family::P => {
            let n = single(params).ok_or_else(err)?;
            (n * n - 1, n * n)
        }
        Family::QHAT => {
            let n = single(params).ok_or_else(err)?;
            (n * n, n * n)
        }
        Family::Q => {
            let n = single(params).ok_or_else(err)?;
            (n * n - 1, n * n - 1)
        }
        Family::SUB => return Err(err()),
    })
}

/// Dimension of the stabilizer `H` of the generic element.
pub fn centralizer_dim(family: Family, params: &[usize]) -> Result<usize, TableError> {
    let err = || unknown(family, params);
    let v: i64 = match family {
        Family::GL | Family::SL => {
            let (m, n) = pair(params).ok_or_else(err)?;
            let r = m.min(n) as i64;
            let d = n as i64 - m as i64;
            r + d * d - i64::from(family == Family::SL)
        }
        Family::PSL => single(params).ok_or_else(err)? as i64 - 1,
        Family::OSP => {
            let (m, n, odd) = osp_split(params).ok_or_else(err)?;
            let (m, n) = (m as i64, n as i64);
            let r = m.min(n);
            if odd && m >= n {
                r + 2 * (m - n).pow(2) + m - n
            } else {
                // the three remaining rows share one printed formula
                r + 2 * (n - m).pow(2) + (n - m)
            }
        }
        Family::P => (single(params).ok_or_else(err)? / 2) as i64,
        Family::QHAT => single(params).ok_or_else(err)? as i64,
        Family::Q => single(params).ok_or_else(err)? as i64 - 1,
        Family::SUB => return Err(err()),
    };
    Ok(v as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarStable {
    pub polar: bool,
    pub stable: bool,
    pub group: Option<ReflectionGroupSpec>,
}

pub fn polar_stable(family: Family, params: &[usize]) -> Result<PolarStable, TableError> {
    let err = || unknown(family, params);
    let spec = |kind, rank, points| Some(ReflectionGroupSpec { kind, rank, points });
    Ok(match family {
        Family::GL | Family::SL => {
            let (m, n) = pair(params).ok_or_else(err)?;
            let r = m.min(n);
            PolarStable {
                polar: true,
                stable: true,
                group: spec(ReflectionGroupKind::Hyperoctahedral, r, r),
            }
        }
        Family::PSL | Family::P => {
            single(params).ok_or_else(err)?;
            PolarStable {
                polar: false,
                stable: true,
                group: None,
            }
        }
        Family::OSP => {
            let (m, n, odd) = osp_split(params).ok_or_else(err)?;
            let r = m.min(n);
            let (stable, kind) = if odd {
                (m >= n, ReflectionGroupKind::Signed4)
            } else if m > n {
                (true, ReflectionGroupKind::Signed4)
            } else {
                (true, ReflectionGroupKind::Signed4Even)
            };
            PolarStable {
                polar: true,
                stable,
                group: spec(kind, r, r),
            }
        }
        Family::QHAT => {
            let n = single(params).ok_or_else(err)?;
            PolarStable {
                polar: true,
                stable: true,
                group: spec(ReflectionGroupKind::Symmetric, n, n),
            }
        }
        Family::Q => {
            let n = single(params).ok_or_else(err)?;
            PolarStable {
                polar: true,
                stable: true,
                group: spec(ReflectionGroupKind::Symmetric, n - 1, n),
            }
        }
        Family::SUB => return Err(err()),
    })
}

pub fn reflection_group(
    family: Family,
    params: &[usize],
) -> Result<ReflectionGroupSpec, TableError> {
    polar_stable(family, params)?
        .group
        .ok_or(TableError::NotPolar(family))
}

/// Coefficients of `∏ 1/(1 − t^{d_i})` through degree `max_degree`.
pub fn series_from_degrees(degrees: &[usize], max_degree: usize) -> Vec<usize> {
    let mut c = vec![0usize; max_degree + 1];
    c[0] = 1;
    for &d in degrees {
        assert!(d > 0, "generator degree must be positive");
        for k in d..=max_degree {
            c[k] += c[k - d];
        }
    }
    c
}

/// Every in-scope row of size at most `max_size` (`m + n` for type A and OSP,
/// `n` for P, Q, QHAT).
pub fn in_scope_rows(max_size: usize) -> Vec<(Family, Vec<usize>)> {
    let mut rows = Vec::new();
    for m in 1..max_size {
        for n in 1..=max_size - m {
            rows.push((Family::GL, vec![m, n]));
        }
    }
    for m in 1..max_size {
        for n in 1..=max_size - m {
            if m != n {
                rows.push((Family::SL, vec![m, n]));
            }
        }
    }
    for n in 2..=max_size / 2 {
        rows.push((Family::PSL, vec![n, n]));
    }
    for m in 1..max_size {
        for k in 1..=(max_size - m) / 2 {
            rows.push((Family::OSP, vec![m, 2 * k]));
        }
    }
    for n in 3..=max_size.min(3) {
        rows.push((Family::P, vec![n]));
        rows.push((Family::Q, vec![n]));
    }
    for n in 1..=max_size.min(3) {
        rows.push((Family::QHAT, vec![n]));
    }
    rows
}
