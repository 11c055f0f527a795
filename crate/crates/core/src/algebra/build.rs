//! Matrix families as subalgebras (or subquotients) of `gl(p|q)`.
//!
//! Each family is cut out of the matrix units of `gl(p|q)` by linear
//! constraints. The units are grouped by parity and by weight under a
//! diagonal coordinate torus; constraints are solved group by group so every
//! basis vector is automatically a weight vector.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{AlgebraError, AlgebraParts, Family, LieSuperalgebra, MatrixRep};
use crate::linalg::{self, rat, Rational, SparseMatrix, Vector};

type Functional = Vec<(usize, Rational)>;

struct Ambient {
    even: usize,
    odd: usize,
    /// Diagonal entries of each torus coordinate.
    torus: Vec<Vec<Rational>>,
    coord_labels: Vec<String>,
    even_constraints: Vec<Functional>,
    odd_constraints: Vec<Functional>,
    /// Divide out the identity matrix.
    quotient_by_identity: bool,
    weight_form: Option<Vector>,
    with_form: bool,
}

impl Ambient {
    fn size(&self) -> usize {
        self.even + self.odd
    }

    fn unit(&self, i: usize, j: usize) -> usize {
        i * self.size() + j
    }

    fn unit_parity(&self, u: usize) -> u8 {
        let n = self.size();
        let (i, j) = (u / n, u % n);
        ((i < self.even) != (j < self.even)) as u8
    }

    fn unit_weight(&self, u: usize) -> Vector {
        let n = self.size();
        let (i, j) = (u / n, u % n);
        self.torus.iter().map(|d| &d[i] - &d[j]).collect()
    }
}

fn invalid(family: Family, reason: &str) -> AlgebraError {
    AlgebraError::InvalidParams {
        family,
        reason: reason.to_string(),
    }
}

fn eps_labels(n: usize, prefix: &str) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

fn diag_torus(size: usize, entries: &[(usize, i64)]) -> Vec<Rational> {
    let mut d = vec![Rational::zero(); size];
    for &(k, v) in entries {
        d[k] = rat(v);
    }
    d
}

fn supertrace_functional(amb: &Ambient) -> Functional {
    (0..amb.size())
        .map(|k| (amb.unit(k, k), if k < amb.even { rat(1) } else { rat(-1) }))
        .collect()
}

fn ambient(family: Family, params: &[usize]) -> Result<(Vec<usize>, Ambient), AlgebraError> {
    let two = |ps: &[usize]| -> Result<(usize, usize), AlgebraError> {
        match ps {
            [m, n] => Ok((*m, *n)),
            _ => Err(invalid(family, "expected two parameters")),
        }
    };
    let one = |ps: &[usize]| -> Result<usize, AlgebraError> {
        match ps {
            [n] => Ok(*n),
            [n, k] if n == k => Ok(*n),
            _ => Err(invalid(family, "expected one parameter")),
        }
    };
    match family {
        Family::GL | Family::SL | Family::PSL => {
            let (m, n) = if family == Family::PSL {
                let n = one(params)?;
                (n, n)
            } else {
                two(params)?
            };
            if m == 0 || n == 0 {
                return Err(invalid(family, "m and n must be positive"));
            }
            if family == Family::SL && m == n {
                return Err(invalid(family, "sl(n|n) is not simple; use PSL"));
            }
            if family == Family::PSL && n < 2 {
                return Err(invalid(family, "psl(n|n) needs n >= 2"));
            }
            let size = m + n;
            let mut amb = Ambient {
                even: m,
                odd: n,
                torus: (0..size).map(|k| diag_torus(size, &[(k, 1)])).collect(),
                coord_labels: eps_labels(size, "e"),
                even_constraints: vec![],
                odd_constraints: vec![],
                quotient_by_identity: family == Family::PSL,
                weight_form: Some(
                    (0..size)
                        .map(|k| if k < m { rat(1) } else { rat(-1) })
                        .collect(),
                ),
                with_form: family != Family::PSL,
            };
            if family != Family::GL {
                amb.even_constraints.push(supertrace_functional(&amb));
            }
            Ok((vec![m, n], amb))
        }
        Family::OSP => {
            let (m, n) = two(params)?;
            if m == 0 || n == 0 || n % 2 == 1 {
                return Err(invalid(family, "need m >= 1 and n even and positive"));
            }
            let size = m + n;
            let half = n / 2;
            let mut gram = SparseMatrix::zeros(size, size);
            for i in 0..m {
                gram.set(i, m - 1 - i, rat(1));
            }
            for a in 0..n {
                let v = if a < half { 1 } else { -1 };
                gram.set(m + a, m + n - 1 - a, rat(v));
            }
            let mut torus = Vec::new();
            for k in 0..m / 2 {
                torus.push(diag_torus(size, &[(k, 1), (m - 1 - k, -1)]));
            }
            for a in 0..half {
                torus.push(diag_torus(size, &[(m + a, 1), (m + n - 1 - a, -1)]));
            }
            let mut labels = eps_labels(m / 2, "e");
            labels.extend(eps_labels(half, "d"));
            let wf: Vector = (0..m / 2)
                .map(|_| rat(1))
                .chain((0..half).map(|_| rat(-1)))
                .collect();
            let mut amb = Ambient {
                even: m,
                odd: n,
                torus,
                coord_labels: labels,
                even_constraints: vec![],
                odd_constraints: vec![],
                quotient_by_identity: false,
                weight_form: Some(wf),
                with_form: true,
            };
            // β(x e_a, e_b) + (−1)^{|x||a|} β(e_a, x e_b) = 0
            for px in 0..2u8 {
                let mut out = Vec::new();
                for a in 0..size {
                    for b in 0..size {
                        let sign = if px == 1 && a >= m { rat(-1) } else { rat(1) };
                        let mut f: BTreeMap<usize, Rational> = BTreeMap::new();
                        for c in 0..size {
                            let jcb = gram.get(c, b);
                            if !jcb.is_zero() {
                                *f.entry(amb.unit(c, a)).or_insert_with(Rational::zero) += jcb;
                            }
                            let jac = gram.get(a, c);
                            if !jac.is_zero() {
                                *f.entry(amb.unit(c, b)).or_insert_with(Rational::zero) +=
                                    &sign * jac;
                            }
                        }
                        let f: Functional = f
                            .into_iter()
                            .filter(|(u, v)| !v.is_zero() && amb.unit_parity(*u) == px)
                            .collect();
                        if !f.is_empty() {
                            out.push(f);
                        }
                    }
                }
                if px == 0 {
                    amb.even_constraints = out;
                } else {
                    amb.odd_constraints = out;
                }
            }
            Ok((vec![m, n], amb))
        }
        Family::P => {
            let n = one(params)?;
            if n < 3 {
                return Err(invalid(family, "P needs n >= 3"));
            }
            let size = 2 * n;
            let mut amb = Ambient {
                even: n,
                odd: n,
                torus: (0..n)
                    .map(|k| diag_torus(size, &[(k, 1), (n + k, -1)]))
                    .collect(),
                coord_labels: eps_labels(n, "e"),
                even_constraints: vec![],
                odd_constraints: vec![],
                quotient_by_identity: false,
                weight_form: None,
                with_form: false,
            };
            let mut ev = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    ev.push(vec![
                        (amb.unit(j, i), rat(1)),
                        (amb.unit(n + i, n + j), rat(1)),
                    ]);
                }
            }
            ev.push((0..n).map(|k| (amb.unit(k, k), rat(1))).collect());
            let mut od = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i < j {
                        od.push(vec![
                            (amb.unit(i, n + j), rat(1)),
                            (amb.unit(j, n + i), rat(-1)),
                        ]);
                    }
                    if i <= j {
                        let mut f = vec![(amb.unit(n + i, j), rat(1))];
                        if i != j {
                            f.push((amb.unit(n + j, i), rat(1)));
                        }
                        od.push(f);
                    }
                }
            }
            amb.even_constraints = ev;
            amb.odd_constraints = od;
            Ok((vec![n], amb))
        }
        Family::Q | Family::QHAT => {
            let n = one(params)?;
            if family == Family::Q && n < 3 {
                return Err(invalid(family, "Q needs n >= 3"));
            }
            if n == 0 {
                return Err(invalid(family, "n must be positive"));
            }
            let size = 2 * n;
            let mut amb = Ambient {
                even: n,
                odd: n,
                torus: (0..n)
                    .map(|k| diag_torus(size, &[(k, 1), (n + k, 1)]))
                    .collect(),
                coord_labels: eps_labels(n, "e"),
                even_constraints: vec![],
                odd_constraints: vec![],
                quotient_by_identity: family == Family::Q,
                weight_form: None,
                with_form: false,
            };
            let mut ev = Vec::new();
            let mut od = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    ev.push(vec![
                        (amb.unit(i, j), rat(1)),
                        (amb.unit(n + i, n + j), rat(-1)),
                    ]);
                    od.push(vec![
                        (amb.unit(i, n + j), rat(1)),
                        (amb.unit(n + i, j), rat(-1)),
                    ]);
                }
            }
            if family == Family::Q {
                od.push((0..n).map(|k| (amb.unit(k, n + k), rat(1))).collect());
            }
            amb.even_constraints = ev;
            amb.odd_constraints = od;
            Ok((vec![n], amb))
        }
        Family::SUB => Err(invalid(
            family,
            "SUB algebras come from detecting subalgebras",
        )),
    }
}

struct Group {
    parity: u8,
    weight: Vector,
    units: Vec<usize>,
    /// Basis vectors (in group-unit coordinates) and their global indices.
    members: Vec<(usize, Vector)>,
    /// The identity, when this group carries the divided-out ideal.
    ideal: Option<Vector>,
}

fn label_of(amb: &Ambient, units: &[usize], v: &[Rational]) -> String {
    let n = amb.size();
    let mut s = String::new();
    for (u, c) in units.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let (i, j) = (u / n + 1, u % n + 1);
        let neg = c < &Rational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push(if neg { '-' } else { '+' });
        }
        if !mag.is_one() {
            s.push_str(&format!("{mag}*"));
        }
        s.push_str(&format!("E{i},{j}"));
    }
    s
}

/// Builds one of the matrix families.
pub fn build(family: Family, params: &[usize]) -> Result<LieSuperalgebra, AlgebraError> {
    let (params, amb) = ambient(family, params)?;
    let size = amb.size();

    let mut grouped: BTreeMap<(u8, Vector), Vec<usize>> = BTreeMap::new();
    for u in 0..size * size {
        grouped
            .entry((amb.unit_parity(u), amb.unit_weight(u)))
            .or_default()
            .push(u);
    }

    // (sort key, group id, vector in group coordinates, label)
    let mut raw: Vec<((u8, Vec<usize>), usize, Vector, String)> = Vec::new();
    let mut groups: Vec<Group> = Vec::new();
    for ((parity, weight), units) in grouped {
        let pos: BTreeMap<usize, usize> = units.iter().enumerate().map(|(a, &u)| (u, a)).collect();
        let constraints = if parity == 0 {
            &amb.even_constraints
        } else {
            &amb.odd_constraints
        };
        let rows: Vec<Vec<(usize, Rational)>> = constraints
            .iter()
            .map(|f| {
                let mut r: Vec<(usize, Rational)> = f
                    .iter()
                    .filter_map(|(u, c)| pos.get(u).map(|&a| (a, c.clone())))
                    .collect();
                r.sort_by_key(|(a, _)| *a);
                r
            })
            .filter(|r| !r.is_empty())
            .collect();
        let mut kernel = linalg::kernel_of_rows(rows, units.len());
        let mut ideal = None;
        if amb.quotient_by_identity && parity == 0 && linalg::is_zero_vec(&weight) {
            let id: Vector = units
                .iter()
                .map(|u| {
                    if u / size == u % size {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            let mut kept: Vec<Vector> = vec![id.clone()];
            let mut rest = Vec::new();
            for v in kernel {
                kept.push(v.clone());
                if linalg::independent_subset(&kept).len() == kept.len() {
                    rest.push(v);
                } else {
                    kept.pop();
                }
            }
            kernel = rest;
            ideal = Some(id);
        }
        let gid = groups.len();
        for v in kernel {
            let support: Vec<usize> = units
                .iter()
                .zip(&v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(u, _)| *u)
                .collect();
            let label = label_of(&amb, &units, &v);
            raw.push(((parity, support), gid, v, label));
        }
        groups.push(Group {
            parity,
            weight,
            units,
            members: vec![],
            ideal,
        });
    }
    raw.sort_by(|a, b| a.0.cmp(&b.0));

    let dim = raw.len();
    let mut labels = Vec::with_capacity(dim);
    let mut parity = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    let mut matrices = Vec::with_capacity(dim);
    let mut group_of = Vec::with_capacity(dim);
    for (idx, ((p, _), gid, v, lab)) in raw.into_iter().enumerate() {
        let g = &mut groups[gid];
        let mut mat = SparseMatrix::zeros(size, size);
        for (u, c) in g.units.iter().zip(&v) {
            if !c.is_zero() {
                mat.set(u / size, u % size, c.clone());
            }
        }
        labels.push(lab);
        parity.push(p);
        weights.push(Some(g.weight.clone()));
        matrices.push(mat);
        group_of.push(gid);
        g.members.push((idx, v));
    }

    let mut lookup: BTreeMap<(u8, Vector), usize> = BTreeMap::new();
    for (gid, g) in groups.iter().enumerate() {
        lookup.insert((g.parity, g.weight.clone()), gid);
    }

    let mut constants = Vec::new();
    for a in 0..dim {
        for b in 0..dim {
            let prod = matrices[a].mul(&matrices[b]);
            let rev = matrices[b].mul(&matrices[a]);
            let comm = if parity[a] & parity[b] == 1 {
                prod.add(&rev)
            } else {
                prod.sub(&rev)
            };
            if comm.is_zero() {
                continue;
            }
            let wa = weights[a].as_ref().expect("weight");
            let wb = weights[b].as_ref().expect("weight");
            let w: Vector = wa.iter().zip(wb).map(|(x, y)| x + y).collect();
            let key = (parity[a] ^ parity[b], w);
            let gid = *lookup.get(&key).ok_or_else(|| {
                AlgebraError::ClosureFailure(format!("[{},{}]", labels[a], labels[b]))
            })?;
            let g = &groups[gid];
            let target: Vector = g
                .units
                .iter()
                .map(|u| comm.get(u / size, u % size))
                .collect();
            let mut basis: Vec<Vector> = g.members.iter().map(|(_, v)| v.clone()).collect();
            if let Some(id) = &g.ideal {
                basis.push(id.clone());
            }
            let coords = linalg::coordinates_in(&basis, &target).ok_or_else(|| {
                AlgebraError::ClosureFailure(format!("[{},{}]", labels[a], labels[b]))
            })?;
            for ((k, _), c) in g.members.iter().zip(coords) {
                if !c.is_zero() {
                    constants.push((a, b, *k, c));
                }
            }
        }
    }

    let cartan: Vec<usize> = (0..dim)
        .filter(|&i| parity[i] == 0 && weights[i].as_deref().is_some_and(linalg::is_zero_vec))
        .collect();
    let torus_cols: Vec<Vector> = amb.torus.clone();
    let cartan_coords = cartan
        .iter()
        .map(|&h| {
            let d: Vector = (0..size).map(|k| matrices[h].get(k, k)).collect();
            linalg::coordinates_in(&torus_cols, &d).ok_or_else(|| {
                AlgebraError::ClosureFailure(format!(
                    "{} is not in the coordinate torus",
                    labels[h]
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let form = amb.with_form.then(|| {
        let mut f = SparseMatrix::zeros(dim, dim);
        for a in 0..dim {
            for b in 0..dim {
                let v = matrices[a].mul(&matrices[b]).supertrace(amb.even);
                if !v.is_zero() {
                    f.set(a, b, v);
                }
            }
        }
        f
    });

    LieSuperalgebra::from_parts(AlgebraParts {
        family,
        params,
        labels,
        parity,
        constants,
        cartan,
        cartan_coords,
        weights,
        coord_labels: amb.coord_labels.clone(),
        weight_form: amb.weight_form.clone(),
        form,
        rep: Some(MatrixRep {
            even: amb.even,
            odd: amb.odd,
            matrices,
            is_representation: !amb.quotient_by_identity,
        }),
        embedding: None,
    })
}
