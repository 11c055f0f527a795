//! Table reproduction: each row is recomputed and marked MATCH or MISMATCH.

use std::fmt::Write as _;
use std::fs;

use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::{json, Value};
use supervar::algebra::{build, AlgebraRef, Family};
use supervar::detecting;
use supervar::invariants;
use supervar::json;
use supervar::tables;

use crate::commands::{algebra_ref, count_mode};
use crate::{AlgebraArgs, Cli, Status};

#[derive(Serialize)]
struct Row {
    algebra: String,
    expected: Value,
    computed: Value,
    status: &'static str,
}

#[derive(Serialize)]
struct TableReport {
    table: u8,
    title: &'static str,
    max_degree: Option<u32>,
    rows: Vec<Row>,
    all_match: bool,
}

fn row(algebra: String, expected: Value, computed: Value) -> Row {
    let status = if expected == computed {
        "MATCH"
    } else {
        "MISMATCH"
    };
    Row {
        algebra,
        expected,
        computed,
        status,
    }
}

fn selected_rows(alg: &AlgebraArgs, max_size: usize) -> Result<Vec<(Family, Vec<usize>)>> {
    if alg.algebra.is_none() && alg.family.is_none() {
        return Ok(tables::in_scope_rows(max_size));
    }
    match algebra_ref(alg)? {
        AlgebraRef::Base(f, p) => Ok(vec![(f, p)]),
        AlgebraRef::Detecting(..) => bail!("tables cover base algebras only"),
    }
}

fn name(f: Family, p: &[usize]) -> String {
    AlgebraRef::Base(f, p.to_vec()).to_string()
}

pub fn tables(
    cli: &Cli,
    table: u8,
    max_size: Option<usize>,
    max_degree: Option<u32>,
    alg: &AlgebraArgs,
) -> Result<Status> {
    let mut rows = Vec::new();
    let (title, degree) = match table {
        1 => {
            let d = max_degree.unwrap_or(6);
            let mode = count_mode(cli)?;
            for (f, p) in selected_rows(alg, max_size.unwrap_or(4))? {
                let a = build(f, &p)?;
                let expected = invariants::predicted_series(f, &p, d as usize)?;
                let computed = invariants::invariant_dimensions(&a, d, mode);
                rows.push(row(name(f, &p), json!(expected.dims), json!(computed.dims)));
            }
            ("Hilbert series of S(g1*)^G0", Some(d))
        }
        3 => {
            for (f, p) in selected_rows(alg, max_size.unwrap_or(6))? {
                let a = build(f, &p)?;
                let (e0, e1) = tables::dimensions(f, &p)?;
                rows.push(row(
                    name(f, &p),
                    json!([e0, e1]),
                    json!([a.dim_even(), a.dim_odd()]),
                ));
            }
            ("dimensions (dim g0, dim g1)", None)
        }
        4 => {
            for (f, p) in selected_rows(alg, max_size.unwrap_or(4))? {
                let a = build(f, &p)?;
                let expected = tables::centralizer_dim(f, &p)?;
                let r = detecting::detect(&a, None)?;
                rows.push(row(name(f, &p), json!(expected), json!(r.dims.lie_h)));
            }
            ("dimension of the centralizer of x0", None)
        }
        t => bail!("no table {t}; choose 1, 3 or 4"),
    };
    let all_match = rows.iter().all(|r| r.status == "MATCH");
    let report = TableReport {
        table,
        title,
        max_degree: degree,
        rows,
        all_match,
    };
    let text = render(&report);
    print!("{text}");
    if let Some(dir) = &cli.out {
        fs::create_dir_all(dir)?;
        fs::write(
            dir.join(format!("table{table}.json")),
            json::to_sorted_string(&report)?,
        )?;
        fs::write(dir.join(format!("table{table}.txt")), &text)?;
    }
    Ok(if all_match {
        Status::Ok
    } else {
        Status::Mismatch
    })
}

fn render(t: &TableReport) -> String {
    let cell = |v: &Value| v.to_string().replace(',', ", ");
    let w = t
        .rows
        .iter()
        .map(|r| r.algebra.len())
        .max()
        .unwrap_or(7)
        .max(7);
    let we = t
        .rows
        .iter()
        .map(|r| cell(&r.expected).len())
        .max()
        .unwrap_or(8)
        .max(8);
    let wc = t
        .rows
        .iter()
        .map(|r| cell(&r.computed).len())
        .max()
        .unwrap_or(8)
        .max(8);
    let mut s = String::new();
    let _ = writeln!(s, "table {}: {}", t.table, t.title);
    let _ = writeln!(
        s,
        "{:w$}  {:we$}  {:wc$}  status",
        "algebra", "expected", "computed"
    );
    for r in &t.rows {
        let _ = writeln!(
            s,
            "{:w$}  {:we$}  {:wc$}  {}",
            r.algebra,
            cell(&r.expected),
            cell(&r.computed),
            r.status
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_are_marked() {
        assert_eq!(
            row("x".into(), json!([1, 2]), json!([1, 2])).status,
            "MATCH"
        );
        assert_eq!(row("x".into(), json!(3), json!(4)).status, "MISMATCH");
    }

    #[test]
    fn rendering_is_aligned() {
        let t = TableReport {
            table: 3,
            title: "t",
            max_degree: None,
            rows: vec![row("GL(1,1)".into(), json!([2, 2]), json!([2, 2]))],
            all_match: true,
        };
        let s = render(&t);
        assert!(s.lines().nth(2).unwrap().ends_with("MATCH"));
        assert!(s.contains("[2, 2]"));
    }
}
