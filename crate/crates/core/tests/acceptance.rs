//! Acceptance suite: one line per criterion, then a nonzero exit if any
//! criterion fails. Runs without the libtest harness so the lines are
//! always printed.

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use supervar::algebra::{build, Detecting, Family, LieSuperalgebra};
use supervar::cohomology;
use supervar::detecting;
use supervar::invariants::{self, CountMode, InvariantEngine};
use supervar::linalg::{self, RankMode, SparseMatrix, Vector};
use supervar::module::{self, Supermodule};
use supervar::rng;
use supervar::tables;
use supervar::weights;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn alg(f: Family, p: &[usize]) -> Arc<LieSuperalgebra> {
    Arc::new(build(f, p).expect("build"))
}

fn e_of(f: Family, p: &[usize]) -> Arc<LieSuperalgebra> {
    Arc::new(
        detecting::assemble_detecting(alg(f, p), Detecting::E)
            .expect("assemble")
            .0,
    )
}

fn name(f: Family, p: &[usize]) -> String {
    format!("{f}{p:?}")
}

/// The seven families of the dimension table, total size at most 6.
fn small_rows() -> Vec<(Family, Vec<usize>)> {
    tables::in_scope_rows(6)
}

/// Families used for the invariant and centralizer checks.
fn named_rows() -> Vec<(Family, Vec<usize>, u32)> {
    vec![
        (Family::GL, vec![1, 1], 8),
        (Family::GL, vec![1, 2], 8),
        (Family::GL, vec![2, 2], 8),
        (Family::SL, vec![2, 1], 8),
        (Family::OSP, vec![3, 2], 8),
        (Family::QHAT, vec![2], 8),
        (Family::Q, vec![3], 8),
        (Family::P, vec![3], 8),
        (Family::PSL, vec![2, 2], 6),
    ]
}

fn c1_dimensions() -> Outcome {
    let mut bad = Vec::new();
    let rows = small_rows();
    for (f, p) in &rows {
        let a = build(*f, p).expect("build");
        let want = tables::dimensions(*f, p).expect("row");
        if (a.dim_even(), a.dim_odd()) != want {
            bad.push(format!(
                "{} got ({}, {}) want {want:?}",
                name(*f, p),
                a.dim_even(),
                a.dim_odd()
            ));
        }
    }
    if bad.is_empty() {
        pass(format!("{} rows match", rows.len()))
    } else {
        fail(bad.join("; "))
    }
}

fn c2_jacobi() -> Outcome {
    let (mut triples, mut bad) = (0, Vec::new());
    let rows = small_rows();
    for (f, p) in &rows {
        let r = build(*f, p).expect("build").validate();
        triples += r.triples_checked;
        if !r.is_ok() {
            bad.push(format!("{}: {:?}", name(*f, p), r.violations));
        }
    }
    if bad.is_empty() {
        pass(format!(
            "{} algebras, {triples} triples, 0 violations",
            rows.len()
        ))
    } else {
        fail(bad.join("; "))
    }
}

fn c3_hilbert() -> Outcome {
    let mut bad = Vec::new();
    for (f, p, d) in named_rows() {
        let a = build(f, &p).expect("build");
        let got = invariants::invariant_dimensions(&a, d, CountMode::default());
        let want = invariants::predicted_series(f, &p, d as usize).expect("row");
        if got != want {
            bad.push(format!(
                "{} got {:?} want {:?}",
                name(f, &p),
                got.dims,
                want.dims
            ));
        }
    }
    if bad.is_empty() {
        pass(format!(
            "{} series exact through their degrees (two primes)",
            named_rows().len()
        ))
    } else {
        fail(bad.join("; "))
    }
}

fn c4_centralizers() -> Outcome {
    let (mut bad, mut stable) = (Vec::new(), 0);
    for (f, p, _) in named_rows() {
        let a = build(f, &p).expect("build");
        let r = match detecting::detect(&a, None) {
            Ok(r) => r,
            Err(e) => {
                bad.push(format!("{}: {e}", name(f, &p)));
                continue;
            }
        };
        let want = tables::centralizer_dim(f, &p).expect("row");
        if r.dims.lie_h != want {
            bad.push(format!(
                "{} dim Lie(H) {} want {want}",
                name(f, &p),
                r.dims.lie_h
            ));
        }
        if tables::polar_stable(f, &p).expect("row").stable {
            stable += 1;
            let gens = tables::generator_degrees(f, &p).expect("row").len() as i64;
            let lhs = r.dims.lie_h as i64;
            let rhs = a.dim_even() as i64 - a.dim_odd() as i64 + gens;
            if lhs != rhs || r.checks.stability_identity != Some(true) {
                bad.push(format!("{} stability {lhs} vs {rhs}", name(f, &p)));
            }
        }
    }
    if bad.is_empty() {
        pass(format!(
            "{} centralizers match, stability identity on {stable} stable rows",
            named_rows().len()
        ))
    } else {
        fail(bad.join("; "))
    }
}

fn c5_closure() -> Outcome {
    let mut bad = Vec::new();
    let rows = [
        (Family::GL, vec![2, 2]),
        (Family::PSL, vec![2, 2]),
        (Family::QHAT, vec![2]),
        (Family::OSP, vec![3, 2]),
    ];
    for (f, p) in &rows {
        let g = alg(*f, p);
        for which in [Detecting::F, Detecting::E] {
            match detecting::assemble_detecting(g.clone(), which) {
                Err(e) => bad.push(format!("{} {which:?}: {e}", name(*f, p))),
                Ok((sub, r)) => {
                    if !sub.validate().is_ok() {
                        bad.push(format!(
                            "{} {which:?}: subalgebra fails Jacobi",
                            name(*f, p)
                        ));
                    }
                    // [𝔣₁, 𝔣₁] ⊆ Lie(H), pair by pair
                    for u in &r.f1_basis {
                        for v in &r.f1_basis {
                            let b = g.bracket(u, v).expect("bracket");
                            if !linalg::is_zero_vec(&b)
                                && linalg::coordinates_in(&r.lie_h_basis, &b).is_none()
                            {
                                bad.push(format!("{}: [f1, f1] leaves Lie(H)", name(*f, p)));
                            }
                        }
                    }
                }
            }
        }
    }
    if bad.is_empty() {
        pass(format!(
            "{} algebras, f and e close, [f1,f1] in Lie(H)",
            rows.len()
        ))
    } else {
        fail(bad.join("; "))
    }
}

fn c6_restriction() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (f, p) in [
        (Family::GL, vec![2, 2]),
        (Family::SL, vec![2, 1]),
        (Family::OSP, vec![3, 2]),
        (Family::QHAT, vec![2]),
    ] {
        let a = build(f, &p).expect("build");
        let spec = tables::reflection_group(f, &p).expect("polar");
        let dims = invariants::invariant_dimensions(&a, 8, CountMode::default());
        let wdims = invariants::w_invariant_dimensions(&spec, 8);
        if dims != wdims {
            bad.push(format!(
                "{}: {:?} vs W {:?}",
                name(f, &p),
                dims.dims,
                wdims.dims
            ));
        }
        let e1 = detecting::detect(&a, None).expect("detect").e1_basis;
        let eng = InvariantEngine::new(&a);
        for d in 1..=8 {
            let inv = eng.invariants(d);
            let restricted: Vec<_> = inv
                .iter()
                .map(|q| invariants::restrict_polynomial(&a, q, &e1).expect("restrict"))
                .collect();
            for q in &restricted {
                checked += 1;
                if !invariants::w_invariance_check(f, &p, q).expect("check") {
                    bad.push(format!(
                        "{} degree {d}: restriction not W-invariant",
                        name(f, &p)
                    ));
                }
            }
            let monos = supervar::poly::monomials(e1.len(), d);
            let coeffs: Vec<Vector> = restricted.iter().map(|q| q.coefficients(&monos)).collect();
            if linalg::rank_of_vectors(&coeffs, RankMode::Exact) != inv.len() {
                bad.push(format!(
                    "{} degree {d}: restriction not injective",
                    name(f, &p)
                ));
            }
        }
    }
    if bad.is_empty() {
        pass(format!("dims agree with W through degree 8; {checked} restricted invariants W-invariant and independent"))
    } else {
        fail(bad.join("; "))
    }
}

fn c7_differential() -> Outcome {
    let mut bad = Vec::new();
    let mut runs = 0;
    for p in [[1usize, 1], [2, 1]] {
        let g = alg(Family::GL, &p);
        let nat = Supermodule::natural(g.clone()).expect("natural");
        let end = nat.tensor(&nat.dual()).expect("tensor");
        let triv = Supermodule::trivial(g.clone());
        for (label, m) in [
            ("trivial", &triv),
            ("natural", &nat),
            ("natural⊗dual", &end),
        ] {
            runs += 1;
            let r = cohomology::cohomology_dims(&g, m, 8).expect("cohomology");
            if !r.d_squared_zero {
                bad.push(format!("gl{p:?} {label}: d∘d ≠ 0"));
            }
            if !r.euler_consistent() {
                bad.push(format!("gl{p:?} {label}: Euler check"));
            }
            if label == "trivial" {
                let inv = invariants::invariant_dimensions(&g, 8, CountMode::default());
                if inv != r.dims {
                    bad.push(format!(
                        "gl{p:?}: H {:?} vs invariants {:?}",
                        r.dims.dims, inv.dims
                    ));
                }
            }
        }
    }
    if bad.is_empty() {
        pass(format!(
            "{runs} complexes through degree 8, d∘d = 0, trivial cohomology = invariants"
        ))
    } else {
        fail(bad.join("; "))
    }
}

fn ranks(m: &SparseMatrix) -> [usize; 2] {
    [
        linalg::rank(m, RankMode::Exact),
        linalg::rank(&m.mul(m), RankMode::Exact),
    ]
}

fn c8_rank_one() -> Outcome {
    let mut bad = Vec::new();
    let q1 = alg(Family::QHAT, &[1]);
    let (c, u) = (q1.even_indices()[0], q1.odd_indices()[0]);
    let mut g = rng::from_seed(8);
    for _ in 0..20 {
        let (l, m) = (
            rng::nonzero_rational(&mut g, 9),
            rng::nonzero_rational(&mut g, 9),
        );
        let pl = Supermodule::p_lambda(q1.clone(), &l).expect("P(λ)");
        let pm = Supermodule::p_lambda(q1.clone(), &m).expect("P(μ)");
        let lhs = pl.tensor(&pm).expect("tensor");
        let s = Supermodule::p_lambda(q1.clone(), &(&l + &m)).expect("P(λ+μ)");
        let rhs = s.direct_sum(&s).expect("sum");
        let t = rng::nonzero_rational(&mut g, 9);
        let mut x = linalg::zero_vec(q1.dim());
        x[u] = t.clone();
        let mut y = x.clone();
        y[c] = rng::nonzero_rational(&mut g, 9);
        for v in [&x, &y, &q1.basis_vector(c)] {
            let (a, b) = (lhs.rho(v).expect("ρ"), rhs.rho(v).expect("ρ"));
            if ranks(&a) != ranks(&b) {
                bad.push(format!(
                    "λ={l} μ={m}: ranks {:?} vs {:?}",
                    ranks(&a),
                    ranks(&b)
                ));
            }
        }
        if (lhs.dim0(), lhs.dim1()) != (rhs.dim0(), rhs.dim1()) {
            bad.push(format!("λ={l} μ={m}: dimensions differ"));
        }
        if !module::is_projective_over_x(&lhs, &x).expect("test") {
            bad.push(format!("λ={l} μ={m}: P(λ)⊗P(μ) not projective"));
        }
    }
    // Case I: ⟨x⟩ with [x,x] = 0 inside gl(1|1)
    let gl = alg(Family::GL, &[1, 1]);
    let iso = gl.odd_indices()[0];
    let xi = gl.basis_vector(iso);
    if !linalg::is_zero_vec(&gl.bracket(&xi, &xi).expect("bracket")) {
        bad.push("chosen odd root vector is not isotropic".into());
    }
    let line = Arc::new(detecting::subalgebra(gl.clone(), &[], &[xi], Detecting::E).expect("⟨x⟩"));
    let x = line.basis_vector(0);
    let regular = Supermodule::exterior_regular(line.clone());
    let triv = Supermodule::trivial(line.clone());
    if regular.dim() != 2 || !module::is_projective_over_x(&regular, &x).expect("test") {
        bad.push("regular module of ⟨x⟩ is not projective".into());
    }
    if module::is_projective_over_x(&triv, &x).expect("test") {
        bad.push("trivial module of ⟨x⟩ is projective".into());
    }
    // Case II: P(λ) projective for every λ, ℂ is not
    for l in [0i64, 1, -3] {
        let p = Supermodule::p_lambda(q1.clone(), &linalg::rat(l)).expect("P(λ)");
        if !module::is_projective_over_x(&p, &q1.basis_vector(u)).expect("test") {
            bad.push(format!("P({l}) not projective"));
        }
    }
    if module::is_projective_over_x(&Supermodule::trivial(q1.clone()), &q1.basis_vector(u))
        .expect("test")
    {
        bad.push("ℂ projective over q(1)".into());
    }
    if bad.is_empty() {
        pass("20 tensor-law samples; regular projective, ℂ not (both cases)")
    } else {
        fail(bad.join("; "))
    }
}

/// Random point of `𝔢₁` with a random nonempty support.
fn sample_odd(a: &LieSuperalgebra, g: &mut rng::Generator) -> Vector {
    let odd = a.odd_indices();
    let r = odd.len();
    let mask = rng::int_in(g, 1, (1i64 << r) - 1) as usize;
    let support: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
    let coords = rng::supported_vector(g, r, &support, 9);
    let mut x = linalg::zero_vec(a.dim());
    for (&k, c) in odd.iter().zip(coords) {
        x[k] = c;
    }
    x
}

fn c9_rank_variety() -> Outcome {
    let mut bad = Vec::new();
    let mut points = 0;
    let mut evaluated = [0usize; 5];
    for p in [[1usize, 1], [2, 2]] {
        let e = e_of(Family::GL, &p);
        let triv = Supermodule::trivial(e.clone());
        let nat = Supermodule::natural(e.clone()).expect("natural");
        let reg = Supermodule::exterior_regular(e.clone());
        let nat_triv = nat.direct_sum(&triv).expect("sum");
        let mods = [
            ("trivial", triv),
            ("natural", nat),
            ("regular", reg),
            ("natural⊕trivial", nat_triv),
        ];
        let mut g = rng::from_seed(9);
        let mut here = 0;
        while here < 50 {
            let x = sample_odd(&e, &mut g);
            let proj: Vec<Option<bool>> = mods
                .iter()
                .map(|(_, m)| match module::is_projective_over_x(m, &x) {
                    Ok(b) => Some(b),
                    Err(module::ModuleError::NonSemisimpleH) => None,
                    Err(err) => panic!("{err}"),
                })
                .collect();
            if proj.iter().any(|b| b.is_none()) {
                continue;
            }
            here += 1;
            for (i, (li, mi)) in mods.iter().enumerate() {
                for (lj, mj) in &mods[i..] {
                    evaluated[0] += 1;
                    if !module::tensor_projectivity_law_check(mi, mj, &x).expect("law") {
                        bad.push(format!("gl{p:?} tensor {li}⊗{lj}"));
                    }
                    evaluated[4] += 1;
                    if !module::direct_sum_law_check(mi, mj, &x).expect("law") {
                        bad.push(format!("gl{p:?} sum {li}⊕{lj}"));
                    }
                }
                evaluated[1] += 1;
                if !module::duality_check(mi, &x).expect("law") {
                    bad.push(format!("gl{p:?} dual {li}"));
                }
                evaluated[2] += 1;
                let end = mi.dual().tensor(mi).expect("tensor");
                if module::is_projective_over_x(&end, &x).expect("test") != proj[i].unwrap() {
                    bad.push(format!("gl{p:?} M*⊗M for {li}"));
                }
                if weights::superdimension(mi).rem_euclid(2) == 1 {
                    evaluated[3] += 1;
                    if proj[i] != Some(false) {
                        bad.push(format!("gl{p:?} odd sdim {li} projective"));
                    }
                }
                // conical: same answer at 3x
                let x3: Vector = x.iter().map(|c| c * linalg::rat(3)).collect();
                if module::is_projective_over_x(mi, &x3).expect("test") != proj[i].unwrap() {
                    bad.push(format!("gl{p:?} rescaling {li}"));
                }
            }
        }
        points += here;
    }
    bad.truncate(10);
    if bad.is_empty() {
        pass(format!(
            "{points} points; law checks tensor {} dual {} M*⊗M {} odd-sdim {} sum {}; 0 counterexamples",
            evaluated[0], evaluated[1], evaluated[2], evaluated[3], evaluated[4]
        ))
    } else {
        fail(bad.join("; "))
    }
}

fn c10_avrunin_scott() -> Outcome {
    let mut bad = Vec::new();
    let mut lines = Vec::new();
    for (p, kinds) in [
        (
            [1usize, 1],
            &["trivial", "regular", "natural", "natural⊕trivial"][..],
        ),
        ([2, 2], &["trivial", "regular"][..]),
    ] {
        let e = e_of(Family::GL, &p);
        for kind in kinds {
            let triv = Supermodule::trivial(e.clone());
            let m = match *kind {
                "trivial" => triv,
                "regular" => Supermodule::exterior_regular(e.clone()),
                "natural" => Supermodule::natural(e.clone()).expect("natural"),
                _ => Supermodule::natural(e.clone())
                    .expect("natural")
                    .direct_sum(&triv)
                    .expect("sum"),
            };
            let r = cohomology::avrunin_scott_compare(&e, &m, 8, 50, 10).expect("compare");
            lines.push(format!(
                "gl{p:?} {kind} {}/{}",
                r.agreements,
                r.points.len()
            ));
            if r.disagreements != 0 || r.points.len() != 50 {
                bad.push(format!("gl{p:?} {kind}: {} disagreements", r.disagreements));
            }
        }
    }
    if bad.is_empty() {
        pass(format!("D = 8, 0 disagreements ({})", lines.join(", ")))
    } else {
        fail(bad.join("; "))
    }
}

fn c11_defects() -> Outcome {
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    for (f, p) in [
        (Family::GL, vec![2, 2]),
        (Family::SL, vec![2, 1]),
        (Family::OSP, vec![3, 2]),
    ] {
        let a = build(f, &p).expect("build");
        let comb = weights::defect_combinatorial(&a).expect("defect");
        let coh = weights::cohomological_defect(&a, 8);
        let e1 = detecting::detect(&a, None).expect("detect").dims.e1;
        seen.push(format!("{} {comb}={coh}={e1}", name(f, &p)));
        if comb != coh || coh != e1 {
            bad.push(format!("{}: {comb}, {coh}, {e1}", name(f, &p)));
        }
    }
    let psl = build(Family::PSL, &[2, 2]).expect("build");
    let comb = weights::defect_combinatorial(&psl).expect("defect");
    let coh = weights::cohomological_defect(&psl, 6);
    seen.push(format!(
        "psl(2|2) cohomological {coh} vs combinatorial {comb}"
    ));
    if (coh, comb) != (3, 2) {
        bad.push(format!("psl(2|2): expected 3 vs 2, got {coh} vs {comb}"));
    }
    if bad.is_empty() {
        pass(seen.join(", "))
    } else {
        fail(bad.join("; "))
    }
}

/// The CLI binary next to this test executable, built on demand.
fn cli_binary() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?.to_path_buf();
    let bin = dir.join(format!("supervar{}", std::env::consts::EXE_SUFFIX));
    if !bin.exists() {
        let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
        let mut cmd = Command::new(cargo);
        cmd.args(["build", "-q", "-p", "supervar-cli"]);
        if dir.ends_with("release") {
            cmd.arg("--release");
        }
        cmd.status().ok()?;
    }
    bin.exists().then_some(bin)
}

fn c12_determinism() -> Outcome {
    let Some(bin) = cli_binary() else {
        return fail("CLI binary not found and could not be built");
    };
    let tmp = std::env::temp_dir().join(format!("supervar-acceptance-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&tmp);
    std::fs::create_dir_all(&tmp).expect("tmp");
    let module = tmp.join("nat.json");
    let ok = Command::new(&bin)
        .args([
            "module", "make", "--family", "gl", "--m", "2", "--n", "1", "--kind", "natural",
            "--out",
        ])
        .arg(&module)
        .status()
        .map(|s| s.success())
        .unwrap_or(false);
    if !ok {
        return fail("module make failed");
    }
    let m = module.to_string_lossy().into_owned();
    let cmds: Vec<Vec<String>> = [
        vec!["build", "--family", "gl", "--m", "2", "--n", "2"],
        vec!["validate", "--family", "osp", "--m", "3", "--n", "2"],
        vec![
            "invariants",
            "--family",
            "q",
            "--n",
            "3",
            "--max-degree",
            "6",
        ],
        vec!["detect", "--family", "osp", "--m", "3", "--n", "2"],
        vec![
            "cohom",
            "--family",
            "gl",
            "--m",
            "2",
            "--n",
            "1",
            "--coeff",
            &m,
            "--max-degree",
            "4",
        ],
        vec![
            "cohom",
            "--family",
            "gl",
            "--m",
            "2",
            "--n",
            "2",
            "--pair",
            "e",
            "--max-degree",
            "6",
        ],
        vec!["module", "validate", "--file", &m],
        vec![
            "rankvar",
            "--family",
            "gl",
            "--m",
            "2",
            "--n",
            "2",
            "--kind",
            "regular",
            "--samples",
            "6",
            "--seed",
            "42",
        ],
        vec!["atyp", "--family", "gl", "--m", "2", "--n", "1"],
        vec![
            "tables",
            "--table",
            "1",
            "--max-size",
            "3",
            "--max-degree",
            "6",
        ],
        vec!["tables", "--table", "3", "--max-size", "6"],
        vec!["tables", "--table", "4", "--max-size", "4"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();
    let mut bad = Vec::new();
    for args in &cmds {
        let a = Command::new(&bin).args(args).output().expect("run");
        let b = Command::new(&bin).args(args).output().expect("run");
        if !a.status.success() || a.stdout != b.stdout || a.stdout.is_empty() {
            bad.push(args.join(" "));
        }
    }
    let read_dir = |d: &PathBuf| -> Vec<(String, Vec<u8>)> {
        let mut v: Vec<_> = std::fs::read_dir(d)
            .map(|it| {
                it.flatten()
                    .map(|e| {
                        (
                            e.file_name().to_string_lossy().into_owned(),
                            std::fs::read(e.path()).unwrap_or_default(),
                        )
                    })
                    .collect()
            })
            .unwrap_or_default();
        v.sort();
        v
    };
    for fam in [
        ["--family", "gl", "--m", "1", "--n", "1"],
        ["--family", "psl", "--m", "2", "--n", "2"],
    ] {
        let (d1, d2) = (
            tmp.join(format!("{}a", fam[1])),
            tmp.join(format!("{}b", fam[1])),
        );
        for d in [&d1, &d2] {
            let _ = Command::new(&bin)
                .arg("pipeline")
                .args(fam)
                .args(["--seed", "7", "--out"])
                .arg(d)
                .status();
        }
        let (a, b) = (read_dir(&d1), read_dir(&d2));
        if a.is_empty() || a != b {
            bad.push(format!("pipeline {}", fam[1]));
        }
    }
    let _ = std::fs::remove_dir_all(&tmp);
    if bad.is_empty() {
        pass(format!(
            "{} commands and 2 pipelines byte-identical on rerun",
            cmds.len()
        ))
    } else {
        fail(format!("differs or failed: {}", bad.join("; ")))
    }
}

fn main() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, u64); 12] = [
        ("dimension table", c1_dimensions, 5),
        ("super Jacobi and antisymmetry", c2_jacobi, 30),
        ("Hilbert series of invariants", c3_hilbert, 600),
        ("centralizers and stability identity", c4_centralizers, 60),
        ("detecting-subalgebra closure", c5_closure, 60),
        ("restriction isomorphism", c6_restriction, 300),
        ("differential correctness", c7_differential, 120),
        ("rank-one theory", c8_rank_one, 10),
        ("rank-variety laws", c9_rank_variety, 120),
        ("annihilator versus rank variety", c10_avrunin_scott, 300),
        ("defect equalities", c11_defects, 60),
        ("CLI determinism", c12_determinism, 60),
    ];
    let mut failed = 0;
    for (i, (label, check, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            fail(format!("panicked: {msg}"))
        });
        let took = t.elapsed();
        let in_time = took <= Duration::from_secs(*limit);
        let ok = out.ok && in_time;
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<37} {}  ({:.2}s / {}s)  {}",
            i + 1,
            label,
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit,
            if in_time {
                out.detail
            } else {
                format!("over time; {}", out.detail)
            }
        );
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
