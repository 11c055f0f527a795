//! Command implementations.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};
use supervar::algebra::{build, AlgebraRef, Detecting, Family, LieSuperalgebra};
use supervar::cohomology;
use supervar::detecting;
use supervar::invariants::{self, CountMode};
use supervar::json::{self, AlgebraJson, ModuleJson};
use supervar::linalg::{PrimeField, Rational};
use supervar::module::{self, Supermodule};
use supervar::tables;
use supervar::weights;

use crate::{AlgebraArgs, Cli, Command, ModuleCommand, ModuleKind, Pair, Status};

pub fn run(cli: &Cli) -> Result<Status> {
    match &cli.command {
        Command::Build(alg) => {
            let a = algebra(alg)?;
            emit(cli.out.as_deref(), &AlgebraJson::from(a.as_ref()))?;
            Ok(Status::Ok)
        }
        Command::Validate(alg) => {
            let (v, ok) = validate(algebra(alg)?.as_ref());
            emit(cli.out.as_deref(), &v)?;
            Ok(if ok { Status::Ok } else { Status::Failed })
        }
        Command::Invariants {
            alg,
            max_degree,
            exact,
        } => {
            let a = algebra(alg)?;
            let mode = if *exact {
                CountMode::Exact
            } else {
                count_mode(cli)?
            };
            let (v, matched) = invariants_report(&a, *max_degree, mode);
            emit(cli.out.as_deref(), &v)?;
            Ok(if matched {
                Status::Ok
            } else {
                Status::Mismatch
            })
        }
        Command::Detect { alg, coefficients } => {
            let a = algebra(alg)?;
            let coeffs = coefficients.as_deref().map(parse_list).transpose()?;
            let r = detecting::detect(&a, coeffs.as_deref())?;
            emit(cli.out.as_deref(), &r)?;
            Ok(Status::Ok)
        }
        Command::Cohom {
            alg,
            pair,
            coeff,
            max_degree,
        } => {
            let v = cohom_report(&algebra(alg)?, *pair, coeff, *max_degree)?;
            emit(cli.out.as_deref(), &v)?;
            Ok(Status::Ok)
        }
        Command::Module { command } => match command {
            ModuleCommand::Validate { file } => {
                let m = load_module(file)?;
                let r = m.validate();
                let ok = r.is_ok();
                let v = json!({
                    "algebra_ref": m.algebra().reference().to_string(),
                    "dim0": m.dim0(),
                    "dim1": m.dim1(),
                    "report": r,
                    "ok": ok,
                });
                emit(cli.out.as_deref(), &v)?;
                Ok(if ok { Status::Ok } else { Status::Failed })
            }
            ModuleCommand::Make {
                alg,
                kind,
                pair,
                lambda,
            } => {
                let base = algebra(alg)?;
                let target = pair_algebra(&base, *pair)?;
                let lam = lambda
                    .as_deref()
                    .map(|s| json::parse_rational(s))
                    .transpose()?;
                let m = make_module(&base, &target, *kind, lam.as_ref())?;
                emit(cli.out.as_deref(), &ModuleJson::from(&m))?;
                Ok(Status::Ok)
            }
        },
        Command::Rankvar {
            alg,
            module: file,
            kind,
            samples,
        } => {
            let v = match file {
                Some(f) => rankvar_report(&load_module(f)?, *samples, cli.seed)?,
                None => {
                    let base = algebra(alg)?;
                    let e = pair_algebra(&base, Pair::E)?;
                    rankvar_report(&make_module(&base, &e, *kind, None)?, *samples, cli.seed)?
                }
            };
            emit(cli.out.as_deref(), &v)?;
            Ok(Status::Ok)
        }
        Command::Atyp {
            alg,
            lambda,
            max_degree,
        } => {
            let a = algebra(alg)?;
            let lam = match lambda {
                Some(s) => parse_list(s)?,
                None => weights::natural_highest_weight(&a),
            };
            let v = atyp_report(&a, &lam, *max_degree);
            emit(cli.out.as_deref(), &v)?;
            Ok(Status::Ok)
        }
        Command::Tables {
            table,
            max_size,
            max_degree,
            alg,
        } => crate::report::tables(cli, *table, *max_size, *max_degree, alg),
        Command::Pipeline {
            alg,
            max_degree,
            samples,
        } => pipeline(cli, alg, *max_degree, *samples),
    }
}

/// Writes sorted-key JSON to `out`, or to stdout.
pub fn emit<T: serde::Serialize>(out: Option<&Path>, x: &T) -> Result<()> {
    let s = json::to_sorted_string(x)?;
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, s).with_context(|| format!("writing {}", p.display()))?;
        }
        None => print!("{s}"),
    }
    Ok(())
}

pub fn count_mode(cli: &Cli) -> Result<CountMode> {
    Ok(match cli.prime {
        Some(p) => CountMode::with_prime(PrimeField::new(p)?),
        None => CountMode::default(),
    })
}

fn parse_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| Ok(json::parse_rational(t)?))
        .collect()
}

/// Parameters for `family` from `--m`/`--n`.
pub fn params_for(family: Family, m: Option<usize>, n: Option<usize>) -> Result<Vec<usize>> {
    let n = n.ok_or_else(|| anyhow!("--n is required"))?;
    Ok(match (family, m) {
        (Family::GL | Family::SL | Family::OSP, Some(m)) => vec![m, n],
        (Family::GL | Family::SL | Family::OSP, None) => bail!("--m is required for {family}"),
        (Family::PSL, m) => vec![m.unwrap_or(n), n],
        (_, Some(_)) => bail!("{family} takes only --n"),
        (_, None) => vec![n],
    })
}

pub fn algebra_ref(alg: &AlgebraArgs) -> Result<AlgebraRef> {
    if let Some(r) = &alg.algebra {
        return Ok(r.parse()?);
    }
    let family: Family = alg
        .family
        .as_deref()
        .ok_or_else(|| anyhow!("give --algebra or --family"))?
        .parse()?;
    Ok(AlgebraRef::Base(family, params_for(family, alg.m, alg.n)?))
}

pub fn algebra(alg: &AlgebraArgs) -> Result<Arc<LieSuperalgebra>> {
    Ok(detecting::resolve(&algebra_ref(alg)?)?)
}

pub fn pair_algebra(base: &Arc<LieSuperalgebra>, pair: Pair) -> Result<Arc<LieSuperalgebra>> {
    let which = match pair {
        Pair::G => return Ok(base.clone()),
        Pair::F => Detecting::F,
        Pair::E => Detecting::E,
    };
    Ok(Arc::new(
        detecting::assemble_detecting(base.clone(), which)?.0,
    ))
}

fn load_module(file: &Path) -> Result<Supermodule> {
    let s = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let j: ModuleJson = json::from_json(&s)?;
    Ok(j.load()?)
}

/// Restriction of `m` to `target`, when `m` lives on the parent of `target`.
fn over(m: Supermodule, target: &Arc<LieSuperalgebra>) -> Result<Supermodule> {
    if m.algebra().reference() == target.reference() {
        return Ok(m);
    }
    Ok(m.restrict(target.clone())?)
}

pub fn make_module(
    base: &Arc<LieSuperalgebra>,
    target: &Arc<LieSuperalgebra>,
    kind: ModuleKind,
    lambda: Option<&Rational>,
) -> Result<Supermodule> {
    Ok(match kind {
        ModuleKind::Trivial => Supermodule::trivial(target.clone()),
        ModuleKind::Natural => over(Supermodule::natural(base.clone())?, target)?,
        ModuleKind::Adjoint => over(Supermodule::adjoint(base.clone()), target)?,
        ModuleKind::Regular => Supermodule::exterior_regular(target.clone()),
        ModuleKind::Plambda => {
            let l = lambda.ok_or_else(|| anyhow!("plambda needs --lambda"))?;
            Supermodule::p_lambda(target.clone(), l)?
        }
    })
}

pub fn validate(a: &LieSuperalgebra) -> (Value, bool) {
    let r = a.validate();
    let ok = r.is_ok();
    let v = json!({
        "algebra": a.reference().to_string(),
        "dim_even": a.dim_even(),
        "dim_odd": a.dim_odd(),
        "report": r,
        "ok": ok,
    });
    (v, ok)
}

pub fn invariants_report(a: &LieSuperalgebra, max_degree: u32, mode: CountMode) -> (Value, bool) {
    let computed = invariants::invariant_dimensions(a, max_degree, mode);
    let predicted = invariants::predicted_series(a.family(), a.params(), max_degree as usize).ok();
    let gens = invariants::inferred_generator_degrees(a, max_degree, &mode.first_field());
    let matched = predicted.as_ref().is_none_or(|p| *p == computed);
    let v = json!({
        "family": a.family(),
        "params": a.params(),
        "D": max_degree,
        "computed": computed.dims,
        "predicted": predicted.map(|p| p.dims),
        "generator_degrees": gens,
        "match": matched,
    });
    (v, matched)
}

/// Total size `m + n`, or `n` for the one-parameter families.
fn size(a: &LieSuperalgebra) -> usize {
    a.params().iter().sum()
}

pub fn cohom_report(
    base: &Arc<LieSuperalgebra>,
    pair: Pair,
    coeff: &str,
    max_degree: u32,
) -> Result<Value> {
    let a = pair_algebra(base, pair)?;
    let m = if coeff == "trivial" {
        Supermodule::trivial(a.clone())
    } else {
        if pair == Pair::G && size(base) > 4 {
            bail!(
                "nontrivial coefficients over {} need total size at most 4",
                base.display_name()
            );
        }
        over(load_module(&PathBuf::from(coeff))?, &a)?
    };
    let res = cohomology::cohomology_dims(&a, &m, max_degree)?;
    let ideal = match pair {
        Pair::E => Some(cohomology::annihilator_truncated(&a, &m, max_degree)?),
        _ => None,
    };
    Ok(json!({
        "algebra": a.reference().to_string(),
        "pair": format!("{pair:?}").to_lowercase(),
        "coeff": coeff,
        "max_degree": max_degree,
        "euler_consistent": res.euler_consistent(),
        "cohomology": res,
        "ideal": ideal,
    }))
}

pub fn rankvar_report(m: &Supermodule, samples: usize, seed: u64) -> Result<Value> {
    let e1 = e1_basis(m.algebra())?;
    let r = module::rank_variety_probe(m, &e1, samples, seed)?;
    Ok(json!({
        "algebra": m.algebra().reference().to_string(),
        "dim0": m.dim0(),
        "dim1": m.dim1(),
        "report": r,
    }))
}

/// Odd basis vectors of a detecting subalgebra, or of the algebra itself.
fn e1_basis(a: &LieSuperalgebra) -> Result<Vec<Vec<Rational>>> {
    Ok(a.odd_indices()
        .into_iter()
        .map(|i| a.basis_vector(i))
        .collect())
}

pub fn atyp_report(a: &LieSuperalgebra, lambda: &[Rational], max_degree: u32) -> Value {
    let ok_or_msg = |r: Result<usize, weights::WeightError>| match r {
        Ok(v) => json!(v),
        Err(e) => json!({ "error": e.to_string() }),
    };
    json!({
        "algebra": a.reference().to_string(),
        "lambda": lambda.iter().map(json::rat_to_string).collect::<Vec<_>>(),
        "atypicality": ok_or_msg(weights::atypicality(a, lambda)),
        "defect_combinatorial": ok_or_msg(weights::defect_combinatorial(a)),
        "cohomological_defect": weights::cohomological_defect(a, max_degree),
        "cohomological_defect_through": max_degree,
    })
}

fn pipeline(cli: &Cli, alg: &AlgebraArgs, max_degree: u32, samples: usize) -> Result<Status> {
    let dir = cli
        .out
        .clone()
        .ok_or_else(|| anyhow!("pipeline needs --out DIR"))?;
    fs::create_dir_all(&dir)?;
    let r = algebra_ref(alg).context("stage build")?;
    let AlgebraRef::Base(family, params) = &r else {
        bail!("stage build: pipeline takes a base algebra");
    };
    let polar = tables::polar_stable(*family, params)
        .map(|p| p.polar)
        .unwrap_or(false);
    let mut stages: Vec<Value> = Vec::new();
    let mut skipped: Vec<Value> = Vec::new();
    let mut write = |name: &str, v: &dyn erased::Json| -> Result<()> {
        let file = format!("{name}.json");
        fs::write(dir.join(&file), v.sorted()?).with_context(|| format!("stage {name}"))?;
        stages.push(json!({ "stage": name, "artifact": file }));
        Ok(())
    };
    let a = Arc::new(build(*family, params).context("stage build")?);
    let mut status = Status::Ok;
    if polar {
        write("build", &AlgebraJson::from(a.as_ref()))?;
        let (v, ok) = validate(&a);
        write("validate", &v)?;
        if !ok {
            bail!("stage validate: structure constants fail the axioms");
        }
    }
    let (v, matched) = invariants_report(&a, max_degree, count_mode(cli)?);
    write("invariants", &v)?;
    if !matched {
        status = Status::Mismatch;
    }
    let d = detecting::detect(&a, None).context("stage detect")?;
    write("detect", &d)?;
    if polar {
        let v = cohom_report(&a, Pair::E, "trivial", max_degree).context("stage cohom")?;
        write("cohom", &v)?;
        let e = pair_algebra(&a, Pair::E).context("stage rankvar")?;
        let v =
            rankvar_report(&Supermodule::trivial(e), samples, cli.seed).context("stage rankvar")?;
        write("rankvar", &v)?;
    } else {
        for s in ["build", "validate", "cohom", "rankvar"] {
            skipped.push(
                json!({ "stage": s, "reason": "polar path only; action on g₁ is not polar" }),
            );
        }
    }
    let manifest = json!({
        "algebra": r.to_string(),
        "seed": cli.seed,
        "max_degree": max_degree,
        "stages": stages,
        "skipped": skipped,
    });
    fs::write(
        dir.join("manifest.json"),
        json::to_sorted_string(&manifest)?,
    )?;
    Ok(status)
}

/// Object-safe wrapper so stage artifacts of different types share a writer.
mod erased {
    pub trait Json {
        fn sorted(&self) -> anyhow::Result<String>;
    }

    impl<T: serde::Serialize> Json for T {
        fn sorted(&self) -> anyhow::Result<String> {
            Ok(supervar::json::to_sorted_string(self)?)
        }
    }
}
