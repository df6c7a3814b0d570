use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use fovec::cecomplex::{
    build_absolute_complex, build_relative_complex, CeError, CochainComplexBlock, ExplicitModule, ReductivePart,
};
use fovec::cocycles::{a_cocycles, is_exact, w1_differential, wheel_block, xi_block, xi_lambda, graph_cochain, WheelGraph};
use fovec::combinat::{catalan, grassmannian_poincare, partitions, Partition, Polynomial};
use fovec::liealg::{AlgebraFamily, MatrixAlgebra, ModuleSpec};
use fovec::obstruction::{obstruction_bound, subflag_degrees};
use fovec::parabolic::{verify_b_vanishing, verify_grassmannian_degeneration, ParabolicError, ParabolicSetup};
use fovec::verify::{run_all, Level};
use fovec::weyltrunc::{gl1_flag_cohomology, poincare_formula, relative_flag_poincare, TransgressionComplex};

use crate::{CocycleKind, Command, Family, ModuleKind, ParabolicCheck, SeriesKind};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    InvalidParameters(String),
    #[error("{0}")]
    Violated(String),
    #[error("{0}")]
    Computation(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::InvalidParameters(_) => "invalid_parameters",
            CliError::Violated(_) => "verification_failed",
            CliError::Computation(_) => "computation_error",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::InvalidParameters(_) => 2,
            CliError::Violated(_) => 1,
            CliError::Computation(_) => 1,
        }
    }
}

impl From<CeError> for CliError {
    fn from(e: CeError) -> Self {
        match e {
            CeError::DSquaredNonzero { .. } => CliError::Violated(e.to_string()),
            _ => CliError::Computation(e.to_string()),
        }
    }
}

impl From<ParabolicError> for CliError {
    fn from(e: ParabolicError) -> Self {
        match e {
            ParabolicError::VanishingViolated(_) | ParabolicError::DegenerationViolated(_) => {
                CliError::Violated(e.to_string())
            }
            ParabolicError::InvalidInput(_) => CliError::InvalidParameters(e.to_string()),
            ParabolicError::Complex(c) => c.into(),
        }
    }
}

fn comp<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Computation(e.to_string())
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::InvalidParameters(msg()))
    }
}

fn range(name: &str, v: usize, lo: usize, hi: usize) -> Result<(), CliError> {
    check((lo..=hi).contains(&v), || format!("--{name} must lie in {lo}..={hi}, got {v}"))
}

fn shape_ok(shape: &[usize], max_total: usize) -> Result<(), CliError> {
    check(!shape.is_empty(), || "--shape is required".into())?;
    check(shape.iter().all(|&b| b > 0), || "block sizes must be positive".into())?;
    let total: usize = shape.iter().sum();
    check(total <= max_total, || format!("shape of total size {total} exceeds {max_total}"))
}

fn parse_lambda(parts: &[String]) -> Result<Partition, CliError> {
    let v = parts
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>().map_err(|_| CliError::InvalidParameters(format!("bad part {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Partition::new(v).map_err(|e| CliError::InvalidParameters(e.to_string()))
}

/// Checks parameter ranges and returns the command name and canonical parameters.
pub fn validate(cmd: &Command) -> Result<(&'static str, Value), CliError> {
    Ok(match cmd {
        Command::WnCohomology { n, sym, max_degree, relative } => {
            range("n", *n, 1, 3)?;
            range("sym", *sym, 0, 6)?;
            range("max-degree", *max_degree, 0, 12)?;
            ("wn-cohomology", json!({ "n": n, "sym": sym, "max_degree": max_degree, "relative": relative }))
        }
        Command::FlagCohomology { shape, sym, max_degree, relative } => {
            shape_ok(shape, 4)?;
            range("sym", *sym, 0, 4)?;
            range("max-degree", *max_degree, 0, 12)?;
            ("flag-cohomology", json!({ "shape": shape, "sym": sym, "max_degree": max_degree, "relative": relative }))
        }
        Command::Relative { family, n, m, shape, sym, max_degree } => {
            range("sym", *sym, 0, 6)?;
            range("max-degree", *max_degree, 0, 12)?;
            let fam = match family {
                Family::W => {
                    let n = n.ok_or_else(|| CliError::InvalidParameters("--n is required for family w".into()))?;
                    range("n", n, 1, 3)?;
                    json!({ "family": "w", "n": n })
                }
                Family::Flag => {
                    shape_ok(shape, 4)?;
                    json!({ "family": "flag", "shape": shape })
                }
                Family::Wl => {
                    let (Some(m), Some(n)) = (m, n) else {
                        return Err(CliError::InvalidParameters("--m and --n are required for family wl".into()));
                    };
                    range("m", *m, 1, 3)?;
                    range("n", *n, 1, 3)?;
                    json!({ "family": "wl", "m": m, "n": n })
                }
            };
            let mut p = fam.as_object().cloned().unwrap_or_default();
            p.insert("sym".into(), json!(sym));
            p.insert("max_degree".into(), json!(max_degree));
            ("relative", Value::Object(p))
        }
        Command::WlCohomology { m, n, max_degree, absolute } => {
            range("m", *m, 1, 3)?;
            range("n", *n, 1, 3)?;
            range("max-degree", *max_degree, 0, 12)?;
            ("wl-cohomology", json!({ "m": m, "n": n, "max_degree": max_degree, "absolute": absolute }))
        }
        Command::WeylGl1 { big_n } => {
            range("N", *big_n, 1, 7)?;
            ("weyl-gl1", json!({ "N": big_n }))
        }
        Command::Transgression { shape } => {
            shape_ok(shape, 6)?;
            ("transgression", json!({ "shape": shape }))
        }
        Command::ParabolicVerify { m, n, lambda, module, check: which } => {
            range("m", *m, 1, 3)?;
            range("n", *n, 1, 3)?;
            range("m+n", m + n, 2, 4)?;
            let lam = parse_lambda(lambda)?;
            check(lam.size() <= 4, || "|λ| must be at most 4".into())?;
            check(lam.len() <= *n, || format!("λ has more than {n} rows"))?;
            (
                "parabolic-verify",
                json!({ "m": m, "n": n, "lambda": lam.parts(), "module": module_name(*module), "check": format!("{which:?}").to_lowercase() }),
            )
        }
        Command::Series { kind, big_n, m, n, shape } => {
            let p = match kind {
                SeriesKind::Flag | SeriesKind::Catalan => {
                    let big_n = big_n.ok_or_else(|| CliError::InvalidParameters("--N is required".into()))?;
                    range("N", big_n, 1, 30)?;
                    json!({ "kind": format!("{kind:?}").to_lowercase(), "N": big_n })
                }
                SeriesKind::Grassmannian => {
                    let (Some(m), Some(n)) = (m, n) else {
                        return Err(CliError::InvalidParameters("--m and --n are required".into()));
                    };
                    range("m", *m, 0, 12)?;
                    range("n", *n, 0, 12)?;
                    json!({ "kind": "grassmannian", "m": m, "n": n })
                }
                SeriesKind::RelativeFlag => {
                    shape_ok(shape, 20)?;
                    json!({ "kind": "relative-flag", "shape": shape })
                }
            };
            ("series", p)
        }
        Command::CocycleVerify { kind, m, n, r } => {
            let p = match kind {
                CocycleKind::A => {
                    range("m", *m, 1, 10)?;
                    json!({ "kind": "a", "m": m })
                }
                CocycleKind::Wheel => {
                    range("r", *r, 1, 3)?;
                    range("n", *n, 1, 2)?;
                    json!({ "kind": "wheel", "r": r, "n": n })
                }
                CocycleKind::Xi => {
                    range("n", *n, 1, 2)?;
                    range("m", *m, 1, if *n == 1 { 4 } else { 1 })?;
                    json!({ "kind": "xi", "n": n, "m": m })
                }
            };
            ("cocycle-verify", p)
        }
        Command::VerifyAll { level } => {
            level.parse::<Level>().map_err(CliError::InvalidParameters)?;
            ("verify-all", json!({ "level": level }))
        }
        Command::Obstruction { n } => {
            check((2..=1_000_000).contains(n), || format!("--n must lie in 2..=1000000, got {n}"))?;
            ("obstruction", json!({ "n": n }))
        }
    })
}

fn module_name(k: ModuleKind) -> &'static str {
    match k {
        ModuleKind::Trivial => "trivial",
        ModuleKind::Tautological => "tautological",
        ModuleKind::Adjoint => "adjoint",
    }
}

fn gl_module(k: ModuleKind, n: usize) -> Result<ExplicitModule, CliError> {
    let gl = MatrixAlgebra::Gl(n).fields();
    Ok(match k {
        ModuleKind::Trivial => ExplicitModule::trivial(n, gl),
        ModuleKind::Tautological => ExplicitModule::tautological(n),
        ModuleKind::Adjoint => ExplicitModule::adjoint(n, gl)?,
    })
}

fn dims_json(dims: &BTreeMap<usize, usize>) -> Value {
    Value::Object(dims.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<Map<_, _>>())
}

fn poly_json(p: &Polynomial) -> Value {
    json!(p.coeffs())
}

fn spec(sym: usize) -> Result<ModuleSpec, CliError> {
    if sym == 0 {
        Ok(ModuleSpec::Trivial)
    } else {
        ModuleSpec::sym(sym).map_err(comp)
    }
}

fn complex_result(block: &CochainComplexBlock) -> Result<Value, CliError> {
    let h = block.cohomology_map()?;
    Ok(json!({
        "cohomology": dims_json(&h),
        "cochain_dims": block.dims()[..=block.p_max()],
        "euler_characteristic": block.euler_characteristic(),
    }))
}

fn family_complex(family: &AlgebraFamily, sym: usize, max_degree: usize, relative: bool) -> Result<Value, CliError> {
    let block = if relative {
        build_relative_complex(family, &ReductivePart::AllBlocks, spec(sym)?, max_degree)?
    } else {
        build_absolute_complex(family, spec(sym)?, max_degree)?
    };
    complex_result(&block)
}

pub fn run(cmd: &Command) -> Result<Value, CliError> {
    match cmd {
        Command::WnCohomology { n, sym, max_degree, relative } => {
            family_complex(&AlgebraFamily::w(*n).map_err(comp)?, *sym, *max_degree, *relative)
        }
        Command::FlagCohomology { shape, sym, max_degree, relative } => {
            family_complex(&AlgebraFamily::flag(shape.clone()).map_err(comp)?, *sym, *max_degree, *relative)
        }
        Command::Relative { family, n, m, shape, sym, max_degree } => {
            let fam = match family {
                Family::W => AlgebraFamily::w(n.unwrap_or(1)),
                Family::Flag => AlgebraFamily::flag(shape.clone()),
                Family::Wl => AlgebraFamily::wl(m.unwrap_or(1), n.unwrap_or(1)),
            }
            .map_err(comp)?;
            family_complex(&fam, *sym, *max_degree, true)
        }
        Command::WlCohomology { m, n, max_degree, absolute } => {
            family_complex(&AlgebraFamily::wl(*m, *n).map_err(comp)?, 0, *max_degree, !absolute)
        }
        Command::WeylGl1 { big_n } => {
            let (dims, basis) = gl1_flag_cohomology(*big_n).map_err(|e| CliError::Violated(e.to_string()))?;
            let formula = poincare_formula(*big_n);
            Ok(json!({
                "cohomology": dims_json(&dims),
                "poincare": poly_json(&formula),
                "formula_matches": Polynomial::from_dims(&dims) == formula,
                "basis": basis.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }))
        }
        Command::Transgression { shape } => {
            let t = TransgressionComplex::new(shape.clone()).map_err(comp)?;
            let h = t.cohomology().map_err(comp)?;
            Ok(json!({
                "cohomology": dims_json(&h),
                "top_degree": t.top_degree(),
                "relative_poincare": poly_json(&relative_flag_poincare(shape)),
            }))
        }
        Command::ParabolicVerify { m, n, lambda, module, check: which } => {
            let l = gl_module(*module, m + n)?;
            let mut out = Map::new();
            if matches!(which, ParabolicCheck::Vanishing | ParabolicCheck::All) {
                let setup = ParabolicSetup::new(*m, *n)?;
                let r = verify_b_vanishing(&setup, &parse_lambda(lambda)?, &l)?;
                out.insert(
                    "vanishing".into(),
                    json!({ "cohomology": dims_json(&r.cohomology), "expected_h0": r.expected_h0, "passed": true }),
                );
            }
            if matches!(which, ParabolicCheck::Degeneration | ParabolicCheck::All) {
                let r = verify_grassmannian_degeneration(*m, *n, &l)?;
                let e1: Vec<Value> =
                    r.e1.entries.iter().map(|(&(p, q), &d)| json!({ "p": p, "q": q, "dim": d })).collect();
                out.insert(
                    "degeneration".into(),
                    json!({ "e1": e1, "diagonal": r.diagonal(), "expected_diagonal": r.expected_diagonal, "passed": true }),
                );
            }
            Ok(Value::Object(out))
        }
        Command::Series { kind, big_n, m, n, shape } => Ok(match kind {
            SeriesKind::Flag => json!({ "poincare": poly_json(&poincare_formula(big_n.unwrap_or(1))) }),
            SeriesKind::Catalan => {
                let n = big_n.unwrap_or(1) as u64;
                json!({ "catalan": (0..=n).map(|k| catalan(k).to_string()).collect::<Vec<_>>() })
            }
            SeriesKind::Grassmannian => {
                json!({ "poincare": poly_json(&grassmannian_poincare(m.unwrap_or(0), n.unwrap_or(0))) })
            }
            SeriesKind::RelativeFlag => json!({ "poincare": poly_json(&relative_flag_poincare(shape)) }),
        }),
        Command::CocycleVerify { kind, m, n, r } => cocycle(*kind, *m, *n, *r),
        Command::VerifyAll { level } => {
            let level: Level = level.parse().map_err(CliError::InvalidParameters)?;
            let results = run_all(level);
            let passed = results.iter().all(|r| r.passed);
            Ok(json!({
                "passed": passed,
                "criteria": results
                    .iter()
                    .map(|r| json!({ "id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail }))
                    .collect::<Vec<_>>(),
            }))
        }
        Command::Obstruction { n } => {
            let (top, bound) = obstruction_bound(*n);
            let (max, at) = subflag_degrees(*n);
            Ok(json!({
                "top_degree": top,
                "subflag_bound": bound,
                "enumerated_max": max,
                "attained_at": at,
                "passed": max == bound,
            }))
        }
    }
}

fn cocycle(kind: CocycleKind, m: usize, n: usize, r: usize) -> Result<Value, CliError> {
    match kind {
        CocycleKind::A => {
            let (a2, a3) = a_cocycles(m);
            let entry = |c: &fovec::cocycles::PolyChain| {
                let closed = w1_differential(c).is_zero();
                let nontrivial = !is_exact(c);
                json!({ "chain": c.to_string(), "closed": closed, "nontrivial": nontrivial })
            };
            let (e2, e3) = (entry(&a2), entry(&a3));
            let passed = [&e2, &e3].iter().all(|e| e["closed"] == true && e["nontrivial"] == true);
            Ok(json!({ "a2": e2, "a3": e3, "passed": passed }))
        }
        CocycleKind::Wheel => {
            let block = wheel_block(n, 2 * r).map_err(comp)?;
            let c = graph_cochain(&WheelGraph::wheel(r), &block).map_err(comp)?;
            let closed = block.is_cocycle(2 * r, &c.vector);
            let zero = c.is_zero();
            let nontrivial = !zero && block.rank_modulo_coboundaries(2 * r, std::slice::from_ref(&c.vector)) == 1;
            Ok(json!({
                "degree": 2 * r,
                "closed": closed,
                "zero": zero,
                "nontrivial": nontrivial,
                "passed": closed && zero == (r > n),
            }))
        }
        CocycleKind::Xi => {
            let block = xi_block(n, m).map_err(comp)?;
            let h = block.cohomology()?;
            let mut classes = Vec::new();
            let mut vectors = Vec::new();
            let mut all_closed = true;
            for lambda in partitions(m + n) {
                let xi = xi_lambda(&lambda, n, m, &block).map_err(comp)?;
                let closed = block.is_cocycle(2 * n, &xi.vector);
                all_closed &= closed;
                classes.push(json!({
                    "lambda": lambda.parts(),
                    "closed": closed,
                    "warning": xi.warning.map(|w| w.to_string()),
                }));
                if lambda.len() <= n {
                    vectors.push(xi.vector);
                }
            }
            let rank = block.rank_modulo_coboundaries(2 * n, &vectors);
            let h_top = h.get(2 * n).copied().unwrap_or(0);
            Ok(json!({
                "degree": 2 * n,
                "classes": classes,
                "span_rank": rank,
                "cohomology_dim": h_top,
                "passed": all_closed && rank == h_top,
            }))
        }
    }
}

/// True if the result reports a failed check anywhere.
pub fn verification_failed(v: &Value) -> bool {
    match v {
        Value::Object(m) => {
            m.get("passed") == Some(&Value::Bool(false))
                || m.get("formula_matches") == Some(&Value::Bool(false))
                || m.values().any(verification_failed)
        }
        Value::Array(a) => a.iter().any(verification_failed),
        _ => false,
    }
}
