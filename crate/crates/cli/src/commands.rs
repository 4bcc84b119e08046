use std::path::Path;

use serde_json::{json, Value};
use thiserror::Error;

use ncsym::compositions::check_c_symmetry;
use ncsym::diffops::OperatorSystem;
use ncsym::inversion::{self, InversionMethod};
use ncsym::jacobian::{run_batch, run_jc_experiment, JcSpec};
use ncsym::nsym::{verify_identity, DLogBasis, FamilyKind, FamilyTable, IdentityId};
use ncsym::par::Exec;
use ncsym::rational::{format_q, parse_q, Q};
use ncsym::series::{parse_field, Poly};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: malformed JSON: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error(transparent)]
    Engine(#[from] ncsym::Error),
}

/// A report plus whether every check in it passed.
pub struct Outcome {
    pub report: Value,
    pub ok: bool,
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: display.clone(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: display, source })
}

fn read_field(path: &Path) -> Result<Vec<Poly<Q>>, CliError> {
    Ok(parse_field(&read_json(path)?)?)
}

/// Parses `all` or one name into a list of selectors.
fn selectors<T: std::str::FromStr<Err = String> + Copy>(name: &str, all: &[T]) -> Result<Vec<T>, CliError> {
    if name.eq_ignore_ascii_case("all") {
        Ok(all.to_vec())
    } else {
        Ok(vec![name.parse::<T>().map_err(CliError::Usage)?])
    }
}

pub fn identities(max_weight: usize, only: &[String]) -> Result<Outcome, CliError> {
    let ids = if only.is_empty() {
        IdentityId::ALL.to_vec()
    } else {
        only.iter()
            .map(|s| s.trim().parse::<IdentityId>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Usage(e.to_string()))?
    };
    let table = FamilyTable::new(max_weight);
    let mut reports = Vec::with_capacity(ids.len());
    for id in ids {
        reports.push(verify_identity(&table, id, Exec::Parallel)?);
    }
    let symmetry = check_c_symmetry(max_weight);
    let ok = reports.iter().all(|r| r.passed()) && symmetry.is_none();
    let report = json!({
        "max_weight": max_weight,
        "identities": reports,
        "c_symmetry": match &symmetry {
            None => json!({"status": "pass"}),
            Some((i, k)) => json!({"status": "fail", "I": i.to_string(), "K": k.to_string()}),
        },
        "all_pass": ok,
    });
    Ok(Outcome { report, ok })
}

pub fn families(max_weight: usize, only: &[String]) -> Result<Outcome, CliError> {
    let kinds = if only.is_empty() {
        FamilyKind::ALL.to_vec()
    } else {
        only.iter()
            .map(|s| s.trim().parse::<FamilyKind>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(CliError::Usage)?
    };
    let table = FamilyTable::new(max_weight);
    let residuals = table.axiom_residuals();
    let relations: Vec<Value> = residuals
        .entries
        .iter()
        .map(|(name, r)| json!({"relation": name, "holds": r.is_zero()}))
        .collect();
    let ok = residuals.all_zero();
    let report = json!({
        "max_weight": max_weight,
        "families": kinds.iter().map(|k| table.family(*k).to_json()).collect::<Vec<_>>(),
        "relations": relations,
    });
    Ok(Outcome { report, ok })
}

fn parse_method(name: &str) -> Result<Vec<InversionMethod>, CliError> {
    if name.eq_ignore_ascii_case("all") {
        let mut all = InversionMethod::FORMULAS.to_vec();
        all.push(InversionMethod::Oracle);
        Ok(all)
    } else {
        Ok(vec![name.parse().map_err(CliError::Usage)?])
    }
}

pub fn invert(map: &Path, order: usize, method: &str) -> Result<Outcome, CliError> {
    let methods = parse_method(method)?;
    let sys = OperatorSystem::new(read_field(map)?, order)?;
    let mut reports = Vec::with_capacity(methods.len());
    for m in methods {
        reports.push(inversion::invert(&sys, m)?);
    }
    let ok = reports.iter().all(|r| r.agrees_with_oracle);
    let report = json!({
        "order": order,
        "reports": reports,
        "all_agree": ok,
    });
    Ok(Outcome { report, ok })
}

pub fn dlog(map: &Path, order: usize, basis: &str, bch_depth: Option<usize>) -> Result<Outcome, CliError> {
    let bases = selectors(basis, &DLogBasis::ALL)?;
    let sys = OperatorSystem::new(read_field(map)?, order)?;
    let results = bases
        .iter()
        .map(|b| inversion::dlog(&sys, *b))
        .collect::<Result<Vec<_>, _>>()?;
    let reference = &results[0];
    let bases_agree = results.iter().all(|d| d.a_t == reference.a_t);
    let exp_ok = inversion::dlog_exp_matches_inverse(&sys, reference);
    let mut report = json!({
        "order": order,
        "results": results,
        "bases_agree": bases_agree,
        "exp_matches_inverse": exp_ok,
    });
    let mut ok = bases_agree && exp_ok;
    if let Some(r) = bch_depth {
        let bch = inversion::dlog_bch(&sys, r)?;
        let valid_to = order.min(r);
        let agrees = (1..=valid_to).all(|m| bch.slice(m) == reference.slice(m));
        ok &= agrees;
        report["bch"] = json!({
            "result": bch,
            "valid_to": valid_to,
            "agrees": agrees,
        });
    }
    Ok(Outcome { report, ok })
}

pub fn flow(map: &Path, order: usize, basis: &str, u: Option<&str>) -> Result<Outcome, CliError> {
    let bases = selectors(basis, &FamilyKind::ALL)?;
    let u = u.map(parse_q).transpose()?;
    let sys = OperatorSystem::new(read_field(map)?, order)?;
    let flows = bases
        .iter()
        .map(|b| inversion::flow(&sys, *b))
        .collect::<Result<Vec<_>, _>>()?;
    let reference = &flows[0];
    let bases_agree = flows.iter().all(|f| f.components == reference.components);
    let checks = inversion::check_flow(&sys, reference, &[-2, -1, 0, 1, 2, 3])?;
    let ok = bases_agree && checks.all();
    let mut report = json!({
        "order": order,
        "bases": bases.iter().map(|b| b.operator_name()).collect::<Vec<_>>(),
        "bases_agree": bases_agree,
        "checks": checks,
    });
    match &u {
        Some(v) => {
            report["u"] = json!(format_q(v));
            report["map"] = reference.at(v).to_json();
        }
        None => report["flow"] = reference.to_json()["flow"].clone(),
    }
    Ok(Outcome { report, ok })
}

pub fn jc(map: Option<&Path>, generate: Option<&[u64; 3]>, batch: Option<&Path>, order: usize) -> Result<Outcome, CliError> {
    let spec = |g: &[u64; 3]| JcSpec::Generate {
        n: g[0] as usize,
        d: g[1] as usize,
        seed: g[2],
    };
    if let Some(path) = batch {
        let value = read_json(path)?;
        let items = value
            .as_array()
            .ok_or_else(|| CliError::Usage(format!("{}: a batch file must hold a JSON array", path.display())))?;
        let specs = items.iter().map(JcSpec::from_json).collect::<Result<Vec<_>, _>>()?;
        let experiments = run_batch(&specs, order, Exec::Parallel)?;
        let ok = experiments.iter().all(|e| e.consistent());
        let report = json!({"order": order, "experiments": experiments, "all_consistent": ok});
        return Ok(Outcome { report, ok });
    }
    let h = match (map, generate) {
        (Some(path), _) => read_field(path)?,
        (None, Some(g)) => spec(g).field()?,
        (None, None) => return Err(CliError::Usage("jc needs --map, --generate n,d,seed or --batch".into())),
    };
    let e = run_jc_experiment(&h, order);
    let ok = e.consistent();
    let report = serde_json::to_value(&e).expect("experiment serializes");
    Ok(Outcome { report, ok })
}
