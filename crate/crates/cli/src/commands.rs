use std::path::Path;

use semidomain::decide::{cross_check_with_oracle, decide_ed, mgr_like, msem, DecideError, DEFAULT_ORACLE_ORDER};
use semidomain::fixtures;
use semidomain::rees::KernelAnalysis;
use semidomain::semigroup::FiniteSemigroup;
use semidomain::terms::{parse_system, render_system, solve_system, PointSet};
use semidomain::translations::{bound_checks, sim_partition, Bound, BoundReport, BoundStatus};
use semidomain::witness::{defining_system, WitnessError};
use semidomain::{Decision, ReesSpec, Verdict};
use serde_json::json;

use crate::input::{self, rees_error};
use crate::{Budgets, CliError, Outcome};

/// Solutions listed in text mode before truncating.
const TEXT_LIST_LIMIT: usize = 1000;

/// Default limit on the system file `witness --out` writes. Rendering
/// unrolls shared subterms, so the text can be far larger than the term in
/// memory.
pub const DEFAULT_MAX_OUT_BYTES: u64 = 256 << 20;

fn decide_error(e: DecideError) -> CliError {
    match e {
        DecideError::Rees(e) => rees_error(e),
        DecideError::Term(e) => CliError::from_term(e),
        DecideError::Inconclusive { .. } | DecideError::OracleScale { .. } => CliError::Budget(e.to_string()),
    }
}

fn witness_error(e: WitnessError) -> CliError {
    match e {
        WitnessError::SweepBudgetExceeded { .. } => CliError::Budget(e.to_string()),
        WitnessError::ConstructionFailed(_) | WitnessError::NotDistinguishable { .. } => {
            CliError::Construction(e.to_string())
        }
        WitnessError::Term(e) => CliError::from_term(e),
        WitnessError::PointNotInDomain | WitnessError::ArityMismatch { .. } => CliError::validation(e.to_string()),
    }
}

fn decision(s: &FiniteSemigroup) -> Result<Decision, CliError> {
    decide_ed(s).map_err(decide_error)
}

fn decision_json(s: &FiniteSemigroup, d: &Decision) -> serde_json::Value {
    json!({
        "verdict": d.verdict,
        "certificate": d.certificate,
        "explanation": d.certificate.describe(s),
    })
}

fn names(s: &FiniteSemigroup, elems: impl IntoIterator<Item = u32>) -> Vec<String> {
    elems.into_iter().map(|a| s.name(a).to_string()).collect()
}

fn point_names(s: &FiniteSemigroup, p: &[u32]) -> String {
    format!("({})", names(s, p.iter().copied()).join(", "))
}

fn rees_shape(spec: &ReesSpec) -> serde_json::Value {
    let g = spec.group();
    json!({
        "lambda": spec.lambda_size(),
        "i": spec.i_size(),
        "group_order": g.order(),
        "order": spec.order(),
        "P": spec.rows().iter().map(|r| r.iter().map(|&x| g.name(x).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// JSON numbers are limited to 64 bits, so larger bounds become strings.
fn bound_json(b: &Bound) -> serde_json::Value {
    let value = match u64::try_from(b.value) {
        Ok(v) if !b.saturated => json!(v),
        _ if b.saturated => serde_json::Value::Null,
        _ => json!(b.value.to_string()),
    };
    json!({ "value": value, "saturated": b.saturated, "status": b.status })
}

fn bounds_json(r: &BoundReport) -> serde_json::Value {
    json!({
        "order": r.order,
        "kernel_order": r.kernel_order,
        "crude": bound_json(&r.crude),
        "refined": bound_json(&r.refined),
    })
}

fn bound_line(label: &str, b: &Bound, order: usize) -> String {
    let limit = if b.saturated { "overflow".to_string() } else { b.value.to_string() };
    let status = match b.status {
        BoundStatus::WithinBound => "holds",
        BoundStatus::ViolatesBound => "violated",
    };
    format!("{label} bound: |S| = {order} <= {limit}: {status}")
}

pub fn validate(path: &Path, budgets: Budgets) -> Result<Outcome, CliError> {
    let input = input::load(path, budgets.size_cap)?;
    let mut result = json!({ "valid": true, "order": input.semigroup.order() });
    let mut lines = vec!["valid: associative".to_string()];
    if let Some(spec) = &input.rees {
        result["rees"] = rees_shape(spec);
        lines.push(format!(
            "Rees spec: |G| = {}, |Λ| = {}, |I| = {}, materialized order {}",
            spec.group().order(),
            spec.lambda_size(),
            spec.i_size(),
            spec.order()
        ));
    }
    Ok(Outcome { input: Some(input.info()), result, lines })
}

pub fn analyze(path: &Path, budgets: Budgets) -> Result<Outcome, CliError> {
    let input = input::load(path, budgets.size_cap)?;
    let s = &input.semigroup;
    let ka = KernelAnalysis::of(s).map_err(rees_error)?;
    let spec = ka.spec();
    let kernel: Vec<String> = names(s, ka.kernel().iter());
    let matrix = spec.nonsingularity();
    let group = ka.group().find_zero_divisor();
    let partition = sim_partition(s, ka.kernel()).map_err(|e| CliError::Other(e.to_string()))?;
    let nontrivial: Vec<Vec<String>> =
        partition.classes.iter().filter(|c| c.len() > 1).map(|c| names(s, c.iter().copied())).collect();
    let bounds = bound_checks(s, &ka);
    let d = decision(s)?;

    let group_json = match group {
        None => json!({ "verdict": Verdict::Ed }),
        Some(w) => json!({
            "verdict": Verdict::NotEd,
            "zero_divisor": { "x": ka.group().name(w.x), "y": ka.group().name(w.y) },
        }),
    };
    let result = json!({
        "kernel": { "order": kernel.len(), "elements": kernel },
        "rees": rees_shape(spec),
        "matrix": matrix,
        "group": group_json,
        "sim": {
            "classes": partition.classes.len(),
            "trivial": partition.is_trivial(),
            "nontrivial_classes": nontrivial,
        },
        "bounds": bounds_json(&bounds),
        "decision": decision_json(s, &d),
    });

    let mut lines = Vec::new();
    if kernel.len() <= 16 {
        lines.push(format!("kernel: {} elements {{{}}}", kernel.len(), kernel.join(", ")));
    } else {
        lines.push(format!("kernel: {} elements", kernel.len()));
    }
    lines.push(format!(
        "Rees shape: |Λ| = {}, |I| = {}, |G| = {}",
        spec.lambda_size(),
        spec.i_size(),
        spec.group().order()
    ));
    for (k, row) in spec.rows().iter().enumerate() {
        let row: Vec<&str> = row.iter().map(|&x| spec.group().name(x)).collect();
        lines.push(format!("P row {}: [{}]", k + 1, row.join(", ")));
    }
    lines.push(format!("matrix: {matrix}"));
    lines.push(match group {
        None => "group: no zero-divisors".to_string(),
        Some(w) => format!("group: zero-divisor x = `{}`, y = `{}`", ka.group().name(w.x), ka.group().name(w.y)),
    });
    if partition.is_trivial() {
        lines.push(format!("~_K: trivial ({} classes)", partition.classes.len()));
    } else {
        lines.push(format!("~_K: {} classes, {} nontrivial", partition.classes.len(), nontrivial.len()));
        for class in nontrivial.iter().take(10) {
            lines.push(format!("  {{{}}}", class.join(", ")));
        }
    }
    lines.push(bound_line("crude", &bounds.crude, bounds.order));
    lines.push(bound_line("refined", &bounds.refined, bounds.order));
    lines.push(format!("verdict: {} ({})", d.verdict, d.certificate.describe(s)));
    Ok(Outcome { input: Some(input.info()), result, lines })
}

pub fn decide(path: &Path, oracle: bool, budgets: Budgets) -> Result<Outcome, CliError> {
    let input = input::load(path, budgets.size_cap)?;
    let s = &input.semigroup;
    let d = decision(s)?;
    d.verify(s).map_err(|e| CliError::Other(format!("certificate failed verification: {}", e.0)))?;
    let mut result = decision_json(s, &d);
    result["bounds"] = bounds_json(&d.bounds);
    let mut lines = vec![format!("verdict: {}", d.verdict), format!("certificate: {}", d.certificate.describe(s))];
    if oracle {
        let report =
            cross_check_with_oracle(s, DEFAULT_ORACLE_ORDER, budgets.closure, budgets.sweep).map_err(decide_error)?;
        result["oracle"] = json!({
            "verdict": report.oracle,
            "agreement": if report.agree { "Agree" } else { "Disagree" },
            "msem_size": report.msem_size,
            "closure_size": report.closure_size,
        });
        lines.push(format!(
            "oracle: {} (|M_sem| = {}, |acl(M_sem)| = {}): {}",
            report.oracle,
            report.msem_size,
            report.closure_size,
            if report.agree { "Agree" } else { "Disagree" }
        ));
        if !report.agree {
            return Err(CliError::Other(format!(
                "oracle disagrees: decision {}, oracle {}",
                report.decision, report.oracle
            )));
        }
    }
    Ok(Outcome { input: Some(input.info()), result, lines })
}

pub fn solve(semigroup: &Path, system_path: &Path, list: bool, budgets: Budgets) -> Result<Outcome, CliError> {
    let input = input::load(semigroup, budgets.size_cap)?;
    let s = &input.semigroup;
    let text = String::from_utf8(input::read(system_path)?)
        .map_err(|_| CliError::validation(format!("{} is not UTF-8", system_path.display())))?;
    let system = parse_system(&text, s).map_err(CliError::from_term)?;
    let solutions = solve_system(s, &system, budgets.sweep).map_err(CliError::from_term)?;
    let mut result = json!({
        "system": { "path": system_path.display().to_string(), "sha256": input::sha256_hex(text.as_bytes()), "arity": system.arity(), "equations": system.len() },
        "count": solutions.len(),
        "space": solutions.space().size(),
    });
    let mut lines = vec![format!(
        "{} equations in {} variables: {} of {} points are solutions",
        system.len(),
        system.arity(),
        solutions.len(),
        solutions.space().size()
    )];
    if list {
        let points: Vec<Vec<String>> = solutions.points().map(|p| names(s, p)).collect();
        for p in solutions.points().take(TEXT_LIST_LIMIT) {
            lines.push(format!("  {}", point_names(s, &p)));
        }
        if solutions.len() > TEXT_LIST_LIMIT {
            lines.push(format!("  ... {} more", solutions.len() - TEXT_LIST_LIMIT));
        }
        result["solutions"] = json!(points);
    }
    Ok(Outcome { input: Some(input.info()), result, lines })
}

fn target_set(
    s: &FiniteSemigroup,
    ka: &KernelAnalysis,
    set: &str,
    arity: Option<usize>,
    sweep: u64,
) -> Result<PointSet, CliError> {
    let check_arity = |m: PointSet| match arity {
        Some(n) if n != m.arity() => {
            Err(CliError::validation(format!("--arity {n} conflicts with the set's arity {}", m.arity())))
        }
        _ => Ok(m),
    };
    match set {
        "msem" => check_arity(msem(s, sweep).map_err(CliError::from_term)?),
        "mgr-like" => mgr_like(s, ka, arity.unwrap_or(2), sweep).map_err(CliError::from_term),
        path => check_arity(input::load_points(Path::new(path), s, sweep)?),
    }
}

pub fn witness(
    semigroup: &Path,
    set: &str,
    arity: Option<usize>,
    out: Option<&Path>,
    max_out_bytes: u64,
    budgets: Budgets,
) -> Result<Outcome, CliError> {
    let input = input::load(semigroup, budgets.size_cap)?;
    let s = &input.semigroup;
    if arity == Some(0) {
        return Err(CliError::validation("arity must be positive"));
    }
    let d = decision(s)?;
    if d.verdict == Verdict::NotEd {
        return Err(CliError::Construction(format!(
            "construction failed: S is not an equational domain: {}",
            d.certificate.describe(s)
        )));
    }
    let ka = KernelAnalysis::of(s).map_err(rees_error)?;
    let m = target_set(s, &ka, set, arity, budgets.sweep)?;
    let system = defining_system(s, &ka, &m, budgets.sweep).map_err(witness_error)?;
    let solutions = solve_system(s, &system, budgets.sweep).map_err(CliError::from_term)?;
    let verified = solutions == m;
    if !verified {
        return Err(CliError::Other(format!(
            "synthesized system has {} solutions, target has {} points",
            solutions.len(),
            m.len()
        )));
    }
    let header = format!("vars {}\n", system.arity()).len() as u128;
    let bytes = system.equations().iter().fold(header, |acc, eq| {
        acc.saturating_add(eq.lhs.rendered_len(s)).saturating_add(eq.rhs.rendered_len(s)).saturating_add(4)
    });
    let mut result = json!({
        "set": set,
        "arity": m.arity(),
        "target_size": m.len(),
        "equations": system.len(),
        "verified": verified,
        "system_bytes": u64::try_from(bytes).unwrap_or(u64::MAX),
    });
    let mut lines = vec![format!(
        "{} equations in {} variables define the {}-point set `{set}`: verified by exhaustive solve",
        system.len(),
        m.arity(),
        m.len()
    )];
    if let Some(out) = out {
        if bytes > max_out_bytes as u128 {
            return Err(CliError::Budget(format!(
                "system text would take {bytes} bytes, over the limit of {max_out_bytes} (see --max-out-bytes)"
            )));
        }
        let text = render_system(&system, s);
        std::fs::write(out, &text).map_err(|e| CliError::Other(format!("cannot write {}: {e}", out.display())))?;
        result["out"] = json!(out.display().to_string());
        result["system_sha256"] = json!(input::sha256_hex(text.as_bytes()));
        lines.push(format!("system written to {} ({} bytes)", out.display(), text.len()));
    }
    Ok(Outcome { input: Some(input.info()), result, lines })
}

fn fixture_semigroup(name: &str, param: Option<usize>) -> Result<FiniteSemigroup, CliError> {
    match param {
        None => fixtures::by_name(name).ok_or_else(|| CliError::validation(format!("unknown fixture `{name}`"))),
        Some(p) => fixtures::family(name, p)
            .ok_or_else(|| CliError::validation(format!("unknown family `{name}` or parameter {p} out of range"))),
    }
}

/// The JSON document for a fixture: a Cayley table, or a Rees spec with
/// `rees` (only for `rs240` and `rsing`).
pub fn fixture_document(name: &str, param: Option<usize>, rees: bool) -> Result<String, CliError> {
    let value = if rees {
        let spec = match (name.to_ascii_lowercase().as_str(), param) {
            ("rs240", None) => fixtures::rs240_spec(),
            ("rsing", None) => fixtures::rsing_spec(),
            _ => return Err(CliError::validation(format!("no Rees spec form for `{name}`"))),
        };
        serde_json::to_value(spec.to_file())
    } else {
        serde_json::to_value(fixture_semigroup(name, param)?.to_file())
    };
    Ok(serde_json::to_string(&value.expect("fixture serializes")).expect("fixture serializes"))
}

pub fn fixture(name: &str, param: Option<usize>, rees: bool, out: &Path) -> Result<Outcome, CliError> {
    let doc = fixture_document(name, param, rees)?;
    std::fs::write(out, &doc).map_err(|e| CliError::Other(format!("cannot write {}: {e}", out.display())))?;
    let result = json!({
        "fixture": name,
        "param": param,
        "format": if rees { "rees-spec" } else { "cayley" },
        "out": out.display().to_string(),
        "sha256": input::sha256_hex(doc.as_bytes()),
        "bytes": doc.len(),
    });
    let lines = vec![format!("wrote {} ({} bytes)", out.display(), doc.len())];
    Ok(Outcome { input: None, result, lines })
}
