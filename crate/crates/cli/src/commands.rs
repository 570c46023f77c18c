//! Command implementations. Each returns the fully rendered output; the
//! binary only parses arguments, prints, and maps errors to exit codes.

use std::path::Path;

use serde_json::Value;

use triqwit_core::catalog::{example1_setting, example2_setting, make, Family, StateKind};
use triqwit_core::mixed_witness::{evaluate, verdict, MixedVerdict, WitnessId};
use triqwit_core::observables::{BlochVector, WitnessSetting};
use triqwit_core::optimizer::{minimize_witness, scan_witness, GridAxis, OptimizerConfig};
use triqwit_core::pure_witness::{classify_pure, PureLabel};
use triqwit_core::measurement::{estimate_witness, sample_expectation, ProductObservable};
use triqwit_core::qstate::DensityMatrix;

use crate::error::{CliError, CliResult};
use crate::formats::{SettingFile, StateFile};
use crate::ledger::{
    sigma_b_t1_closed_form, threshold_reference, witness_reference, Ledger, LEDGER_VERSION,
};
use crate::report::Report;

/// A state argument resolved to a value, remembering its family identity
/// when it had one (used for reference-ledger matching).
pub struct ResolvedState {
    pub kind: StateKind,
    pub family: Option<(Family, Vec<f64>)>,
    pub display: String,
}

/// Resolves `name[:p1[:p2]]`, `@file`, or a bare path. Named families win
/// over paths; `@` forces file interpretation.
pub fn resolve_state(arg: &str) -> CliResult<ResolvedState> {
    if let Some(path) = arg.strip_prefix('@') {
        return state_from_file(Path::new(path));
    }
    let mut parts = arg.split(':');
    let head = parts.next().unwrap_or_default();
    if let Some(family) = Family::parse(head) {
        let params: Vec<f64> = parts
            .map(|p| {
                p.parse::<f64>()
                    .map_err(|_| CliError::Input(format!("bad parameter '{p}' in '{arg}'")))
            })
            .collect::<CliResult<_>>()?;
        let kind = make(family, &params)?;
        return Ok(ResolvedState {
            kind,
            family: Some((family, params)),
            display: arg.to_string(),
        });
    }
    if Path::new(arg).exists() {
        return state_from_file(Path::new(arg));
    }
    Err(CliError::Input(format!(
        "unknown state '{arg}': not a named family and no such file"
    )))
}

fn state_from_file(path: &Path) -> CliResult<ResolvedState> {
    let file = StateFile::read(path)?;
    let family = match &file {
        StateFile::Family { family, params } => {
            Family::parse(family).map(|f| (f, params.clone()))
        }
        _ => None,
    };
    Ok(ResolvedState {
        kind: file.to_state()?,
        family,
        display: path.display().to_string(),
    })
}

/// Resolves a setting argument: a named setting (`pauli`, `example1`,
/// `example2`), `@file`, or a bare path to a setting file.
pub fn resolve_setting(arg: &str) -> CliResult<(WitnessSetting, String)> {
    match arg.to_ascii_lowercase().as_str() {
        "pauli" => return Ok((WitnessSetting::pauli(), "pauli".into())),
        "example1" => return Ok((example1_setting(), "example1".into())),
        "example2" => return Ok((example2_setting(), "example2".into())),
        _ => {}
    }
    let path = arg.strip_prefix('@').unwrap_or(arg);
    if Path::new(path).exists() {
        let setting = SettingFile::read(Path::new(path))?.to_setting()?;
        return Ok((setting, path.to_string()));
    }
    Err(CliError::Input(format!(
        "unknown setting '{arg}': expected pauli, example1, example2 or a setting file"
    )))
}

pub fn parse_witness(arg: &str) -> CliResult<WitnessId> {
    WitnessId::parse(arg).ok_or_else(|| {
        CliError::Input(format!(
            "unknown witness '{arg}': expected T1, T2, T3, F1, F2, F3 or Fsum"
        ))
    })
}

fn label_text(label: PureLabel) -> String {
    match label {
        PureLabel::FullySeparable => "fully_separable".into(),
        PureLabel::Biseparable(cut) => format!("biseparable({})", cut.label()),
        PureLabel::GenuineEntangled => "genuine_entangled".into(),
    }
}

pub fn classify_pure_cmd(state: &str, tol: f64, machine: bool) -> CliResult<String> {
    let resolved = resolve_state(state)?;
    let psi = match &resolved.kind {
        StateKind::Pure(psi) => psi,
        StateKind::Mixed(_) => {
            return Err(CliError::Input(format!(
                "'{}' is a mixed state; classify-pure takes pure states only",
                resolved.display
            )))
        }
    };
    let result = classify_pure(psi, tol)?;
    let mut report = Report::new();
    report.push("state", resolved.display.clone());
    report.push("label", label_text(result.label));
    report.push_f64("g1", result.g_values[0]);
    report.push_f64("g2", result.g_values[1]);
    report.push_f64("g3", result.g_values[2]);
    report.push_f64("tol", result.tolerance);
    Ok(report.render(machine))
}

fn push_verdict(report: &mut Report, verdict: &MixedVerdict) {
    let flags = [
        ("not_sep_1|23_and_12|3", &verdict.pair_exclusions[0]),
        ("not_sep_2|13_and_12|3", &verdict.pair_exclusions[1]),
        ("not_sep_1|23_and_2|13", &verdict.pair_exclusions[2]),
    ];
    for (name, violation) in flags {
        report.push(name, violation.is_some());
        if let Some(v) = violation {
            report.push_f64(format!("{name}.value"), v.value);
        }
    }
    report.push("not_fully_separable", verdict.not_fully_separable());
    if let Some(v) = &verdict.f_negative {
        report.push("not_fully_separable.witness", v.witness.name());
        report.push_f64("not_fully_separable.value", v.value);
    }
    report.push("genuine_entangled", verdict.genuine_entangled());
    if let Some(v) = &verdict.sum_violation {
        report.push_f64("genuine_entangled.value", v.value);
    }
}

fn push_ledger(report: &mut Report, ledger: &Ledger) {
    if ledger.is_empty() {
        return;
    }
    report.push("ledger_version", LEDGER_VERSION);
    let entries: Vec<Value> = ledger
        .entries()
        .iter()
        .map(|e| {
            let mut obj = serde_json::Map::new();
            obj.insert("claim".into(), Value::String(e.claim.clone()));
            let num = |x: f64| {
                serde_json::Number::from_f64(x)
                    .map(Value::Number)
                    .unwrap_or(Value::Null)
            };
            obj.insert("computed".into(), num(e.computed));
            obj.insert("published".into(), num(e.published));
            obj.insert("delta".into(), num(e.delta));
            Value::Object(obj)
        })
        .collect();
    report.push("reference", Value::Array(entries));
}

pub fn witness_cmd(
    state: &str,
    witness: &str,
    setting: &str,
    tol: f64,
    machine: bool,
) -> CliResult<String> {
    let resolved = resolve_state(state)?;
    let id = parse_witness(witness)?;
    let (setting_value, setting_name) = resolve_setting(setting)?;
    let rho = resolved.kind.density();
    let value = evaluate(&rho, &setting_value, id);
    let battery = verdict(&rho, std::slice::from_ref(&setting_value), tol)?;

    let mut report = Report::new();
    report.push("state", resolved.display.clone());
    report.push("witness", id.name());
    report.push("setting", setting_name.clone());
    report.push_f64("value", value);
    if let Some(pair) = id.excluded_pair() {
        report.push("excludes_when_negative", pair);
    }
    push_verdict(&mut report, &battery);

    let mut ledger = Ledger::new();
    if let Some((family, params)) = &resolved.family {
        if let Some((claim, published)) =
            witness_reference(*family, params, id, &setting_name)
        {
            ledger.append(claim, value, published);
        }
    }
    push_ledger(&mut report, &ledger);
    Ok(report.render(machine))
}

pub fn parse_grid(arg: &str) -> CliResult<GridAxis> {
    let parts: Vec<&str> = arg.split(':').collect();
    if parts.len() != 4 {
        return Err(CliError::Input(format!(
            "grid '{arg}' must have the form name:lo:hi:step"
        )));
    }
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| CliError::Input(format!("bad number '{s}' in grid '{arg}'")))
    };
    Ok(GridAxis::new(
        parts[0],
        parse(parts[1])?,
        parse(parts[2])?,
        parse(parts[3])?,
    )?)
}

/// Formats a value with 12 significant digits.
fn sig12(value: f64) -> String {
    format!("{value:.11e}")
}

pub fn scan_cmd(
    family: &str,
    witness: &str,
    grids: &[String],
    setting: &str,
) -> CliResult<String> {
    let fam = Family::parse(family)
        .ok_or_else(|| CliError::Input(format!("unknown family '{family}'")))?;
    let id = parse_witness(witness)?;
    let (setting_value, _) = resolve_setting(setting)?;
    let axes: Vec<GridAxis> = grids.iter().map(|g| parse_grid(g)).collect::<CliResult<_>>()?;
    let rows = scan_witness(fam, &axes, id, &setting_value)?;

    let mut csv = String::new();
    let headers: Vec<String> = (1..=axes.len()).map(|i| format!("param{i}")).collect();
    csv.push_str(&headers.join(","));
    csv.push_str(",value\n");
    for row in rows {
        for p in &row.params {
            csv.push_str(&format!("{p},"));
        }
        csv.push_str(&sig12(row.value));
        csv.push('\n');
    }
    Ok(csv)
}

pub fn threshold_cmd(
    family: &str,
    witness: &str,
    target: f64,
    setting: &str,
    machine: bool,
) -> CliResult<String> {
    let fam = Family::parse(family)
        .ok_or_else(|| CliError::Input(format!("unknown family '{family}'")))?;
    if fam.param_names().len() != 1 {
        return Err(CliError::Input(format!(
            "threshold needs a one-parameter family; '{}' has {} parameter(s)",
            fam.name(),
            fam.param_names().len()
        )));
    }
    let id = parse_witness(witness)?;
    let (setting_value, setting_name) = resolve_setting(setting)?;
    let value_at = |t: f64| -> CliResult<f64> {
        let rho = match make(fam, &[t])? {
            StateKind::Pure(psi) => triqwit_core::qstate::outer(&psi),
            StateKind::Mixed(m) => m,
        };
        Ok(evaluate(&rho, &setting_value, id))
    };

    // monotonicity over 101 samples, with slack for round-off
    let samples: Vec<f64> = (0..=100)
        .map(|i| value_at(i as f64 / 100.0))
        .collect::<CliResult<_>>()?;
    let slack = 1e-12;
    let non_increasing = samples.windows(2).all(|w| w[1] <= w[0] + slack);
    let non_decreasing = samples.windows(2).all(|w| w[1] >= w[0] - slack);
    if !(non_increasing || non_decreasing) {
        return Err(CliError::Input(format!(
            "{} is not monotone in {} over [0,1]; no unique threshold",
            id.name(),
            fam.param_names()[0]
        )));
    }

    let g_lo = samples[0] - target;
    let g_hi = samples[100] - target;
    let root = if g_lo == 0.0 {
        0.0
    } else if g_hi == 0.0 {
        1.0
    } else if g_lo.signum() == g_hi.signum() {
        return Err(CliError::NoResult(format!(
            "no threshold: {} - ({target}) keeps the same sign on [0,1]",
            id.name()
        )));
    } else {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let lo_sign = g_lo.signum();
        while hi - lo > 1e-10 {
            let mid = 0.5 * (lo + hi);
            let g_mid = value_at(mid)? - target;
            if g_mid == 0.0 {
                lo = mid;
                hi = mid;
            } else if g_mid.signum() == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };

    let mut report = Report::new();
    report.push("family", fam.name());
    report.push("parameter", fam.param_names()[0]);
    report.push("witness", id.name());
    report.push("setting", setting_name);
    report.push_f64("target", target);
    report.push_f64("threshold", root);

    let mut ledger = Ledger::new();
    if let Some((claim, published)) = threshold_reference(fam, id, target) {
        ledger.append(claim, root, published);
    }
    push_ledger(&mut report, &ledger);
    Ok(report.render(machine))
}

pub fn optimize_cmd(
    state: &str,
    witness: &str,
    starts: usize,
    seed: u64,
    machine: bool,
) -> CliResult<String> {
    let resolved = resolve_state(state)?;
    let id = parse_witness(witness)?;
    let cfg = OptimizerConfig {
        starts,
        seed,
        ..Default::default()
    };
    let result = minimize_witness(&resolved.kind.density(), id, &cfg)?;
    let mut report = Report::new();
    report.push("state", resolved.display.clone());
    report.push("witness", id.name());
    report.push("starts", cfg.starts as u64);
    report.push("seed", cfg.seed);
    report.push_f64("best_value", result.best_value);
    report.push("best_start", result.best_start as u64);
    report.push("evaluations", result.evaluations);
    let angles: Vec<Value> = result
        .best_angles
        .iter()
        .map(|a| {
            serde_json::Number::from_f64(*a)
                .map(Value::Number)
                .unwrap_or(Value::Null)
        })
        .collect();
    report.push("best_angles_zyz", Value::Array(angles));
    Ok(report.render(machine))
}

/// Parses a three-letter Pauli product such as `ZZZ` or `ZIi`.
fn parse_pauli_product(arg: &str) -> Option<ProductObservable> {
    let chars: Vec<char> = arg.chars().collect();
    if chars.len() != 3 {
        return None;
    }
    let mut factors: [Option<BlochVector>; 3] = [None, None, None];
    for (i, ch) in chars.iter().enumerate() {
        factors[i] = match ch.to_ascii_uppercase() {
            'I' => None,
            'X' => Some(BlochVector::new(1.0, 0.0, 0.0).unwrap()),
            'Y' => Some(BlochVector::new(0.0, 1.0, 0.0).unwrap()),
            'Z' => Some(BlochVector::new(0.0, 0.0, 1.0).unwrap()),
            _ => return None,
        };
    }
    Some(ProductObservable { factors })
}

pub fn sample_cmd(
    state: &str,
    witness: &str,
    setting: &str,
    shots: u64,
    seed: u64,
    machine: bool,
) -> CliResult<String> {
    let resolved = resolve_state(state)?;
    let rho: DensityMatrix = resolved.kind.density();
    let mut report = Report::new();
    report.push("state", resolved.display.clone());

    if let Some(id) = WitnessId::parse(witness) {
        let (setting_value, setting_name) = resolve_setting(setting)?;
        let est = estimate_witness(&rho, id, &setting_value, shots, seed)?;
        report.push("witness", id.name());
        report.push("setting", setting_name);
        report.push_f64("estimate", est.value);
        report.push_f64("std_error", est.std_error);
        report.push("shots_per_setting", est.shots);
        report.push("settings_measured", est.components.len() as u64);
        report.push("resamples", est.resamples as u64);
        report.push("seed", seed);
        return Ok(report.render(machine));
    }
    if let Some(obs) = parse_pauli_product(witness) {
        let est = sample_expectation(&rho, &obs, shots, seed)?;
        report.push("observable", witness.to_ascii_uppercase());
        report.push_f64("mean", est.mean);
        report.push_f64("std_error", est.std_error);
        report.push("shots", est.shots);
        report.push("seed", seed);
        return Ok(report.render(machine));
    }
    Err(CliError::Input(format!(
        "'{witness}' is neither a witness id nor a three-letter Pauli product"
    )))
}

/// Worked-example closed form, re-exported for the acceptance suite.
pub fn sigma_b_closed_form(b: f64) -> f64 {
    sigma_b_t1_closed_form(b)
}
