//! End-to-end checks of the binary and the file formats: round-trips,
//! deterministic output, exit codes, and argument resolution.

use std::process::Command;

use triqwit_cli::commands::{resolve_state, scan_cmd};
use triqwit_cli::formats::{PartySpec, SettingFile, StateFile};

use triqwit_core::catalog::{self, StateKind};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_triqwit"))
}

#[test]
fn state_file_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    // a state with plenty of irrational entries
    let rho = catalog::sigma_b(0.37).unwrap();
    let path = dir.path().join("state.json");
    StateFile::from_state(&StateKind::Mixed(rho.clone()))
        .write(&path)
        .unwrap();
    let loaded = StateFile::read(&path).unwrap().to_state().unwrap();
    match loaded {
        StateKind::Mixed(back) => assert_eq!(back.matrix(), rho.matrix()),
        _ => panic!("kind changed in round trip"),
    }

    let psi = catalog::random_state(catalog::Generator::HaarPure, 3, 1);
    let path = dir.path().join("pure.json");
    StateFile::from_state(&psi).write(&path).unwrap();
    let loaded = StateFile::read(&path).unwrap().to_state().unwrap();
    assert_eq!(
        loaded.pure().unwrap().vector(),
        psi.pure().unwrap().vector()
    );
}

#[test]
fn setting_file_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let file = SettingFile {
        a: PartySpec::Named("pauli".into()),
        b: PartySpec::Euler {
            euler_zyz: [0.1234567890123456, 1.0471975511965976, -2.5],
        },
        c: PartySpec::Rotation {
            rotation: [[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]],
        },
    };
    let path = dir.path().join("setting.json");
    file.write(&path).unwrap();
    let loaded = SettingFile::read(&path).unwrap();
    assert_eq!(loaded, file);
    // and the loaded file builds the identical setting
    let a = file.to_setting().unwrap();
    let b = loaded.to_setting().unwrap();
    assert_eq!(a, b);
}

#[test]
fn family_reference_state_file_resolves() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fam.json");
    std::fs::write(&path, r#"{"kind":"family","family":"rho_w","params":[0.9]}"#).unwrap();
    let arg = format!("@{}", path.display());
    let resolved = resolve_state(&arg).unwrap();
    let direct = catalog::rho_w(0.9).unwrap();
    match resolved.kind {
        StateKind::Mixed(rho) => assert_eq!(rho.matrix(), direct.matrix()),
        _ => panic!("expected a mixed state"),
    }
    assert!(resolved.family.is_some());
}

#[test]
fn named_states_win_over_files() {
    let dir = tempfile::tempdir().unwrap();
    // a file literally called "ghz" holding a different state
    let path = dir.path().join("ghz");
    std::fs::write(
        &path,
        r#"{"kind":"family","family":"w","params":[]}"#,
    )
    .unwrap();
    let g1_of = |stdout: Vec<u8>| -> f64 {
        let text = String::from_utf8(stdout).unwrap();
        text.lines()
            .find(|l| l.starts_with("g1: "))
            .and_then(|l| l[4..].parse().ok())
            .unwrap_or_else(|| panic!("no g1 line in: {text}"))
    };
    let out = bin()
        .current_dir(dir.path())
        .args(["classify-pure", "ghz"])
        .output()
        .unwrap();
    assert!(out.status.success());
    // GHZ has g values 1/4, the W file would give 2/9
    assert!((g1_of(out.stdout) - 0.25).abs() < 1e-12);
    // the explicit @ prefix forces the file
    let out = bin()
        .current_dir(dir.path())
        .args(["classify-pure", "@ghz"])
        .output()
        .unwrap();
    assert!((g1_of(out.stdout) - 2.0 / 9.0).abs() < 1e-12);
}

#[test]
fn scan_csv_is_deterministic_and_well_formed() {
    let grids = vec!["p:0:1:0.25".to_string(), "b:0:1:0.5".to_string()];
    let a = scan_cmd("rho3", "T1", &grids, "example2").unwrap();
    let b = scan_cmd("rho3", "T1", &grids, "example2").unwrap();
    assert_eq!(a, b, "scan output must be byte-identical across runs");
    let mut lines = a.lines();
    assert_eq!(lines.next().unwrap(), "param1,param2,value");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5 * 3);
    for row in rows {
        assert_eq!(row.split(',').count(), 3);
    }
    assert!(a.ends_with('\n'));
    assert!(!a.contains('\r'));
}

#[test]
fn scan_out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let out = bin()
        .args([
            "scan",
            "sigma_b",
            "T1",
            "--grid",
            "b:0:1:0.5",
            "--setting",
            "example2",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("param1,value\n"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn exit_codes_follow_the_contract() {
    // success → 0
    let out = bin().args(["classify-pure", "ghz"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    // malformed input → 2
    let out = bin().args(["classify-pure", "rho1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["witness", "ghz", "T9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["scan", "nosuch", "T1", "--grid", "b:0:1:0.5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // missing required argument (clap) → 2
    let out = bin().args(["witness"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // no threshold crossing → 3
    let out = bin()
        .args(["threshold", "rho_w", "F1", "--", "-100"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn mixed_orientation_setting_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mixed.json");
    // party c uses a reflection: orientation −1 against +1 on a and b
    std::fs::write(
        &path,
        r#"{"a":"pauli","b":"pauli","c":{"rotation":[[1.0,0.0,0.0],[0.0,1.0,0.0],[0.0,0.0,-1.0]]}}"#,
    )
    .unwrap();
    let out = bin()
        .args(["witness", "ghz", "T1", "--setting", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("orientation"), "stderr: {err}");
}

#[test]
fn machine_mode_emits_json() {
    let out = bin()
        .args(["--machine", "classify-pure", "ghz"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["label"], "genuine_entangled");
    assert!((v["g1"].as_f64().unwrap() - 0.25).abs() < 1e-12);
}

#[test]
fn sample_rejects_bad_observables() {
    let out = bin()
        .args(["sample", "ghz", "ZZ", "--shots", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["sample", "ghz", "QQQ", "--shots", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
