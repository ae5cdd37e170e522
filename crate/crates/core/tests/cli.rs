use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helium-mixer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const SHORT: &str = r#"
name = "short"

[thz]
rabi_ghz = 0.1
detuning_ghz = 1.0

[[stark]]
xi = 0.5
frequency_ghz = 1.0

[decoherence]
gamma_decay_mhz = 10.0
dephasing1_mhz = 5.0
dephasing2_mhz = 5.0

[simulation]
frames = ["stark_rotated", "rwa"]
t_end_ns = 50.0
samples = 501
"#;

#[test]
fn lists_builtin_scenarios() {
    let out = cli(&["list-scenarios"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["fig1", "fig2", "fig3", "rwa-vs-exact", "steady-state"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name} missing");
    }
}

#[test]
fn validate_reports_effective_coupling() {
    let out = cli(&["validate", "fig1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!((v["omega_eff_over_omega_g"].as_f64().unwrap() - 0.025).abs() < 1e-9);
    assert!((v["detuning_over_omega_g"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["xi"][0].as_f64().unwrap(), 0.5);
}

#[test]
fn validation_errors_exit_two_and_name_fields() {
    let dir = tempfile::tempdir().unwrap();
    let both = write(
        dir.path(),
        "both.toml",
        &SHORT.replace("xi = 0.5", "xi = 0.5\namplitude_v_per_m = 10.0"),
    );
    let out = cli(&["validate", &both]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("stark[0]"));

    let zero = write(
        dir.path(),
        "zero.toml",
        &SHORT.replace("frequency_ghz = 1.0", "frequency_ghz = 0.0"),
    );
    let out = cli(&["validate", &zero]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("stark[0].frequency_ghz"));

    let typo = write(
        dir.path(),
        "typo.toml",
        &SHORT.replace("rabi_ghz", "rabbi_ghz"),
    );
    let out = cli(&["validate", &typo]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rabbi_ghz"));
}

#[test]
fn unknown_scenario_is_a_usage_error() {
    let out = cli(&["run", "fig7", "--out", "/nonexistent"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fig7"));
}

#[test]
fn run_writes_manifest_and_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "short.toml", SHORT);
    let out_dir = dir.path().join("out");
    let out = cli(&[
        "run",
        &cfg,
        "--out",
        out_dir.to_str().unwrap(),
        "--window",
        "hann",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let manifest = stdout_json(&out);
    let files: Vec<&str> = manifest["files"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f.as_str().unwrap())
        .collect();
    for f in &files {
        assert!(out_dir.join(f).exists(), "{f}");
    }
    assert!(files.contains(&"trajectory_rwa.csv"));
    assert!(files.contains(&"spectrum_stark_rotated.csv"));
    assert!(files.contains(&"peaks_rwa.json"));
    assert_eq!(manifest["config_hash"].as_str().unwrap().len(), 64);
    let spectrum = std::fs::read_to_string(out_dir.join("spectrum_rwa.csv")).unwrap();
    assert!(spectrum.starts_with("omega,abs_psi22,arg_psi22,abs_psiR12,abs_psiI12\n"));
    let peaks: Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("peaks_rwa.json")).unwrap())
            .unwrap();
    assert_eq!(peaks["window"], "hann");
    assert!(peaks["offset_removed"]["omega"].is_number());
}

#[test]
fn sweep_runs_each_scenario_into_its_own_directory() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.toml", SHORT);
    let b = write(
        dir.path(),
        "b.toml",
        &SHORT.replace("name = \"short\"", "name = \"other\""),
    );
    let out_dir = dir.path().join("sweep");
    let out = cli(&["run", "--sweep", &a, &b, "--out", out_dir.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out_dir.join("short/manifest.json").exists());
    assert!(out_dir.join("other/manifest.json").exists());
    let out = cli(&["run", &a, &b, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn integration_failure_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = SHORT.replace(
        "samples = 501",
        "samples = 3\nfixed_step = true\nfixed_step_ps = 25000.0",
    );
    let cfg = write(dir.path(), "unstable.toml", &bad);
    let out = cli(&["run", &cfg, "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("integration failed at t ="));
}

#[test]
fn resonant_unmodulated_drive_agrees_in_all_frames() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"
name = "resonant"

[thz]
rabi_ghz = 0.1
detuning_ghz = 0.0

[[stark]]
xi = 0.0
frequency_ghz = 1.0

[simulation]
frames = ["interaction", "stark_rotated", "rwa"]
t_end_ns = 200.0
samples = 2001
"#;
    let cfg = write(dir.path(), "resonant.toml", text);
    let out = cli(&["compare-frames", &cfg]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = stdout_json(&out);
    for key in ["interaction_vs_stark", "rwa_vs_stark", "rwa_vs_interaction"] {
        assert!(v[key].as_f64().unwrap() < 1e-6, "{key}: {}", v[key]);
    }
}

#[test]
fn fig1_frame_comparison() {
    let out = cli(&["compare-frames", "fig1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!(v["interaction_vs_stark"].as_f64().unwrap() < 1e-6);
    let rwa = v["rwa_vs_stark"].as_f64().unwrap();
    assert!(rwa > 1e-6 && rwa < 1.0, "RWA deviation {rwa}");
    let low = v["low_frequency_peak"]["amplitude"].as_f64().unwrap();
    let ripple = v["ghz_ripple_peak"]["amplitude"].as_f64().unwrap();
    assert!(ripple < low);
}

#[test]
fn fixed_step_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "short.toml", SHORT);
    let runs: Vec<_> = ["a", "b"]
        .iter()
        .map(|sub| {
            let out_dir = dir.path().join(sub);
            let out = cli(&[
                "run",
                &cfg,
                "--fixed-step",
                "--out",
                out_dir.to_str().unwrap(),
            ]);
            assert!(out.status.success());
            out_dir
        })
        .collect();
    for f in [
        "trajectory_stark_rotated.csv",
        "trajectory_rwa.csv",
        "spectrum_rwa.csv",
    ] {
        assert_eq!(
            std::fs::read(runs[0].join(f)).unwrap(),
            std::fs::read(runs[1].join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn bundled_example_validates() {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../scenarios/detuned_two_wave.toml"
    );
    let out = cli(&["validate", path]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(stdout_json(&out)["rwa_form"], "detuned");
}
