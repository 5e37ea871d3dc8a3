use std::path::PathBuf;
use std::process::{Command, Output};

fn ccrit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccrit"))
        .args(args)
        .env_remove("CCRIT_MAX_INDEX")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_config(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("ccrit-{}-{name}.conf", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn constants_text_and_check() {
    let o = ccrit(&["constants", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("C1 = 1.1024"), "{text}");
    assert!(text.contains("C2 = 1.6571"), "{text}");
    assert!(text.contains("C3 = 2.6756"), "{text}");
}

#[test]
fn constants_json_round_trips() {
    let o = ccrit(&["constants", "--format", "json", "--precision", "15"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let c1 = rows[0]["value"].as_f64().unwrap();
    assert!((c1 - 6.0 * 0.577_215_664_901_532_9 / std::f64::consts::PI).abs() < 1e-14);
    assert_eq!(rows[2]["name"], "C3");
}

#[test]
fn precision_caps_digits() {
    let o = ccrit(&["constants", "--format", "csv", "--precision", "4"]);
    let text = stdout(&o);
    assert!(text.starts_with("name,value,error_bound,terms_used,reference,note\n"));
    assert!(text.contains("C1,1.102,"), "{text}");
    assert!(!text.contains('\r'));
    for bad in ["3", "16"] {
        assert_eq!(
            ccrit(&["--precision", bad, "constants"]).status.code(),
            Some(2)
        );
    }
}

#[test]
fn tc_film_fields() {
    let o = ccrit(&[
        "tc", "--film", "2", "--alpha", "1", "--lambda", "0.5", "--t0", "3", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c1 = 6.0 * 0.577_215_664_901_532_9 / std::f64::consts::PI;
    assert!((v["tc"].as_f64().unwrap() - (3.0 - c1 * 0.5 / 2.0)).abs() < 1e-10);
    assert_eq!(v["transition_exists"], true);
    assert_eq!(v["geometry"], "film");
}

#[test]
fn tc_needs_exactly_one_geometry() {
    let gl = ["--alpha", "1", "--lambda", "0.5", "--t0", "3"];
    let mut both = vec!["tc", "--film", "2", "--wire-area", "4"];
    both.extend(gl);
    assert_eq!(ccrit(&both).status.code(), Some(2));
    let mut none = vec!["tc"];
    none.extend(gl);
    assert_eq!(ccrit(&none).status.code(), Some(2));
    assert_eq!(ccrit(&["tc", "--film", "2"]).status.code(), Some(2));
    assert_eq!(
        ccrit(&["tc", "--film", "-1", "--alpha", "1", "--lambda", "0.5", "--t0", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn config_supplies_defaults_and_flags_win() {
    let cfg = temp_config(
        "tc",
        "# GL parameters\nalpha = 1\nlambda = 0.5\nt0 = 3\nfilm = 2\nformat = json\n",
    );
    let path = cfg.to_str().unwrap();
    let from_file = ccrit(&["tc", "--config", path]);
    assert_eq!(from_file.status.code(), Some(0));
    let a: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    assert_eq!(a["size"], 2.0);
    let overridden = ccrit(&["tc", "--config", path, "--film", "4"]);
    let b: serde_json::Value = serde_json::from_str(&stdout(&overridden)).unwrap();
    assert_eq!(b["size"], 4.0);
    std::fs::remove_file(cfg).ok();
}

#[test]
fn config_rejects_unknown_keys() {
    let cfg = temp_config("bad", "alpha = 1\ncolour = blue\n");
    let o = ccrit(&["tc", "--config", cfg.to_str().unwrap(), "--film", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
    std::fs::remove_file(cfg).ok();
    assert_eq!(
        ccrit(&["verify", "--config", "/nonexistent/ccrit.conf"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn gap_film_and_bulk_limit() {
    let o = ccrit(&[
        "gap",
        "--D",
        "3",
        "--d",
        "1",
        "--lengths",
        "500",
        "--m0sq",
        "0.05",
        "--lambda",
        "0.1",
        "--format",
        "json",
        "--precision",
        "15",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["m_sq"].as_f64().unwrap() - 0.05).abs() < 1e-12);
    let mismatch = ccrit(&[
        "gap",
        "--d",
        "2",
        "--lengths",
        "1",
        "--m0sq",
        "1",
        "--lambda",
        "0.1",
    ]);
    assert_eq!(mismatch.status.code(), Some(2));
}

#[test]
fn epstein_methods() {
    let o = ccrit(&[
        "epstein",
        "--nu",
        "2",
        "--lengths",
        "1,1",
        "--method",
        "both",
        "--format",
        "json",
        "--precision",
        "15",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let identity = 0.424_379_776_211_85;
    for row in &rows[..2] {
        assert!((row["value"].as_f64().unwrap() - identity).abs() < 1e-7);
    }
    // outside the convergent region only the continuation is defined
    let direct = ccrit(&[
        "epstein",
        "--nu",
        "0.8",
        "--lengths",
        "1,1",
        "--method",
        "direct",
    ]);
    assert_eq!(direct.status.code(), Some(3));
    let continued = ccrit(&[
        "epstein",
        "--nu",
        "0.8",
        "--lengths",
        "1,1",
        "--method",
        "continued",
    ]);
    assert_eq!(continued.status.code(), Some(0));
    let pole = ccrit(&[
        "epstein",
        "--nu",
        "1.5",
        "--lengths",
        "1,1,1",
        "--method",
        "continued",
    ]);
    assert_eq!(pole.status.code(), Some(3));
}

#[test]
fn sweep_rows_and_determinism() {
    let args = [
        "sweep",
        "--geometry",
        "grain",
        "--from",
        "1",
        "--to",
        "50",
        "--steps",
        "25",
        "--alpha",
        "1",
        "--lambda",
        "0.5",
        "--t0",
        "2",
    ];
    let a = ccrit(&args);
    let b = ccrit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "size,inv_linear_size,tc,transition_exists");
    assert_eq!(lines.len(), 26);
    assert!(lines[1].starts_with("1,1,"));
    assert!(lines[25].starts_with("50,"));
    assert_eq!(
        ccrit(&[
            "sweep",
            "--geometry",
            "film",
            "--from",
            "1",
            "--to",
            "2",
            "--steps",
            "1",
            "--alpha",
            "1",
            "--lambda",
            "1",
            "--t0",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn verify_passes_and_fails_on_crippled_budget() {
    let ok = ccrit(&["verify"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("16/16 checks passed"));

    let flag = ccrit(&["verify", "--max-index", "1"]);
    assert_eq!(flag.status.code(), Some(1));

    let env = Command::new(env!("CARGO_BIN_EXE_ccrit"))
        .arg("verify")
        .env("CCRIT_MAX_INDEX", "1")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&env.stdout).contains("FAIL"));

    let small = Command::new(env!("CARGO_BIN_EXE_ccrit"))
        .args(["constants", "--check"])
        .env("CCRIT_MAX_INDEX", "3")
        .output()
        .unwrap();
    assert_eq!(small.status.code(), Some(3));
}

#[test]
fn usage_errors() {
    assert_eq!(ccrit(&[]).status.code(), Some(2));
    assert_eq!(ccrit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        ccrit(&["constants", "--format", "xml"]).status.code(),
        Some(2)
    );
    assert_eq!(ccrit(&["--help"]).status.code(), Some(0));
}
