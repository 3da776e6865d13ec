use std::path::Path;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grover-dephasing"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_config(dir: &Path, body: serde_json::Value) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, body.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn quantum_point_defaults_to_k_star() {
    let out = cli(&["quantum", "--n", "4"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "mode,n,k,p_success,k_star,threshold\nquantum,4,1,1.0000000000000000e0,1,5.0000000000000000e-1\n"
    );
}

#[test]
fn explicit_k_and_json_output() {
    let out = cli(&["classical", "--n", "4", "--k", "1", "--format", "json"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows[0]["k"], 1);
    assert_eq!(rows[0]["p_success"], 0.625);
    assert_eq!(rows[0]["mode"], "classical");
}

#[test]
fn analog_modes() {
    let coherent = stdout(&cli(&["analog", "--n", "256"]));
    assert!(coherent.lines().nth(1).unwrap().starts_with("analog-coherent,256,"));
    let dephased = stdout(&cli(&["analog", "--n", "256", "--dephased"]));
    assert!(dephased.lines().nth(1).unwrap().starts_with("analog-dephased,256,"));
}

#[test]
fn sweep_writes_sorted_rows_to_config_path() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let config = write_config(
        dir.path(),
        serde_json::json!({"sizes": [4, 16, 64, 256], "mode": "quantum", "threshold": 0.5,
                           "max_steps": 1000, "output_path": csv}),
    );
    let out = cli(&["sweep", "--config", &config]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let ns: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(ns, ["4", "16", "64", "256"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("slope"));

    let json = dir.path().join("out.json");
    let out = cli(&["sweep", "--config", &config, "--output", json.to_str().unwrap()]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 4);
}

#[test]
fn unreached_threshold_leaves_k_star_empty() {
    let out = cli(&["classical", "--n", "1024", "--max-steps", "10"]);
    assert!(out.status.success());
    let row = stdout(&out).lines().nth(1).unwrap().to_string();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[2], "10");
    assert_eq!(fields[4], "");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_config(
        dir.path(),
        serde_json::json!({"sizes": [], "mode": "classical", "threshold": 0.25,
                           "max_steps": 10, "output_path": "x.csv"}),
    );
    assert_eq!(cli(&["sweep", "--config", &empty]).status.code(), Some(2));
    assert_eq!(
        cli(&["sweep", "--config", "/nonexistent/config.json"]).status.code(),
        Some(3)
    );
    assert_eq!(cli(&["validate", "--n", "8192"]).status.code(), Some(2));
    assert_eq!(cli(&["quantum", "--n", "4", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(
        cli(&["classical", "--n", "8", "--threshold", "0.5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        cli(&["quantum", "--n", "4", "--output", "/nonexistent/dir/x.csv"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn validate_and_entangle_succeed() {
    let out = cli(&["validate", "--n", "64"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().skip(1).all(|l| l.ends_with(",true")));

    let out = cli(&["entangle", "--n", "3", "--format", "json"]);
    assert!(out.status.success());
    let entries: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(entries.as_array().unwrap().iter().all(|e| e["n"] == 8));
}
