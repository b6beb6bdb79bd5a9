use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_frameshift"))
}

fn scenario_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios"))
}

fn strip_timing(text: &str) -> serde_json::Value {
    fn walk(v: &mut serde_json::Value) {
        match v {
            serde_json::Value::Object(m) => {
                m.remove("wall_time_s");
                m.values_mut().for_each(walk);
            }
            serde_json::Value::Array(a) => a.iter_mut().for_each(walk),
            _ => {}
        }
    }
    let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
    walk(&mut v);
    v
}

#[test]
fn covariance_run_writes_one_report_per_scenario() {
    let out = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["run", "covariance", "--quiet", "--config"])
        .arg(scenario_dir())
        .arg("--out")
        .arg(out.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    for name in [
        "boost_free",
        "acceleration_free",
        "translation_force",
        "translation_force_chi0",
    ] {
        let text = std::fs::read_to_string(out.path().join(format!("{name}.json"))).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["checks"][0]["status"], "pass", "{name}");
        assert!(v["metadata"]["commensurability"].is_array());
    }
}

#[test]
fn csv_has_the_documented_columns() {
    let out = tempfile::tempdir().unwrap();
    let status = bin()
        .args([
            "verify",
            "classical",
            "--quiet",
            "--format",
            "csv",
            "--seed",
            "7",
            "--out",
        ])
        .arg(out.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(out.path().join("classical_suite.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("check_name,status,metric,value,tolerance")
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 5);
    // 17 significant digits: one leading digit, 16 after the point
    let mantissa = row[3].split('e').next().unwrap().trim_start_matches('-');
    assert_eq!(mantissa.len(), 18, "{}", row[3]);
}

#[test]
fn reports_repeat_byte_for_byte() {
    let run = || {
        let out = tempfile::tempdir().unwrap();
        let status = bin()
            .args([
                "verify",
                "bas",
                "--quiet",
                "--samples",
                "2000",
                "--seed",
                "11",
                "--out",
            ])
            .arg(out.path())
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
        let mut files: Vec<_> = std::fs::read_dir(out.path())
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        files.sort();
        files
            .iter()
            .map(|p| strip_timing(&std::fs::read_to_string(p).unwrap()))
            .collect::<Vec<_>>()
    };
    let a = run();
    assert_eq!(a.len(), 4);
    assert_eq!(a, run());
}

#[test]
fn unknown_key_is_a_configuration_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(scenario_dir().join("boost_free.toml")).unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(
        &path,
        text.replace("sigma = 1.0", "sigma = 1.0\nsigmma = 2.0"),
    )
    .unwrap();
    let output = bin()
        .args(["run", "covariance", "--config"])
        .arg(&path)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("sigmma"));
}

#[test]
fn impossible_auto_gauge_is_a_configuration_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(scenario_dir().join("acceleration_free.toml")).unwrap();
    let path = dir.path().join("auto.toml");
    std::fs::write(
        &path,
        text.replace(
            "mass = 1.0\n\n[transform]",
            "mass = 1.0\n\n[transform]\nchi = \"auto\"",
        ),
    )
    .unwrap();
    let status = bin()
        .args(["run", "momentum", "--quiet", "--config"])
        .arg(&path)
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn failing_check_exits_one_and_names_its_anchor() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(scenario_dir().join("acceleration_free.toml")).unwrap();
    // the Strang phase error at dt = 1e-3 is about 7e-8, above this tolerance
    let path = dir.path().join("tight.toml");
    std::fs::write(
        &path,
        text.replace("checkpoints = 10", "checkpoints = 10\ntolerance = 1e-12"),
    )
    .unwrap();
    let output = bin()
        .args(["run", "covariance", "--config"])
        .arg(&path)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("FAIL acceleration_free/covariance"));
    assert!(stdout.contains("anchor:"));
    let json = std::fs::read_to_string(dir.path().join("acceleration_free.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["checks"][0]["status"], "fail");
    assert!(v["checks"][0]["anchor"]
        .as_str()
        .unwrap()
        .contains("K = U H U"));
}

#[test]
fn non_commensurate_kick_is_flagged_not_failed() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(scenario_dir().join("boost_free.toml")).unwrap();
    let path = dir.path().join("odd.toml");
    std::fs::write(
        &path,
        text.replace("velocity_quanta = 8", "velocity_quanta = 7.5"),
    )
    .unwrap();
    let status = bin()
        .args(["run", "momentum", "--quiet", "--config"])
        .arg(&path)
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let json = std::fs::read_to_string(dir.path().join("boost_free.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["checks"][0]["status"], "flagged");
}
