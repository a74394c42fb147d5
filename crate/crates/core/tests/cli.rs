use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn sonine(command: &str, cfg: &Path, out: &Path, extra: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sonine"))
        .arg(command)
        .arg("--config")
        .arg(cfg)
        .arg("--out")
        .arg(out)
        .args(extra)
        .output()
        .unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn kernel_verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = sonine("kernel-verify", &config("kernel_verify.json"), dir.path(), &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = read_json(&dir.path().join("sonine_report.json"));
    assert!(report["max_abs_deviation"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn relax_sweep_writes_one_csv_per_mu() {
    let dir = tempfile::tempdir().unwrap();
    let o = sonine(
        "relax",
        &config("relax.json"),
        dir.path(),
        &["--set", "grid.time.n=256"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for i in 0..3 {
        let text = std::fs::read_to_string(dir.path().join(format!("relax_{i}.csv"))).unwrap();
        assert_eq!(text.lines().next(), Some("t,value,lower_bound,upper_bound"));
        assert_eq!(text.lines().count(), 258);
    }
    let run = read_json(&dir.path().join("run.json"));
    assert_eq!(run["passed"], Value::Bool(true));
    assert_eq!(run["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn schema_error_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let o = sonine(
        "relax",
        &config("relax.json"),
        dir.path(),
        &["--set", "kernel.alfa=0.3"],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("kernel"), "{}", stderr(&o));
    let o = sonine(
        "relax",
        &config("relax.json"),
        dir.path(),
        &["--set", "grid.time.n=many"],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("grid.time.n"), "{}", stderr(&o));
}

#[test]
fn command_mismatch_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = sonine("evolve", &config("relax.json"), dir.path(), &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn random_data_without_seed_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let mut doc = read_json(&config("evolve_random.json"));
    doc["initial"].as_object_mut().unwrap().remove("seed");
    std::fs::write(&cfg, doc.to_string()).unwrap();
    let o = sonine("evolve", &cfg, &dir.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("initial.seed"), "{}", stderr(&o));
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = config("evolve_random.json");
    let set = ["--set", "grid.time.n=128"];
    let oa = sonine("evolve", &cfg, a.path(), &[&set[..], &["--threads", "1"]].concat());
    let ob = sonine("evolve", &cfg, b.path(), &[&set[..], &["--threads", "2"]].concat());
    assert_eq!(oa.status.code(), Some(0), "{}", stderr(&oa));
    assert_eq!(ob.status.code(), Some(0), "{}", stderr(&ob));
    let ra = read_json(&a.path().join("run.json"));
    let rb = read_json(&b.path().join("run.json"));
    assert_eq!(ra["outputs"], rb["outputs"]);
    for f in ra["outputs"].as_array().unwrap() {
        let name = f["path"].as_str().unwrap();
        if name.ends_with(".csv") {
            assert_eq!(
                std::fs::read(a.path().join(name)).unwrap(),
                std::fs::read(b.path().join(name)).unwrap(),
                "{name}"
            );
        }
    }
}

#[test]
fn manifest_lists_every_output_with_its_hash() {
    let dir = tempfile::tempdir().unwrap();
    let o = sonine(
        "resolvent",
        &config("resolvent.json"),
        dir.path(),
        &["--set", "grid.time.n=128"],
    );
    assert!(o.status.code().is_some(), "{}", stderr(&o));
    let run = read_json(&dir.path().join("run.json"));
    let listed: Vec<String> = run["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| {
            let name = f["path"].as_str().unwrap();
            let bytes = std::fs::read(dir.path().join(name)).unwrap();
            let hex: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
            assert_eq!(f["sha256"].as_str().unwrap(), hex, "{name}");
            assert_eq!(f["bytes"].as_u64().unwrap(), bytes.len() as u64);
            name.to_string()
        })
        .collect();
    let mut on_disk: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n != "run.json")
        .collect();
    on_disk.sort();
    let mut listed_sorted = listed.clone();
    listed_sorted.sort();
    assert_eq!(listed_sorted, on_disk);
}

#[test]
fn two_term_decay_fit_slope() {
    // The sandwich has not pinched at L(t) ~ 2.5-6, so the fit sits above -1
    // and the run fails its +-0.05 slope check.
    let dir = tempfile::tempdir().unwrap();
    let o = sonine("decay-fit", &config("decay_fit_two_term.json"), dir.path(), &[]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let fit = read_json(&dir.path().join("decay_0.json"));
    let slope = fit["fitted_exponent"].as_f64().unwrap();
    assert!((-1.0..=-0.8).contains(&slope), "{slope}");
    assert_eq!(fit["passed"], Value::Bool(false));
    let run = read_json(&dir.path().join("run.json"));
    for c in run["checks"].as_array().unwrap() {
        let name = c["name"].as_str().unwrap();
        if name != "decay_slope_0" {
            assert_eq!(c["passed"], Value::Bool(true), "{name}");
        }
    }
}

#[test]
fn count_and_predict_run() {
    let dir = tempfile::tempdir().unwrap();
    let o = sonine("count", &config("count.json"), &dir.path().join("c"), &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = sonine(
        "predict",
        &config("predict_heisenberg.json"),
        &dir.path().join("p"),
        &[],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let pred = read_json(&dir.path().join("p/prediction.json"));
    assert_eq!(pred["predictions"][0]["exponent"].as_f64(), Some(-1.0));
    assert_eq!(pred["predictions"][0]["pure_power"].as_f64(), Some(-0.5));
}
