use std::process::{Command, Output};

fn grasscas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grasscas")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eigenvalue_table_text() {
    let o = grasscas(&["--command", "eigenvalues", "--n", "3", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let betas: Vec<_> = stdout(&o)
        .lines()
        .filter(|l| l.starts_with("slot"))
        .map(|l| l.rsplit("beta=").next().unwrap().to_string())
        .collect();
    assert_eq!(betas, ["0", "0", "4", "-4", "0", "0"]);
}

#[test]
fn decompose_forms_json() {
    let o = grasscas(&["--command", "decompose-forms", "--n", "4", "--j", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "decompose-forms");
    assert_eq!(v["passed"], true);
    let bundles = v["bundles"].as_array().unwrap();
    assert_eq!(bundles.len(), 3);
    let total: u64 = bundles.iter().map(|b| b["rank"].as_str().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 70);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass");
        assert!(c["anchor"].is_string());
    }
}

#[test]
fn verify_all_small() {
    for (n, k) in [("2", "2"), ("3", "2")] {
        let o = grasscas(&["--command", "verify-all", "--n", n, "--k", k, "--seed", "11"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).ends_with("# all checks passed\n"));
        assert!(!stdout(&o).contains("\nFAIL"));
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["--command", "verify-action", "--n", "3", "--k", "2", "--seed", "5", "--format", "json"];
    let a = grasscas(&args);
    let b = grasscas(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 5);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["--command", "eigenvalues", "--n", "3", "--k", "4"][..],
        &["--command", "series", "--n", "1", "--k", "1"][..],
        &["--command", "series", "--n", "3"][..],
        &["--command", "decompose-forms", "--n", "2", "--j", "5"][..],
        &["--command", "bogus", "--n", "3", "--k", "2"][..],
        &["--n", "3", "--k", "2"][..],
    ] {
        let o = grasscas(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
    }
}
