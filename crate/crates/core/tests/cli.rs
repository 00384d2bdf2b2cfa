use std::process::Command;

fn dilator(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dilator")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn jeval_json_report() {
    let (code, out) = dilator(&["jeval", "Id", "--gamma", "w", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verb"], "jeval");
    assert_eq!(v["inputs"]["gamma"], "w");
    assert_eq!(v["value"], "w*3");
    assert_eq!(v["guardAudit"]["valueEnlarged"], "w*3");
}

#[test]
fn check_psi_sum_passes() {
    let (code, out) = dilator(&["check", "psi-sum", "--prefix", "200"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("PASS psi-sum"));
}

#[test]
fn classify_reports_type() {
    let (code, out) = dilator(&["classify", "omega[Id]", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["type"], "Omega");
}

#[test]
fn exit_codes() {
    assert_eq!(dilator(&["psi-otp", "Const(3)"]).0, 0);
    assert_eq!(dilator(&["jplus", "Id"]).0, 2);
    assert_eq!(dilator(&["jeval", "Id +"]).0, 3);
    assert_eq!(dilator(&["enum", "Id", "w^"]).0, 3);
    assert_eq!(dilator(&["compare", "Id", "id(1)", "#1"]).0, 3);
    assert_eq!(dilator(&["compare", "Id", "id(1)", "id(w)"]), (0, "id(1) < id(w)\n".into()));
}

#[test]
fn json_is_reproducible() {
    let args = ["check", "fuzz", "--trials", "500", "--seed", "7", "--format", "json"];
    let (a, b) = (dilator(&args), dilator(&args));
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}

#[test]
fn scenario_file_takes_the_worst_exit_code() {
    let dir = std::env::temp_dir().join(format!("dilator-scenario-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.txt");
    std::fs::write(&path, "# values\njeval \"Id + 1\" --gamma w\npsi-otp Id --gamma w\n\njplus Id\n").unwrap();
    let (code, out) = dilator(&["run", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 2, "{out}");
    assert!(out.contains("jeval(Id + 1, w) = w*3+1"));
    assert!(out.contains("psi Id^w = w^2"));
    std::fs::remove_dir_all(&dir).unwrap();
}
