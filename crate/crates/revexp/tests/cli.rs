use std::process::{Command, Output};

fn revexp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revexp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_reports_verdict_through_exit_code() {
    let o = revexp(&["check", "--variant", "fb", "a.0 |[]| b.0", "a.b.0 + b.a.0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "equivalent");

    let o = revexp(&["check", "--variant", "frb", "a.0 |[]| b.0", "a.b.0 + b.a.0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not equivalent"));
}

#[test]
fn witness_lists_blocks() {
    let o = revexp(&["check", "--variant", "fbps", "a.0", "a.0 + a.0", "--witness"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("block 0:")));
}

#[test]
fn syntax_errors_exit_with_two() {
    let o = revexp(&["check", "--variant", "fb", "a.(0", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn illformed_terms_need_the_flag() {
    let o = revexp(&["lts", "a.b!.0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn encode_prints_ready_sets() {
    let o = revexp(&["encode", "a!.c!.0 |[c]| c!.b.0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "<a!,{a}>.<c!,{c}>.<b,{b}>.0");
}

#[test]
fn encode_with_history_file() {
    let dir = std::env::temp_dir().join(format!("revexp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("history.txt");
    std::fs::write(&path, "|rb\n|la\n").unwrap();
    let order = format!("file:{}", path.display());
    let o = revexp(&["encode", "a!.0 |[]| b!.0", "--order", &order]);
    assert_eq!(stdout(&o).trim(), "<b!,{b}>.<a!,{b,a}>.0 + <a,{a}>.<b,{a,b}>.0");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn lts_json_is_valid() {
    let o = revexp(&["lts", "a.0 |[]| b.0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["states"].as_array().unwrap().len(), 4);
}

#[test]
fn prove_and_normalize() {
    let o = revexp(&["prove", "--theory", "f", "a.0 |[]| b.0", "a.b.0 + b.a.0"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "equal"));
    let o = revexp(&["prove", "--theory", "fr", "a.0 |[]| b.0", "a.b.0 + b.a.0", "--trace"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("left:"));
    let o = revexp(&["normalize", "--theory", "f", "a.0 |[]| b.0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("|["));
}

#[test]
fn expand_forward() {
    let o = revexp(&["expand", "a.0", "b.0"]);
    assert_eq!(stdout(&o).trim(), "a.(0 |[]| b.0) + b.(a.0 |[]| 0) + 0");
}

#[test]
fn enumerate_counts() {
    let o = revexp(&["enumerate", "--max-size", "1", "--alphabet", "a", "--count-only"]);
    assert_eq!(stdout(&o).trim(), "19");
}

#[test]
fn unicode_output() {
    let o = revexp(&["--unicode", "encode", "a!.0"]);
    assert!(stdout(&o).contains('†'));
}
