use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn workbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_workbench")).args(args).output().unwrap()
}

fn example(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden/runs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn write_file(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn passing_file_exits_zero() {
    let o = workbench(&["run", &example("borel.wb")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("PASS        line   5  jacobi B"));
}

#[test]
fn failing_check_exits_one() {
    let o = workbench(&["run", &example("negative.wb")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("J(H12, E12, E21) = 2*E12"));
}

#[test]
fn empty_file_is_a_successful_run() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_file(&dir, "empty.wb", "");
    let o = workbench(&["run", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 checks"));
}

#[test]
fn unknown_identifier_is_reported_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_file(
        &dir,
        "bad.wb",
        "algebra B {\n  basis h:even x:even;\n  bracket [h,y] = 2 x;\n}\n",
    );
    let o = workbench(&["run", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("3:14: unknown identifier y"), "{}", stderr(&o));
}

#[test]
fn syntax_and_parity_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("check jacobi sl2", "1:17: expected ';'"),
        ("algebra A { basis a:even b:odd; bracket [a,b] = a; }", "1:42"),
        ("algebra A { basis a:even; }\nalgebra A { basis b:even; }", "2:9: A is already declared"),
        ("tensor r on sl2 = H12 (x) E12 (x) E21;", "1:31: '(x)' and '^' do not chain"),
    ];
    for (i, (src, expected)) in cases.iter().enumerate() {
        let p = write_file(&dir, &format!("e{i}.wb"), src);
        let o = workbench(&["run", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{src}");
        assert!(stderr(&o).contains(expected), "{src}: {}", stderr(&o));
    }
}

#[test]
fn structured_output_to_file_matches_text_statuses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = workbench(&["run", &example("negative.wb"), "--format", "structured", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let text = stdout(&workbench(&["run", &example("negative.wb")]));
    let statuses: Vec<String> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["status"].as_str().unwrap().to_uppercase())
        .collect();
    let text_statuses: Vec<String> = text
        .lines()
        .filter(|l| !l.starts_with(' ') && l.contains(" line "))
        .map(|l| l.split_whitespace().next().unwrap().to_string())
        .collect();
    assert_eq!(statuses, text_statuses);
}

#[test]
fn structured_output_is_byte_stable() {
    let a = workbench(&["run", &example("cohomology.wb"), "--format", "structured"]);
    let b = workbench(&["run", &example("cohomology.wb"), "--format", "structured"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("wall_ms"));
    let timed = workbench(&["run", &example("borel.wb"), "--format", "structured", "--timing"]);
    assert!(stdout(&timed).contains("wall_ms"));
}

#[test]
fn assumptions_are_validated_and_echoed() {
    let o = workbench(&["run", &example("borel.wb"), "--assume", "xi!=0,2*xi+1 != 0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("declared assumptions: xi != 0, 1 + 2*xi != 0"), "{}", stdout(&o));
    let o = workbench(&["run", &example("borel.wb"), "--assume", "theta!=0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = workbench(&["run", &example("borel.wb"), "--assume", "xi>0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn order_flag_is_bounded() {
    assert_eq!(workbench(&["run", &example("twists.wb"), "--order", "6"]).status.code(), Some(2));
    assert_eq!(workbench(&["run", &example("twists.wb"), "--order", "0"]).status.code(), Some(2));
    let o = workbench(&["run", &example("twists.wb"), "--order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("F has 4 terms through order 2"), "{}", stdout(&o));
}

#[test]
fn catalog_lists_entries() {
    let o = workbench(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in ["osp12", "r.jordan", "psi"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}");
    }
    let o = workbench(&["catalog", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), text.lines().count());
}

#[test]
fn missing_file_and_bad_command_exit_two() {
    assert_eq!(workbench(&["run", "/nonexistent/x.wb"]).status.code(), Some(2));
    assert_eq!(workbench(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(workbench(&["--help"]).status.code(), Some(0));
}

#[test]
fn suite_prints_one_line_per_criterion() {
    let o = workbench(&["paper-suite"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("PASS [") || l.starts_with("FAIL ["))
        .collect();
    assert_eq!(lines.len(), 11, "{text}");
    assert!(text.contains("criteria pass"));
    let all_pass = lines.iter().all(|l| l.starts_with("PASS"));
    assert_eq!(o.status.code(), Some(if all_pass { 0 } else { 1 }));
}
