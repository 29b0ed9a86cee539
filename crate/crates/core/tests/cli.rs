use std::process::Command;

fn pcml(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pcml"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .output()
        .expect("binary runs");
    let mut text = String::from_utf8(out.stdout).unwrap();
    text.push_str(&String::from_utf8(out.stderr).unwrap());
    (out.status.code().unwrap_or(-1), text)
}

fn has_line(text: &str, line: &str) -> bool {
    text.lines().any(|l| l == line)
}

#[test]
fn documented_invocations() {
    let (code, out) = pcml(&["nf", "--graph", "cycle:4", "--element", "[x0,x1]"]);
    assert_eq!(code, 0);
    assert!(has_line(&out, "RESULT=0"));

    let (_, out) = pcml(&["distinguish", "--n", "3", "--m", "4"]);
    assert!(has_line(&out, "SEPARATED=true SENTENCE=Psi COUNTEREXAMPLE=[x1,x3]"));

    let (_, out) = pcml(&["compact", "--graph", "data/fig1.json"]);
    assert!(has_line(&out, "VERTICES=5"));

    let (code, out) = pcml(&["dim", "--graph", "cycle:5", "--mdeg", "1,1,0,1,0"]);
    assert_eq!(code, 0);
    assert!(out.contains("count=") && out.contains(" OK"));

    let (_, out) = pcml(&["theta", "--n", "5", "--m", "5", "--assign", "x0,x1,x2,x3,x4"]);
    assert!(has_line(&out, "HOLDS=true"));

    let (code, out) = pcml(&[
        "phi",
        "--graph",
        "data/merge4.json",
        "--merge",
        "3:2",
        "--lambda",
        "1",
        "--element",
        "[x2,x0] - [x3,x0]",
    ]);
    assert_eq!(code, 0);
    assert!(has_line(&out, "ZERO=true"));

    let (_, out) = pcml(&[
        "lambda0",
        "--graph",
        "data/merge4.json",
        "--element",
        "[x2,x0] - [x3,x0]",
    ]);
    assert!(has_line(&out, "REMOVED=3 KEPT=2 LAMBDA0=2"));
}

#[test]
fn witness_and_alias_agree() {
    let (a_code, a) = pcml(&["witness", "--graph", "data/merge4.json", "--gamma", "data/gamma4.txt"]);
    let (b_code, b) = pcml(&[
        "gamma-witness",
        "--graph",
        "data/merge4.json",
        "--gamma",
        "data/gamma4.txt",
    ]);
    assert_eq!((a_code, b_code), (0, 0));
    assert_eq!(a, b);
    assert!(a.contains("KERNEL_DISJOINT=true"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["suite", "--criterion", "6", "--seed", "99"];
    let (code, first) = pcml(&args);
    let (_, second) = pcml(&args);
    assert_eq!(code, 0);
    assert_eq!(first, second);
    assert!(first.starts_with("SEED=99\n"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pcml(&["nope"]).0, 2);
    let (code, out) = pcml(&["nf", "--graph", "cycle:4", "--element", "[x0,,x1]"]);
    assert_eq!(code, 2);
    assert!(out.contains("offset"));
    assert_eq!(pcml(&["phi", "--graph", "cycle:5", "--element", "x0"]).0, 2);
}

#[test]
fn degree_bound_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_pcml"))
        .args(["centralizer", "--graph", "cycle:5", "--element", "x0 + x2"])
        .env("PCML_DEGREE_BOUND", "3")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("DEGREE_BOUND=3 DIMENSION=1"), "{text}");
}
