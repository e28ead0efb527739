use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_brickword")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn stdout_ok(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn christoffel_word() {
    assert_eq!(stdout_ok(&["word", "christoffel", "5", "8"]), "bbabbababbaba\n");
    let (code, _, err) = run(&["word", "christoffel", "4", "6"]);
    assert_eq!(code, 2);
    assert!(err.contains("not coprime"));
}

#[test]
fn cutting_words() {
    let out = stdout_ok(&["word", "cutting", "--slope", "5/8", "--domain", "(0,8)", "--lower"]);
    assert_eq!(out, "babbababbab\n");
    let m = "(-1+sqrt(5))/2";
    let out = stdout_ok(&["word", "cutting", "--slope", m, "--domain", "[0,inf)", "--upper", "--len", "14"]);
    assert_eq!(out, "abbabbababbabb\n");
    let out = stdout_ok(&["word", "cutting", "--slope", m, "--intercept", "-1/2", "--domain", "(0,inf)", "--len", "5"]);
    assert_eq!(out.trim().len(), 5);
    let (code, _, err) = run(&["word", "cutting", "--slope", m, "--domain", "(0,inf)"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn characteristic_balance_and_complexity() {
    assert_eq!(stdout_ok(&["word", "characteristic", "--cf", "[0; (1)]", "--len", "12"]), "babbababbabb\n");
    assert_eq!(stdout_ok(&["word", "balanced", "babbababbabb"]), "balanced\n");
    assert_eq!(stdout_ok(&["word", "balanced", "babbababaa"]), "unbalanced length 2 lighter aa heavier bb\n");
    assert_eq!(stdout_ok(&["word", "complexity", "babbababbabb", "3"]), "4\n");
}

#[test]
fn gentle_queries() {
    let fig1 = fixture("fig1.json");
    assert_eq!(stdout_ok(&["gentle", "validate", &fig1]), "gentle\n");
    assert_eq!(stdout_ok(&["gentle", "bands", &fig1, "--max", "4"]), "β δ- ε θ\n");
    let strings = stdout_ok(&["gentle", "strings", &fig1, "--max", "1"]);
    assert_eq!(strings.lines().count(), 6 + 12);
    assert!(strings.starts_with("e:1\n"));
    let hom = stdout_ok(&["gentle", "hom", &fig1, "e:3", "β δ- ε θ"]);
    assert!(hom.ends_with("graph maps 1\nhom dimension 1\n"), "{hom}");
    assert_eq!(stdout_ok(&["gentle", "brick", &fig1, "β"]), "brick\n");
    let dk = fixture("double_kronecker.json");
    let brick = stdout_ok(&["gentle", "brick", &dk, "β1 β2- β1 β2- α1- α2"]);
    assert!(brick.starts_with("not a brick: "), "{brick}");
    let end = stdout_ok(&["gentle", "band-end", &dk, "α1- α2 β1 β2-"]);
    assert!(end.ends_with("end dimension 1\n"), "{end}");
    let kisses = stdout_ok(&["gentle", "kisses", &dk, "β1 β2- β1 β2-", "α1- α2 α1- α2"]);
    assert!(kisses.ends_with("kisses 1\n"), "{kisses}");
}

#[test]
fn invalid_inputs() {
    let (code, out, _) = run(&["gentle", "validate", &fixture("dk_no_relations.json")]);
    assert_eq!(code, 1);
    assert!(out.lines().all(|l| l.starts_with("violation ")));
    let dir = std::env::temp_dir().join(format!("brickword-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("broken.json");
    std::fs::write(&broken, "{\"vertices\": [\"1\"],\n \"arrows\": [}").unwrap();
    let (code, _, err) = run(&["gentle", "validate", broken.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    let (code, _, _) = run(&["gentle", "brick", &fixture("fig1.json"), "α β"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["word", "unknown"]);
    assert_eq!(code, 2);
}

#[test]
fn classify_specs() {
    let out = stdout_ok(&["bridge", "classify", "--spec", &fixture("specs/golden_right.json"), "--window", "60"]);
    assert!(out.contains("verdict brick (case 2)\n"), "{out}");
    assert!(out.lines().filter(|l| l.starts_with("check ")).all(|l| l.ends_with(": none")));
    let out = stdout_ok(&["bridge", "classify", "--spec", &fixture("specs/alpha2_golden.json")]);
    assert!(out.contains("verdict brick (case 1)\n"), "{out}");
    let out = stdout_ok(&["bridge", "classify", "--spec", &fixture("specs/eventually_periodic.json")]);
    assert!(out.contains("not aperiodic: eventually periodic"), "{out}");
    assert!(out.contains("evidence infinite graph map"), "{out}");
}

#[test]
fn christoffel_sweep_and_configurations() {
    let out = stdout_ok(&["bridge", "verify-christoffel", "--max", "6"]);
    assert!(out.ends_with("mismatches 0\n"), "{out}");
    assert!(out.contains("band ab end 1 christoffel ba ok\n"), "{out}");
    let dk = fixture("double_kronecker.json");
    let out = stdout_ok(&["bridge", "verify-config", "--algebra", &dk, "--a", "α1- α2", "--b", "β1 β2-"]);
    assert!(out.contains("z e:2\n") && out.ends_with("verified\n"), "{out}");
    let (code, out, _) = run(&["bridge", "verify-config", "--algebra", &dk, "--a", "α1- α2", "--b", "α1- α2"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("violation "));
    let z1 = fixture("single_kiss_z1.json");
    let args = ["--algebra", z1.as_str(), "--a", "γ α1- α2", "--b", "γ β1 β2-", "--max", "5"];
    let (code, out, _) = run(&[&["bridge", "shared-suffix"][..], &args, &["--right-open"]].concat());
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("violations 0\n"));
    let (code, _, _) = run(&[&["bridge", "shared-suffix"][..], &args].concat());
    assert_eq!(code, 1);
}

#[test]
fn window_witnesses() {
    assert_eq!(stdout_ok(&["bridge", "witness", "--word", "ba"]), "strong inner x = \"\"\ninner none\n");
    assert_eq!(stdout_ok(&["bridge", "witness", "--word", "bab"]), "strong inner none\ninner none\n");
    assert_eq!(
        stdout_ok(&["bridge", "witness", "--word", "ba", "--left-open", "--right-open"]),
        "strong inner none\ninner none\n"
    );
    assert_eq!(stdout_ok(&["bridge", "witness", "--word", "aabb"]), "strong inner x = \"\"\ninner x = \"\"\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["gentle", "strings", &fixture("double_kronecker.json"), "--max", "6"];
    assert_eq!(stdout_ok(&args), stdout_ok(&args));
}
