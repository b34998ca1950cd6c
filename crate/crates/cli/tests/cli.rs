use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_braidcert"));
    c.env_remove("BRAIDCERT_PRECISION").env_remove("BRAIDCERT_PRECISION_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("braidcert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn salem_check_lehmer() {
    let o = run(&["salem", "check", "1", "1", "0", "-1", "-1", "-1", "-1", "-1", "0", "1", "1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("s in [1.17628081825991750654407033847"));
    assert!(out.contains("VERDICT PASS"));
    assert_eq!(code(&run(&["salem", "check", "x^2-3*x+1"])), 0);
}

#[test]
fn salem_check_rejections() {
    assert_eq!(code(&run(&["salem", "check", "1", "0", "0", "-2"])), 1);
    assert_eq!(code(&run(&["salem", "check", "1", "-2", "1"])), 1);
    assert_eq!(code(&run(&["salem", "check", "1", "+", "+"])), 3);
}

#[test]
fn young_commands() {
    let o = run(&["young", "dim", "2,2,2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "5\n");
    assert_eq!(stdout(&run(&["young", "reconstruct", "2,2", "/", "3,1"])), "3,2\n");
    assert_eq!(stdout(&run(&["young", "subs", "3,2"])), "2,2 3,1\n");
    assert_eq!(stdout(&run(&["young", "bmwdim", "1", "--row", "3"])), "3\n");
    assert_eq!(code(&run(&["young", "bmwdim", "1", "--row", "2"])), 3);
    assert_eq!(code(&run(&["young", "dim", "1,2"])), 3);
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(code(&run(&["--bogus"])), 3);
    assert_eq!(code(&run(&["salem"])), 3);
    assert_eq!(code(&run(&["young", "dim", "2,2", "--precision", "100"])), 3);
    assert_eq!(code(&run(&["young", "dim", "2,2", "--precision", "256", "--precision-cap", "128"])), 3);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn certify_exit_codes() {
    assert_eq!(code(&run(&["certify", "discrete", "--power", "16"])), 0);
    let o = run(&["certify", "discrete", "--power", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("CHECK C3[circle2+] FAIL"));
    assert!(stdout(&o).lines().last().unwrap().starts_with("VERDICT FAIL"));
    assert_eq!(code(&run(&["certify", "commensurable", "--form", "squier:4", "--exps", "16,34"])), 3);
}

#[test]
fn undecided_exits_2() {
    // The Squier form of B_4 is singular at x = e^{i pi/4}.
    let o = run(&["form", "posdef", "squier:3", "--at", "x=exp(i*pi/4)"]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&run(&["form", "posdef", "squier:3", "--at", "x=exp(i*0.1)"])), 0);
    assert_eq!(code(&run(&["form", "posdef", "squier:3", "--at", "x=exp(i*1.5)"])), 1);
}

#[test]
fn rep_commands() {
    let o = run(&["rep", "burau", "-n", "3"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(data("burau3.repz")).unwrap());
    assert_eq!(code(&run(&["rep", "verify", &data("burau3.repz")])), 0);
    assert_eq!(code(&run(&["rep", "verify", &data("bad_relation.repz")])), 1);
    assert_eq!(code(&run(&["rep", "verify", &data("burau3.repz"), "--form", "squier:2"])), 3);
    assert_eq!(code(&run(&["rep", "show", "/nonexistent.repz"])), 3);
}

#[test]
fn quiet_prints_nothing() {
    let o = run(&["--quiet", "young", "dim", "3,1"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
}

#[test]
fn every_emission_round_trips_through_the_checker() {
    let burau = data("burau3.repz");
    let cases: Vec<Vec<&str>> = vec![
        vec!["salem", "check", "lehmer"],
        vec!["salem", "check", "1", "0", "0", "-2"],
        vec!["salem", "powers", "lehmer", "--arc", "2*pi/5", "--max-m", "50"],
        vec!["rep", "burau", "-n", "2"],
        vec!["rep", "show", &burau],
        vec!["rep", "verify", &burau],
        vec!["form", "solve", "burau:2"],
        vec!["form", "posdef", "bmw-b4", "--at", "a=i,L=1"],
        vec!["form", "sig", "squier:3", "--at", "x=exp(i*2)"],
        vec!["form", "equiv", "squier:3", "squier:3", "--exps", "16,34"],
        vec!["certify", "discrete", "--power", "16"],
        vec!["certify", "discrete", "--power", "2"],
        vec!["certify", "commensurable", "--exps", "16,47"],
        vec!["certify", "search", "--max-m", "8"],
        vec!["young", "subs", "2,2,2"],
        vec!["young", "dim", "4,2,1"],
        vec!["young", "bmwdim", "2", "--row", "4"],
        vec!["young", "reconstruct", "2,1", "/", "1,1,1"],
    ];
    for (k, args) in cases.iter().enumerate() {
        let path = tmp(&format!("emit{k}.kv"));
        let p = path.to_string_lossy().into_owned();
        let mut full = args.clone();
        full.extend(["--emit", &p]);
        let first = run(&full);
        assert!(code(&first) <= 2, "{args:?}: {}", String::from_utf8_lossy(&first.stderr));
        let text = std::fs::read_to_string(&path).unwrap();
        let o = run(&["check", &p]);
        assert_eq!(code(&o), 0, "{args:?}:\n{}", stdout(&o));
        // Deterministic: a second emission is byte-identical.
        run(&full);
        assert_eq!(std::fs::read_to_string(&path).unwrap(), text, "{args:?}");
    }
}

#[test]
fn tampered_emission_is_rejected() {
    let path = tmp("tamper.kv");
    let p = path.to_string_lossy().into_owned();
    assert_eq!(code(&run(&["certify", "discrete", "--power", "16", "--emit", &p])), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replace("verdict = PASS", "verdict = FAIL C1")).unwrap();
    assert_eq!(code(&run(&["check", &p])), 1);
    let minor = text.lines().find(|l| l.contains(".minor.1 = ")).unwrap();
    let (k, v) = minor.split_once(" = ").unwrap();
    let bumped = format!("{k} = {}", v.replacen("0x", "0x1", 1));
    std::fs::write(&path, text.replace(minor, &bumped)).unwrap();
    assert_eq!(code(&run(&["check", &p])), 1);
}

#[test]
fn precision_flags_and_environment() {
    let path = tmp("prec.kv");
    let p = path.to_string_lossy().into_owned();
    let o = bin().args(["young", "dim", "2", "--emit", &p]).env("BRAIDCERT_PRECISION", "64").output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(std::fs::read_to_string(&path).unwrap().contains("config.precision = 64\n"));
    let o = bin()
        .args(["young", "dim", "2", "--precision", "256", "--emit", &p])
        .env("BRAIDCERT_PRECISION", "64")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(std::fs::read_to_string(&path).unwrap().contains("config.precision = 256\n"));
    let o = bin().args(["young", "dim", "2"]).env("BRAIDCERT_PRECISION_CAP", "100").output().unwrap();
    assert_eq!(code(&o), 3);
}
