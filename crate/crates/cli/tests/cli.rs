use std::fs;
use std::path::{Path, PathBuf};

use ans_cli::run;
use ans_cli::spec::SystemSpec;

fn ans(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ans").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = ans(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn fixture(dir: &Path, name: &str) -> PathBuf {
    write(dir, &format!("{name}.ans"), &ok(&["fixture", name]))
}

fn construct(dir: &Path, args: &[&str]) -> PathBuf {
    let mut argv = vec!["construct"];
    argv.extend_from_slice(args);
    write(dir, &format!("{}.ans", args.join("-")), &ok(&argv))
}

#[test]
fn rep_and_val() {
    let dir = tempfile::tempdir().unwrap();
    let b4 = construct(dir.path(), &["base", "4"]);
    let b4 = b4.to_str().unwrap();
    assert_eq!(ok(&["rep", "--spec", b4, "27"]), "123\n");
    assert_eq!(ok(&["rep", "--spec", b4, "0"]), "\n");
    assert_eq!(ok(&["val", "--spec", b4, "eps"]), "0\n");
    let p = fixture(dir.path(), "pansiot");
    assert_eq!(ok(&["val", "--spec", p.to_str().unwrap(), "22"]), "8\n");
    let sq = construct(dir.path(), &["squares"]);
    assert_eq!(ok(&["rep", "--spec", sq.to_str().unwrap(), "9"]), "aaa\n");

    let (code, _, err) = ans(&["val", "--spec", b4, "0123"]);
    assert_eq!(code, 2);
    assert!(err.contains("not in the numeration language"));
    assert_eq!(ans(&["rep", "--spec", b4, "-1"]).0, 1);
}

#[test]
fn enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let f = fixture(dir.path(), "base4-fibonacci");
    let f = f.to_str().unwrap();
    assert_eq!(ok(&["enum", "--spec", f, "--to", "6"]), "0,1,4,16,17,64,65\n");
    assert_eq!(ok(&["enum", "--spec", f, "--from", "5", "--to", "6", "--csv"]), "n,t\n5,64\n6,65\n");
    let f = fixture(dir.path(), "base4-ones-threes");
    assert_eq!(
        ok(&["enum", "--spec", f.to_str().unwrap(), "--from", "1", "--to", "10"]),
        "1,3,5,7,13,15,21,23,29,31\n"
    );
    let n = construct(dir.path(), &["base", "10"]);
    assert_eq!(ok(&["enum", "--spec", n.to_str().unwrap(), "--to", "4"]), "0,1,2,3,4\n");
}

#[test]
fn csv_is_bit_stable() {
    let dir = tempfile::tempdir().unwrap();
    let p = fixture(dir.path(), "base4-k");
    let p = p.to_str().unwrap();
    let a = ok(&["enum", "--spec", p, "--to", "500", "--csv"]);
    assert_eq!(a, ok(&["enum", "--spec", p, "--to", "500", "--csv"]));
    assert_eq!(a.lines().count(), 502);
    let c = ok(&["counts", "--spec", p, "--nmax", "10", "--csv"]);
    assert_eq!(c, ok(&["counts", "--spec", p, "--nmax", "10", "--csv"]));
    assert!(c.starts_with("n,u,v\n0,1,1\n"));
}

#[test]
fn counts_report_recurrences() {
    let dir = tempfile::tempdir().unwrap();
    let p = fixture(dir.path(), "pansiot");
    let out = ok(&["counts", "--spec", p.to_str().unwrap(), "--nmax", "4"]);
    assert!(out.contains("v=1,4,12,32,80\n"), "{out}");
    assert!(out.contains("recurrence_u=s(n+2) = 4*s(n+1) - 4*s(n) for n >= 0"), "{out}");
    let out = ok(&["counts", "--spec", p.to_str().unwrap(), "--set", "--nmax", "3"]);
    assert!(out.contains("u=1,1,2,4\n"), "{out}");
}

#[test]
fn growth_and_predict() {
    let dir = tempfile::tempdir().unwrap();
    let p = fixture(dir.path(), "pansiot");
    let p = p.to_str().unwrap();
    assert_eq!(ok(&["growth", "--spec", p]), "sig p=1 c=1 theta=2\n");
    assert_eq!(ok(&["predict", "--spec", p]), "class logpower f=1 logexp=1\n");
    let oz = fixture(dir.path(), "base2-ones-zeros");
    assert_eq!(
        ok(&["predict", "--spec", oz.to_str().unwrap()]),
        "class stretchedexp polyexp=0 base=2 innerexp=1/2 innerconst~sqrt(2) refined=asymptotic\n"
    );
    let rp = construct(dir.path(), &["rational_power", "3", "2"]);
    assert_eq!(ok(&["predict", "--spec", rp.to_str().unwrap()]), "class power r=3/2\n");
    let lp = construct(dir.path(), &["logpoly", "2", "1"]);
    assert_eq!(ok(&["predict", "--spec", lp.to_str().unwrap()]), "class logpower f=1 logexp=2\n");
    let u = construct(dir.path(), &["unary"]);
    assert_eq!(ok(&["predict", "--spec", u.to_str().unwrap()]), "class power r=1\n");
}

#[test]
fn finite_sets_and_missing_blocks() {
    let dir = tempfile::tempdir().unwrap();
    let finite = write(dir.path(), "finite.ans", "alphabet: 01\nregex: eps | 1(0|1)*\nset:\nregex: 1 | 10\n");
    let finite = finite.to_str().unwrap();
    assert_eq!(ok(&["growth", "--spec", finite, "--set"]), "sig finite\n");
    assert_eq!(ans(&["predict", "--spec", finite]).0, 2);
    let bare = write(dir.path(), "bare.ans", "alphabet: 01\nregex: eps | 1(0|1)*\n");
    assert_eq!(ans(&["enum", "--spec", bare.to_str().unwrap()]).0, 2);
    assert_eq!(ans(&["rep", "--spec", "/nonexistent/spec.ans", "1"]).0, 2);
}

#[test]
fn subset_violation_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.ans", "alphabet: ab\nregex: a*\nset:\nregex: b\n");
    let (code, _, err) = ans(&["enum", "--spec", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("not contained"));
}

#[test]
fn infeasible_targets_exit_3() {
    let (code, out, err) = ans(&["feasibility", "--logexp", "-2", "--power", "1"]);
    assert_eq!(code, 3);
    assert!(out.ends_with("infeasible: f=1 ⇒ c≥d ⇒ log-exponent ≥ 0\n"), "{out}");
    assert!(err.contains("k=2"));
    let out = ok(&["feasibility", "--logexp", "-1", "--power", "2"]);
    assert_eq!(out, "construction=InverseLogPoly { k: 1, l: 2 }\nclass logpower f=2 logexp=-1\n");
    let p = tempfile::tempdir().unwrap();
    let sub = write(p.path(), "sub.ans", "alphabet: ab\nregex: a*b*\nset:\nregex: a*\n");
    assert_eq!(ok(&["predict", "--spec", sub.to_str().unwrap()]), "class power r=2\n");
}

#[test]
fn verify_passes_on_fixtures_and_flags_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let p = fixture(dir.path(), "pansiot");
    let out = ok(&["verify", "--spec", p.to_str().unwrap(), "--nmax", "40"]);
    assert!(out.contains("lemma_l=PASS nmax=40"), "{out}");
    assert!(out.ends_with("result=PASS\n"));
    assert!(!out.contains("FAIL"));

    // Flip one final flag of the set automaton.
    let text = fs::read_to_string(&p).unwrap();
    let set_at = text.find("set:").unwrap();
    let (head, tail) = text.split_at(set_at);
    let tampered = format!("{head}{}", tail.replacen("final 0 1", "final 1", 1));
    assert_ne!(tampered, text);
    let bad = write(dir.path(), "tampered.ans", &tampered);
    let (code, out, _) = ans(&["verify", "--spec", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("expect_F=FAIL n=0 expected=1 found=0"), "{out}");
    assert!(out.ends_with("result=FAIL\n"));
}

#[test]
fn verify_fit_on_k() {
    let dir = tempfile::tempdir().unwrap();
    let p = fixture(dir.path(), "base4-k");
    let out = ok(&["verify", "--spec", p.to_str().unwrap(), "--fit"]);
    let fit = out.lines().find(|l| l.starts_with("fit=")).unwrap();
    assert!(fit.starts_with("fit=PASS"), "{fit}");
    assert!(out.contains("expect_class=PASS found=\"class logpower f=log(4)/log(sqrt(6)) logexp=0\""), "{out}");
}

#[test]
fn every_fixture_verifies() {
    let dir = tempfile::tempdir().unwrap();
    for name in ok(&["fixture", "--list"]).lines() {
        let p = fixture(dir.path(), name);
        let (code, out, _) = ans(&["verify", "--spec", p.to_str().unwrap(), "--fit"]);
        assert_eq!(code, 0, "{name}: {out}");
    }
}

#[test]
fn constructions_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let families: &[&[&str]] = &[
        &["base", "3"],
        &["unary"],
        &["bounded", "3"],
        &["fibonacci"],
        &["squares"],
        &["rational_power", "5", "2"],
        &["logpoly", "1", "1"],
        &["inverse_logpoly", "1", "2"],
    ];
    for args in families {
        let text = ok(&[&["construct"], *args].concat());
        let spec = SystemSpec::parse(&text).unwrap();
        assert_eq!(spec.to_string(), text, "{args:?}");
        let out = dir.path().join("out.ans");
        ok(&[&["construct"], *args, &["--out", out.to_str().unwrap()]].concat());
        assert_eq!(fs::read_to_string(&out).unwrap(), text);
        let (code, report, _) = ans(&["verify", "--spec", out.to_str().unwrap()]);
        assert_eq!(code, 0, "{args:?}: {report}");
    }
    assert_eq!(ans(&["construct", "rational_power", "1", "2"]).0, 1);
    assert_eq!(ans(&["construct", "logpoly", "1"]).0, 1);
    assert_eq!(ans(&["construct", "nope"]).0, 1);
}

#[test]
fn morphic_commands() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "h.txt", "1 -> 1010\n0 -> 00\n");
    let h = h.to_str().unwrap();
    assert_eq!(ok(&["fixed-point", "--morphism", h, "--seed", "1", "--prefix", "12"]), "101000101000\n");
    assert_eq!(ok(&["fixed-point", "--morphism", h, "--seed", "0", "--prefix", "3"]), "000\n");
    let dies = write(dir.path(), "dies.txt", "a -> ab\nb -> eps\n");
    let (code, _, err) = ans(&["fixed-point", "--morphism", dies.to_str().unwrap(), "--seed", "a"]);
    assert_eq!(code, 2);
    assert!(err.contains("finite"), "{err}");
    assert_eq!(ans(&["fixed-point", "--morphism", h, "--seed", "x"]).0, 1);
    let p = fixture(dir.path(), "pansiot");
    let out = ok(&["associated", "--spec", p.to_str().unwrap(), "--prefix", "12"]);
    assert!(out.ends_with("alpha=α\nprefix=101000101000\n"), "{out}");
}

#[test]
fn selfcheck_is_seeded() {
    let a = ok(&["selfcheck", "--seed", "11"]);
    assert_eq!(a, ok(&["selfcheck", "--seed", "11"]));
    assert!(a.starts_with("seed=11\n") && a.ends_with("result=PASS\n"), "{a}");
}

#[test]
fn usage_errors() {
    assert_eq!(ans(&[]).0, 1);
    assert_eq!(ans(&["frobnicate"]).0, 1);
    let (code, out, _) = ans(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
    assert_eq!(ans(&["fixture"]).0, 1);
    assert_eq!(ans(&["fixture", "nope"]).0, 1);
}
