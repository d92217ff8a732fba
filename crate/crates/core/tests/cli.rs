use std::io::Write;
use std::process::{Command, Stdio};

use chainring::cli;
use chainring::codes::{dual_code, enumerate_codes, CodeJson};
use chainring::factorization::Variant;
use chainring::ideals::{enumerate_ideals, IdealSpec};

mod common;
use common::Fixture;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(std::iter::once("chainring").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn binary(args: &[&str], env: Option<(&str, &str)>, stdin: &str) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chainring"));
    cmd.args(args).env_remove("CHAINRING_SEED").stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::null());
    if let Some((k, v)) = env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn ideal_text_and_json_roundtrip() {
    for (p, d, nu) in [(2, 1, 6), (2, 3, 4), (3, 2, 4)] {
        for spec in enumerate_ideals(p, d, nu) {
            assert_eq!(IdealSpec::parse(&spec.to_string(), nu).unwrap(), spec);
            let json = serde_json::to_string(&spec).unwrap();
            assert_eq!(serde_json::from_str::<IdealSpec>(&json).unwrap(), spec, "{json}");
        }
    }
}

#[test]
fn code_json_roundtrip() {
    let f = Fixture::new(2, 2, 1, 3, 1);
    let ctx = f.ctx();
    for code in enumerate_codes(ctx, Variant::Plain).step_by(7) {
        let json = serde_json::to_string(&code.to_json(ctx)).unwrap();
        let back: CodeJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_spec(ctx).unwrap(), code);
    }
}

#[test]
fn enumerated_json_parses_back() {
    let (code, out, _) = run(&["enumerate", "--n", "3", "--format", "json", "--limit", "50"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 50);
    let f = Fixture::new(2, 2, 1, 3, 1);
    let expected: Vec<_> = enumerate_codes(f.ctx(), Variant::Plain).take(50).collect();
    for (line, want) in out.lines().zip(expected) {
        let parsed: CodeJson = serde_json::from_str(line).unwrap();
        assert_eq!(parsed.into_spec(f.ctx()).unwrap(), want);
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["ctx", "--s", "3", "--n", "7"][..],
        &["enumerate", "--n", "7", "--limit", "200"],
        &["selfdual", "--s", "3", "--n", "7", "--limit", "100", "--format", "json"],
        &["idempotents", "--p", "3", "--n", "4"],
    ] {
        let first = run(args);
        assert_eq!(first.0, 0, "{args:?}: {}", first.2);
        assert_eq!(run(args), first, "{args:?}");
    }
}

#[test]
fn count_for_length_fourteen() {
    let (code, out, _) = run(&["count", "--s", "3", "--n", "7"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "59 × 917 × 917 = 49612451");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["count"]).0, 0);
    // gcd(p, n) != 1
    assert_eq!(run(&["count", "--n", "4"]).0, 2);
    // w not a unit mod p^s
    assert_eq!(run(&["count", "--p", "3", "--w", "3"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    // self-duality needs p = 2
    assert_eq!(run(&["selfdual", "--p", "3", "--count"]).0, 3);
    assert_eq!(run(&["selfdual", "--s", "4", "--count"]).0, 3);
}

#[test]
fn seed_comes_from_the_environment() {
    let args = ["ctx", "--s", "3", "--n", "7", "--format", "json"];
    let (code, plain) = binary(&args, None, "");
    assert_eq!(code, 0);
    // factors are put in canonical order, so the seed never shows in the output
    let (code, seeded) = binary(&args, Some(("CHAINRING_SEED", "12345")), "");
    assert_eq!((code, seeded), (0, plain));
    assert_eq!(binary(&args, Some(("CHAINRING_SEED", "not-a-number")), "").0, 2);
}

#[test]
fn dual_of_the_whole_space_is_zero() {
    let f = Fixture::new(2, 3, 1, 7, 1);
    let ctx = f.ctx();
    let whole = chainring::codes::CodeSpec::new(Variant::Plain, vec![IdealSpec::whole(); ctx.r()]);
    let input = serde_json::to_string(&whole.to_json(ctx)).unwrap();
    let (code, out) = binary(&["dual"], None, &input);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "[I(l=6), I(l=6), I(l=6)]");
    let dual = dual_code(&f.dec, &whole).unwrap();
    assert!(dual.components.iter().all(|c| *c == IdealSpec::zero(ctx.nu())));
}

#[test]
fn verify_passes_on_the_tiny_instance() {
    let (code, out, err) = run(&["verify"]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(!out.contains("FAIL"), "{out}");
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 5, "{out}");
}
