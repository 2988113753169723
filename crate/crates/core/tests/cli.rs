//! End-to-end runs of the `arithdisc` binary.

use std::path::PathBuf;
use std::process::Command;

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_arithdisc"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("arithdisc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn sample_configs_succeed() {
    for cmd in ["orders", "lemma1", "arch", "criteria", "search"] {
        let cfg = configs().join(format!("{cmd}.toml"));
        let (code, out) = run(&[cmd, "--config", cfg.to_str().unwrap()]);
        assert_eq!(code, 0, "{cmd}");
        for line in out.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(v.get("record").is_some());
        }
    }
}

#[test]
fn lemma1_pair_verdict() {
    let p = scratch("pair.toml", "[[pair]]\nf = [1, 0, 1]\ng = [-2, 0, 1]\n");
    let (code, out) = run(&["lemma1", "--config", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["bound"]["value"], "1024");
}

#[test]
fn criteria_equality_flag() {
    let p = scratch(
        "ex22.toml",
        "[[curve]]\nambient = \"product\"\ng1 = 0\ng2 = 1\nd1 = 4\nd2 = 2\nnu = 2\n",
    );
    let (code, out) = run(&["criteria", "--config", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let first: serde_json::Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(first["verdict"]["criterion"], "product_bound");
    assert_eq!(first["verdict"]["equality"], true);
}

#[test]
fn empty_input_gives_no_records() {
    let p = scratch("empty.toml", "");
    let (code, out) = run(&["orders", "--config", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
}

#[test]
fn invalid_config_exits_one() {
    let p = scratch("bad.toml", "[[order]]\npoly = [1, 0, 1]\ncolour = 3\n");
    assert_eq!(run(&["orders", "--config", p.to_str().unwrap()]).0, 1);
    let p = scratch("reducible.toml", "[[order]]\npoly = [-1, 0, 1]\n");
    assert_eq!(run(&["orders", "--config", p.to_str().unwrap()]).0, 1);
    let p = scratch("noseed.toml", "[[distribution]]\npower = 2\n");
    assert_eq!(run(&["arch", "--config", p.to_str().unwrap()]).0, 1);
    assert_eq!(run(&["arch", "--config", "/nonexistent.toml"]).0, 1);
    assert_eq!(
        run(&["criteria", "--oracle", "--config", p.to_str().unwrap()]).0,
        1
    );
}

#[test]
fn output_file_and_reruns_identical() {
    let cfg = configs().join("search.toml");
    let a = scratch("a.jsonl", "");
    let b = scratch("b.jsonl", "");
    for o in [&a, &b] {
        let (code, _) = run(&[
            "search",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            o.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!x.is_empty());
    assert_eq!(x, y);
}

#[test]
fn oracle_mode_matches() {
    let cfg = configs().join("orders.toml");
    let (_, fast) = run(&["orders", "--config", cfg.to_str().unwrap()]);
    let (code, slow) = run(&["orders", "--oracle", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(fast, slow.replace("\"oracle\"", "\"fast\""));
}
