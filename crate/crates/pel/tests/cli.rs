use std::process::Command;

use serde_json::Value;

fn run_with_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let lookup = |k: &str| env.iter().find(|(n, _)| *n == k).map(|(_, v)| v.to_string());
    let argv = std::iter::once("pel").chain(args.iter().copied());
    let code = pel::run(argv, &lookup, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_with_env(args, &[])
}

fn json_lines(s: &str) -> Vec<Value> {
    s.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn census_m10_json() {
    let (code, out, _) = run(&["census", "--group", "m10", "--prime", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["count"], 496);
    assert_eq!(v["order"], 720);
    assert_eq!(v["probability"], "31/45");
}

#[test]
fn census_with_coset_breakdown() {
    let (code, out, _) = run(&[
        "census", "--group", "sym:4", "--prime", "2", "--normal-gens", "(0 1)(2 3)", "(0 2)(1 3)",
    ]);
    assert_eq!(code, 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["count"], 16);
    let total: u64 = v["cosets"].as_array().unwrap().iter().map(|c| c["count"].as_u64().unwrap()).sum();
    assert_eq!(total, 16);
    assert_eq!(v["cosets"].as_array().unwrap().len(), 6);
}

#[test]
fn huge_orders_are_exact_json_integers() {
    let (code, out, _) = run(&["census", "--group", "xt:30", "--prime", "2"]);
    assert_eq!(code, 0);
    let order = num_bigint::BigUint::from(360u32).pow(30) * 2u32;
    assert!(out.contains(&format!("\"order\":{order}")), "{out}");
}

#[test]
fn coset_commands() {
    let (_, out, _) = run(&["coset", "--outer", "frob:27", "--prime", "3"]);
    let v = &json_lines(&out)[0];
    assert_eq!((v["count"].as_u64(), v["order"].as_u64()), (Some(7371), Some(9828)));
    assert_eq!(v["probability"], "3/4");
    let (_, out, _) = run(&["coset", "--outer", "frob:27^2", "--prime", "3"]);
    assert_eq!(json_lines(&out)[0]["count"], 7371);
    let (_, out, _) = run(&["coset", "--group", "m10", "--prime", "2"]);
    assert_eq!(json_lines(&out)[0]["probability"], "1/1");
    let (_, out, _) = run(&[
        "coset", "--group", "sym:5", "--normal", "alt:5", "--rep", "(0 1)", "--prime", "3",
    ]);
    assert_eq!(json_lines(&out)[0]["count"], 0);
}

#[test]
fn sylow_pairs_baer_gamma() {
    let (_, out, _) = run(&["sylow", "--group", "alt:5", "--prime", "3"]);
    let v = &json_lines(&out)[0];
    assert_eq!((v["sylow_order"].as_u64(), v["normalizer_order"].as_u64()), (Some(3), Some(6)));
    assert_eq!(v["bound"], "1/2");

    let (_, out, _) = run(&["pairs", "--group", "sym:3", "--prime", "2"]);
    assert_eq!(json_lines(&out)[0]["probability"], "5/18");
    let (_, out, _) = run(&["pairs", "--group", "sym:3", "--prime", "2", "--element", "(0 1)"]);
    assert_eq!(json_lines(&out)[0]["probability"], "1/3");

    let (_, out, _) = run(&["baer", "--group", "sym:4", "--prime", "2"]);
    let v = &json_lines(&out)[0];
    assert_eq!(v["measure"], "1/6");
    assert_eq!(v["equals_o_p"], true);

    let (_, out, _) = run(&["gamma", "--socle", "alt:5", "--group", "sym:5"]);
    assert_eq!(json_lines(&out)[0]["outer_max"], "2/3");
    let (_, out, _) = run(&["gamma", "--socle", "psl2:9", "--group", "m10"]);
    assert_eq!(json_lines(&out)[0]["outer_max"], "1/1");
}

#[test]
fn tower_and_snprop() {
    let (code, out, _) = run(&["tower", "--family", "gt", "--depth", "2"]);
    assert_eq!(code, 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["exact"]["2"], "1157/2025");
    assert_eq!(v["pass"], true);
    let (_, out, _) = run(&["snprop", "--n", "4", "--to", "6", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("alternating,even_count,n,odd_coset,odd_count,symmetric"));
    assert!(lines[3].starts_with("17/45,"));
}

#[test]
fn verify_single_claim() {
    let (code, out, _) = run(&["verify", "--claim", "l23"]);
    assert_eq!(code, 0);
    let v = json_lines(&out);
    assert_eq!(v.len(), 1);
    assert_eq!(v[0]["claim"], "l23");
    assert_eq!(v[0]["pass"], true);
    assert!(!v[0]["computed"].as_object().unwrap().is_empty());

    let (code, out, _) = run(&["verify", "--claim", "gxfinite"]);
    assert_eq!(code, 0);
    assert!(json_lines(&out).iter().all(|o| o["claim"] == "gxfinite"));
}

#[test]
fn verify_with_a_custom_corpus() {
    let dir = std::env::temp_dir().join(format!("pel-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // a solvable N is outside the hypotheses and reported as skipped
    let path = dir.join("corpus.toml");
    std::fs::write(
        &path,
        "[[podd]]\ngroup = \"sym:4\"\nnormal = \"alt:4\"\nprime = 3\n",
    )
    .unwrap();
    let (code, out, _) = run(&["verify", "--claim", "podd", "--corpus", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = json_lines(&out);
    assert_eq!(v[0]["status"], "skipped");
    assert_eq!(v[0]["reason"], "N is solvable");

    let (code, out, err) = run(&["verify", "--claim", "podd", "--corpus", "/nonexistent/pel.toml"]);
    assert_eq!((code, out.as_str()), (2, ""));
    assert!(err.contains("nonexistent"));
}

#[test]
fn verify_is_byte_identical_without_timing() {
    let args = ["verify", "--claim", "onlypsl", "--no-timing"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a, b);
    assert!(json_lines(&a.1).iter().all(|o| o["ms"] == 0));
}

#[test]
fn estimates_are_reproducible() {
    let args = ["estimate", "--group", "m10", "--prime", "2", "--samples", "20000", "--seed", "7"];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(first, run(&args).1);
    let v = &json_lines(&first)[0];
    let (lo, hi) = (v["low"].as_f64().unwrap(), v["high"].as_f64().unwrap());
    assert!(lo <= 496.0 / 720.0 && 496.0 / 720.0 <= hi);
    let (_, other, _) = run(&["estimate", "--group", "m10", "--prime", "2", "--samples", "20000", "--seed", "8"]);
    assert_ne!(first, other);
}

#[test]
fn estimate_on_an_all_two_coset() {
    let (code, out, _) = run(&["estimate", "--coset", "diagfrob:9", "--prime", "2", "--samples", "2000"]);
    assert_eq!(code, 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["estimate"], 1.0);
    assert_eq!(v["high"], 1.0);
}

#[test]
fn seed_from_environment() {
    let args = ["estimate", "--group", "sym:5", "--prime", "2", "--samples", "500"];
    let a = run_with_env(&args, &[("PEL_SEED", "11")]).1;
    let b = run_with_env(&[&args[..], &["--seed", "11"]].concat(), &[]).1;
    assert_eq!(a, b);
    let (code, out, err) = run_with_env(&args, &[("PEL_ENUM_CAP", "zero")]);
    assert_eq!((code, out.as_str()), (2, ""));
    assert!(err.contains("PEL_ENUM_CAP"));
}

#[test]
fn caps_are_enforced() {
    let (code, out, err) = run(&["census", "--group", "sym:6", "--prime", "2", "--enum-cap", "100"]);
    assert_eq!((code, out.as_str()), (2, ""));
    assert!(err.contains("cap"), "{err}");
    let (code, _, _) = run_with_env(&["pairs", "--group", "sym:5", "--prime", "2"], &[("PEL_PAIR_CAP", "50")]);
    assert_eq!(code, 2);
}

#[test]
fn usage_errors_emit_nothing() {
    for args in [
        &["census", "--group", "meta:5,1,2,3", "--prime", "2"][..],
        &["census", "--group", "m10", "--prime", "4"],
        &["census", "--group", "m10"],
        &["frobnicate"],
        &["verify", "--claim", "no-such-claim"],
        &["pairs", "--group", "sym:3", "--prime", "2", "--element", "(0 7)"],
        &["estimate", "--group", "m10", "--prime", "2", "--samples", "0"],
        &["coset", "--prime", "2"],
        &["snprop", "--n", "61"],
    ] {
        let (code, out, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    let (_, _, err) = run(&["census", "--group", "meta:5,1,2,3", "--prime", "2"]);
    assert!(err.contains("byte 11"), "{err}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pel");
    let ok = Command::new(bin).args(["verify", "--claim", "m10"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["census", "--group", "nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
