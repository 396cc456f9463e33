use std::process::{Command, Output};

use serde_json::Value;

fn stabletype(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabletype"))
        .args(args)
        .env_remove("ORDER_CAP")
        .env_remove("SUBGROUP_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn error(o: &Output) -> Value {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    assert_eq!(
        err.trim_end().lines().count(),
        1,
        "single-line error record: {err}"
    );
    serde_json::from_str(err.trim_end()).expect("error record is JSON")
}

#[test]
fn minami_pair_is_equivalent_at_two() {
    let o = stabletype(&["equiv", "Q12 x C2", "D6 x C4", "--prime", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Equivalent"));
}

#[test]
fn sylow_mismatch_exits_one() {
    let o = stabletype(&["equiv", "C4", "C2 x C2", "--prime", "2", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["result"], "SylowMismatch");
    assert_eq!(v["schema"], 1);
}

#[test]
fn methods_can_be_forced() {
    let o = stabletype(&[
        "equiv",
        "S3",
        "C6",
        "--prime",
        "3",
        "--method",
        "normal-sylow",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["method"], "normal-sylow");
    assert_eq!(v["result"], "NotEquivalent");
    assert!(v["pointwise"]["rows"].is_array());

    let o = stabletype(&[
        "equiv",
        "S3",
        "S3",
        "--prime",
        "2",
        "--method",
        "normal-sylow",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error(&o)["error"], "NotNormalSylow");
}

#[test]
fn json_includes_mark_tables() {
    let o = stabletype(&[
        "equiv", "A4", "C2 x C2", "--prime", "2", "--method", "general", "--json",
    ]);
    let v = json(&o);
    let per_q = v["per_q"].as_array().unwrap();
    assert_eq!(per_q.len(), 3);
    let v4 = per_q.iter().find(|q| q["q"] == "E2^2").unwrap();
    assert_eq!(v4["out_order"], 6);
    assert_eq!(v4["marks1"], serde_json::json!([2, 0, 2]));
    // A4 has one class of involutions, C2 x C2 has three
    assert_eq!(v["witness"]["q"], "C2");
}

#[test]
fn decomposition_json() {
    let o = stabletype(&["mw-decompose", "S3", "--prime", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(
        v["terms"],
        serde_json::json!([{ "group": "C2", "coeff": "1" }])
    );
    assert_eq!(v["integral"]["denominator"], "1");
    assert_eq!(v["dropped"].as_array().unwrap().len(), 2);
    assert!(v.get("raw").is_none());

    let o = stabletype(&["mw-decompose", "S4", "--prime", "2", "--raw", "--json"]);
    let v = json(&o);
    assert!(v["raw"].as_array().unwrap().len() > 1);
    let coeffs: Vec<&str> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["coeff"].as_str().unwrap())
        .collect();
    assert!(
        coeffs.iter().all(|c| !c.contains('.')),
        "fractions, not floats: {coeffs:?}"
    );
}

#[test]
fn json_is_deterministic() {
    for args in [
        &["equiv", "Q12 x C2", "D6 x C4", "--prime", "2", "--json"][..],
        &["mw-decompose", "S4", "--prime", "2", "--raw", "--json"][..],
        &["corpus", "--filter", "psi", "--json"][..],
    ] {
        let a = stabletype(args);
        let b = stabletype(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn parse_errors_carry_position() {
    let o = stabletype(&["info", "S3 y C2"]);
    assert_eq!(o.status.code(), Some(2));
    let e = error(&o);
    assert_eq!(e["error"], "ParseError");
    assert_eq!(e["position"], 3);
}

#[test]
fn bad_prime_is_rejected() {
    let o = stabletype(&["mw-decompose", "S3", "--prime", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error(&o)["error"], "BadPrime");
}

#[test]
fn caps_are_enforced_and_staged() {
    let o = stabletype(&["--order-cap", "100", "info", "S5"]);
    assert_eq!(o.status.code(), Some(2));
    let e = error(&o);
    assert_eq!(e["error"], "CapExceeded");
    assert_eq!(e["stage"], "building group");

    let o = Command::new(env!("CARGO_BIN_EXE_stabletype"))
        .args(["mw-decompose", "S4", "--prime", "2"])
        .env("SUBGROUP_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error(&o)["error"], "CapExceeded");
}

#[test]
fn info_reports_structure() {
    let v = json(&stabletype(&["info", "A4", "--json"]));
    assert_eq!(v["order"], 12);
    assert_eq!(v["name"], "A4");
    assert_eq!(v["subgroups"], 10);
    assert_eq!(v["conjugacy_classes"], 4);
    let p2 = &v["primes"][0];
    assert_eq!(p2["sylow"], "E2^2");
    assert_eq!(p2["sylow_normal"], true);
    assert_eq!(p2["cyclic_mod_p"], true);
}

#[test]
fn rep_table_counts() {
    let v = json(&stabletype(&[
        "rep-table",
        "C2",
        "S3",
        "--prime",
        "2",
        "--json",
    ]));
    assert_eq!(v["hom_count"], 4);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 2);
    let sizes: Vec<u64> = classes
        .iter()
        .map(|c| c["orbit_size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes.iter().sum::<u64>(), 4);
}

#[test]
fn weyl_of_a4_at_two() {
    let v = json(&stabletype(&["weyl", "A4", "--prime", "2", "--json"]));
    assert_eq!(v["out_order"], 6);
    assert_eq!(v["weyl_order"], 3);
    assert_eq!(v["element_orders"], serde_json::json!([1, 3, 3]));
}

#[test]
fn pointwise_modes() {
    let o = stabletype(&["pointwise", "E3^3", "H3"]);
    assert_eq!(o.status.code(), Some(2), "degrees 9 and 27");
    assert_eq!(error(&o)["error"], "BadParameter");
    let o = stabletype(&["pointwise", "C4", "perm{(1 3 2 4)}"]);
    assert_eq!(o.status.code(), Some(0));
    let o = stabletype(&["pointwise", "C4", "perm{(1 2)(3 4),(1 3)(2 4)}"]);
    assert_eq!(o.status.code(), Some(1));

    let o = stabletype(&[
        "pointwise",
        "perm{(1 2)}",
        "perm{(1 2)(3 4)}",
        "--ambient",
        "S4",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = stabletype(&[
        "pointwise",
        "perm{(1 2)(3 4)}",
        "perm{(1 3)(2 4)}",
        "--ambient",
        "S4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = stabletype(&["pointwise", "perm{(1 2 3 4 5)}", "C3", "--ambient", "S4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn burnside_rank() {
    let o = stabletype(&["burnside-rank", "S3", "--prime", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["cyclic_class_count"], 2);
    assert_eq!(v["matrix"]["entries"], serde_json::json!([[6, 0], [3, 1]]));
}

#[test]
fn corpus_runs_and_detects_wrong_expectations() {
    let o = stabletype(&["corpus", "--filter", "mw-"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS [ 7] mw-s3-2"));

    let o = stabletype(&["corpus", "--filter", "mw-", "--inject-wrong", "mw-s3-2"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL [ 7] mw-s3-2"), "{out}");
    assert!(out.contains("expected <injected>"));

    let o = stabletype(&["corpus", "--filter", "no-such-case", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["cases"].as_array().unwrap().len(), 0);
}
