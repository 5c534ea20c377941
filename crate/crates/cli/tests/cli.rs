use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sckit::catalog;
use sckit::perm::Permutation;
use serde_json::Value;
use tempfile::TempDir;

fn sckit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sckit"))
        .args(args)
        .env_remove("SCKIT_ORDER_CAP")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = sckit(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout));
    });
    (v, out.status.code().unwrap())
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn sizes(v: &Value, key: &str) -> Vec<usize> {
    let mut s: Vec<usize> = v[key].as_array().unwrap().iter().map(|p| p.as_array().unwrap().len()).collect();
    s.sort_unstable();
    s
}

fn degrees(v: &Value) -> Vec<u64> {
    v["characters"].as_array().unwrap().iter().map(|c| c["degree"].as_u64().unwrap()).collect()
}

#[test]
fn chartab_s5_is_integral_7x7() {
    let (v, code) = json(&["chartab", "--group", "S5"]);
    assert_eq!(code, 0);
    let chars = v["characters"].as_array().unwrap();
    assert_eq!(chars.len(), 7);
    let mut d = degrees(&v);
    d.sort_unstable();
    assert_eq!(d, vec![1, 1, 4, 4, 5, 5, 6]);
    for c in chars {
        let values = c["values"].as_array().unwrap();
        assert_eq!(values.len(), 7);
        for x in values {
            assert!(x["coefficients"].as_array().unwrap().len() <= 1, "non-integer value {x}");
        }
    }
}

#[test]
fn chartab_trivial_group() {
    let (v, code) = json(&["chartab", "--group", "C1"]);
    assert_eq!(code, 0);
    assert_eq!(degrees(&v), vec![1]);
    assert_eq!(v["characters"][0]["values"][0]["text"], "1");
}

#[test]
fn chartab_from_permutation_file() {
    let dir = TempDir::new().unwrap();
    let gens = write(&dir, "s3.gens", "(1 2 3)\n(1 2)\n");
    let (v, code) = json(&["chartab", "--perm-file", &gens]);
    assert_eq!(code, 0);
    assert_eq!(degrees(&v), vec![1, 1, 2]);
}

#[test]
fn chartab_from_cayley_file() {
    let dir = TempDir::new().unwrap();
    let table = write(&dir, "c3.cayley", "3\n0 1 2\n1 2 0\n2 0 1\n");
    let (v, code) = json(&["chartab", "--cayley", &table]);
    assert_eq!(code, 0);
    assert_eq!(degrees(&v), vec![1, 1, 1]);
}

#[test]
fn text_table_lists_sizes_and_representatives() {
    let out = sckit(&["chartab", "--group", "S3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("size"));
    assert!(text.contains("(1 2 3)"));
}

#[test]
fn normal_subgroup_counts() {
    for (group, count) in [("S5", 3), ("C2xC4", 8), ("C1", 1)] {
        let (v, code) = json(&["normals", "--group", group]);
        assert_eq!(code, 0);
        assert_eq!(v["members"].as_array().unwrap().len(), count, "{group}");
    }
}

#[test]
fn product_flag_matches_catalog_product() {
    let (a, _) = json(&["normals", "--product", "C2,C4"]);
    let (b, _) = json(&["normals", "--group", "C2xC4"]);
    assert_eq!(a, b);
}

#[test]
fn nsct_examples() {
    let (v, code) = json(&["nsct", "--group", "C3xC4", "--seed", "C3x1", "--seed", "1xC4"]);
    assert_eq!(code, 0);
    assert_eq!(sizes(&v, "superclasses"), vec![1, 2, 3, 6]);

    let (v, code) = json(&["nsct", "--group", "S5", "--all-normals"]);
    assert_eq!(code, 0);
    assert_eq!(sizes(&v, "superclasses"), vec![1, 59, 60]);

    let (v, code) = json(&["nsct", "--group", "C2", "--seed", ""]);
    assert_eq!(code, 0);
    assert_eq!(sizes(&v, "superclasses"), vec![1, 1]);

    let (v, _) = json(&["nsct", "--group", "C6"]);
    assert_eq!(sizes(&v, "superclasses"), vec![1, 5]);
}

#[test]
fn non_normal_seed_exits_5() {
    let (v, code) = json(&["nsct", "--group", "S4", "--seed", "(1 2)"]);
    assert_eq!(code, 5);
    assert_eq!(v["error"]["kind"], "not_normal");
    assert_eq!(v["error"]["exit_code"], 5);
}

#[test]
fn separation_of_the_generated_theory() {
    let (v, code) = json(&["separate", "--group", "C3xC4", "--seed", "C3x1", "--seed", "1xC4"]);
    assert_eq!(code, 0);
    assert_eq!(v["in_autsup"], false);
    assert_eq!(v["in_sup_star"], false);
    assert_eq!(v["in_nsup"], true);
}

#[test]
fn separation_of_the_class_theory() {
    let (v, code) = json(&["separate", "--group", "C3xC4", "--classes"]);
    assert_eq!(code, 0);
    assert_eq!(v["in_autsup"], true);
    assert_eq!(v["in_nsup"], false);
    // Singleton superclasses outside N can never be unions of N-cosets.
    assert_eq!(v["in_sup_star"], false);

    let (v, _) = json(&["separate", "--group", "C2", "--classes"]);
    assert_eq!(v["in_autsup"], true);
    assert_eq!(v["in_nsup"], true);
    assert_eq!(v["star"].as_array().unwrap().len(), 0);
}

fn s5_sign_partition() -> String {
    let g = catalog::group("S5").unwrap();
    let (mut even, mut odd) = (Vec::new(), Vec::new());
    for x in 1..g.order() {
        let name = g.name(x).to_string();
        let p: Permutation = name.parse().unwrap();
        let transpositions: usize = p.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) { even.push(name) } else { odd.push(name) }
    }
    format!("()\n{}\n{}\n", even.join(", "), odd.join(", "))
}

#[test]
fn verify_s5_sign_partition() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "s5.part", &s5_sign_partition());
    let (v, code) = json(&["verify", "--group", "S5", &file]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], true);
    assert_eq!(v["character_parts"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_c4_examples() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good", "1\ng^2\ng, g^3\n");
    let (v, code) = json(&["verify", "--group", "C4", &good]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], true);
    assert_eq!(v["certificate"]["product_closed"], true);

    let bad = write(&dir, "bad", "1\ng\ng^2, g^3\n");
    let (v, code) = json(&["verify", "--group", "C4", &bad]);
    assert_eq!(code, 1);
    assert_eq!(v["verified"], false);
    let w = &v["witness"];
    assert_eq!(w["kind"], "product_not_in_span");
    assert_ne!(w["coefficient_a"], w["coefficient_b"]);
}

#[test]
fn verify_rejects_non_partitions() {
    let dir = TempDir::new().unwrap();
    for text in ["1\ng\n", "1, g\ng, g^2, g^3\n", "1\nq, g, g^2, g^3\n"] {
        let file = write(&dir, "p", text);
        let (v, code) = json(&["verify", "--group", "C4", &file]);
        assert_eq!(code, 6, "{text:?}");
        assert_eq!(v["error"]["kind"], "not_a_partition");
    }
}

#[test]
fn parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let latin = write(&dir, "bad.cayley", "2\n0 1\n0 1\n");
    assert_eq!(sckit(&["chartab", "--cayley", &latin]).status.code(), Some(2));
    assert_eq!(sckit(&["chartab", "--group", "Z7"]).status.code(), Some(2));
    let missing = dir.path().join("absent");
    let out = sckit(&["chartab", "--perm-file", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn order_cap_flag_and_env() {
    let (v, code) = json(&["chartab", "--group", "S5", "--order-cap", "100"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "order_cap_exceeded");

    let out = Command::new(env!("CARGO_BIN_EXE_sckit"))
        .args(["chartab", "--group", "S4"])
        .env("SCKIT_ORDER_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    let out = Command::new(env!("CARGO_BIN_EXE_sckit"))
        .args(["chartab", "--group", "S4", "--order-cap", "24"])
        .env("SCKIT_ORDER_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.json");
    let out = sckit(&["normals", "--group", "D4", "--json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(Path::new(&path)).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn json_is_byte_identical_across_runs_and_threads() {
    let args = ["separate", "--group", "C3xC4", "--seed", "C3x1", "--seed", "1xC4", "--json"];
    let a = sckit(&args).stdout;
    let b = sckit(&args).stdout;
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "4"]);
    let c = sckit(&threaded).stdout;
    assert_eq!(a, b);
    assert_eq!(a, c);

    let t1 = sckit(&["chartab", "--group", "A5", "--json", "--rng-seed", "7"]).stdout;
    let t2 = sckit(&["chartab", "--group", "A5", "--json", "--rng-seed", "7"]).stdout;
    assert_eq!(t1, t2);
}
