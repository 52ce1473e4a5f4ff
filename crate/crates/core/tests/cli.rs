use gstar_core::cli::{parse_range, run};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["gstar"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn codim_table() {
    let (code, out, _) = call(&["codim", "--algebra", "U2star@Z2", "--n", "1..3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "n,c_gstar,c_star,c_graded,c_ordinary\n1,1,1,1,1\n2,1,1,1,1\n3,1,1,1,1\n");
    let (_, out, _) = call(&["codim", "--algebra", "nilpotent[dim=2]", "--n", "1..4"]);
    let gstar: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(&gstar[1..], &["0", "0", "0"]);
}

#[test]
fn codim_blocks_sum_to_total() {
    let (_, out, _) = call(&["codim", "--algebra", "Mrho[g]@Z2", "--n", "3", "--blocks"]);
    let mut total = 0u64;
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    for rec in rdr.records() {
        let rec = rec.unwrap();
        total += rec[2].parse::<u64>().unwrap() * rec[3].parse::<u64>().unwrap();
    }
    let (_, out, _) = call(&["codim", "--algebra", "Mrho[g]@Z2", "--n", "3"]);
    let summary: u64 = out.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(total, summary);
}

#[test]
fn identity_verdicts_and_exit_codes() {
    let (code, out, _) = call(&["identity", "--algebra", "Mrho[g]@Z2", "z1_1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("holds,true"));
    let (code, out, _) = call(&["identity", "--algebra", "Mrho[1]@Z2", "[y1_1, y2_1]"]);
    assert_eq!(code, 2);
    assert!(out.contains("witness"));
    let (code, _, err) = call(&["identity", "--algebra", "Mrho[g]@Z2", "z1_1 +"]);
    assert_eq!(code, 4);
    assert!(err.contains("syntax"));
    let (code, _, err) = call(&["codim", "--algebra", "A2star", "--n", "8"]);
    assert_eq!(code, 3);
    assert!(err.contains("capacity"));
    let (code, _, _) = call(&["codim", "--algebra", "A2star", "--n", "8", "--cap-monomials", "40320"]);
    assert_eq!(code, 0);
    let (code, _, _) = call(&["frobnicate"]);
    assert_eq!(code, 4);
}

#[test]
fn ideal_and_contains() {
    let (code, _, _) = call(&["ideal-check", "--algebra", "Mrho[g]@Z2", "--N", "3", "z1_1", "x1_g x2_g"]);
    assert_eq!(code, 0);
    let (code, out, _) = call(&["ideal-check", "--algebra", "Mrho[g]@Z2", "--N", "3", "z1_1"]);
    assert_eq!(code, 2);
    assert!(out.contains("Incomplete"));
    let (code, _, _) = call(&["contains", "--algebra", "Mrho[g]@Z2", "--other", "N3[g]", "--N", "3"]);
    assert_eq!(code, 0);
    let (code, out, _) = call(&["contains", "--algebra", "Mrho[g]@Z2", "--other", "Mrho[1]", "--N", "2"]);
    assert_eq!(code, 2);
    assert!(out.contains("separator,z1_1"));
}

#[test]
fn json_is_deterministic_across_workers() {
    let args = ["--format", "json", "growth", "--algebra", "C3[g]@Z2", "--N", "3", "--n", "5"];
    let (c1, a, _) = call(&args);
    let mut with_workers = vec!["--workers", "2"];
    with_workers.extend_from_slice(&args);
    let (c2, b, _) = call(&with_workers);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["class"], "quadratic");
    assert_eq!(v["profile"]["leading"], "1/2");
}

#[test]
fn growth_csv_uses_exact_rationals() {
    let (_, out, _) = call(&["growth", "--algebra", "C3[g]@Z2", "--N", "2", "--n", "5"]);
    assert!(out.contains("leading,1/2"));
    assert!(out.contains("class,quadratic"));
}

#[test]
fn minimal_and_incomparable() {
    let (code, out, _) = call(&["minimal", "--algebra", "C2star[g]@Z2", "--N", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("minimal-linear"));
    let (code, out, _) = call(&["incomparable", "--set", "LIN", "--N", "3"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn catalog_and_validate() {
    let (code, out, _) = call(&["catalog", "list", "--set", "K1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 11);
    let (_, out, _) = call(&["--format", "json", "catalog", "show", "M4[g]"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dim"], 4);
    let dir = std::env::temp_dir().join(format!("gstar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("m4.json");
    std::fs::write(&good, out).unwrap();
    let (code, _, _) = call(&["validate", good.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, out, _) = call(&["codim", "--algebra", good.to_str().unwrap(), "--n", "2"]);
    assert_eq!(code, 0);
    let (_, direct, _) = call(&["codim", "--algebra", "M4[g]@Z2", "--n", "2"]);
    assert_eq!(out, direct);
    let mut v = v;
    v["involution"][1][1] = serde_json::json!("2");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let (code, out, _) = call(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2, "{out}");
    let (code, _, _) = call(&["validate", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 4);
}

#[test]
fn selfcheck_is_seeded() {
    let a = call(&["--seed", "11", "selfcheck", "--algebra", "M8[1,g]@Z2", "--n", "3"]);
    let b = call(&["--seed", "11", "selfcheck", "--algebra", "M8[1,g]@Z2", "--n", "3"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}

#[test]
fn ranges() {
    assert_eq!(parse_range("1..5").unwrap(), vec![1, 2, 3, 4, 5]);
    assert_eq!(parse_range("3").unwrap(), vec![3]);
    assert_eq!(parse_range("2..=4").unwrap(), vec![2, 3, 4]);
    assert!(parse_range("0..2").is_err());
    assert!(parse_range("5..1").is_err());
}
