use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schoenberg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("schoenberg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json_stdout(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn read_json(path: &PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

#[test]
fn poisson_coefficients() {
    let out = bin(&[
        "coeffs", "--family", "poisson", "--r", "0.5", "--d", "1", "--N", "20",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    assert_eq!(v["space"], "real");
    assert_eq!(v["truncation"], 20);
    let b = floats(&v["coeffs"]);
    assert!((b[0] - 1.0 / 3.0).abs() < 1e-13);
    for (n, c) in b.iter().enumerate().skip(1) {
        assert!(
            (c - 2.0 / 3.0 * 0.5f64.powi(n as i32)).abs() < 1e-13,
            "n = {n}"
        );
    }
}

#[test]
fn walk_roundtrip_on_mixture_file() {
    let (mix, up, back) = (
        scratch("mix.json"),
        scratch("up.json"),
        scratch("back.json"),
    );
    let out = bin(&[
        "coeffs",
        "--family",
        "gegenbauer-mixture",
        "--seed",
        "9",
        "--d",
        "2",
        "--N",
        "14",
        "--mix-degree",
        "12",
        "--out",
        mix.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = bin(&[
        "walk-up",
        "--in",
        mix.to_str().unwrap(),
        "--out",
        up.to_str().unwrap(),
    ]);
    assert!(matches!(out.status.code(), Some(0 | 2)));
    let out = bin(&[
        "walk-down",
        "--in",
        up.to_str().unwrap(),
        "--out",
        back.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let a = floats(&read_json(&mix)["coeffs"]);
    let b = floats(&read_json(&back)["coeffs"]);
    assert_eq!(b.len(), 13);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-14);
    }
}

#[test]
fn complex_walks_and_spd_check() {
    let (mono, up) = (scratch("mono.json"), scratch("mono_up.json"));
    let out = bin(&[
        "ccoeffs",
        "--family",
        "disk-monomial",
        "--m",
        "1",
        "--n",
        "1",
        "--q",
        "2",
        "--M",
        "6",
        "--out",
        mono.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = bin(&[
        "spd-check",
        "--in",
        mono.to_str().unwrap(),
        "--other",
        "complex:3:member",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    assert_eq!(v["summary"]["kind"], "violates");
    assert_eq!(v["summary"]["modulus"], 2);
    assert_eq!(v["summary"]["residue"], 1);
    assert_eq!(v["pattern"]["diffs"], serde_json::json!([0]));
    assert_eq!(v["implications"][0]["conclusion"]["status"], "non-strict");

    let out = bin(&[
        "cwalk-up",
        "--in",
        mono.to_str().unwrap(),
        "--out",
        up.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = bin(&["cwalk-down", "--in", up.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_stdout(&out);
    assert_eq!(v["q"], 2);
    let total: f64 = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e[2].as_f64().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn reconstruct_both_spaces() {
    let real = scratch("cos.json");
    bin(&[
        "coeffs",
        "--family",
        "cosine",
        "--d",
        "3",
        "--N",
        "4",
        "--out",
        real.to_str().unwrap(),
    ]);
    let v = json_stdout(&bin(&[
        "reconstruct",
        "--in",
        real.to_str().unwrap(),
        "--theta",
        "0,1.0",
    ]));
    assert!((v[0]["value"].as_f64().unwrap() - 1.0).abs() < 1e-13);
    assert!((v[1]["value"].as_f64().unwrap() - 1.0f64.cos()).abs() < 1e-13);

    let complex = scratch("z.json");
    std::fs::write(
        &complex,
        r#"{"space":"complex","q":3,"max_degree":4,"entries":[[1,0,1.0]],"valid_mass":true}"#,
    )
    .unwrap();
    let v = json_stdout(&bin(&[
        "reconstruct",
        "--in",
        complex.to_str().unwrap(),
        "--z",
        "0.3:-0.4",
    ]));
    assert!((v[0]["re"].as_f64().unwrap() - 0.3).abs() < 1e-14);
    assert!((v[0]["im"].as_f64().unwrap() + 0.4).abs() < 1e-14);
}

#[test]
fn malformed_input_exits_one_and_names_field() {
    let bad = scratch("bad.json");
    std::fs::write(
        &bad,
        r#"{"space":"real","d":2,"truncation":1,"coeffs":[1,"x"],"valid_mass":true}"#,
    )
    .unwrap();
    let out = bin(&["walk-up", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("coeffs[1]"));
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(
        bin(&["walk-up", "--in", bad.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(bin(&["walk-up"]).status.code(), Some(1));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn validity_failures_exit_two() {
    let signed = scratch("signed.json");
    std::fs::write(
        &signed,
        r#"{"space":"real","d":3,"truncation":2,"coeffs":[1.2,-0.2,0.1],"valid_mass":false}"#,
    )
    .unwrap();
    let out = bin(&["walk-down", "--in", signed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // a mixture on S^1 need not lie in Ψ_3; the output is written either way
    let mix = scratch("mix2.json");
    bin(&[
        "coeffs",
        "--family",
        "gegenbauer-mixture",
        "--seed",
        "2",
        "--d",
        "1",
        "--N",
        "8",
        "--out",
        mix.to_str().unwrap(),
    ]);
    let out = bin(&["walk-up", "--in", mix.to_str().unwrap()]);
    let v = json_stdout(&out);
    let negative = floats(&v["coeffs"]).iter().any(|&c| c < -1e-12);
    assert_eq!(out.status.code(), Some(if negative { 2 } else { 0 }));
}

#[test]
fn selftest_is_deterministic() {
    let a = bin(&["selftest", "--seed", "3", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    let b = bin(&["selftest", "--seed", "3", "--json"]);
    let strip = |o: &Output| {
        let mut v = json_stdout(o);
        for out in v["outcomes"].as_array_mut().unwrap() {
            out.as_object_mut().unwrap().remove("elapsed_secs");
        }
        v
    };
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(json_stdout(&a)["failed"], 0);
}
