//! End-to-end tests of the binary: exit codes, JSON shapes, and
//! byte-for-byte determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_trispin"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary spawns");
    child
        .stdin
        .take()
        .expect("piped")
        .write_all(stdin.unwrap_or("").as_bytes())
        .expect("stdin writes");
    child.wait_with_output().expect("binary exits")
}

fn stdout_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("utf8 stdout")
}

fn stderr_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).expect("utf8 stderr")
}

const PARAM_G2: &str = r#"{"group":"GSpinOdd","n":3,"chi":["4","9","1/36"],"mu":"1"}"#;
const PAIR: &str = r#"{"x":["1","1","0","0","-1","5","0","2"],"y":["1","0","2","0","1","0","-1","3"]}"#;

#[test]
fn weights_match_the_frozen_example() {
    let out = run(&["satake", "weights", "12", "12", "12"], None);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "{\"a\":11,\"b\":10,\"c\":9,\"w\":[15,6,5,4]}\n");
    let out = run(&["satake", "weights", "4", "4", "4"], None);
    assert_eq!(stdout_of(&out), "{\"a\":3,\"b\":2,\"c\":1,\"w\":[3,2,1,0]}\n");
    // constraint violations are domain errors
    let out = run(&["satake", "weights", "4", "4", "5"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("weight-constraint-violated"));
}

#[test]
fn lift_verify_theta_round_trip() {
    let lifted = run(&["lift"], Some(PAIR));
    assert!(lifted.status.success(), "{}", stderr_of(&lifted));
    let triple = stdout_of(&lifted);

    let verified = run(&["verify-triple"], Some(triple));
    assert_eq!(stdout_of(&verified), "{\"schema\":\"v1\",\"valid\":true}\n");

    // theta permutes the components; three applications come back
    let once = run(&["theta"], Some(triple));
    let twice = run(&["theta"], Some(stdout_of(&once)));
    let thrice = run(&["theta"], Some(stdout_of(&twice)));
    assert_eq!(stdout_of(&thrice), triple);
    assert_ne!(stdout_of(&once), triple);

    // determinism: identical invocations are byte-identical
    let again = run(&["lift"], Some(PAIR));
    assert_eq!(lifted.stdout, again.stdout);
}

#[test]
fn lift_failures_use_domain_exit_code() {
    let isotropic =
        r#"{"x":["0","0","0","0","0","0","0","0"],"y":["1","0","0","0","0","0","0","1"]}"#;
    let out = run(&["lift"], Some(isotropic));
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("isotropic-vector"));

    let nonsquare =
        r#"{"x":["1","0","0","0","0","0","0","3"],"y":["1","0","0","0","0","0","0","1"]}"#;
    let out = run(&["lift"], Some(nonsquare));
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("norm-product-not-square"));
}

#[test]
fn parse_failures_use_exit_code_two() {
    let out = run(&["satake", "spin"], Some("{not json"));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("\"code\":\"parse\""));

    let short = r#"{"group":"GSpinOdd","n":3,"chi":["4","9"],"mu":"1"}"#;
    let out = run(&["satake", "spin"], Some(short));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("\"location\":\"/chi\""));

    let zero = r#"{"group":"GSpinOdd","n":3,"chi":["4","9","1/36"],"mu":"0"}"#;
    let out = run(&["satake", "spin"], Some(zero));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("\"location\":\"/mu\""));

    // clap's own usage errors also exit 2
    let out = run(&["satake", "halfspin", "--sign", "sideways"], Some("{}"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn center_and_trispin_check() {
    let out = run(&["center"], None);
    assert_eq!(
        stdout_of(&out),
        "{\"kernel_sizes\":[2,2,2],\"order\":4,\"patterns\":[[1,1,1],[-1,-1,1],[-1,1,-1],[1,-1,-1]],\"schema\":\"v1\"}\n"
    );

    let lifted = run(&["lift"], Some(PAIR));
    let triple: serde_json::Value = serde_json::from_str(stdout_of(&lifted)).unwrap();
    let element = serde_json::json!({
        "t": {"1": "2", "2": "3", "3": "1/5"},
        "spin": triple,
    });
    let out = run(&["trispin-check"], Some(&element.to_string()));
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(report["valid"], serde_json::json!(true));
    assert!(report["canonical"]["t"].is_object());
}

#[test]
fn satake_surface() {
    let out = run(&["satake", "spin"], Some(PARAM_G2));
    let spin: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(spin["eigen"].as_array().unwrap().len(), 8);

    let out = run(&["satake", "g2"], Some(PARAM_G2));
    assert_eq!(stdout_of(&out), "{\"g2\":true,\"schema\":\"v1\"}\n");

    let out = run(&["satake", "spinbar"], Some(PARAM_G2));
    assert!(out.status.success());

    // the worked theta-lift example: m = n + 1 appends "1", mu unchanged
    let ones = r#"{"group":"GSpinOdd","n":3,"chi":["1","1","1"],"mu":"1"}"#;
    let out = run(&["satake", "theta-lift", "--m", "4", "--q", "7"], Some(ones));
    assert_eq!(
        stdout_of(&out),
        "{\"chi\":[\"1\",\"1\",\"1\",\"1\"],\"group\":\"GSpinEven\",\"mode\":\"rational\",\"mu\":\"1\",\"n\":4,\"schema\":\"v1\"}\n"
    );
    // outside qhalf mode the residue cardinality must be explicit
    let out = run(&["satake", "theta-lift", "--m", "5"], Some(ones));
    assert_eq!(out.status.code(), Some(2));

    // half-spins of an embedded odd+odd pair agree with spin (x) spin
    let embed_doc = r#"{
        "first": {"group":"GSpinOdd","n":1,"chi":["2"],"mu":"3"},
        "second": {"group":"GSpinOdd","n":1,"chi":["5"],"mu":"7"}
    }"#;
    let out = run(&["satake", "embed"], Some(embed_doc));
    let embedded = stdout_of(&out).to_string();
    assert!(out.status.success());
    let out = run(&["satake", "halfspin", "--sign", "plus"], Some(&embedded));
    let plus: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    // spin{mu,mu x} (x) spin{mu,mu x}: {3,6} (x) {7,35}, listed ascending
    assert_eq!(plus["eigen"], serde_json::json!(["21", "42", "105", "210"]));
}

#[test]
fn arthur_surface() {
    let param = r#"[
        {"label":"pi","degree":2,"selfdual":"symplectic","epsilon":-1,"d":2,
         "satake":{"2":["2","1/2"]}},
        {"label":"tau","degree":4,"selfdual":"orthogonal","d":1}
    ]"#;
    let out = run(&["arthur", "validate", "--degree", "8", "--discrete"], Some(param));
    let verdict: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(verdict["clean"], serde_json::json!(true));

    let out = run(&["arthur", "validate", "--degree", "9", "--discrete"], Some(param));
    let verdict: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(verdict["clean"], serde_json::json!(false));
    assert_eq!(verdict["issues"][0]["code"], serde_json::json!("degree-sum"));

    let single = r#"[{"label":"pi","degree":2,"selfdual":"symplectic","d":2,"satake":{"2":["2","1/2"]}}]"#;
    let out = run(&["arthur", "eval", "--prime", "2", "--q", "4"], Some(single));
    let eigen: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    // {2, 1/2} (x) {q^{1/2}, q^{-1/2}} at q = 4, listed ascending
    assert_eq!(eigen["eigen"], serde_json::json!(["1/4", "1", "1", "4"]));

    let shape = r#"{"kind":"non-tempered",
        "pi1":{"label":"pi1","degree":2,"selfdual":"symplectic"},
        "pi3":{"label":"pi3","degree":2,"selfdual":"symplectic"}}"#;
    let out = run(&["arthur", "spin-shape"], Some(shape));
    let spin: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(spin["summands"][0]["label"], serde_json::json!("pi1*pi3"));
    assert_eq!(spin["summands"][1]["d"], serde_json::json!(2));

    let pi2 = |label: &str, a: i64, b: &str| {
        serde_json::json!({
            "label": label, "degree": 2, "selfdual": "symplectic",
            "central_char": "w",
            "satake": {"2": [a.to_string(), b]}
        })
    };
    let remix_doc = serde_json::json!({
        "a": pi2("a", 2, "3"), "b": pi2("b", 6, "1"),
        "c": pi2("c", 5, "7"), "d": pi2("d", 35, "1"),
    });
    let out = run(&["arthur", "remix"], Some(&remix_doc.to_string()));
    assert!(out.status.success(), "{}", stderr_of(&out));
    let swapped: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(swapped["after"]["summands"][0]["label"], serde_json::json!("a*c"));

    let tensor_doc = serde_json::json!({"left": pi2("a", 2, "3"), "right": pi2("b", 6, "1")});
    let out = run(&["arthur", "tensor"], Some(&tensor_doc.to_string()));
    let product: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(product["constituent"]["degree"], serde_json::json!(4));
    assert_eq!(product["constituent"]["selfdual"], serde_json::json!("orthogonal"));

    let variant_doc = serde_json::json!({
        "std": {"label": "s", "degree": 3, "selfdual": "orthogonal"},
        "spin": {"label": "p", "degree": 2, "selfdual": "symplectic"},
    });
    let out = run(
        &["arthur", "variant", "--source", "pgsp2"],
        Some(&variant_doc.to_string()),
    );
    let pair: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(pair["f1"]["summands"][1]["d"], serde_json::json!(5));
    assert_eq!(pair["f2"]["summands"][0]["d"], serde_json::json!(4));
}

#[test]
fn lfun_surface() {
    let out = run(&["lfun", "factor", "--p", "3"], Some(r#"{"eigen":["2","1/2"]}"#));
    assert_eq!(
        stdout_of(&out),
        "{\"coeffs\":[\"1\",\"-5/2\",\"1\"],\"p\":3,\"schema\":\"v1\"}\n"
    );

    let out = run(&["lfun", "gamma", "12", "12", "12"], None);
    let gamma: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(gamma["shifts"], serde_json::json!([15, 6, 5, 4]));
    let out = run(&["lfun", "gamma", "12", "12", "12", "--s", "-4"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("pole-at"));

    let out = run(
        &["lfun", "euler", "--family", "zeta", "--s", "2", "--cutoff", "1000"],
        None,
    );
    let report: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(report["cutoff"], serde_json::json!(1000));
    assert_eq!(report["primes_used"], serde_json::json!(168));
    let value = report["value"][0].as_f64().unwrap();
    assert!((value - 1.6447).abs() < 1e-3);

    // explicit factor lists and prime restriction
    let family = r#"{"factors":[
        {"p":2,"coeffs":["1","-1"]},
        {"p":3,"coeffs":["1","-1"]},
        {"p":5,"coeffs":["1","-1"]}
    ]}"#;
    let out = run(
        &["lfun", "euler", "--s", "2", "--cutoff", "10", "--primes", "2,5"],
        Some(family),
    );
    let report: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(report["primes_used"], serde_json::json!(2));
    assert!(report["warning"].is_null(), "no warning above the abscissa");

    let out = run(
        &["lfun", "euler", "--s", "1", "--cutoff", "10", "--primes", "2,5"],
        Some(family),
    );
    let report: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert!(report["warning"].is_string(), "warning below the abscissa");

    let param = r#"[
        {"label":"one","degree":1,"selfdual":"orthogonal","d":1},
        {"label":"pi","degree":2,"selfdual":"symplectic","epsilon":-1,"d":1}
    ]"#;
    let out = run(&["lfun", "epsilon"], Some(param));
    let eps: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(eps["sign"], serde_json::json!(-1));
    assert_eq!(eps["trace"].as_array().unwrap().len(), 2);

    let out = run(&["lfun", "g2-identity"], Some(PARAM_G2));
    assert_eq!(stdout_of(&out), "{\"holds\":true,\"schema\":\"v1\"}\n");
    let not_g2 = r#"{"group":"GSpinOdd","n":3,"chi":["4","9","25"],"mu":"1/30"}"#;
    let out = run(&["lfun", "g2-identity"], Some(not_g2));
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("not-g2-type"));
}

#[test]
fn file_input_matches_inline() {
    let dir = std::env::temp_dir().join(format!("trispin-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("param.json");
    std::fs::write(&path, PARAM_G2).unwrap();

    let from_file = run(&["satake", "spin", "--in", path.to_str().unwrap()], None);
    let from_inline = run(&["satake", "spin", "--inline", PARAM_G2], None);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, from_inline.stdout);

    // both at once is rejected as a usage problem
    let both = run(
        &["satake", "spin", "--in", path.to_str().unwrap(), "--inline", PARAM_G2],
        None,
    );
    assert_eq!(both.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
