use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic-hecke"))
        .env("CACHE_DIR", cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn entries(dir: &Path) -> Vec<std::path::PathBuf> {
    fs::read_dir(dir)
        .map(|d| {
            d.map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|x| x == "entry")).collect()
        })
        .unwrap_or_default()
}

#[test]
fn sieve_csv_is_reproduced_from_cache_and_repaired_after_corruption() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().join("cache");
    let a = tmp.path().join("a.csv");
    let b = tmp.path().join("b.csv");
    let c = tmp.path().join("c.csv");
    let o = run(&cache, &["sieve", "--limit", "1e4", "--out", a.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    let first = fs::read(&a).unwrap();
    let text = String::from_utf8(first.clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,b,norm,splitting"));
    assert!(lines.clone().all(|l| l.ends_with(",split") || l.ends_with(",inert")));
    // 73 = N(-8 - 9w) is the smallest norm in the family
    assert_eq!(lines.next(), Some("-8,-9,73,split"));

    let o = run(&cache, &["sieve", "--limit", "1e4", "--out", b.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cache hit"));
    assert_eq!(fs::read(&b).unwrap(), first);

    let entry = &entries(&cache)[0];
    let mut bytes = fs::read(entry).unwrap();
    let n = bytes.len();
    bytes[n - 3] ^= 0x20;
    fs::write(entry, bytes).unwrap();
    let o = run(&cache, &["sieve", "--limit", "1e4", "--out", c.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("recomputed"));
    assert_eq!(fs::read(&c).unwrap(), first);
}

#[test]
fn cache_dir_flag_overrides_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let env_dir = tmp.path().join("env");
    let flag_dir = tmp.path().join("flag");
    let o = run(&env_dir, &["--cache-dir", flag_dir.to_str().unwrap(), "gauss-batch", "--limit", "400"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("a,b,norm,re,im\n"));
    assert_eq!(entries(&flag_dir).len(), 1);
    assert!(entries(&env_dir).is_empty());
}

#[test]
fn symbol_and_gauss_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(tmp.path(), &["symbol", "--a", "5", "--n", "-8-9*w"]);
    assert!(o.status.success());
    assert!(["0", "1", "w", "w^2"].contains(&stdout(&o).trim()));
    let o = run(tmp.path(), &["symbol", "--a", "-8-9*w", "--n", "-8-9*w"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = run(tmp.path(), &["gauss", "--k", "1", "--n", "-8-9*w"]);
    let (re, im) = stdout(&o)
        .trim()
        .split_once(',')
        .map(|(a, b)| (a.parse::<f64>().unwrap(), b.parse::<f64>().unwrap()))
        .unwrap();
    assert!((re * re + im * im - 73.0).abs() < 1e-9);
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    // modulus divisible by 1 - w
    assert_eq!(run(tmp.path(), &["symbol", "--a", "2", "--n", "3"]).status.code(), Some(1));
    assert_eq!(run(tmp.path(), &["symbol", "--a", "x+", "--n", "7"]).status.code(), Some(1));
    assert_eq!(run(tmp.path(), &["sieve", "--limit", "-5"]).status.code(), Some(1));
    assert_eq!(run(tmp.path(), &["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(tmp.path(), &["density", "--X", "1e4", "--a", "2"]).status.code(), Some(1));
    assert_eq!(
        run(tmp.path(), &["moment", "--kind", "ratios", "--X", "1e4", "--alpha", "0,0"]).status.code(),
        Some(1)
    );
    // the zero finder's height cap
    assert_eq!(run(tmp.path(), &["zeros", "--pi", "-8-9*w", "--T", "80"]).status.code(), Some(1));
    // far up the critical line the theta samples exceed their cap
    assert_eq!(run(tmp.path(), &["lvalue", "--pi", "-8-9*w", "--s", "0.5,1e6"]).status.code(), Some(3));
    assert_eq!(run(tmp.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn moment_report_and_term_dump() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("m.json");
    let terms = tmp.path().join("t.csv");
    let args = [
        "moment",
        "--kind",
        "first",
        "--X",
        "5e3",
        "--alpha",
        "0.1,0.5",
        "--weight",
        "bump",
        "--out",
        out.to_str().unwrap(),
        "--dump-terms",
        terms.to_str().unwrap(),
    ];
    let o = run(tmp.path(), &args);
    assert!(o.status.success(), "{o:?}");
    let json: serde_json::Value = serde_json::from_slice(&fs::read(&out).unwrap()).unwrap();
    for field in [
        "kind",
        "X_or_Q",
        "shifts",
        "lhs",
        "main_term",
        "ratio",
        "predicted_exponent",
        "family_size",
        "weight_name",
        "flags",
    ] {
        assert!(json.get(field).is_some(), "missing {field}");
    }
    assert_eq!(json["kind"], "first");
    let csv = fs::read_to_string(&terms).unwrap();
    assert!(csv.starts_with("a,b,norm,weight,lambda,re,im,flag\n"));
    let rows = csv.lines().count() - 1;
    assert!(rows >= json["family_size"].as_u64().unwrap() as usize);

    let first = fs::read(&out).unwrap();
    let o = run(tmp.path(), &args);
    assert!(o.status.success());
    assert_eq!(fs::read(&out).unwrap(), first);
    assert_eq!(fs::read_to_string(&terms).unwrap(), csv);
}

#[test]
fn zeros_and_lvalue() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(tmp.path(), &["zeros", "--pi", "-8-9*w", "--T", "10"]);
    assert!(o.status.success(), "{o:?}");
    let text = stdout(&o);
    assert!(text.starts_with("ordinate,refined_error\n"));
    let ords: Vec<f64> =
        text.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert!(!ords.is_empty() && ords.windows(2).all(|w| w[0] < w[1]) && ords.iter().all(|t| t.abs() <= 10.0));

    let o = run(tmp.path(), &["lvalue", "--pi", "-8-9*w", "--s", "-1,0"]);
    assert_eq!(stdout(&o).trim(), "0,0");
    let o = run(tmp.path(), &["lvalue", "--pi", "-8-9*w", "--s", "0.5,3", "--q-side"]);
    assert!(o.status.success());
}
