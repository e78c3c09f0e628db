use cdc_core::partial_spread::{ps_best_lower, ps_best_upper};
use cdc_core::BoundReport;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

fn cdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdc")).args(args).env_remove("CDC_SEEDS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(args: &[&str]) -> BoundReport {
    let mut a = vec!["bound", "--format", "json"];
    a.extend_from_slice(args);
    let o = cdc(&a);
    assert!(o.status.success());
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn bound_examples() {
    let r = report(&["-q2", "-v7", "-d4", "-k3"]);
    assert_eq!((r.best_lower.value.to_string(), r.best_upper.value.to_string()), ("333".into(), "381".into()));
    let r = report(&["-q2", "-v6", "-d4", "-k3"]);
    assert_eq!((r.best_lower.value.to_string(), r.best_upper.value.to_string()), ("77".into(), "77".into()));
    let r = report(&["-q2", "-v8", "-d6", "-k4"]);
    assert_eq!(r.best_upper.value.to_string(), "272");
    assert!(stdout(&cdc(&["bound", "-q", "2", "-v", "7", "-d", "4", "-k", "3"])).contains("best upper: 381"));
}

#[test]
fn bound_json_round_trips() {
    let r = report(&["-q3", "-v9", "-d4", "-k3"]);
    let again: BoundReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(again, r);
    let v: serde_json::Value = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    for key in ["params", "lower", "upper", "best_lower", "best_upper"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn parameter_errors_exit_2() {
    for args in [
        &["bound", "-q6", "-v7", "-d4", "-k3"][..],
        &["bound", "-q2", "-v7", "-d3", "-k3"],
        &["bound", "-q2", "-v3", "-d4", "-k5"],
        &["construct", "spread", "-q2", "-v7", "-k2"],
    ] {
        assert_eq!(cdc(args).status.code(), Some(2), "{args:?}");
    }
    assert_ne!(cdc(&["table", "4"]).status.code(), Some(0));
}

#[test]
fn budget_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("big.txt");
    let o = cdc(&["construct", "lmrd", "-q2", "-v20", "-d4", "-k10", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn tables() {
    let t1 = stdout(&cdc(&["table", "1", "--format", "csv"]));
    assert!(t1.lines().any(|l| l.starts_with("13,1597245,1222827,1597245,1532417,1532425,")));
    let t3 = stdout(&cdc(&["table", "3", "--format", "csv"]));
    assert!(t3.contains("\n6,1.084507,1.000000,1.084507,0.915493,0.915493,\n"));
    let t2 = stdout(&cdc(&["table", "2", "--format", "csv"]));
    assert!(t2.lines().any(|l| l.starts_with("16,1.523252,")));
    // deterministic
    assert_eq!(t2, stdout(&cdc(&["table", "2", "--format", "csv"])));
    assert_eq!(stdout(&cdc(&["table", "1"])), stdout(&cdc(&["table", "1"])));
    let json: serde_json::Value = serde_json::from_str(&stdout(&cdc(&["table", "1", "--format", "json"]))).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), 14);
}

fn construct(dir: &Path, args: &[&str], name: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut a = vec!["construct"];
    a.extend_from_slice(args);
    a.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = cdc(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn verify_json(path: &Path) -> (Option<i32>, serde_json::Value) {
    let o = cdc(&["verify", path.to_str().unwrap(), "--format", "json"]);
    (o.status.code(), serde_json::from_slice(&o.stdout).unwrap())
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (&["improved-linkage", "-q2", "-v7", "-d4", "-k3"][..], 265),
        (&["lmrd", "-q2", "-v7", "-d4", "-k3"], 256),
        (&["spread", "-q2", "-v6", "-k2"], 21),
    ];
    for (i, (args, n)) in cases.iter().enumerate() {
        let path = construct(dir.path(), args, &format!("c{i}.txt"));
        let header = std::fs::read_to_string(&path).unwrap();
        let fields: Vec<&str> = header.lines().next().unwrap().split_whitespace().collect();
        assert_eq!(fields[3], n.to_string());
        let (code, r) = verify_json(&path);
        assert_eq!(code, Some(0));
        assert_eq!(r["n"], *n);
        assert_eq!(r["min_distance"], 4);
        assert_eq!(r["claimed_d"], 4);
    }
}

#[test]
fn verify_failures() {
    let dir = tempfile::tempdir().unwrap();
    let good = construct(dir.path(), &["lmrd", "-q2", "-v4", "-d2", "-k2"], "good.txt");
    let text = std::fs::read_to_string(&good).unwrap();

    // duplicate the first codeword and bump the count
    let mut parts: Vec<&str> = text.split("\n\n").collect();
    let first = parts[1].trim_end().to_string();
    let header: Vec<&str> = parts[0].split_whitespace().collect();
    let n: usize = header[3].parse().unwrap();
    let new_header = std::iter::once(header[..3].join(" "))
        .chain(std::iter::once((n + 1).to_string()))
        .chain(std::iter::once(header[4..].join(" ")))
        .collect::<Vec<_>>()
        .join(" ");
    parts[0] = &new_header;
    let dup = format!("{}\n\n{first}\n", parts.join("\n\n").trim_end());
    let dup_path = dir.path().join("dup.txt");
    std::fs::write(&dup_path, dup).unwrap();
    let o = cdc(&["verify", dup_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("duplicate codeword"));

    // claim distance 4 for a distance-2 code
    let over = text.replacen(" 2 2 1 ", " 4 2 1 ", 1);
    assert_ne!(over, text);
    let over_path = dir.path().join("over.txt");
    std::fs::write(&over_path, over).unwrap();
    let o = cdc(&["verify", over_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("claimed distance 4 but codewords"), "{out}");

    let missing = dir.path().join("missing.txt");
    assert_eq!(cdc(&["verify", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let o = cdc(&["table", "1", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().starts_with("v,bklb,"));
}

#[test]
fn seeds_from_env() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seeds.txt");
    std::fs::write(&path, "2 9 4 3 6000 test-seed\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_cdc"))
        .args(["bound", "-q2", "-v9", "-d4", "-k3", "--format", "json"])
        .env("CDC_SEEDS", &path)
        .output()
        .unwrap();
    let r: BoundReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.best_lower.value.to_string(), "6000");
    assert_eq!(r.best_lower.via, "test-seed");
}

#[test]
fn sweep_runs_and_matches_partial_spreads() {
    let t = Instant::now();
    let o = cdc(&["sweep", "--q", "2,3", "--v-max", "12", "--format", "csv"]);
    assert!(o.status.success());
    assert!(t.elapsed() < Duration::from_secs(60));
    let text = stdout(&o);
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let (q, v, d, k): (u64, u32, u32, u32) =
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap());
        rows += 1;
        if d == 2 * k {
            // seeds may exceed the partial spread lower bound
            let lower: u64 = f[4].parse().unwrap();
            assert!(lower >= ps_best_lower(q, v, k).value.try_into().unwrap(), "{line}");
            assert_eq!(f[6], ps_best_upper(q, v, k).value.to_string(), "{line}");
        }
    }
    assert!(rows > 50);
    let text = stdout(&cdc(&["sweep", "--q", "2", "--v-max", "8"]));
    assert!(text.contains("improved linkage attains the best lower bound in"));
}

#[test]
fn asymptotics_series() {
    let o = cdc(&["asymptotics", "-q", "2", "--v-max", "20", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("20,1.30564"), "{last}");
    assert!(last.ends_with(",1.3056442377"), "{last}");
}
