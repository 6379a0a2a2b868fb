use std::fs;
use std::process::{Command, Output};

fn nekbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nekbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_builtins() {
    let o = nekbound(&["classify", "A5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("nekrasov: true"), "{text}");
    assert!(text.contains("sdd: false"), "{text}");

    let o = nekbound(&["classify", "A1", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["class"]["sdd"], true);
    assert_eq!(v["name"], "A1");
    assert_eq!(v["n"], 4);
}

#[test]
fn bound_with_exact() {
    let o = nekbound(&["bound", "A2", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in [
        "varah  1.0000",
        "bound2 0.8848",
        "bound3 0.6885",
        "best   0.6885",
        "exact  0.2390",
    ] {
        assert!(text.contains(line), "missing {line:?} in\n{text}");
    }

    let text = stdout(&nekbound(&["bound", "A5"]));
    assert!(text.contains("varah  - (not SDD)"), "{text}");
    assert!(text.contains("bound2 1.4909"), "{text}");
    assert!(text.contains("bound3 2.4848"), "{text}");
    assert!(!text.contains("exact"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(
        nekbound(&["classify", "missing.mtx"]).status.code(),
        Some(2)
    );
    assert_eq!(nekbound(&["bound", "A7"]).status.code(), Some(3));
    assert_eq!(
        nekbound(&["sweep", "--count", "0", "--n", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(nekbound(&["classify"]).status.code(), Some(2));
}

#[test]
fn reads_files_in_both_formats() {
    let dir = std::env::temp_dir().join(format!("nekbound-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("a5.csv");
    fs::write(&csv, "6,-3,-2\n-1,11,-8\n-7,-3,10\n").unwrap();
    let mtx = dir.join("a5.mtx");
    fs::write(
        &mtx,
        "%%MatrixMarket matrix array real general\n3 3\n6\n-1\n-7\n-3\n11\n-3\n-2\n-8\n10\n",
    )
    .unwrap();
    let odd = dir.join("a5.txt");
    fs::write(&odd, "6,-3,-2\n-1,11,-8\n-7,-3,10\n").unwrap();

    let builtin = stdout(&nekbound(&["bound", "A5", "--exact"]));
    let tail = |s: &str| s.lines().skip(1).collect::<Vec<_>>().join("\n");
    for path in [&csv, &mtx] {
        let o = nekbound(&["bound", path.to_str().unwrap(), "--exact"]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(tail(&stdout(&o)), tail(&builtin));
    }
    assert_eq!(
        nekbound(&["bound", odd.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let o = nekbound(&["bound", odd.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));

    let bad = dir.join("bad.csv");
    fs::write(&bad, "1,2\n3\n").unwrap();
    let o = nekbound(&["classify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn paper_table_rows() {
    let o = nekbound(&["paper-table"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = |name: &str| -> Vec<String> {
        text.lines()
            .find(|l| l.starts_with(name))
            .unwrap()
            .split_whitespace()
            .map(str::to_string)
            .collect()
    };
    assert_eq!(
        row("A3"),
        ["A3", "SDD", "0.8759", "1.4286", "1.8076", "0.9676"]
    );
    assert_eq!(
        row("A6"),
        ["A6", "Nekrasov", "0.4474", "-", "1.1557", "0.5702"]
    );

    let o = nekbound(&["paper-table", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows[4]["varah"].is_null());
    assert_eq!(text, stdout(&nekbound(&["paper-table"])));
}

#[test]
fn report_includes_exact_and_gudkov() {
    let o = nekbound(&["report", "A6", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["exact"].as_f64().unwrap() - 0.4474).abs() < 5e-5);
    assert_eq!(v["gudkov"]["permutation"], serde_json::json!([0, 1, 2, 3]));
    assert!(v["margins"]["nekrasov"].is_array());
}

#[test]
fn sweep_is_sound_and_reproducible() {
    let a = nekbound(&["sweep", "--count", "100", "--n", "6", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    assert!(text.contains("violations: 0"), "{text}");
    let b = nekbound(&["sweep", "--count", "100", "--n", "6", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);

    let one = stdout(&nekbound(&[
        "sweep", "--count", "1", "--n", "1", "--seed", "1",
    ]));
    assert!(one.contains("min 1.0000 median 1.0000"), "{one}");
    assert!(one.contains("tie 1"), "{one}");

    let o = nekbound(&[
        "sweep", "--count", "5", "--n", "4", "--seed", "3", "--output", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["violations"], 0);
    assert_eq!(v["count"], 5);
}
