use std::fs;
use std::path::{Path, PathBuf};

use mfif::cli::{run, EXIT_ERROR, EXIT_NOTHING_FREQUENT, EXIT_OK};
use mfif::io::{parse_matrix, EXAMPLE_MATRIX};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn mfif(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["mfif"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn example_fixture_matches_builtin_matrix() {
    let text = fs::read_to_string(data("example.txt")).unwrap();
    assert_eq!(parse_matrix(&text).unwrap(), parse_matrix(EXAMPLE_MATRIX).unwrap());
}

#[test]
fn mine_first_matches_golden() {
    let input = data("example.txt");
    let (code, out, err) = mfif(&["mine", input.to_str().unwrap(), "--min-sup", "20%", "--mode", "first"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out, fs::read_to_string(data("example_first.golden")).unwrap());
    let (_, again, _) = mfif(&["mine", input.to_str().unwrap(), "--min-sup", "20%", "--mode", "first"]);
    assert_eq!(out, again);
}

#[test]
fn absolute_support_is_accepted() {
    let input = data("example.txt");
    let (code, out, _) = mfif(&["mine", input.to_str().unwrap(), "--min-sup", "2", "--mode", "first"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("I2 I3 I4 I5 I6 I12 I13 I14 I15 I16 I17 I20\nsupport: 2\n"));
}

#[test]
fn out_of_range_support_is_rejected() {
    let input = data("example.txt");
    let (code, _, err) = mfif(&["mine", input.to_str().unwrap(), "--min-sup", "101%"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("101"));
}

#[test]
fn apriori_reports_same_sets_with_other_metrics() {
    let input = data("example.txt");
    let path = input.to_str().unwrap();
    for sup in ["20%", "30%", "50%"] {
        let (_, m, _) = mfif(&["mine", path, "--min-sup", sup]);
        let (_, a, _) = mfif(&["mine", path, "--min-sup", sup, "--algo", "apriori"]);
        let (_, o, _) = mfif(&["mine", path, "--min-sup", sup, "--algo", "oracle"]);
        let body = |s: &str| s.lines().filter(|l| !l.starts_with("algo=")).collect::<Vec<_>>().join("\n");
        assert_eq!(body(&m), body(&a));
        assert_eq!(body(&m), body(&o));
        assert_ne!(m.lines().last(), a.lines().last());
    }
}

#[test]
fn nothing_frequent_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sparse.txt");
    fs::write(&path, "1 0 0\n0 1 0\n0 0 1\n").unwrap();
    let (code, out, _) = mfif(&["mine", path.to_str().unwrap(), "--min-sup", "2"]);
    assert_eq!(code, EXIT_NOTHING_FREQUENT);
    assert!(out.contains("NO FREQUENT ITEM SET FOUND"));
}

#[test]
fn parse_error_exits_one_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "1 0\n0 2\n").unwrap();
    let (code, _, err) = mfif(&["mine", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("line 2, column 2"), "{err}");
}

#[test]
fn basket_input_prints_labels_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.csv");
    fs::write(&path, "milk,bread\nbread,milk,eggs\nbread\n").unwrap();
    let (code, out, _) = mfif(&["mine", path.to_str().unwrap(), "--format", "basket", "--min-sup", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("THE FREQUENT ITEM SET IS:\nbread milk\nsupport: 2\n"), "{out}");
}

#[test]
fn rules_on_two_item_database() {
    // σ(I1) = 4, σ(I2) = 2, σ(I1 I2) = 2
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    fs::write(&path, "1 1\n1 1\n1 0\n1 0\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = mfif(&["rules", p, "--min-sup", "2", "--min-conf", "0.5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "I2 => I1 (sup=2, conf=1.0000)\nI1 => I2 (sup=2, conf=0.5000)\n2 rules\n"
    );
    let (_, out, _) = mfif(&["rules", p, "--min-sup", "2", "--min-conf", "1.0"]);
    assert_eq!(out, "I2 => I1 (sup=2, conf=1.0000)\n1 rules\n");
}

#[test]
fn rules_on_example_at_full_confidence() {
    let input = data("example.txt");
    let (code, out, _) = mfif(&[
        "rules", input.to_str().unwrap(), "--min-sup", "20%", "--min-conf", "1.0", "--max-rules", "5",
    ]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[..5].iter().all(|l| l.ends_with("conf=1.0000)")));
}

#[test]
fn gen_round_trips_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    let args = |p: &Path| {
        vec![
            "gen".to_string(), "--transactions".into(), "10".into(), "--items".into(), "20".into(),
            "--plant".into(), "2,3,4,5,6,12,13,14,15,16,17,20".into(), "--occurrences".into(), "2".into(),
            "--seed".into(), "1".into(), "--output".into(), p.to_str().unwrap().into(),
        ]
    };
    let run_args = |p: &Path| {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["mfif".to_string()];
        argv.extend(args(p));
        run(argv, &mut out, &mut err)
    };
    assert_eq!(run_args(&a), EXIT_OK);
    assert_eq!(run_args(&b), EXIT_OK);
    let text = fs::read(&a).unwrap();
    assert_eq!(text, fs::read(&b).unwrap());
    let db = parse_matrix(std::str::from_utf8(&text).unwrap()).unwrap();
    assert_eq!(db.len(), 10);
    assert_eq!(mfif::io::write_matrix(&db).as_bytes(), &text[..]);
}

#[test]
fn gen_rejects_impossible_plant() {
    let (code, _, err) = mfif(&["gen", "--transactions", "3", "--plant", "1,2", "--occurrences", "4"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("occurrences"), "{err}");
}

#[test]
fn bench_with_no_sizes_writes_header() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let (code, _, err) = mfif(&["bench", "--sizes", "", "--output", csv.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(
        fs::read_to_string(&csv).unwrap(),
        "transactions,algo,seconds,db_scans,candidates\n"
    );
}

#[test]
fn bench_small_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let args = ["bench", "--sizes", "100,500", "--repetitions", "1", "--output", csv.to_str().unwrap()];
    assert_eq!(mfif(&args).0, EXIT_OK);
    let first = fs::read_to_string(&csv).unwrap();
    assert_eq!(mfif(&args).0, EXIT_OK);
    let second = fs::read_to_string(&csv).unwrap();

    let strip_seconds = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                format!("{},{},{},{}", f[0], f[1], f[3], f[4])
            })
            .collect()
    };
    assert_eq!(strip_seconds(&first), strip_seconds(&second));
    let rows: Vec<Vec<String>> = first
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    assert_eq!(rows.len(), 4);
    for pair in rows.chunks(2) {
        assert_eq!(pair[0][1], "mfif");
        assert_eq!(pair[1][1], "apriori");
        let scans = |r: &Vec<String>| r[3].parse::<u64>().unwrap();
        assert!(scans(&pair[0]) < scans(&pair[1]));
    }
}
