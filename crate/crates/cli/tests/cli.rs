use std::path::Path;
use std::process::{Command, Output};

fn ctqw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctqw"))
        .args(args)
        .env_remove("CTQW_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

/// Parses a CSV table into its header and rows.
fn table(o: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let text = stdout(o);
    let mut lines = text.lines();
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_owned)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn gen_star() {
    let o = ctqw(&["gen", "--family", "star", "--n", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "5\n1 2\n1 3\n1 4\n1 5\n");
}

#[test]
fn gen_is_deterministic_and_honours_seed_env() {
    let args = [
        "gen",
        "--family",
        "threshold",
        "--n",
        "50",
        "--p",
        "0.3",
        "--seed",
        "7",
    ];
    assert_eq!(ctqw(&args).stdout, ctqw(&args).stdout);

    let via_env = Command::new(env!("CARGO_BIN_EXE_ctqw"))
        .args(["gen", "--family", "threshold", "--n", "50", "--p", "0.3"])
        .env("CTQW_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(via_env.stdout, ctqw(&args).stdout);
}

#[test]
fn gen_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.txt");
    let o = ctqw(&[
        "gen",
        "--family",
        "cycle",
        "--n",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(
        std::fs::read_to_string(out).unwrap(),
        "4\n1 2\n1 4\n2 3\n3 4\n"
    );
}

#[test]
fn usage_errors_exit_one() {
    let o = ctqw(&["gen", "--family", "erdos_renyi", "--n", "10", "--p", "1.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(ctqw(&["gen"]).status.code(), Some(1));
    assert_eq!(
        ctqw(&["gen", "--family", "nope", "--n", "3"]).status.code(),
        Some(1)
    );
    let o = ctqw(&["gen", "--graph", "/nonexistent/file"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ctqw(&[
        "simulate", "--family", "complete", "--n", "3", "--start", "4",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = ctqw(&[
        "simulate", "--family", "complete", "--n", "3", "--t-min", "2", "--t-max", "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn decompose_star_twin() {
    let o = ctqw(&[
        "decompose",
        "--family",
        "star",
        "--n",
        "5",
        "--strategy",
        "twin",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("1\n2 3 4 5\n"));
    assert!(text.contains("# d_tilde: 4 1\n"));

    let o = ctqw(&[
        "decompose",
        "--family",
        "star",
        "--n",
        "5",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["d_tilde"], serde_json::json!([4, 1]));
    assert_eq!(v["reduced_matrix"][0][1], -4.0);
}

#[test]
fn decompose_output_is_a_partition_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = ctqw(&["decompose", "--family", "star", "--n", "6"]);
    let blocks = write(dir.path(), "blocks.txt", &stdout(&o));
    let again = ctqw(&[
        "decompose",
        "--family",
        "star",
        "--n",
        "6",
        "--blocks-file",
        &blocks,
    ]);
    assert!(again.status.success());
    assert_eq!(again.stdout, o.stdout);
}

#[test]
fn decompose_reports_witness_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "p4.txt", "4\n1 2\n2 3\n3 4\n");
    let blocks = write(dir.path(), "b.txt", "1 2\n3 4\n");
    let o = ctqw(&["decompose", "--graph", &graph, "--blocks-file", &blocks]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("(2, 3) present"), "{err}");
    assert!(err.contains("(1, 3) absent"), "{err}");
}

#[test]
fn decompose_trivial_is_one_block() {
    let o = ctqw(&[
        "decompose",
        "--family",
        "erdos_renyi",
        "--n",
        "12",
        "--seed",
        "3",
        "--strategy",
        "trivial",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("# blocks: 1\n"));
}

#[test]
fn decompose_clique_strategy() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(
        dir.path(),
        "g.txt",
        "6\n1 2\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n3 4\n3 5\n4 5\n1 6\n",
    );
    let o = ctqw(&[
        "decompose",
        "--graph",
        &graph,
        "--strategy",
        "clique",
        "--clique",
        "1,2,3,4,5",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("2 3 4 5\n1\n6\n"));
    let o = ctqw(&[
        "decompose",
        "--graph",
        &graph,
        "--strategy",
        "clique",
        "--clique",
        "1,6,2",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simulate_complete_at_zero() {
    let o = ctqw(&[
        "simulate", "--family", "complete", "--n", "8", "--times", "0",
    ]);
    assert!(o.status.success());
    let (h, rows) = table(&o);
    assert_eq!(rows.len(), 8);
    let p = column(&h, "p_fid");
    for (k, r) in rows.iter().enumerate() {
        let v: f64 = r[p].parse().unwrap();
        let want = if k == 0 { 1.0 } else { 0.0 };
        assert!((v - want).abs() < 1e-12, "{r:?}");
    }
}

#[test]
fn simulate_star_centre_matches_closed_form() {
    let o = ctqw(&[
        "simulate",
        "--family",
        "star",
        "--n",
        "100",
        "--strategy",
        "dominating",
    ]);
    assert!(o.status.success());
    let (h, rows) = table(&o);
    assert_eq!(rows.len(), 64 * 100);
    let (t, y, p, diff) = (
        column(&h, "t"),
        column(&h, "y"),
        column(&h, "p_fid"),
        column(&h, "abs_diff"),
    );
    let mut worst = 0.0f64;
    for r in &rows {
        worst = worst.max(r[diff].parse().unwrap());
        if r[y] == "1" {
            let t: f64 = r[t].parse().unwrap();
            let want = 1.0 - (2.0 / 100.0) * 0.99 * (1.0 - (100.0 * t).cos());
            let got: f64 = r[p].parse().unwrap();
            assert!((got - want).abs() < 1e-10);
        }
    }
    assert!(worst <= 1e-9, "{worst}");
}

#[test]
fn simulate_output_is_stable() {
    let args = [
        "simulate",
        "--family",
        "erdos_renyi",
        "--n",
        "15",
        "--seed",
        "5",
        "--t-steps",
        "5",
    ];
    assert_eq!(ctqw(&args).stdout, ctqw(&args).stdout);
}

#[test]
fn simulate_json_mirrors_csv_columns() {
    let args = ["simulate", "--family", "star", "--n", "4", "--times", "0.5"];
    let csv = ctqw(&args);
    let (h, _) = table(&csv);
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&ctqw(&json_args).stdout).unwrap();
    let keys: Vec<&String> = v[0].as_object().unwrap().keys().collect();
    assert_eq!(keys, h.iter().collect::<Vec<_>>());
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn verify_passes_on_valid_input() {
    let o = ctqw(&[
        "verify",
        "--family",
        "edgeless",
        "--n",
        "5",
        "--strategy",
        "singleton",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = ctqw(&[
        "verify",
        "--family",
        "threshold",
        "--n",
        "20",
        "--p",
        "0.4",
        "--seed",
        "2",
        "--t-steps",
        "8",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let (h, rows) = table(&o);
    let passed = column(&h, "passed");
    assert!(rows.iter().all(|r| r[passed] == "true"));
}

#[test]
fn verify_rejects_corrupted_partition() {
    let dir = tempfile::tempdir().unwrap();
    let blocks = write(dir.path(), "b.txt", "1 2\n3 4 5\n");
    let o = ctqw(&[
        "verify",
        "--family",
        "star",
        "--n",
        "5",
        "--blocks-file",
        &blocks,
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("(1, 3) present, (2, 3) absent"), "{err}");
}

#[test]
fn verify_fails_under_impossible_tolerance() {
    let o = ctqw(&[
        "verify",
        "--family",
        "cycle",
        "--n",
        "5",
        "--tol=-1",
        "--t-steps",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let (h, rows) = table(&o);
    let (passed, witness) = (column(&h, "passed"), column(&h, "witness"));
    let unitarity = rows.iter().find(|r| r[0] == "unitarity").unwrap();
    assert_eq!(unitarity[passed], "false");
    assert!(!unitarity[witness].is_empty());
}

#[test]
fn scan_single_point() {
    let o = ctqw(&[
        "scan", "--family", "complete", "--sizes", "10", "--times", "0",
    ]);
    assert!(o.status.success());
    let (h, rows) = table(&o);
    assert_eq!(
        h,
        [
            "size",
            "t",
            "return_probability",
            "deficit",
            "bound",
            "within_bound"
        ]
    );
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][2].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn scan_dominating_and_clique_within_bounds() {
    let o = ctqw(&[
        "scan",
        "--family",
        "star",
        "--sizes",
        "10,100,1000",
        "--t-steps",
        "16",
    ]);
    assert!(o.status.success());
    let (_, rows) = table(&o);
    assert_eq!(rows.len(), 48);
    assert!(rows.iter().all(|r| r[5] == "true"));

    let o = ctqw(&[
        "scan",
        "--family",
        "clique",
        "--sizes",
        "12,52",
        "--t-steps",
        "16",
    ]);
    assert!(o.status.success());
}

#[test]
fn scan_rejects_unsorted_sizes() {
    let o = ctqw(&["scan", "--family", "complete", "--sizes", "100,10"]);
    assert_eq!(o.status.code(), Some(1));
}
