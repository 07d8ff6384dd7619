use std::path::PathBuf;
use std::process::{Command, Output};

use sicwitness::witness::parse_witness;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sicwitness"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn field(out: &str, key: &str) -> f64 {
    out.lines()
        .find_map(|l| l.strip_prefix(key))
        .unwrap_or_else(|| panic!("no `{key}` in:\n{out}"))
        .trim()
        .parse()
        .unwrap()
}

#[test]
fn check_povm_exit_codes() {
    assert_eq!(
        run(&["check-povm", "--builtin-sic", "3"]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["check-povm", "--gsic", "3", "--a", "0.05"])
            .status
            .code(),
        Some(0)
    );
    let appendix = fixture("appendix_sic.txt");
    let o = run(&["check-povm", "--file", &appendix, "--tol", "1e-10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("confirmed      no"));
    assert_eq!(
        run(&["check-povm", "--builtin-sic", "5"]).status.code(),
        Some(1)
    );
}

#[test]
fn eval_values() {
    let o = run(&[
        "eval",
        "--d",
        "3",
        "--rotation",
        "identity",
        "--state",
        "maxent",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!((field(&stdout(&o), "value") + 1.0 / 6.0).abs() < 1e-9);

    let o = run(&["eval", "--d", "3", "--state", "isotropic:alpha=0.5"]);
    assert!((field(&stdout(&o), "value") + 1.0 / 18.0).abs() < 1e-9);

    let rot = format!("file:{}", fixture("appendix_rotation.txt"));
    let rho = format!("file:{}", fixture("example3_rho.txt"));
    let o = run(&[
        "eval",
        "--d",
        "3",
        "--rotation",
        &rot,
        "--repair",
        "--state",
        &rho,
        "--repair",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(field(&out, "value") < 0.0);
    assert!(out.contains("verdict   entangled"));
}

#[test]
fn eval_errors() {
    let rho = format!("file:{}", fixture("example3_rho.txt"));
    // Rounded data is rejected without repair.
    assert_eq!(
        run(&["eval", "--d", "3", "--state", &rho]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "eval",
            "--d",
            "3",
            "--rotation",
            "appendix",
            "--state",
            "maxent"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(&["eval", "--d", "2", "--state", &rho]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["eval", "--d", "3", "--state", "file:/no/such/file"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["eval", "--d", "3", "--state", "bogus"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["eval"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 0\n0 x").unwrap();
    let spec = format!("file:{}", bad.display());
    assert_eq!(
        run(&["eval", "--d", "2", "--state", &spec]).status.code(),
        Some(3)
    );
}

#[test]
fn scan_isotropic_sign_change() {
    let o = run(&[
        "scan",
        "--family",
        "isotropic",
        "--d",
        "3",
        "--alpha",
        "0:1:0.01",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<Vec<String>> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 101);
    let verdict = |alpha: &str| rows.iter().find(|r| r[0] == alpha).unwrap()[2].clone();
    assert_eq!(verdict("0.24"), "inconclusive");
    assert_eq!(verdict("0.26"), "entangled");
    let threshold: f64 = rows[0][3].parse().unwrap();
    assert!((threshold - 0.25).abs() < 1e-9);

    let o = run(&[
        "scan",
        "--family",
        "isotropic",
        "--d",
        "2",
        "--alpha",
        "0:1:0.01",
    ]);
    let first = stdout(&o).lines().nth(1).unwrap().to_string();
    let threshold: f64 = first.split(',').nth(3).unwrap().parse().unwrap();
    assert!((threshold - 1.0 / 3.0).abs() < 1e-9);
}

#[test]
fn scan_bell_diagonal_to_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let path = dir.path().join(name);
        let o = run(&[
            "scan",
            "--family",
            "bell-diagonal",
            "--d",
            "3",
            "--a",
            "0.1111111",
            "--p",
            "0:1:0.01",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        texts.push(std::fs::read_to_string(path).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let mut lines = texts[0].lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,value,verdict,analytic_root,bisection_root,caption_threshold,difference"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let analytic: f64 = row[3].parse().unwrap();
    let caption: f64 = row[5].parse().unwrap();
    assert!((analytic - 1.0 / 3.0).abs() < 1e-9);
    assert!((caption - 0.5).abs() < 1e-6);
    assert_eq!(
        run(&["scan", "--family", "bell-diagonal", "--d", "3"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn optimize_writes_rotation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rot.txt");
    let o = run(&[
        "optimize",
        "--d",
        "3",
        "--state",
        "maxent",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!((field(&out, "optimized value") + 1.0 / 6.0).abs() < 1e-9);
    assert!((field(&out, "identity value") + 1.0 / 6.0).abs() < 1e-9);
    let spec = format!("file:{}", path.display());
    let o = run(&["eval", "--d", "3", "--rotation", &spec, "--state", "maxent"]);
    assert_eq!(o.status.code(), Some(0));
    assert!((field(&stdout(&o), "value") + 1.0 / 6.0).abs() < 1e-9);

    let o = run(&["optimize", "--d", "3", "--state", "maxmixed"]);
    let out = stdout(&o);
    assert!((field(&out, "optimized value") - 1.0 / 18.0).abs() < 1e-9);
    assert!(out.contains("inconclusive"));

    let o = run(&["optimize", "--d", "3", "--state", "example3", "--repair"]);
    assert!(field(&stdout(&o), "optimized value") <= -0.0152);
}

#[test]
fn demos_and_compare() {
    for ex in ["1", "2", "3"] {
        let o = run(&["demo", ex]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("check(s) failed"));
    }
    assert!(stdout(&run(&["demo", "1"])).contains("d=4 witness value"));
    assert_eq!(run(&["demo", "4"]).status.code(), Some(1));

    let o = run(&[
        "compare",
        "--d",
        "3",
        "--state",
        "example3",
        "--repair",
        "--rotation",
        "appendix",
    ]);
    let out = stdout(&o);
    let verdicts: Vec<&str> = out
        .lines()
        .map(|l| l.split(' ').next_back().unwrap())
        .collect();
    assert_eq!(
        verdicts,
        ["entangled", "entangled", "inconclusive", "entangled"]
    );

    let o = run(&["compare", "--d", "3", "--state", "maxmixed", "--csv"]);
    let out = stdout(&o);
    assert!(out.starts_with("name,value,threshold,verdict"));
    assert!(out.lines().skip(1).all(|l| l.ends_with("inconclusive")));
}

#[test]
fn witness_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    let o = run(&[
        "eval",
        "--d",
        "2",
        "--state",
        "maxent",
        "--write-witness",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let parsed = parse_witness(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(parsed.dim, 2);
    assert!((parsed.constant - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(parsed.matrix.dim(), 4);
}
