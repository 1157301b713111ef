use std::path::Path;
use std::process::{Command, Output};

fn zerotemp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerotemp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn forbidden_words_agree_with_oracle() {
    let o = zerotemp(&[
        "tower",
        "forbidden",
        "--depth",
        "2",
        "--N",
        "4,4",
        "--Nprime",
        "4,4",
        "--n",
        "8",
        "--check-oracle",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("# n=2 level=0 count=1\n00\n"));
    assert_eq!(out.matches(": ok").count(), 8);
    assert!(out.ends_with("STATUS: OK\n"));
}

#[test]
fn enumerator_prints_anbn() {
    let o = zerotemp(&["tm", "enumerate", "--machine", "anbn_enum", "--fuel", "500"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<String> = stdout(&o).lines().take(3).map(str::to_owned).collect();
    assert_eq!(lines, ["ab", "aabb", "aaabbb"]);
}

#[test]
fn tower_sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let o = zerotemp(&[
        "thermo",
        "sweep",
        "--forbidden-from-tower",
        "8",
        "--betas",
        "0:50:1",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("beta,pressure,mu0,mu1,mu2,muF,bound_ok"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 51);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
    assert!(stdout(&o).ends_with("STATUS: OK\n"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["tower", "build", "--frob"][..],
        &["nope"],
        &["thermo", "entropy", "--joint", "0.2,0.3"],
    ] {
        let o = zerotemp(args);
        assert_eq!(code(&o), 1, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = zerotemp(&["tower", "build", "--frob"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage:"));
}

#[test]
fn resource_bounds_exit_three() {
    for args in [
        &["tower", "schedule", "--depth", "3"][..],
        &["thermo", "torus", "--n", "5"],
        &[
            "thermo",
            "sweep",
            "--forbidden-from-tower",
            "16",
            "--betas",
            "1",
        ],
    ] {
        let o = zerotemp(args);
        assert_eq!(code(&o), 3, "{args:?}");
        assert!(stdout(&o).ends_with("STATUS: FAIL\n"));
    }
}

#[test]
fn failed_verification_exits_two() {
    // the primed words of level 2 overlap themselves by one letter
    let o = zerotemp(&["tower", "overlaps", "--k", "2"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("a'' self-overlap of length 1"));
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "alt.txt", "00\n11\n");
    let o = zerotemp(&["thermo", "sweep", "--forbidden", &f, "--betas", "0,inf"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn seeded_runs_are_byte_identical() {
    let a = zerotemp(&[
        "planar",
        "occupancy",
        "--mosaics",
        "2",
        "--shape",
        "blocks",
        "--seed",
        "11",
    ]);
    let b = zerotemp(&[
        "planar",
        "occupancy",
        "--mosaics",
        "2",
        "--shape",
        "blocks",
        "--seed",
        "11",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = zerotemp(&["planar", "lifts", "--random", "30", "--seed", "4"]);
    let d = zerotemp(&["planar", "lifts", "--random", "30", "--seed", "4"]);
    assert_eq!(c.stdout, d.stdout);
    assert_eq!(code(&c), 0);
}

#[test]
fn diagram_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.txt");
    let o = zerotemp(&[
        "tm",
        "diagram",
        "--machine",
        "anbn_dec",
        "--input",
        "aaabbb",
        "--steps",
        "60",
        "--out",
        d.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let o = zerotemp(&[
        "tm",
        "check",
        "--machine",
        "anbn_dec",
        "--diagram",
        d.to_str().unwrap(),
        "--mutations",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    // break one cell of the saved diagram
    let text = std::fs::read_to_string(&d).unwrap();
    let bad = text.replacen("(q0,a)", "a", 1);
    assert_ne!(bad, text);
    std::fs::write(&d, bad).unwrap();
    let o = zerotemp(&[
        "tm",
        "check",
        "--machine",
        "anbn_dec",
        "--diagram",
        d.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn language_of_golden_mean() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "gm.txt", "# no two ones\n11\n");
    let o = zerotemp(&[
        "core",
        "language",
        "--alphabet",
        "01",
        "--forbidden",
        &f,
        "--n",
        "3",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("000\n001\n010\n100\n101\ncount: 5\n"));
    let o = zerotemp(&[
        "core",
        "reconstruct",
        "--alphabet",
        "01",
        "--forbidden",
        &f,
        "--n",
        "2",
        "--rmax",
        "4",
    ]);
    assert!(stdout(&o).starts_with("radius: 2\n"));
}

#[test]
fn torus_ground_states() {
    let o = zerotemp(&["thermo", "torus", "--q", "2", "--n", "3", "--beta", "inf"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let json_end = out.rfind('}').unwrap();
    let v: serde_json::Value = serde_json::from_str(&out[..=json_end]).unwrap();
    assert_eq!(v["ground_states"], 8);
    assert_eq!(v["configurations"], 512);
    assert_eq!(v["expected_energy"], 0.0);
}

#[test]
fn schedule_json_has_level_one() {
    let o = zerotemp(&["tower", "schedule", "--depth", "2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&out[..=out.rfind(']').unwrap()]).unwrap();
    let l1 = &v[1];
    assert_eq!(
        [
            &l1["n_prime"],
            &l1["len_prime"],
            &l1["beta"],
            &l1["n"],
            &l1["len"],
            &l1["rho_a"],
            &l1["rho_b"]
        ],
        ["1", "2", "16", "16", "32", "16", "2"]
    );
    assert!(out.contains("flagged at level 1"));
}
