use std::path::Path;
use std::process::{Command, Output};

use fracspec::mask::DomainMask2D;

fn fracspec(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracspec"))
        .args(args)
        .arg("--out-dir")
        .arg(out)
        .env("FRACSPEC_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn kernel_point_writes_json_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = fracspec(&["kernel", "--alpha", "1", "--a", "0", "--b", "1", "--x", "0.3", "--t", "0.7"], dir.path());
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // alpha = 1: K(x,t) = b - max(x,t) and G(x,t) = (1 - x) t for t <= x.
    assert!((v["K"]["value"].as_f64().unwrap() - 0.3).abs() < 1e-14);
    assert!((v["G"]["value"].as_f64().unwrap() - 0.09).abs() < 1e-14);
    let file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("kernel.json")).unwrap()).unwrap();
    assert_eq!(file, v);
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["command"], "kernel");
    assert_eq!(m["exit_code"], 0);
    assert!(m["timestamp"].as_str().unwrap().ends_with('Z'));
    assert_eq!(m["parameters"]["Kernel"]["interval"]["alpha"], 1.0);
}

#[test]
fn negative_endpoints_and_diag_sup() {
    let dir = tempfile::tempdir().unwrap();
    let o = fracspec(&["kernel", "--alpha", "1", "--a", "-1", "--b", "1", "--diag-sup"], dir.path());
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["value"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert!(v["x_star"].as_f64().unwrap().abs() < 1e-6);
}

#[test]
fn eigen_output_is_deterministic_and_reproducible_from_manifest() {
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["eigen", "frac1d", "--alpha", "0.8", "--a", "0", "--b", "1", "--n", "64", "--k", "2"];
    assert_eq!(code(&fracspec(&args, d1.path())), 0);
    let first = std::fs::read_to_string(d1.path().join("eigen.csv")).unwrap();
    assert!(first.starts_with("index,eigenvalue,residual\n1,"));
    assert_eq!(first.lines().count(), 3);

    // Rerun from the echoed argv, redirected to a fresh directory.
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d1.path().join("manifest.json")).unwrap()).unwrap();
    let argv: Vec<String> = m["argv"].as_array().unwrap().iter().map(|a| a.as_str().unwrap().to_string()).collect();
    let cut = argv.iter().position(|a| a == "--out-dir").unwrap();
    let replay: Vec<&str> = argv[1..cut].iter().map(String::as_str).collect();
    assert_eq!(code(&fracspec(&replay, d2.path())), 0);
    assert_eq!(std::fs::read_to_string(d2.path().join("eigen.csv")).unwrap(), first);
}

#[test]
fn fraclap_interval_and_mask() {
    let dir = tempfile::tempdir().unwrap();
    let o = fracspec(&["eigen", "fraclap", "--s", "0.5", "--length", "2", "--n", "128"], dir.path());
    assert_eq!(code(&o), 0);
    let csv = String::from_utf8(o.stdout).unwrap();
    let lambda: f64 = csv.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((lambda / 1.1577738 - 1.0).abs() < 5e-3);

    let mask = dir.path().join("sq.mask");
    DomainMask2D::builtin("square", 64, 0.125).unwrap().write(&mask).unwrap();
    let o = fracspec(&["eigen", "fraclap", "--s", "0.5", "--mask", mask.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 0);
}

#[test]
fn parameter_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&fracspec(&["kernel", "--alpha", "1.5", "--a", "0", "--b", "1", "--diag-sup"], dir.path())), 2);
    assert_eq!(code(&fracspec(&["kernel", "--alpha", "0.8", "--a", "1", "--b", "0", "--diag-sup"], dir.path())), 2);
    assert_eq!(code(&fracspec(&["kernel", "--alpha", "0.8", "--a", "0", "--b", "1", "--x", "2", "--t", "0.5"], dir.path())), 2);
    assert_eq!(code(&fracspec(&["eigen", "frac1d", "--alpha", "0.8", "--a", "0", "--b", "1", "--n", "8"], dir.path())), 2);
    // Missing required flags are rejected by the parser with the same code.
    assert_eq!(code(&fracspec(&["kernel", "--alpha", "0.8"], dir.path())), 2);
    assert_eq!(code(&fracspec(&["frobnicate"], dir.path())), 2);
}

#[test]
fn unreadable_or_malformed_input_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.mask");
    assert_eq!(code(&fracspec(&["eigen", "fraclap", "--s", "0.5", "--mask", missing.to_str().unwrap()], dir.path())), 3);

    let bad_mask = dir.path().join("bad.mask");
    std::fs::write(&bad_mask, "h=0.1\n0110\n01x0\n").unwrap();
    assert_eq!(code(&fracspec(&["eigen", "fraclap", "--s", "0.5", "--mask", bad_mask.to_str().unwrap()], dir.path())), 3);

    let check = |file: &Path| {
        code(&fracspec(
            &["check", "lyapunov", "--alpha", "0.8", "--a", "0", "--b", "1", "--lambda1", "0", "--q-file", file.to_str().unwrap()],
            dir.path(),
        ))
    };
    let wrong_header = dir.path().join("h.csv");
    std::fs::write(&wrong_header, "t,v\n0,1\n1,1\n").unwrap();
    assert_eq!(check(&wrong_header), 3);
    let not_numbers = dir.path().join("n.csv");
    std::fs::write(&not_numbers, "x,q\n0,1\n0.5,abc\n1,1\n").unwrap();
    assert_eq!(check(&not_numbers), 3);
    let unsorted = dir.path().join("u.csv");
    std::fs::write(&unsorted, "x,q\n0,1\n0.7,1\n0.3,1\n1,1\n").unwrap();
    assert_eq!(check(&unsorted), 3);
}

#[test]
fn check_exit_codes_follow_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.csv");
    let mut text = String::from("x,q\n");
    for i in 0..=1000 {
        text.push_str(&format!("{},{}\n", i as f64 / 1000.0, 20.0));
    }
    std::fs::write(&q, text).unwrap();
    let run = |which: &str, lambda: &str| {
        let o = fracspec(
            &["check", which, "--alpha", "0.75", "--a", "0", "--b", "1", "--lambda1", lambda, "--q-file", q.to_str().unwrap()],
            dir.path(),
        );
        let report: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
        (code(&o), report)
    };
    let (c, r) = run("lyapunov", "0");
    assert_eq!(c, 0);
    assert_eq!(r["verdict"], "necessary condition satisfied");
    let (c, r) = run("hartman-wintner", "20");
    assert_eq!(c, 10);
    assert_eq!(r["lhs"], 0.0);
    assert_eq!(r["satisfied"], false);

    // Interval mismatch between the file and the flags is a parameter error.
    let o = fracspec(
        &["check", "lyapunov", "--alpha", "0.75", "--a", "0", "--b", "2", "--lambda1", "0", "--q-file", q.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn rfk_from_shape_directory() {
    let dir = tempfile::tempdir().unwrap();
    let shapes = dir.path().join("shapes");
    std::fs::create_dir(&shapes).unwrap();
    for name in ["disk", "square", "rect2"] {
        DomainMask2D::builtin(name, 144, 1.0 / 12.0).unwrap().write(shapes.join(format!("{name}.mask"))).unwrap();
    }
    let args = ["rfk", "--alpha", "0.8", "--a", "0", "--b", "1", "--s", "0.5", "--n", "32", "--shapes", shapes.to_str().unwrap()];
    let o = fracspec(&args, dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert!(csv.starts_with("shape_id,cells,lambda1,mu1,nu1\ndisk,144,"), "{csv}");

    // A shape of different measure violates the hypothesis.
    DomainMask2D::builtin("square", 100, 1.0 / 12.0).unwrap().write(shapes.join("small.mask")).unwrap();
    assert_eq!(code(&fracspec(&args, dir.path())), 2);
}

#[test]
fn rfk_expected_minimizer_decides_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["rfk", "--alpha", "0.8", "--a", "0", "--b", "1", "--s", "0.5", "--n", "32", "--cells", "144", "--h", "0.0833333333333"];
    let with = |list: &str| {
        let mut a = base.to_vec();
        a.extend(["--builtin", list]);
        code(&fracspec(&a, dir.path()))
    };
    assert_eq!(with("rect4,square,rect2"), 0);
    // Without a disk or square there is no predicted winner.
    assert_eq!(with("rect3,rect2"), 0);
    assert_eq!(with("square,bogus"), 2);
}
