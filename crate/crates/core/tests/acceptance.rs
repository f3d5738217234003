//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Runs under `cargo test`.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use fracspec::eigen1d::{eigen_frac1d, eigen_scaling_check};
use fracspec::fraclap::lambda1_of_interval;
use fracspec::grid::{Grid1D, GridFn1D};
use fracspec::inequalities::{hartman_wintner_check, lyapunov_check, rfk_sweep, InequalityReport};
use fracspec::kernel::{k_diag_quadrature, GreenKernel, KernelParams};
use fracspec::mask::DomainMask2D;
use fracspec::rearrange::{fractional_rayleigh_quotient, rearrange_1d, schwarz_set_2d, steiner_2d, Axis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Regression pins from three-mesh Richardson extrapolation
/// (`cargo run --release --example richardson_pins -- full`).
const PIN_MU1_ALPHA_08: f64 = 4.981225635;
const PIN_LAMBDA1_S05: f64 = 1.157767438;
const PIN_TOL: f64 = 5e-3;

type Outcome = Result<String, String>;
type Profile = (&'static str, fn(f64) -> f64);
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn lib<T>(r: fracspec::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn c1_classical() -> Outcome {
    let p = lib(KernelParams::new(1.0, 0.0, 1.0))?;
    let sup = GreenKernel::new(p).sup_g_diag().value;
    let q = GridFn1D::from_fn(lib(Grid1D::uniform(0.0, 1.0, 3))?, |_| 1.0);
    let rhs = lib(lyapunov_check(&q, &p, 0.0))?.rhs;
    ensure(
        (sup - 0.25).abs() <= 1e-8 && (rhs - 4.0).abs() <= 1e-8,
        format!("sup G(x,x) = {sup:.12}, Lyapunov rhs = {rhs:.10}"),
    )
}

fn c2_kernel_closed_form() -> Outcome {
    let mut worst = 0.0f64;
    for alpha in [0.55, 0.6, 0.75, 0.9, 1.0] {
        for (a, b) in [(0.0, 1.0), (-2.0, 3.0)] {
            let p = lib(KernelParams::new(alpha, a, b))?;
            let closed = (b - a).powf(2.0 * alpha - 1.0)
                / (statrs::function::gamma::gamma(alpha).powi(2) * (2.0 * alpha - 1.0));
            let quad = lib(k_diag_quadrature(&p, a))?.value;
            worst = worst.max((quad - closed).abs());
        }
    }
    ensure(worst <= 1e-10, format!("max |K(a,a) - closed form| = {worst:.2e} over 10 cases"))
}

fn c3_eigen_reduction() -> Outcome {
    let r = lib(eigen_frac1d(&lib(KernelParams::new(1.0, 0.0, 1.0))?, 512, 2))?;
    let pi2 = std::f64::consts::PI.powi(2);
    let e1 = (r.eigenvalues[0] / pi2 - 1.0).abs();
    let e2 = (r.eigenvalues[1] / (4.0 * pi2) - 1.0).abs();
    ensure(
        e1 <= 1e-3 && e2 <= 5e-3,
        format!(
            "mu_1 = {:.6} (rel {e1:.1e}), mu_2 = {:.6} (rel {e2:.1e})",
            r.eigenvalues[0], r.eigenvalues[1]
        ),
    )
}

fn c4_scaling() -> Outcome {
    let mut worst = 0.0f64;
    for alpha in [0.75, 1.0] {
        for stretch in [2.0, 3.0] {
            let r = lib(eigen_scaling_check(&lib(KernelParams::new(alpha, 0.0, 1.0))?, stretch))?;
            worst = worst.max(r.relative_deviation());
        }
    }
    ensure(worst <= 1e-6, format!("max |ratio / stretch^(-2 alpha) - 1| = {worst:.2e}"))
}

fn c5_green_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut dominance, mut positive, mut symmetric) = (0usize, 0usize, 0usize);
    let mut worst_excess = f64::NEG_INFINITY;
    for alpha in [0.6, 0.75, 0.9] {
        let kernel = GreenKernel::new(lib(KernelParams::new(alpha, 0.0, 1.0))?);
        for _ in 0..10_000 {
            let (u, v): (f64, f64) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
            let (t, x) = if u < v { (u, v) } else { (v, u) };
            if !(0.0 < t && t < x && x < 1.0) {
                continue;
            }
            let gxt = lib(kernel.eval_g(x, t))?;
            let gtx = lib(kernel.eval_g(t, x))?;
            let gxx = kernel.g_diag(x);
            worst_excess = worst_excess.max(gxt.value - gxx);
            dominance += usize::from(gxt.value > gxx + 1e-9);
            positive += usize::from(gxx <= 0.0);
            let slack = gxt.abs_error_estimate + gtx.abs_error_estimate + 4.0 * f64::EPSILON * gxt.value.abs();
            symmetric += usize::from((gxt.value - gtx.value).abs() > slack);
        }
    }
    ensure(
        dominance + positive + symmetric == 0,
        format!(
            "3 x 10^4 pairs: {dominance} dominance, {positive} positivity, {symmetric} symmetry violations; max G(x,t) - G(x,x) = {worst_excess:.2e}"
        ),
    )
}

fn same_report(x: &InequalityReport, y: &InequalityReport) -> bool {
    x.lhs == y.lhs && x.rhs == y.rhs && x.margin == y.margin && x.satisfied == y.satisfied && x.equality == y.equality
}

fn c6_witness() -> Outcome {
    let grid = lib(Grid1D::uniform(0.0, 1.0, 4097))?;
    let mut worst = f64::INFINITY;
    let mut shift_ok = true;
    for alpha in [0.6, 0.75, 0.9, 1.0] {
        let p = lib(KernelParams::new(alpha, 0.0, 1.0))?;
        let mu1 = lib(eigen_frac1d(&p, 128, 1))?.eigenvalues[0];
        // Dyadic so that every shift below is exact in floating point.
        let mu1 = (mu1 * 1048576.0).round() / 1048576.0;
        for lambda1 in [0.0, 1.0, 10.0] {
            let q = GridFn1D::from_fn(grid.clone(), |_| mu1 + lambda1);
            let l = lib(lyapunov_check(&q, &p, lambda1))?;
            let h = lib(hartman_wintner_check(&q, &p, lambda1))?;
            worst = worst.min(l.margin).min(h.margin);
            for c in [0.5, 4.0, 1024.0] {
                let qc = q.map(|v| v + c);
                shift_ok &= same_report(&l, &lib(lyapunov_check(&qc, &p, lambda1 + c))?);
                shift_ok &= same_report(&h, &lib(hartman_wintner_check(&qc, &p, lambda1 + c))?);
            }
        }
    }
    ensure(
        worst >= -1e-9 && shift_ok,
        format!("min margin over 12 witnesses = {worst:.4}, shift covariance exact: {shift_ok}"),
    )
}

fn c7_hartman_wintner_equality() -> Outcome {
    let p = lib(KernelParams::new(1.0, 0.0, 1.0))?;
    let q = GridFn1D::from_fn(lib(Grid1D::uniform(0.0, 1.0, 65537))?, |_| 6.0);
    let r = lib(hartman_wintner_check(&q, &p, 0.0))?;
    ensure(
        (r.lhs - r.rhs).abs() <= 1e-9 && r.satisfied && r.equality,
        format!("lhs = {:.12}, rhs = {:.12}", r.lhs, r.rhs),
    )
}

fn run_cli_sweep(s: f64, out: &std::path::Path) -> Result<(i32, BTreeMap<String, f64>), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_fracspec"))
        .args(["rfk", "--alpha", "0.8", "--a", "0", "--b", "1", "--s", &s.to_string()])
        .args(["--builtin", "disk,square,rect2,rect3", "--cells", "576", "--h", &(1.0f64 / 24.0).to_string()])
        .arg("--out-dir")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    let csv = std::fs::read_to_string(out.join("sweep.csv")).map_err(|e| e.to_string())?;
    let lambdas = csv
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[2].parse::<f64>().unwrap())
        })
        .collect();
    Ok((status.status.code().unwrap_or(-1), lambdas))
}

fn c8_faber_krahn() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut lines = Vec::new();
    let mut ok = true;
    for s in [0.3, 0.5, 0.7] {
        let (code, l) = run_cli_sweep(s, dir.path())?;
        let chain = ["disk", "square", "rect2", "rect3"].map(|k| l[k]);
        let ordered = chain.windows(2).all(|w| w[0] < w[1]);
        ok &= ordered && code == 0;
        lines.push(format!(
            "s={s}: {:.4} < {:.4} < {:.4} < {:.4} exit {code}",
            chain[0], chain[1], chain[2], chain[3]
        ));
    }
    ensure(ok, lines.join("; "))
}

fn c9_quadrilateral() -> Outcome {
    let p = lib(KernelParams::new(0.8, 0.0, 1.0))?;
    let mut ok = true;
    let mut worst_gap = f64::INFINITY;
    for (cells, h) in [(256usize, 1.0 / 16.0), (576, 1.0 / 24.0)] {
        let shapes = ["rect4", "rect2", "square"]
            .iter()
            .map(|&n| Ok((n.to_string(), DomainMask2D::builtin(n, cells, h)?)))
            .collect::<fracspec::Result<Vec<_>>>();
        let shapes = lib(shapes)?;
        for s in [0.3, 0.5, 0.7] {
            let t = lib(rfk_sweep(&shapes, &p, s, 32))?;
            let ids: Vec<&str> = t.rows.iter().map(|r| r.shape_id.as_str()).collect();
            ok &= ids == ["square", "rect2", "rect4"];
            worst_gap = worst_gap.min(t.rows[1].lambda1 / t.rows[0].lambda1 - 1.0);
        }
    }
    ensure(ok, format!("square minimizes at h = 1/16, 1/24 for s = 0.3, 0.5, 0.7; smallest gap to rect2 {:.2}%", 100.0 * worst_gap))
}

/// Ten nonnegative profiles on [-1, 1] vanishing at both ends.
fn rayleigh_suite() -> Vec<Profile> {
    fn bump(x: f64, c: f64, w: f64) -> f64 {
        (1.0 - ((x - c) / w).powi(2)).max(0.0)
    }
    vec![
        ("shifted bump", |x| bump(x, 0.4, 0.5)),
        ("two bumps", |x| bump(x, -0.5, 0.3) + 0.7 * bump(x, 0.5, 0.3)),
        ("sin^2", |x| (2.0 * std::f64::consts::PI * x).sin().powi(2) * (1.0 - x * x)),
        ("tent", |x| (0.6 - (x - 0.2).abs()).max(0.0)),
        ("two blocks", |x| if (-0.7..-0.3).contains(&x) || (0.2..0.5).contains(&x) { 1.0 } else { 0.0 }),
        ("skewed polynomial", |x| (1.0 + x).powi(3) * (1.0 - x)),
        ("off-center gaussian", |x| (-20.0 * (x - 0.3).powi(2)).exp() * (1.0 - x * x)),
        ("staircase", |x| ((2.0 + 3.0 * x).floor().max(0.0)) * (1.0 - x * x)),
        ("symmetric", |x| 1.0 - x * x),
        ("sawtooth", |x| ((3.0 * (x + 1.0)).fract()) * (1.0 - x * x)),
    ]
}

fn c10_rearrangement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut failures = Vec::new();
    for i in 0..100 {
        let n = rng.gen_range(3..400);
        let quantized = i % 2 == 0;
        let vals: Vec<f64> = (0..n)
            .map(|_| {
                let v: f64 = rng.gen_range(0.0..5.0);
                if quantized { v.floor() } else { v }
            })
            .collect();
        let f = lib(GridFn1D::new(lib(Grid1D::uniform(-1.0, 1.0, n))?, vals))?;
        let r = lib(rearrange_1d(&f))?;
        let sorted = |v: &[f64]| {
            let mut v = v.to_vec();
            v.sort_by(f64::total_cmp);
            v
        };
        if sorted(f.values()) != sorted(r.values()) {
            failures.push(format!("input {i}: multisets differ"));
        }
        let l2 = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (l2(f.values()) - l2(r.values())).abs() > 4.0 * f64::EPSILON * l2(f.values()) {
            failures.push(format!("input {i}: l2 norm changed"));
        }
        let (rows, cols) = (rng.gen_range(1..20), rng.gen_range(1..20));
        let mut cells: Vec<bool> = (0..rows * cols).map(|_| rng.gen_bool(0.5)).collect();
        cells[0] = true;
        let m = lib(DomainMask2D::new(0.1, (0.0, 0.0), rows, cols, cells))?;
        for (name, out) in [
            ("steiner x", steiner_2d(&m, Axis::X)),
            ("steiner y", steiner_2d(&m, Axis::Y)),
            ("schwarz", schwarz_set_2d(&m)),
        ] {
            if lib(out)?.count() != m.count() {
                failures.push(format!("mask {i}: {name} changed cell count"));
            }
        }
    }

    let grid = lib(Grid1D::uniform(-1.0, 1.0, 257))?;
    let mut worst = 0.0f64;
    for (name, f) in rayleigh_suite() {
        let f = GridFn1D::from_fn(grid.clone(), f);
        let r = lib(rearrange_1d(&f))?;
        for s in [0.3, 0.5, 0.7] {
            let before = lib(fractional_rayleigh_quotient(&f, s))?;
            let after = lib(fractional_rayleigh_quotient(&r, s))?;
            worst = worst.max(after / before - 1.0);
            if after > 1.02 * before {
                failures.push(format!("{name}, s={s}: quotient {before:.4} -> {after:.4}"));
            }
        }
    }

    let tri = lib(DomainMask2D::right_triangle(16, 1.0 / 16.0))?;
    let tent = lib(steiner_2d(&tri, Axis::X))?;
    let (lt, ls) = (
        lib(fracspec::fraclap::lambda1_of_mask(&tri, 0.5))?,
        lib(fracspec::fraclap::lambda1_of_mask(&tent, 0.5))?,
    );
    if ls > lt {
        failures.push(format!("Steiner raised lambda_1: {lt:.5} -> {ls:.5}"));
    }
    ensure(
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "100 random inputs exact; Rayleigh max relative change {worst:+.3} over 30 cases; triangle lambda_1 {lt:.4} -> {ls:.4}"
            )
        } else {
            failures.join("; ")
        },
    )
}

fn c11_pins() -> Outcome {
    let mu1 = lib(eigen_frac1d(&lib(KernelParams::new(0.8, 0.0, 1.0))?, 512, 1))?.eigenvalues[0];
    let lambda1 = lib(lambda1_of_interval(1024, 0.5, 2.0))?;
    let (e_mu, e_la) = ((mu1 / PIN_MU1_ALPHA_08 - 1.0).abs(), (lambda1 / PIN_LAMBDA1_S05 - 1.0).abs());
    ensure(
        e_mu <= PIN_TOL && e_la <= PIN_TOL,
        format!("mu_1 = {mu1:.6} (pin {PIN_MU1_ALPHA_08}, rel {e_mu:.1e}); lambda_1 = {lambda1:.6} (pin {PIN_LAMBDA1_S05}, rel {e_la:.1e})"),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("classical reduction", Duration::from_secs(1), c1_classical),
        ("kernel closed form", Duration::from_secs(1), c2_kernel_closed_form),
        ("eigenvalue reduction", Duration::from_secs(30), c3_eigen_reduction),
        ("scaling law", Duration::from_secs(30), c4_scaling),
        ("Green kernel properties", Duration::from_secs(60), c5_green_properties),
        ("inequality witnesses", Duration::from_secs(60), c6_witness),
        ("Hartman-Wintner equality", Duration::from_secs(1), c7_hartman_wintner_equality),
        ("Faber-Krahn ordering", Duration::from_secs(600), c8_faber_krahn),
        ("quadrilateral RFK", Duration::from_secs(600), c9_quadrilateral),
        ("rearrangement identities", Duration::from_secs(120), c10_rearrangement),
        ("regression pins", Duration::from_secs(600), c11_pins),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= *budget => (true, d),
            Ok(d) => (false, format!("{d} [over time budget {budget:?}]")),
            Err(d) => (false, d),
        };
        failed += usize::from(!ok);
        println!(
            "{} criterion {:>2} {name}: {detail} ({:.2} s)",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
