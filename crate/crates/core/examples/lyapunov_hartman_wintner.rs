// Audit potentials against the Lyapunov and Hartman–Wintner conditions.
// A constant potential `mu_1 + lambda_1` carries an eigenfunction, so both
// conditions must hold for it.

use fracspec::eigen1d::eigen_frac1d;
use fracspec::grid::{Grid1D, GridFn1D};
use fracspec::inequalities::{hartman_wintner_check, lyapunov_check};
use fracspec::kernel::KernelParams;

pub fn run_example() -> fracspec::Result<()> {
    let lambda1 = 1.0;
    for alpha in [0.75, 1.0] {
        let p = KernelParams::new(alpha, 0.0, 1.0)?;
        let mu1 = eigen_frac1d(&p, 64, 1)?.eigenvalues[0];
        let q = GridFn1D::from_fn(Grid1D::uniform(0.0, 1.0, 4097)?, |_| mu1 + lambda1);
        for r in [lyapunov_check(&q, &p, lambda1)?, hartman_wintner_check(&q, &p, lambda1)?] {
            println!(
                "alpha={alpha:<5} {:<16} lhs {:>9.5} rhs {:>9.5}  {}",
                r.inequality, r.lhs, r.rhs, r.verdict
            );
        }
    }

    // Classical equality case: q - lambda_1 = 6 on (0,1).
    let p = KernelParams::new(1.0, 0.0, 1.0)?;
    let q = GridFn1D::from_fn(Grid1D::uniform(0.0, 1.0, 65537)?, |_| 6.0);
    let r = hartman_wintner_check(&q, &p, 0.0)?;
    println!("q = 6, alpha = 1: margin {:.2e}, equality {}", r.margin, r.equality);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fracspec::Result<()> {
    run_example()
}
