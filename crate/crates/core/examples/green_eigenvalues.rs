// Dirichlet eigenvalues of `D^alpha_{a+} D^alpha_{b-}` by Nyström
// discretization of the Green kernel, and the interval scaling law.

use fracspec::eigen1d::{eigen_frac1d, eigen_scaling_check};
use fracspec::kernel::KernelParams;

pub fn run_example() -> fracspec::Result<()> {
    let pi2 = std::f64::consts::PI.powi(2);
    let classical = eigen_frac1d(&KernelParams::new(1.0, 0.0, 1.0)?, 128, 3)?;
    for (k, mu) in classical.eigenvalues.iter().enumerate() {
        let exact = pi2 * ((k + 1) * (k + 1)) as f64;
        println!("alpha=1   mu_{} = {mu:.6}  (exact {exact:.6})", k + 1);
    }

    let p = KernelParams::new(0.8, 0.0, 1.0)?;
    for n in [64, 128] {
        let r = eigen_frac1d(&p, n, 1)?;
        println!("alpha=0.8 n={n:<4} mu_1 = {:.6}  residual {:.1e}", r.eigenvalues[0], r.residuals[0]);
    }

    let scaling = eigen_scaling_check(&KernelParams::new(0.75, 0.0, 1.0)?, 2.0)?;
    println!(
        "stretch 2 at alpha=0.75: ratio {:.10}, expected {:.10}",
        scaling.ratio, scaling.expected
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> fracspec::Result<()> {
    run_example()
}
