// The Green kernel on the diagonal and its supremum, which sets the
// Lyapunov constant `1 / sup G(x,x)`.
//
// ```text
// cargo run --release --example kernel_diag_sup
// ```

use fracspec::kernel::{GreenKernel, KernelParams};

pub fn run_example() -> fracspec::Result<()> {
    println!("{:>6} {:>12} {:>14} {:>14}", "alpha", "x*", "sup G(x,x)", "1/sup");
    for alpha in [0.6, 0.75, 0.9, 1.0] {
        let kernel = GreenKernel::new(KernelParams::new(alpha, 0.0, 1.0)?);
        let sup = kernel.sup_g_diag();
        println!("{alpha:>6} {:>12.8} {:>14.10} {:>14.8}", sup.x_star, sup.value, 1.0 / sup.value);
    }

    // Off-diagonal values carry their own quadrature error estimate.
    let kernel = GreenKernel::new(KernelParams::new(0.75, -2.0, 3.0)?);
    let k = kernel.eval_k(0.5, 1.5)?;
    let g = kernel.eval_g(0.5, 1.5)?;
    println!("alpha=0.75 on (-2,3): K(0.5,1.5) = {:.12} (+/- {:.1e})", k.value, k.abs_error_estimate);
    println!("                      G(0.5,1.5) = {:.12} (+/- {:.1e})", g.value, g.abs_error_estimate);
    println!("                      K(a,a)     = {:.12}", kernel.k_aa());
    Ok(())
}

#[allow(dead_code)]
fn main() -> fracspec::Result<()> {
    run_example()
}
