// Reproduce the regression pins: Richardson extrapolation over three meshes
// for mu_1 (alpha = 0.8 on (0,1)) and lambda_1 (s = 0.5 on (-1,1)).
//
// The full run takes several seconds in release mode:
//
// ```text
// cargo run --release --example richardson_pins -- full
// ```
// Without `full` it uses meshes four times coarser.

use fracspec::eigen1d::eigen_frac1d;
use fracspec::extrapolate::{richardson3, Extrapolation};
use fracspec::fraclap::lambda1_of_interval;
use fracspec::kernel::KernelParams;
use fracspec::Error;

fn extrapolate(label: &str, ns: [usize; 3], f: impl Fn(usize) -> fracspec::Result<f64>) -> fracspec::Result<Extrapolation> {
    let v = [f(ns[0])?, f(ns[1])?, f(ns[2])?];
    for (n, x) in ns.iter().zip(v) {
        println!("{label} n={n:<5} {x:.9}");
    }
    let e = richardson3(v[0], v[1], v[2])
        .ok_or_else(|| Error::Numerical(format!("{label}: sequence does not converge monotonically")))?;
    println!("{label} extrapolated {:.9}  order {:.3}  uncertainty {:.2e}", e.value, e.order, e.uncertainty);
    Ok(e)
}

pub fn pins(scale: usize) -> fracspec::Result<(Extrapolation, Extrapolation)> {
    let p = KernelParams::new(0.8, 0.0, 1.0)?;
    let mu = extrapolate("mu_1", [128 / scale, 256 / scale, 512 / scale], |n| {
        Ok(eigen_frac1d(&p, n, 1)?.eigenvalues[0])
    })?;
    let lambda = extrapolate("lambda_1", [256 / scale, 512 / scale, 1024 / scale], |n| {
        lambda1_of_interval(n, 0.5, 2.0)
    })?;
    Ok((mu, lambda))
}

pub fn run_example() -> fracspec::Result<()> {
    pins(4).map(|_| ())
}

#[allow(dead_code)]
fn main() -> fracspec::Result<()> {
    let full = std::env::args().any(|a| a == "full");
    pins(if full { 1 } else { 4 }).map(|_| ())
}
