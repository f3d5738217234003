// First Dirichlet eigenvalue of the restricted fractional Laplacian on an
// interval and on planar cell masks.

use fracspec::fraclap::{lambda1, lambda1_of_interval, fraclap_matrix_2d};
use fracspec::mask::DomainMask2D;

pub fn run_example() -> fracspec::Result<()> {
    for n in [128, 256] {
        println!("(-1,1), s=0.5, n={n}: lambda_1 = {:.6}", lambda1_of_interval(n, 0.5, 2.0)?);
    }

    let h = 1.0 / 16.0;
    for name in ["disk", "square", "rect2"] {
        let mask = DomainMask2D::builtin(name, 256, h)?;
        let pair = lambda1(&fraclap_matrix_2d(&mask, 0.5)?)?;
        println!(
            "{name:<7} 256 cells: lambda_1 = {:.6} after {} iterations",
            pair.lambda, pair.iterations
        );
    }

    // Masks round-trip through a small text format.
    let tri = DomainMask2D::right_triangle(6, 0.1)?;
    print!("{}", tri.to_text());
    assert_eq!(DomainMask2D::parse(&tri.to_text())?, tri);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fracspec::Result<()> {
    run_example()
}
