// Rearrangements at cell resolution. They permute cells, so measure and
// norms are preserved exactly, and they lower eigenvalues.

use fracspec::fraclap::lambda1_of_mask;
use fracspec::grid::{Grid1D, GridFn1D};
use fracspec::mask::{DomainMask2D, GridFn2D};
use fracspec::rearrange::{fractional_rayleigh_quotient, layer_cake, rearrange_1d, steiner_2d, Axis};

pub fn run_example() -> fracspec::Result<()> {
    let grid = Grid1D::uniform(-1.0, 1.0, 129)?;
    let f = GridFn1D::from_fn(grid, |x| {
        let bump = |c: f64| (1.0 - ((x - c) / 0.3).powi(2)).max(0.0);
        bump(-0.5) + 0.6 * bump(0.45)
    });
    let star = rearrange_1d(&f)?;
    println!("L2 norm: {:.15} -> {:.15}", f.l2_norm(), star.l2_norm());
    let (rq, rq_star) = (fractional_rayleigh_quotient(&f, 0.5)?, fractional_rayleigh_quotient(&star, 0.5)?);
    println!("Rayleigh quotient s=0.5: {rq:.5} -> {rq_star:.5}");

    let tri = DomainMask2D::right_triangle(16, 1.0 / 16.0)?;
    let tent = steiner_2d(&tri, Axis::X)?;
    println!(
        "triangle {} cells, lambda_1 {:.5}; Steiner {} cells, lambda_1 {:.5}",
        tri.count(),
        lambda1_of_mask(&tri, 0.5)?,
        tent.count(),
        lambda1_of_mask(&tent, 0.5)?
    );

    let bump = GridFn2D::from_fn(1.0 / 32.0, 32, 32, |x, y| {
        (1.0 - ((x - 0.5).powi(2) + (y - 0.5).powi(2)) / 0.2).max(0.0)
    });
    let cake = layer_cake(&bump, 64)?;
    let err = cake
        .reconstruct()
        .values
        .iter()
        .zip(&bump.values)
        .fold(0.0f64, |m, (r, v)| m.max((r - v).abs()));
    println!("layer cake, 64 levels: sup error {err:.4} (bound {:.4})", bump.max() / 64.0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fracspec::Result<()> {
    run_example()
}
