// Rayleigh–Faber–Krahn sweep: the first eigenvalue of cylinders with
// cross-sections of equal cell count. The disk should win.

use fracspec::inequalities::rfk_sweep;
use fracspec::kernel::KernelParams;
use fracspec::mask::DomainMask2D;

pub fn run_example() -> fracspec::Result<()> {
    let p = KernelParams::new(0.8, 0.0, 1.0)?;
    let h = 1.0 / 16.0;
    let shapes = ["rect3", "rect2", "square", "disk"]
        .iter()
        .map(|&n| Ok((n.to_string(), DomainMask2D::builtin(n, 256, h)?)))
        .collect::<fracspec::Result<Vec<_>>>()?;
    let table = rfk_sweep(&shapes, &p, 0.5, 64)?;
    print!("{}", table.to_csv());
    println!("minimizer: {}", table.minimizer().shape_id);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fracspec::Result<()> {
    run_example()
}
