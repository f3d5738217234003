//! Every shipped example runs to completion.

macro_rules! example {
    ($module:ident, $test:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(kernel_diag_sup, kernel_diag_sup_runs, "kernel_diag_sup.rs");
example!(green_eigenvalues, green_eigenvalues_runs, "green_eigenvalues.rs");
example!(fractional_laplacian, fractional_laplacian_runs, "fractional_laplacian.rs");
example!(rearrangement, rearrangement_runs, "rearrangement.rs");
example!(lyapunov_hartman_wintner, lyapunov_hartman_wintner_runs, "lyapunov_hartman_wintner.rs");
example!(rfk_sweep, rfk_sweep_runs, "rfk_sweep.rs");
example!(richardson_pins, richardson_pins_runs, "richardson_pins.rs");
