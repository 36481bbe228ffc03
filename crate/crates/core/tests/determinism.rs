//! Results must not depend on the number of worker threads.

use jc_trimer::io::phase_diagram_rows;
use jc_trimer::sweep::{linspace, sweep, theta_axis};
use jc_trimer::{make_params, solve, SolverOptions};

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn sweep_rows_are_identical_across_pool_sizes() {
    let base = make_params(1000.0, 1.2, 0.05, 0.0).unwrap();
    let run = || {
        let grid = sweep(&base, &linspace(0.9, 1.3, 6), &theta_axis(8), &SolverOptions::default())
            .unwrap();
        phase_diagram_rows(&grid)
    };
    let one = in_pool(1, run);
    assert_eq!(one, in_pool(3, run));
    assert_eq!(one, in_pool(8, run));
}

#[test]
fn single_solve_is_bitwise_stable() {
    let p = make_params(1000.0, 1.1, 0.05, 1.0).unwrap();
    let opts = SolverOptions { seed: 42, ..Default::default() };
    let a = in_pool(1, || solve(&p, &opts).unwrap());
    let b = in_pool(4, || solve(&p, &opts).unwrap());
    assert_eq!(a.amplitudes, b.amplitudes);
    assert_eq!(a.ground_energy.to_bits(), b.ground_energy.to_bits());
}
