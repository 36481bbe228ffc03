//! Symmetry invariants of the classical functional and the solver.

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use jc_trimer::io::fmt_sci;
use jc_trimer::meanfield::{candidates, classical_energy, classify, gradient, PhaseTolerances};
use jc_trimer::observables::{current, time_reversal};
use jc_trimer::{make_params, solve, Amplitudes, SolverOptions, SystemParams};

fn amplitudes(r: f64) -> impl Strategy<Value = Amplitudes> {
    prop::array::uniform6(-r..r).prop_map(|x| Amplitudes::from_real_vec(&x))
}

fn params() -> impl Strategy<Value = SystemParams> {
    (0.5f64..1.4, -PI..PI).prop_map(|(g1, t)| make_params(1000.0, g1, 0.05, t).unwrap())
}

/// `α_n → α_n e^{2πi n/3}`
fn twist(a: &Amplitudes) -> Amplitudes {
    Amplitudes(std::array::from_fn(|n| {
        a[n] * Complex64::from_polar(1.0, 2.0 * PI * (n + 1) as f64 / 3.0)
    }))
}

proptest! {
    #[test]
    fn twist_shifts_the_hopping_phase(a in amplitudes(60.0), p in params()) {
        let shifted = p.with_theta(p.theta() + 2.0 * PI / 3.0).unwrap();
        let lhs = classical_energy(&twist(&a), &p);
        let rhs = classical_energy(&a, &shifted);
        prop_assert!((lhs - rhs).abs() < 1e-9 * lhs.abs().max(1.0));
    }

    #[test]
    fn translation_and_phase_leave_energy(a in amplitudes(60.0), p in params(), phi in -PI..PI) {
        let e = classical_energy(&a, &p);
        for moved in [a.translate(1), a.translate(2), a.scale(Complex64::from_polar(1.0, phi))] {
            prop_assert!((classical_energy(&moved, &p) - e).abs() < 1e-9 * e.abs().max(1.0));
        }
    }

    #[test]
    fn gradient_is_phase_covariant(a in amplitudes(60.0), p in params(), phi in -PI..PI) {
        let u = Complex64::from_polar(1.0, phi);
        let d = gradient(&a, &p);
        let dr = gradient(&a.scale(u), &p);
        for n in 0..3 {
            prop_assert!((dr[n] - d[n] * u).norm() < 1e-9 * (1.0 + d.max_abs()));
        }
    }

    #[test]
    fn time_reversal_flips_the_current(a in amplitudes(60.0), p in params()) {
        let (ar, pr) = time_reversal(&a, &p);
        let e = classical_energy(&a, &p);
        prop_assert!((classical_energy(&ar, &pr) - e).abs() < 1e-9 * e.abs().max(1.0));
        prop_assert!((current(&ar, &pr) + current(&a, &p)).abs() < 1e-9);
    }

    #[test]
    fn label_ignores_global_phase(a in amplitudes(60.0), p in params(), phi in -PI..PI) {
        let tol = PhaseTolerances::default();
        let rotated = a.scale(Complex64::from_polar(1.0, phi));
        prop_assert_eq!(classify(&a, &p, &tol), classify(&rotated, &p, &tol));
    }

    #[test]
    fn scientific_format_round_trips(x in prop::num::f64::NORMAL) {
        let back: f64 = fmt_sci(x).parse().unwrap();
        prop_assert!((back - x).abs() <= 1e-12 * x.abs());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ground_energy_has_the_symmetries_of_the_model(p in params()) {
        let opts = SolverOptions::default();
        let e = solve(&p, &opts).unwrap().ground_energy;
        for theta in [-p.theta(), p.theta() + 2.0 * PI / 3.0, p.theta() - 2.0 * PI / 3.0] {
            let q = p.with_theta(theta).unwrap();
            let eq = solve(&q, &opts).unwrap().ground_energy;
            prop_assert!((eq - e).abs() < 1e-6, "theta {} vs {}: {} vs {}", p.theta(), theta, e, eq);
        }
    }

    #[test]
    fn returned_state_is_the_best_stable_candidate(p in params(), seed in 0u64..1000) {
        let opts = SolverOptions { seed, ..Default::default() };
        let all = candidates(&p, &opts).unwrap();
        let best = &all[0];
        prop_assert!(best.residual < opts.tol_residual * p.omega0());
        prop_assert!(best.spectrum.stable);
        prop_assert!(best.spectrum.eps.windows(2).all(|w| w[0] <= w[1]));
        for other in &all[1..] {
            prop_assert!(other.ground_energy >= best.ground_energy - 1e-9 * p.omega0());
        }
    }
}
