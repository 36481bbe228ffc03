//! The solver against closed forms wherever one exists.

use std::f64::consts::PI;

use jc_trimer::meanfield::{classical_energy, plane_wave_amplitude, usp_amplitude};
use jc_trimer::normal::{critical_coupling, np_ground_energy, soft_mode};
use jc_trimer::sweep::linspace;
use jc_trimer::{make_params, solve, Amplitudes, Observables, PhaseLabel, SolverOptions};

#[test]
fn chiral_phase_is_the_soft_mode_plane_wave() {
    for theta in linspace(0.15, 2.0, 8).into_iter().flat_map(|t| [t, -t]) {
        let p = make_params(1000.0, 1.2, 0.05, theta).unwrap();
        let sol = solve(&p, &SolverOptions::default()).unwrap();
        let pw = plane_wave_amplitude(&p, soft_mode(&p)).unwrap();
        assert_eq!(sol.phase, PhaseLabel::CFSP, "theta {theta}");
        assert!(
            (sol.classical_energy - classical_energy(&pw, &p)).abs() < 1e-9 * p.omega0(),
            "theta {theta}"
        );
        assert!(sol.amplitudes.distance_mod_phase(&pw) < 1e-6 * p.eta().sqrt());
        let (a, b) = (sol.observables(&p), Observables::evaluate(&pw, &p));
        assert!((a.current - b.current).abs() < 1e-8);
        assert!((a.chirality - b.chirality).abs() < 1e-8);
    }
}

#[test]
fn uniform_phase_beyond_the_critical_angle() {
    for theta in linspace(2.15, PI, 6).into_iter().flat_map(|t| [t, -t]) {
        for g1 in [1.0, 1.15, 1.3] {
            let p = make_params(1000.0, g1, 0.05, theta).unwrap();
            let sol = solve(&p, &SolverOptions::default()).unwrap();
            let [usp, _] = usp_amplitude(&p).unwrap();
            assert_eq!(sol.phase, PhaseLabel::USP, "theta {theta} g1 {g1}");
            assert!(sol.amplitudes.distance_mod_phase(&usp) < 1e-8 * p.eta().sqrt());
            assert!(sol.spectrum.eps_min().abs() < 1e-6, "Goldstone mode");
        }
    }
}

#[test]
fn normal_phase_below_threshold() {
    for theta in linspace(-3.0, 3.0, 7) {
        let base = make_params(1000.0, 1.0, 0.05, theta).unwrap();
        let g1c = critical_coupling(&base).unwrap();
        for g1 in [0.3, 0.8, g1c - 5e-3] {
            let p = base.with_g1(g1).unwrap();
            let sol = solve(&p, &SolverOptions::default()).unwrap();
            assert_eq!(sol.phase, PhaseLabel::NP);
            assert_eq!(sol.amplitudes.max_abs(), 0.0);
            assert!((sol.ground_energy - np_ground_energy(&p)).abs() < 1e-9 * p.omega0());
        }
    }
}

#[test]
fn superradiant_energy_is_below_the_normal_value() {
    for theta in [0.3, 1.7, 2.9] {
        for g1 in [1.05, 1.25] {
            let p = make_params(1000.0, g1, 0.05, theta).unwrap();
            let sol = solve(&p, &SolverOptions::default()).unwrap();
            assert_ne!(sol.phase, PhaseLabel::NP);
            assert!(sol.classical_energy < classical_energy(&Amplitudes::ZERO, &p));
        }
    }
}
