//! Coherent-state expectation values: scaled order parameters, the photon
//! current `I = i[(a₁†a₂ + a₂†a₃ + a₃†a₁) − h.c.]`, and the chirality
//! `C = −2i Σ ε_ijk a_i a_j† (n_k − ½)`, plus the site-reversal and
//! time-reversal maps under which the latter two are odd.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::params::{Amplitudes, SystemParams};

/// Scaled observables: `α_n/√η`, `⟨I⟩/η`, `⟨C⟩/η²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Observables {
    pub order_params: [Complex64; 3],
    pub current: f64,
    pub chirality: f64,
}

impl Observables {
    pub fn evaluate(alpha: &Amplitudes, params: &SystemParams) -> Self {
        Self {
            order_params: order_parameters(alpha, params),
            current: current(alpha, params),
            chirality: chirality(alpha, params),
        }
    }
}

/// `α_n/√η` in the gauge where `α₃` is real and non-negative.
pub fn order_parameters(alpha: &Amplitudes, params: &SystemParams) -> [Complex64; 3] {
    let scale = params.eta().sqrt();
    let fixed = alpha.gauge_fixed(1e-12 * scale);
    fixed.0.map(|a| a / scale)
}

/// Unscaled mean-field current `−2 Im(α₁*α₂ + α₂*α₃ + α₃*α₁)`.
pub fn raw_current(alpha: &Amplitudes) -> f64 {
    let s: Complex64 = (0..3)
        .map(|n| alpha[n].conj() * alpha[Amplitudes::next(n)])
        .sum();
    -2.0 * s.im
}

/// `⟨I⟩/η`.
pub fn current(alpha: &Amplitudes, params: &SystemParams) -> f64 {
    raw_current(alpha) / params.eta()
}

/// `⟨C⟩/η²` before discarding the (rounding-level) imaginary part.
pub fn chirality_complex(alpha: &Amplitudes, params: &SystemParams) -> Complex64 {
    let minus_two_i = Complex64::new(0.0, -2.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for (i, j, k, sign) in PERMUTATIONS {
        let occupation = alpha[k].norm_sqr() - 0.5;
        sum += alpha[i] * alpha[j].conj() * (sign * occupation);
    }
    minus_two_i * sum / (params.eta() * params.eta())
}

/// `⟨C⟩/η²`.
pub fn chirality(alpha: &Amplitudes, params: &SystemParams) -> f64 {
    let c = chirality_complex(alpha, params);
    debug_assert!(c.im.abs() <= 1e-9 * c.re.abs().max(1.0));
    c.re
}

/// The six permutations of `(0, 1, 2)` with their Levi-Civita signs.
const PERMUTATIONS: [(usize, usize, usize, f64); 6] = [
    (0, 1, 2, 1.0),
    (1, 2, 0, 1.0),
    (2, 0, 1, 1.0),
    (1, 0, 2, -1.0),
    (2, 1, 0, -1.0),
    (0, 2, 1, -1.0),
];

/// Site relabeling `123 ↔ 321`.
pub fn chiral_transform(alpha: &Amplitudes) -> Amplitudes {
    Amplitudes([alpha[2], alpha[1], alpha[0]])
}

/// Complex conjugation of the amplitudes together with `θ → −θ`.
pub fn time_reversal(alpha: &Amplitudes, params: &SystemParams) -> (Amplitudes, SystemParams) {
    let reversed = params
        .with_theta(-params.theta())
        .expect("negating a valid angle stays valid");
    (alpha.conj(), reversed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meanfield::energy::{plane_wave_amplitude, usp_amplitude};
    use crate::normal::Quasimomentum;
    use crate::params::make_params;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn amplitudes() -> impl Strategy<Value = Amplitudes> {
        proptest::array::uniform6(-40.0f64..40.0).prop_map(|x| Amplitudes::from_real_vec(&x))
    }

    fn params(theta: f64) -> SystemParams {
        make_params(1000.0, 1.2, 0.05, theta).unwrap()
    }

    #[test]
    fn normal_phase_observables_vanish() {
        let o = Observables::evaluate(&Amplitudes::ZERO, &params(0.3));
        assert_eq!(o.order_params, [c(0.0, 0.0); 3]);
        assert_eq!(o.current, 0.0);
        assert_eq!(o.chirality, 0.0);
    }

    #[test]
    fn usp_observables() {
        let p = params(PI);
        let [plus, minus] = usp_amplitude(&p).unwrap();
        for a in [plus, minus] {
            let o = Observables::evaluate(&a, &p);
            for z in o.order_params {
                assert!((z.re - 0.520_416_499_866_5).abs() < 1e-10);
                assert_eq!(z.im, 0.0);
            }
            assert_eq!(o.current, 0.0);
            assert!(o.chirality.abs() < 1e-15);
        }
    }

    #[test]
    fn chiral_plane_wave_observables() {
        // plane-wave closed form: I = 6|A|² sin(−2π/3), C = 2 I (|A|² − ½)
        let p = params(0.5 * PI);
        let a = plane_wave_amplitude(&p, Quasimomentum::Minus).unwrap();
        let x = a[0].norm_sqr();
        let i_expected = 6.0 * x * (-2.0 * PI / 3.0).sin() / 1000.0;
        let c_expected = 12.0 * x * (x - 0.5) * (-2.0 * PI / 3.0).sin() / 1e6;
        assert!((current(&a, &p) - i_expected).abs() < 1e-12);
        assert!((chirality(&a, &p) - c_expected).abs() < 1e-12);
        assert!((current(&a, &p) + 1.340_040_8).abs() < 1e-6);
        assert!((chirality(&a, &p) + 0.689_828_8).abs() < 1e-6);
    }

    #[test]
    fn chiral_transform_definition() {
        let a = Amplitudes([c(1.0, 0.0), c(0.0, 2.0), c(3.0, 0.0)]);
        assert_eq!(
            chiral_transform(&a),
            Amplitudes([c(3.0, 0.0), c(0.0, 2.0), c(1.0, 0.0)])
        );
        let u = Amplitudes([c(1.0, 1.0); 3]);
        assert_eq!(chiral_transform(&u), u);
    }

    #[test]
    fn time_reversal_fixed_point() {
        let a = Amplitudes::from_real([1.0, -2.0, 3.0]);
        let (b, q) = time_reversal(&a, &params(0.0));
        assert_eq!(a, b);
        assert_eq!(q.theta(), 0.0);
    }

    proptest! {
        #[test]
        fn real_amplitudes_carry_no_current(x in proptest::array::uniform3(-40.0f64..40.0)) {
            let a = Amplitudes::from_real(x);
            let p = params(0.4);
            prop_assert_eq!(current(&a, &p), 0.0);
            prop_assert!(chirality(&a, &p).abs() < 1e-15);
        }

        #[test]
        fn uniform_amplitudes_carry_no_current(re in -40.0f64..40.0, im in -40.0f64..40.0) {
            let a = Amplitudes([c(re, im); 3]);
            prop_assert!(current(&a, &params(1.0)).abs() < 1e-14);
        }

        #[test]
        fn site_reversal_flips_chirality(a in amplitudes()) {
            let p = params(0.4);
            let c0 = chirality(&a, &p);
            let c1 = chirality(&chiral_transform(&a), &p);
            prop_assert!((c0 + c1).abs() <= 1e-12 * c0.abs().max(1e-3));
            prop_assert!((current(&a, &p) + current(&chiral_transform(&a), &p)).abs() < 1e-12);
        }

        #[test]
        fn time_reversal_flips_current_and_chirality(a in amplitudes(), theta in -PI..PI) {
            let p = params(theta);
            let (b, q) = time_reversal(&a, &p);
            prop_assert!((q.theta() + theta).abs() < 1e-12 || (theta - PI).abs() < 1e-12);
            prop_assert!((current(&a, &p) + current(&b, &q)).abs() < 1e-12);
            prop_assert!((chirality(&a, &p) + chirality(&b, &q)).abs() < 1e-12);
        }

        #[test]
        fn global_phase_leaves_observables(a in amplitudes(), phi in -PI..PI) {
            let p = params(0.4);
            let b = a.scale(Complex64::from_polar(1.0, phi));
            prop_assert!((current(&a, &p) - current(&b, &p)).abs() < 1e-12);
            prop_assert!((chirality(&a, &p) - chirality(&b, &p)).abs() < 1e-12);
        }

        #[test]
        fn chirality_is_real(a in amplitudes()) {
            let z = chirality_complex(&a, &params(0.4));
            prop_assert!(z.im.abs() < 1e-12);
        }
    }
}
