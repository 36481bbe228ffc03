//! Symmetry images of a mean-field solution at fixed `θ`.
//!
//! The group is the three cyclic translations times the global sign flip.
//! Images are compared after fixing the global phase only up to a sign: the
//! phase is rotated so that `Σ α_n²` is real and positive, which leaves the
//! `α → −α` ambiguity intact. Sign-reversed real configurations therefore
//! count as distinct, while translations of a plane wave (which only change
//! the global phase) collapse onto one member.

use num_complex::Complex64;

use super::energy::classical_energy;
use super::solver::MeanFieldSolution;
use crate::params::{Amplitudes, SystemParams};

const DISTINCT_TOL: f64 = 1e-6;

/// Distinct images of `alpha` under translations and sign flip.
pub fn orbit_amplitudes(alpha: &Amplitudes, params: &SystemParams) -> Vec<Amplitudes> {
    let scale = params.eta().sqrt();
    let tiny = 1e-12 * scale;
    let square_sum: Complex64 = alpha.iter().map(|a| a * a).sum();
    let rotation = if square_sum.norm() > 1e-9 * alpha.norm_sqr().max(tiny) {
        // e^{2iφ} Σα² > 0, with φ in the principal branch
        Some(Complex64::from_polar(1.0, -0.5 * square_sum.arg()))
    } else {
        None
    };
    let representative = |a: &Amplitudes| match rotation {
        Some(r) => a.scale(r),
        None => a.gauge_fixed(tiny),
    };

    let mut members: Vec<(Amplitudes, Amplitudes)> = Vec::with_capacity(6);
    for shift in 0..3 {
        for sign in [1.0, -1.0] {
            let image = alpha.translate(shift).scale(Complex64::new(sign, 0.0));
            let key = representative(&image);
            let seen = members.iter().any(|(_, k)| {
                (0..3)
                    .map(|n| (k[n] - key[n]).norm())
                    .fold(0.0, f64::max)
                    < DISTINCT_TOL * scale
            });
            if !seen {
                members.push((image, key));
            }
        }
    }
    members.into_iter().map(|(image, _)| image).collect()
}

/// Degenerate partners of `sol` at the same `θ`.
pub fn degenerate_orbit(sol: &MeanFieldSolution, params: &SystemParams) -> Vec<MeanFieldSolution> {
    orbit_amplitudes(&sol.amplitudes, params)
        .into_iter()
        .map(|alpha| MeanFieldSolution {
            amplitudes: alpha,
            classical_energy: classical_energy(&alpha, params),
            ..sol.clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meanfield::energy::{plane_wave_amplitude, usp_amplitude};
    use crate::normal::Quasimomentum;
    use crate::params::make_params;
    use std::f64::consts::PI;

    #[test]
    fn orbit_sizes() {
        let p = make_params(1000.0, 1.2, 0.05, PI).unwrap();
        let [usp, _] = usp_amplitude(&p).unwrap();
        assert_eq!(orbit_amplitudes(&usp, &p).len(), 2);
        assert_eq!(orbit_amplitudes(&Amplitudes::ZERO, &p).len(), 1);

        let q = make_params(1000.0, 1.2, 0.05, 0.5 * PI).unwrap();
        let pw = plane_wave_amplitude(&q, Quasimomentum::Minus).unwrap();
        assert_eq!(orbit_amplitudes(&pw, &q).len(), 1);

        let r = make_params(1000.0, 1.2, 0.05, 0.0).unwrap();
        let udd = Amplitudes::from_real([10.0, 10.0, -12.0]);
        assert_eq!(orbit_amplitudes(&udd, &r).len(), 6);
    }

    #[test]
    fn orbit_size_ignores_global_phase() {
        let r = make_params(1000.0, 1.2, 0.05, 0.0).unwrap();
        let udd = Amplitudes::from_real([10.0, 10.0, -12.0]);
        for phi in [0.3, PI / 2.0, 2.9, -1.0] {
            let rotated = udd.scale(Complex64::from_polar(1.0, phi));
            assert_eq!(orbit_amplitudes(&rotated, &r).len(), 6);
        }
    }
}
