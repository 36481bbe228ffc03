//! Physical parameters, cavity amplitudes and per-site auxiliary quantities.
//!
//! All frequencies are stored as ratios to the cavity frequency, i.e. `ω_c = 1`.
//! The dimensionless coupling `g1 = g / sqrt(ω₀ ω_c)` is the primary input; the
//! bare coupling `g` and the frequency ratio `η = ω₀ / ω_c` are derived.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::Index;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::ParamError;

/// Validated model parameters (units of `ω_c`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    omega0: f64,
    g1: f64,
    j: f64,
    theta: f64,
}

impl SystemParams {
    /// Validates the inputs and wraps `theta` into `(−π, π]`.
    pub fn new(omega0: f64, g1: f64, j: f64, theta: f64) -> Result<Self, ParamError> {
        check("omega0", omega0, |v| v > 0.0, "must be positive")?;
        check("g1", g1, |v| v >= 0.0, "must be non-negative")?;
        check("j", j, |v| v >= 0.0, "must be non-negative")?;
        check("theta", theta, |_| true, "")?;
        Ok(Self {
            omega0,
            g1,
            j,
            theta: wrap_angle(theta),
        })
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn g1(&self) -> f64 {
        self.g1
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    /// Hopping phase in `(−π, π]`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Bare light-matter coupling `g = g1·sqrt(ω₀)`.
    pub fn g(&self) -> f64 {
        self.g1 * self.omega0.sqrt()
    }

    /// `g²`, computed without the round trip through a square root.
    pub fn g_squared(&self) -> f64 {
        self.g1 * self.g1 * self.omega0
    }

    /// Frequency ratio `η = ω₀ / ω_c`.
    pub fn eta(&self) -> f64 {
        self.omega0
    }

    /// Complex hopping amplitude `J e^{iθ}`.
    pub fn hopping(&self) -> Complex64 {
        Complex64::from_polar(self.j, self.theta)
    }

    pub fn with_g1(&self, g1: f64) -> Result<Self, ParamError> {
        Self::new(self.omega0, g1, self.j, self.theta)
    }

    pub fn with_theta(&self, theta: f64) -> Result<Self, ParamError> {
        Self::new(self.omega0, self.g1, self.j, theta)
    }
}

impl fmt::Display for SystemParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "omega0={} g1={} j={} theta={}",
            self.omega0, self.g1, self.j, self.theta
        )
    }
}

/// Free-function form of [`SystemParams::new`].
pub fn make_params(omega0: f64, g1: f64, j: f64, theta: f64) -> Result<SystemParams, ParamError> {
    SystemParams::new(omega0, g1, j, theta)
}

fn check(
    field: &'static str,
    value: f64,
    ok: impl Fn(f64) -> bool,
    reason: &'static str,
) -> Result<(), ParamError> {
    if !value.is_finite() {
        return Err(ParamError::NonFinite { field });
    }
    if !ok(value) {
        return Err(ParamError::OutOfRange {
            field,
            value,
            reason,
        });
    }
    Ok(())
}

/// Maps any finite angle into `(−π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(TAU);
    if t > PI {
        t -= TAU;
    }
    // rem_euclid can return TAU itself for tiny negative inputs
    if t <= -PI {
        t += TAU;
    }
    t
}

/// The three complex cavity displacements `α_n = A_n + i B_n`.
///
/// Site indices are zero-based in code (`0, 1, 2` for sites 1, 2, 3) and
/// cyclic: the successor of site 2 is site 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Amplitudes(pub [Complex64; 3]);

impl Amplitudes {
    pub const ZERO: Amplitudes = Amplitudes([Complex64::new(0.0, 0.0); 3]);

    /// Builds amplitudes, rejecting NaN or infinite components.
    pub fn new(alpha: [Complex64; 3]) -> Result<Self, ParamError> {
        if alpha.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(ParamError::NonFinite { field: "alpha" });
        }
        Ok(Self(alpha))
    }

    pub fn from_real(values: [f64; 3]) -> Self {
        Self(values.map(|v| Complex64::new(v, 0.0)))
    }

    /// Packs into the six real coordinates `(A₁, A₂, A₃, B₁, B₂, B₃)`.
    pub fn to_real_vec(&self) -> [f64; 6] {
        let a = &self.0;
        [a[0].re, a[1].re, a[2].re, a[0].im, a[1].im, a[2].im]
    }

    pub fn from_real_vec(x: &[f64; 6]) -> Self {
        Self([
            Complex64::new(x[0], x[3]),
            Complex64::new(x[1], x[4]),
            Complex64::new(x[2], x[5]),
        ])
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex64> {
        self.0.iter()
    }

    pub fn next(n: usize) -> usize {
        (n + 1) % 3
    }

    pub fn prev(n: usize) -> usize {
        (n + 2) % 3
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self(self.0.map(|a| a * s))
    }

    pub fn conj(&self) -> Self {
        Self(self.0.map(|a| a.conj()))
    }

    /// Cyclic translation `α_n → α_{n+shift}`.
    pub fn translate(&self, shift: usize) -> Self {
        let a = &self.0;
        Self([a[shift % 3], a[(shift + 1) % 3], a[(shift + 2) % 3]])
    }

    /// Rotates the global phase so that a reference site is real and
    /// non-negative. The reference is site 3 unless its modulus is below
    /// `tiny`, in which case the largest-modulus site is used.
    pub fn gauge_fixed(&self, tiny: f64) -> Self {
        let reference = if self.0[2].norm() > tiny {
            2
        } else {
            (0..3)
                .max_by(|&a, &b| self.0[a].norm().total_cmp(&self.0[b].norm()))
                .unwrap_or(2)
        };
        let r = self.0[reference];
        if r.norm() == 0.0 {
            return *self;
        }
        let mut fixed = self.scale(r.conj() / r.norm());
        // remove the rounding residue so the reference is exactly real
        fixed.0[reference] = Complex64::new(r.norm(), 0.0);
        fixed
    }

    /// Largest component-wise distance after removing the global U(1) phase
    /// of both operands.
    pub fn distance_mod_phase(&self, other: &Amplitudes) -> f64 {
        // optimal phase aligning `other` to `self`
        let overlap: Complex64 = other
            .0
            .iter()
            .zip(self.0.iter())
            .map(|(b, a)| b.conj() * a)
            .sum();
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let rotated = other.scale(phase);
        self.0
            .iter()
            .zip(rotated.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for Amplitudes {
    type Output = Complex64;

    fn index(&self, n: usize) -> &Complex64 {
        &self.0[n]
    }
}

/// Per-site normalization factor `Δ_n = sqrt(4g²|α_n|² + ω₀²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteAux {
    pub delta: f64,
}

pub fn delta_of(alpha_n: Complex64, params: &SystemParams) -> SiteAux {
    SiteAux {
        delta: delta_from_norm_sqr(alpha_n.norm_sqr(), params),
    }
}

pub(crate) fn delta_from_norm_sqr(norm_sqr: f64, params: &SystemParams) -> f64 {
    let w0 = params.omega0();
    (4.0 * params.g_squared() * norm_sqr + w0 * w0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn derived_coupling_and_ratio() {
        let p = make_params(1000.0, 1.2, 0.05, PI).unwrap();
        assert!((p.g() - 37.947_331_922_020_55).abs() < 1e-10);
        assert_eq!(p.eta(), 1000.0);
        assert!((p.g() / p.omega0().sqrt() - p.g1()).abs() < 1e-15);
    }

    #[test]
    fn zero_coupling_is_valid() {
        let p = make_params(1000.0, 0.0, 0.05, 0.0).unwrap();
        assert_eq!(p.g(), 0.0);
    }

    #[test]
    fn theta_wraps_into_half_open_interval() {
        let p = make_params(1000.0, 1.0, 0.05, 3.0 * PI).unwrap();
        assert!((p.theta() - PI).abs() < 1e-12);
        let q = make_params(1000.0, 1.0, 0.05, -PI).unwrap();
        assert!((q.theta() - PI).abs() < 1e-12);
        assert_eq!(wrap_angle(0.0), 0.0);
        assert!((wrap_angle(-0.5) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_fields_by_name() {
        let err = make_params(-1.0, 1.0, 0.05, 0.0).unwrap_err();
        assert!(err.to_string().contains("omega0"));
        let err = make_params(1000.0, f64::NAN, 0.05, 0.0).unwrap_err();
        assert!(err.to_string().contains("g1"));
        let err = make_params(1000.0, 1.0, -0.1, 0.0).unwrap_err();
        assert!(err.to_string().contains('j'));
        let err = make_params(1000.0, 1.0, 0.1, f64::INFINITY).unwrap_err();
        assert!(err.to_string().contains("theta"));
        assert!(Amplitudes::new([c(f64::NAN, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn delta_examples() {
        let p = make_params(1000.0, 1.2, 0.05, PI).unwrap();
        assert_eq!(delta_of(c(0.0, 0.0), &p).delta, 1000.0);
        // |α|² = 812.5/3 puts Δ exactly at g²/(ω_c + 2J cos θ) = 1600
        let usp = (812.5f64 / 3.0).sqrt();
        assert!((delta_of(c(usp, 0.0), &p).delta - 1600.0).abs() < 1e-9);
        let d_re = delta_of(c(usp, 0.0), &p).delta;
        let d_im = delta_of(c(0.0, usp), &p).delta;
        assert!((d_re - d_im).abs() < 1e-12);
    }

    #[test]
    fn gauge_fix_makes_site_three_real() {
        let a = Amplitudes([c(1.0, 2.0), c(-0.5, 0.3), c(0.0, -2.0)]);
        let f = a.gauge_fixed(1e-12);
        assert_eq!(f[2].im, 0.0);
        assert!(f[2].re > 0.0);
        assert!(a.distance_mod_phase(&f) < 1e-12);
    }

    #[test]
    fn translation_is_cyclic() {
        let a = Amplitudes::from_real([1.0, 2.0, 3.0]);
        assert_eq!(a.translate(1), Amplitudes::from_real([2.0, 3.0, 1.0]));
        assert_eq!(a.translate(3), a);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn make_params_is_idempotent(theta in -50.0f64..50.0, g1 in 0.0f64..3.0) {
                let p = make_params(1000.0, g1, 0.05, theta).unwrap();
                let q = make_params(p.omega0(), p.g1(), p.j(), p.theta()).unwrap();
                prop_assert_eq!(p, q);
                prop_assert!(p.theta() > -PI && p.theta() <= PI);
            }

            #[test]
            fn delta_is_phase_invariant(r in 0.0f64..60.0, phi in -PI..PI) {
                let p = make_params(1000.0, 1.1, 0.05, 0.3).unwrap();
                let d0 = delta_of(c(r, 0.0), &p).delta;
                let d1 = delta_of(Complex64::from_polar(r, phi), &p).delta;
                prop_assert!((d0 - d1).abs() <= 1e-12 * d0);
                prop_assert!(d0 >= p.omega0());
            }
        }
    }
}
