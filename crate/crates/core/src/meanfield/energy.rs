//! Semiclassical energy of the displaced cavities and its derivatives.
//!
//! `E_cl(α) = Σ_n [ω_c|α_n|² + 2J Re(e^{iθ} α_n* α_{n+1}) − Δ_n/2]`
//!
//! Its Wirtinger derivative with respect to `α_n*` is the linear coefficient
//! `D_n = (ω_c − g²/Δ_n) α_n + J(e^{iθ} α_{n+1} + e^{−iθ} α_{n−1})`, so the
//! mean-field stationarity condition `D_n = 0` is the stationarity of `E_cl`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::normal::{hopping_energy, Quasimomentum};
use crate::params::{delta_from_norm_sqr, Amplitudes, SystemParams};

pub fn classical_energy(alpha: &Amplitudes, params: &SystemParams) -> f64 {
    let t = params.hopping();
    (0..3)
        .map(|n| {
            let a = alpha[n];
            let next = alpha[Amplitudes::next(n)];
            a.norm_sqr() + 2.0 * (t * a.conj() * next).re
                - 0.5 * delta_from_norm_sqr(a.norm_sqr(), params)
        })
        .sum()
}

/// The three linear coefficients `D_n`.
pub fn gradient(alpha: &Amplitudes, params: &SystemParams) -> Amplitudes {
    let t = params.hopping();
    let g2 = params.g_squared();
    let d = std::array::from_fn(|n| {
        let a = alpha[n];
        let delta = delta_from_norm_sqr(a.norm_sqr(), params);
        a * (1.0 - g2 / delta)
            + t * alpha[Amplitudes::next(n)]
            + t.conj() * alpha[Amplitudes::prev(n)]
    });
    Amplitudes(d)
}

/// `max_n |D_n|`.
pub fn residual(alpha: &Amplitudes, params: &SystemParams) -> f64 {
    gradient(alpha, params).max_abs()
}

/// Gradient of `E_cl` in the real coordinates `(A₁, A₂, A₃, B₁, B₂, B₃)`:
/// `∂E/∂A_n = 2 Re D_n`, `∂E/∂B_n = 2 Im D_n`.
pub(crate) fn real_gradient(alpha: &Amplitudes, params: &SystemParams) -> [f64; 6] {
    let d = gradient(alpha, params);
    let mut out = [0.0; 6];
    for n in 0..3 {
        out[n] = 2.0 * d[n].re;
        out[n + 3] = 2.0 * d[n].im;
    }
    out
}

/// Hessian of `E_cl` in the real coordinates.
pub(crate) fn real_hessian(alpha: &Amplitudes, params: &SystemParams) -> [[f64; 6]; 6] {
    let g2 = params.g_squared();
    let t = params.hopping();
    let mut h = [[0.0; 6]; 6];

    // on-site part f(|α|²) with f' = 1 − g²/Δ, f'' = 2g⁴/Δ³
    for n in 0..3 {
        let (a, b) = (alpha[n].re, alpha[n].im);
        let delta = delta_from_norm_sqr(alpha[n].norm_sqr(), params);
        let f1 = 1.0 - g2 / delta;
        let f2 = 2.0 * g2 * g2 / (delta * delta * delta);
        h[n][n] += 2.0 * f1 + 4.0 * a * a * f2;
        h[n + 3][n + 3] += 2.0 * f1 + 4.0 * b * b * f2;
        h[n][n + 3] += 4.0 * a * b * f2;
        h[n + 3][n] += 4.0 * a * b * f2;
    }

    // hopping α†Hα with H_{n,n+1} = J e^{iθ}: Hessian [[2Hr, −2Hi], [2Hi, 2Hr]]
    for n in 0..3 {
        let m = Amplitudes::next(n);
        for (r, c, v) in [(n, m, t), (m, n, t.conj())] {
            h[r][c] += 2.0 * v.re;
            h[r + 3][c + 3] += 2.0 * v.re;
            h[r][c + 3] += -2.0 * v.im;
            h[r + 3][c] += 2.0 * v.im;
        }
    }
    h
}

/// Uniform real closed-form amplitude magnitude
/// `(1/2g) sqrt(g⁴/(ω_c + 2J cos θ)² − ω₀²)`.
///
/// Returns both sign branches, `+` first. At the threshold itself (radicand
/// zero up to rounding) the amplitudes are zero.
pub fn usp_amplitude(params: &SystemParams) -> Result<[Amplitudes; 2]> {
    let a = plane_wave_modulus(params, 1.0 + 2.0 * params.j() * params.theta().cos())?;
    Ok([Amplitudes::from_real([a; 3]), Amplitudes::from_real([-a; 3])])
}

/// Plane-wave stationary point `α_n = A e^{−iqn}` (sites labelled `n = 1, 2, 3`,
/// so site 3 carries the real amplitude `A ≥ 0`).
pub fn plane_wave_amplitude(params: &SystemParams, q: Quasimomentum) -> Result<Amplitudes> {
    let a = plane_wave_modulus(params, 1.0 + hopping_energy(params, q))?;
    let qv = q.value();
    Ok(Amplitudes(std::array::from_fn(|k| {
        // (k + 1) mod 3 keeps site 3 exactly real
        Complex64::from_polar(a, -qv * ((k + 1) % 3) as f64)
    })))
}

/// Solves `Δ = g²/w` for `|α|`, where `w = ω_c + 2J cos(θ − q)`.
fn plane_wave_modulus(params: &SystemParams, w: f64) -> Result<f64> {
    let g2 = params.g_squared();
    let w0 = params.omega0();
    if w <= 0.0 {
        return Err(Error::BelowCritical { radicand: w });
    }
    let delta = g2 / w;
    let radicand = delta * delta - w0 * w0;
    let tol = 1e-12 * w0 * w0;
    if radicand < -tol || g2 == 0.0 {
        return Err(Error::BelowCritical { radicand });
    }
    if radicand <= tol {
        return Ok(0.0);
    }
    Ok(radicand.sqrt() / (2.0 * params.g()))
}
