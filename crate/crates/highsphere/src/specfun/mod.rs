//! Log-space special functions and distribution normalizing constants.
//!
//! Everything here is evaluated in natural-log scale so that constants stay
//! representable at dimensions around 10^5, where the linear-scale values
//! involve pi^p and (p-1)! and overflow f64 by orders of magnitude.
//!
//! Conventions:
//!
//! * `log_vmf_constant` and `log_watson_constant` are normalizers against
//!   the *uniform probability measure*: they equal the log of
//!   E[exp(exponent)] under uniform draws, so the zero-concentration value
//!   is exactly 0.
//! * `log_complex_bingham_constant` and `log_complex_watson_constant` follow
//!   the closed forms 2 pi^p sum_j b_j e^{tau_j} and
//!   2 pi^p 1F1(1; p; kappa p) e^{-p} / (p-1)!, which are integrals against
//!   the *surface (Lebesgue) measure* on S^{2p-1}(1). Subtract
//!   `log_complex_sphere_area(p)` to normalize against the uniform
//!   probability measure.
//! * `cwatson_gaussian_log_gap` reports |log(c_CW / c_N)|. Substituting the
//!   printed closed forms yields the negative of the published reference
//!   values (the magnitudes agree to five decimals), and the determinant
//!   exponent is read as p^{-(p-1/2)}, which is the only reading consistent
//!   with the Stirling derivation of c_N. The absolute gap sidesteps the
//!   sign ambiguity; both points are deliberate and documented here rather
//!   than silently resolved.

mod bessel;
mod gamma;
mod hyp1f1;
mod logvalue;

pub use bessel::log_bessel_i;
pub use gamma::{log_factorial, log_gamma};
pub use hyp1f1::log_hyp1f1;
pub use logvalue::{signed_log_sum, LogValue};

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Minimum relative pairwise gap below which the complex Bingham
/// eigenvalues are treated as coincident and the closed form is refused.
pub const COMPLEX_BINGHAM_GAP_TOL: f64 = 1e-8;

/// Log surface area of the real unit sphere S^{d-1}(1) in d dimensions:
/// 2 pi^{d/2} / Gamma(d/2).
pub fn log_sphere_area(d: usize) -> f64 {
    let d = d as f64;
    std::f64::consts::LN_2 + 0.5 * d * PI.ln() - log_gamma(0.5 * d).expect("d > 0")
}

/// Log surface area of the complex unit sphere CS^{p-1}(1), identified with
/// S^{2p-1}(1): 2 pi^p / (p-1)!.
pub fn log_complex_sphere_area(p: usize) -> f64 {
    std::f64::consts::LN_2 + p as f64 * PI.ln() - log_factorial(p - 1)
}

/// Log normalizing constant of the von Mises-Fisher density
/// exp(sqrt(p) kappa x' nu) against the uniform probability measure:
///
///   c_V(sqrt(p) kappa) = (sqrt(p) kappa / 2)^{1 - p/2} Gamma(p/2)
///                        I_{p/2 - 1}(sqrt(p) kappa).
///
/// The kappa -> 0 limit is 1 (log 0), evaluated analytically instead of
/// through the removable 0/0 in the generic formula.
pub fn log_vmf_constant(p: usize, kappa: f64) -> Result<f64> {
    if p < 2 {
        return Err(Error::Domain(format!("log_vmf_constant requires p >= 2, got {p}")));
    }
    if !(kappa >= 0.0) {
        return Err(Error::Domain(format!(
            "log_vmf_constant requires kappa >= 0, got {kappa}"
        )));
    }
    if kappa == 0.0 {
        return Ok(0.0);
    }
    let pf = p as f64;
    let z = pf.sqrt() * kappa;
    let half_p = 0.5 * pf;
    Ok((1.0 - half_p) * (0.5 * z).ln() + log_gamma(half_p)? + log_bessel_i(half_p - 1.0, z)?)
}

/// Log normalizing constant of the axial Watson density
/// exp(p kappa (P_1' x)^2) against the uniform probability measure:
/// c_W(p kappa) = 1F1(1/2; p/2; p kappa). Negative kappa (girdle case) is
/// allowed.
pub fn log_watson_constant(p: usize, kappa: f64) -> Result<f64> {
    if p < 2 {
        return Err(Error::Domain(format!(
            "log_watson_constant requires p >= 2, got {p}"
        )));
    }
    if kappa == 0.0 {
        return Ok(0.0);
    }
    log_hyp1f1(0.5, 0.5 * p as f64, p as f64 * kappa)
}

/// Log normalizing constant of the generalized Watson density
/// exp(p kappa ||P_h' x||^2) with an h-dimensional axis subspace:
/// 1F1(h/2; p/2; p kappa). Reduces to `log_watson_constant` at h = 1.
pub fn log_watson_constant_h(p: usize, h: usize, kappa: f64) -> Result<f64> {
    if p < 2 || h == 0 || h > p {
        return Err(Error::Domain(format!(
            "log_watson_constant_h requires p >= 2 and 1 <= h <= p, got ({p}, {h})"
        )));
    }
    if kappa == 0.0 {
        return Ok(0.0);
    }
    log_hyp1f1(0.5 * h as f64, 0.5 * p as f64, p as f64 * kappa)
}

/// Log of the complex Bingham constant in the surface-integral convention,
///
///   c_CB(pB_p) = 2 pi^p sum_j b_j exp(tau_j),
///   1/b_j = prod_{i != j} (tau_j - tau_i),
///
/// where `taus` are the (real) eigenvalues of the Hermitian matrix p B_p.
/// The closed form only exists for pairwise distinct eigenvalues; inputs
/// with a relative gap below `COMPLEX_BINGHAM_GAP_TOL` are rejected with a
/// degeneracy error suggesting perturbation. The b_j alternate in sign, so
/// the sum is accumulated with sign-tracked log-sum-exp.
pub fn log_complex_bingham_constant(taus: &[f64]) -> Result<f64> {
    let p = taus.len();
    if p < 2 {
        return Err(Error::Domain(format!(
            "log_complex_bingham_constant requires p >= 2 eigenvalues, got {p}"
        )));
    }
    if taus.iter().any(|t| !t.is_finite()) {
        return Err(Error::Domain("eigenvalues must be finite".into()));
    }
    let max_abs = taus.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    let tol = COMPLEX_BINGHAM_GAP_TOL * max_abs;
    for i in 0..p {
        for j in (i + 1)..p {
            if (taus[i] - taus[j]).abs() <= tol {
                return Err(Error::Degenerate(format!(
                    "eigenvalues tau[{i}] = {} and tau[{j}] = {} are within the \
                     coincidence tolerance {tol:.3e}; the closed form requires \
                     distinct eigenvalues -- perturb them or use the Monte Carlo \
                     constant",
                    taus[i], taus[j]
                )));
            }
        }
    }

    let mut terms = Vec::with_capacity(p);
    for j in 0..p {
        let mut log_abs = taus[j];
        let mut sign = 1i8;
        for i in 0..p {
            if i != j {
                let d = taus[j] - taus[i];
                log_abs -= d.abs().ln();
                if d < 0.0 {
                    sign = -sign;
                }
            }
        }
        terms.push(LogValue::new(log_abs, sign));
    }
    let s = signed_log_sum(&terms);
    if s.sign <= 0 {
        return Err(Error::Numeric(
            "complex Bingham constant evaluated nonpositive; eigenvalue spread \
             too extreme for the partial-fraction form"
                .into(),
        ));
    }
    Ok(std::f64::consts::LN_2 + p as f64 * PI.ln() + s.ln_abs)
}

/// Log of the complex Watson constant in the surface-integral convention,
/// c_CW(kappa) = 2 pi^p 1F1(1; p; kappa p) e^{-p} / (p-1)!, for kappa < 1.
pub fn log_complex_watson_constant(p: usize, kappa: f64) -> Result<f64> {
    if p < 2 {
        return Err(Error::Domain(format!(
            "log_complex_watson_constant requires p >= 2, got {p}"
        )));
    }
    if !(kappa < 1.0) {
        return Err(Error::Domain(format!(
            "log_complex_watson_constant requires kappa < 1, got {kappa}"
        )));
    }
    let pf = p as f64;
    Ok(std::f64::consts::LN_2 + pf * PI.ln() + log_hyp1f1(1.0, pf, kappa * pf)? - pf
        - log_factorial(p - 1))
}

/// Log constant of the singular complex normal approximation to the complex
/// Watson density, with 2p - 1 real dimensions of variability:
///
///   c_N(kappa) = sqrt(2) pi^{p - 1/2} |Sigma_p / p|_g,
///   |Sigma_p / p|_g = p^{-(p - 1/2)} / (1 - kappa),
///
/// so log c_N = ln(2)/2 + (p - 1/2)(ln pi - ln p) - ln(1 - kappa).
pub fn log_cwatson_gaussian_constant(p: usize, kappa: f64) -> Result<f64> {
    if p < 2 {
        return Err(Error::Domain(format!(
            "log_cwatson_gaussian_constant requires p >= 2, got {p}"
        )));
    }
    if !(kappa < 1.0) {
        return Err(Error::Domain(format!(
            "log_cwatson_gaussian_constant requires kappa < 1, got {kappa}"
        )));
    }
    let pf = p as f64;
    Ok(0.5 * std::f64::consts::LN_2 + (pf - 0.5) * (PI.ln() - pf.ln()) - (-kappa).ln_1p())
}

/// |log(c_CW(kappa) / c_N(kappa))|: the log-scale gap between the exact
/// complex Watson constant and its Gaussian approximation. Tends to 0 as
/// p grows at fixed kappa; see the module docs for the sign convention.
pub fn cwatson_gaussian_log_gap(p: usize, kappa: f64) -> Result<f64> {
    Ok((log_complex_watson_constant(p, kappa)? - log_cwatson_gaussian_constant(p, kappa)?).abs())
}
