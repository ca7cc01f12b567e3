//! Distribution families on high-dimensional real and complex spheres.
//!
//! Densities are expressed against the *uniform probability measure* on the
//! sphere: `logpdf` returns the exponent of the density kernel together with
//! the log normalizing constant `ln E_uniform[exp(exponent)]` whenever a
//! closed form exists. The real Bingham and Fisher-Bingham constants involve
//! a confluent hypergeometric function of matrix argument with no practical
//! closed form; those report [`LogConstant::OracleRequired`] and are served
//! by the Monte Carlo estimator [`mc_log_constant`].
//!
//! All samplers are exact (rejection-based, no Markov chains) and
//! deterministic given a seed; see each sampler for the scheme.

mod engine;
mod gaussian;
mod mc;
mod samplers;
mod spec;

pub use engine::SamplerStats;
pub use gaussian::{
    projection_law, standardized_projection, standardized_projection_complex,
    watson_standardized_projection, GaussianApprox, ProjectionLaw,
};
pub use mc::{mc_log_constant, McEstimate};
pub use samplers::{
    sample_bingham, sample_complex_bingham, sample_complex_watson, sample_family,
    sample_fisher_bingham, sample_uniform, sample_uniform_complex, sample_vmf, sample_watson,
    FamilySample,
};
pub use spec::FamilySpec;

use crate::error::{Error, Result};
use crate::specfun::{
    log_complex_bingham_constant, log_complex_sphere_area, log_vmf_constant,
    log_watson_constant_h,
};
use crate::spectral::{ComplexSpectrumModel, ProjectionBasis, SpectrumModel};
use nalgebra::{Complex, DMatrix, DVector};

/// Input norms may deviate from 1 by up to this before validation fails;
/// accepted vectors are renormalized exactly before use.
pub const SPHERE_INPUT_TOL: f64 = 1e-6;

/// A point on S^{p-1}(1).
#[derive(Debug, Clone, PartialEq)]
pub struct UnitVector(DVector<f64>);

impl UnitVector {
    pub fn new(v: DVector<f64>) -> Result<Self> {
        let norm = v.norm();
        if v.len() < 2 || !norm.is_finite() || (norm - 1.0).abs() > SPHERE_INPUT_TOL {
            return Err(Error::Validation(format!(
                "not a unit vector: length {}, norm {norm}",
                v.len()
            )));
        }
        Ok(UnitVector(v / norm))
    }

    pub fn axis(p: usize, index: usize) -> Result<Self> {
        if index >= p || p < 2 {
            return Err(Error::Validation(format!(
                "axis index {index} out of range for p = {p}"
            )));
        }
        let mut v = DVector::zeros(p);
        v[index] = 1.0;
        Ok(UnitVector(v))
    }

    pub fn p(&self) -> usize {
        self.0.len()
    }

    pub fn as_vector(&self) -> &DVector<f64> {
        &self.0
    }
}

/// A point on the complex sphere CS^{p-1}(1).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexUnitVector(DVector<Complex<f64>>);

impl ComplexUnitVector {
    pub fn new(v: DVector<Complex<f64>>) -> Result<Self> {
        let norm = v.norm();
        if v.len() < 2 || !norm.is_finite() || (norm - 1.0).abs() > SPHERE_INPUT_TOL {
            return Err(Error::Validation(format!(
                "not a complex unit vector: length {}, norm {norm}",
                v.len()
            )));
        }
        Ok(ComplexUnitVector(v / Complex::new(norm, 0.0)))
    }

    pub fn axis(p: usize, index: usize) -> Result<Self> {
        if index >= p || p < 2 {
            return Err(Error::Validation(format!(
                "axis index {index} out of range for p = {p}"
            )));
        }
        let mut v = DVector::zeros(p);
        v[index] = Complex::new(1.0, 0.0);
        Ok(ComplexUnitVector(v))
    }

    pub fn p(&self) -> usize {
        self.0.len()
    }

    pub fn as_vector(&self) -> &DVector<Complex<f64>> {
        &self.0
    }
}

/// Bingham family with density proportional to exp(p x' B x), where
/// B = (I - Sigma^{-1})/2. Identifiability pins the smallest eigenvalue of
/// Sigma at 1 (equivalently the smallest eigenvalue of B at 0).
#[derive(Debug, Clone)]
pub struct BinghamParams {
    spectrum: SpectrumModel,
}

impl BinghamParams {
    pub fn new(spectrum: SpectrumModel) -> Result<Self> {
        if !spectrum.is_identifiable() {
            return Err(Error::Validation(format!(
                "Bingham spectrum must have smallest eigenvalue exactly 1, got {}",
                spectrum.lambda_min()
            )));
        }
        Ok(BinghamParams { spectrum })
    }

    pub fn spectrum(&self) -> &SpectrumModel {
        &self.spectrum
    }

    pub fn p(&self) -> usize {
        self.spectrum.p()
    }

    pub fn is_uniform(&self) -> bool {
        self.spectrum.lambda_max() == 1.0
    }
}

/// von Mises-Fisher family: density proportional to
/// exp(sqrt(p) kappa x' nu) with mode nu.
#[derive(Debug, Clone)]
pub struct VmfParams {
    pub mode: UnitVector,
    pub kappa: f64,
}

impl VmfParams {
    pub fn new(mode: UnitVector, kappa: f64) -> Result<Self> {
        if !(kappa >= 0.0) || !kappa.is_finite() {
            return Err(Error::Validation(format!("vMF kappa must be >= 0, got {kappa}")));
        }
        Ok(VmfParams { mode, kappa })
    }

    pub fn p(&self) -> usize {
        self.mode.p()
    }
}

/// Watson-type family: density proportional to exp(p kappa ||P_h' x||^2).
/// Positive definiteness of the matching Sigma requires kappa < 1/2;
/// negative kappa gives the girdle case.
#[derive(Debug, Clone)]
pub struct WatsonParams {
    pub basis: ProjectionBasis,
    pub kappa: f64,
}

impl WatsonParams {
    pub fn new(basis: ProjectionBasis, kappa: f64) -> Result<Self> {
        if !(kappa < 0.5) || !kappa.is_finite() {
            return Err(Error::Validation(format!(
                "Watson kappa must be finite and < 1/2, got {kappa}"
            )));
        }
        Ok(WatsonParams { basis, kappa })
    }

    pub fn p(&self) -> usize {
        self.basis.p()
    }

    /// The equivalent Bingham spectrum: eigenvalue 1/(1 - 2 kappa) on the
    /// axis subspace, 1 elsewhere.
    pub fn spectrum(&self) -> Result<SpectrumModel> {
        let lambda = 1.0 / (1.0 - 2.0 * self.kappa);
        SpectrumModel::new(
            self.p(),
            vec![lambda; self.basis.h()],
            self.basis.matrix().clone(),
            1.0,
        )
    }
}

/// Fisher-Bingham family: density proportional to
/// exp(sqrt(p) kappa x' nu + p x' B x), with the mode nu constrained to be
/// one of the explicit eigenvectors of B (1-based `mode_index`).
#[derive(Debug, Clone)]
pub struct FisherBinghamParams {
    spectrum: SpectrumModel,
    pub mode_index: usize,
    pub kappa: f64,
}

impl FisherBinghamParams {
    pub fn new(spectrum: SpectrumModel, mode_index: usize, kappa: f64) -> Result<Self> {
        if !spectrum.is_identifiable() {
            return Err(Error::Validation(
                "Fisher-Bingham spectrum must have smallest eigenvalue exactly 1".into(),
            ));
        }
        if !(kappa >= 0.0) || !kappa.is_finite() {
            return Err(Error::Validation(format!(
                "Fisher-Bingham kappa must be >= 0, got {kappa}"
            )));
        }
        let k = spectrum.explicit_values().len();
        if mode_index == 0 || mode_index > k {
            return Err(Error::Validation(format!(
                "mode_index must be in 1..={k}, got {mode_index}"
            )));
        }
        Ok(FisherBinghamParams {
            spectrum,
            mode_index,
            kappa,
        })
    }

    pub fn spectrum(&self) -> &SpectrumModel {
        &self.spectrum
    }

    pub fn p(&self) -> usize {
        self.spectrum.p()
    }

    /// The mode: the eigenvector this family concentrates around.
    pub fn mode(&self) -> DVector<f64> {
        self.spectrum
            .explicit_vectors()
            .column(self.mode_index - 1)
            .into_owned()
    }

    pub fn mode_eigenvalue(&self) -> f64 {
        self.spectrum.explicit_values()[self.mode_index - 1]
    }
}

/// Complex Bingham family: density proportional to exp(p z* B z) with
/// Hermitian B = I - Sigma^{-1}. The derived tau_j = p (1 - 1/lambda_j) are
/// the eigenvalues of pB entering the closed-form constant.
#[derive(Debug, Clone)]
pub struct ComplexBinghamParams {
    spectrum: ComplexSpectrumModel,
}

impl ComplexBinghamParams {
    pub fn new(spectrum: ComplexSpectrumModel) -> Result<Self> {
        if !spectrum.is_identifiable() {
            return Err(Error::Validation(
                "complex Bingham spectrum must have smallest eigenvalue exactly 1".into(),
            ));
        }
        Ok(ComplexBinghamParams { spectrum })
    }

    /// Construct from the eigenvalues of pB directly (identifiability shifts
    /// them so the smallest is 0, which leaves the density unchanged). When
    /// `vectors` is omitted the coordinate axes are used.
    pub fn from_taus(
        p: usize,
        taus: &[f64],
        vectors: Option<DMatrix<Complex<f64>>>,
    ) -> Result<Self> {
        if taus.len() != p {
            return Err(Error::Validation(format!(
                "need all {p} eigenvalues of pB, got {}",
                taus.len()
            )));
        }
        let min = taus.iter().cloned().fold(f64::INFINITY, f64::min);
        if !min.is_finite() {
            return Err(Error::Validation("taus must be finite".into()));
        }
        // sort descending in tau, which is descending in lambda
        let mut order: Vec<usize> = (0..p).collect();
        order.sort_by(|&a, &b| taus[b].partial_cmp(&taus[a]).unwrap());
        let values: Vec<f64> = order
            .iter()
            .map(|&j| 1.0 / (1.0 - (taus[j] - min) / p as f64))
            .collect();
        let vectors = match vectors {
            Some(m) => {
                let mut sorted = DMatrix::zeros(p, p);
                for (k, &j) in order.iter().enumerate() {
                    sorted.set_column(k, &m.column(j));
                }
                sorted
            }
            None => {
                let mut m = DMatrix::zeros(p, p);
                for (k, &j) in order.iter().enumerate() {
                    m[(j, k)] = Complex::new(1.0, 0.0);
                }
                m
            }
        };
        ComplexBinghamParams::new(ComplexSpectrumModel::new(p, values, vectors, 0.0)?)
    }

    pub fn spectrum(&self) -> &ComplexSpectrumModel {
        &self.spectrum
    }

    pub fn p(&self) -> usize {
        self.spectrum.p()
    }

    /// Eigenvalues of pB (explicit entries; the bulk carries
    /// `bulk_tau` with multiplicity p - k).
    pub fn taus(&self) -> Vec<f64> {
        let p = self.p() as f64;
        self.spectrum
            .explicit_values()
            .iter()
            .map(|l| p * (1.0 - 1.0 / l))
            .collect()
    }

    pub fn bulk_tau(&self) -> f64 {
        if self.spectrum.bulk_multiplicity() > 0 {
            self.p() as f64 * (1.0 - 1.0 / self.spectrum.bulk())
        } else {
            0.0
        }
    }

    /// All p eigenvalues of pB, descending.
    pub fn all_taus(&self) -> Vec<f64> {
        let mut t = self.taus();
        t.extend(std::iter::repeat(self.bulk_tau()).take(self.spectrum.bulk_multiplicity()));
        t.sort_by(|a, b| b.partial_cmp(a).unwrap());
        t
    }
}

/// Complex Watson family: density proportional to
/// exp(-p z* (I - kappa mu mu*) z) with modal shape mu and kappa < 1.
#[derive(Debug, Clone)]
pub struct ComplexWatsonParams {
    pub mode: ComplexUnitVector,
    pub kappa: f64,
}

impl ComplexWatsonParams {
    pub fn new(mode: ComplexUnitVector, kappa: f64) -> Result<Self> {
        if !(kappa < 1.0) || !kappa.is_finite() {
            return Err(Error::Validation(format!(
                "complex Watson kappa must be finite and < 1, got {kappa}"
            )));
        }
        Ok(ComplexWatsonParams { mode, kappa })
    }

    pub fn p(&self) -> usize {
        self.mode.p()
    }
}

/// Tagged union over all families, the unit the CLI and harness dispatch on.
#[derive(Debug, Clone)]
pub enum Family {
    Uniform { p: usize },
    Bingham(BinghamParams),
    Vmf(VmfParams),
    Watson(WatsonParams),
    FisherBingham(FisherBinghamParams),
    ComplexBingham(ComplexBinghamParams),
    ComplexWatson(ComplexWatsonParams),
}

impl Family {
    pub fn p(&self) -> usize {
        match self {
            Family::Uniform { p } => *p,
            Family::Bingham(f) => f.p(),
            Family::Vmf(f) => f.p(),
            Family::Watson(f) => f.p(),
            Family::FisherBingham(f) => f.p(),
            Family::ComplexBingham(f) => f.p(),
            Family::ComplexWatson(f) => f.p(),
        }
    }

    pub fn is_complex(&self) -> bool {
        matches!(self, Family::ComplexBingham(_) | Family::ComplexWatson(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Uniform { .. } => "uniform",
            Family::Bingham(_) => "bingham",
            Family::Vmf(_) => "vmf",
            Family::Watson(_) => "watson",
            Family::FisherBingham(_) => "fisher_bingham",
            Family::ComplexBingham(_) => "complex_bingham",
            Family::ComplexWatson(_) => "complex_watson",
        }
    }
}

/// Log normalizing constant of a density kernel, against the uniform
/// probability measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogConstant {
    Exact(f64),
    /// No practical closed form (matrix-argument hypergeometric constants);
    /// use [`mc_log_constant`].
    OracleRequired,
}

/// Value of a log-density split into its exponent and normalizer.
#[derive(Debug, Clone, Copy)]
pub struct LogDensity {
    pub exponent: f64,
    pub log_constant: LogConstant,
}

impl LogDensity {
    /// exponent - log constant, when the constant is exact.
    pub fn value(&self) -> Option<f64> {
        match self.log_constant {
            LogConstant::Exact(c) => Some(self.exponent - c),
            LogConstant::OracleRequired => None,
        }
    }
}

/// Exponent of the density kernel at a real point (uniform measure
/// convention; the uniform family has exponent identically 0).
pub fn log_kernel(family: &Family, x: &UnitVector) -> Result<f64> {
    match family {
        Family::Uniform { p } => {
            expect_dim(*p, x.p())?;
            Ok(0.0)
        }
        Family::Bingham(f) => {
            expect_dim(f.p(), x.p())?;
            Ok(bingham_exponent(f.spectrum(), x.as_vector()))
        }
        Family::Vmf(f) => {
            expect_dim(f.p(), x.p())?;
            let p = f.p() as f64;
            Ok(p.sqrt() * f.kappa * f.mode.as_vector().dot(x.as_vector()))
        }
        Family::Watson(f) => {
            expect_dim(f.p(), x.p())?;
            let c = f.basis.coefficients(x.as_vector())?;
            Ok(f.p() as f64 * f.kappa * c.norm_squared())
        }
        Family::FisherBingham(f) => {
            expect_dim(f.p(), x.p())?;
            let p = f.p() as f64;
            let linear = p.sqrt() * f.kappa * f.mode().dot(x.as_vector());
            Ok(linear + bingham_exponent(f.spectrum(), x.as_vector()))
        }
        Family::ComplexBingham(_) | Family::ComplexWatson(_) => Err(Error::Validation(
            "complex family evaluated at a real point".into(),
        )),
    }
}

/// Exponent of the density kernel at a complex point.
pub fn log_kernel_complex(family: &Family, z: &ComplexUnitVector) -> Result<f64> {
    match family {
        Family::ComplexBingham(f) => {
            expect_dim(f.p(), z.p())?;
            let taus = f.taus();
            let bulk = f.bulk_tau();
            let mut total = bulk; // bulk tau times ||z||^2 = 1
            for (j, &tau) in taus.iter().enumerate() {
                let c = f.spectrum().explicit_vectors().column(j).dotc(z.as_vector());
                total += (tau - bulk) * c.norm_sqr();
            }
            Ok(total)
        }
        Family::ComplexWatson(f) => {
            expect_dim(f.p(), z.p())?;
            let p = f.p() as f64;
            let c = f.mode.as_vector().dotc(z.as_vector());
            Ok(-p * (1.0 - f.kappa * c.norm_sqr()))
        }
        _ => Err(Error::Validation("real family evaluated at a complex point".into())),
    }
}

/// Log-density evaluation: exponent plus the log normalizing constant where
/// a closed form exists.
pub fn logpdf(family: &Family, x: &UnitVector) -> Result<LogDensity> {
    let exponent = log_kernel(family, x)?;
    Ok(LogDensity {
        exponent,
        log_constant: real_log_constant(family)?,
    })
}

pub fn logpdf_complex(family: &Family, z: &ComplexUnitVector) -> Result<LogDensity> {
    let exponent = log_kernel_complex(family, z)?;
    Ok(LogDensity {
        exponent,
        log_constant: complex_log_constant(family)?,
    })
}

fn real_log_constant(family: &Family) -> Result<LogConstant> {
    Ok(match family {
        Family::Uniform { .. } => LogConstant::Exact(0.0),
        Family::Bingham(f) => {
            if f.is_uniform() {
                LogConstant::Exact(0.0)
            } else {
                LogConstant::OracleRequired
            }
        }
        Family::Vmf(f) => LogConstant::Exact(log_vmf_constant(f.p(), f.kappa)?),
        Family::Watson(f) => {
            LogConstant::Exact(log_watson_constant_h(f.p(), f.basis.h(), f.kappa)?)
        }
        Family::FisherBingham(f) => {
            if f.spectrum().lambda_max() == 1.0 {
                // B = 0 reduces to the von Mises-Fisher constant
                LogConstant::Exact(log_vmf_constant(f.p(), f.kappa)?)
            } else {
                LogConstant::OracleRequired
            }
        }
        _ => return Err(Error::Validation("complex family in real constant path".into())),
    })
}

fn complex_log_constant(family: &Family) -> Result<LogConstant> {
    Ok(match family {
        Family::ComplexBingham(f) => {
            let all = f.all_taus();
            match log_complex_bingham_constant(&all) {
                Ok(log_surface) => {
                    LogConstant::Exact(log_surface - log_complex_sphere_area(f.p()))
                }
                // repeated eigenvalues: no closed form, fall back to the oracle
                Err(Error::Degenerate(_)) => LogConstant::OracleRequired,
                Err(e) => return Err(e),
            }
        }
        Family::ComplexWatson(f) => {
            let log_surface = crate::specfun::log_complex_watson_constant(f.p(), f.kappa)?;
            LogConstant::Exact(log_surface - log_complex_sphere_area(f.p()))
        }
        _ => return Err(Error::Validation("real family in complex constant path".into())),
    })
}

fn bingham_exponent(spectrum: &SpectrumModel, x: &DVector<f64>) -> f64 {
    // p x'Bx with B = (I - Sigma^{-1})/2, using ||x|| = 1
    let p = spectrum.p() as f64;
    let bulk_beta = if spectrum.bulk_multiplicity() > 0 {
        0.5 * (1.0 - 1.0 / spectrum.bulk())
    } else {
        0.0
    };
    let mut total = p * bulk_beta;
    for (j, &lambda) in spectrum.explicit_values().iter().enumerate() {
        let beta = 0.5 * (1.0 - 1.0 / lambda);
        let c = spectrum.explicit_vectors().column(j).dot(x);
        total += p * (beta - bulk_beta) * c * c;
    }
    total
}

fn expect_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::Validation(format!(
            "dimension mismatch: parameters have p = {expected}, point has p = {got}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::make_spike_spectrum;
    use approx::assert_relative_eq;

    #[test]
    fn unit_vector_validation_and_renormalization() {
        let v = DVector::from_vec(vec![1.0 + 5e-7, 0.0, 0.0]);
        let u = UnitVector::new(v).unwrap();
        assert_relative_eq!(u.as_vector().norm(), 1.0, epsilon = 1e-15);
        assert!(UnitVector::new(DVector::from_vec(vec![1.0, 0.5])).is_err());
    }

    #[test]
    fn bingham_identity_is_uniform() {
        let f = Family::Bingham(
            BinghamParams::new(crate::spectral::SpectrumModel::identity(6)).unwrap(),
        );
        let x = UnitVector::axis(6, 2).unwrap();
        let d = logpdf(&f, &x).unwrap();
        assert_eq!(d.exponent, 0.0);
        assert_eq!(d.value(), Some(0.0));
    }

    #[test]
    fn bingham_density_is_even() {
        let spec = make_spike_spectrum(5, &[3.0, 1.5], None).unwrap();
        let f = Family::Bingham(BinghamParams::new(spec).unwrap());
        let x = UnitVector::new(DVector::from_vec(vec![0.5, 0.5, 0.5, 0.5, 0.0])).unwrap();
        let neg = UnitVector::new(-x.as_vector().clone()).unwrap();
        assert_eq!(
            log_kernel(&f, &x).unwrap(),
            log_kernel(&f, &neg).unwrap()
        );
    }

    #[test]
    fn vmf_zero_kappa_uniform() {
        let f = Family::Vmf(VmfParams::new(UnitVector::axis(4, 0).unwrap(), 0.0).unwrap());
        let x = UnitVector::new(DVector::from_vec(vec![0.5, -0.5, 0.5, 0.5])).unwrap();
        let d = logpdf(&f, &x).unwrap();
        assert_eq!(d.exponent, 0.0);
        assert_eq!(d.value(), Some(0.0));
    }

    #[test]
    fn complex_watson_exponent_at_mode() {
        // p = 2, kappa = 0.9: exponent at the mode is -p (1 - kappa) = -0.2
        let mode = ComplexUnitVector::axis(2, 0).unwrap();
        let f = Family::ComplexWatson(ComplexWatsonParams::new(mode.clone(), 0.9).unwrap());
        let d = logpdf_complex(&f, &mode).unwrap();
        assert_relative_eq!(d.exponent, -0.2, max_relative = 1e-12);
        assert!(matches!(d.log_constant, LogConstant::Exact(_)));
    }

    #[test]
    fn complex_phase_invariance_exact() {
        let mode = ComplexUnitVector::axis(3, 0).unwrap();
        let f = Family::ComplexWatson(ComplexWatsonParams::new(mode, 0.7).unwrap());
        let z = ComplexUnitVector::new(DVector::from_vec(vec![
            Complex::new(0.6, 0.0),
            Complex::new(0.0, 0.8),
            Complex::new(0.0, 0.0),
        ]))
        .unwrap();
        let theta = 1.234f64;
        let rot = Complex::new(theta.cos(), theta.sin());
        let zr = ComplexUnitVector::new(z.as_vector() * rot).unwrap();
        assert_relative_eq!(
            log_kernel_complex(&f, &z).unwrap(),
            log_kernel_complex(&f, &zr).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn complex_bingham_tau_shift_invariance() {
        let taus = [0.0, -0.5, -2.0];
        let shifted: Vec<f64> = taus.iter().map(|t| t + 3.7).collect();
        let f1 = Family::ComplexBingham(ComplexBinghamParams::from_taus(3, &taus, None).unwrap());
        let f2 =
            Family::ComplexBingham(ComplexBinghamParams::from_taus(3, &shifted, None).unwrap());
        let z = ComplexUnitVector::new(DVector::from_vec(vec![
            Complex::new(0.5, 0.1),
            Complex::new(-0.3, 0.6),
            Complex::new(0.2, 0.48989794855663565),
        ]))
        .unwrap();
        let d1 = logpdf_complex(&f1, &z).unwrap();
        let d2 = logpdf_complex(&f2, &z).unwrap();
        assert_relative_eq!(d1.value().unwrap(), d2.value().unwrap(), epsilon = 1e-10);
    }

    #[test]
    fn fisher_bingham_reduces_to_vmf_constant_when_b_zero() {
        let spec = make_spike_spectrum(5, &[1.0], None).unwrap();
        let f = FisherBinghamParams::new(spec, 1, 1.5).unwrap();
        let c = real_log_constant(&Family::FisherBingham(f)).unwrap();
        match c {
            LogConstant::Exact(v) => {
                assert_relative_eq!(v, log_vmf_constant(5, 1.5).unwrap(), epsilon = 1e-14);
            }
            _ => panic!("expected exact constant"),
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let f = Family::Uniform { p: 5 };
        let x = UnitVector::axis(4, 0).unwrap();
        assert!(logpdf(&f, &x).is_err());
    }
}
