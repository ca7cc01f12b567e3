//! Spectral models and decompositions.
//!
//! A covariance sequence is parameterized by a handful of explicit
//! eigenpairs (the spikes) plus a flat bulk eigenvalue on the orthogonal
//! complement, so dimensions around 10^5 never materialize a p x p matrix.
//! The same structure drives the B-matrix reparameterization
//! B = (I - Sigma^{-1})/2 used by the Bingham-type densities.

mod eigen;
mod sample;

pub use eigen::{dual_pca, dual_pca_complex, herm_eigen, sym_eigen, ComplexEigenReport, EigenReport};
pub use sample::{ComplexSampleMatrix, SampleMatrix};

use crate::error::{Error, Result};
use nalgebra::{Complex, DMatrix, DVector};

/// Orthonormality tolerance for eigenvector blocks and projection bases.
pub const ORTHONORMALITY_TOL: f64 = 1e-10;

/// Eigenstructure of a p x p symmetric positive-definite matrix given as a
/// few explicit eigenpairs plus a repeated bulk eigenvalue on the orthogonal
/// complement.
#[derive(Debug, Clone)]
pub struct SpectrumModel {
    p: usize,
    values: Vec<f64>,
    vectors: DMatrix<f64>,
    bulk: f64,
}

impl SpectrumModel {
    /// General constructor. `vectors` holds one orthonormal column per
    /// explicit eigenvalue; the remaining p - k dimensions carry `bulk`.
    pub fn new(p: usize, values: Vec<f64>, vectors: DMatrix<f64>, bulk: f64) -> Result<Self> {
        if p < 2 {
            return Err(Error::Validation(format!("spectrum needs p >= 2, got {p}")));
        }
        if vectors.nrows() != p || vectors.ncols() != values.len() {
            return Err(Error::Validation(format!(
                "eigenvector block is {}x{}, expected {}x{}",
                vectors.nrows(),
                vectors.ncols(),
                p,
                values.len()
            )));
        }
        if values.len() > p {
            return Err(Error::Validation("more eigenvalues than dimensions".into()));
        }
        // fully explicit spectra carry no bulk
        let bulk = if values.len() == p { 0.0 } else { bulk };
        if !values.iter().all(|v| v.is_finite() && *v > 0.0) {
            return Err(Error::Validation("eigenvalues must be positive and finite".into()));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Validation(
                "explicit eigenvalues must be sorted descending".into(),
            ));
        }
        if values.len() < p && !(bulk > 0.0 && bulk.is_finite()) {
            return Err(Error::Validation(format!(
                "bulk eigenvalue must be positive, got {bulk}"
            )));
        }
        check_orthonormal(&vectors)?;
        Ok(SpectrumModel {
            p,
            values,
            vectors,
            bulk,
        })
    }

    /// Identity spectrum: every eigenvalue 1.
    pub fn identity(p: usize) -> Self {
        SpectrumModel {
            p,
            values: Vec::new(),
            vectors: DMatrix::zeros(p, 0),
            bulk: 1.0,
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn explicit_values(&self) -> &[f64] {
        &self.values
    }

    pub fn explicit_vectors(&self) -> &DMatrix<f64> {
        &self.vectors
    }

    pub fn bulk(&self) -> f64 {
        self.bulk
    }

    pub fn bulk_multiplicity(&self) -> usize {
        self.p - self.values.len()
    }

    /// Full eigenvalue list, descending.
    pub fn sorted_eigenvalues(&self) -> Vec<f64> {
        let mut all = self.values.clone();
        all.extend(std::iter::repeat(self.bulk).take(self.bulk_multiplicity()));
        all.sort_by(|a, b| b.partial_cmp(a).unwrap());
        all
    }

    pub fn lambda_max(&self) -> f64 {
        let head = self.values.first().copied().unwrap_or(f64::NEG_INFINITY);
        if self.bulk_multiplicity() > 0 {
            head.max(self.bulk)
        } else {
            head
        }
    }

    pub fn lambda_min(&self) -> f64 {
        let tail = self.values.last().copied().unwrap_or(f64::INFINITY);
        if self.bulk_multiplicity() > 0 {
            tail.min(self.bulk)
        } else {
            tail
        }
    }

    /// Whether the smallest eigenvalue is pinned at exactly 1, the
    /// identifiability normalization for Bingham-type parameters.
    pub fn is_identifiable(&self) -> bool {
        self.lambda_min() == 1.0
    }

    pub fn trace(&self) -> f64 {
        self.values.iter().sum::<f64>() + self.bulk * self.bulk_multiplicity() as f64
    }

    pub fn trace_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>()
            + self.bulk * self.bulk * self.bulk_multiplicity() as f64
    }

    /// Sigma^alpha x without materializing Sigma.
    pub fn apply_power(&self, alpha: f64, x: &DVector<f64>) -> DVector<f64> {
        let bulk_pow = if self.bulk_multiplicity() > 0 {
            self.bulk.powf(alpha)
        } else {
            0.0
        };
        let mut out = x * bulk_pow;
        if !self.values.is_empty() {
            let coeffs = self.vectors.transpose() * x;
            for (j, &lambda) in self.values.iter().enumerate() {
                let delta = lambda.powf(alpha) - bulk_pow;
                if delta != 0.0 {
                    out.axpy(delta * coeffs[j], &self.vectors.column(j).into_owned(), 1.0);
                }
            }
        }
        out
    }

    /// Quadratic form x' Sigma^alpha x.
    pub fn quadratic_power(&self, alpha: f64, x: &DVector<f64>) -> f64 {
        let bulk_pow = if self.bulk_multiplicity() > 0 {
            self.bulk.powf(alpha)
        } else {
            0.0
        };
        let mut out = bulk_pow * x.norm_squared();
        for (j, &lambda) in self.values.iter().enumerate() {
            let c = self.vectors.column(j).dot(x);
            out += (lambda.powf(alpha) - bulk_pow) * c * c;
        }
        out
    }

    /// Dense Sigma; intended for small p (tests, Monte Carlo oracles).
    pub fn dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::identity(self.p, self.p) * self.bulk_or_zero();
        for (j, &lambda) in self.values.iter().enumerate() {
            let v = self.vectors.column(j);
            m += (lambda - self.bulk_or_zero()) * &v * v.transpose();
        }
        m
    }

    fn bulk_or_zero(&self) -> f64 {
        if self.bulk_multiplicity() > 0 {
            self.bulk
        } else {
            // fully explicit: reconstruct from the pairs alone
            0.0
        }
    }
}

/// Complex (Hermitian) analogue of [`SpectrumModel`]; eigenvalues stay real.
#[derive(Debug, Clone)]
pub struct ComplexSpectrumModel {
    p: usize,
    values: Vec<f64>,
    vectors: DMatrix<Complex<f64>>,
    bulk: f64,
}

impl ComplexSpectrumModel {
    pub fn new(
        p: usize,
        values: Vec<f64>,
        vectors: DMatrix<Complex<f64>>,
        bulk: f64,
    ) -> Result<Self> {
        if p < 2 {
            return Err(Error::Validation(format!("spectrum needs p >= 2, got {p}")));
        }
        if vectors.nrows() != p || vectors.ncols() != values.len() || values.len() > p {
            return Err(Error::Validation("eigenvector block shape mismatch".into()));
        }
        if !values.iter().all(|v| v.is_finite() && *v > 0.0) {
            return Err(Error::Validation("eigenvalues must be positive and finite".into()));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Validation(
                "explicit eigenvalues must be sorted descending".into(),
            ));
        }
        if values.len() < p && !(bulk > 0.0 && bulk.is_finite()) {
            return Err(Error::Validation(format!(
                "bulk eigenvalue must be positive, got {bulk}"
            )));
        }
        let gram = vectors.adjoint() * &vectors;
        let k = values.len();
        for i in 0..k {
            for j in 0..k {
                let expect = if i == j { 1.0 } else { 0.0 };
                if (gram[(i, j)] - Complex::new(expect, 0.0)).norm() > ORTHONORMALITY_TOL {
                    return Err(Error::Validation(
                        "complex eigenvector block is not orthonormal".into(),
                    ));
                }
            }
        }
        Ok(ComplexSpectrumModel {
            p,
            values,
            vectors,
            bulk,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn explicit_values(&self) -> &[f64] {
        &self.values
    }

    pub fn explicit_vectors(&self) -> &DMatrix<Complex<f64>> {
        &self.vectors
    }

    pub fn bulk(&self) -> f64 {
        self.bulk
    }

    pub fn bulk_multiplicity(&self) -> usize {
        self.p - self.values.len()
    }

    pub fn lambda_min(&self) -> f64 {
        let tail = self.values.last().copied().unwrap_or(f64::INFINITY);
        if self.bulk_multiplicity() > 0 {
            tail.min(self.bulk)
        } else {
            tail
        }
    }

    pub fn is_identifiable(&self) -> bool {
        self.lambda_min() == 1.0
    }
}

/// The B-matrix reparameterization of a spectrum: same eigenvectors,
/// eigenvalues beta_j = (1 - 1/lambda_j)/2. Unlike eigenvalues of a
/// covariance, the betas may be zero or negative.
#[derive(Debug, Clone)]
pub struct BMatrix {
    pub p: usize,
    pub betas: Vec<f64>,
    pub vectors: DMatrix<f64>,
    pub bulk_beta: f64,
}

/// Map Sigma to B = (I - Sigma^{-1})/2; eigenvectors are shared.
pub fn sigma_to_b(spec: &SpectrumModel) -> BMatrix {
    BMatrix {
        p: spec.p(),
        betas: spec
            .explicit_values()
            .iter()
            .map(|l| 0.5 * (1.0 - 1.0 / l))
            .collect(),
        vectors: spec.explicit_vectors().clone(),
        bulk_beta: if spec.bulk_multiplicity() > 0 {
            0.5 * (1.0 - 1.0 / spec.bulk())
        } else {
            0.0
        },
    }
}

/// Inverse map: lambda_j = 1/(1 - 2 beta_j), defined for beta_j < 1/2.
pub fn b_to_sigma(b: &BMatrix) -> Result<SpectrumModel> {
    let invert = |beta: f64| -> Result<f64> {
        if beta >= 0.5 {
            Err(Error::Domain(format!(
                "beta = {beta} >= 1/2: Sigma = (I - 2B)^{{-1}} is not positive definite"
            )))
        } else {
            Ok(1.0 / (1.0 - 2.0 * beta))
        }
    };
    let values = b.betas.iter().copied().map(invert).collect::<Result<Vec<_>>>()?;
    let bulk = if b.p > b.betas.len() {
        invert(b.bulk_beta)?
    } else {
        0.0
    };
    SpectrumModel::new(b.p, values, b.vectors.clone(), bulk)
}

/// Spiked spectrum: h explicit eigenvalues >= 1, all remaining equal to 1.
/// When `spike_vectors` is omitted the first h standard basis vectors are
/// used. The trace conditions sum lambda = p + O(1) and
/// sum lambda^2 = p + O(1) hold by construction with gaps independent of p.
pub fn make_spike_spectrum(
    p: usize,
    spike_values: &[f64],
    spike_vectors: Option<DMatrix<f64>>,
) -> Result<SpectrumModel> {
    let h = spike_values.len();
    if h == 0 || h >= p {
        return Err(Error::Validation(format!(
            "need 1 <= h < p spikes, got h = {h}, p = {p}"
        )));
    }
    if spike_values.iter().any(|v| *v < 1.0) {
        return Err(Error::Validation(
            "spike eigenvalues must be >= 1 (bulk is pinned at 1)".into(),
        ));
    }
    let vectors = match spike_vectors {
        Some(m) => m,
        None => axis_vectors(p, h),
    };
    SpectrumModel::new(p, spike_values.to_vec(), vectors, 1.0)
}

/// First h standard basis vectors as a p x h block.
pub fn axis_vectors(p: usize, h: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(p, h);
    for j in 0..h {
        m[(j, j)] = 1.0;
    }
    m
}

/// Discrete cosine vectors sqrt(2/p) cos(j pi (i + 1/2)/p), j = 1..h:
/// exactly orthonormal on the p-point midpoint grid and the discrete
/// counterpart of a smooth L^2 basis.
pub fn cosine_vectors(p: usize, h: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(p, h);
    let scale = (2.0 / p as f64).sqrt();
    for j in 0..h {
        let freq = (j + 1) as f64 * std::f64::consts::PI / p as f64;
        for i in 0..p {
            m[(i, j)] = scale * (freq * (i as f64 + 0.5)).cos();
        }
    }
    m
}

/// Report of the trace growth conditions for a spectrum sequence:
/// `trace_gap` = sum lambda - p and `trace_sq_gap` = sum lambda^2 - p.
/// Both stay O(1) in p exactly when the sequence satisfies the high-
/// dimensional limit assumptions; the caller supplies the pass bound.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ConditionReport {
    pub trace_gap: f64,
    pub trace_sq_gap: f64,
    pub min_eigenvalue: f64,
}

pub fn check_sequence_conditions(spec: &SpectrumModel) -> ConditionReport {
    let p = spec.p() as f64;
    ConditionReport {
        trace_gap: spec.trace() - p,
        trace_sq_gap: spec.trace_sq() - p,
        min_eigenvalue: spec.lambda_min(),
    }
}

/// A p x h block of orthonormal columns spanning a projection subspace.
#[derive(Debug, Clone)]
pub struct ProjectionBasis {
    columns: DMatrix<f64>,
}

impl ProjectionBasis {
    pub fn new(columns: DMatrix<f64>) -> Result<Self> {
        if columns.ncols() == 0 || columns.ncols() > columns.nrows() {
            return Err(Error::Validation(format!(
                "projection basis needs 1 <= h <= p columns, got {}x{}",
                columns.nrows(),
                columns.ncols()
            )));
        }
        check_orthonormal(&columns)?;
        Ok(ProjectionBasis { columns })
    }

    /// First h coordinate axes.
    pub fn axes(p: usize, h: usize) -> Result<Self> {
        if h == 0 || h > p {
            return Err(Error::Validation(format!("need 1 <= h <= p, got h = {h}, p = {p}")));
        }
        Ok(ProjectionBasis {
            columns: axis_vectors(p, h),
        })
    }

    pub fn p(&self) -> usize {
        self.columns.nrows()
    }

    pub fn h(&self) -> usize {
        self.columns.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.columns
    }

    /// Projection coefficients P_h' x.
    pub fn coefficients(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        if x.len() != self.p() {
            return Err(Error::Validation(format!(
                "vector length {} does not match basis dimension {}",
                x.len(),
                self.p()
            )));
        }
        Ok(self.columns.transpose() * x)
    }

    /// Embedded projection P_h P_h' x.
    pub fn embed(&self, coeffs: &DVector<f64>) -> Result<DVector<f64>> {
        if coeffs.len() != self.h() {
            return Err(Error::Validation(format!(
                "coefficient length {} does not match basis rank {}",
                coeffs.len(),
                self.h()
            )));
        }
        Ok(&self.columns * coeffs)
    }
}

fn check_orthonormal(m: &DMatrix<f64>) -> Result<()> {
    let k = m.ncols();
    if k == 0 {
        return Ok(());
    }
    let gram = m.transpose() * m;
    for i in 0..k {
        for j in 0..k {
            let expect = if i == j { 1.0 } else { 0.0 };
            if (gram[(i, j)] - expect).abs() > ORTHONORMALITY_TOL {
                return Err(Error::Validation(format!(
                    "columns are not orthonormal: gram[({i},{j})] = {}",
                    gram[(i, j)]
                )));
            }
        }
    }
    Ok(())
}
