//! Symmetric/Hermitian eigendecompositions and the dual PCA trick.

use super::sample::{ComplexSampleMatrix, SampleMatrix};
use crate::error::{Error, Result};
use nalgebra::{Complex, DMatrix, DVector};

/// Tolerance for the symmetry/Hermitian check, relative to the largest entry.
const SYMMETRY_TOL: f64 = 1e-10;

/// Eigenvalues below `RANK_CUTOFF * delta_1` are reported as zero and drop
/// out of the retained rank in `dual_pca`.
const RANK_CUTOFF: f64 = 1e-12;

/// Spectral decomposition with eigenvalues sorted descending and
/// deterministically sign-fixed eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenReport {
    pub eigenvalues: Vec<f64>,
    /// d x rank block of orthonormal eigenvectors (one column per retained
    /// eigenvalue).
    pub eigenvectors: DMatrix<f64>,
    pub dim: usize,
    pub rank: usize,
}

#[derive(Debug, Clone)]
pub struct ComplexEigenReport {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<Complex<f64>>,
    pub dim: usize,
    pub rank: usize,
}

/// Make the coordinate of largest magnitude positive; ties resolve to the
/// first index. Spectra are only identified up to reflections, so a fixed
/// convention keeps every downstream report reproducible.
pub fn fix_sign(v: &mut DVector<f64>) {
    let mut idx = 0;
    let mut best = f64::NEG_INFINITY;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > best {
            best = x.abs();
            idx = i;
        }
    }
    if v[idx] < 0.0 {
        v.neg_mut();
    }
}

/// Complex counterpart: rotate the global phase so the coordinate of
/// largest modulus is real and positive.
pub fn fix_phase(v: &mut DVector<Complex<f64>>) {
    let mut idx = 0;
    let mut best = f64::NEG_INFINITY;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > best {
            best = z.norm();
            idx = i;
        }
    }
    let z = v[idx];
    if z.norm() > 0.0 {
        let rot = z.conj() / z.norm();
        for x in v.iter_mut() {
            *x *= rot;
        }
    }
}

/// Full spectral decomposition of a symmetric matrix.
pub fn sym_eigen(matrix: &DMatrix<f64>) -> Result<EigenReport> {
    let d = matrix.nrows();
    if d == 0 || matrix.ncols() != d {
        return Err(Error::Validation("sym_eigen requires a square matrix".into()));
    }
    let scale = matrix.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    for i in 0..d {
        for j in (i + 1)..d {
            if (matrix[(i, j)] - matrix[(j, i)]).abs() > SYMMETRY_TOL * scale {
                return Err(Error::Validation(format!(
                    "matrix is not symmetric at ({i},{j}): {} vs {}",
                    matrix[(i, j)],
                    matrix[(j, i)]
                )));
            }
        }
    }
    // symmetrize to wash out the sub-tolerance asymmetry before factorizing
    let sym = (matrix + matrix.transpose()) * 0.5;
    let decomp = sym.symmetric_eigen();

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| decomp.eigenvalues[b].partial_cmp(&decomp.eigenvalues[a]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| decomp.eigenvalues[i]).collect();
    let mut eigenvectors = DMatrix::zeros(d, d);
    for (k, &i) in order.iter().enumerate() {
        let mut col = decomp.eigenvectors.column(i).into_owned();
        fix_sign(&mut col);
        eigenvectors.set_column(k, &col);
    }
    Ok(EigenReport {
        eigenvalues,
        eigenvectors,
        dim: d,
        rank: d,
    })
}

/// Full spectral decomposition of a Hermitian matrix; eigenvalues are real.
pub fn herm_eigen(matrix: &DMatrix<Complex<f64>>) -> Result<ComplexEigenReport> {
    let d = matrix.nrows();
    if d == 0 || matrix.ncols() != d {
        return Err(Error::Validation("herm_eigen requires a square matrix".into()));
    }
    let scale = matrix.iter().fold(0.0f64, |m, x| m.max(x.norm())).max(1.0);
    for i in 0..d {
        for j in i..d {
            if (matrix[(i, j)] - matrix[(j, i)].conj()).norm() > SYMMETRY_TOL * scale {
                return Err(Error::Validation(format!(
                    "matrix is not Hermitian at ({i},{j})"
                )));
            }
        }
    }
    let herm = (matrix + matrix.adjoint()) * Complex::new(0.5, 0.0);
    let decomp = herm.symmetric_eigen();

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| decomp.eigenvalues[b].partial_cmp(&decomp.eigenvalues[a]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| decomp.eigenvalues[i]).collect();
    let mut eigenvectors = DMatrix::zeros(d, d);
    for (k, &i) in order.iter().enumerate() {
        let mut col = decomp.eigenvectors.column(i).into_owned();
        fix_phase(&mut col);
        eigenvectors.set_column(k, &col);
    }
    Ok(ComplexEigenReport {
        eigenvalues,
        eigenvectors,
        dim: d,
        rank: d,
    })
}

/// Top-n eigenpairs of S = (1/n) X X' through the n x n Gram matrix
/// A = (1/n) X'X, for n <= p.
///
/// The eigenvectors of S are recovered as gamma_j = X q_j / ||X q_j|| and
/// the eigenvalues as omega_j = ||X q_j|| sqrt(delta_j / n) (identically
/// delta_j), so the p x p matrix S is never materialized and the cost is
/// O(n^3 + p n^2).
pub fn dual_pca(x: &SampleMatrix) -> Result<EigenReport> {
    let p = x.p();
    let n = x.n();
    if n > p {
        return Err(Error::Validation(format!(
            "dual PCA requires n <= p, got n = {n}, p = {p}"
        )));
    }
    for j in 0..n {
        if x.data().column(j).norm() == 0.0 {
            return Err(Error::Validation(format!("column {j} is identically zero")));
        }
    }
    let gram = (x.data().transpose() * x.data()) / n as f64;
    let inner = sym_eigen(&gram)?;

    let cutoff = RANK_CUTOFF * inner.eigenvalues[0].max(0.0);
    let mut eigenvalues = Vec::new();
    let mut columns = Vec::new();
    for (j, &delta) in inner.eigenvalues.iter().enumerate() {
        if delta <= cutoff || delta <= 0.0 {
            break;
        }
        let xq = x.data() * inner.eigenvectors.column(j);
        let norm = xq.norm();
        let omega = norm * (delta / n as f64).sqrt();
        let mut gamma = xq / norm;
        fix_sign(&mut gamma);
        eigenvalues.push(omega);
        columns.push(gamma);
    }
    let rank = eigenvalues.len();
    let mut eigenvectors = DMatrix::zeros(p, rank);
    for (k, col) in columns.iter().enumerate() {
        eigenvectors.set_column(k, col);
    }
    Ok(EigenReport {
        eigenvalues,
        eigenvectors,
        dim: p,
        rank,
    })
}

/// Complex dual PCA: top-n eigenpairs of S = (1/n) X X* via A = (1/n) X*X.
pub fn dual_pca_complex(x: &ComplexSampleMatrix) -> Result<ComplexEigenReport> {
    let p = x.p();
    let n = x.n();
    if n > p {
        return Err(Error::Validation(format!(
            "dual PCA requires n <= p, got n = {n}, p = {p}"
        )));
    }
    for j in 0..n {
        if x.data().column(j).norm() == 0.0 {
            return Err(Error::Validation(format!("column {j} is identically zero")));
        }
    }
    let gram = (x.data().adjoint() * x.data()) / Complex::new(n as f64, 0.0);
    let inner = herm_eigen(&gram)?;

    let cutoff = RANK_CUTOFF * inner.eigenvalues[0].max(0.0);
    let mut eigenvalues = Vec::new();
    let mut columns = Vec::new();
    for (j, &delta) in inner.eigenvalues.iter().enumerate() {
        if delta <= cutoff || delta <= 0.0 {
            break;
        }
        let xq = x.data() * inner.eigenvectors.column(j);
        let norm = xq.norm();
        let mut gamma = xq / Complex::new(norm, 0.0);
        fix_phase(&mut gamma);
        eigenvalues.push(norm * (delta / n as f64).sqrt());
        columns.push(gamma);
    }
    let rank = eigenvalues.len();
    let mut eigenvectors = DMatrix::zeros(p, rank);
    for (k, col) in columns.iter().enumerate() {
        eigenvectors.set_column(k, col);
    }
    Ok(ComplexEigenReport {
        eigenvalues,
        eigenvectors,
        dim: p,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand_distr::StandardNormal;

    #[test]
    fn identity_and_diagonal() {
        let rep = sym_eigen(&DMatrix::identity(3, 3)).unwrap();
        assert_eq!(rep.eigenvalues, vec![1.0, 1.0, 1.0]);

        let rep = sym_eigen(&DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, 1.0, 2.0])))
            .unwrap();
        assert_eq!(rep.eigenvalues, vec![3.0, 2.0, 1.0]);
        // permuted axes as eigenvectors, sign-fixed
        assert_relative_eq!(rep.eigenvectors[(0, 0)], 1.0, epsilon = 1e-12);
        assert_relative_eq!(rep.eigenvectors[(2, 1)], 1.0, epsilon = 1e-12);
        assert_relative_eq!(rep.eigenvectors[(1, 2)], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn random_symmetric_reconstruction() {
        let mut rng = substream(11, 0);
        let d = 5;
        let mut a = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let v: f64 = rng.sample(StandardNormal);
                a[(i, j)] = v;
                a[(j, i)] = v;
            }
        }
        let rep = sym_eigen(&a).unwrap();
        let recon = &rep.eigenvectors
            * DMatrix::from_diagonal(&DVector::from_vec(rep.eigenvalues.clone()))
            * rep.eigenvectors.transpose();
        assert!((a - recon).norm() < 1e-10);
    }

    #[test]
    fn asymmetric_rejected() {
        let mut a = DMatrix::identity(3, 3);
        a[(0, 1)] = 0.5;
        assert!(sym_eigen(&a).is_err());
    }

    #[test]
    fn hermitian_reconstruction() {
        let a = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex::new(2.0, 0.0),
                Complex::new(0.0, 1.0),
                Complex::new(0.0, -1.0),
                Complex::new(1.0, 0.0),
            ],
        );
        let rep = herm_eigen(&a).unwrap();
        // eigenvalues (3 +- sqrt 5)/2
        assert_relative_eq!(rep.eigenvalues[0], (3.0 + 5.0f64.sqrt()) / 2.0, epsilon = 1e-12);
        assert_relative_eq!(rep.eigenvalues[1], (3.0 - 5.0f64.sqrt()) / 2.0, epsilon = 1e-12);
        let d = DMatrix::from_diagonal(&DVector::from_iterator(
            2,
            rep.eigenvalues.iter().map(|&l| Complex::new(l, 0.0)),
        ));
        let recon = &rep.eigenvectors * d * rep.eigenvectors.adjoint();
        assert!((a - recon).norm() < 1e-12);
    }

    #[test]
    fn dual_pca_rank_one() {
        // single unit column: omega_1 = 1, gamma_1 = x
        let x = DVector::from_vec(vec![0.6, 0.8, 0.0]);
        let sm = SampleMatrix::from_columns(DMatrix::from_columns(&[x.clone()]), true).unwrap();
        let rep = dual_pca(&sm).unwrap();
        assert_eq!(rep.rank, 1);
        assert_relative_eq!(rep.eigenvalues[0], 1.0, max_relative = 1e-12);
        assert_relative_eq!((rep.eigenvectors.column(0) - x).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn dual_pca_matches_direct_eigen() {
        let mut rng = substream(12, 0);
        let (p, n) = (50, 6);
        let data = DMatrix::from_fn(p, n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let sm = SampleMatrix::from_columns(data.clone(), false).unwrap();
        let dual = dual_pca(&sm).unwrap();

        let s = &data * data.transpose() / n as f64;
        let direct = sym_eigen(&s).unwrap();

        for j in 0..dual.rank {
            assert_relative_eq!(
                dual.eigenvalues[j],
                direct.eigenvalues[j],
                max_relative = 1e-10
            );
            let cos = dual
                .eigenvectors
                .column(j)
                .dot(&direct.eigenvectors.column(j))
                .abs();
            assert!(cos >= 1.0 - 1e-10, "eigenvector {j} misaligned: cos = {cos}");
        }
    }

    #[test]
    fn dual_pca_eigenvalue_formula_identity() {
        // ||X q_j|| sqrt(delta_j / n) equals delta_j
        let mut rng = substream(13, 0);
        let (p, n) = (40, 8);
        let data = DMatrix::from_fn(p, n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let gram = (data.transpose() * &data) / n as f64;
        let inner = sym_eigen(&gram).unwrap();
        for j in 0..n {
            let delta = inner.eigenvalues[j];
            if delta <= 1e-12 * inner.eigenvalues[0] {
                continue;
            }
            let omega = (&data * inner.eigenvectors.column(j)).norm() * (delta / n as f64).sqrt();
            assert_relative_eq!(omega, delta, max_relative = 1e-10);
        }
    }

    #[test]
    fn dual_pca_rejects_zero_column() {
        let data = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let sm = SampleMatrix::from_columns(data, false).unwrap();
        assert!(dual_pca(&sm).is_err());
    }

    #[test]
    fn complex_dual_pca_matches_direct() {
        let mut rng = substream(14, 0);
        let (p, n) = (20, 5);
        let data = DMatrix::from_fn(p, n, |_, _| {
            Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let sm = ComplexSampleMatrix::from_columns(data.clone(), false).unwrap();
        let dual = dual_pca_complex(&sm).unwrap();

        let s = &data * data.adjoint() / Complex::new(n as f64, 0.0);
        let direct = herm_eigen(&s).unwrap();
        for j in 0..dual.rank {
            assert_relative_eq!(
                dual.eigenvalues[j],
                direct.eigenvalues[j],
                max_relative = 1e-9
            );
            let cos = dual
                .eigenvectors
                .column(j)
                .dotc(&direct.eigenvectors.column(j))
                .norm();
            assert!(cos >= 1.0 - 1e-9, "complex eigenvector {j} misaligned");
        }
    }
}
