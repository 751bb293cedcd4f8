//! Dense complex linear-algebra kernels: max-entry norms, Hermiticity
//! checks, the sorted Hermitian eigendecomposition, and the unitary
//! exponential of an anti-Hermitian generator.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Largest entry magnitude.
pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entrywise difference |a - b|; the shapes must agree.
pub fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    assert_eq!(a.shape(), b.shape(), "max_abs_diff shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Max-entry norm of M - M^†.
pub fn hermiticity_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

pub fn check_hermitian(m: &DMatrix<C64>, tolerance: f64) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            left: m.nrows(),
            right: m.ncols(),
        });
    }
    let deviation = hermiticity_deviation(m);
    if deviation > tolerance {
        return Err(Error::NonHermitian {
            deviation,
            tolerance,
        });
    }
    Ok(())
}

/// Full eigendecomposition of a Hermitian matrix, eigenvalues ascending with
/// eigenvector columns permuted to match. The caller is responsible for
/// checking Hermiticity; only the Hermitian part enters the decomposition.
pub fn hermitian_eigen(m: &DMatrix<C64>) -> (DVector<f64>, DMatrix<C64>) {
    let eig = m.clone().symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = DVector::from_iterator(n, order.iter().map(|&k| eig.eigenvalues[k]));
    let mut vectors = DMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(k));
    }
    (values, vectors)
}

/// exp(G) for anti-Hermitian G (G^† = -G), computed through the Hermitian
/// eigendecomposition of iG so the result is unitary by construction.
pub fn exp_anti_hermitian(g: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let i = C64::new(0.0, 1.0);
    let k = g * i;
    check_hermitian(&k, 1e-12)?;
    let (values, vectors) = hermitian_eigen(&k);
    let phases = DVector::from_iterator(
        values.len(),
        values.iter().map(|&lambda| (-i * lambda).exp()),
    );
    Ok(&vectors * DMatrix::from_diagonal(&phases) * vectors.adjoint())
}
