use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    /// Sorted in descending order.
    pub values: Vec<T>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: CMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    /// V f(Λ) V†.
    pub fn map_spectrum(&self, f: impl Fn(T) -> T) -> CMatrix<T> {
        let n = self.values.len();
        let mut out = CMatrix::zeros(n, n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let w = f(lambda);
            if w == T::zero() {
                continue;
            }
            for i in 0..n {
                let vik = self.vectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + vik * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }
}

/// Unitary 2x2 rotation that diagonalizes the Hermitian block
/// `[[app, apq], [conj(apq), aqq]]`, returned as `(g_pp, g_pq, g_qp, g_qq)`.
fn jacobi_rotation<T: Real>(app: T, aqq: T, apq: Complex<T>) -> [Complex<T>; 4] {
    let r = apq.norm();
    let phase = apq / r; // e^{iφ}
    let theta = (aqq - app) / (T::lit(2.0) * r);
    let t = if theta.abs() > T::lit(1e150) {
        T::one() / (T::lit(2.0) * theta)
    } else {
        let sign = if theta < T::zero() { -T::one() } else { T::one() };
        sign / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;
    let e = phase.conj(); // e^{-iφ}
    let re = |x: T| Complex::new(x, T::zero());
    [re(c), re(s), e * (-s), e * c]
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices. The input is
/// symmetrized first, so small anti-Hermitian noise is discarded.
pub fn hermitian_eigen<T: Real>(m: &CMatrix<T>) -> Result<HermitianEigen<T>> {
    if !m.is_square() {
        return Err(Error::invalid("eigen-decomposition needs a square matrix"));
    }
    if m.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::invalid("matrix entries must be finite"));
    }
    let n = m.rows();
    let mut a = m.symmetrized();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm();
    let tol = T::lit(T::JACOBI_TOL) * scale;

    let off_norm = |a: &CMatrix<T>| {
        let mut s = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s = s + a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = scale == T::zero() || off_norm(&a) <= tol;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::numerical(format!(
                "Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps (off-diagonal norm {})",
                off_norm(&a)
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.norm() <= T::min_positive_value() {
                    continue;
                }
                let [gpp, gpq, gqp, gqq] = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, apq);
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * gpp + akq * gqp;
                    a[(k, q)] = akp * gpq + akq * gqq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
                    a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
                }
                let zero = Complex::new(T::zero(), T::zero());
                a[(p, q)] = zero;
                a[(q, p)] = zero;
                a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
                a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * gpp + vkq * gqp;
                    v[(k, q)] = vkp * gpq + vkq * gqq;
                }
            }
        }
        converged = off_norm(&a) <= tol;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).expect("finite eigenvalues"));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new)] = v[(i, old)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Principal square root of a positive-semidefinite Hermitian matrix.
///
/// Slightly negative eigenvalues (rank-deficient inputs) are clamped to zero;
/// anything below `-T::PSD_REJECT` is rejected.
pub fn psd_sqrt<T: Real>(rho: &CMatrix<T>) -> Result<CMatrix<T>> {
    if !rho.is_hermitian(T::lit(T::HERMITIAN_TOL)) {
        return Err(Error::invalid("square root needs a Hermitian matrix"));
    }
    let eig = hermitian_eigen(rho)?;
    let min = eig.values.last().copied().unwrap_or_else(T::zero);
    if min < -T::lit(T::PSD_REJECT) {
        return Err(Error::invalid(format!("matrix is not positive semidefinite (eigenvalue {min})")));
    }
    Ok(eig.map_spectrum(|x| x.max(T::zero()).sqrt()))
}

/// Singular values of a square complex matrix, descending, by one-sided
/// (Hestenes) Jacobi orthogonalization of the columns.
///
/// Small singular values come out with absolute error near machine precision,
/// which squaring into `A†A` would not give.
pub fn singular_values<T: Real>(m: &CMatrix<T>) -> Result<Vec<T>> {
    if m.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::invalid("matrix entries must be finite"));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let tol = T::epsilon() * T::lit(rows.max(1) as f64);

    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let mut alpha = T::zero();
                let mut beta = T::zero();
                let mut gamma = Complex::new(T::zero(), T::zero());
                for k in 0..rows {
                    alpha = alpha + a[(k, p)].norm_sqr();
                    beta = beta + a[(k, q)].norm_sqr();
                    gamma = gamma + a[(k, p)].conj() * a[(k, q)];
                }
                if gamma.norm() <= tol * (alpha * beta).sqrt() || gamma.norm() <= T::min_positive_value() {
                    continue;
                }
                rotated = true;
                let [gpp, gpq, gqp, gqq] = jacobi_rotation(alpha, beta, gamma);
                for k in 0..rows {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * gpp + akq * gqp;
                    a[(k, q)] = akp * gpq + akq * gqq;
                }
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps == MAX_SWEEPS {
            return Err(Error::numerical(format!("one-sided Jacobi SVD did not converge in {MAX_SWEEPS} sweeps")));
        }
    }

    let mut values: Vec<T> = (0..cols).map(|j| (0..rows).map(|k| a[(k, j)].norm_sqr()).sum::<T>().sqrt()).collect();
    values.sort_by(|x, y| y.partial_cmp(x).expect("finite singular values"));
    Ok(values)
}
