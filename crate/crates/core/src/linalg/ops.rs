use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::Real;

/// Kronecker product `a ⊗ b`.
pub fn kron<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = CMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Reduced matrix on the subsystems listed in `keep`.
///
/// `dims` gives the local dimension of each tensor factor, most significant
/// first. The kept factors appear in the output in the order given by `keep`,
/// which therefore doubles as a permutation of the surviving subsystems.
pub fn partial_trace<T: Real>(rho: &CMatrix<T>, dims: &[usize], keep: &[usize]) -> Result<CMatrix<T>> {
    if !rho.is_square() {
        return Err(Error::invalid("partial trace needs a square matrix"));
    }
    let total: usize = dims.iter().product();
    if dims.is_empty() || total != rho.rows() {
        return Err(Error::invalid(format!(
            "subsystem dimensions {dims:?} do not match matrix dimension {}",
            rho.rows()
        )));
    }
    if keep.is_empty() {
        return Err(Error::invalid("keep set must be non-empty"));
    }
    let mut seen = HashSet::new();
    for &k in keep {
        if k >= dims.len() || !seen.insert(k) {
            return Err(Error::invalid(format!("bad subsystem index {k} in keep set {keep:?}")));
        }
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !seen.contains(i)).collect();

    // stride of each factor in the flat index
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }

    let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let traced_dim: usize = traced.iter().map(|&k| dims[k]).product();

    let offsets = |factors: &[usize], count: usize| -> Vec<usize> {
        (0..count)
            .map(|mut idx| {
                let mut off = 0;
                for &f in factors.iter().rev() {
                    off += (idx % dims[f]) * strides[f];
                    idx /= dims[f];
                }
                off
            })
            .collect()
    };
    let kept_off = offsets(keep, kept_dim);
    let traced_off = offsets(&traced, traced_dim);

    let mut out = CMatrix::zeros(kept_dim, kept_dim);
    for (i, &ri) in kept_off.iter().enumerate() {
        for (j, &cj) in kept_off.iter().enumerate() {
            let mut acc = out[(i, j)];
            for &e in &traced_off {
                acc = acc + rho[(ri + e, cj + e)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}
