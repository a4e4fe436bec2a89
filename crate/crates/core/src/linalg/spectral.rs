//! Floating-point eigenvalue clustering of a self-adjoint operator.
//!
//! The operator is given in the coordinates of some basis together with the
//! Gram matrix of that basis; it must be self-adjoint for that inner product.

use nalgebra::{DMatrix, DVector};

use super::{LinalgError, RationalMatrix};

/// Clusters whose gap is at most this many `tol` apart are rejected as
/// indistinguishable instead of being split.
pub const SEPARATION_FACTOR: f64 = 1.0e3;

/// One eigenvalue cluster: mean eigenvalue and a gram-orthonormal basis of
/// the cluster's eigenspace, in input coordinates.
#[derive(Clone, Debug)]
pub struct EigenCluster {
    pub value: f64,
    pub vectors: Vec<Vec<f64>>,
}

impl EigenCluster {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

pub fn symmetric_eigensplit(
    op: &RationalMatrix,
    gram: &RationalMatrix,
    tol: f64,
) -> Result<Vec<EigenCluster>, LinalgError> {
    let n = op.rows();
    if !op.is_square() || gram.rows() != n || gram.cols() != n {
        return Err(LinalgError::DimensionMismatch {
            expected: format!("square operator and gram of size {n}"),
            found: format!("op {}x{}, gram {}x{}", op.rows(), op.cols(), gram.rows(), gram.cols()),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    eigensplit_f64(&op.to_f64(), &gram.to_f64(), tol)
}

pub(crate) fn eigensplit_f64(
    op: &DMatrix<f64>,
    gram: &DMatrix<f64>,
    tol: f64,
) -> Result<Vec<EigenCluster>, LinalgError> {
    let n = op.nrows();
    let chol = gram.clone().cholesky().ok_or(LinalgError::NotPositiveDefinite)?;
    let l = chol.l();
    let l_inv = l
        .clone()
        .try_inverse()
        .ok_or(LinalgError::NotPositiveDefinite)?;
    // M = L^T S L^{-T} is symmetric exactly when S is gram-self-adjoint
    let m = l.transpose() * op * l_inv.transpose();
    let residual = (&m - m.transpose()).amax();
    if residual >= tol {
        return Err(LinalgError::NotSelfAdjoint { residual, tol });
    }
    let m = (&m + m.transpose()) * 0.5;
    let eig = m.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        let value = eig.eigenvalues[i];
        match groups.last_mut() {
            Some(g) if value - eig.eigenvalues[*g.last().unwrap()] <= tol => g.push(i),
            Some(g) => {
                let gap = value - eig.eigenvalues[*g.last().unwrap()];
                if gap <= SEPARATION_FACTOR * tol {
                    return Err(LinalgError::IndistinguishableSpectrum { gap, tol });
                }
                groups.push(vec![i]);
            }
            None => groups.push(vec![i]),
        }
    }

    let back = l_inv.transpose();
    Ok(groups
        .into_iter()
        .map(|g| {
            let value = g.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / g.len() as f64;
            let vectors = g
                .iter()
                .map(|&i| {
                    let y: DVector<f64> = eig.eigenvectors.column(i).into_owned();
                    (&back * y).iter().copied().collect()
                })
                .collect();
            EigenCluster { value, vectors }
        })
        .collect())
}
