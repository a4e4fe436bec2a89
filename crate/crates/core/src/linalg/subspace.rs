use malachite_base::num::basic::traits::Zero;

use super::{dot, is_zero_vec, Echelon, LinalgError, Rational, RationalMatrix, SparseRow};

/// A linear subspace of `Q^ambient_dim` given by linearly independent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<Vec<Rational>>,
}

impl SubspaceBasis {
    /// Checks independence and lengths.
    pub fn new(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let mut e = Echelon::new(ambient_dim);
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(LinalgError::DimensionMismatch {
                    expected: format!("length {ambient_dim}"),
                    found: format!("length {}", v.len()),
                });
            }
            if !e.insert_dense(v) {
                return Err(LinalgError::Dependent);
            }
        }
        Ok(Self { ambient_dim, vectors })
    }

    pub(crate) fn from_independent_unchecked(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Self {
        Self { ambient_dim, vectors }
    }

    /// Keeps the first maximal independent subfamily of `vectors`, in order.
    pub fn from_spanning(ambient_dim: usize, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let mut e = Echelon::new(ambient_dim);
        let mut kept = Vec::new();
        for v in vectors {
            assert_eq!(v.len(), ambient_dim, "spanning vector has wrong length");
            if e.insert_dense(&v) {
                kept.push(v);
            }
        }
        Self { ambient_dim, vectors: kept }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, vectors: Vec::new() }
    }

    /// Standard basis of the whole space.
    pub fn full(ambient_dim: usize) -> Self {
        let vectors = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Rational::ZERO; ambient_dim];
                v[i] = Rational::from(1);
                v
            })
            .collect();
        Self { ambient_dim, vectors }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<Vec<Rational>> {
        self.vectors
    }

    /// `dim x ambient_dim` matrix with the basis vectors as rows.
    pub fn basis_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.dim(), self.ambient_dim, |i, j| self.vectors[i][j].clone())
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient_dim);
        for v in &self.vectors {
            e.insert_dense(v);
        }
        e
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.echelon().contains_dense(v)
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        let e = self.echelon();
        other.vectors.iter().all(|v| e.contains_dense(v))
    }

    pub fn same_space(&self, other: &SubspaceBasis) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// Canonical reduced-row-echelon basis; equal subspaces give equal output.
    pub fn canonical(&self) -> SubspaceBasis {
        let rref = self.echelon().rref();
        let vectors = rref.values().map(|r| r.to_dense(self.ambient_dim)).collect();
        Self { ambient_dim: self.ambient_dim, vectors }
    }

    /// Smallest coordinate index on which some vector of the subspace is nonzero.
    pub fn leading_index(&self) -> Option<usize> {
        self.echelon().pivot_columns().next()
    }

    /// Sum of two subspaces.
    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Self::from_spanning(
            self.ambient_dim,
            self.vectors.iter().chain(&other.vectors).cloned(),
        )
    }

    /// Vectors of `within` orthogonal to `self` under `gram` (standard dot
    /// product when `None`).
    pub fn orthogonal_complement_in(
        &self,
        within: &SubspaceBasis,
        gram: Option<&RationalMatrix>,
    ) -> SubspaceBasis {
        assert_eq!(self.ambient_dim, within.ambient_dim);
        let pairing = |a: &[Rational], b: &[Rational]| match gram {
            Some(g) => dot(a, &g.mul_vec(b)),
            None => dot(a, b),
        };
        // coefficients t with sum_k t_k <w_k, s_i> = 0 for all i
        let mut e = Echelon::new(within.dim());
        for s in &self.vectors {
            let row: Vec<Rational> = within.vectors.iter().map(|w| pairing(s, w)).collect();
            e.insert_dense(&row);
        }
        let coeffs = e.null_space();
        let vectors = coeffs
            .iter()
            .map(|t| combine(t, &within.vectors, self.ambient_dim))
            .collect();
        Self { ambient_dim: self.ambient_dim, vectors }
    }

    /// Intersection with another subspace.
    pub fn intersection(&self, other: &SubspaceBasis) -> SubspaceBasis {
        // sum a_i u_i - sum b_j v_j = 0
        let n = self.dim() + other.dim();
        let mut e = Echelon::new(n);
        for c in 0..self.ambient_dim {
            let row: Vec<Rational> = self
                .vectors
                .iter()
                .map(|u| u[c].clone())
                .chain(other.vectors.iter().map(|v| -v[c].clone()))
                .collect();
            e.insert(SparseRow::from_dense(&row));
        }
        let vectors = e
            .null_space()
            .iter()
            .map(|t| combine(&t[..self.dim()], &self.vectors, self.ambient_dim))
            .collect::<Vec<_>>();
        Self::from_spanning(self.ambient_dim, vectors)
    }

    /// Image of every basis vector under `f`, as a subspace of `target_dim`.
    pub fn map(&self, target_dim: usize, f: impl Fn(&[Rational]) -> Vec<Rational>) -> SubspaceBasis {
        Self::from_spanning(target_dim, self.vectors.iter().map(|v| f(v)))
    }

    /// Gram matrix of the basis under `gram` (standard dot product when `None`).
    pub fn gram(&self, gram: Option<&RationalMatrix>) -> RationalMatrix {
        let images: Vec<Vec<Rational>> = match gram {
            Some(g) => self.vectors.iter().map(|v| g.mul_vec(v)).collect(),
            None => self.vectors.clone(),
        };
        RationalMatrix::from_fn(self.dim(), self.dim(), |i, j| dot(&self.vectors[i], &images[j]))
    }
}

/// `sum_k t_k * vectors[k]`
pub(crate) fn combine(t: &[Rational], vectors: &[Vec<Rational>], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::ZERO; n];
    for (c, v) in t.iter().zip(vectors) {
        super::axpy(&mut out, c, v);
    }
    out
}

/// Precomputed left inverse of a basis: maps a vector in the span to its
/// coordinates, rejecting vectors outside the span.
#[derive(Clone, Debug)]
pub struct Coordinatizer {
    basis: SubspaceBasis,
    /// Nonzero entries of each column of the left inverse.
    columns: Vec<Vec<(usize, Rational)>>,
}

impl Coordinatizer {
    pub fn new(basis: &SubspaceBasis) -> Self {
        let b = basis.basis_matrix();
        let normal = b.mul(&b.transpose());
        let left_inverse = normal
            .solve(&b)
            .expect("Gram matrix of an independent family is invertible");
        let columns = (0..left_inverse.cols())
            .map(|k| {
                (0..left_inverse.rows())
                    .filter_map(|i| {
                        let x = left_inverse.get(i, k);
                        (*x != 0u32).then(|| (i, x.clone()))
                    })
                    .collect()
            })
            .collect();
        Self {
            basis: basis.clone(),
            columns,
        }
    }

    fn apply_left_inverse(&self, v: &[Rational]) -> Vec<Rational> {
        let mut c = vec![Rational::ZERO; self.basis.dim()];
        for (x, col) in v.iter().zip(&self.columns) {
            if *x != 0u32 {
                for (i, a) in col {
                    c[*i] += x * a;
                }
            }
        }
        c
    }

    pub fn basis(&self) -> &SubspaceBasis {
        &self.basis
    }

    pub fn coordinates(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        let c = self.apply_left_inverse(v);
        let back = combine(&c, self.basis.vectors(), self.basis.ambient_dim());
        if back.iter().zip(v).all(|(a, b)| a == b) {
            Ok(c)
        } else {
            Err(LinalgError::NotInSubspace)
        }
    }

    /// Coordinates without the membership check; returns the coordinates of
    /// the standard-orthogonal projection onto the span.
    pub fn projected_coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        self.apply_left_inverse(v)
    }
}

/// Gram-orthogonal projection of `v` onto `target`.
pub fn orthogonal_projection(
    target: &SubspaceBasis,
    gram: &RationalMatrix,
    v: &[Rational],
) -> Result<Vec<Rational>, LinalgError> {
    let n = target.ambient_dim();
    if gram.rows() != n || gram.cols() != n || v.len() != n {
        return Err(LinalgError::DimensionMismatch {
            expected: format!("ambient dimension {n}"),
            found: format!("gram {}x{}, vector {}", gram.rows(), gram.cols(), v.len()),
        });
    }
    if target.is_zero() {
        return Ok(vec![Rational::ZERO; n]);
    }
    let b = target.basis_matrix();
    let gb: Vec<Vec<Rational>> = target.vectors().iter().map(|u| gram.mul_vec(u)).collect();
    let normal = RationalMatrix::from_fn(target.dim(), target.dim(), |i, j| dot(b.row(i), &gb[j]));
    let rhs_vals: Vec<Rational> = gb.iter().map(|g| dot(g, v)).collect();
    let rhs = RationalMatrix::from_columns(target.dim(), &[rhs_vals]);
    let c = normal.solve(&rhs).ok_or(LinalgError::NotPositiveDefinite)?;
    let coeffs = c.column(0);
    let out = combine(&coeffs, target.vectors(), n);
    debug_assert!(!is_zero_vec(v) || is_zero_vec(&out));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn projection_fixes_target_and_kills_complement() {
        let t = SubspaceBasis::new(3, vec![v(&[1, 1, 0])]).unwrap();
        let g = RationalMatrix::identity(3);
        assert_eq!(orthogonal_projection(&t, &g, &v(&[2, 2, 0])).unwrap(), v(&[2, 2, 0]));
        assert_eq!(orthogonal_projection(&t, &g, &v(&[1, -1, 7])).unwrap(), v(&[0, 0, 0]));
        let p = orthogonal_projection(&t, &g, &v(&[1, 0, 0])).unwrap();
        assert_eq!(p, vec![frac(1, 2), frac(1, 2), int(0)]);
    }

    #[test]
    fn degenerate_gram_is_rejected() {
        let t = SubspaceBasis::new(2, vec![v(&[1, 0])]).unwrap();
        let g = RationalMatrix::from_i64(2, 2, &[0, 0, 0, 1]).unwrap();
        assert_eq!(
            orthogonal_projection(&t, &g, &v(&[1, 1])),
            Err(LinalgError::NotPositiveDefinite)
        );
    }

    #[test]
    fn complement_and_intersection() {
        let all = SubspaceBasis::full(3);
        let a = SubspaceBasis::new(3, vec![v(&[1, 0, 0])]).unwrap();
        let perp = a.orthogonal_complement_in(&all, None);
        assert_eq!(perp.dim(), 2);
        assert!(perp.vectors().iter().all(|w| w[0] == 0u32));
        let b = SubspaceBasis::new(3, vec![v(&[1, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let i = perp.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn dependent_vectors_rejected() {
        assert_eq!(
            SubspaceBasis::new(2, vec![v(&[1, 2]), v(&[2, 4])]),
            Err(LinalgError::Dependent)
        );
    }

    #[test]
    fn coordinates_round_trip() {
        let b = SubspaceBasis::new(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let c = Coordinatizer::new(&b);
        assert_eq!(c.coordinates(&v(&[1, 3, 2])).unwrap(), v(&[1, 2]));
        assert!(c.coordinates(&v(&[1, 0, 0])).is_err());
    }
}
