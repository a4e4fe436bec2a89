//! Compact classical matrix Lie algebras, realified into `so(N)`.
//!
//! Every element is stored as a real skew-symmetric `N x N` matrix:
//!
//! * `so(m)`: basis `E_ij` (`i < j`, lexicographic), `+1` at `(i, j)` and
//!   `-1` at `(j, i)`.
//! * `u(m)`, `su(m)`: a complex entry `x + iy` becomes the block
//!   `[[x, -y], [y, x]]`, so `N = 2m`. Basis: for each `a < b`
//!   (lexicographic) the real part `e_ab - e_ba` then the imaginary part
//!   `i(e_ab + e_ba)`; then the diagonal, `i e_aa` for `u` and
//!   `i(e_aa - e_{a+1,a+1})` for `su`.
//! * `sp(m)`: a quaternion entry `q` acts on the block coordinates
//!   `(1, i, j, k)` as right multiplication by `conj(q)`, so `N = 4m` and the
//!   complex structure used for `su(2m)` is left multiplication by `i`. Basis:
//!   for each `a`, the units `i, j, k` on the diagonal block `(a, a)`, then for
//!   each `b > a` the units `1, i, j, k` in block `(a, b)`.
//!
//! The invariant form is `Q(X, Y) = -1/2 tr(XY)` on the realified matrices.
//! In the `E_ij` coordinates of `so(N)` this is the standard dot product.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{frac, int, Coordinatizer, LinalgError, Rational, RationalMatrix, SubspaceBasis};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LieError {
    #[error("invalid parameter for {family}: {n} (need {requirement})")]
    InvalidParameter {
        family: String,
        n: usize,
        requirement: &'static str,
    },
    #[error("size mismatch: {left}x{left} vs {right}x{right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("subspace is not invariant under the operator; residual {residual:?}")]
    NotInvariant { residual: Vec<String> },
    #[error("element does not lie in the algebra")]
    NotInAlgebra,
    #[error("cannot compose: {left} is not {right}")]
    IncompatibleEmbeddings { left: String, right: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    So,
    Su,
    U,
    Sp,
    /// `sp(n) + sp(1)` acting on `H^n` from both sides.
    SpSp1,
    /// One-dimensional algebra, e.g. a circle subgroup.
    Circle,
}

impl Family {
    pub fn classical_dim(self, n: usize) -> usize {
        match self {
            Family::So => n * n.saturating_sub(1) / 2,
            Family::Su => (n * n).saturating_sub(1),
            Family::U => n * n,
            Family::Sp => n * (2 * n + 1),
            Family::SpSp1 => n * (2 * n + 1) + 3,
            Family::Circle => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::So => "so",
            Family::Su => "su",
            Family::U => "u",
            Family::Sp => "sp",
            Family::SpSp1 => "spsp1",
            Family::Circle => "circle",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Dimension of `so(n)`, i.e. the length of `E_ij` coordinate vectors.
pub fn skew_dim(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of `E_ij` (`i < j`, 0-based) in the lexicographic basis of `so(n)`.
pub fn skew_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Upper-triangle coordinates of a skew-symmetric matrix.
pub fn skew_to_vec(x: &RationalMatrix) -> Vec<Rational> {
    let n = x.rows();
    let mut v = Vec::with_capacity(skew_dim(n));
    for i in 0..n {
        for j in i + 1..n {
            v.push(x.get(i, j).clone());
        }
    }
    v
}

pub fn vec_to_skew(v: &[Rational], n: usize) -> RationalMatrix {
    assert_eq!(v.len(), skew_dim(n));
    let mut m = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = &v[skew_index(n, i, j)];
            if *x != 0u32 {
                m.set(i, j, x.clone());
                m.set(j, i, -x.clone());
            }
        }
    }
    m
}

/// `E_ij` in `so(n)`, 0-based indices, `i != j`.
pub fn e_matrix(n: usize, i: usize, j: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    m.set(i, j, int(1));
    m.set(j, i, int(-1));
    m
}

/// `E_ij` coordinates in `so(n)`, 0-based indices, `i < j`.
pub fn e_vector(n: usize, i: usize, j: usize) -> Vec<Rational> {
    let mut v = vec![int(0); skew_dim(n)];
    v[skew_index(n, i, j)] = int(1);
    v
}

pub fn bracket(x: &RationalMatrix, y: &RationalMatrix) -> Result<RationalMatrix, LieError> {
    check_sizes(x, y)?;
    Ok(x.commutator(y))
}

/// `Q(X, Y) = -1/2 tr(XY)`.
pub fn form_q(x: &RationalMatrix, y: &RationalMatrix) -> Result<Rational, LieError> {
    check_sizes(x, y)?;
    let n = x.rows();
    let mut tr = int(0);
    for i in 0..n {
        for k in 0..n {
            let a = x.get(i, k);
            if *a != 0u32 {
                let b = y.get(k, i);
                if *b != 0u32 {
                    tr += a * b;
                }
            }
        }
    }
    Ok(tr * frac(-1, 2))
}

fn check_sizes(x: &RationalMatrix, y: &RationalMatrix) -> Result<(), LieError> {
    if !x.is_square() || !y.is_square() || x.rows() != y.rows() {
        return Err(LieError::SizeMismatch {
            left: x.rows(),
            right: y.rows(),
        });
    }
    Ok(())
}

/// Bracket of two elements given in `E_ij` coordinates of `so(n)`.
pub fn bracket_vec(n: usize, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    skew_to_vec(&vec_to_skew(a, n).commutator(&vec_to_skew(b, n)))
}

/// Matrix of `v -> [X, v]` on `on` (given in `E_ij` coordinates), in the
/// basis of `on`.
pub fn ad_operator(x: &RationalMatrix, on: &SubspaceBasis) -> Result<RationalMatrix, LieError> {
    ad_operator_with(x, &Coordinatizer::new(on))
}

pub fn ad_operator_with(x: &RationalMatrix, coords: &Coordinatizer) -> Result<RationalMatrix, LieError> {
    let n = x.rows();
    let on = coords.basis();
    if on.ambient_dim() != skew_dim(n) {
        return Err(LieError::SizeMismatch {
            left: n,
            right: on.ambient_dim(),
        });
    }
    let mut columns = Vec::with_capacity(on.dim());
    for v in on.vectors() {
        let image = skew_to_vec(&x.commutator(&vec_to_skew(v, n)));
        match coords.coordinates(&image) {
            Ok(c) => columns.push(c),
            Err(_) => {
                let proj = coords.projected_coordinates(&image);
                let mut residual = image.clone();
                for (c, b) in proj.iter().zip(on.vectors()) {
                    crate::linalg::axpy(&mut residual, &-c.clone(), b);
                }
                return Err(LieError::NotInvariant {
                    residual: residual.iter().map(ToString::to_string).collect(),
                });
            }
        }
    }
    Ok(RationalMatrix::from_columns(on.dim(), &columns))
}

/// A concrete matrix Lie algebra with an ordered basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraBasis {
    family: Family,
    n: usize,
    ambient_size: usize,
    basis: Vec<RationalMatrix>,
    label: String,
}

impl LieAlgebraBasis {
    /// Wraps an explicit basis; checks skew-symmetry and independence.
    pub fn from_basis(
        family: Family,
        n: usize,
        ambient_size: usize,
        basis: Vec<RationalMatrix>,
        label: impl Into<String>,
    ) -> Result<Self, LieError> {
        for b in &basis {
            if b.rows() != ambient_size || !b.is_skew_symmetric() {
                return Err(LieError::NotInAlgebra);
            }
        }
        let alg = Self {
            family,
            n,
            ambient_size,
            basis,
            label: label.into(),
        };
        SubspaceBasis::new(skew_dim(ambient_size), alg.basis.iter().map(skew_to_vec).collect())?;
        Ok(alg)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient_size(&self) -> usize {
        self.ambient_size
    }

    pub fn basis(&self) -> &[RationalMatrix] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The algebra as a subspace of `so(ambient_size)` in `E_ij` coordinates.
    pub fn as_subspace(&self) -> SubspaceBasis {
        SubspaceBasis::from_spanning(skew_dim(self.ambient_size), self.basis.iter().map(skew_to_vec))
    }

    pub fn coordinatizer(&self) -> Coordinatizer {
        Coordinatizer::new(&self.as_subspace())
    }

    /// Coordinates of `x` in this basis.
    pub fn coordinates(&self, x: &RationalMatrix) -> Result<Vec<Rational>, LieError> {
        if x.rows() != self.ambient_size {
            return Err(LieError::SizeMismatch {
                left: self.ambient_size,
                right: x.rows(),
            });
        }
        self.coordinatizer()
            .coordinates(&skew_to_vec(x))
            .map_err(|_| LieError::NotInAlgebra)
    }

    pub fn element(&self, coords: &[Rational]) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.ambient_size, self.ambient_size);
        for (c, b) in coords.iter().zip(&self.basis) {
            out.add_scaled(c, b);
        }
        out
    }

    /// Exact bracket closure: every `[b_i, b_j]` lies in the span.
    pub fn is_closed(&self) -> bool {
        let coords = self.coordinatizer();
        (0..self.dim()).all(|i| {
            (i + 1..self.dim()).all(|j| {
                coords
                    .coordinates(&skew_to_vec(&self.basis[i].commutator(&self.basis[j])))
                    .is_ok()
            })
        })
    }

    /// Structure constants `c_ij^k` with `[b_i, b_j] = sum_k c_ij^k b_k`.
    pub fn structure_constants(&self) -> Result<Vec<Vec<Vec<Rational>>>, LieError> {
        let coords = self.coordinatizer();
        let d = self.dim();
        let mut out = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            out[i][i] = vec![int(0); d];
            for j in i + 1..d {
                let br = self.basis[i].commutator(&self.basis[j]);
                let c = coords
                    .coordinates(&skew_to_vec(&br))
                    .map_err(|_| LieError::NotInAlgebra)?;
                out[j][i] = c.iter().map(|x| -x).collect();
                out[i][j] = c;
            }
        }
        Ok(out)
    }

    /// Gram matrix of `Q` on the basis.
    pub fn q_gram(&self) -> RationalMatrix {
        self.as_subspace_unchecked().gram(None)
    }

    fn as_subspace_unchecked(&self) -> SubspaceBasis {
        SubspaceBasis::from_spanning(skew_dim(self.ambient_size), self.basis.iter().map(skew_to_vec))
    }
}

fn require(family: &str, n: usize, ok: bool, requirement: &'static str) -> Result<(), LieError> {
    if ok {
        Ok(())
    } else {
        Err(LieError::InvalidParameter {
            family: family.to_string(),
            n,
            requirement,
        })
    }
}

pub fn build_so(m: usize) -> Result<LieAlgebraBasis, LieError> {
    require("so", m, m >= 2, "m >= 2")?;
    let mut basis = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            basis.push(e_matrix(m, i, j));
        }
    }
    Ok(LieAlgebraBasis {
        family: Family::So,
        n: m,
        ambient_size: m,
        basis,
        label: format!("so({m})"),
    })
}

/// Realifies an `m x m` complex matrix given as `(row, col, re, im)` entries.
pub(crate) fn realify_complex(m: usize, entries: &[(usize, usize, Rational, Rational)]) -> RationalMatrix {
    let mut out = RationalMatrix::zeros(2 * m, 2 * m);
    for (a, b, x, y) in entries {
        let (r, c) = (2 * a, 2 * b);
        *out.get_mut(r, c) += x;
        *out.get_mut(r, c + 1) -= y;
        *out.get_mut(r + 1, c) += y;
        *out.get_mut(r + 1, c + 1) += x;
    }
    out
}

fn unitary_off_diagonal(m: usize) -> Vec<RationalMatrix> {
    let mut basis = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            basis.push(realify_complex(
                m,
                &[(a, b, int(1), int(0)), (b, a, int(-1), int(0))],
            ));
            basis.push(realify_complex(
                m,
                &[(a, b, int(0), int(1)), (b, a, int(0), int(1))],
            ));
        }
    }
    basis
}

pub fn build_su(m: usize) -> Result<LieAlgebraBasis, LieError> {
    require("su", m, m >= 2, "m >= 2")?;
    let mut basis = unitary_off_diagonal(m);
    for a in 0..m - 1 {
        basis.push(realify_complex(
            m,
            &[(a, a, int(0), int(1)), (a + 1, a + 1, int(0), int(-1))],
        ));
    }
    Ok(LieAlgebraBasis {
        family: Family::Su,
        n: m,
        ambient_size: 2 * m,
        basis,
        label: format!("su({m})"),
    })
}

pub fn build_u(m: usize) -> Result<LieAlgebraBasis, LieError> {
    require("u", m, m >= 1, "m >= 1")?;
    let mut basis = unitary_off_diagonal(m);
    for a in 0..m {
        basis.push(realify_complex(m, &[(a, a, int(0), int(1))]));
    }
    Ok(LieAlgebraBasis {
        family: Family::U,
        n: m,
        ambient_size: 2 * m,
        basis,
        label: format!("u({m})"),
    })
}

pub fn build_sp(m: usize) -> Result<LieAlgebraBasis, LieError> {
    require("sp", m, m >= 1, "m >= 1")?;
    let basis = sp_basis(m);
    Ok(LieAlgebraBasis {
        family: Family::Sp,
        n: m,
        ambient_size: 4 * m,
        basis,
        label: format!("sp({m})"),
    })
}

pub(crate) fn sp_basis(m: usize) -> Vec<RationalMatrix> {
    let n = 4 * m;
    let mut basis = Vec::new();
    for a in 0..m {
        for u in [Unit::I, Unit::J, Unit::K] {
            let mut x = RationalMatrix::zeros(n, n);
            place_block(&mut x, a, a, &quaternion::conj_right(u), false);
            basis.push(x);
        }
        for b in a + 1..m {
            for u in Unit::ALL {
                let block = quaternion::conj_right(u);
                let mut x = RationalMatrix::zeros(n, n);
                place_block(&mut x, a, b, &block, false);
                place_block(&mut x, b, a, &block.transpose(), true);
                basis.push(x);
            }
        }
    }
    basis
}

/// Writes `block` (or `-block`) at 4x4 block position `(a, b)`.
pub(crate) fn place_block(x: &mut RationalMatrix, a: usize, b: usize, block: &RationalMatrix, negate: bool) {
    for i in 0..4 {
        for j in 0..4 {
            let v = block.get(i, j);
            if *v != 0u32 {
                x.set(4 * a + i, 4 * b + j, if negate { -v.clone() } else { v.clone() });
            }
        }
    }
}

pub use quaternion::Unit;

/// Real 4x4 matrices of quaternion multiplication on coordinates `(1, i, j, k)`.
pub mod quaternion {
    use crate::linalg::{int, RationalMatrix};

    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub enum Unit {
        One,
        I,
        J,
        K,
    }

    impl Unit {
        pub const ALL: [Unit; 4] = [Unit::One, Unit::I, Unit::J, Unit::K];

        fn index(self) -> usize {
            self as usize
        }
    }

    /// Product of basis units: `(sign, unit)`.
    pub fn mul(a: Unit, b: Unit) -> (i64, Unit) {
        use Unit::*;
        match (a, b) {
            (One, x) | (x, One) => (1, x),
            (I, I) | (J, J) | (K, K) => (-1, One),
            (I, J) => (1, K),
            (J, I) => (-1, K),
            (J, K) => (1, I),
            (K, J) => (-1, I),
            (K, I) => (1, J),
            (I, K) => (-1, J),
        }
    }

    fn matrix(f: impl Fn(Unit) -> (i64, Unit)) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(4, 4);
        for e in Unit::ALL {
            let (s, out) = f(e);
            m.set(out.index(), e.index(), int(s));
        }
        m
    }

    /// `x -> u x`
    pub fn left(u: Unit) -> RationalMatrix {
        matrix(|e| mul(u, e))
    }

    /// `x -> x u`
    pub fn right(u: Unit) -> RationalMatrix {
        matrix(|e| mul(e, u))
    }

    /// `x -> x conj(u)`
    pub fn conj_right(u: Unit) -> RationalMatrix {
        let r = right(u);
        if u == Unit::One {
            r
        } else {
            r.scale(&int(-1))
        }
    }
}
