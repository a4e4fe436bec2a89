//! Subalgebra inclusions between the realified classical algebras.

use crate::lie::{
    self, build_so, build_sp, build_su, build_u, e_matrix, place_block, quaternion, skew_dim, skew_to_vec, Family,
    LieAlgebraBasis, LieError, Unit,
};
use crate::linalg::{int, Coordinatizer, Rational, RationalMatrix, SubspaceBasis};

/// An injective homomorphism `source -> ambient`, stored by the images of
/// the source basis.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: LieAlgebraBasis,
    ambient: LieAlgebraBasis,
    image: SubspaceBasis,
    image_matrices: Vec<RationalMatrix>,
    label: String,
}

impl Embedding {
    /// `images[i]` is the image of `source.basis()[i]`.
    pub fn new(
        source: LieAlgebraBasis,
        ambient: LieAlgebraBasis,
        images: Vec<RationalMatrix>,
        label: impl Into<String>,
    ) -> Result<Self, LieError> {
        if images.len() != source.dim() {
            return Err(LieError::NotInAlgebra);
        }
        let coords = ambient.coordinatizer();
        let mut vectors = Vec::with_capacity(images.len());
        for x in &images {
            if x.rows() != ambient.ambient_size() {
                return Err(LieError::SizeMismatch {
                    left: ambient.ambient_size(),
                    right: x.rows(),
                });
            }
            vectors.push(coords.coordinates(&skew_to_vec(x)).map_err(|_| LieError::NotInAlgebra)?);
        }
        let image = SubspaceBasis::new(ambient.dim(), vectors)?;
        Ok(Self {
            source,
            ambient,
            image,
            image_matrices: images,
            label: label.into(),
        })
    }

    pub fn identity(alg: &LieAlgebraBasis) -> Self {
        Self::new(alg.clone(), alg.clone(), alg.basis().to_vec(), alg.label().to_string())
            .expect("basis embeds in itself")
    }

    pub fn source(&self) -> &LieAlgebraBasis {
        &self.source
    }

    pub fn ambient(&self) -> &LieAlgebraBasis {
        &self.ambient
    }

    /// Coordinates of the image in the ambient basis.
    pub fn image(&self) -> &SubspaceBasis {
        &self.image
    }

    pub fn image_matrices(&self) -> &[RationalMatrix] {
        &self.image_matrices
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.source.dim()
    }

    /// The image in `E_ij` coordinates of `so(N)`, `N` the ambient matrix size.
    pub fn image_skew(&self) -> SubspaceBasis {
        SubspaceBasis::from_spanning(
            skew_dim(self.ambient.ambient_size()),
            self.image_matrices.iter().map(skew_to_vec),
        )
    }

    /// Image of a source element given in source coordinates.
    pub fn apply(&self, coords: &[Rational]) -> RationalMatrix {
        let n = self.ambient.ambient_size();
        let mut out = RationalMatrix::zeros(n, n);
        for (c, x) in coords.iter().zip(&self.image_matrices) {
            out.add_scaled(c, x);
        }
        out
    }

    /// Largest entry of `phi([b_i, b_j]) - [phi b_i, phi b_j]` over all basis
    /// pairs; exactly zero for a homomorphism.
    pub fn bracket_residual(&self) -> Result<Rational, LieError> {
        let src = self.source.coordinatizer();
        let d = self.dim();
        let mut worst = int(0);
        for i in 0..d {
            for j in i + 1..d {
                let br = self.source.basis()[i].commutator(&self.source.basis()[j]);
                let c = src
                    .coordinates(&skew_to_vec(&br))
                    .map_err(|_| LieError::NotInAlgebra)?;
                let lhs = self.apply(&c);
                let rhs = self.image_matrices[i].commutator(&self.image_matrices[j]);
                for x in lhs.sub(&rhs).entries() {
                    let a = crate::linalg::abs(x);
                    if a > worst {
                        worst = a;
                    }
                }
            }
        }
        Ok(worst)
    }

    pub fn preserves_brackets(&self) -> bool {
        matches!(self.bracket_residual(), Ok(r) if r == 0u32)
    }

    /// Exact closure of the image under the ambient bracket.
    pub fn image_is_closed(&self) -> bool {
        let img = Coordinatizer::new(&self.image_skew());
        let m = &self.image_matrices;
        (0..m.len()).all(|i| (i + 1..m.len()).all(|j| img.coordinates(&skew_to_vec(&m[i].commutator(&m[j]))).is_ok()))
    }
}

/// `source -> e1.ambient -> e2.ambient`.
pub fn compose(e1: &Embedding, e2: &Embedding) -> Result<Embedding, LieError> {
    if e1.ambient != e2.source {
        return Err(LieError::IncompatibleEmbeddings {
            left: e1.ambient.label().to_string(),
            right: e2.source.label().to_string(),
        });
    }
    let images = e1.image.vectors().iter().map(|c| e2.apply(c)).collect();
    let label = format!("{} < {}", e1.label, e2.ambient.label());
    Embedding::new(e1.source.clone(), e2.ambient.clone(), images, label)
}

fn chain_label(source: &LieAlgebraBasis, ambient: &LieAlgebraBasis) -> String {
    format!("{} < {}", source.label(), ambient.label())
}

/// `u(n)` in `so(2n)`: the realified matrices themselves.
pub fn embed_u_in_so(n: usize) -> Result<Embedding, LieError> {
    require(n >= 2, "u", n, "n >= 2")?;
    let source = build_u(n)?;
    let ambient = build_so(2 * n)?;
    let images = source.basis().to_vec();
    let label = chain_label(&source, &ambient);
    Embedding::new(source, ambient, images, label)
}

/// `su(n)` in `so(2n)`.
pub fn embed_su_in_so(n: usize) -> Result<Embedding, LieError> {
    require(n >= 2, "su", n, "n >= 2")?;
    let source = build_su(n)?;
    let ambient = build_so(2 * n)?;
    let images = source.basis().to_vec();
    let label = chain_label(&source, &ambient);
    Embedding::new(source, ambient, images, label)
}

/// `sp(n)` in `su(2n)`; both live in `so(4n)` with the same complex structure.
pub fn embed_sp_in_su(n: usize) -> Result<Embedding, LieError> {
    require(n >= 1, "sp", n, "n >= 1")?;
    let source = build_sp(n)?;
    let ambient = build_su(2 * n)?;
    let images = source.basis().to_vec();
    let label = chain_label(&source, &ambient);
    Embedding::new(source, ambient, images, label)
}

/// The algebra `sp(n) + sp(1)` realified in `so(4n)`: `sp(n)` first, then
/// left multiplication by `i, j, k` on every quaternion block.
pub fn build_spsp1(n: usize) -> Result<LieAlgebraBasis, LieError> {
    require(n >= 1, "spsp1", n, "n >= 1")?;
    let mut basis = lie::sp_basis(n);
    for u in [Unit::I, Unit::J, Unit::K] {
        let block = quaternion::left(u);
        let mut x = RationalMatrix::zeros(4 * n, 4 * n);
        for a in 0..n {
            place_block(&mut x, a, a, &block, false);
        }
        basis.push(x);
    }
    LieAlgebraBasis::from_basis(Family::SpSp1, n, 4 * n, basis, format!("sp({n})sp(1)"))
}

pub fn embed_spsp1_in_so(n: usize) -> Result<Embedding, LieError> {
    let source = build_spsp1(n)?;
    let ambient = build_so(4 * n)?;
    let images = source.basis().to_vec();
    let label = chain_label(&source, &ambient);
    Embedding::new(source, ambient, images, label)
}

fn pad(x: &RationalMatrix, size: usize) -> RationalMatrix {
    let mut out = RationalMatrix::zeros(size, size);
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            let v = x.get(i, j);
            if *v != 0u32 {
                out.set(i, j, v.clone());
            }
        }
    }
    out
}

/// Upper-left `so(k)` in `so(m)`.
pub fn embed_so_block(k: usize, m: usize) -> Result<Embedding, LieError> {
    require(k >= 2, "so", k, "k >= 2")?;
    require(k <= m, "so", k, "k <= m")?;
    let source = build_so(k)?;
    let ambient = build_so(m)?;
    let images = source.basis().iter().map(|x| pad(x, m)).collect();
    let label = chain_label(&source, &ambient);
    Embedding::new(source, ambient, images, label)
}

/// Upper-left `su(k)` in `su(m)`.
pub fn embed_su_block(k: usize, m: usize) -> Result<Embedding, LieError> {
    require(k >= 2, "su", k, "k >= 2")?;
    require(k <= m, "su", k, "k <= m")?;
    let source = build_su(k)?;
    let ambient = build_su(m)?;
    let images = source.basis().iter().map(|x| pad(x, 2 * m)).collect();
    let label = chain_label(&source, &ambient);
    Embedding::new(source, ambient, images, label)
}

/// `u(m)` in `su(m+1)` by `X -> diag(X, -tr X)`.
pub fn embed_u_in_su(m: usize) -> Result<Embedding, LieError> {
    require(m >= 1, "u", m, "m >= 1")?;
    let source = build_u(m)?;
    let ambient = build_su(m + 1)?;
    let size = 2 * m + 2;
    let images = source
        .basis()
        .iter()
        .map(|x| {
            let mut y = pad(x, size);
            // tr X = i s with s the sum of the imaginary diagonal parts
            let s = (0..m).fold(int(0), |acc, a| acc + x.get(2 * a + 1, 2 * a));
            y.set(2 * m, 2 * m + 1, s.clone());
            y.set(2 * m + 1, 2 * m, -s);
            y
        })
        .collect();
    let label = chain_label(&source, &ambient);
    Embedding::new(source, ambient, images, label)
}

/// Circle `diag(A, ..., A, 1)` in `SO(m)`, `m` odd.
pub fn embed_diag_circle(m: usize) -> Result<Embedding, LieError> {
    require(m >= 3 && m % 2 == 1, "circle", m, "odd m >= 3")?;
    let source = build_so(2)?;
    let ambient = build_so(m)?;
    let mut gen = RationalMatrix::zeros(m, m);
    for i in 0..(m - 1) / 2 {
        gen.add_scaled(&int(1), &e_matrix(m, 2 * i, 2 * i + 1));
    }
    let label = format!("so(2)diag < {}", ambient.label());
    Embedding::new(source, ambient, vec![gen], label)
}

fn require(ok: bool, family: &str, n: usize, requirement: &'static str) -> Result<(), LieError> {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::e_vector;

    #[test]
    fn unitary_dims() {
        assert_eq!(embed_u_in_so(2).unwrap().dim(), 4);
        assert_eq!(embed_su_in_so(3).unwrap().dim(), 8);
        assert!(embed_u_in_so(1).is_err());
    }

    #[test]
    fn symplectic_dims() {
        let e1 = embed_sp_in_su(1).unwrap();
        assert_eq!(e1.dim(), 3);
        assert_eq!(e1.image().dim(), e1.ambient().dim());
        assert_eq!(embed_sp_in_su(2).unwrap().dim(), 10);
        assert!(embed_sp_in_su(0).is_err());
    }

    #[test]
    fn spsp1_fills_so4() {
        let e = embed_spsp1_in_so(1).unwrap();
        assert_eq!(e.dim(), 6);
        assert_eq!(e.image().dim(), 6);
        assert_eq!(embed_spsp1_in_so(2).unwrap().dim(), 13);
    }

    #[test]
    fn so_blocks() {
        let e = embed_so_block(2, 3).unwrap();
        assert!(e.image_skew().same_space(&SubspaceBasis::new(3, vec![e_vector(3, 0, 1)]).unwrap()));
        assert_eq!(embed_so_block(4, 5).unwrap().dim(), 6);
        assert!(embed_so_block(5, 4).is_err());
        let id = embed_so_block(4, 4).unwrap();
        assert_eq!(id.image().dim(), 6);
    }

    #[test]
    fn diag_circle() {
        let e = embed_diag_circle(5).unwrap();
        let mut g = e_vector(5, 0, 1);
        g[crate::lie::skew_index(5, 2, 3)] = int(1);
        assert_eq!(e.image_skew().vectors()[0], g);
        assert!(embed_diag_circle(4).is_err());
        assert!(embed_diag_circle(1).is_err());
    }

    #[test]
    fn compose_with_identity() {
        let e = embed_u_in_so(3).unwrap();
        let id = Embedding::identity(e.ambient());
        let c = compose(&e, &id).unwrap();
        assert!(c.image().same_space(e.image()));
    }

    #[test]
    fn compose_rejects_mismatch() {
        let e = embed_u_in_so(3).unwrap();
        let f = embed_so_block(5, 7).unwrap();
        assert!(compose(&e, &f).is_err());
    }

    #[test]
    fn u_in_su_is_traceless_homomorphism() {
        let e = embed_u_in_su(2).unwrap();
        assert_eq!(e.dim(), 4);
        assert!(e.preserves_brackets());
    }
}
