use nalgebra::DMatrix;

use sublab::embeddings::*;
use sublab::lie::{build_so, quaternion, skew_dim, vec_to_skew, Unit};
use sublab::linalg::{int, RationalMatrix};

/// `dim { X in so(size) : [s, X] = 0 for all s }`, via the numerical rank of
/// the stacked commutator map.
fn float_centralizer_dim(size: usize, elements: &[RationalMatrix]) -> usize {
    let d = skew_dim(size);
    let mut map = DMatrix::<f64>::zeros(elements.len() * size * size, d);
    for col in 0..d {
        let mut e = vec![int(0); d];
        e[col] = int(1);
        let x = vec_to_skew(&e, size).to_f64();
        for (k, s) in elements.iter().enumerate() {
            let s = s.to_f64();
            let c = &s * &x - &x * &s;
            for (r, v) in c.iter().enumerate() {
                map[(k * size * size + r, col)] = *v;
            }
        }
    }
    let sv = map.svd(false, false).singular_values;
    let rank = sv.iter().filter(|&&v| v > 1e-9).count();
    d - rank
}

fn commutes_with_all(x: &RationalMatrix, elements: &[RationalMatrix]) -> bool {
    elements.iter().all(|s| s.commutator(x).is_zero())
}

fn complex_structure(n: usize) -> RationalMatrix {
    let mut j = RationalMatrix::zeros(2 * n, 2 * n);
    for a in 0..n {
        j.set(2 * a, 2 * a + 1, int(-1));
        j.set(2 * a + 1, 2 * a, int(1));
    }
    j
}

fn left_mult(n: usize, u: Unit) -> RationalMatrix {
    let block = quaternion::left(u);
    let mut x = RationalMatrix::zeros(4 * n, 4 * n);
    for a in 0..n {
        for i in 0..4 {
            for j in 0..4 {
                x.set(4 * a + i, 4 * a + j, block.get(i, j).clone());
            }
        }
    }
    x
}

#[test]
fn every_builder_is_a_homomorphism() {
    let mut all = Vec::new();
    for n in 2..=5 {
        all.push(embed_u_in_so(n).unwrap());
        all.push(embed_su_in_so(n).unwrap());
        all.push(embed_u_in_su(n).unwrap());
        all.push(embed_so_block(n, n + 2).unwrap());
        all.push(embed_su_block(n, n + 1).unwrap());
    }
    for n in 1..=3 {
        all.push(embed_sp_in_su(n).unwrap());
        all.push(embed_spsp1_in_so(n).unwrap());
    }
    for m in [3, 5, 7] {
        all.push(embed_diag_circle(m).unwrap());
    }
    for e in &all {
        assert!(e.preserves_brackets(), "{} does not preserve brackets", e.label());
        assert!(e.image_is_closed(), "{} image not closed", e.label());
        assert_eq!(e.image().dim(), e.source().dim(), "{} not injective", e.label());
    }
}

#[test]
fn compositions_along_a_chain() {
    let n = 3;
    let h = compose(
        &compose(&embed_spsp1_in_so(n - 1).unwrap(), &embed_so_block(4 * n - 4, 4 * n - 1).unwrap()).unwrap(),
        &embed_so_block(4 * n - 1, 4 * n).unwrap(),
    )
    .unwrap();
    assert!(h.preserves_brackets());
    assert_eq!(h.ambient().label(), build_so(12).unwrap().label());
    let su = compose(&embed_sp_in_su(2).unwrap(), &embed_su_block(4, 5).unwrap()).unwrap();
    assert!(su.preserves_brackets());
    assert!(compose(&embed_sp_in_su(2).unwrap(), &embed_so_block(4, 5).unwrap()).is_err());
}

#[test]
fn unitary_image_is_the_centralizer_of_the_complex_structure() {
    for n in 2..=5 {
        let j = complex_structure(n);
        let u = embed_u_in_so(n).unwrap();
        assert_eq!(float_centralizer_dim(2 * n, std::slice::from_ref(&j)), n * n);
        assert_eq!(u.dim(), n * n);
        for x in u.image_matrices() {
            assert!(commutes_with_all(x, std::slice::from_ref(&j)));
        }
    }
}

#[test]
fn symplectic_image_is_the_centralizer_of_left_multiplication() {
    for n in 1..=3 {
        let ls = [Unit::I, Unit::J, Unit::K].map(|u| left_mult(n, u)).to_vec();
        let sp = compose(&embed_sp_in_su(n).unwrap(), &embed_su_in_so(2 * n).unwrap()).unwrap();
        assert_eq!(float_centralizer_dim(4 * n, &ls), n * (2 * n + 1));
        for x in sp.image_matrices() {
            assert!(commutes_with_all(x, &ls));
        }
    }
}

#[test]
fn sp_and_sp1_factors_commute() {
    for n in 1..=3 {
        let alg = build_spsp1(n).unwrap();
        let (sp, sp1) = alg.basis().split_at(n * (2 * n + 1));
        assert_eq!(sp1.len(), 3);
        for a in sp {
            for b in sp1 {
                assert!(a.commutator(b).is_zero());
            }
        }
        // [L_i, L_j] = 2 L_k
        let k = sp1[0].commutator(&sp1[1]);
        assert!(k.sub(&sp1[2].scale(&int(2))).is_zero() || k.add(&sp1[2].scale(&int(2))).is_zero());
    }
}

#[test]
fn centralizer_of_sp1_in_so4n_is_sp() {
    for n in 1..=3 {
        let alg = build_spsp1(n).unwrap();
        let sp1 = &alg.basis()[n * (2 * n + 1)..];
        assert_eq!(float_centralizer_dim(4 * n, sp1), n * (2 * n + 1));
    }
}

#[test]
fn diagonal_circle_generator() {
    let e = embed_diag_circle(5).unwrap();
    let x = &e.image_matrices()[0];
    assert_eq!(*x.get(0, 1), int(1));
    assert_eq!(*x.get(2, 3), int(1));
    assert!(x.row(4).iter().all(|v| *v == 0u32));
    assert!(embed_diag_circle(4).is_err());
}

#[test]
fn trace_correction_in_u_to_su() {
    let e = embed_u_in_su(2).unwrap();
    for x in e.image_matrices() {
        // complex trace of the realified block matrix: sum of imaginary diagonal parts
        let s = (0..3).fold(int(0), |acc, a| acc + x.get(2 * a + 1, 2 * a));
        assert_eq!(s, 0u32);
    }
}

#[test]
fn parameter_errors() {
    assert!(embed_so_block(5, 4).is_err());
    assert!(embed_su_block(1, 3).is_err());
    assert!(embed_sp_in_su(0).is_err());
    assert!(build_spsp1(0).is_err());
}
