//! Floating-point oracles, written independently of the exact code paths.

#![allow(dead_code)]

pub mod algebra;

use nalgebra::{DMatrix, SymmetricEigen};

use sublab::lie::vec_to_skew;
use sublab::linalg::{to_f64, Rational, SubspaceBasis};

fn skew_size(d: usize) -> usize {
    (1..).find(|n| n * (n - 1) / 2 >= d).unwrap()
}

fn to_skew_vec(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(m[(i, j)]);
        }
    }
    out
}

/// Orthonormal basis (columns) of a subspace of `so(n)` in E-coordinates.
pub fn orthonormal(space: &SubspaceBasis) -> DMatrix<f64> {
    let cols: Vec<Vec<f64>> = space.vectors().iter().map(|v| v.iter().map(to_f64).collect()).collect();
    let b = DMatrix::from_fn(space.ambient_dim(), cols.len(), |i, j| cols[j][i]);
    b.qr().q()
}

/// `ad(x)` restricted to `space`, for each `x` in `gens`, in an orthonormal
/// basis of `space`. Panics if `space` is not invariant.
pub fn action(gens: &[Vec<Rational>], space: &SubspaceBasis) -> Vec<DMatrix<f64>> {
    let n = skew_size(space.ambient_dim());
    let w = orthonormal(space);
    gens.iter()
        .map(|g| {
            let x = vec_to_skew(g, n).to_f64();
            let mut a = DMatrix::zeros(w.ncols(), w.ncols());
            for j in 0..w.ncols() {
                let y = vec_to_skew_f64(&w.column(j).iter().copied().collect::<Vec<_>>(), n);
                let img = to_skew_vec(&(&x * &y - &y * &x));
                let img = nalgebra::DVector::from_vec(img);
                let c = w.transpose() * &img;
                assert!((&w * &c - &img).norm() < 1e-8, "space not invariant");
                a.set_column(j, &c);
            }
            a
        })
        .collect()
}

fn vec_to_skew_f64(v: &[f64], n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            m[(i, j)] = v[k];
            m[(j, i)] = -v[k];
            k += 1;
        }
    }
    m
}

fn null_dim(columns: &[Vec<f64>]) -> usize {
    let d = columns.len();
    let rows = columns.first().map_or(0, Vec::len);
    let k = DMatrix::from_fn(rows, d, |i, j| columns[j][i]);
    let normal = k.transpose() * &k;
    let scale = normal.amax().max(1.0);
    SymmetricEigen::new(normal)
        .eigenvalues
        .iter()
        .filter(|&&e| e.abs() < 1e-9 * scale)
        .count()
}

fn sylvester_image(src: &[DMatrix<f64>], dst: &[DMatrix<f64>], t: &DMatrix<f64>) -> Vec<f64> {
    src.iter()
        .zip(dst)
        .flat_map(|(a, b)| (b * t - t * a).iter().copied().collect::<Vec<_>>())
        .collect()
}

/// `dim Hom(src, dst)` for two representations given by matching generator
/// lists.
pub fn hom_dim(src: &[DMatrix<f64>], dst: &[DMatrix<f64>]) -> usize {
    let (p, q) = (src[0].nrows(), dst[0].nrows());
    let mut cols = Vec::with_capacity(p * q);
    for i in 0..q {
        for j in 0..p {
            let mut t = DMatrix::zeros(q, p);
            t[(i, j)] = 1.0;
            cols.push(sylvester_image(src, dst, &t));
        }
    }
    null_dim(&cols)
}

/// Dimension of the symmetric part of the commutant, for an action written
/// in an orthonormal basis.
pub fn symmetric_commutant_dim(acts: &[DMatrix<f64>]) -> usize {
    let d = acts[0].nrows();
    let mut cols = Vec::new();
    for i in 0..d {
        for j in i..d {
            let mut t = DMatrix::zeros(d, d);
            t[(i, j)] = 1.0;
            t[(j, i)] = 1.0;
            cols.push(sylvester_image(acts, acts, &t));
        }
    }
    null_dim(&cols)
}

/// Eigenvalue multiplicities (ascending) of an operator self-adjoint for
/// `gram`.
pub fn eigen_multiplicities(op: &DMatrix<f64>, gram: &DMatrix<f64>, gap: f64) -> Vec<usize> {
    let l = gram.clone().cholesky().expect("positive definite gram").l();
    let m = l.transpose() * op * l.clone().try_inverse().unwrap().transpose();
    let m = (&m + m.transpose()) * 0.5;
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut mult = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for e in ev {
        if e - last > gap {
            mult.push(1);
        } else {
            *mult.last_mut().unwrap() += 1;
        }
        last = e;
    }
    mult.sort_unstable();
    mult
}
