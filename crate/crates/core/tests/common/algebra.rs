//! Exact structure-constant checks shared by the property suites.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use sublab::embeddings::build_spsp1;
use sublab::lie::{build_so, build_sp, build_su, build_u, skew_to_vec, LieAlgebraBasis};
use sublab::linalg::{int, Rational, RationalMatrix};

type Sparse = Vec<(usize, Rational)>;

/// `[b_i, b_j]` in basis coordinates, nonzeros only, for `i < j`.
fn constants(alg: &LieAlgebraBasis) -> Vec<Vec<Sparse>> {
    let coords = alg.coordinatizer();
    let b = alg.basis();
    let d = alg.dim();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if j <= i {
                        return Vec::new();
                    }
                    let c = coords
                        .coordinates(&skew_to_vec(&b[i].commutator(&b[j])))
                        .expect("basis closes under brackets");
                    c.into_iter().enumerate().filter(|(_, x)| *x != 0u32).collect()
                })
                .collect()
        })
        .collect()
}

fn bracket_coords(c: &[Vec<Sparse>], i: usize, j: usize) -> Sparse {
    use std::cmp::Ordering::*;
    match i.cmp(&j) {
        Less => c[i][j].clone(),
        Greater => c[j][i].iter().map(|(k, x)| (*k, -x)).collect(),
        Equal => Vec::new(),
    }
}

fn add_bracket_of_combination(out: &mut [Rational], c: &[Vec<Sparse>], combo: &Sparse, k: usize) {
    for (m, x) in combo {
        for (l, y) in bracket_coords(c, *m, k) {
            out[l] += x * &y;
        }
    }
}

fn jacobi_at(c: &[Vec<Sparse>], d: usize, i: usize, j: usize, k: usize) -> bool {
    let mut out = vec![int(0); d];
    add_bracket_of_combination(&mut out, c, &bracket_coords(c, i, j), k);
    add_bracket_of_combination(&mut out, c, &bracket_coords(c, j, k), i);
    add_bracket_of_combination(&mut out, c, &bracket_coords(c, k, i), j);
    out.iter().all(|x| *x == 0u32)
}

/// `Q([b_i, b_j], b_k) + Q(b_j, [b_i, b_k]) = 0`
fn invariance_at(c: &[Vec<Sparse>], gram: &RationalMatrix, i: usize, j: usize, k: usize) -> bool {
    let mut s = int(0);
    for (m, x) in bracket_coords(c, i, j) {
        s += &x * gram.get(m, k);
    }
    for (m, x) in bracket_coords(c, i, k) {
        s += &x * gram.get(j, m);
    }
    s == 0u32
}

const EXHAUSTIVE_DIM: usize = 66;

pub fn check_algebra(alg: &LieAlgebraBasis, rng: &mut ChaCha8Rng) {
    let d = alg.dim();
    let c = constants(alg);
    let gram = alg.q_gram();
    assert!(gram.is_symmetric());
    if d <= EXHAUSTIVE_DIM {
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    assert!(invariance_at(&c, &gram, i, j, k), "{}: Q not ad-invariant at {i},{j},{k}", alg.label());
                    if i < j && j < k {
                        assert!(jacobi_at(&c, d, i, j, k), "{}: Jacobi fails at {i},{j},{k}", alg.label());
                    }
                }
            }
        }
    } else {
        for _ in 0..3000 {
            let (i, j, k) = (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d));
            assert!(jacobi_at(&c, d, i, j, k), "{}: Jacobi fails at {i},{j},{k}", alg.label());
            assert!(invariance_at(&c, &gram, i, j, k), "{}: Q not ad-invariant at {i},{j},{k}", alg.label());
        }
    }
}

pub fn all_algebras_up_to(size: usize) -> Vec<LieAlgebraBasis> {
    let mut out = Vec::new();
    for m in 2..=size {
        out.push(build_so(m).unwrap());
    }
    for m in 1..=size / 2 {
        out.push(build_u(m).unwrap());
        if m >= 2 {
            out.push(build_su(m).unwrap());
        }
    }
    for m in 1..=size / 4 {
        out.push(build_sp(m).unwrap());
        out.push(build_spsp1(m).unwrap());
    }
    out
}
