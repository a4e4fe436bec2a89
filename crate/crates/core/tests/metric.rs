use nalgebra::{DMatrix, DVector};

use sublab::embeddings::{compose, embed_so_block, embed_spsp1_in_so};
use sublab::isotropy::{IsotypicDecomposition, DEFAULT_TOL};
use sublab::lie::skew_to_vec;
use sublab::linalg::{int, to_f64 as float, Rational};
use sublab::metric::*;

const SEEDS: [u64; 5] = [0, 1, 2, 3, 42];

fn rat(p: i64, q: i64) -> Rational {
    Rational::from_signeds(p, q)
}

fn ratios(s: &ChainScenario, seed: u64) -> (IsotypicDecomposition, Vec<Lambda>) {
    let g = induced_metric(s).unwrap();
    let d = decompose_chain(s, seed, DEFAULT_TOL).unwrap();
    let l = metric_constants(&g, &d).unwrap();
    (d, l)
}

fn to_f64(v: &[Rational]) -> DVector<f64> {
    DVector::from_iterator(v.len(), v.iter().map(float))
}

/// Least-squares projection onto the span of `basis`.
fn float_projection(basis: &[Vec<Rational>], v: &[Rational]) -> DVector<f64> {
    let cols: Vec<DVector<f64>> = basis.iter().map(|b| to_f64(b)).collect();
    let a = DMatrix::from_columns(&cols);
    let x = a.clone().svd(true, true).solve(&to_f64(v), 1e-12).unwrap();
    a * x
}

#[test]
fn sphere_chain_has_ratio_one_half() {
    for n in 3..=5 {
        let s = so_even_sphere(n, true).unwrap();
        let (d, l) = ratios(&s, 0);
        assert_eq!(d.dims(), vec![(n - 1) * (n - 2), 2 * (n - 1)]);
        assert_eq!(l.len(), 2);
        assert_eq!(l[0].ratio, 1u32);
        assert_eq!(l[1].ratio, rat(1, 2), "n = {n}");
    }
}

#[test]
fn su_chain_ratios() {
    for n in 3..=4 {
        let s = su_chain(n, false).unwrap();
        let (d, l) = ratios(&s, 0);
        let got: Vec<(usize, Rational)> = l.iter().map(|x| (x.dim, x.ratio.clone())).collect();
        let n_ = n as i64;
        assert_eq!(d.summands.len(), 3);
        assert_eq!(got[1], (1, rat(n_, 2 * n_ - 1)));
        assert_eq!(got[2], (4 * (n - 1), rat(1, 2)));
    }
    let three = ratios(&su_chain(3, false).unwrap(), 0).1;
    let four = ratios(&su_chain(4, false).unwrap(), 0).1;
    assert_eq!(three[1].ratio, rat(3, 5));
    assert_eq!(four[1].ratio, rat(4, 7));
}

#[test]
fn ratios_are_seed_independent() {
    let s = su_chain(3, true).unwrap();
    let base: Vec<Rational> = ratios(&s, SEEDS[0]).1.into_iter().map(|l| l.ratio).collect();
    for seed in &SEEDS[1..] {
        let r: Vec<Rational> = ratios(&s, *seed).1.into_iter().map(|l| l.ratio).collect();
        assert_eq!(r, base);
    }
}

#[test]
fn pairing_of_horizontal_vectors_is_minus_one_quarter() {
    let n = 3;
    let size = 4 * n;
    let (u, v) = (e_coord(size, 1, 4 * n - 3), e_coord(size, 3, 4 * n - 1));
    for base in [SoQuaternionicBase::UnitTangent, SoQuaternionicBase::Sphere, SoQuaternionicBase::Stiefel] {
        let s = so_quaternionic(n, base).unwrap();
        let g = induced_metric(&s).unwrap();
        assert_eq!(g.pair(&u, &v), rat(-1, 4));
        for seed in SEEDS {
            let d = decompose_chain(&s, seed, DEFAULT_TOL).unwrap();
            let home = |x: &[Rational]| d.summands.iter().position(|p| p.basis.contains(x)).unwrap();
            let (a, b) = (home(&u), home(&v));
            assert_ne!(a, b);
            assert!(d.equivalent(a, b));
            assert_eq!((d.summands[a].dim, d.summands[b].dim), (4 * n - 4, 4 * n - 4));
            let w = check_orthogonality(&g, &d.summands[a].basis, &d.summands[b].basis);
            assert!(!w.orthogonal);
        }
    }
}

#[test]
fn projection_matches_least_squares() {
    let n = 3;
    let s = so_quaternionic(n, SoQuaternionicBase::UnitTangent).unwrap();
    let k1 = embed_spsp1_in_so(n).unwrap().image_skew();
    let form = InducedForm::new(&k1);
    let u = e_coord(4 * n, 1, 4 * n - 3);
    let v = e_coord(4 * n, 3, 4 * n - 1);
    let exact = form.project_k1(&u);
    let approx = float_projection(k1.vectors(), &u);
    assert!((to_f64(&exact) - &approx).amax() < 1e-12);
    let ru = to_f64(&u) - approx;
    let rv = to_f64(&v) - float_projection(k1.vectors(), &v);
    assert!((ru.dot(&rv) + 0.25).abs() < 1e-12);
    // the form is Q minus Q on the k1 component
    let g = induced_metric(&s).unwrap();
    let pu = form.project_k1(&u);
    let pv = form.project_k1(&v);
    let q: Rational = u.iter().zip(&v).map(|(a, b)| a * b).sum();
    let qp: Rational = pu.iter().zip(&pv).map(|(a, b)| a * b).sum();
    assert_eq!(g.pair(&u, &v), q - qp);
}

#[test]
fn metric_is_positive_definite_with_exact_determinant() {
    for s in [so_even_sphere(3, true).unwrap(), su_chain(3, false).unwrap()] {
        let g = induced_metric(&s).unwrap();
        assert!(g.determinant > 0u32);
        assert_eq!(positive_definite_determinant(&g.gram).unwrap(), g.determinant);
    }
}

#[test]
fn ad_invariance_under_h() {
    for s in [
        so_even_sphere(3, true).unwrap(),
        so_even_sphere(4, true).unwrap(),
        su_chain(3, false).unwrap(),
        su_chain(3, true).unwrap(),
    ] {
        let g = induced_metric(&s).unwrap();
        assert_eq!(g.ad_invariance_residual, 0u32, "{}", s.name);
        assert!(g.is_ad_invariant());
    }
    let n = 3;
    let s = so_quaternionic(n, SoQuaternionicBase::Stiefel).unwrap();
    let g = induced_metric(&s).unwrap();
    let spsp1 = compose(&embed_spsp1_in_so(n - 1).unwrap(), &embed_so_block(4 * n - 4, 4 * n).unwrap()).unwrap();
    let sp_part: Vec<Vec<Rational>> = spsp1.image_matrices()[..(n - 1) * (2 * n - 1)]
        .iter()
        .map(skew_to_vec)
        .collect();
    assert_eq!(g.ad_residual(&sp_part).unwrap(), 0u32);
    // the left sp(1) factor does not preserve the induced form
    assert_eq!(g.ad_invariance_residual, rat(1, 2));
    assert!(g.ad_residual(s.h.vectors()).unwrap() > 0u32);
}

#[test]
fn condition_verdicts() {
    let cases: Vec<(ChainScenario, bool)> = vec![
        (so_even_sphere(3, true).unwrap(), true),
        (so_even_sphere(4, true).unwrap(), true),
        (so_even_sphere(5, true).unwrap(), true),
        (su_chain(3, false).unwrap(), true),
        (su_chain(3, true).unwrap(), true),
        (so_quaternionic(3, SoQuaternionicBase::Stiefel).unwrap(), true),
        (so_quaternionic(3, SoQuaternionicBase::UnitTangent).unwrap(), false),
        (so_quaternionic(3, SoQuaternionicBase::Sphere).unwrap(), false),
    ];
    for (s, expected) in &cases {
        let a = check_submersion_conditions(s, 0, DEFAULT_TOL).unwrap();
        let v = &a.verdict;
        assert_eq!(v.is_riemannian_submersion, *expected, "{}", s.name);
        if *expected {
            assert!(v.condition_i.holds && v.condition_ii.holds && v.condition_iii.holds, "{}", s.name);
            assert!(v.counterexample.is_none());
        } else {
            assert!(!v.condition_i.holds, "{}", s.name);
            let c = v.counterexample.as_ref().unwrap();
            assert_eq!(c.value, rat(-1, 4));
        }
    }
}

#[test]
fn unit_tangent_witnesses() {
    let s = so_quaternionic(3, SoQuaternionicBase::UnitTangent).unwrap();
    let v = check_submersion_conditions(&s, 0, DEFAULT_TOL).unwrap().verdict;
    let w: Vec<(&str, Vec<&str>)> = v
        .condition_i
        .witnesses
        .iter()
        .map(|w| (w.q.as_str(), w.splits_into.iter().map(String::as_str).collect()))
        .collect();
    assert_eq!(w, vec![("q3", vec!["p3", "p5"]), ("q4", vec!["p4", "p6"])]);
    assert_eq!(v.condition_i.l_dims, vec![1, 9, 9]);
}

#[test]
fn sphere_base_witness_splits_whole_module() {
    let n = 3;
    let s = so_quaternionic(n, SoQuaternionicBase::Sphere).unwrap();
    let v = check_submersion_conditions(&s, 0, DEFAULT_TOL).unwrap().verdict;
    assert_eq!(v.condition_i.l_dims, vec![4 * n - 2]);
    assert_eq!(v.condition_i.witnesses.len(), 1);
    let mut dims = v.condition_i.witnesses[0].split_dims.clone();
    dims.sort_unstable();
    assert_eq!(dims, vec![1, 1, 4 * n - 4]);
}

#[test]
fn trivial_k1_gives_q() {
    let s = so_even_sphere(3, true).unwrap().with_trivial_k1();
    let g = induced_metric(&s).unwrap();
    assert_eq!(g.gram, g.subspace.gram(None));
    let u = e_coord(6, 1, 5);
    assert_eq!(g.pair(&u, &u), int(1));
}
