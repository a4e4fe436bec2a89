//! Chains `h < l < k2 < g` with a second subalgebra `k1`, the metric on
//! `k2/h` pulled back from the normal metric on `g/k1`, and the three
//! conditions under which `k2/h -> k2/l` is a Riemannian submersion.

use std::cmp::Reverse;

use serde::Serialize;
use thiserror::Error;

use crate::embeddings::{
    compose, embed_so_block, embed_sp_in_su, embed_spsp1_in_so, embed_su_block, embed_su_in_so, embed_u_in_so,
    embed_u_in_su, Embedding,
};
use crate::isotropy::{
    decompose_parts, intertwiners, irreducible_decomposition, matrix_size, reductive_complement, IsotropyError,
    IsotypicDecomposition, Representation, SummandType,
};
use crate::lie::{ad_operator_with, skew_index, vec_to_skew, LieError};
use crate::linalg::{abs, dot, int, Coordinatizer, LinalgError, Rational, RationalMatrix, SubspaceBasis};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MetricError {
    #[error(transparent)]
    Isotropy(#[from] IsotropyError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("induced form is not positive definite (pivot {pivot} is {value})")]
    NotPositiveDefinite { pivot: usize, value: String },
    #[error("metric restricted to summand p{summand} is not a multiple of Q (class {class})")]
    NotProportional { summand: usize, class: usize },
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

/// Labels of the five algebras of a chain.
#[derive(Clone, Debug, Serialize)]
pub struct ChainLabels {
    pub g: String,
    pub k1: String,
    pub k2: String,
    pub h: String,
    pub l: String,
}

/// All algebras of a chain as subspaces of `so(N)` in `E_ij` coordinates.
#[derive(Clone, Debug)]
pub struct ChainScenario {
    pub name: String,
    pub n: usize,
    pub size: usize,
    pub g: SubspaceBasis,
    pub k1: SubspaceBasis,
    pub k2: SubspaceBasis,
    pub h: SubspaceBasis,
    pub l: SubspaceBasis,
    pub labels: ChainLabels,
    pub note: String,
}

impl ChainScenario {
    /// Builds a scenario from embeddings that all land in `g`.
    pub fn from_embeddings(
        name: impl Into<String>,
        n: usize,
        g: &Embedding,
        k1: &Embedding,
        k2: &Embedding,
        h: &Embedding,
        l: &Embedding,
        note: impl Into<String>,
    ) -> Result<Self, MetricError> {
        let size = g.ambient().ambient_size();
        for e in [k1, k2, h, l] {
            if e.ambient() != g.ambient() {
                return Err(MetricError::InvalidScenario(format!(
                    "{} does not land in {}",
                    e.label(),
                    g.ambient().label()
                )));
            }
        }
        let s = Self {
            name: name.into(),
            n,
            size,
            g: g.image_skew(),
            k1: k1.image_skew(),
            k2: k2.image_skew(),
            h: h.image_skew(),
            l: l.image_skew(),
            labels: ChainLabels {
                g: g.ambient().label().to_string(),
                k1: k1.source().label().to_string(),
                k2: k2.source().label().to_string(),
                h: h.source().label().to_string(),
                l: l.source().label().to_string(),
            },
            note: note.into(),
        };
        s.validate()?;
        Ok(s)
    }

    /// `h < l < k2 < g` and `k1 < g`, exactly.
    pub fn validate(&self) -> Result<(), MetricError> {
        let checks = [
            (&self.l, &self.h, "h < l"),
            (&self.k2, &self.l, "l < k2"),
            (&self.g, &self.k2, "k2 < g"),
            (&self.g, &self.k1, "k1 < g"),
        ];
        for (big, small, what) in checks {
            if !big.contains_subspace(small) {
                return Err(MetricError::InvalidScenario(format!("{what} fails")));
            }
        }
        Ok(())
    }

    /// `h < l < k2 < g` as a label.
    pub fn chain_label(&self) -> String {
        format!(
            "{} < {} < {} < {}",
            self.labels.h, self.labels.l, self.labels.k2, self.labels.g
        )
    }

    /// Fiber directions: complement of `h` in `l`.
    pub fn m1(&self) -> Result<SubspaceBasis, MetricError> {
        Ok(reductive_complement(&self.l, &self.h)?)
    }

    /// Base directions: complement of `l` in `k2`.
    pub fn m2(&self) -> Result<SubspaceBasis, MetricError> {
        Ok(reductive_complement(&self.k2, &self.l)?)
    }

    /// Same chain with `k1 = 0`, so the pulled-back metric is `Q` itself.
    pub fn with_trivial_k1(&self) -> Self {
        let mut s = self.clone();
        s.k1 = SubspaceBasis::zero(self.g.ambient_dim());
        s.labels.k1 = "0".into();
        s
    }
}

fn require_n(n: usize, min: usize, what: &str) -> Result<(), MetricError> {
    if n < min {
        Err(MetricError::InvalidScenario(format!("{what} needs n >= {min}, got {n}")))
    } else {
        Ok(())
    }
}

/// `SO(2n)/U(n) = SO(2n-1)/U(n-1)`, `L = SO(2n-2)`; `unitary = false`
/// replaces `U` by `SU`.
pub fn so_even_sphere(n: usize, unitary: bool) -> Result<ChainScenario, MetricError> {
    require_n(n, 3, "SO(2n) sphere chain")?;
    let g = Embedding::identity(&crate::lie::build_so(2 * n)?);
    let to_g = embed_so_block(2 * n - 1, 2 * n)?;
    let l_in_k2 = embed_so_block(2 * n - 2, 2 * n - 1)?;
    let (k1, h_in_l) = if unitary {
        (embed_u_in_so(n)?, embed_u_in_so(n - 1)?)
    } else {
        (embed_su_in_so(n)?, embed_su_in_so(n - 1)?)
    };
    let l = compose(&l_in_k2, &to_g)?;
    let h = compose(&compose(&h_in_l, &l_in_k2)?, &to_g)?;
    let name = if unitary { "so2n-u-sphere" } else { "so2n-su-sphere" };
    ChainScenario::from_embeddings(name, n, &g, &k1, &to_g, &h, &l, "base S^{2n-2}")
}

/// `SU(2n)/Sp(n) = SU(2n-1)/Sp(n-1)`, `L = SU(2n-2)` (sphere) or
/// `L = U(2n-2)` (projective space).
pub fn su_chain(n: usize, projective: bool) -> Result<ChainScenario, MetricError> {
    require_n(n, 2, "SU(2n) chain")?;
    let g = Embedding::identity(&crate::lie::build_su(2 * n)?);
    let k1 = embed_sp_in_su(n)?;
    let to_g = embed_su_block(2 * n - 1, 2 * n)?;
    let su_l = embed_su_block(2 * n - 2, 2 * n - 1)?;
    let h = compose(&compose(&embed_sp_in_su(n - 1)?, &su_l)?, &to_g)?;
    let (l, name, note) = if projective {
        (
            compose(&embed_u_in_su(2 * n - 2)?, &to_g)?,
            "su2n-cp",
            "base CP^{2n-2}",
        )
    } else {
        (compose(&su_l, &to_g)?, "su2n-sphere", "base S^{4n-3}")
    };
    ChainScenario::from_embeddings(name, n, &g, &k1, &to_g, &h, &l, note)
}

/// Which `L` in the `SO(4n)/Sp(n)Sp(1)` chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SoQuaternionicBase {
    /// `L = SO(4n-2)`, base `S^{4n-2}`.
    Sphere,
    /// `L = SO(4n-3)`, base the unit tangent bundle of `S^{4n-2}`.
    UnitTangent,
    /// `L = SO(4n-4)`, base `V_3(R^{4n-1})`.
    Stiefel,
}

impl SoQuaternionicBase {
    pub fn l_size(self, n: usize) -> usize {
        match self {
            Self::Sphere => 4 * n - 2,
            Self::UnitTangent => 4 * n - 3,
            Self::Stiefel => 4 * n - 4,
        }
    }
}

/// `SO(4n)/Sp(n)Sp(1) = SO(4n-1)/Sp(n-1)Sp(1)` with `h = sp(n-1)sp(1)`
/// inside the upper-left `so(4n-4)`.
pub fn so_quaternionic(n: usize, base: SoQuaternionicBase) -> Result<ChainScenario, MetricError> {
    require_n(n, 2, "SO(4n) chain")?;
    let g = Embedding::identity(&crate::lie::build_so(4 * n)?);
    let k1 = embed_spsp1_in_so(n)?;
    let to_g = embed_so_block(4 * n - 1, 4 * n)?;
    let h = compose(
        &compose(&embed_spsp1_in_so(n - 1)?, &embed_so_block(4 * n - 4, 4 * n - 1)?)?,
        &to_g,
    )?;
    let ls = base.l_size(n);
    let l = compose(&embed_so_block(ls, 4 * n - 1)?, &to_g)?;
    let (name, note) = match base {
        SoQuaternionicBase::Sphere => ("so4n-sphere", "base S^{4n-2}"),
        SoQuaternionicBase::UnitTangent => ("so4n-unit-tangent", "base T^1 S^{4n-2}"),
        SoQuaternionicBase::Stiefel => ("so4n-stiefel", "base V_3(R^{4n-1})"),
    };
    ChainScenario::from_embeddings(name, n, &g, &k1, &to_g, &h, &l, note)
}

/// Bilinear form `(U, V) -> Q(U, V) - Q(P U, P V)` with `P` the
/// `Q`-orthogonal projection onto `k1`; equal to `Q(pi_r U, pi_r V)` for
/// `r = k1^perp`.
#[derive(Clone, Debug)]
pub struct InducedForm {
    k1: SubspaceBasis,
    coords: Option<Coordinatizer>,
}

impl InducedForm {
    pub fn new(k1: &SubspaceBasis) -> Self {
        Self {
            k1: k1.clone(),
            coords: (!k1.is_zero()).then(|| Coordinatizer::new(k1)),
        }
    }

    /// `P v`, exact.
    pub fn project_k1(&self, v: &[Rational]) -> Vec<Rational> {
        match &self.coords {
            None => vec![int(0); v.len()],
            Some(c) => {
                let t = c.projected_coordinates(v);
                let mut out = vec![int(0); v.len()];
                for (x, b) in t.iter().zip(self.k1.vectors()) {
                    crate::linalg::axpy(&mut out, x, b);
                }
                out
            }
        }
    }

    /// `pi_r v = v - P v`.
    pub fn project_r(&self, v: &[Rational]) -> Vec<Rational> {
        let p = self.project_k1(v);
        v.iter().zip(&p).map(|(a, b)| a - b).collect()
    }

    pub fn pair(&self, u: &[Rational], v: &[Rational]) -> Rational {
        dot(&self.project_r(u), &self.project_r(v))
    }

    pub fn gram(&self, basis: &[Vec<Rational>]) -> RationalMatrix {
        let images: Vec<Vec<Rational>> = basis.iter().map(|v| self.project_r(v)).collect();
        let d = images.len();
        let mut g = RationalMatrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let x = dot(&images[i], &images[j]);
                g.set(j, i, x.clone());
                g.set(i, j, x);
            }
        }
        g
    }
}

/// Exact Gram matrix of the induced metric on `m1 + m2`.
#[derive(Clone, Debug)]
pub struct MetricGram {
    /// Basis of `m1` followed by the basis of `m2`.
    pub subspace: SubspaceBasis,
    pub m1_dim: usize,
    pub gram: RationalMatrix,
    pub determinant: Rational,
    /// Largest entry of `A^T G + G A` over ad-generators `A` of `h`; zero
    /// when the metric is `Ad(h)`-invariant.
    pub ad_invariance_residual: Rational,
    pub form: InducedForm,
}

impl MetricGram {
    pub fn pair(&self, u: &[Rational], v: &[Rational]) -> Rational {
        self.form.pair(u, v)
    }

    pub fn is_ad_invariant(&self) -> bool {
        self.ad_invariance_residual == 0u32
    }

    /// Largest entry of `A^T G + G A` over `ad(x)`, `x` in `generators`
    /// (E-coordinates).
    pub fn ad_residual(&self, generators: &[Vec<Rational>]) -> Result<Rational, MetricError> {
        let n = matrix_size(self.subspace.ambient_dim());
        let coords = Coordinatizer::new(&self.subspace);
        let mut residual = int(0);
        for x in generators {
            let a = ad_operator_with(&vec_to_skew(x, n), &coords)?;
            let sym = a.transpose().mul(&self.gram).add(&self.gram.mul(&a));
            for e in sym.entries() {
                let v = abs(e);
                if v > residual {
                    residual = v;
                }
            }
        }
        Ok(residual)
    }
}

/// Determinant via symmetric elimination; `Err(pivot index)` at the first
/// non-positive pivot.
pub fn positive_definite_determinant(m: &RationalMatrix) -> Result<Rational, (usize, Rational)> {
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut det = int(1);
    for k in 0..n {
        let p = a[k][k].clone();
        if p <= 0u32 {
            return Err((k, p));
        }
        det *= &p;
        let pivot_row = a[k].clone();
        for row in a.iter_mut().skip(k + 1) {
            if row[k] != 0u32 {
                let c = -(&row[k] / &p);
                crate::linalg::axpy(&mut row[k..], &c, &pivot_row[k..]);
            }
        }
    }
    Ok(det)
}

pub fn induced_metric(scenario: &ChainScenario) -> Result<MetricGram, MetricError> {
    let m1 = scenario.m1()?;
    let m2 = scenario.m2()?;
    let m1_dim = m1.dim();
    let vectors: Vec<Vec<Rational>> = m1.vectors().iter().chain(m2.vectors()).cloned().collect();
    let subspace = SubspaceBasis::new(scenario.g.ambient_dim(), vectors)?;
    let form = InducedForm::new(&scenario.k1);
    let gram = form.gram(subspace.vectors());
    let determinant = positive_definite_determinant(&gram).map_err(|(pivot, value)| MetricError::NotPositiveDefinite {
        pivot,
        value: value.to_string(),
    })?;

    let mut metric = MetricGram {
        subspace,
        m1_dim,
        gram,
        determinant,
        ad_invariance_residual: int(0),
        form,
    };
    metric.ad_invariance_residual = metric.ad_residual(scenario.h.vectors())?;
    Ok(metric)
}

/// One `lambda_i`: the induced metric on `p_i` is `lambda_i Q`.
#[derive(Clone, Debug, Serialize)]
pub struct Lambda {
    /// 1-based summand label.
    pub summand: usize,
    pub dim: usize,
    pub class: usize,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub value: Rational,
    /// `lambda_i / lambda_1`.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub ratio: Rational,
}

pub fn metric_constants(gram: &MetricGram, decomp: &IsotypicDecomposition) -> Result<Vec<Lambda>, MetricError> {
    let mut out: Vec<Lambda> = Vec::new();
    for (i, s) in decomp.summands.iter().enumerate() {
        let b = s.basis.vectors();
        let restricted = gram.form.gram(b);
        let q = s.basis.gram(None);
        let lambda = restricted.get(0, 0) / q.get(0, 0);
        if restricted != q.scale(&lambda) {
            return Err(MetricError::NotProportional {
                summand: i + 1,
                class: s.class,
            });
        }
        out.push(Lambda {
            summand: i + 1,
            dim: s.dim,
            class: s.class,
            ratio: int(0),
            value: lambda,
        });
    }
    if let Some(first) = out.first().map(|l| l.value.clone()) {
        for l in &mut out {
            l.ratio = &l.value / &first;
        }
    }
    Ok(out)
}

/// Result of an exact orthogonality test between two subspaces.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Orthogonality {
    pub orthogonal: bool,
    pub witness: Option<PairWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairWitness {
    pub left: String,
    pub right: String,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub value: Rational,
}

pub fn check_orthogonality(gram: &MetricGram, a: &SubspaceBasis, b: &SubspaceBasis) -> Orthogonality {
    let n = matrix_size(a.ambient_dim());
    let right: Vec<Vec<Rational>> = b.vectors().iter().map(|v| gram.form.project_r(v)).collect();
    for u in a.vectors() {
        let pu = gram.form.project_r(u);
        for (v, pv) in b.vectors().iter().zip(&right) {
            let x = dot(&pu, pv);
            if x != 0u32 {
                return Orthogonality {
                    orthogonal: false,
                    witness: Some(PairWitness {
                        left: describe_vector(n, u),
                        right: describe_vector(n, v),
                        value: x,
                    }),
                };
            }
        }
    }
    Orthogonality {
        orthogonal: true,
        witness: None,
    }
}

/// `E_{i,j}` (1-based) for a coordinate vector, otherwise its sparse form.
pub fn describe_vector(n: usize, v: &[Rational]) -> String {
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let x = &v[skew_index(n, i, j)];
            if *x != 0u32 {
                terms.push((x.clone(), format!("E_{{{},{}}}", i + 1, j + 1)));
            }
        }
    }
    match terms.as_slice() {
        [(x, e)] if *x == 1u32 => e.clone(),
        _ => terms
            .iter()
            .map(|(x, e)| format!("({x}){e}"))
            .collect::<Vec<_>>()
            .join(" + "),
    }
}

/// `E_{i,j}` coordinates in `so(n)` from 1-based indices.
pub fn e_coord(n: usize, i: usize, j: usize) -> Vec<Rational> {
    crate::lie::e_vector(n, i - 1, j - 1)
}

/// Decomposition of `m1 + m2` under `h` with the summands numbered
/// `p1, p2, ...` by smallest touched `E_ij` coordinate.
pub fn decompose_chain(scenario: &ChainScenario, seed: u64, tol: f64) -> Result<IsotypicDecomposition, MetricError> {
    let parts = [scenario.m1()?, scenario.m2()?];
    let mut d = decompose_parts(&scenario.h, &parts, seed, tol)?;
    renumber(&mut d);
    Ok(d)
}

fn renumber(d: &mut IsotypicDecomposition) {
    let mut order: Vec<usize> = (0..d.summands.len()).collect();
    order.sort_by_key(|&i| {
        let s = &d.summands[i];
        (s.leading_index, s.part, Reverse(s.dim))
    });
    let mut new_index = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let summands = order.iter().map(|&i| d.summands[i].clone()).collect();
    d.summands = summands;
    for members in &mut d.equivalence_classes {
        for m in members.iter_mut() {
            *m = new_index[*m];
        }
        members.sort_unstable();
    }
    d.equivalence_classes.sort();
    for (c, members) in d.equivalence_classes.iter().enumerate() {
        for &m in members {
            d.summands[m].class = c;
        }
    }
}

/// How an `l`-summand of `m2` splits under `h`.
#[derive(Clone, Debug, Serialize)]
pub struct SplitWitness {
    /// `q` label, numbered after the fiber summands.
    pub q: String,
    pub dim: usize,
    /// `p` labels of the `h`-summands inside `q`.
    pub splits_into: Vec<String>,
    pub split_dims: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomWitness {
    pub p: String,
    pub q: String,
    pub hom_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeWitness {
    pub q_left: String,
    pub q_right: String,
    pub h_types: Option<(SummandType, SummandType)>,
    pub l_types: (SummandType, SummandType),
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionI {
    pub holds: bool,
    pub h_dims: Vec<usize>,
    pub l_dims: Vec<usize>,
    pub witnesses: Vec<SplitWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionII {
    pub holds: bool,
    pub witnesses: Vec<HomWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionIII {
    pub holds: bool,
    pub witnesses: Vec<TypeWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubmersionVerdict {
    pub condition_i: ConditionI,
    pub condition_ii: ConditionII,
    pub condition_iii: ConditionIII,
    pub is_riemannian_submersion: bool,
    /// Non-orthogonal pair between fiber and base under the induced metric.
    pub counterexample: Option<PairWitness>,
}

/// Everything the condition checker computes, kept for reporting.
#[derive(Clone, Debug)]
pub struct ConditionAnalysis {
    pub under_h: IsotypicDecomposition,
    pub under_l: IsotypicDecomposition,
    pub verdict: SubmersionVerdict,
}

pub fn check_submersion_conditions(
    scenario: &ChainScenario,
    seed: u64,
    tol: f64,
) -> Result<ConditionAnalysis, MetricError> {
    let metric = induced_metric(scenario)?;
    let under_h = decompose_chain(scenario, seed, tol)?;
    analyze(scenario, &metric, under_h, seed, tol)
}

pub fn analyze(
    scenario: &ChainScenario,
    metric: &MetricGram,
    under_h: IsotypicDecomposition,
    seed: u64,
    tol: f64,
) -> Result<ConditionAnalysis, MetricError> {
    let m1 = scenario.m1()?;
    let m2 = scenario.m2()?;
    let mut under_l = irreducible_decomposition(&scenario.l, &m2, seed, tol)?;
    renumber(&mut under_l);

    let p_label = |i: usize| format!("p{}", i + 1);
    let fiber: Vec<usize> = under_h.summands_in_part(0).map(|(i, _)| i).collect();
    let q_offset = fiber.len();
    let q_label = |j: usize| format!("q{}", q_offset + j + 1);

    // (i)
    let mut h_dims: Vec<usize> = under_h.summands_in_part(1).map(|(_, s)| s.dim).collect();
    let mut l_dims: Vec<usize> = under_l.dims();
    h_dims.sort_unstable();
    l_dims.sort_unstable();
    let mut split_witnesses = Vec::new();
    let mut h_types: Vec<Option<SummandType>> = Vec::new();
    for (j, q) in under_l.summands.iter().enumerate() {
        let inner = irreducible_decomposition(&scenario.h, &q.basis, seed, tol)?;
        if inner.summands.len() == 1 {
            h_types.push(Some(inner.summands[0].kind));
        } else {
            h_types.push(None);
            let mut splits_into = Vec::new();
            let mut split_dims = Vec::new();
            for (i, p) in under_h.summands_in_part(1) {
                if q.basis.contains_subspace(&p.basis) {
                    splits_into.push(p_label(i));
                    split_dims.push(p.dim);
                }
            }
            if split_dims.iter().sum::<usize>() != q.dim {
                splits_into.clear();
                split_dims = inner.dims();
            }
            split_witnesses.push(SplitWitness {
                q: q_label(j),
                dim: q.dim,
                splits_into,
                split_dims,
            });
        }
    }
    let condition_i = ConditionI {
        holds: h_dims == l_dims && split_witnesses.is_empty(),
        h_dims,
        l_dims,
        witnesses: split_witnesses,
    };

    // (ii)
    let h_reps: Vec<Representation> = under_l
        .summands
        .iter()
        .map(|q| Representation::new(&scenario.h, &q.basis))
        .collect::<Result<_, _>>()?;
    let mut hom_witnesses = Vec::new();
    for &i in &fiber {
        let rp = Representation::new(&scenario.h, &under_h.summands[i].basis)?;
        for (j, rq) in h_reps.iter().enumerate() {
            let k = intertwiners(rp.action(), rq.action()).len();
            if k > 0 {
                hom_witnesses.push(HomWitness {
                    p: p_label(i),
                    q: q_label(j),
                    hom_dim: k,
                });
            }
        }
    }
    let condition_ii = ConditionII {
        holds: hom_witnesses.is_empty(),
        witnesses: hom_witnesses,
    };

    // (iii)
    let mut type_witnesses = Vec::new();
    let qs = &under_l.summands;
    for a in 0..qs.len() {
        for b in a + 1..qs.len() {
            let l_equiv = under_l.equivalent(a, b);
            let h_equiv = qs[a].dim == qs[b].dim
                && !intertwiners(h_reps[a].action(), h_reps[b].action()).is_empty();
            if !(l_equiv || h_equiv) {
                continue;
            }
            let l_types = (qs[a].kind, qs[b].kind);
            let h_pair = match (h_types[a], h_types[b]) {
                (Some(x), Some(y)) => Some((x, y)),
                _ => None,
            };
            let ok = l_types.0 == l_types.1 && matches!(h_pair, Some((x, y)) if x == y);
            if !ok {
                type_witnesses.push(TypeWitness {
                    q_left: q_label(a),
                    q_right: q_label(b),
                    h_types: h_pair,
                    l_types,
                });
            }
        }
    }
    let condition_iii = ConditionIII {
        holds: type_witnesses.is_empty(),
        witnesses: type_witnesses,
    };

    let orth = check_orthogonality(metric, &m1, &m2);
    let is_riemannian_submersion = condition_i.holds && condition_ii.holds && condition_iii.holds;
    Ok(ConditionAnalysis {
        under_h,
        under_l,
        verdict: SubmersionVerdict {
            condition_i,
            condition_ii,
            condition_iii,
            is_riemannian_submersion,
            counterexample: orth.witness,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    #[test]
    fn determinant_of_positive_matrix() {
        let m = RationalMatrix::from_i64(2, 2, &[2, 1, 1, 2]).unwrap();
        assert_eq!(positive_definite_determinant(&m).unwrap(), int(3));
        let bad = RationalMatrix::from_i64(2, 2, &[1, 2, 2, 1]).unwrap();
        assert_eq!(positive_definite_determinant(&bad).unwrap_err().0, 1);
    }

    #[test]
    fn trivial_k1_gives_q() {
        let s = so_even_sphere(3, true).unwrap().with_trivial_k1();
        let g = induced_metric(&s).unwrap();
        assert_eq!(g.gram, g.subspace.gram(None));
        let d = decompose_chain(&s, 0, 1e-9).unwrap();
        for l in metric_constants(&g, &d).unwrap() {
            assert_eq!(l.value, int(1));
        }
    }

    #[test]
    fn half_ratio_at_n3() {
        let s = so_even_sphere(3, true).unwrap();
        let g = induced_metric(&s).unwrap();
        let d = decompose_chain(&s, 0, 1e-9).unwrap();
        let ls = metric_constants(&g, &d).unwrap();
        assert_eq!(ls.len(), 2);
        assert_eq!(ls[1].ratio, frac(1, 2));
    }

    #[test]
    fn invalid_n_rejected() {
        assert!(so_even_sphere(2, true).is_err());
        assert!(so_quaternionic(1, SoQuaternionicBase::Stiefel).is_err());
    }

    #[test]
    fn vector_description() {
        assert_eq!(describe_vector(4, &e_coord(4, 1, 3)), "E_{1,3}");
    }
}
