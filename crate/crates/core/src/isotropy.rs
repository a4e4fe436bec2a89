//! Isotropy representations: reductive complements, commutants and
//! decomposition into irreducible summands.
//!
//! All subspaces are given in `E_ij` coordinates of some `so(N)`, where the
//! invariant form `Q` is the standard dot product. Splitting is driven by a
//! floating-point eigensplit of a symmetric commutant element, but each
//! proposed eigenspace is rounded to a rational eigenvalue and re-derived as
//! an exact kernel, so every reported summand is exactly invariant.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{ad_operator_with, skew_dim, skew_to_vec, vec_to_skew, LieError};
use crate::linalg::{
    dot, kernel, simplest_near, symmetric_eigensplit, Coordinatizer, Echelon, LinalgError, Rational, RationalMatrix,
    SparseRow, SubspaceBasis,
};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_SEED: u64 = 0;
/// Random symmetric elements tried per split before giving up.
pub const MAX_RESEEDS: usize = 8;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum IsotropyError {
    #[error("subspace is not invariant: {0}")]
    NotInvariant(String),
    #[error("h is not contained in the ambient algebra")]
    NotContained,
    #[error("summand of dim {dim} is reducible: End has dim {end_dim}, symmetric part {sym_dim}")]
    Reducible { dim: usize, end_dim: usize, sym_dim: usize },
    #[error("indistinguishable spectrum on a block of dim {dim} after {attempts} attempts (seed {seed})")]
    IndistinguishableSpectrum { dim: usize, attempts: usize, seed: u64 },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl From<LieError> for IsotropyError {
    fn from(e: LieError) -> Self {
        match e {
            LieError::NotInvariant { residual } => IsotropyError::NotInvariant(residual.join(", ")),
            LieError::Linalg(l) => IsotropyError::Linalg(l),
            other => IsotropyError::Inconsistent(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SummandType {
    Orthogonal,
    Unitary,
    Symplectic,
}

impl SummandType {
    pub fn from_end_dim(d: usize) -> Option<Self> {
        match d {
            1 => Some(Self::Orthogonal),
            2 => Some(Self::Unitary),
            4 => Some(Self::Symplectic),
            _ => None,
        }
    }

    pub fn end_dim(self) -> usize {
        match self {
            Self::Orthogonal => 1,
            Self::Unitary => 2,
            Self::Symplectic => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Orthogonal => "orthogonal",
            Self::Unitary => "unitary",
            Self::Symplectic => "symplectic",
        }
    }
}

/// Matrix size `N` with `skew_dim(N) = d`.
pub fn matrix_size(d: usize) -> usize {
    let mut n = 0;
    while skew_dim(n) < d {
        n += 1;
    }
    assert_eq!(skew_dim(n), d, "{d} is not the dimension of any so(N)");
    n
}

/// Indices of basis elements that generate the same Lie algebra as all of
/// `gens`. Intertwining conditions only need to be imposed on these.
pub fn lie_generating_subset(n: usize, gens: &[Vec<Rational>]) -> Vec<usize> {
    let d = skew_dim(n);
    let mut span = Echelon::new(d);
    let mut elems: Vec<RationalMatrix> = Vec::new();
    let mut chosen = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if span.contains_dense(g) {
            continue;
        }
        chosen.push(i);
        let mut frontier = vec![vec_to_skew(g, n)];
        span.insert_dense(g);
        elems.push(frontier[0].clone());
        while let Some(x) = frontier.pop() {
            let snapshot = elems.clone();
            for y in &snapshot {
                let v = skew_to_vec(&x.commutator(y));
                if span.insert_dense(&v) {
                    let m = vec_to_skew(&v, n);
                    elems.push(m.clone());
                    frontier.push(m);
                }
            }
        }
    }
    chosen
}

/// The action of a subalgebra on an invariant subspace, in the subspace's
/// basis. Only a Lie-generating subset of the subalgebra is kept.
#[derive(Clone, Debug)]
pub struct Representation {
    space: SubspaceBasis,
    gram: RationalMatrix,
    action: Vec<RationalMatrix>,
}

impl Representation {
    pub fn new(h: &SubspaceBasis, space: &SubspaceBasis) -> Result<Self, IsotropyError> {
        if h.ambient_dim() != space.ambient_dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: format!("ambient dimension {}", h.ambient_dim()),
                found: format!("ambient dimension {}", space.ambient_dim()),
            }
            .into());
        }
        let n = matrix_size(h.ambient_dim());
        let coords = Coordinatizer::new(space);
        let action = lie_generating_subset(n, h.vectors())
            .into_iter()
            .map(|i| ad_operator_with(&vec_to_skew(&h.vectors()[i], n), &coords))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            space: space.clone(),
            gram: space.gram(None),
            action,
        })
    }

    pub fn space(&self) -> &SubspaceBasis {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Gram matrix of `Q` on the basis.
    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    pub fn action(&self) -> &[RationalMatrix] {
        &self.action
    }

    /// Sub-representation on the span of `coords` (vectors in this basis).
    pub fn restrict(&self, coords: &[Vec<Rational>]) -> Result<Self, IsotropyError> {
        let k = RationalMatrix::from_columns(self.dim(), coords);
        let kt_g = k.transpose().mul(&self.gram);
        let small_gram = kt_g.mul(&k);
        let small_inv = small_gram.inverse().ok_or(LinalgError::NotPositiveDefinite)?;
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            let ak = a.mul(&k);
            let x = small_inv.mul(&kt_g.mul(&ak));
            if k.mul(&x) != ak {
                return Err(IsotropyError::NotInvariant("restricted block leaks".into()));
            }
            action.push(x);
        }
        let vectors = coords
            .iter()
            .map(|c| {
                let mut v = vec![Rational::from(0); self.space.ambient_dim()];
                for (t, b) in c.iter().zip(self.space.vectors()) {
                    crate::linalg::axpy(&mut v, t, b);
                }
                v
            })
            .collect();
        let space = SubspaceBasis::new(self.space.ambient_dim(), vectors)?;
        Ok(Self {
            space,
            gram: small_gram,
            action,
        })
    }

    pub fn commutant(&self) -> Vec<RationalMatrix> {
        intertwiners(&self.action, &self.action)
    }
}

/// Basis of `{Psi : dst_k Psi = Psi src_k for all k}` (`dq x dp` matrices).
pub fn intertwiners(src: &[RationalMatrix], dst: &[RationalMatrix]) -> Vec<RationalMatrix> {
    assert_eq!(src.len(), dst.len());
    let dp = src.first().map_or(0, RationalMatrix::rows);
    let dq = dst.first().map_or(0, RationalMatrix::rows);
    if src.is_empty() {
        return (0..dq * dp)
            .map(|k| {
                let mut m = RationalMatrix::zeros(dq, dp);
                m.set(k / dp, k % dp, Rational::from(1));
                m
            })
            .collect();
    }
    let total = dq * dp;
    let mut ech = Echelon::new(total);
    'outer: for (a, b) in src.iter().zip(dst) {
        let a_cols: Vec<Vec<(usize, Rational)>> = (0..dp)
            .map(|j| (0..dp).filter_map(|c| nz(a.get(c, j)).map(|v| (c, v))).collect())
            .collect();
        let b_rows: Vec<Vec<(usize, Rational)>> = (0..dq)
            .map(|i| (0..dq).filter_map(|c| nz(b.get(i, c)).map(|v| (c, v))).collect())
            .collect();
        for i in 0..dq {
            for j in 0..dp {
                let pairs = b_rows[i]
                    .iter()
                    .map(|(c, v)| (c * dp + j, v.clone()))
                    .chain(a_cols[j].iter().map(|(c, v)| (i * dp + c, -v.clone())));
                let row = SparseRow::from_pairs(pairs);
                if !row.is_empty() {
                    ech.insert(row);
                    if ech.rank() == total {
                        break 'outer;
                    }
                }
            }
        }
    }
    ech.null_space()
        .into_iter()
        .map(|v| RationalMatrix::new(dq, dp, v).expect("length dq*dp"))
        .collect()
}

fn nz(x: &Rational) -> Option<Rational> {
    (*x != 0u32).then(|| x.clone())
}

/// Symmetric (`Q`-self-adjoint) elements of the span of `ops`, where `gram`
/// is the Gram matrix of the basis the operators act in.
pub fn symmetric_part(ops: &[RationalMatrix], gram: &RationalMatrix) -> Vec<RationalMatrix> {
    let d = gram.rows();
    let g_ops: Vec<RationalMatrix> = ops.iter().map(|x| gram.mul(x)).collect();
    let mut ech = Echelon::new(ops.len());
    for i in 0..d {
        for j in i + 1..d {
            let row: Vec<Rational> = g_ops.iter().map(|gx| gx.get(i, j) - gx.get(j, i)).collect();
            ech.insert_dense(&row);
        }
    }
    ech.null_space()
        .iter()
        .map(|t| {
            let mut out = RationalMatrix::zeros(d, d);
            for (c, x) in t.iter().zip(ops) {
                if *c != 0u32 {
                    out.add_scaled(c, x);
                }
            }
            out
        })
        .collect()
}

/// `Q`-orthogonal complement of `h` inside `ambient`, checked to be
/// `h`-invariant.
pub fn reductive_complement(ambient: &SubspaceBasis, h: &SubspaceBasis) -> Result<SubspaceBasis, IsotropyError> {
    if !ambient.contains_subspace(h) {
        return Err(IsotropyError::NotContained);
    }
    let m = h.orthogonal_complement_in(ambient, None);
    Representation::new(h, &m)?;
    Ok(m)
}

/// Exact basis of the `h`-equivariant endomorphisms of `m`, in `m`'s basis.
pub fn commutant(h: &SubspaceBasis, m: &SubspaceBasis) -> Result<Vec<RationalMatrix>, IsotropyError> {
    Ok(Representation::new(h, m)?.commutant())
}

/// `dim Hom_h(p, q)`.
pub fn hom_dimension(h: &SubspaceBasis, p: &SubspaceBasis, q: &SubspaceBasis) -> Result<usize, IsotropyError> {
    let rp = Representation::new(h, p)?;
    let rq = Representation::new(h, q)?;
    // both generator lists come from the same `h`, in the same order
    Ok(intertwiners(&rp.action, &rq.action).len())
}

pub fn summand_type(h: &SubspaceBasis, p: &SubspaceBasis) -> Result<SummandType, IsotropyError> {
    let rep = Representation::new(h, p)?;
    classify(&rep.commutant(), rep.gram(), rep.dim())
}

fn classify(end: &[RationalMatrix], gram: &RationalMatrix, dim: usize) -> Result<SummandType, IsotropyError> {
    let sym = symmetric_part(end, gram).len();
    match SummandType::from_end_dim(end.len()) {
        Some(t) if sym == 1 => Ok(t),
        _ => Err(IsotropyError::Reducible {
            dim,
            end_dim: end.len(),
            sym_dim: sym,
        }),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    #[serde(skip)]
    pub basis: SubspaceBasis,
    pub dim: usize,
    #[serde(rename = "type")]
    pub kind: SummandType,
    pub class: usize,
    /// Index of the input part the summand lies in.
    pub part: usize,
    pub leading_index: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotypicDecomposition {
    #[serde(skip)]
    pub complement: SubspaceBasis,
    pub summands: Vec<Summand>,
    pub equivalence_classes: Vec<Vec<usize>>,
    pub commutant_dim: usize,
    pub symmetric_commutant_dim: usize,
    pub seed: u64,
    pub tol: f64,
    /// Largest invariance residual over all summands; splits are exact, so
    /// this is always zero.
    pub max_invariance_residual: f64,
}

impl IsotypicDecomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.dim).collect()
    }

    pub fn summands_in_part(&self, part: usize) -> impl Iterator<Item = (usize, &Summand)> {
        self.summands.iter().enumerate().filter(move |(_, s)| s.part == part)
    }

    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.summands[i].class == self.summands[j].class
    }
}

pub fn irreducible_decomposition(
    h: &SubspaceBasis,
    m: &SubspaceBasis,
    seed: u64,
    tol: f64,
) -> Result<IsotypicDecomposition, IsotropyError> {
    decompose_parts(h, std::slice::from_ref(m), seed, tol)
}

/// Decomposes each invariant part separately and classifies the summands of
/// all parts together. Summands are ordered by part, then by the smallest
/// `E_ij` coordinate they touch.
pub fn decompose_parts(
    h: &SubspaceBasis,
    parts: &[SubspaceBasis],
    seed: u64,
    tol: f64,
) -> Result<IsotypicDecomposition, IsotropyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reps = Vec::new();
    let mut irreducibles: Vec<(usize, Representation, SummandType)> = Vec::new();
    for (pi, part) in parts.iter().enumerate() {
        let part_rep = Representation::new(h, part)?;
        let mut pieces: Vec<(usize, Representation, SummandType)> = Vec::new();
        for block in coordinate_blocks(&part_rep) {
            let rep = part_rep.restrict(&block)?;
            let end = rep.commutant();
            let mut found = Vec::new();
            split(&rep, unit_vectors(rep.dim()), end, &mut rng, seed, tol, &mut found)?;
            for (coords, kind) in found {
                pieces.push((pi, rep.restrict(&coords)?, kind));
            }
            reps.push(rep);
        }
        pieces.sort_by_key(|(_, r, _)| r.space().leading_index());
        irreducibles.extend(pieces);
    }

    // equivalence classes by exact intertwiner dimension
    let mut class_of = vec![usize::MAX; irreducibles.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..irreducibles.len() {
        let (_, ri, ti) = &irreducibles[i];
        let mut assigned = None;
        for (c, members) in classes.iter().enumerate() {
            let (_, rj, tj) = &irreducibles[members[0]];
            if rj.dim() == ri.dim() && tj == ti && !intertwiners(rj.action(), ri.action()).is_empty() {
                assigned = Some(c);
                break;
            }
        }
        let c = assigned.unwrap_or_else(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(i);
        class_of[i] = c;
    }

    // commutant of the direct sum, block by block
    let mut commutant_dim = 0;
    let mut symmetric_commutant_dim = 0;
    for (a, ra) in reps.iter().enumerate() {
        for (b, rb) in reps.iter().enumerate() {
            let homs = intertwiners(ra.action(), rb.action());
            commutant_dim += homs.len();
            if a == b {
                symmetric_commutant_dim += symmetric_part(&homs, ra.gram()).len();
            } else if a < b {
                // each cross pair contributes Hom(a, b) once, paired with its adjoint
                symmetric_commutant_dim += homs.len();
            }
        }
    }
    let predicted: usize = classes
        .iter()
        .map(|members| {
            let s = members.len();
            irreducibles[members[0]].2.end_dim() * s * s
        })
        .sum();
    if predicted != commutant_dim {
        return Err(IsotropyError::Inconsistent(format!(
            "commutant has dim {commutant_dim} but classes predict {predicted}"
        )));
    }

    let summands = irreducibles
        .into_iter()
        .enumerate()
        .map(|(i, (part, rep, kind))| Summand {
            dim: rep.dim(),
            leading_index: rep.space().leading_index().unwrap_or(0),
            basis: rep.space,
            kind,
            class: class_of[i],
            part,
        })
        .collect();
    let complement = parts
        .iter()
        .fold(SubspaceBasis::zero(h.ambient_dim()), |acc, p| acc.sum(p));
    Ok(IsotypicDecomposition {
        complement,
        summands,
        equivalence_classes: classes,
        commutant_dim,
        symmetric_commutant_dim,
        seed,
        tol,
        max_invariance_residual: 0.0,
    })
}

fn unit_vectors(d: usize) -> Vec<Vec<Rational>> {
    (0..d)
        .map(|i| {
            let mut v = vec![Rational::from(0); d];
            v[i] = Rational::from(1);
            v
        })
        .collect()
}

/// Splits a representation along its basis: connected components of the
/// graph linking basis vectors `i`, `j` whenever some generator has a
/// nonzero `(i, j)` entry. Each component spans an invariant subspace. The
/// split is only used when the components are mutually `Q`-orthogonal;
/// otherwise the whole basis is one block.
fn coordinate_blocks(rep: &Representation) -> Vec<Vec<Vec<Rational>>> {
    let d = rep.dim();
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for a in rep.action() {
        for i in 0..d {
            for j in 0..d {
                if *a.get(i, j) != 0u32 {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..d {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let groups: Vec<Vec<usize>> = groups.into_values().collect();
    let mut group_of = vec![0; d];
    for (g, members) in groups.iter().enumerate() {
        for &i in members {
            group_of[i] = g;
        }
    }
    let orthogonal = (0..d).all(|i| (0..d).all(|j| group_of[i] == group_of[j] || *rep.gram().get(i, j) == 0u32));
    if !orthogonal {
        return vec![unit_vectors(d)];
    }
    let basis = unit_vectors(d);
    groups
        .into_iter()
        .map(|members| members.into_iter().map(|i| basis[i].clone()).collect())
        .collect()
}

type Found = Vec<(Vec<Vec<Rational>>, SummandType)>;

/// Recursively splits the invariant block spanned by `coords` (vectors in
/// `root`'s basis) whose equivariant endomorphisms are `end`.
fn split(
    root: &Representation,
    coords: Vec<Vec<Rational>>,
    end: Vec<RationalMatrix>,
    rng: &mut ChaCha8Rng,
    seed: u64,
    tol: f64,
    out: &mut Found,
) -> Result<(), IsotropyError> {
    let w = coords.len();
    let c = RationalMatrix::from_columns(root.dim(), &coords);
    let gram = c.transpose().mul(root.gram()).mul(&c);
    let sym = symmetric_part(&end, &gram);
    if sym.len() == 1 {
        let kind = classify(&end, &gram, w)?;
        out.push((coords, kind));
        return Ok(());
    }
    let k = find_eigenspace(&sym, &gram, rng, seed, tol)?;
    let k_space = SubspaceBasis::new(w, k)?;
    let rest = k_space.orthogonal_complement_in(&SubspaceBasis::full(w), Some(&gram));
    for piece in [k_space, rest] {
        let end_piece = compress(&end, &gram, piece.vectors());
        let lifted: Vec<Vec<Rational>> = piece
            .vectors()
            .iter()
            .map(|t| c.mul_vec(t))
            .collect();
        split(root, lifted, end_piece, rng, seed, tol, out)?;
    }
    Ok(())
}

/// `P_U X |_U` for each `X`, with `U` spanned by `basis` and `P_U` the
/// `gram`-orthogonal projection; the span of the results.
fn compress(ops: &[RationalMatrix], gram: &RationalMatrix, basis: &[Vec<Rational>]) -> Vec<RationalMatrix> {
    let k = RationalMatrix::from_columns(gram.rows(), basis);
    let kt_g = k.transpose().mul(gram);
    let inv = kt_g.mul(&k).inverse().expect("positive definite restriction");
    let left = inv.mul(&kt_g);
    let u = basis.len();
    let mut ech = Echelon::new(u * u);
    let mut out = Vec::new();
    for x in ops {
        let y = left.mul(&x.mul(&k));
        if ech.insert_dense(y.entries()) {
            out.push(y);
        }
    }
    out
}

/// A proper, nonzero exact eigenspace of some symmetric element in `sym`.
fn find_eigenspace(
    sym: &[RationalMatrix],
    gram: &RationalMatrix,
    rng: &mut ChaCha8Rng,
    seed: u64,
    tol: f64,
) -> Result<Vec<Vec<Rational>>, IsotropyError> {
    let w = gram.rows();
    let mut attempts = 0;
    // seeded random combinations first, then the basis elements themselves
    let mut candidates: Vec<RationalMatrix> = Vec::new();
    for _ in 0..MAX_RESEEDS {
        let mut x = RationalMatrix::zeros(w, w);
        for s in sym {
            let t: i64 = rng.gen_range(-4..=4);
            if t != 0 {
                x.add_scaled(&Rational::from(t), s);
            }
        }
        candidates.push(x);
        attempts += 1;
        if let Some(k) = exact_eigenspace(candidates.last().unwrap(), gram, tol) {
            return Ok(k);
        }
    }
    for s in sym {
        if let Some(k) = exact_eigenspace(s, gram, tol) {
            return Ok(k);
        }
    }
    Err(IsotropyError::IndistinguishableSpectrum {
        dim: w,
        attempts,
        seed,
    })
}

fn exact_eigenspace(x: &RationalMatrix, gram: &RationalMatrix, tol: f64) -> Option<Vec<Vec<Rational>>> {
    let w = x.rows();
    let clusters = symmetric_eigensplit(x, gram, tol).ok()?;
    if clusters.len() < 2 {
        return None;
    }
    // smallest clusters first: cheaper kernels and smaller pieces
    let mut order: Vec<usize> = (0..clusters.len()).collect();
    order.sort_by_key(|&i| clusters[i].dim());
    for i in order {
        let cl = &clusters[i];
        let window = (1e3 * tol).max(1e-7) * (1.0 + cl.value.abs());
        let Some(mu) = simplest_near(cl.value, window) else {
            continue;
        };
        let mut shifted = x.clone();
        for d in 0..w {
            *shifted.get_mut(d, d) -= &mu;
        }
        let k = kernel(&shifted);
        if k.dim() == cl.dim() && k.dim() < w {
            return Some(k.into_vectors());
        }
    }
    None
}

/// `Q`-pairing of two subspaces in `E_ij` coordinates; zero when orthogonal.
pub fn max_cross_pairing(a: &SubspaceBasis, b: &SubspaceBasis) -> Rational {
    let mut worst = Rational::from(0);
    for u in a.vectors() {
        for v in b.vectors() {
            let x = crate::linalg::abs(&dot(u, v));
            if x > worst {
                worst = x;
            }
        }
    }
    worst
}

/// Class sizes keyed by (dim, type), a seed-independent fingerprint.
pub fn class_profile(d: &IsotypicDecomposition) -> BTreeMap<(usize, &'static str), Vec<usize>> {
    let mut out: BTreeMap<(usize, &'static str), Vec<usize>> = BTreeMap::new();
    for members in &d.equivalence_classes {
        let s = &d.summands[members[0]];
        out.entry((s.dim, s.kind.name())).or_default().push(members.len());
    }
    for v in out.values_mut() {
        v.sort_unstable();
    }
    out
}
