//! Homotopy bookkeeping for free actions `U -> E -> B` of a compact Lie
//! group `U` on a compact Lie group `E`.
//!
//! Only table values and the exact-sequence pinch are used: when
//! `pi_j(B) = pi_{j+1}(B) = 0` the sequence forces `pi_j(U) = pi_j(E)`.
//! Anything else is reported as unknown.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HomotopyError {
    #[error("unsupported space: {0}")]
    Unsupported(String),
}

/// A finitely generated abelian group `Z^rank + Z_{d1} + ... + Z_{dk}` with
/// `d1 | d2 | ... | dk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    rank: u32,
    torsion: Vec<u64>,
}

impl FgAbelianGroup {
    pub fn new(rank: u32, torsion: impl IntoIterator<Item = u64>) -> Self {
        Self {
            rank,
            torsion: invariant_factors(torsion),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, [])
    }

    pub fn z() -> Self {
        Self::new(1, [])
    }

    pub fn z_mod(k: u64) -> Self {
        Self::new(0, [k])
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

fn invariant_factors(torsion: impl IntoIterator<Item = u64>) -> Vec<u64> {
    // prime -> exponents of that prime across the cyclic factors
    let mut powers: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for mut d in torsion {
        let mut p = 2;
        while d > 1 {
            if p * p > d {
                powers.entry(d).or_default().push(1);
                break;
            }
            let mut e = 0;
            while d % p == 0 {
                d /= p;
                e += 1;
            }
            if e > 0 {
                powers.entry(p).or_default().push(e);
            }
            p += 1;
        }
    }
    let len = powers.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for (p, mut es) in powers {
        es.sort_unstable_by(|a, b| b.cmp(a));
        for (k, e) in es.into_iter().enumerate() {
            factors[len - 1 - k] *= p.pow(e);
        }
    }
    factors
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

impl Serialize for FgAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// What is known about one homotopy group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PiValue {
    Known(FgAbelianGroup),
    /// Only the rank is determined (an extension problem was left open).
    RankOnly(u32),
    Unknown,
}

impl PiValue {
    pub fn known(&self) -> Option<&FgAbelianGroup> {
        match self {
            PiValue::Known(g) => Some(g),
            _ => None,
        }
    }

    pub fn rank(&self) -> Option<u32> {
        match self {
            PiValue::Known(g) => Some(g.rank()),
            PiValue::RankOnly(r) => Some(*r),
            PiValue::Unknown => None,
        }
    }

    pub fn is_known_zero(&self) -> bool {
        matches!(self, PiValue::Known(g) if g.is_zero())
    }
}

impl fmt::Display for PiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiValue::Known(g) => write!(f, "{g}"),
            PiValue::RankOnly(r) => write!(f, "rank {r}"),
            PiValue::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupFamily {
    SO,
    SU,
    Sp,
}

impl GroupFamily {
    pub fn dim(self, m: u64) -> u64 {
        match self {
            GroupFamily::SO => m * m.saturating_sub(1) / 2,
            GroupFamily::SU => (m * m).saturating_sub(1),
            GroupFamily::Sp => m * (2 * m + 1),
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupFamily::SO => "SO",
            GroupFamily::SU => "SU",
            GroupFamily::Sp => "Sp",
        })
    }
}

/// `pi_j` of a classical group from the encoded table.
pub fn pi_of_group(family: GroupFamily, m: u64, j: u32) -> PiValue {
    use GroupFamily::*;
    let z = FgAbelianGroup::z;
    let zero = FgAbelianGroup::zero;
    let v = match (family, j) {
        (SO, 1) if m >= 3 => Some(FgAbelianGroup::z_mod(2)),
        (SO, 1) if m == 2 => Some(z()),
        (SO, _) if m == 2 && j >= 2 => Some(zero()),
        (SO, 2) if m >= 3 => Some(zero()),
        (SO, 3) if m == 4 => Some(FgAbelianGroup::new(2, [])),
        (SO, 3) if m >= 3 => Some(z()),
        (SO, 5) if m >= 7 => Some(zero()),
        (SU, 1 | 2) if m >= 2 => Some(zero()),
        (SU, 3) if m >= 2 => Some(z()),
        (SU, 5) if m >= 3 => Some(z()),
        (Sp, 1 | 2) if m >= 1 => Some(zero()),
        (Sp, 3) if m >= 1 => Some(z()),
        (Sp, 5) if m >= 1 => Some(FgAbelianGroup::z_mod(2)),
        _ => None,
    };
    v.map_or(PiValue::Unknown, PiValue::Known)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceDescriptor {
    /// `S^m`
    Sphere(u64),
    /// `V_k(R^m)`, orthonormal `k`-frames in `R^m`.
    Stiefel { k: u64, m: u64 },
    /// Quotient by a free circle action.
    CircleQuotient(Box<SpaceDescriptor>),
    Group { family: GroupFamily, m: u64 },
}

impl SpaceDescriptor {
    pub fn so(m: u64) -> Self {
        Self::Group {
            family: GroupFamily::SO,
            m,
        }
    }

    pub fn dim(&self) -> i64 {
        match self {
            Self::Sphere(m) => *m as i64,
            Self::Stiefel { k, m } => (k * m) as i64 - (k * (k + 1) / 2) as i64,
            Self::CircleQuotient(x) => x.dim() - 1,
            Self::Group { family, m } => family.dim(*m) as i64,
        }
    }

    /// Largest `c` with `pi_j = 0` for all `j <= c`, when known.
    pub fn connectivity(&self) -> Option<u64> {
        match self {
            Self::Sphere(m) => Some(m.saturating_sub(1)),
            Self::Stiefel { k, m } => Some(m.saturating_sub(k + 1)),
            Self::CircleQuotient(_) => Some(1),
            Self::Group { .. } => Some(0),
        }
    }

    pub fn pi(&self, j: u32) -> PiValue {
        let j64 = j as u64;
        match self {
            Self::Sphere(m) => {
                if j64 < *m || (*m == 1 && j >= 2) {
                    PiValue::Known(FgAbelianGroup::zero())
                } else if j64 == *m {
                    PiValue::Known(FgAbelianGroup::z())
                } else {
                    PiValue::Unknown
                }
            }
            Self::Stiefel { k, m } => {
                if *k < *m && j64 + k < *m {
                    PiValue::Known(FgAbelianGroup::zero())
                } else {
                    PiValue::Unknown
                }
            }
            Self::CircleQuotient(x) => {
                // S^1 -> X -> X/S^1 with X 2-connected
                if !(x.pi(1).is_known_zero() && x.pi(2).is_known_zero()) {
                    return PiValue::Unknown;
                }
                match j {
                    1 => PiValue::Known(FgAbelianGroup::zero()),
                    2 => PiValue::Known(FgAbelianGroup::z()),
                    _ => x.pi(j),
                }
            }
            Self::Group { family, m } => pi_of_group(*family, *m, j),
        }
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Sphere(m) => write!(f, "S^{m}"),
            Self::Stiefel { k, m } => write!(f, "V_{k}(R^{m})"),
            Self::CircleQuotient(x) => write!(f, "S^1\\{x}"),
            Self::Group { family, m } => write!(f, "{family}({m})"),
        }
    }
}

impl FromStr for SpaceDescriptor {
    type Err = HomotopyError;

    /// Accepts `S^m`, `V_k(R^m)`, `S^1\X`, `SO(m)`, `SU(m)`, `Sp(m)`.
    fn from_str(s: &str) -> Result<Self, HomotopyError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || HomotopyError::Unsupported(format!("cannot parse space '{s}'"));
        let num = |x: &str| x.trim_matches(|c| c == '{' || c == '}').parse::<u64>().map_err(|_| bad());
        if let Some(rest) = t.strip_prefix("S^1\\") {
            return Ok(Self::CircleQuotient(Box::new(rest.parse()?)));
        }
        if let Some(m) = t.strip_prefix("S^") {
            return Ok(Self::Sphere(num(m)?));
        }
        if let Some(rest) = t.strip_prefix("V_") {
            let (k, tail) = rest.split_once("(R^").ok_or_else(bad)?;
            let m = tail.strip_suffix(')').ok_or_else(bad)?;
            let (k, m) = (num(k)?, num(m)?);
            if k == 0 || k > m {
                return Err(bad());
            }
            return Ok(Self::Stiefel { k, m });
        }
        let (name, tail) = t.split_once('(').ok_or_else(bad)?;
        let m = num(tail.strip_suffix(')').ok_or_else(bad)?)?;
        let family = match name {
            "SO" => GroupFamily::SO,
            "SU" => GroupFamily::SU,
            "Sp" => GroupFamily::Sp,
            _ => return Err(bad()),
        };
        Ok(Self::Group { family, m })
    }
}

/// How a value of `pi_j(U)` was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transfer {
    pub value: PiValue,
    pub rule: &'static str,
    pub justification: String,
}

/// `pi_j(U)` for `U -> total -> base`.
pub fn les_transfer(total: &SpaceDescriptor, base: &SpaceDescriptor, j: u32) -> Transfer {
    let bj = base.pi(j);
    let bj1 = base.pi(j + 1);
    if bj.is_known_zero() && bj1.is_known_zero() {
        let v = total.pi(j);
        return Transfer {
            justification: format!(
                "pi_{j}({base}) = pi_{}({base}) = 0, so pi_{j}(U) = pi_{j}({total}) = {v}",
                j + 1
            ),
            value: v,
            rule: "les-pinch",
        };
    }
    // 0 = pi_2(E) -> pi_2(B) -> pi_1(U) -> pi_1(E) -> pi_1(B) = 0
    if j == 1 && bj.is_known_zero() && total.pi(2).is_known_zero() {
        if let (Some(b2), Some(e1)) = (bj1.rank(), total.pi(1).rank()) {
            return Transfer {
                value: PiValue::RankOnly(b2 + e1),
                rule: "les-rank-extension",
                justification: format!(
                    "0 -> pi_2({base}) -> pi_1(U) -> pi_1({total}) -> 0, so rank pi_1(U) = {b2} + {e1}"
                ),
            };
        }
    }
    Transfer {
        value: PiValue::Unknown,
        rule: "les-unresolved",
        justification: format!("pi_{j}({base}) = {bj}, pi_{}({base}) = {bj1}", j + 1),
    }
}

/// `(torus rank, number of simple factors)` of a compact group finitely
/// covered by `T^k x U~` with `U~` simply connected.
pub fn structure_from_pi(pi1: &FgAbelianGroup, pi3: &FgAbelianGroup) -> (u32, u32) {
    (pi1.rank(), pi3.rank())
}

/// One compact simple Lie algebra, listed once per isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleGroup {
    pub name: String,
    pub dim: u64,
    pub family: String,
    /// `pi_5` when the table covers it.
    pub pi5: Option<FgAbelianGroup>,
}

pub const EXCEPTIONAL: [(&str, u64); 5] = [("G2", 14), ("F4", 52), ("E6", 78), ("E7", 133), ("E8", 248)];

pub fn simple_group_dims(max_dim: u64) -> Vec<SimpleGroup> {
    let mut out = Vec::new();
    let tag = |family, m| pi_of_group(family, m, 5).known().cloned();
    for r in 1.. {
        let dim = r * (r + 2);
        if dim > max_dim {
            break;
        }
        let m = r + 1;
        let pi5 = if m == 2 { tag(GroupFamily::Sp, 1) } else { tag(GroupFamily::SU, m) };
        out.push(SimpleGroup {
            name: format!("SU({m})"),
            dim,
            family: format!("A{r}"),
            pi5,
        });
    }
    for r in 2.. {
        let dim = r * (2 * r + 1);
        if dim > max_dim {
            break;
        }
        let pi5 = if r == 2 { tag(GroupFamily::Sp, 2) } else { tag(GroupFamily::SO, 2 * r + 1) };
        out.push(SimpleGroup {
            name: format!("SO({})", 2 * r + 1),
            dim,
            family: format!("B{r}"),
            pi5,
        });
    }
    for r in 3.. {
        let dim = r * (2 * r + 1);
        if dim > max_dim {
            break;
        }
        out.push(SimpleGroup {
            name: format!("Sp({r})"),
            dim,
            family: format!("C{r}"),
            pi5: tag(GroupFamily::Sp, r),
        });
    }
    for r in 4.. {
        let dim = r * (2 * r - 1);
        if dim > max_dim {
            break;
        }
        out.push(SimpleGroup {
            name: format!("SO({})", 2 * r),
            dim,
            family: format!("D{r}"),
            pi5: tag(GroupFamily::SO, 2 * r),
        });
    }
    for (name, dim) in EXCEPTIONAL {
        if dim <= max_dim {
            out.push(SimpleGroup {
                name: name.to_string(),
                dim,
                family: name.to_string(),
                pi5: None,
            });
        }
    }
    out.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.family.cmp(&b.family)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditStep {
    pub rule: String,
    pub input: String,
    pub output: String,
    /// The standard fact the step relies on.
    pub paper_anchor: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ObstructionVerdict {
    Certificate,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonexistenceCertificate {
    pub problem: String,
    pub required_dim: i64,
    pub torus_rank: Option<u32>,
    pub simple_factor_count: Option<u32>,
    #[serde(serialize_with = "ser_pi5")]
    pub pi5_constraint: Option<FgAbelianGroup>,
    pub steps: Vec<AuditStep>,
    pub survivors: Vec<String>,
    pub verdict: ObstructionVerdict,
    pub model: &'static str,
}

fn ser_pi5<S: Serializer>(v: &Option<FgAbelianGroup>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(g) => s.serialize_str(&g.to_string()),
        None => s.serialize_str("unconstrained"),
    }
}

impl NonexistenceCertificate {
    pub fn is_certificate(&self) -> bool {
        self.verdict == ObstructionVerdict::Certificate
    }
}

const MODEL_NOTE: &str = "U is modelled as a compact Lie group finitely covered by T^k x U~ with U~ simply connected";

/// Tries to show that no compact Lie group acts freely on `total` with
/// quotient `base`.
pub fn obstruct_quotient(
    total: &SpaceDescriptor,
    base: &SpaceDescriptor,
) -> Result<NonexistenceCertificate, HomotopyError> {
    if !matches!(total, SpaceDescriptor::Group { .. }) {
        return Err(HomotopyError::Unsupported(format!("total space {total} is not a classical group")));
    }
    if matches!(base, SpaceDescriptor::Group { .. }) {
        return Err(HomotopyError::Unsupported(format!("base {base}")));
    }
    let mut steps = Vec::new();
    let required_dim = total.dim() - base.dim();
    steps.push(AuditStep {
        rule: "dimension".into(),
        input: format!("dim {total} = {}, dim {base} = {}", total.dim(), base.dim()),
        output: format!("dim U = {required_dim}"),
        paper_anchor: "fibration U -> E -> B".into(),
    });
    let mut cert = NonexistenceCertificate {
        problem: format!("free action of a compact Lie group U on {total} with quotient {base}"),
        required_dim,
        torus_rank: None,
        simple_factor_count: None,
        pi5_constraint: None,
        steps,
        survivors: Vec::new(),
        verdict: ObstructionVerdict::Inconclusive,
        model: MODEL_NOTE,
    };
    if required_dim <= 0 {
        cert.steps.push(AuditStep {
            rule: "dimension".into(),
            input: format!("dim U = {required_dim}"),
            output: "no positive-dimensional U; inconclusive".into(),
            paper_anchor: "fibration U -> E -> B".into(),
        });
        return Ok(cert);
    }

    let transfer_step = |j: u32, cert: &mut NonexistenceCertificate| {
        let t = les_transfer(total, base, j);
        cert.steps.push(AuditStep {
            rule: t.rule.into(),
            input: format!("pi_{j}({base}), pi_{}({base}), pi_{j}({total})", j + 1),
            output: format!("pi_{j}(U) = {}", t.value),
            paper_anchor: t.justification.clone(),
        });
        t.value
    };
    let pi1 = transfer_step(1, &mut cert);
    let pi3 = transfer_step(3, &mut cert);
    let (Some(k), Some(s)) = (pi1.rank(), pi3.rank()) else {
        return Ok(cert);
    };
    cert.torus_rank = Some(k);
    cert.simple_factor_count = Some(s);
    cert.steps.push(AuditStep {
        rule: "structure".into(),
        input: format!("rank pi_1(U) = {k}, rank pi_3(U) = {s}"),
        output: format!("U finitely covered by T^{k} x U~ with {s} simple factor(s)"),
        paper_anchor: "pi_1 of a simply connected simple group is 0 and pi_3 is Z".into(),
    });
    let simple_dim = required_dim - k as i64;
    match s {
        0 => {
            if simple_dim == 0 {
                cert.survivors.push(format!("T^{k}"));
            }
            cert.steps.push(AuditStep {
                rule: "torus".into(),
                input: format!("dim U = {required_dim}, torus rank {k}"),
                output: if simple_dim == 0 {
                    format!("survivor T^{k}")
                } else {
                    "no torus of that dimension".into()
                },
                paper_anchor: "a compact group without simple factors is a torus".into(),
            });
        }
        1 => {
            let pi5 = transfer_step(5, &mut cert);
            cert.pi5_constraint = pi5.known().cloned();
            let candidates = simple_group_dims(simple_dim.max(0) as u64);
            let mut by_dim = Vec::new();
            for c in candidates.iter().filter(|c| c.dim as i64 == simple_dim) {
                by_dim.push(c.name.clone());
                let excluded = match (&cert.pi5_constraint, &c.pi5) {
                    (Some(u), Some(t)) => u != t,
                    _ => false,
                };
                if !excluded {
                    cert.survivors.push(c.name.clone());
                }
            }
            cert.steps.push(AuditStep {
                rule: "dimension-filter".into(),
                input: format!("simple groups of dimension {simple_dim}"),
                output: if by_dim.is_empty() { "none".into() } else { by_dim.join(", ") },
                paper_anchor: "classification of compact simple Lie algebras".into(),
            });
            if !by_dim.is_empty() {
                cert.steps.push(AuditStep {
                    rule: "pi5-filter".into(),
                    input: format!(
                        "pi_5(U) = {}",
                        cert.pi5_constraint
                            .as_ref()
                            .map_or("unconstrained".to_string(), ToString::to_string)
                    ),
                    output: if cert.survivors.is_empty() {
                        "none".into()
                    } else {
                        cert.survivors.join(", ")
                    },
                    paper_anchor: "stable pi_5: SO 0, SU Z, Sp Z2".into(),
                });
            }
        }
        _ => {
            cert.steps.push(AuditStep {
                rule: "structure".into(),
                input: format!("{s} simple factors"),
                output: "several simple factors are not handled; inconclusive".into(),
                paper_anchor: "pi_3 counts simple factors".into(),
            });
            return Ok(cert);
        }
    }
    if cert.survivors.is_empty() {
        cert.verdict = ObstructionVerdict::Certificate;
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_form() {
        assert_eq!(FgAbelianGroup::new(0, [2, 3]), FgAbelianGroup::z_mod(6));
        assert_eq!(FgAbelianGroup::new(0, [4, 2]).torsion(), &[2, 4]);
        assert_eq!(FgAbelianGroup::new(1, [2]).to_string(), "Z+Z2");
        assert_eq!(FgAbelianGroup::new(0, [1]), FgAbelianGroup::zero());
        assert_eq!(FgAbelianGroup::new(0, [12, 18]).torsion(), &[6, 36]);
    }

    #[test]
    fn group_table() {
        assert_eq!(pi_of_group(GroupFamily::SO, 16, 1), PiValue::Known(FgAbelianGroup::z_mod(2)));
        assert_eq!(pi_of_group(GroupFamily::SO, 12, 3), PiValue::Known(FgAbelianGroup::z()));
        assert_eq!(pi_of_group(GroupFamily::SO, 8, 5), PiValue::Known(FgAbelianGroup::zero()));
        assert_eq!(pi_of_group(GroupFamily::SO, 6, 5), PiValue::Unknown);
        assert_eq!(pi_of_group(GroupFamily::SU, 2, 5), PiValue::Unknown);
        assert_eq!(pi_of_group(GroupFamily::SO, 16, 4), PiValue::Unknown);
    }

    #[test]
    fn structure() {
        let z = FgAbelianGroup::z();
        assert_eq!(structure_from_pi(&FgAbelianGroup::z_mod(2), &z), (0, 1));
        assert_eq!(structure_from_pi(&z, &z), (1, 1));
        assert_eq!(structure_from_pi(&FgAbelianGroup::zero(), &FgAbelianGroup::zero()), (0, 0));
    }

    #[test]
    fn rank_one_coincidences_listed_once() {
        let three: Vec<_> = simple_group_dims(3).into_iter().filter(|g| g.dim == 3).collect();
        assert_eq!(three.len(), 1);
        let ten: Vec<_> = simple_group_dims(10).into_iter().filter(|g| g.dim == 10).collect();
        assert_eq!(ten.len(), 1);
        let fifteen: Vec<_> = simple_group_dims(15).into_iter().filter(|g| g.dim == 15).collect();
        assert_eq!(fifteen.len(), 1);
    }

    #[test]
    fn stiefel_connectivity() {
        let v = SpaceDescriptor::Stiefel { k: 3, m: 11 };
        assert_eq!(v.connectivity(), Some(7));
        assert!(v.pi(7).is_known_zero());
        assert_eq!(v.pi(8), PiValue::Unknown);
        assert_eq!(v.dim(), 27);
    }

    #[test]
    fn circle_quotient_of_stiefel() {
        let m = SpaceDescriptor::CircleQuotient(Box::new(SpaceDescriptor::Stiefel { k: 3, m: 11 }));
        assert_eq!(m.pi(2), PiValue::Known(FgAbelianGroup::z()));
        assert!(m.pi(5).is_known_zero());
        assert_eq!(m.dim(), 26);
    }

    #[test]
    fn descriptor_round_trip() {
        for s in ["S^8", "V_3(R^11)", "S^1\\V_3(R^11)", "SO(16)", "SU(6)", "Sp(2)"] {
            let d: SpaceDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert!("V_4(R^3)".parse::<SpaceDescriptor>().is_err());
        assert!("G2".parse::<SpaceDescriptor>().is_err());
    }

    #[test]
    fn unsupported_descriptors() {
        assert!(obstruct_quotient(&SpaceDescriptor::Sphere(3), &SpaceDescriptor::Sphere(2)).is_err());
        assert!(obstruct_quotient(&SpaceDescriptor::so(4), &SpaceDescriptor::so(3)).is_err());
    }
}
