//! Catalog of triples `(g, k1, k2)` with `g = k1 + k2`.
//!
//! One record per line:
//!
//! ```text
//! g | k1 | k2 | h | space | symmetric | supported
//! ```
//!
//! Labels are products of factors such as `so(4n-1)`, `sp(n)sp(1)` or `g2`,
//! with ranks affine in `n`. `#` starts a comment.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub const BUILTIN_CATALOG: &str = include_str!("../data/onishchik.catalog");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: dimension identity fails for {entry} at n = {n}: dim g - dim k1 = {lhs}, dim k2 - dim h = {rhs}")]
    DimensionIdentity {
        line: usize,
        entry: String,
        n: i64,
        lhs: i64,
        rhs: i64,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// `coef * n + constant`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankExpr {
    pub coef: i64,
    pub constant: i64,
}

impl RankExpr {
    pub fn constant(c: i64) -> Self {
        Self { coef: 0, constant: c }
    }

    pub fn eval(self, n: i64) -> i64 {
        self.coef * n + self.constant
    }

    pub fn is_parametric(self) -> bool {
        self.coef != 0
    }
}

impl FromStr for RankExpr {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty rank".into());
        }
        let mut expr = RankExpr { coef: 0, constant: 0 };
        let mut rest = s.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let sign = match rest.as_bytes()[0] {
                b'+' => {
                    rest = &rest[1..];
                    1
                }
                b'-' => {
                    rest = &rest[1..];
                    -1
                }
                _ if first => 1,
                _ => return Err(format!("expected + or - in rank '{s}'")),
            };
            first = false;
            let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
            let value = if digits > 0 {
                Some(rest[..digits].parse::<i64>().map_err(|e| e.to_string())?)
            } else {
                None
            };
            rest = &rest[digits..];
            if let Some(r) = rest.strip_prefix('n') {
                expr.coef += sign * value.unwrap_or(1);
                rest = r;
            } else if let Some(v) = value {
                expr.constant += sign * v;
            } else {
                return Err(format!("bad rank '{s}'"));
            }
        }
        Ok(expr)
    }
}

impl fmt::Display for RankExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coef, self.constant) {
            (0, c) => write!(f, "{c}"),
            (a, c) => {
                match a {
                    1 => write!(f, "n")?,
                    -1 => write!(f, "-n")?,
                    a => write!(f, "{a}n")?,
                }
                match c.cmp(&0) {
                    std::cmp::Ordering::Greater => write!(f, "+{c}"),
                    std::cmp::Ordering::Less => write!(f, "{c}"),
                    std::cmp::Ordering::Equal => Ok(()),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorFamily {
    So,
    Su,
    U,
    Sp,
    Spin,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl FactorFamily {
    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "so" => Self::So,
            "su" => Self::Su,
            "u" => Self::U,
            "sp" => Self::Sp,
            "spin" => Self::Spin,
            "g2" => Self::G2,
            "f4" => Self::F4,
            "e6" => Self::E6,
            "e7" => Self::E7,
            "e8" => Self::E8,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::So => "so",
            Self::Su => "su",
            Self::U => "u",
            Self::Sp => "sp",
            Self::Spin => "spin",
            Self::G2 => "g2",
            Self::F4 => "f4",
            Self::E6 => "e6",
            Self::E7 => "e7",
            Self::E8 => "e8",
        }
    }

    pub fn is_exceptional(self) -> bool {
        matches!(self, Self::G2 | Self::F4 | Self::E6 | Self::E7 | Self::E8)
    }

    /// Smallest rank for which the factor is a nonzero algebra.
    fn min_rank(self) -> i64 {
        match self {
            Self::So | Self::Su => 2,
            Self::Spin => 3,
            _ => 1,
        }
    }

    fn dim(self, m: i64) -> i64 {
        match self {
            Self::So | Self::Spin => m * (m - 1) / 2,
            Self::Su => m * m - 1,
            Self::U => m * m,
            Self::Sp => m * (2 * m + 1),
            Self::G2 => 14,
            Self::F4 => 52,
            Self::E6 => 78,
            Self::E7 => 133,
            Self::E8 => 248,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub family: FactorFamily,
    pub rank: Option<RankExpr>,
}

impl Factor {
    pub fn dim(&self, n: i64) -> i64 {
        self.family.dim(self.rank.map_or(0, |r| r.eval(n)))
    }

    pub fn render(&self, n: i64) -> String {
        match self.rank {
            Some(r) => format!("{}({})", self.family.name(), r.eval(n)),
            None => self.family.name().to_string(),
        }
    }
}

/// A product of simple or abelian factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraLabel {
    pub factors: Vec<Factor>,
}

impl AlgebraLabel {
    pub fn dim(&self, n: i64) -> i64 {
        self.factors.iter().map(|f| f.dim(n)).sum()
    }

    pub fn is_parametric(&self) -> bool {
        self.factors.iter().any(|f| f.rank.is_some_and(RankExpr::is_parametric))
    }

    /// True when every factor is one of `so`, `su`, `u`, `sp`.
    pub fn is_classical(&self) -> bool {
        self.factors
            .iter()
            .all(|f| !f.family.is_exceptional() && f.family != FactorFamily::Spin)
    }

    pub fn render(&self, n: i64) -> String {
        self.factors.iter().map(|f| f.render(n)).collect()
    }

    fn legal_at(&self, n: i64) -> bool {
        self.factors
            .iter()
            .all(|f| f.rank.is_none_or(|r| r.eval(n) >= f.family.min_rank()))
    }
}

impl FromStr for AlgebraLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut factors = Vec::new();
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err("empty label".into());
        }
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c == '+' || c.is_whitespace());
            let name_len = rest
                .find(|c: char| !c.is_ascii_alphanumeric())
                .unwrap_or(rest.len());
            let name = &rest[..name_len];
            let family = FactorFamily::from_name(name).ok_or_else(|| format!("unknown factor '{name}' in '{s}'"))?;
            rest = &rest[name_len..];
            let rank = if family.is_exceptional() {
                None
            } else {
                let inner = rest
                    .strip_prefix('(')
                    .ok_or_else(|| format!("expected '(' after '{name}' in '{s}'"))?;
                let close = inner.find(')').ok_or_else(|| format!("unclosed '(' in '{s}'"))?;
                let r: RankExpr = inner[..close].parse()?;
                rest = &inner[close + 1..];
                Some(r)
            };
            factors.push(Factor { family, rank });
        }
        Ok(Self { factors })
    }
}

impl fmt::Display for AlgebraLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for factor in &self.factors {
            match factor.rank {
                Some(r) => write!(f, "{}({r})", factor.family.name())?,
                None => f.write_str(factor.family.name())?,
            }
        }
        Ok(())
    }
}

impl Serialize for AlgebraLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub line: usize,
    pub g: AlgebraLabel,
    pub k1: AlgebraLabel,
    pub k2: AlgebraLabel,
    pub h: AlgebraLabel,
    /// Empty when the space has no standard name.
    pub space: String,
    pub symmetric: bool,
    pub supported: bool,
}

impl CatalogEntry {
    fn labels(&self) -> [&AlgebraLabel; 4] {
        [&self.g, &self.k1, &self.k2, &self.h]
    }

    pub fn is_parametric(&self) -> bool {
        self.labels().iter().any(|l| l.is_parametric())
    }

    /// Smallest `n >= 1` at which every factor is nonzero.
    pub fn smallest_n(&self) -> Option<i64> {
        (1..=64).find(|&n| self.labels().iter().all(|l| l.legal_at(n)))
    }

    pub fn name(&self) -> String {
        format!("{}/{} = {}/{}", self.g, self.k1, self.k2, self.h)
    }

    pub fn render(&self, n: i64) -> String {
        format!(
            "{}/{} = {}/{}",
            self.g.render(n),
            self.k1.render(n),
            self.k2.render(n),
            self.h.render(n)
        )
    }

    /// `(dim g - dim k1, dim k2 - dim h)` at `n`.
    pub fn dimension_sides(&self, n: i64) -> (i64, i64) {
        (
            self.g.dim(n) - self.k1.dim(n),
            self.k2.dim(n) - self.h.dim(n),
        )
    }

    /// Checks the dimension identity at the smallest legal `n` and the next.
    pub fn check_dimension_identity(&self) -> Result<(), CatalogError> {
        let n0 = self.smallest_n().ok_or_else(|| CatalogError::Parse {
            line: self.line,
            message: format!("no legal n for {}", self.name()),
        })?;
        for n in [n0, n0 + 1] {
            let (lhs, rhs) = self.dimension_sides(n);
            if lhs != rhs {
                return Err(CatalogError::DimensionIdentity {
                    line: self.line,
                    entry: self.name(),
                    n,
                    lhs,
                    rhs,
                });
            }
        }
        Ok(())
    }
}

fn parse_flag(s: &str) -> Option<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "yes" | "true" | "y" => Some(true),
        "no" | "false" | "n" => Some(false),
        _ => None,
    }
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: String| CatalogError::Parse { line, message };
        let cols: Vec<&str> = body.split('|').map(str::trim).collect();
        if cols.len() != 7 {
            return Err(err(format!("expected 7 columns, found {}", cols.len())));
        }
        let label = |s: &str| s.parse::<AlgebraLabel>().map_err(err);
        let flag = |s: &str, what: &str| parse_flag(s).ok_or_else(|| err(format!("bad {what} flag '{s}'")));
        let entry = CatalogEntry {
            line,
            g: label(cols[0])?,
            k1: label(cols[1])?,
            k2: label(cols[2])?,
            h: label(cols[3])?,
            space: cols[4].to_string(),
            symmetric: flag(cols[5], "symmetric")?,
            supported: flag(cols[6], "supported")?,
        };
        if entry.supported && !entry.labels().iter().all(|l| l.is_classical()) {
            return Err(err(format!(
                "{} is marked supported but uses spin or exceptional factors",
                entry.name()
            )));
        }
        entry.check_dimension_identity()?;
        entries.push(entry);
    }
    Ok(entries)
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<CatalogEntry>, CatalogError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_catalog(&text)
}

pub fn builtin_catalog() -> Vec<CatalogEntry> {
    parse_catalog(BUILTIN_CATALOG).expect("shipped catalog parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_expressions() {
        let e: RankExpr = "4n-1".parse().unwrap();
        assert_eq!(e, RankExpr { coef: 4, constant: -1 });
        assert_eq!(e.eval(3), 11);
        assert_eq!("n".parse::<RankExpr>().unwrap().eval(5), 5);
        assert_eq!("16".parse::<RankExpr>().unwrap(), RankExpr::constant(16));
        assert_eq!("2n + 2".parse::<RankExpr>().unwrap().to_string(), "2n+2");
        assert!("n n".parse::<RankExpr>().is_err());
        assert!("x".parse::<RankExpr>().is_err());
    }

    #[test]
    fn labels() {
        let l: AlgebraLabel = "sp(n-1)sp(1)".parse().unwrap();
        assert_eq!(l.factors.len(), 2);
        assert_eq!(l.dim(3), 10 + 3);
        assert_eq!(l.render(3), "sp(2)sp(1)");
        assert!(l.is_classical());
        let g: AlgebraLabel = "g2".parse().unwrap();
        assert_eq!(g.dim(0), 14);
        assert!(!g.is_classical());
        assert!("so".parse::<AlgebraLabel>().is_err());
        assert!("foo(3)".parse::<AlgebraLabel>().is_err());
    }

    #[test]
    fn flags_and_columns() {
        let err = parse_catalog("so(3) | so(2) | so(3)").unwrap_err();
        assert!(matches!(err, CatalogError::Parse { line: 1, .. }));
        let err = parse_catalog("\n\nso(4n) | so(4n-1) | sp(n) | sp(n-1) | | maybe | yes").unwrap_err();
        assert!(matches!(err, CatalogError::Parse { line: 3, .. }));
    }
}
