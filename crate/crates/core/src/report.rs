//! Versioned JSON reports.
//!
//! Exact rationals are written as `"p/q"` strings. Field order is fixed, so
//! a report is byte-identical across runs with the same seed and version.

use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::fixtures::RunOptions;
use crate::homotopy::NonexistenceCertificate;
use crate::isotropy::{IsotypicDecomposition, SummandType};
use crate::linalg::Rational;
use crate::metric::{Lambda, MetricGram, SubmersionVerdict};

pub const REPORT_VERSION: &str = "1.0";

/// Serializes an exact rational as `"p/q"` (or `"p"` for integers).
pub fn ser_rational<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn ser_rationals<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(ToString::to_string))
}

fn ser_opt_rationals<S: Serializer>(xs: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
    match xs {
        Some(v) => ser_rationals(v, s),
        None => s.serialize_none(),
    }
}

/// Which report sections to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sections {
    pub decomposition: bool,
    pub metric: bool,
    pub verdict: bool,
    pub obstruction: bool,
}

impl Sections {
    pub fn all() -> Self {
        Self {
            decomposition: true,
            metric: true,
            verdict: true,
            obstruction: true,
        }
    }

    pub fn none() -> Self {
        Self {
            decomposition: false,
            metric: false,
            verdict: false,
            obstruction: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioSection {
    pub id: String,
    pub n: usize,
    pub chain: String,
    pub base: String,
    pub l: String,
    pub catalog_entry: Option<String>,
    pub seed: u64,
    pub tol: f64,
    pub status: String,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandReport {
    pub label: String,
    pub dim: usize,
    #[serde(rename = "type")]
    pub kind: SummandType,
    pub class: usize,
    /// 0 for the fiber `m1`, 1 for the horizontal part `m2`.
    pub part: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionSection {
    pub dims: Vec<usize>,
    pub summands: Vec<SummandReport>,
    pub equivalence_classes: Vec<Vec<usize>>,
    pub commutant_dim: usize,
    pub symmetric_commutant_dim: usize,
    pub max_invariance_residual: f64,
}

impl DecompositionSection {
    pub fn new(d: &IsotypicDecomposition) -> Self {
        let summands = d
            .summands
            .iter()
            .enumerate()
            .map(|(i, s)| SummandReport {
                label: format!("p{}", i + 1),
                dim: s.dim,
                kind: s.kind,
                class: s.class,
                part: s.part,
            })
            .collect();
        Self {
            dims: d.dims(),
            summands,
            equivalence_classes: d.equivalence_classes.clone(),
            commutant_dim: d.commutant_dim,
            symmetric_commutant_dim: d.symmetric_commutant_dim,
            max_invariance_residual: d.max_invariance_residual,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MetricSection {
    pub lambdas: Vec<Lambda>,
    #[serde(serialize_with = "ser_rational")]
    pub determinant: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub ad_invariance_residual: Rational,
    #[serde(serialize_with = "ser_opt_rationals")]
    pub expected_ratios: Option<Vec<Rational>>,
    pub matches_expected: Option<bool>,
}

impl MetricSection {
    pub fn new(gram: &MetricGram, lambdas: Vec<Lambda>, expected: Option<Vec<Rational>>) -> Self {
        let matches_expected = expected.as_ref().map(|e| {
            let mut distinct: Vec<&Rational> = Vec::new();
            for l in &lambdas {
                if !distinct.contains(&&l.ratio) {
                    distinct.push(&l.ratio);
                }
            }
            distinct.len() == e.len() && distinct.iter().zip(e).all(|(a, b)| *a == b)
        });
        Self {
            lambdas,
            determinant: gram.determinant.clone(),
            ad_invariance_residual: gram.ad_invariance_residual.clone(),
            expected_ratios: expected,
            matches_expected,
        }
    }

    /// Ratios `lambda_i / lambda_1` in summand order.
    pub fn ratios(&self) -> Vec<Rational> {
        self.lambdas.iter().map(|l| l.ratio.clone()).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictSection {
    #[serde(flatten)]
    pub verdict: SubmersionVerdict,
    pub expected: Option<bool>,
    pub matches_expected: Option<bool>,
}

impl VerdictSection {
    pub fn new(verdict: SubmersionVerdict, expected: Option<bool>) -> Self {
        let matches_expected = expected.map(|e| e == verdict.is_riemannian_submersion);
        Self {
            verdict,
            expected,
            matches_expected,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub generator: String,
    pub scenario: ScenarioSection,
    pub decomposition: Option<DecompositionSection>,
    pub metric: Option<MetricSection>,
    pub verdict: Option<VerdictSection>,
    pub obstruction: Option<NonexistenceCertificate>,
}

fn generator() -> String {
    format!("sublab {}", env!("CARGO_PKG_VERSION"))
}

impl Report {
    pub fn new(scenario: ScenarioSection) -> Self {
        Self {
            version: REPORT_VERSION,
            generator: generator(),
            scenario,
            decomposition: None,
            metric: None,
            verdict: None,
            obstruction: None,
        }
    }

    /// A negative submersion verdict, or an obstruction that did not close.
    pub fn is_negative(&self) -> bool {
        self.verdict.as_ref().is_some_and(|v| !v.verdict.is_riemannian_submersion)
            || self.obstruction.as_ref().is_some_and(|o| !o.is_certificate())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.scenario;
        let _ = writeln!(out, "{} n={}  [{}]", s.id, s.n, s.status);
        let _ = writeln!(out, "  chain: {}", s.chain);
        if !s.note.is_empty() {
            let _ = writeln!(out, "  note: {}", s.note);
        }
        if let Some(d) = &self.decomposition {
            let _ = writeln!(out, "decomposition (seed {}, tol {:e})", s.seed, s.tol);
            for p in &d.summands {
                let part = if p.part == 0 { "fiber" } else { "horizontal" };
                let _ = writeln!(
                    out,
                    "  {:<4} dim {:>3}  {:<10} class {}  {}",
                    p.label,
                    p.dim,
                    p.kind.name(),
                    p.class,
                    part
                );
            }
            let _ = writeln!(
                out,
                "  commutant {}  symmetric {}",
                d.commutant_dim, d.symmetric_commutant_dim
            );
        }
        if let Some(m) = &self.metric {
            let _ = writeln!(out, "metric");
            for l in &m.lambdas {
                let _ = writeln!(out, "  lambda_{} = {}  ratio {}", l.summand, l.value, l.ratio);
            }
            let _ = writeln!(out, "  det {}  ad residual {}", m.determinant, m.ad_invariance_residual);
            if let Some(ok) = m.matches_expected {
                let _ = writeln!(out, "  matches expected ratios: {ok}");
            }
        }
        if let Some(v) = &self.verdict {
            let vd = &v.verdict;
            let _ = writeln!(out, "verdict: {}", vd.is_riemannian_submersion);
            let _ = writeln!(
                out,
                "  (i) {}  (ii) {}  (iii) {}",
                vd.condition_i.holds, vd.condition_ii.holds, vd.condition_iii.holds
            );
            for w in &vd.condition_i.witnesses {
                let _ = writeln!(out, "  {} (dim {}) splits into {}", w.q, w.dim, w.splits_into.join(" + "));
            }
            for w in &vd.condition_ii.witnesses {
                let _ = writeln!(out, "  Hom({}, {}) has dim {}", w.p, w.q, w.hom_dim);
            }
            if let Some(c) = &vd.counterexample {
                let _ = writeln!(out, "  <{}, {}> = {}", c.left, c.right, c.value);
            }
            if let Some(e) = v.expected {
                let _ = writeln!(out, "  expected {e}");
            }
        }
        if let Some(o) = &self.obstruction {
            out.push_str(&certificate_text(o));
        }
        out
    }
}

pub fn certificate_text(c: &NonexistenceCertificate) -> String {
    let mut out = String::new();
    let verdict = if c.is_certificate() { "certificate" } else { "inconclusive" };
    let _ = writeln!(out, "obstruction: {verdict}");
    let _ = writeln!(out, "  {}", c.problem);
    let _ = writeln!(out, "  required dim {}", c.required_dim);
    for (i, st) in c.steps.iter().enumerate() {
        let _ = writeln!(out, "  {}. [{}] {} => {}", i + 1, st.rule, st.input, st.output);
    }
    if !c.survivors.is_empty() {
        let _ = writeln!(out, "  survivors: {}", c.survivors.join(", "));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepEntry {
    pub n: usize,
    pub report: Option<Report>,
    pub error: Option<String>,
}

impl SweepEntry {
    pub fn ok(n: usize, report: Report) -> Self {
        Self {
            n,
            report: Some(report),
            error: None,
        }
    }

    pub fn failed(n: usize, error: String) -> Self {
        Self { n, report: None, error: Some(error) }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepSummary {
    pub runs: usize,
    pub errors: usize,
    pub negative: usize,
    pub certificates: usize,
    pub verdicts_true: usize,
    /// Distinct `lambda_i / lambda_1` values seen across all runs.
    #[serde(serialize_with = "ser_rationals")]
    pub ratios: Vec<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub version: &'static str,
    pub generator: String,
    pub fixture: String,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub tol: f64,
    pub summary: SweepSummary,
    pub entries: Vec<SweepEntry>,
}

impl SweepReport {
    pub fn new(fixture: &str, n_min: usize, n_max: usize, opts: &RunOptions, entries: Vec<SweepEntry>) -> Self {
        let mut summary = SweepSummary {
            runs: entries.len(),
            ..Default::default()
        };
        for e in &entries {
            let Some(r) = &e.report else {
                summary.errors += 1;
                continue;
            };
            summary.negative += usize::from(r.is_negative());
            summary.certificates += usize::from(r.obstruction.as_ref().is_some_and(|o| o.is_certificate()));
            summary.verdicts_true += usize::from(r.verdict.as_ref().is_some_and(|v| v.verdict.is_riemannian_submersion));
            for x in r.metric.iter().flat_map(|m| m.ratios()) {
                if !summary.ratios.contains(&x) {
                    summary.ratios.push(x);
                }
            }
        }
        Self {
            version: REPORT_VERSION,
            generator: generator(),
            fixture: fixture.to_string(),
            n_min,
            n_max,
            seed: opts.seed,
            tol: opts.tol,
            summary,
            entries,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.summary.errors > 0 || self.summary.negative > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "sweep {} n in [{}, {}]: {} runs, {} errors, {} negative, {} certificates, {} true verdicts",
            self.fixture,
            self.n_min,
            self.n_max,
            self.summary.runs,
            self.summary.errors,
            self.summary.negative,
            self.summary.certificates,
            self.summary.verdicts_true
        );
        for e in &self.entries {
            match (&e.report, &e.error) {
                (Some(r), _) => {
                    let mut parts = Vec::new();
                    if let Some(d) = &r.decomposition {
                        parts.push(format!("dims {:?}", d.dims));
                    }
                    if let Some(m) = &r.metric {
                        let ratios: Vec<String> = m.ratios().iter().map(ToString::to_string).collect();
                        parts.push(format!("ratios [{}]", ratios.join(", ")));
                    }
                    if let Some(v) = &r.verdict {
                        parts.push(format!("verdict {}", v.verdict.is_riemannian_submersion));
                    }
                    if let Some(o) = &r.obstruction {
                        let tag = if o.is_certificate() { "certificate" } else { "inconclusive" };
                        parts.push(format!("{tag} (dim {})", o.required_dim));
                    }
                    let _ = writeln!(out, "  n={:<4} {}", e.n, parts.join("  "));
                }
                (None, Some(err)) => {
                    let _ = writeln!(out, "  n={:<4} error: {err}", e.n);
                }
                (None, None) => {}
            }
        }
        out
    }
}
