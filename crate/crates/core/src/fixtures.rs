//! Candidate submersions `G -> K2/L` as runnable fixtures.

use rayon::prelude::*;
use thiserror::Error;

use crate::catalog::{AlgebraLabel, CatalogEntry};
use crate::homotopy::{obstruct_quotient, GroupFamily, HomotopyError, SpaceDescriptor};
use crate::linalg::{frac, int, Rational};
use crate::metric::{
    analyze, decompose_chain, induced_metric, metric_constants, so_even_sphere, so_quaternionic, su_chain,
    ChainScenario, MetricError, SoQuaternionicBase,
};
use crate::report::{DecompositionSection, MetricSection, Report, ScenarioSection, Sections, SweepEntry, SweepReport, VerdictSection};

pub const OUT_OF_SCOPE: &str = "out of scope (spin/exceptional)";

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("unknown scenario '{0}'")]
    UnknownFixture(String),
    #[error("{id} requires {min} <= n{}, got n = {n}", max.map(|m| format!(" <= {m}")).unwrap_or_default())]
    OutOfRange {
        id: String,
        n: usize,
        min: usize,
        max: Option<usize>,
    },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
}

impl ScenarioError {
    /// Errors caused by the request rather than by the computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Self::UnknownFixture(_) | Self::OutOfRange { .. } | Self::Metric(MetricError::InvalidScenario(_))
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Chain {
    SoSphere { unitary: bool },
    Su { projective: bool },
    SoQuaternionic(SoQuaternionicBase),
    Spin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Obstruction {
    None,
    SoSphere,
    SuSphere,
    SuProjective,
    Stiefel,
    StiefelCircle,
    So16,
}

#[derive(Clone, Debug)]
pub struct ScenarioFixture {
    pub id: &'static str,
    pub g: &'static str,
    pub k1: &'static str,
    pub k2: &'static str,
    pub h: &'static str,
    pub l: &'static str,
    pub base: &'static str,
    pub n_min: usize,
    pub n_max: Option<usize>,
    pub supported: bool,
    pub expected_verdict: Option<bool>,
    chain: Chain,
    obstruction: Obstruction,
}

pub static FIXTURES: &[ScenarioFixture] = &[
    ScenarioFixture {
        id: "so16-s8",
        g: "so(16)",
        k1: "so(15)",
        k2: "spin(9)",
        h: "spin(7)",
        l: "spin(8)",
        base: "S^8",
        n_min: 1,
        n_max: Some(1),
        supported: false,
        expected_verdict: Some(true),
        chain: Chain::Spin,
        obstruction: Obstruction::So16,
    },
    ScenarioFixture {
        id: "so2n-u-sphere",
        g: "so(2n)",
        k1: "u(n)",
        k2: "so(2n-1)",
        h: "u(n-1)",
        l: "so(2n-2)",
        base: "S^{2n-2}",
        n_min: 4,
        n_max: None,
        supported: true,
        expected_verdict: Some(true),
        chain: Chain::SoSphere { unitary: true },
        obstruction: Obstruction::SoSphere,
    },
    ScenarioFixture {
        id: "su2n-sphere",
        g: "su(2n)",
        k1: "sp(n)",
        k2: "su(2n-1)",
        h: "sp(n-1)",
        l: "su(2n-2)",
        base: "S^{4n-3}",
        n_min: 3,
        n_max: None,
        supported: true,
        expected_verdict: Some(true),
        chain: Chain::Su { projective: false },
        obstruction: Obstruction::SuSphere,
    },
    ScenarioFixture {
        id: "su2n-cp",
        g: "su(2n)",
        k1: "sp(n)",
        k2: "su(2n-1)",
        h: "sp(n-1)",
        l: "u(2n-2)",
        base: "CP^{2n-2}",
        n_min: 3,
        n_max: None,
        supported: true,
        expected_verdict: Some(true),
        chain: Chain::Su { projective: true },
        obstruction: Obstruction::SuProjective,
    },
    ScenarioFixture {
        id: "so2n-su-sphere",
        g: "so(2n)",
        k1: "su(n)",
        k2: "so(2n-1)",
        h: "su(n-1)",
        l: "so(2n-2)",
        base: "S^{2n-2}",
        n_min: 4,
        n_max: None,
        supported: true,
        expected_verdict: None,
        chain: Chain::SoSphere { unitary: false },
        obstruction: Obstruction::SoSphere,
    },
    ScenarioFixture {
        id: "so4n-sphere",
        g: "so(4n)",
        k1: "sp(n)sp(1)",
        k2: "so(4n-1)",
        h: "sp(n-1)sp(1)",
        l: "so(4n-2)",
        base: "S^{4n-2}",
        n_min: 3,
        n_max: None,
        supported: true,
        expected_verdict: Some(false),
        chain: Chain::SoQuaternionic(SoQuaternionicBase::Sphere),
        obstruction: Obstruction::None,
    },
    ScenarioFixture {
        id: "so4n-unit-tangent",
        g: "so(4n)",
        k1: "sp(n)sp(1)",
        k2: "so(4n-1)",
        h: "sp(n-1)sp(1)",
        l: "so(4n-3)",
        base: "T^1S^{4n-2}",
        n_min: 3,
        n_max: None,
        supported: true,
        expected_verdict: Some(false),
        chain: Chain::SoQuaternionic(SoQuaternionicBase::UnitTangent),
        obstruction: Obstruction::None,
    },
    ScenarioFixture {
        id: "so4n-stiefel",
        g: "so(4n)",
        k1: "sp(n)sp(1)",
        k2: "so(4n-1)",
        h: "sp(n-1)sp(1)",
        l: "so(4n-4)",
        base: "V_3(R^{4n-1})",
        n_min: 3,
        n_max: None,
        supported: true,
        expected_verdict: Some(true),
        chain: Chain::SoQuaternionic(SoQuaternionicBase::Stiefel),
        obstruction: Obstruction::Stiefel,
    },
    ScenarioFixture {
        id: "so4n-stiefel-circle",
        g: "so(4n)",
        k1: "sp(n)sp(1)",
        k2: "so(4n-1)",
        h: "sp(n-1)sp(1)",
        l: "so(4n-4)",
        base: "S^1\\V_3(R^{4n-1})",
        n_min: 3,
        n_max: None,
        supported: true,
        expected_verdict: Some(true),
        chain: Chain::SoQuaternionic(SoQuaternionicBase::Stiefel),
        obstruction: Obstruction::StiefelCircle,
    },
];

pub fn fixtures() -> &'static [ScenarioFixture] {
    FIXTURES
}

pub fn fixture(id: &str) -> Result<&'static ScenarioFixture, ScenarioError> {
    FIXTURES
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| ScenarioError::UnknownFixture(id.to_string()))
}

fn render(label: &str, n: usize) -> String {
    label
        .parse::<AlgebraLabel>()
        .map(|l| l.render(n as i64))
        .unwrap_or_else(|_| label.to_string())
}

fn substitute(template: &str, n: usize) -> String {
    let mut out = String::new();
    let mut rest = template;
    while let Some(start) = rest.find('{') {
        out.push_str(&rest[..start]);
        let Some(len) = rest[start..].find('}') else { break };
        let inner = &rest[start + 1..start + len];
        match inner.parse::<crate::catalog::RankExpr>() {
            Ok(e) => out.push_str(&e.eval(n as i64).to_string()),
            Err(_) => out.push_str(&rest[start..=start + len]),
        }
        rest = &rest[start + len + 1..];
    }
    out.push_str(rest);
    out
}

impl ScenarioFixture {
    pub fn check_n(&self, n: usize) -> Result<(), ScenarioError> {
        if n < self.n_min || self.n_max.is_some_and(|m| n > m) {
            return Err(ScenarioError::OutOfRange {
                id: self.id.to_string(),
                n,
                min: self.n_min,
                max: self.n_max,
            });
        }
        Ok(())
    }

    pub fn default_n(&self) -> usize {
        self.n_min
    }

    /// The catalog row `G/K1 = K2/H` this fixture refines.
    pub fn catalog_entry<'a>(&self, catalog: &'a [CatalogEntry]) -> Option<&'a CatalogEntry> {
        let n = self.n_min;
        let key = [self.g, self.k1, self.k2, self.h].map(|l| render(l, n));
        catalog.iter().find(|e| {
            [&e.g, &e.k1, &e.k2, &e.h]
                .map(|l| l.render(n as i64))
                .iter()
                .zip(&key)
                .all(|(a, b)| a == b)
        })
    }

    /// `G/K1 = K2/H -> K2/L = base`.
    pub fn chain_label(&self, n: usize) -> String {
        let r = |l| render(l, n);
        format!(
            "{}/{} = {}/{} -> {}/{} = {}",
            r(self.g),
            r(self.k1),
            r(self.k2),
            r(self.h),
            r(self.k2),
            r(self.l),
            self.base_name(n)
        )
    }

    pub fn base_name(&self, n: usize) -> String {
        substitute(self.base, n)
    }

    pub fn build(&self, n: usize) -> Result<ChainScenario, ScenarioError> {
        self.check_n(n)?;
        Ok(match self.chain {
            Chain::SoSphere { unitary } => so_even_sphere(n, unitary)?,
            Chain::Su { projective } => su_chain(n, projective)?,
            Chain::SoQuaternionic(base) => so_quaternionic(n, base)?,
            Chain::Spin => return Err(MetricError::InvalidScenario(OUT_OF_SCOPE.into()).into()),
        })
    }

    /// `lambda_i / lambda_1` for the fiber summands, when known in closed form.
    pub fn expected_ratios(&self, n: usize) -> Option<Vec<Rational>> {
        match self.chain {
            Chain::SoSphere { unitary: true } => Some(vec![int(1), frac(1, 2)]),
            Chain::Su { .. } => Some(vec![int(1), frac(n as i64, 2 * n as i64 - 1), frac(1, 2)]),
            _ => None,
        }
    }

    /// `(total, base)` for the nonexistence argument, if the fixture has one.
    pub fn obstruction_problem(&self, n: usize) -> Option<(SpaceDescriptor, SpaceDescriptor)> {
        let n = n as u64;
        let group = |family, m| SpaceDescriptor::Group { family, m };
        let stiefel = || SpaceDescriptor::Stiefel { k: 3, m: 4 * n - 1 };
        Some(match self.obstruction {
            Obstruction::None => return None,
            Obstruction::So16 => (SpaceDescriptor::so(16), SpaceDescriptor::Sphere(8)),
            Obstruction::SoSphere => (SpaceDescriptor::so(2 * n), SpaceDescriptor::Sphere(2 * n - 2)),
            Obstruction::SuSphere => (group(GroupFamily::SU, 2 * n), SpaceDescriptor::Sphere(4 * n - 3)),
            Obstruction::SuProjective => (
                group(GroupFamily::SU, 2 * n),
                SpaceDescriptor::CircleQuotient(Box::new(SpaceDescriptor::Sphere(4 * n - 3))),
            ),
            Obstruction::Stiefel => (SpaceDescriptor::so(4 * n), stiefel()),
            Obstruction::StiefelCircle => (
                SpaceDescriptor::so(4 * n),
                SpaceDescriptor::CircleQuotient(Box::new(stiefel())),
            ),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunOptions {
    pub seed: u64,
    pub tol: f64,
    pub sections: Sections,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            seed: crate::isotropy::DEFAULT_SEED,
            tol: crate::isotropy::DEFAULT_TOL,
            sections: Sections::all(),
        }
    }
}

pub fn run_scenario(fx: &ScenarioFixture, n: usize, opts: &RunOptions) -> Result<Report, ScenarioError> {
    fx.check_n(n)?;
    let catalog = crate::catalog::builtin_catalog();
    let mut report = Report::new(ScenarioSection {
        id: fx.id.to_string(),
        n,
        chain: fx.chain_label(n),
        base: fx.base_name(n),
        l: render(fx.l, n),
        catalog_entry: fx.catalog_entry(&catalog).map(|e| e.name()),
        seed: opts.seed,
        tol: opts.tol,
        status: if fx.supported { "ok".into() } else { OUT_OF_SCOPE.into() },
        note: String::new(),
    });
    let s = opts.sections;
    if fx.supported && (s.decomposition || s.metric || s.verdict) {
        let chain = fx.build(n)?;
        report.scenario.note = chain.note.clone();
        let under_h = decompose_chain(&chain, opts.seed, opts.tol)?;
        let gram = if s.metric || s.verdict { Some(induced_metric(&chain)?) } else { None };
        if s.decomposition {
            report.decomposition = Some(DecompositionSection::new(&under_h));
        }
        if let (true, Some(gram)) = (s.metric, &gram) {
            let lambdas = metric_constants(gram, &under_h)?;
            report.metric = Some(MetricSection::new(gram, lambdas, fx.expected_ratios(n)));
        }
        if let (true, Some(gram)) = (s.verdict, &gram) {
            let analysis = analyze(&chain, gram, under_h, opts.seed, opts.tol)?;
            report.verdict = Some(VerdictSection::new(analysis.verdict, fx.expected_verdict));
        }
    }
    if s.obstruction {
        if let Some((total, base)) = fx.obstruction_problem(n) {
            report.obstruction = Some(obstruct_quotient(&total, &base)?);
        }
    }
    Ok(report)
}

/// Runs `n_min..=n_max`; failures are recorded per `n`.
pub fn sweep(fx: &ScenarioFixture, n_min: usize, n_max: usize, opts: &RunOptions, parallel: bool) -> SweepReport {
    let run = |n: usize| match run_scenario(fx, n, opts) {
        Ok(r) => SweepEntry::ok(n, r),
        Err(e) => SweepEntry::failed(n, e.to_string()),
    };
    let entries: Vec<SweepEntry> = if n_min > n_max {
        Vec::new()
    } else if parallel {
        (n_min..=n_max).into_par_iter().map(run).collect()
    } else {
        (n_min..=n_max).map(run).collect()
    };
    SweepReport::new(fx.id, n_min, n_max, opts, entries)
}
