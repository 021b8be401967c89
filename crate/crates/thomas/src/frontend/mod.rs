//! Problem and result files, the expression syntax and the command line.

pub mod cli;
pub mod parser;
pub mod printer;

use crate::algsys::{Kind, Relation};
use crate::decompose::{decompose, AlgebraicEngine, Decomposition, DecomposeError, Options, SimpleSystem};
use crate::diffsys::{diff_decompose, involutivity_defects, is_minimal, reducible_inequations, DiffEngine};
use crate::janet::{DiffRanking, Jet};
use crate::polyring::{RankedVar, Ranking, Variable};
use crate::verify::{check_decomposition, Report, SampleConfig, VerifyError};
use parser::{parse_sides, ParseError, Symbols};
use printer::{format_canonical, format_poly, Names};
use serde::{Deserialize, Serialize};
use std::fmt;

pub use cli::{run_cli, run_with_io};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Algebraic,
    Differential,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankingKindSpec {
    Orderly,
    Elimination,
}

/// Algebraic rankings list `variables` from the lowest up. Differential ones
/// name the `derivations` and either list the indeterminates by `priority`
/// (highest first, orderly) or in `blocks` (highest block first, elimination).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankingSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivations: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<RankingKindSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub priority: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileOptions {
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub factor: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub coeff_reduce: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iterations: Option<u64>,
}

impl FileOptions {
    fn is_default(&self) -> bool {
        *self == FileOptions::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema: u32,
    pub mode: Mode,
    pub ranking: RankingSpec,
    #[serde(default)]
    pub equations: Vec<String>,
    #[serde(default)]
    pub inequations: Vec<String>,
    #[serde(default, skip_serializing_if = "FileOptions::is_default")]
    pub options: FileOptions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemEntry {
    pub equations: Vec<String>,
    pub inequations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Statistics {
    pub iterations: u64,
    pub splits: u64,
    pub discarded: u64,
    /// Wall-clock milliseconds; recorded only on request so that output stays
    /// reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub schema: u32,
    pub input: ProblemFile,
    pub systems: Vec<SystemEntry>,
    pub statistics: Statistics,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Report>,
}

#[derive(Debug)]
pub enum FrontendError {
    Schema(String),
    Parse { field: String, error: ParseError },
    Decompose(DecomposeError),
    Verify(VerifyError),
}

impl fmt::Display for FrontendError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrontendError::Schema(s) => write!(f, "{s}"),
            FrontendError::Parse { field, error } => write!(f, "{field}:{error}"),
            FrontendError::Decompose(e) => write!(f, "{e}"),
            FrontendError::Verify(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FrontendError {}

impl From<DecomposeError> for FrontendError {
    fn from(e: DecomposeError) -> Self {
        FrontendError::Decompose(e)
    }
}

impl From<VerifyError> for FrontendError {
    fn from(e: VerifyError) -> Self {
        FrontendError::Verify(e)
    }
}

/// A problem file with its ranking built and its expressions parsed.
#[derive(Clone, Debug)]
pub enum Problem {
    Algebraic { ranking: Ranking, relations: Vec<Relation<Variable>> },
    Differential { ranking: DiffRanking, relations: Vec<Relation<Jet>> },
}

fn schema_error(msg: impl Into<String>) -> FrontendError {
    FrontendError::Schema(msg.into())
}

fn parse_list<S: Symbols>(
    syms: &S,
    field: &str,
    srcs: &[String],
    kind: Kind,
) -> Result<Vec<Relation<S::V>>, FrontendError> {
    let sep = match kind {
        Kind::Equation => "=",
        Kind::Inequation => "!=",
    };
    srcs.iter()
        .enumerate()
        .map(|(i, src)| {
            let p = parse_sides(src, syms, sep).map_err(|error| FrontendError::Parse { field: format!("{field}[{i}]"), error })?;
            Ok(Relation::new(p, kind))
        })
        .collect()
}

fn parse_relations<S: Symbols>(syms: &S, eqs: &[String], nes: &[String]) -> Result<Vec<Relation<S::V>>, FrontendError> {
    let mut rels = parse_list(syms, "equations", eqs, Kind::Equation)?;
    rels.extend(parse_list(syms, "inequations", nes, Kind::Inequation)?);
    Ok(rels)
}

impl RankingSpec {
    pub fn algebraic(&self) -> Result<Ranking, FrontendError> {
        if self.derivations.is_some() || self.kind.is_some() || self.priority.is_some() || self.blocks.is_some() {
            return Err(schema_error("algebraic rankings take only `variables`"));
        }
        let vars = self.variables.as_ref().ok_or_else(|| schema_error("ranking needs `variables`"))?;
        Ranking::new(vars).map_err(schema_error)
    }

    pub fn differential(&self) -> Result<DiffRanking, FrontendError> {
        if self.variables.is_some() {
            return Err(schema_error("differential rankings take no `variables`"));
        }
        let n = self.derivations.as_ref().ok_or_else(|| schema_error("ranking needs `derivations`"))?.len();
        match (self.kind.unwrap_or(RankingKindSpec::Orderly), &self.priority, &self.blocks) {
            (RankingKindSpec::Orderly, Some(p), None) => DiffRanking::orderly(n, p).map_err(schema_error),
            (RankingKindSpec::Elimination, None, Some(b)) => DiffRanking::elimination(n, b).map_err(schema_error),
            (RankingKindSpec::Orderly, _, _) => Err(schema_error("orderly rankings need `priority` and no `blocks`")),
            (RankingKindSpec::Elimination, _, _) => Err(schema_error("elimination rankings need `blocks` and no `priority`")),
        }
    }
}

impl ProblemFile {
    pub fn load(&self) -> Result<Problem, FrontendError> {
        if self.schema != SCHEMA {
            return Err(schema_error(format!("unsupported schema version {}", self.schema)));
        }
        match self.mode {
            Mode::Algebraic => {
                let ranking = self.ranking.algebraic()?;
                let relations = parse_relations(&ranking, &self.equations, &self.inequations)?;
                Ok(Problem::Algebraic { ranking, relations })
            }
            Mode::Differential => {
                let ranking = self.ranking.differential()?;
                let relations = parse_relations(&ranking, &self.equations, &self.inequations)?;
                Ok(Problem::Differential { ranking, relations })
            }
        }
    }

    /// Options of the file, with the worker count left at its default.
    pub fn options(&self) -> Options {
        let mut o = Options { factor: self.options.factor, coeff_reduce: self.options.coeff_reduce, ..Options::default() };
        if let Some(m) = self.options.max_iterations {
            o.max_iterations = m;
        }
        o
    }
}

pub fn system_entry<N: Names>(s: &SimpleSystem<N::V>, names: &N) -> SystemEntry {
    SystemEntry {
        equations: s.relations.iter().filter(|r| r.is_equation()).map(|r| format_canonical(r, names)).collect(),
        inequations: s.relations.iter().filter(|r| !r.is_equation()).map(|r| format_canonical(r, names)).collect(),
    }
}

/// Parses a result entry back into a simple system, relations ordered by leader.
pub fn parse_system<S: Symbols>(e: &SystemEntry, syms: &S) -> Result<SimpleSystem<S::V>, FrontendError> {
    let mut relations = parse_relations(syms, &e.equations, &e.inequations)?;
    if let Some(r) = relations.iter().find(|r| r.poly.is_constant()) {
        return Err(schema_error(format!("constant relation {:?} in a simple system", r.kind)));
    }
    relations.sort_by(|a, b| a.leader().cmp(&b.leader()));
    Ok(SimpleSystem { relations })
}

/// Output systems in canonical text form.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub systems: Vec<SystemEntry>,
    pub statistics: Statistics,
}

fn outcome<N: Names>(d: &Decomposition<N::V>, names: &N) -> Outcome {
    Outcome {
        systems: d.systems.iter().map(|s| system_entry(s, names)).collect(),
        statistics: Statistics {
            iterations: d.stats.iterations,
            splits: d.stats.splits,
            discarded: d.stats.discarded,
            time_ms: None,
        },
    }
}

impl Problem {
    pub fn decompose(&self, options: Options) -> Result<Outcome, FrontendError> {
        match self {
            Problem::Algebraic { ranking, relations } => {
                let eng = AlgebraicEngine::new(options);
                let d = decompose(&eng, crate::algsys::System::from_relations(relations.clone()))?;
                Ok(outcome(&d, ranking))
            }
            Problem::Differential { ranking, relations } => {
                let eng = DiffEngine::new(ranking.clone(), options);
                let d = diff_decompose(&eng, relations.clone())?;
                Ok(outcome(&d, ranking))
            }
        }
    }

    /// Numeric checks of disjointness and coverage for algebraic systems;
    /// symbolic involutivity, minimality and inequation checks for
    /// differential ones.
    pub fn verify(&self, systems: &[SystemEntry], cfg: &SampleConfig) -> Result<Report, FrontendError> {
        match self {
            Problem::Algebraic { ranking, relations } => {
                let parsed = systems.iter().map(|e| parse_system(e, ranking)).collect::<Result<Vec<_>, _>>()?;
                let vars: Vec<Variable> = ranking.variables().collect();
                Ok(check_decomposition(relations, &parsed, &vars, cfg)?)
            }
            Problem::Differential { ranking, .. } => {
                let mut report = Report::default();
                for (i, e) in systems.iter().enumerate() {
                    let s = parse_system(e, ranking)?;
                    for d in involutivity_defects(&s) {
                        report.violations.push(format!("system {i}: prolongation reduces to {}", format_poly(&d, ranking)));
                    }
                    if !is_minimal(&s) {
                        report.violations.push(format!("system {i}: equation leaders are not minimal"));
                    }
                    for q in reducible_inequations(&s) {
                        report.violations.push(format!("system {i}: inequation {} is Janet reducible", format_poly(&q, ranking)));
                    }
                }
                Ok(report)
            }
        }
    }

    /// Normal forms of the parsed expression modulo each output system.
    pub fn reduce(&self, systems: &[SystemEntry], src: &str) -> Result<Vec<String>, FrontendError> {
        fn run<S, F>(syms: &S, systems: &[SystemEntry], src: &str, red: F) -> Result<Vec<String>, FrontendError>
        where
            S: Symbols + Names<V = <S as Symbols>::V>,
            <S as Symbols>::V: RankedVar,
            F: Fn(&SimpleSystem<<S as Symbols>::V>, &crate::polyring::Poly<<S as Symbols>::V>) -> crate::polyring::Poly<<S as Symbols>::V>,
        {
            let p = parser::parse_expression(src, syms).map_err(|error| FrontendError::Parse { field: "poly".into(), error })?;
            systems
                .iter()
                .map(|e| {
                    let s = parse_system(e, syms)?;
                    Ok(format_poly(&red(&s, &p).normalized(), syms))
                })
                .collect()
        }
        match self {
            Problem::Algebraic { ranking, .. } => {
                run(ranking, systems, src, |s, p| crate::algsys::reduce::<Variable, ()>(&s.to_system(), p))
            }
            Problem::Differential { ranking, .. } => {
                run(ranking, systems, src, |s, p| crate::diffsys::diff_reduce(&crate::diffsys::with_cones(s), p))
            }
        }
    }
}

#[cfg(test)]
mod tests;
