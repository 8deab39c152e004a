//! Exhaustive sweeps over `(Q, d)` pairs within bounds: hypotheses, then
//! invariants, then the Mukai verdict, tallied into a deterministic report.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{enumerate_dimension_vectors, enumerate_quivers, labeling_count};
use crate::error::{Error, Result};
use crate::hypotheses::{full_report_with, is_coprime_with, subvector_count, CoprimeEngine};
use crate::invariants::{mukai_verdict_given, reverify_equality, EqualityClassification, FanoInvariants, MukaiVerdict};
use crate::quiver::{DimensionVector, Quiver};

pub const SWEEP_SCHEMA_VERSION: u32 = 1;

/// Pairs with more subvectors than this skip the naive cross-check.
pub const NAIVE_CROSS_CHECK_LIMIT: u128 = 100_000;

pub const DEFAULT_PAIR_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub max_vertices: usize,
    pub max_multiplicity: u32,
    pub max_dim_entry: i64,
    /// Keep one quiver per isomorphism class.
    pub dedupe_isomorphic: bool,
    /// Also run naive coprimality on every pair with at most
    /// [`NAIVE_CROSS_CHECK_LIMIT`] subvectors and count disagreements.
    pub cross_check_engines: bool,
    /// Upper bound on pairs, estimated before filtering.
    pub budget: u128,
    #[serde(skip)]
    pub workers: usize,
}

impl SweepConfig {
    pub fn new(max_vertices: usize, max_multiplicity: u32, max_dim_entry: i64) -> Self {
        SweepConfig {
            max_vertices,
            max_multiplicity,
            max_dim_entry,
            dedupe_isomorphic: true,
            cross_check_engines: false,
            budget: DEFAULT_PAIR_BUDGET,
            workers: 1,
        }
    }

    /// Number of pairs over all upper-triangular labelings, before dropping
    /// disconnected or isomorphic quivers. Bounds the real work from above.
    pub fn estimated_pairs(&self) -> u128 {
        (1..=self.max_vertices)
            .map(|n| {
                let dims = (self.max_dim_entry.max(0) as u128).saturating_pow(n as u32);
                labeling_count(n, self.max_multiplicity).saturating_mul(dims)
            })
            .fold(0u128, u128::saturating_add)
    }

    fn validate(&self) -> Result<()> {
        if self.max_vertices < 1 || self.max_multiplicity < 1 || self.max_dim_entry < 1 || self.workers < 1 {
            return Err(Error::Parse("sweep bounds and worker count must be at least 1".into()));
        }
        let estimated = self.estimated_pairs();
        if estimated > self.budget {
            return Err(Error::BudgetExceeded { estimated, budget: self.budget });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SweepTotals {
    pub quivers: u64,
    pub pairs: u64,
    pub coprime: u64,
    pub fundamental_domain: u64,
    pub interior: u64,
    /// Coprime and interior.
    pub passing_hypotheses: u64,
    pub mukai_holds: u64,
    pub equality: u64,
    pub unexpected_equality: u64,
    pub engine_comparisons: u64,
    pub engine_disagreements: u64,
}

impl SweepTotals {
    fn add(&mut self, o: &SweepTotals) {
        self.quivers += o.quivers;
        self.pairs += o.pairs;
        self.coprime += o.coprime;
        self.fundamental_domain += o.fundamental_domain;
        self.interior += o.interior;
        self.passing_hypotheses += o.passing_hypotheses;
        self.mukai_holds += o.mukai_holds;
        self.equality += o.equality;
        self.unexpected_equality += o.unexpected_equality;
        self.engine_comparisons += o.engine_comparisons;
        self.engine_disagreements += o.engine_disagreements;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepCase {
    pub quiver: Quiver,
    pub d: DimensionVector,
    #[serde(flatten)]
    pub invariants: FanoInvariants,
    pub classification: EqualityClassification,
    /// Set once an equality case has been re-derived independently.
    pub reverified: bool,
}

impl SweepCase {
    fn new(quiver: &Quiver, d: DimensionVector, v: MukaiVerdict) -> Self {
        SweepCase {
            quiver: quiver.clone(),
            d,
            invariants: v.invariants,
            classification: v.classification,
            reverified: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EngineDisagreement {
    pub quiver: Quiver,
    pub d: DimensionVector,
    pub reachable_sums_witness: Option<Vec<i64>>,
    pub naive_witness: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub config: SweepConfig,
    pub totals: SweepTotals,
    pub equality_cases: Vec<SweepCase>,
    /// Pairs meeting the hypotheses where the inequality fails or equality is
    /// not of the expected shape.
    pub counterexamples: Vec<SweepCase>,
    pub engine_disagreements: Vec<EngineDisagreement>,
    /// Equality cases whose independent re-derivation failed.
    pub reverification_failures: Vec<String>,
    /// The sweep stopped early; totals cover a prefix of the enumeration.
    pub partial: bool,
    pub error: Option<String>,
    pub wall_time_seconds: f64,
}

impl SweepReport {
    /// Nothing contradicts the inequality or its equality statement on the
    /// searched range.
    pub fn confirmed(&self) -> bool {
        !self.partial
            && self.counterexamples.is_empty()
            && self.totals.unexpected_equality == 0
            && self.engine_disagreements.is_empty()
            && self.reverification_failures.is_empty()
    }

    /// A copy with the wall time zeroed and the worker count reset, for
    /// comparing runs.
    pub fn without_timing(&self) -> SweepReport {
        let mut report = self.clone();
        report.wall_time_seconds = 0.0;
        report.config.workers = 1;
        report
    }
}

#[derive(Default)]
struct QuiverOutcome {
    totals: SweepTotals,
    equality_cases: Vec<SweepCase>,
    counterexamples: Vec<SweepCase>,
    disagreements: Vec<EngineDisagreement>,
}

fn process_quiver(quiver: &Quiver, config: &SweepConfig) -> Result<QuiverOutcome> {
    let mut out = QuiverOutcome::default();
    out.totals.quivers = 1;
    for d in enumerate_dimension_vectors(quiver.vertex_count(), config.max_dim_entry) {
        out.totals.pairs += 1;
        let report = full_report_with(quiver, &d, CoprimeEngine::ReachableSums)?;
        if config.cross_check_engines && subvector_count(&d) <= NAIVE_CROSS_CHECK_LIMIT {
            out.totals.engine_comparisons += 1;
            let naive = is_coprime_with(quiver, &d, CoprimeEngine::Naive)?;
            if naive.coprime != report.coprime || naive.witness != report.coprime_witness {
                out.totals.engine_disagreements += 1;
                out.disagreements.push(EngineDisagreement {
                    quiver: quiver.clone(),
                    d: d.clone(),
                    reachable_sums_witness: report.coprime_witness.clone(),
                    naive_witness: naive.witness,
                });
            }
        }
        out.totals.coprime += u64::from(report.coprime);
        out.totals.fundamental_domain += u64::from(report.fundamental_domain);
        out.totals.interior += u64::from(report.interior);
        if !report.mukai_hypotheses() {
            continue;
        }
        out.totals.passing_hypotheses += 1;
        let verdict = mukai_verdict_given(quiver, &d, true)?;
        out.totals.mukai_holds += u64::from(verdict.invariants.holds);
        out.totals.equality += u64::from(verdict.invariants.equality);
        if matches!(verdict.classification, EqualityClassification::UnexpectedEquality { .. }) {
            out.totals.unexpected_equality += 1;
        }
        let counterexample = verdict.is_counterexample();
        if verdict.invariants.equality && !counterexample {
            out.equality_cases.push(SweepCase::new(quiver, d, verdict));
        } else if counterexample {
            out.counterexamples.push(SweepCase::new(quiver, d, verdict));
        }
    }
    Ok(out)
}

/// Runs the pipeline over every enumerated pair.
///
/// Quivers are processed by `config.workers` threads; results are merged in
/// enumeration order, so the report does not depend on the worker count.
/// Equality cases are re-derived on the calling thread before returning.
pub fn sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let start = Instant::now();
    let quivers: Vec<Quiver> =
        enumerate_quivers(config.max_vertices, config.max_multiplicity, config.dedupe_isomorphic).collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Inconsistent(format!("thread pool: {e}")))?;
    let outcomes: Vec<Result<QuiverOutcome>> =
        pool.install(|| quivers.par_iter().map(|q| process_quiver(q, config)).collect());

    let mut report = SweepReport {
        schema_version: SWEEP_SCHEMA_VERSION,
        config: *config,
        totals: SweepTotals::default(),
        equality_cases: Vec::new(),
        counterexamples: Vec::new(),
        engine_disagreements: Vec::new(),
        reverification_failures: Vec::new(),
        partial: false,
        error: None,
        wall_time_seconds: 0.0,
    };
    for (quiver, outcome) in quivers.iter().zip(outcomes) {
        match outcome {
            Ok(o) => {
                report.totals.add(&o.totals);
                report.equality_cases.extend(o.equality_cases);
                report.counterexamples.extend(o.counterexamples);
                report.engine_disagreements.extend(o.disagreements);
            }
            Err(e) => {
                report.partial = true;
                report.error = Some(format!("quiver {quiver}: {e}"));
                break;
            }
        }
    }

    for case in &mut report.equality_cases {
        let verdict = MukaiVerdict {
            hypotheses: crate::invariants::HypothesisStatus::Met,
            invariants: case.invariants,
            classification: case.classification.clone(),
        };
        match reverify_equality(&case.quiver, &case.d, &verdict) {
            Ok(()) => case.reverified = true,
            Err(e) => report
                .reverification_failures
                .push(format!("{} d={:?}: {e}", case.quiver, case.d.as_slice())),
        }
    }
    report.wall_time_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// One row per equality case: `n, arrows, d, dim, rank, index`.
pub fn write_equality_csv<W: Write>(report: &SweepReport, writer: W) -> Result<()> {
    let io = |e: csv::Error| Error::Parse(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["n", "arrows", "d", "dim", "rank", "index"]).map_err(io)?;
    for case in &report.equality_cases {
        let d = case.d.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        w.write_record([
            case.quiver.vertex_count().to_string(),
            case.quiver.to_string(),
            d,
            case.invariants.dimension.to_string(),
            case.invariants.picard_rank.to_string(),
            case.invariants.index.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Parse(format!("csv: {e}")))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_thin_only() {
        let r = sweep(&SweepConfig::new(2, 4, 1)).unwrap();
        assert_eq!(r.totals.passing_hypotheses, 1);
        assert_eq!(r.equality_cases.len(), 1);
        let case = &r.equality_cases[0];
        assert_eq!(case.quiver, Quiver::kronecker(4));
        assert!(case.classification.is_subspace_equality() && case.reverified);
        assert!(r.confirmed());
    }

    #[test]
    fn single_vertex_never_passes() {
        let r = sweep(&SweepConfig::new(1, 1, 5)).unwrap();
        assert_eq!(r.totals.pairs, 5);
        assert_eq!(r.totals.passing_hypotheses, 0);
        assert!(r.equality_cases.is_empty());
    }

    #[test]
    fn budget_and_bounds() {
        let cfg = SweepConfig { budget: 10, ..SweepConfig::new(3, 3, 3) };
        assert!(matches!(sweep(&cfg), Err(Error::BudgetExceeded { .. })));
        assert!(sweep(&SweepConfig::new(0, 3, 3)).is_err());
        assert_eq!(SweepConfig::new(2, 4, 3).estimated_pairs(), 3 + 5 * 9);
    }

    #[test]
    fn csv_rows() {
        let r = sweep(&SweepConfig::new(2, 5, 1)).unwrap();
        let mut buf = Vec::new();
        write_equality_csv(&r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "n,arrows,d,dim,rank,index\n2,0>1x4,1 1,3,1,4\n2,0>1x5,1 1,4,1,5\n");
    }
}
