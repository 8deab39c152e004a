//! The partial-sum lemma: for positive integers `a_1..a_k`, `b_1..b_l` whose
//! proper partial sums never coincide, `sum a + sum b >= 2 (k + l - 1)`, with
//! equality only when `l = 1` and every `a_i = 1`, or `k = 1` and every
//! `b_j = 1`.
//!
//! Besides the single-instance check this module runs an exhaustive search
//! over all instances within given bounds.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::reach::BoundedSums;

pub const LEMMA_SEARCH_SCHEMA_VERSION: u32 = 1;

/// Two nonempty sequences of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PartialSumInstance {
    a: Vec<i64>,
    b: Vec<i64>,
}

impl PartialSumInstance {
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        for (name, seq) in [("a", &a), ("b", &b)] {
            if seq.is_empty() {
                return Err(Error::InvalidInstance(format!("sequence {name} is empty")));
            }
            if let Some(v) = seq.iter().find(|&&v| v < 1) {
                return Err(Error::InvalidInstance(format!("{name} contains {v}, entries must be positive")));
            }
            seq.iter()
                .try_fold(0i64, |acc, &v| acc.checked_add(v))
                .ok_or(Error::Overflow("partial sums"))?;
        }
        a.iter()
            .chain(&b)
            .try_fold(0i64, |acc, &v| acc.checked_add(v))
            .and_then(|t| t.checked_mul(2))
            .ok_or(Error::Overflow("partial sums"))?;
        Ok(PartialSumInstance { a, b })
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    /// The instance with the roles of `a` and `b` exchanged.
    pub fn swapped(&self) -> Self {
        PartialSumInstance { a: self.b.clone(), b: self.a.clone() }
    }
}

/// Index sets `(I, J)`, 0-based, with equal sums and not both empty or both full.
pub type SubsetPair = (Vec<usize>, Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub holds: bool,
    pub witness: Option<SubsetPair>,
}

/// Subset sums of one sequence: proper subsets in a table, plus the total.
struct SubsetSums {
    proper: BoundedSums,
    total: i64,
}

impl SubsetSums {
    fn new(seq: &[i64]) -> Result<Self> {
        let proper = BoundedSums::new(seq, &vec![1; seq.len()])?;
        let total = proper.max_sum();
        Ok(SubsetSums { proper, total })
    }

    fn indices_for(&self, sum: i64, len: usize) -> Vec<usize> {
        if self.proper.has_proper(sum) {
            let e = self.proper.lex_smallest_proper(sum).expect("sum is attained");
            e.iter().enumerate().filter(|(_, &x)| x == 1).map(|(i, _)| i).collect()
        } else {
            debug_assert_eq!(sum, self.total);
            (0..len).collect()
        }
    }
}

/// The smallest sum at which the two sides meet in a forbidden way: both
/// proper, or one proper and the other full. Sum 0 only arises from empty
/// subsets since entries are positive.
fn first_violating_sum(sa: &SubsetSums, sb: &SubsetSums) -> Option<i64> {
    let mut best = sa
        .proper
        .proper_sums()
        .find(|&s| sb.proper.has_proper(s) || s == sb.total);
    if sb.proper.has_proper(sa.total) {
        best = Some(best.map_or(sa.total, |s| s.min(sa.total)));
    }
    best
}

fn check_with(inst: &PartialSumInstance, sa: &SubsetSums, sb: &SubsetSums) -> HypothesisCheck {
    match first_violating_sum(sa, sb) {
        None => HypothesisCheck { holds: true, witness: None },
        Some(s) => {
            let i = sa.indices_for(s, inst.a.len());
            let j = sb.indices_for(s, inst.b.len());
            HypothesisCheck { holds: false, witness: Some((i, j)) }
        }
    }
}

/// Decides whether no proper partial sums coincide. On failure the witness
/// is taken at the smallest offending sum, using the lexicographically
/// smallest 0/1 indicator vectors on each side.
pub fn check_hypothesis(inst: &PartialSumInstance) -> HypothesisCheck {
    let sa = SubsetSums::new(&inst.a).expect("instance sums were range-checked");
    let sb = SubsetSums::new(&inst.b).expect("instance sums were range-checked");
    check_with(inst, &sa, &sb)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaVerdict {
    pub hypothesis_holds: bool,
    pub witness: Option<SubsetPair>,
    /// `sum a + sum b`.
    pub total: i64,
    /// `2 (k + l - 1)`.
    pub bound: i64,
    pub bound_holds: bool,
    pub equality: bool,
    /// `l = 1` and all `a_i = 1`, or `k = 1` and all `b_j = 1`.
    pub equality_characterized: bool,
}

impl LemmaVerdict {
    /// The lemma's conclusion fails although its hypothesis holds.
    pub fn is_violation(&self) -> bool {
        self.hypothesis_holds && (!self.bound_holds || (self.equality && !self.equality_characterized))
    }
}

fn verdict_from(inst: &PartialSumInstance, check: HypothesisCheck) -> LemmaVerdict {
    let (k, l) = (inst.a.len() as i64, inst.b.len() as i64);
    let total: i64 = inst.a.iter().chain(&inst.b).sum();
    let bound = 2 * (k + l - 1);
    let ones = |s: &[i64]| s.iter().all(|&x| x == 1);
    LemmaVerdict {
        hypothesis_holds: check.holds,
        witness: check.witness,
        total,
        bound,
        bound_holds: total >= bound,
        equality: total == bound,
        equality_characterized: (l == 1 && ones(&inst.a)) || (k == 1 && ones(&inst.b)),
    }
}

/// Checks the hypothesis and evaluates both claims. The claims are reported
/// even when the hypothesis fails, but only bind when it holds.
pub fn lemma_verdict(inst: &PartialSumInstance) -> LemmaVerdict {
    verdict_from(inst, check_hypothesis(inst))
}

/// `d[i][j] = a_1 + ... + a_i - b_1 - ... - b_j` for `0 <= i <= k`, `0 <= j <= l`.
pub fn d_grid(inst: &PartialSumInstance) -> Vec<Vec<i64>> {
    let prefix = |s: &[i64]| -> Vec<i64> {
        std::iter::once(0)
            .chain(s.iter().scan(0i64, |acc, &x| {
                *acc += x;
                Some(*acc)
            }))
            .collect()
    };
    let pa = prefix(&inst.a);
    let pb = prefix(&inst.b);
    pa.iter().map(|&x| pb.iter().map(|&y| x - y).collect()).collect()
}

/// Number of distinct values in [`d_grid`].
pub fn distinct_grid_values(inst: &PartialSumInstance) -> usize {
    d_grid(inst).into_iter().flatten().collect::<BTreeSet<_>>().len()
}

/// `(k + 1)(l + 1) - 1`: how many distinct grid values the hypothesis forces.
pub fn grid_lower_bound(inst: &PartialSumInstance) -> usize {
    (inst.a.len() + 1) * (inst.b.len() + 1) - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaSearchConfig {
    pub max_k: usize,
    pub max_l: usize,
    pub max_value: i64,
    /// Enumerate only non-decreasing sequences. Off runs every ordering.
    pub canonical_order: bool,
    /// Refuse searches with more instances than this.
    pub budget: u128,
}

impl LemmaSearchConfig {
    pub fn new(max_k: usize, max_l: usize, max_value: i64) -> Self {
        LemmaSearchConfig { max_k, max_l, max_value, canonical_order: true, budget: 100_000_000 }
    }

    /// Number of instances the search will visit.
    pub fn instance_count(&self) -> u128 {
        let side = |max_len: usize| -> u128 {
            (1..=max_len as u128)
                .map(|len| {
                    let v = self.max_value.max(0) as u128;
                    if self.canonical_order {
                        // multisets of size len from v values
                        binomial(v + len - 1, len)
                    } else {
                        v.saturating_pow(len as u32)
                    }
                })
                .fold(0u128, u128::saturating_add)
        };
        side(self.max_k).saturating_mul(side(self.max_l))
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaViolationKind {
    /// `sum a + sum b < 2 (k + l - 1)`.
    Bound,
    /// Equality outside the two characterized families.
    UncharacterizedEquality,
    /// Fewer than `(k + 1)(l + 1) - 1` distinct grid values.
    Grid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaViolation {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub kind: LemmaViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaSearchReport {
    pub schema_version: u32,
    pub config: LemmaSearchConfig,
    pub instances: u64,
    pub hypothesis_instances: u64,
    pub equality_instances: u64,
    /// Every equality instance, in enumeration order.
    pub equality_cases: Vec<PartialSumInstance>,
    pub violations: Vec<LemmaViolation>,
}

impl LemmaSearchReport {
    pub fn confirmed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// All sequences of length `1..=max_len` over `1..=max_value`, by length and
/// then lexicographically.
fn sequences(max_len: usize, max_value: i64, canonical: bool) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        let mut cur = vec![1i64; len];
        loop {
            out.push(cur.clone());
            let Some(pos) = (0..len).rev().find(|&p| cur[p] < max_value) else { break };
            cur[pos] += 1;
            let reset = if canonical { cur[pos] } else { 1 };
            for x in &mut cur[pos + 1..] {
                *x = reset;
            }
        }
    }
    out
}

#[derive(Default)]
struct Tally {
    instances: u64,
    hypothesis_instances: u64,
    equality_instances: u64,
    equality_cases: Vec<PartialSumInstance>,
    violations: Vec<LemmaViolation>,
}

/// Visits every instance within the bounds and checks both claims of the
/// lemma together with the grid-distinctness count, for every instance that
/// satisfies the hypothesis.
pub fn exhaustive_lemma_search(config: &LemmaSearchConfig) -> Result<LemmaSearchReport> {
    if config.max_k == 0 || config.max_l == 0 || config.max_value < 1 {
        return Err(Error::InvalidInstance("search bounds must be positive".into()));
    }
    let estimated = config.instance_count();
    if estimated > config.budget {
        return Err(Error::BudgetExceeded { estimated, budget: config.budget });
    }
    let a_side = sequences(config.max_k, config.max_value, config.canonical_order);
    let b_side = sequences(config.max_l, config.max_value, config.canonical_order);
    let b_tables: Vec<SubsetSums> = b_side.iter().map(|b| SubsetSums::new(b)).collect::<Result<_>>()?;

    let tallies: Vec<Tally> = a_side
        .par_iter()
        .map(|a| -> Result<Tally> {
            let sa = SubsetSums::new(a)?;
            let mut t = Tally::default();
            for (b, sb) in b_side.iter().zip(&b_tables) {
                let inst = PartialSumInstance { a: a.clone(), b: b.clone() };
                t.instances += 1;
                let verdict = verdict_from(&inst, check_with(&inst, &sa, sb));
                if !verdict.hypothesis_holds {
                    continue;
                }
                t.hypothesis_instances += 1;
                let mut flag = |kind| {
                    t.violations.push(LemmaViolation { a: a.clone(), b: b.clone(), kind });
                };
                if !verdict.bound_holds {
                    flag(LemmaViolationKind::Bound);
                }
                if verdict.equality && !verdict.equality_characterized {
                    flag(LemmaViolationKind::UncharacterizedEquality);
                }
                if distinct_grid_values(&inst) < grid_lower_bound(&inst) {
                    flag(LemmaViolationKind::Grid);
                }
                if verdict.equality {
                    t.equality_instances += 1;
                    t.equality_cases.push(inst);
                }
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;

    let mut report = LemmaSearchReport {
        schema_version: LEMMA_SEARCH_SCHEMA_VERSION,
        config: *config,
        instances: 0,
        hypothesis_instances: 0,
        equality_instances: 0,
        equality_cases: Vec::new(),
        violations: Vec::new(),
    };
    for t in tallies {
        report.instances += t.instances;
        report.hypothesis_instances += t.hypothesis_instances;
        report.equality_instances += t.equality_instances;
        report.equality_cases.extend(t.equality_cases);
        report.violations.extend(t.violations);
    }
    Ok(report)
}
