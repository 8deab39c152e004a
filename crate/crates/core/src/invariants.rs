//! Dimension, Picard rank and index of the moduli space attached to `(Q, d)`,
//! the Mukai inequality `dim >= rank * (index - 1)`, and the integer
//! decomposition used to bound it.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{antisym_with_units, euler_form, weighted_degrees};
use crate::hypotheses::full_report;
use crate::quiver::{DimensionVector, Orientation, Quiver, SubspaceShape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FanoInvariants {
    /// `1 - <d, d>`.
    pub dimension: i64,
    /// `|Q_0| - 1`.
    pub picard_rank: i64,
    /// `gcd_i |{d, unit_i}|`.
    pub index: i64,
    pub mukai_lhs: i64,
    pub mukai_rhs: i64,
    #[serde(rename = "mukai_holds")]
    pub holds: bool,
    #[serde(rename = "mukai_equality")]
    pub equality: bool,
}

/// Computes dimension, Picard rank and index, and compares both sides of the
/// Mukai inequality.
///
/// Hypotheses are not checked. The index is the gcd of the absolute values of
/// `{d, unit_i}`; it is an error only when all of them vanish.
pub fn compute_invariants(quiver: &Quiver, d: &DimensionVector) -> Result<FanoInvariants> {
    quiver.validate()?;
    d.check_for(quiver)?;
    let n = quiver.vertex_count();
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    let overflow = || Error::Overflow("fano invariants");
    let dimension = 1i64.checked_sub(euler_form(quiver, d, d)?).ok_or_else(overflow)?;
    let picard_rank = n as i64 - 1;
    let index = antisym_with_units(quiver, d)?
        .into_iter()
        .try_fold(0i64, |g, c| c.checked_abs().map(|a| g.gcd(&a)))
        .ok_or_else(overflow)?;
    if index == 0 {
        return Err(Error::ZeroIndex);
    }
    let mukai_rhs = picard_rank.checked_mul(index - 1).ok_or_else(overflow)?;
    Ok(FanoInvariants {
        dimension,
        picard_rank,
        index,
        mukai_lhs: dimension,
        mukai_rhs,
        holds: dimension >= mukai_rhs,
        equality: dimension == mukai_rhs,
    })
}

/// The integers used to bound the dimension from below:
/// `alpha_i - beta_i = {d, unit_i} = epsilon_i * gamma_i * m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofDecomposition {
    /// `alpha_i = d_i - <unit_i, d>`: weighted count of arrows leaving `i`.
    pub alpha: Vec<i64>,
    /// `beta_i = d_i - <d, unit_i>`: weighted count of arrows entering `i`.
    pub beta: Vec<i64>,
    /// The index.
    pub m: i64,
    /// `+1` or `-1`; `+1` when `alpha_i == beta_i`.
    pub epsilon: Vec<i8>,
    pub gamma: Vec<i64>,
}

impl ProofDecomposition {
    /// Twice the dimension, `2 + sum_i (alpha_i + beta_i - 2 d_i) d_i`.
    pub fn doubled_dimension(&self, d: &[i64]) -> Result<i64> {
        let overflow = || Error::Overflow("doubled dimension");
        let mut acc = 2i64;
        for i in 0..d.len() {
            let t = self.alpha[i]
                .checked_add(self.beta[i])
                .and_then(|s| s.checked_sub(d[i].checked_mul(2)?))
                .and_then(|s| s.checked_mul(d[i]))
                .ok_or_else(overflow)?;
            acc = acc.checked_add(t).ok_or_else(overflow)?;
        }
        Ok(acc)
    }

    /// Splits `gamma` by sign into the sequences `(a, b)` fed to the
    /// partial-sum lemma.
    pub fn signed_parts(&self) -> (Vec<i64>, Vec<i64>) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (&s, &g) in self.epsilon.iter().zip(&self.gamma) {
            if s > 0 {
                a.push(g);
            } else {
                b.push(g);
            }
        }
        (a, b)
    }
}

pub fn proof_decomposition(quiver: &Quiver, d: &DimensionVector) -> Result<ProofDecomposition> {
    let m = compute_invariants(quiver, d)?.index;
    let (alpha, beta) = weighted_degrees(quiver, d)?;
    let mut epsilon = Vec::with_capacity(alpha.len());
    let mut gamma = Vec::with_capacity(alpha.len());
    for (i, (&a, &b)) in alpha.iter().zip(&beta).enumerate() {
        let diff = a.checked_sub(b).ok_or(Error::Overflow("proof decomposition"))?;
        let (q, r) = diff.abs().div_rem(&m);
        if r != 0 {
            return Err(Error::Inconsistent(format!(
                "index {m} does not divide alpha - beta = {diff} at vertex {i}"
            )));
        }
        epsilon.push(if diff < 0 { -1 } else { 1 });
        gamma.push(q);
    }
    Ok(ProofDecomposition { alpha, beta, m, epsilon, gamma })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EqualityClassification {
    StrictInequality,
    /// Equality on a thickened subspace quiver (or its opposite) with thin `d`.
    SubspaceEquality {
        sources: usize,
        thickness: u32,
        orientation: Orientation,
        hub: usize,
        thin: bool,
    },
    /// Equality that is not of the expected shape.
    UnexpectedEquality { shape: Option<SubspaceShape>, thin: bool },
    /// The inequality fails.
    Violation,
}

impl EqualityClassification {
    pub fn is_subspace_equality(&self) -> bool {
        matches!(self, EqualityClassification::SubspaceEquality { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisStatus {
    Met,
    Unmet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MukaiVerdict {
    pub hypotheses: HypothesisStatus,
    #[serde(flatten)]
    pub invariants: FanoInvariants,
    pub classification: EqualityClassification,
}

impl MukaiVerdict {
    /// A failure of the claimed statement: the inequality fails or equality
    /// occurs off the expected shape, while the hypotheses hold.
    pub fn is_counterexample(&self) -> bool {
        self.hypotheses == HypothesisStatus::Met
            && matches!(
                self.classification,
                EqualityClassification::Violation | EqualityClassification::UnexpectedEquality { .. }
            )
    }
}

pub fn classify(quiver: &Quiver, d: &DimensionVector, inv: &FanoInvariants) -> EqualityClassification {
    if !inv.holds {
        return EqualityClassification::Violation;
    }
    if !inv.equality {
        return EqualityClassification::StrictInequality;
    }
    let thin = d.is_thin();
    match quiver.recognize_thickened_subspace() {
        Some(s) if thin => EqualityClassification::SubspaceEquality {
            sources: s.sources,
            thickness: s.thickness,
            orientation: s.orientation,
            hub: s.hub,
            thin,
        },
        shape => EqualityClassification::UnexpectedEquality { shape, thin },
    }
}

/// Verdict for a pair whose hypotheses were already decided by the caller.
pub fn mukai_verdict_given(
    quiver: &Quiver,
    d: &DimensionVector,
    hypotheses_met: bool,
) -> Result<MukaiVerdict> {
    let invariants = compute_invariants(quiver, d)?;
    if hypotheses_met {
        let c = antisym_with_units(quiver, d)?;
        if let Some(i) = c.iter().position(|&x| x == 0) {
            return Err(Error::Inconsistent(format!(
                "coprime dimension vector with {{d, unit_{i}}} = 0"
            )));
        }
    }
    Ok(MukaiVerdict {
        hypotheses: if hypotheses_met { HypothesisStatus::Met } else { HypothesisStatus::Unmet },
        invariants,
        classification: classify(quiver, d, &invariants),
    })
}

/// Checks coprimality and the interior condition, then evaluates the Mukai
/// inequality. Pairs failing the hypotheses still get a verdict, marked unmet.
pub fn mukai_verdict(quiver: &Quiver, d: &DimensionVector) -> Result<MukaiVerdict> {
    let report = full_report(quiver, d)?;
    mukai_verdict_given(quiver, d, report.mukai_hypotheses())
}

/// Re-derives an equality verdict along a second route: dimension from the
/// doubled identity in `alpha`, `beta`; index from `gcd |alpha_i - beta_i|`;
/// and the vertex pattern of `alpha - beta` forced in the equality case
/// (`m` away from the hub, `(1 - |Q_0|) m` at the hub, negated for the
/// opposite orientation).
pub fn reverify_equality(quiver: &Quiver, d: &DimensionVector, verdict: &MukaiVerdict) -> Result<()> {
    let fail = |what: String| Err(Error::Inconsistent(format!("re-verification: {what}")));
    let n = quiver.vertex_count();
    let mut alpha = vec![0i64; n];
    let mut beta = vec![0i64; n];
    for (i, j, m) in quiver.arrow_list() {
        alpha[i] += i64::from(m) * d[j];
        beta[j] += i64::from(m) * d[i];
    }
    let doubled: i64 = 2 + (0..n).map(|i| (alpha[i] + beta[i] - 2 * d[i]) * d[i]).sum::<i64>();
    let inv = &verdict.invariants;
    if doubled != 2 * inv.dimension {
        return fail(format!("doubled dimension {doubled} != 2 * {}", inv.dimension));
    }
    let m = (0..n).fold(0i64, |g, i| g.gcd(&(alpha[i] - beta[i]).abs()));
    if m != inv.index {
        return fail(format!("index {m} != {}", inv.index));
    }
    if (n as i64 - 1) * (m - 1) != inv.dimension {
        return fail("not an equality case".into());
    }
    let EqualityClassification::SubspaceEquality { hub, orientation, thickness, .. } = verdict.classification
    else {
        return fail(format!("classification {:?}", verdict.classification));
    };
    let sign = if orientation == Orientation::Standard { 1 } else { -1 };
    for i in 0..n {
        let expected = if i == hub { (1 - n as i64) * m } else { m };
        let got = sign * (alpha[i] - beta[i]);
        if got != expected {
            return fail(format!("alpha - beta = {got} at vertex {i}, expected {expected}"));
        }
    }
    if i64::from(thickness) * d[hub] != m {
        return fail(format!("thickness {thickness} * d_hub != index {m}"));
    }
    Ok(())
}
