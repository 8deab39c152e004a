//! Hypotheses on a pair `(Q, d)`: coprimality, the fundamental domain, the
//! strengthened interior condition `(d, i) <= -2`, and thinness.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{antisym_with_units, sym_with_units};
use crate::quiver::{DimensionVector, Quiver};
use crate::reach::BoundedSums;

/// Largest threshold on `(d, unit_i)` for the fundamental domain.
pub const FUNDAMENTAL_DOMAIN_BOUND: i64 = 0;
/// Largest threshold on `(d, unit_i)` for the interior condition.
pub const INTERIOR_BOUND: i64 = -2;

/// How [`is_coprime`] searches for subvectors `e` with `{d, e} = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoprimeEngine {
    /// Enumerates all `prod (d_i + 1)` subvectors.
    Naive,
    /// Reachable-sum tables over the range of `sum_i {d, i} e_i`.
    #[default]
    ReachableSums,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coprimality {
    pub coprime: bool,
    /// Lexicographically smallest `0 != e < d` with `{d, e} = 0`.
    pub witness: Option<Vec<i64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DomainCheck {
    pub holds: bool,
    /// Smallest vertex with `(d, unit_i)` above the threshold.
    pub witness: Option<usize>,
}

/// Ample stability has no decision procedure here; it is carried along as an
/// assumption.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AmpleStability {
    NotChecked,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub coprime: bool,
    pub fundamental_domain: bool,
    pub interior: bool,
    pub thin: bool,
    pub coprime_witness: Option<Vec<i64>>,
    pub fundamental_domain_witness: Option<usize>,
    pub interior_witness: Option<usize>,
    pub amply_stable: AmpleStability,
}

impl HypothesisReport {
    /// Coprime and interior: the hypotheses under which the Mukai inequality
    /// is claimed.
    pub fn mukai_hypotheses(&self) -> bool {
        self.coprime && self.interior
    }
}

/// The number of subvectors `0 <= e <= d`, saturating at `u128::MAX`.
pub fn subvector_count(d: &[i64]) -> u128 {
    d.iter().fold(1u128, |acc, &x| acc.saturating_mul(x as u128 + 1))
}

fn naive_coprime(c: &[i64], d: &[i64]) -> Result<Coprimality> {
    let n = d.len();
    let mut e = vec![0i64; n];
    let mut sum = 0i64;
    loop {
        // odometer, last position fastest: lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(Coprimality { coprime: true, witness: None });
            }
            i -= 1;
            if e[i] < d[i] {
                e[i] += 1;
                sum = sum.checked_add(c[i]).ok_or(Error::Overflow("subvector pairing"))?;
                break;
            }
            sum -= c[i] * e[i];
            e[i] = 0;
        }
        if sum == 0 && e.as_slice() != d {
            return Ok(Coprimality { coprime: false, witness: Some(e) });
        }
    }
}

/// Decides whether `{d, e} != 0` for every subvector `0 != e < d`.
pub fn is_coprime_with(
    quiver: &Quiver,
    d: &DimensionVector,
    engine: CoprimeEngine,
) -> Result<Coprimality> {
    d.check_for(quiver)?;
    let c = antisym_with_units(quiver, d)?;
    match engine {
        CoprimeEngine::Naive => {
            // makes every partial sum below representable
            c.iter()
                .zip(d.iter())
                .try_fold(0i64, |acc, (&ci, &di)| {
                    ci.checked_abs()?.checked_mul(di).and_then(|t| acc.checked_add(t))
                })
                .ok_or(Error::Overflow("subvector pairing"))?;
            naive_coprime(&c, d)
        }
        CoprimeEngine::ReachableSums => {
            let table = BoundedSums::new(&c, d)?;
            let witness = table.lex_smallest_proper(0);
            Ok(Coprimality { coprime: witness.is_none(), witness })
        }
    }
}

/// [`is_coprime_with`] using the reachable-sum engine.
pub fn is_coprime(quiver: &Quiver, d: &DimensionVector) -> Result<Coprimality> {
    is_coprime_with(quiver, d, CoprimeEngine::ReachableSums)
}

fn sym_threshold(quiver: &Quiver, d: &DimensionVector, bound: i64) -> Result<DomainCheck> {
    d.check_for(quiver)?;
    let witness = sym_with_units(quiver, d)?.iter().position(|&v| v > bound);
    Ok(DomainCheck { holds: witness.is_none(), witness })
}

/// `(d, unit_i) <= 0` at every vertex.
pub fn in_fundamental_domain(quiver: &Quiver, d: &DimensionVector) -> Result<DomainCheck> {
    sym_threshold(quiver, d, FUNDAMENTAL_DOMAIN_BOUND)
}

/// `(d, unit_i) <= -2` at every vertex.
pub fn interior_check(quiver: &Quiver, d: &DimensionVector) -> Result<DomainCheck> {
    sym_threshold(quiver, d, INTERIOR_BOUND)
}

pub fn is_thin(d: &DimensionVector) -> bool {
    d.is_thin()
}

pub fn full_report(quiver: &Quiver, d: &DimensionVector) -> Result<HypothesisReport> {
    full_report_with(quiver, d, CoprimeEngine::default())
}

pub fn full_report_with(
    quiver: &Quiver,
    d: &DimensionVector,
    engine: CoprimeEngine,
) -> Result<HypothesisReport> {
    quiver.validate()?;
    let coprime = is_coprime_with(quiver, d, engine)?;
    let domain = in_fundamental_domain(quiver, d)?;
    let interior = interior_check(quiver, d)?;
    Ok(HypothesisReport {
        coprime: coprime.coprime,
        fundamental_domain: domain.holds,
        interior: interior.holds,
        thin: d.is_thin(),
        coprime_witness: coprime.witness,
        fundamental_domain_witness: domain.witness,
        interior_witness: interior.witness,
        amply_stable: AmpleStability::NotChecked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[i64]) -> DimensionVector {
        DimensionVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn coprimality_examples() {
        let k4 = Quiver::kronecker(4);
        for engine in [CoprimeEngine::Naive, CoprimeEngine::ReachableSums] {
            let c = is_coprime_with(&k4, &dv(&[2, 3]), engine).unwrap();
            assert!(c.coprime && c.witness.is_none());
            let c = is_coprime_with(&k4, &dv(&[2, 2]), engine).unwrap();
            assert_eq!(c, Coprimality { coprime: false, witness: Some(vec![1, 1]) });
            let c = is_coprime_with(&Quiver::point(), &dv(&[1]), engine).unwrap();
            assert!(c.coprime);
            let c = is_coprime_with(&Quiver::point(), &dv(&[2]), engine).unwrap();
            assert_eq!(c.witness, Some(vec![1]));
        }
    }

    #[test]
    fn domain_examples() {
        let k4 = Quiver::kronecker(4);
        assert_eq!(
            in_fundamental_domain(&k4, &dv(&[1, 1])).unwrap(),
            DomainCheck { holds: true, witness: None }
        );
        assert_eq!(
            in_fundamental_domain(&Quiver::kronecker(1), &dv(&[1, 1])).unwrap(),
            DomainCheck { holds: false, witness: Some(0) }
        );
        assert!(!in_fundamental_domain(&Quiver::point(), &dv(&[1])).unwrap().holds);

        assert!(interior_check(&k4, &dv(&[1, 1])).unwrap().holds);
        assert_eq!(interior_check(&Quiver::kronecker(3), &dv(&[1, 1])).unwrap().witness, Some(0));
        assert!(interior_check(&Quiver::thickened_subspace(3, 4), &DimensionVector::thin(4))
            .unwrap()
            .holds);
    }

    #[test]
    fn reports() {
        let k4 = Quiver::kronecker(4);
        let r = full_report(&k4, &dv(&[1, 1])).unwrap();
        assert!(r.coprime && r.fundamental_domain && r.interior && r.thin);
        assert_eq!(r.amply_stable, AmpleStability::NotChecked);

        let r = full_report(&k4, &dv(&[2, 2])).unwrap();
        assert_eq!(r.coprime_witness, Some(vec![1, 1]));

        let path = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let r = full_report(&path, &DimensionVector::thin(3)).unwrap();
        assert!(!r.interior);
        assert_eq!(r.interior_witness, Some(0));
        assert_eq!(sym_with_units(&path, &[1, 1, 1]).unwrap()[1], 0);

        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["amply_stable"], "not_checked");
    }

    #[test]
    fn report_rejects_bad_input() {
        let disconnected = Quiver::new(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(matches!(
            full_report(&disconnected, &dv(&[1, 1])),
            Err(Error::InvalidQuiver(_))
        ));
        assert!(matches!(
            full_report(&Quiver::kronecker(2), &dv(&[1])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn thin() {
        assert!(is_thin(&dv(&[1, 1, 1])));
        assert!(!is_thin(&dv(&[1, 2])));
        assert_eq!(subvector_count(&[2, 3]), 12);
    }
}
