use proptest::prelude::*;

use quiver_mukai::enumerate::permutations;
use quiver_mukai::form::{antisym_with_units, weighted_degrees};
use quiver_mukai::hypotheses::{interior_check, subvector_count};
use quiver_mukai::partial_sums::{distinct_grid_values, grid_lower_bound};
use quiver_mukai::quiver::unit;
use quiver_mukai::*;

/// Connected acyclic quivers on 1..=max_n vertices with multiplicities up to
/// `max_mult`, in a random labeling (not necessarily upper triangular).
fn quiver_strategy(max_n: usize, max_mult: u32) -> impl Strategy<Value = Quiver> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            let upper = n * (n - 1) / 2;
            (
                Just(n),
                prop::collection::vec(0..=max_mult, upper),
                Just(permutations(n)).prop_flat_map(prop::sample::select),
            )
        })
        .prop_map(|(n, entries, perm)| {
            let mut list = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    list.push((i, j, entries[k]));
                    k += 1;
                }
            }
            Quiver::from_arrows(n, &list).unwrap().relabeled(&perm)
        })
        .prop_filter("connected", |q| q.is_valid())
}

fn pair_strategy(max_n: usize, max_mult: u32, max_d: i64) -> impl Strategy<Value = (Quiver, DimensionVector)> {
    quiver_strategy(max_n, max_mult).prop_flat_map(move |q| {
        let n = q.vertex_count();
        (Just(q), prop::collection::vec(1..=max_d, n).prop_map(|v| DimensionVector::new(v).unwrap()))
    })
}

fn vector(n: usize, range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(range, n)
}

fn add(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn euler_form_is_bilinear(
        (q, d, d2, e) in quiver_strategy(5, 4).prop_flat_map(|q| {
            let n = q.vertex_count();
            (Just(q), vector(n, -9..=9), vector(n, -9..=9), vector(n, -9..=9))
        })
    ) {
        let lhs = euler_form(&q, &add(&d, &d2), &e).unwrap();
        prop_assert_eq!(lhs, euler_form(&q, &d, &e).unwrap() + euler_form(&q, &d2, &e).unwrap());
        let rhs = euler_form(&q, &e, &add(&d, &d2)).unwrap();
        prop_assert_eq!(rhs, euler_form(&q, &e, &d).unwrap() + euler_form(&q, &e, &d2).unwrap());
    }

    #[test]
    fn symmetric_and_antisymmetric_parts(
        (q, d, e) in quiver_strategy(5, 4).prop_flat_map(|q| {
            let n = q.vertex_count();
            (Just(q), vector(n, -9..=9), vector(n, -9..=9))
        })
    ) {
        let (de, ed) = (euler_form(&q, &d, &e).unwrap(), euler_form(&q, &e, &d).unwrap());
        let s = sym_form(&q, &d, &e).unwrap();
        let a = antisym_form(&q, &d, &e).unwrap();
        prop_assert_eq!(s, de + ed);
        prop_assert_eq!(a, de - ed);
        prop_assert_eq!(s + a, 2 * de);
        prop_assert_eq!(s, sym_form(&q, &e, &d).unwrap());
        prop_assert_eq!(a, -antisym_form(&q, &e, &d).unwrap());
        prop_assert_eq!(sym_form(&q, &d, &d).unwrap(), 2 * euler_form(&q, &d, &d).unwrap());
        prop_assert_eq!(antisym_form(&q, &d, &d).unwrap(), 0);
        prop_assert_eq!(euler_form(&q.opposite(), &d, &e).unwrap(), ed);
    }

    #[test]
    fn antisym_is_linear_in_units(
        (q, d, e) in quiver_strategy(5, 4).prop_flat_map(|q| {
            let n = q.vertex_count();
            (Just(q), vector(n, 1..=6), vector(n, -9..=9))
        })
    ) {
        let c = antisym_with_units(&q, &d).unwrap();
        for (i, &ci) in c.iter().enumerate() {
            prop_assert_eq!(ci, antisym_form(&q, &d, &unit(d.len(), i)).unwrap());
        }
        let weighted: i64 = c.iter().zip(&e).map(|(a, b)| a * b).sum();
        prop_assert_eq!(weighted, antisym_form(&q, &d, &e).unwrap());
        prop_assert_eq!(c.iter().zip(&d).map(|(a, b)| a * b).sum::<i64>(), 0);
    }

    #[test]
    fn valid_quivers_have_a_triangular_labeling(q in quiver_strategy(5, 3)) {
        let order = q.topological_order().unwrap();
        let mut perm = vec![0; order.len()];
        for (pos, &v) in order.iter().enumerate() {
            perm[v] = pos;
        }
        prop_assert!(q.relabeled(&perm).is_upper_triangular());
    }

    #[test]
    fn coprimality_engines_agree((q, d) in pair_strategy(4, 5, 6)) {
        prop_assume!(subvector_count(&d) <= 100_000);
        let dp = is_coprime_with(&q, &d, CoprimeEngine::ReachableSums).unwrap();
        let naive = is_coprime_with(&q, &d, CoprimeEngine::Naive).unwrap();
        prop_assert_eq!(&dp, &naive);
        if let Some(e) = dp.witness {
            prop_assert!(e.iter().any(|&x| x != 0) && e.as_slice() != d.as_slice());
            prop_assert!(e.iter().zip(d.iter()).all(|(a, b)| 0 <= *a && a <= b));
            prop_assert_eq!(antisym_form(&q, &d, &e).unwrap(), 0);
        }
    }

    #[test]
    fn hypotheses_relations((q, d) in pair_strategy(4, 5, 5)) {
        let r = full_report(&q, &d).unwrap();
        prop_assert!(!r.interior || r.fundamental_domain);
        let opp = full_report(&q.opposite(), &d).unwrap();
        prop_assert_eq!(r.coprime, opp.coprime);
        prop_assert_eq!(&r.coprime_witness, &opp.coprime_witness);
        if r.coprime && q.vertex_count() >= 2 {
            prop_assert!(antisym_with_units(&q, &d).unwrap().iter().all(|&c| c != 0));
        }
        if r.interior {
            prop_assert!(compute_invariants(&q, &d).unwrap().dimension >= 1);
        }
    }

    #[test]
    fn invariants_are_orientation_blind((q, d) in pair_strategy(4, 5, 5)) {
        prop_assume!(q.vertex_count() >= 2);
        prop_assert_eq!(compute_invariants(&q, &d).unwrap(), compute_invariants(&q.opposite(), &d).unwrap());
    }

    #[test]
    fn index_divides_every_pairing(
        ((q, d), e) in pair_strategy(4, 5, 5).prop_flat_map(|(q, d)| {
            let n = q.vertex_count();
            (Just((q, d)), vector(n, -20..=20))
        })
    ) {
        prop_assume!(q.vertex_count() >= 2);
        let m = compute_invariants(&q, &d).unwrap().index;
        prop_assert_eq!(antisym_form(&q, &d, &e).unwrap() % m, 0);
    }

    #[test]
    fn decomposition_identities((q, d) in pair_strategy(4, 5, 5)) {
        prop_assume!(q.vertex_count() >= 2);
        let pd = proof_decomposition(&q, &d).unwrap();
        let n = q.vertex_count();
        for i in 0..n {
            let u = unit(n, i);
            prop_assert_eq!(pd.alpha[i], d[i] - euler_form(&q, &u, &d).unwrap());
            prop_assert_eq!(pd.beta[i], d[i] - euler_form(&q, &d, &u).unwrap());
            prop_assert_eq!(pd.alpha[i] - pd.beta[i], i64::from(pd.epsilon[i]) * pd.gamma[i] * pd.m);
        }
        prop_assert_eq!(pd.doubled_dimension(&d).unwrap(), 2 * (1 - euler_form(&q, &d, &d).unwrap()));
        let r = full_report(&q, &d).unwrap();
        if r.mukai_hypotheses() {
            prop_assert!(pd.gamma.iter().all(|&g| g > 0));
            let (a, b) = pd.signed_parts();
            let inst = PartialSumInstance::new(a, b).unwrap();
            prop_assert!(lemma_verdict(&inst).hypothesis_holds);
        }
    }
}

/// Every pair of index subsets, by brute force.
fn brute_hypothesis(a: &[i64], b: &[i64]) -> bool {
    let (k, l) = (a.len(), b.len());
    for mi in 0u32..1 << k {
        let sa: i64 = (0..k).filter(|i| mi >> i & 1 == 1).map(|i| a[i]).sum();
        for mj in 0u32..1 << l {
            let sb: i64 = (0..l).filter(|j| mj >> j & 1 == 1).map(|j| b[j]).sum();
            let allowed = (mi == 0 && mj == 0) || (mi == (1 << k) - 1 && mj == (1 << l) - 1);
            if sa == sb && !allowed {
                return false;
            }
        }
    }
    true
}

fn instance_strategy(max_len: usize, max_value: i64) -> impl Strategy<Value = PartialSumInstance> {
    (
        prop::collection::vec(1..=max_value, 1..=max_len),
        prop::collection::vec(1..=max_value, 1..=max_len),
    )
        .prop_map(|(a, b)| PartialSumInstance::new(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn hypothesis_matches_subset_enumeration(inst in instance_strategy(6, 12)) {
        let check = check_hypothesis(&inst);
        prop_assert_eq!(check.holds, brute_hypothesis(inst.a(), inst.b()));
        if let Some((i, j)) = check.witness {
            let si: i64 = i.iter().map(|&x| inst.a()[x]).sum();
            let sj: i64 = j.iter().map(|&x| inst.b()[x]).sum();
            prop_assert_eq!(si, sj);
            let both_empty = i.is_empty() && j.is_empty();
            let both_full = i.len() == inst.a().len() && j.len() == inst.b().len();
            prop_assert!(!both_empty && !both_full);
        }
    }

    #[test]
    fn lemma_conclusions(inst in instance_strategy(5, 10)) {
        let v = lemma_verdict(&inst);
        prop_assert!(!v.is_violation());
        if v.hypothesis_holds {
            prop_assert!(distinct_grid_values(&inst) >= grid_lower_bound(&inst));
        }
        let grid = d_grid(&inst);
        let (sa, sb): (i64, i64) = (inst.a().iter().sum(), inst.b().iter().sum());
        prop_assert!(grid.iter().flatten().all(|&x| -sb <= x && x <= sa));
        prop_assert_eq!(grid[0][0], 0);
    }

    #[test]
    fn swapping_sides(inst in instance_strategy(5, 10)) {
        let v = lemma_verdict(&inst);
        let w = lemma_verdict(&inst.swapped());
        prop_assert_eq!(v.hypothesis_holds, w.hypothesis_holds);
        prop_assert_eq!((v.total, v.bound, v.equality), (w.total, w.bound, w.equality));
        prop_assert_eq!(v.equality_characterized, w.equality_characterized);
    }

    #[test]
    fn permuting_entries(
        (inst, pa, pb) in instance_strategy(5, 10).prop_flat_map(|inst| {
            let (k, l) = (inst.a().len(), inst.b().len());
            (Just(inst), Just((0..k).collect::<Vec<_>>()).prop_shuffle(), Just((0..l).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let a: Vec<i64> = pa.iter().map(|&i| inst.a()[i]).collect();
        let b: Vec<i64> = pb.iter().map(|&j| inst.b()[j]).collect();
        let shuffled = PartialSumInstance::new(a, b).unwrap();
        let (v, w) = (lemma_verdict(&inst), lemma_verdict(&shuffled));
        prop_assert_eq!((v.hypothesis_holds, v.total, v.bound, v.equality), (w.hypothesis_holds, w.total, w.bound, w.equality));
        if w.hypothesis_holds {
            prop_assert!(distinct_grid_values(&shuffled) >= grid_lower_bound(&shuffled));
        }
    }

    #[test]
    fn appending_a_huge_entry(inst in instance_strategy(3, 40)) {
        let v = lemma_verdict(&inst);
        let (sa, sb): (i64, i64) = (inst.a().iter().sum(), inst.b().iter().sum());
        // the old full subset of `a` becomes proper, so equal totals break the hypothesis
        if !v.hypothesis_holds || sa == sb {
            return Ok(());
        }
        let mut a = inst.a().to_vec();
        a.push(sa + sb + 1);
        let bigger = PartialSumInstance::new(a, inst.b().to_vec()).unwrap();
        let w = lemma_verdict(&bigger);
        prop_assert!(w.hypothesis_holds);
        prop_assert_eq!(w.total, v.total + sa + sb + 1);
        prop_assert_eq!(w.bound, v.bound + 2);
    }
}

#[test]
fn appending_to_equal_totals_breaks_the_hypothesis() {
    let inst = PartialSumInstance::new(vec![1], vec![1]).unwrap();
    assert!(check_hypothesis(&inst).holds);
    let bigger = PartialSumInstance::new(vec![1, 3], vec![1]).unwrap();
    assert!(!check_hypothesis(&bigger).holds);
}

#[test]
fn interior_thresholds_on_subspace_quivers() {
    for s in 1..=5 {
        for t in 1..=6u32 {
            let q = Quiver::thickened_subspace(s, t);
            let holds = interior_check(&q, &DimensionVector::thin(s + 1)).unwrap().holds;
            // sources: 2 - t, sink: 2 - s t
            assert_eq!(holds, 2 - i64::from(t) <= -2 && 2 - s as i64 * i64::from(t) <= -2, "s={s} t={t}");
        }
    }
    let (out, inc) = weighted_degrees(&Quiver::thickened_subspace(3, 4), &[1, 1, 1, 1]).unwrap();
    assert_eq!((out, inc), (vec![4, 4, 4, 0], vec![0, 0, 0, 12]));
}
