//! Enumeration of connected acyclic quivers and of dimension vectors.
//!
//! Every acyclic quiver has a labeling in which all arrows point from lower
//! to higher indices, so it suffices to enumerate strictly upper-triangular
//! multiplicity matrices. With deduplication on, only the labeling whose
//! upper-triangular entries are lexicographically smallest among all
//! upper-triangular relabelings is kept.

use crate::quiver::{DimensionVector, Quiver};

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { return out };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Upper-triangular entries in row-major order.
fn upper_entries(q: &Quiver) -> Vec<u32> {
    let n = q.vertex_count();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(q.arrows(i, j));
        }
    }
    out
}

/// Whether relabeling by `perm` keeps every arrow pointing forward.
fn keeps_order(list: &[(usize, usize, u32)], perm: &[usize]) -> bool {
    list.iter().all(|&(i, j, _)| perm[i] < perm[j])
}

/// The upper-triangular labeling of an acyclic quiver with the smallest
/// entry sequence. Isomorphic acyclic quivers share one canonical form.
///
/// # Panics
///
/// If the quiver has a directed cycle.
pub fn canonical_form(q: &Quiver) -> Quiver {
    let list = q.arrow_list();
    permutations(q.vertex_count())
        .into_iter()
        .filter(|p| keeps_order(&list, p))
        .map(|p| q.relabeled(&p))
        .min_by(|x, y| upper_entries(x).cmp(&upper_entries(y)))
        .expect("acyclic quivers have an upper-triangular labeling")
}

fn is_canonical(q: &Quiver, perms: &[Vec<usize>]) -> bool {
    let list = q.arrow_list();
    let own = upper_entries(q);
    perms
        .iter()
        .filter(|p| keeps_order(&list, p))
        .all(|p| upper_entries(&q.relabeled(p)) >= own)
}

/// Number of strictly upper-triangular matrices on `n` vertices with entries
/// in `0..=max_multiplicity`, connected or not.
pub fn labeling_count(n: usize, max_multiplicity: u32) -> u128 {
    let positions = (n * n.saturating_sub(1) / 2) as u32;
    (u128::from(max_multiplicity) + 1).saturating_pow(positions)
}

/// Streams connected acyclic quivers by vertex count, then by upper-triangular
/// entries in odometer order (last position fastest).
#[derive(Debug, Clone)]
pub struct QuiverEnumerator {
    max_vertices: usize,
    max_multiplicity: u32,
    dedupe: bool,
    n: usize,
    entries: Option<Vec<u32>>,
    perms: Vec<Vec<usize>>,
}

impl QuiverEnumerator {
    fn start_size(&mut self, n: usize) {
        self.n = n;
        self.entries = Some(vec![0; n * (n - 1) / 2]);
        self.perms = if self.dedupe { permutations(n) } else { Vec::new() };
    }

    fn advance(entries: &mut [u32], max: u32) -> bool {
        for x in entries.iter_mut().rev() {
            if *x < max {
                *x += 1;
                return true;
            }
            *x = 0;
        }
        false
    }

    fn build(&self, entries: &[u32]) -> Quiver {
        let n = self.n;
        let mut flat = vec![0u32; n * n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                flat[i * n + j] = entries[k];
                k += 1;
            }
        }
        Quiver::from_flat(n, flat)
    }
}

impl Iterator for QuiverEnumerator {
    type Item = Quiver;

    fn next(&mut self) -> Option<Quiver> {
        loop {
            if self.n > self.max_vertices {
                return None;
            }
            let Some(entries) = self.entries.take() else {
                let next = self.n + 1;
                if next > self.max_vertices {
                    self.n = next;
                    return None;
                }
                self.start_size(next);
                continue;
            };
            let q = self.build(&entries);
            let mut rest = entries;
            if Self::advance(&mut rest, self.max_multiplicity) {
                self.entries = Some(rest);
            }
            if q.is_connected() && (!self.dedupe || is_canonical(&q, &self.perms)) {
                return Some(q);
            }
        }
    }
}

/// Every connected acyclic quiver with at most `max_vertices` vertices and
/// multiplicities at most `max_multiplicity`, as upper-triangular labelings.
/// With `dedupe`, exactly one labeling per isomorphism class.
pub fn enumerate_quivers(max_vertices: usize, max_multiplicity: u32, dedupe: bool) -> QuiverEnumerator {
    let mut it = QuiverEnumerator {
        max_vertices,
        max_multiplicity,
        dedupe,
        n: 0,
        entries: None,
        perms: Vec::new(),
    };
    if max_vertices >= 1 {
        it.start_size(1);
    } else {
        it.n = 1;
    }
    it
}

/// All vectors in `{1..=max_entry}^n`, lexicographically.
pub fn enumerate_dimension_vectors(n: usize, max_entry: i64) -> impl Iterator<Item = DimensionVector> {
    let mut cur = (n > 0 && max_entry >= 1).then(|| vec![1i64; n]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().expect("checked above");
        match (0..n).rev().find(|&p| c[p] < max_entry) {
            Some(p) => {
                c[p] += 1;
                for x in &mut c[p + 1..] {
                    *x = 1;
                }
            }
            None => cur = None,
        }
        Some(DimensionVector::new(out).expect("entries are positive"))
    })
}
