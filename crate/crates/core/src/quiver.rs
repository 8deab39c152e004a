//! Finite acyclic quivers stored as dense arrow-multiplicity matrices, and
//! dimension vectors over them.

use std::fmt;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A quiver on vertices `0..n`, where entry `(i, j)` counts the arrows `i -> j`.
///
/// Construction only checks the shape of the matrix. Use [`Quiver::validate`]
/// to check that the quiver is connected and acyclic, which every operation
/// on `(Q, d)` pairs assumes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    arrows: Vec<u32>,
}

impl Quiver {
    /// Builds a quiver from a square matrix of multiplicities.
    pub fn new(matrix: Vec<Vec<u32>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::InvalidQuiver("a quiver needs at least one vertex".into()));
        }
        let mut arrows = Vec::with_capacity(n * n);
        for (row, entries) in matrix.into_iter().enumerate() {
            if entries.len() != n {
                return Err(Error::NotSquare { row, expected: n, found: entries.len() });
            }
            arrows.extend(entries);
        }
        Ok(Quiver { n, arrows })
    }

    /// Builds a quiver on `n` vertices from `(source, target, multiplicity)`
    /// triples. Repeated pairs accumulate.
    pub fn from_arrows(n: usize, list: &[(usize, usize, u32)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidQuiver("a quiver needs at least one vertex".into()));
        }
        let mut arrows = vec![0u32; n * n];
        for &(i, j, m) in list {
            if i >= n || j >= n {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {i} -> {j} references a vertex outside 0..{n}"
                )));
            }
            let slot = &mut arrows[i * n + j];
            *slot = slot
                .checked_add(m)
                .ok_or(Error::Overflow("arrow multiplicity"))?;
        }
        Ok(Quiver { n, arrows })
    }

    pub(crate) fn from_flat(n: usize, arrows: Vec<u32>) -> Self {
        debug_assert_eq!(arrows.len(), n * n);
        Quiver { n, arrows }
    }

    /// The Kronecker quiver: two vertices joined by `m` parallel arrows `0 -> 1`.
    pub fn kronecker(m: u32) -> Self {
        Quiver { n: 2, arrows: vec![0, m, 0, 0] }
    }

    /// The `t`-thickened `s`-subspace quiver: sources `0..s`, each sending `t`
    /// arrows to the sink `s`.
    pub fn thickened_subspace(s: usize, t: u32) -> Self {
        let n = s + 1;
        let mut arrows = vec![0u32; n * n];
        for i in 0..s {
            arrows[i * n + s] = t;
        }
        Quiver { n, arrows }
    }

    /// The single-vertex quiver.
    pub fn point() -> Self {
        Quiver { n: 1, arrows: vec![0] }
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of arrows `i -> j`.
    #[inline]
    pub fn arrows(&self, i: usize, j: usize) -> u32 {
        self.arrows[i * self.n + j]
    }

    /// Row-major multiplicity matrix.
    pub fn matrix(&self) -> Vec<Vec<u32>> {
        self.arrows.chunks(self.n).map(<[u32]>::to_vec).collect()
    }

    /// Nonzero entries as `(source, target, multiplicity)`, row-major.
    pub fn arrow_list(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let m = self.arrows(i, j);
                if m > 0 {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    /// Total number of arrows.
    pub fn arrow_count(&self) -> u64 {
        self.arrows.iter().map(|&m| u64::from(m)).sum()
    }

    /// The quiver with every arrow reversed.
    pub fn opposite(&self) -> Self {
        let n = self.n;
        let mut arrows = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                arrows[j * n + i] = self.arrows[i * n + j];
            }
        }
        Quiver { n, arrows }
    }

    /// Relabels vertex `i` as `perm[i]`.
    ///
    /// # Panics
    ///
    /// If `perm` is not a permutation of `0..n`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let n = self.n;
        assert_eq!(perm.len(), n, "permutation length");
        let mut seen = vec![false; n];
        for &p in perm {
            assert!(p < n && !seen[p], "not a permutation: {perm:?}");
            seen[p] = true;
        }
        let mut arrows = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                arrows[perm[i] * n + perm[j]] = self.arrows[i * n + j];
            }
        }
        Quiver { n, arrows }
    }

    /// True when every arrow goes from a lower to a higher index.
    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| self.arrows(i, j) == 0))
    }

    /// A vertex order in which every arrow points forward, if one exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let mut indegree: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&i| self.arrows(i, j) > 0).count())
            .collect();
        let mut ready: Vec<usize> = (0..n).rev().filter(|&j| indegree[j] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(i) = ready.pop() {
            order.push(i);
            for j in (0..n).rev() {
                if self.arrows(i, j) > 0 {
                    indegree[j] -= 1;
                    if indegree[j] == 0 {
                        ready.push(j);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Whether the underlying undirected multigraph is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n;
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && (self.arrows(i, j) > 0 || self.arrows(j, i) > 0) {
                    seen[j] = true;
                    reached += 1;
                    stack.push(j);
                }
            }
        }
        reached == n
    }

    /// Checks the standing assumptions: no loops, acyclic, connected.
    pub fn validate(&self) -> Result<()> {
        if let Some(i) = (0..self.n).find(|&i| self.arrows(i, i) > 0) {
            return Err(Error::InvalidQuiver(format!("loop at vertex {i}")));
        }
        if self.topological_order().is_none() {
            return Err(Error::InvalidQuiver("contains a directed cycle".into()));
        }
        if !self.is_connected() {
            return Err(Error::InvalidQuiver("not connected".into()));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Recognizes thickened subspace quivers and their opposites.
    ///
    /// The Kronecker quiver is its own opposite and is always reported with
    /// [`Orientation::Standard`], with the hub at the vertex receiving arrows.
    pub fn recognize_thickened_subspace(&self) -> Option<SubspaceShape> {
        let n = self.n;
        if n < 2 {
            return None;
        }
        let sources = n - 1;
        let fits = |hub: usize, towards_hub: bool| -> Option<u32> {
            let mut thickness = None;
            for i in 0..n {
                for j in 0..n {
                    let m = self.arrows(i, j);
                    let spoke = if towards_hub { j == hub && i != hub } else { i == hub && j != hub };
                    if spoke {
                        if m == 0 || thickness.is_some_and(|t| t != m) {
                            return None;
                        }
                        thickness = Some(m);
                    } else if m != 0 {
                        return None;
                    }
                }
            }
            thickness
        };
        for orientation in [Orientation::Standard, Orientation::Opposite] {
            for hub in 0..n {
                if let Some(thickness) = fits(hub, orientation == Orientation::Standard) {
                    return Some(SubspaceShape { sources, thickness, orientation, hub });
                }
            }
        }
        None
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver({}; {})", self.n, self)
    }
}

/// Compact arrow encoding, e.g. `0>2x4;1>2x4`. The empty quiver body is `-`.
impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = self.arrow_list();
        if list.is_empty() {
            return f.write_str("-");
        }
        for (k, (i, j, m)) in list.into_iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{i}>{j}x{m}")?;
        }
        Ok(())
    }
}

struct ArrowTriples<'a>(&'a Quiver);

impl Serialize for ArrowTriples<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let list = self.0.arrow_list();
        let mut seq = serializer.serialize_seq(Some(list.len()))?;
        for (i, j, m) in list {
            seq.serialize_element(&[i as u64, j as u64, u64::from(m)])?;
        }
        seq.end()
    }
}

/// Serialized as `{"vertices": n, "arrows": [[i, j, m], ...]}`.
impl Serialize for Quiver {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Quiver", 2)?;
        st.serialize_field("vertices", &self.n)?;
        st.serialize_field("arrows", &ArrowTriples(self))?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Arrows point from the sources into the hub.
    Standard,
    /// Arrows point from the hub out to the sinks.
    Opposite,
}

/// Shape of a thickened subspace quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SubspaceShape {
    /// Number of non-hub vertices.
    pub sources: usize,
    /// Arrows between the hub and each other vertex.
    pub thickness: u32,
    pub orientation: Orientation,
    /// The unique sink (standard) or source (opposite).
    pub hub: usize,
}

/// A dimension vector: one positive integer per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DimensionVector(Vec<i64>);

impl DimensionVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidDimensionVector("empty".into()));
        }
        if let Some((i, v)) = entries.iter().enumerate().find(|(_, &v)| v < 1) {
            return Err(Error::InvalidDimensionVector(format!(
                "entry {i} is {v}, entries must be positive"
            )));
        }
        Ok(DimensionVector(entries))
    }

    /// The all-ones vector of length `n`.
    pub fn thin(n: usize) -> Self {
        assert!(n > 0);
        DimensionVector(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn is_thin(&self) -> bool {
        is_thin(&self.0)
    }

    /// Errors unless the vector has one entry per vertex of `quiver`.
    pub fn check_for(&self, quiver: &Quiver) -> Result<()> {
        if self.len() != quiver.vertex_count() {
            return Err(Error::LengthMismatch { expected: quiver.vertex_count(), found: self.len() });
        }
        Ok(())
    }

    /// The same vector seen through the relabeling `i -> perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let mut out = vec![0; self.len()];
        for (i, &p) in perm.iter().enumerate() {
            out[p] = self.0[i];
        }
        DimensionVector(out)
    }
}

impl std::ops::Deref for DimensionVector {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

/// True iff every entry is 1.
pub fn is_thin(d: &[i64]) -> bool {
    d.iter().all(|&x| x == 1)
}

/// The `i`-th unit vector of length `n`.
pub fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}
