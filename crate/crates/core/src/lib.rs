//! Exact integer invariants of quiver moduli spaces and exhaustive checks of
//! the Mukai inequality `dim >= rank * (index - 1)` for them.
//!
//! For a connected acyclic quiver `Q` and a dimension vector `d`, the moduli
//! space of `{d, _}`-stable representations has dimension `1 - <d, d>`,
//! Picard rank `|Q_0| - 1` and index `gcd_i {d, unit_i}`, where `<_, _>` is the
//! Euler form and `{_, _}` its antisymmetrization. When `d` is coprime and
//! `(d, unit_i) <= -2` at every vertex, the inequality holds, with equality
//! only for thin dimension vectors on thickened subspace quivers and their
//! opposites.
//!
//! ```
//! use quiver_mukai::{mukai_verdict, DimensionVector, Quiver};
//!
//! let q = Quiver::thickened_subspace(2, 4);
//! let v = mukai_verdict(&q, &DimensionVector::thin(3))?;
//! assert_eq!((v.invariants.dimension, v.invariants.picard_rank, v.invariants.index), (6, 2, 4));
//! assert!(v.invariants.equality && v.classification.is_subspace_equality());
//! # Ok::<(), quiver_mukai::Error>(())
//! ```

pub mod enumerate;
pub mod error;
pub mod form;
pub mod hypotheses;
pub mod invariants;
pub mod io;
pub mod partial_sums;
pub mod quiver;
pub mod reach;
pub mod sweep;

pub use error::{Error, Result};
pub use form::{antisym_form, euler_form, sym_form};
pub use hypotheses::{
    full_report, in_fundamental_domain, interior_check, is_coprime, is_coprime_with, CoprimeEngine,
    HypothesisReport,
};
pub use invariants::{
    compute_invariants, mukai_verdict, proof_decomposition, EqualityClassification, FanoInvariants,
    MukaiVerdict, ProofDecomposition,
};
pub use partial_sums::{
    check_hypothesis, d_grid, exhaustive_lemma_search, lemma_verdict, LemmaSearchConfig, LemmaVerdict,
    PartialSumInstance,
};
pub use quiver::{DimensionVector, Orientation, Quiver, SubspaceShape};
pub use sweep::{sweep, SweepConfig, SweepReport};
