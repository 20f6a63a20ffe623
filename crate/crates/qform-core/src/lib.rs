//! Exact-arithmetic toolkit for positive-definite integral quadratic forms.
//!
//! The crate decides, with integer/rational arithmetic only (no floating
//! point), questions about quaternary quadratic lattices of the shape
//! `x² + a y² + b z² + c w² + d zw + e yw + f yz`:
//!
//! - [`enumerate`]: exhaustive vector enumeration at a prescribed norm, and
//!   scans for integers with no primitive representation;
//! - [`transform`]: the even-parity sublattice construction `Λ₂`/`λ₂` and
//!   orthogonal core/complement splittings;
//! - [`isometry`]: integral isometry testing and lattice embeddings by
//!   backtracking over Gram-compatible images;
//! - [`local`]: `p`-adic (primitive) representability and genus-level
//!   representation predicates;
//! - [`verify`]: the batched verification suites tying everything together
//!   over the embedded 152-form corpus ([`forms::embedded_corpus`]).
//!
//! All public operations either return exact answers or fail loudly
//! ([`error::Error::Overflow`]) — intermediate values are checked `i128`.

pub mod enumerate;
pub mod error;
pub mod forms;
pub mod isometry;
pub mod local;
pub mod matrix;
pub mod transform;
pub mod verify;

pub use enumerate::{
    exception_scan, naive_vectors_with_norm, represents_primitively, vectors_with_norm,
    Enumerator, ExceptionScan, Witness,
};
pub use error::{Error, Result};
pub use forms::{
    core_gram, corpus_record, embedded_corpus, gram_from_sextuple, load_corpus, parse_sextuple,
    CoreLabel, FormId, FormRecord, GramLattice, Sextuple, Status,
};
pub use isometry::{embeds, is_isometric, IsometryWitness};
pub use local::{
    core_gen_predicate, genus_represents, primitively_represented_over_zp, represented_over_zp,
    satisfies_reduction_hypothesis,
};
pub use transform::{
    core_decomposition, lambda2, lambda2_sublattice, orthogonal_complement, CoreDecomposition,
    Sublattice,
};
pub use verify::{run_suite, Suite, SuiteConfig, VerificationReport};
