//! Finite semigroups, S-expansions of the 2-dimensional Lie algebras and
//! the Bianchi classification of the resulting 3-dimensional algebras.
//!
//! Element and basis indices are 0-based in the API and 1-based in every
//! text format and rendering.

pub mod cayley;
pub mod classify;
pub mod enumerate;
pub mod expand;
pub mod liealg;
pub mod linalg;
pub mod perm;
pub mod resonance;
pub mod scan;
mod search;
pub mod solver;
pub mod text;

pub use cayley::{are_isomorphic, Canonicalizer, CayleyTable, Convention, PartialCayleyTable, TableError};
pub use classify::{canonical_bianchi, classify3, derived_dim, BianchiTag, BianchiType, ClassifyError};
pub use enumerate::{count_semigroups, enumerate_semigroups, CensusError, CensusRequest};
pub use expand::{pipeline, resonant_subalgebra, s_expand, zero_reduce, BasisLabel, ExpandError, LabeledAlgebra};
pub use liealg::{abelian_plane, find_gradings, solvable_plane, Grading, LieAlgebra, LieError};
pub use linalg::Rational;
pub use perm::{Perm, PermError};
pub use resonance::{find_resonances, is_resonant, ResonanceError, ResonantDecomposition};
pub use scan::{scan, ScanOptions, ScanRecord, ScanResult, StartAlgebra, StartSet};
pub use search::BranchOrder;
pub use solver::{complete, completion_count_raw, parse_problem, raw_completions, SolverError, TemplateProblem};
pub use text::{parse_table, ParseError};
