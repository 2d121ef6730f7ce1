//! Fuzzy preference relations over finite universes.
//!
//! - [`tnorm`]: Gödel, Łukasiewicz and product t-norms with residua and negations.
//! - [`relation`]: the relation value type and its structural predicates.
//! - [`closure`]: `∗`-transitive closure and the consistent closures.
//! - [`extension`]: compatible extensions, consistency, totalization.
//! - [`oracle`]: exhaustive sweeps on tiny universes.
//! - [`io`]: JSON and CSV relation documents.

pub mod closure;
pub mod error;
pub mod extension;
pub mod io;
pub mod oracle;
pub mod relation;
pub mod tnorm;

pub use closure::{consistent_closure, transitive_closure, ClosureVariant};
pub use error::{Error, Result};
pub use extension::{
    is_class_member, is_compatible_extension_asym, is_consistent_path_condition, is_extension,
    is_star_compatible_extension, is_star_consistent, totalize, ExtensionReport, RelationClassId,
};
pub use relation::{FuzzyRelation, Universe};
pub use tnorm::{Degree, TNorm, TNormId, EPSILON};
