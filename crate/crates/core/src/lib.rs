//! Endomorphism semigroups with restricted range over finite
//! independence algebras.
//!
//! Given a finite independence algebra (a plain set, or a vector space
//! over a small prime field) and a subalgebra acting as the range, this
//! crate enumerates the semigroup of all endomorphisms whose image lies
//! in the range, computes its Green's relations, extended (starred and
//! tilde) Green's relations and two-sided ideals from their closed-form
//! characterisations, and checks every characterisation against
//! independent brute-force oracles. Constructive operations extracted
//! from the existence arguments are provided with machine-checked
//! postconditions.
//!
//! ```
//! use restricted_range::{AlgebraInstance, SemigroupTable, exgreens, greens};
//! use std::sync::Arc;
//!
//! let instance = Arc::new(AlgebraInstance::set(3, &[0, 1])?);
//! let table = SemigroupTable::enumerate(instance, 4096)?;
//! assert_eq!(table.len(), 8);
//! assert_eq!(exgreens::rel_dstar(&table).class_count(), 2);
//! assert_eq!(greens::eggbox(&table).d_classes.len(), 3);
//! # Ok::<(), restricted_range::Error>(())
//! ```

pub mod algebra;
pub mod corpus;
pub mod endo;
mod error;
pub mod exgreens;
pub mod greens;
pub mod ideals;
pub mod oracle;
pub mod semigroup;
pub mod verify;
pub mod witness;

pub use algebra::{AlgebraInstance, Cardinal, ElemId, Subalgebra};
pub use endo::{Endo, EndoRepr, KernelRepr};
pub use error::{Error, Result};
pub use greens::{RelKind, RelationPartition};
pub use semigroup::{Classification, InstanceClass, SemigroupTable};
pub use verify::{VerifyConfig, VerifyReport};

/// Version tag carried by all JSON outputs.
pub const SCHEMA: &str = "restricted-range/1";
