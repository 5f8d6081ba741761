//! Finite commutative rings and the hierarchy
//! arithmetical ⇒ fqp ⇒ Gaussian ⇒ Prüfer, decided by exhaustive computation.
//!
//! Rings are stored as explicit addition and multiplication tables. Ideals
//! and submodules are bit masks over element indices. Every decision
//! procedure here is a finite search, capped by [`Caps`].

pub mod config;
pub mod deciders;
pub mod error;
pub mod harness;
pub mod ideal;
mod lattice;
pub mod module;
pub mod ring;
pub mod spec;

pub use config::Caps;
pub use error::{Error, Result};
pub use ideal::Ideal;
pub use module::{FiniteModule, ModuleHom, Submodule};
pub use ring::{FiniteRing, RingElement, RingRef};
pub use spec::{parse_element, parse_spec, RingSpec};
