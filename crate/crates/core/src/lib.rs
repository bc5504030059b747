//! Symbolic checks of exceptional collections and semiorthogonal
//! decompositions on Grassmannians `Gr(k, n)` and on the total space of the
//! tautological subbundle `Tot(U)`.
//!
//! Everything is reduced to graded dimensions: Schur-functor bundles
//! `L_α U ⊗ L_β Q` are decomposed with the Littlewood–Richardson rule
//! ([`tensor`]), their cohomology is computed by Borel–Weil–Bott
//! ([`bott`]), Hom spaces on `Gr(k, n)` and `Tot(U)` are assembled from
//! those ([`homspaces`]), and the collections built from them are verified
//! ([`collections`], [`mutation`]).
//!
//! ```
//! use grsod::collections::{total_space_collection, verify};
//! use grsod::homspaces::Engine;
//!
//! let engine = Engine::new();
//! let coll = total_space_collection(2, 4).unwrap();
//! let report = verify(&engine, &coll, 6).unwrap();
//! assert!(report.passed());
//! ```

pub mod bott;
pub mod cache;
pub mod cli;
pub mod collections;
pub mod error;
pub mod homspaces;
pub mod linalg;
pub mod mutation;
pub mod report;
pub mod syntax;
pub mod tensor;
pub mod young;

pub use error::{Error, Result};
