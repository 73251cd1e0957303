//! Attributed DL-Lite: abstract syntax and parser, standard finite-model
//! semantics, grounding and translation to plain Horn DL-Lite, saturation,
//! and exact-rational convex geometric models, including the temporally
//! attributed variant over discrete time.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the
//! command-line front end live in the companion `adlite-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod geometry;
pub mod grounding;
pub mod reasoner;
pub mod semantics;
pub mod syntax;
pub mod temporal;

pub use syntax::{parse_ontology, validate_ontology, Ontology};
