//! Reversible process terms, their labelled transition systems, bisimilarity
//! checks, the backward-ready-set encoding and equational normal forms.

pub mod bisim;
pub mod encoding;
pub mod enumerate;
pub mod equational;
pub mod error;
pub mod lts;
pub mod selftest;
pub mod syntax;
pub mod terms;

pub use error::{Error, Result};
