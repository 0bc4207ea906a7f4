//! Code-theoretic decision procedures for finite and regular languages.
//!
//! The crate decides whether a language is a code (Sardinas–Patterson, for
//! finite sets and for regular languages), classifies prefix/suffix/bifix
//! codes, tests thinness and completeness, and works with invariance under
//! a letter-permutation (anti-)automorphism θ. On top of these it computes
//! θ-invariant free hulls of finite sets and embeds a non-complete
//! θ-invariant regular code into a complete one.
//!
//! Modules:
//! - [`words`]: alphabets, words, finite languages, overlaps.
//! - [`theta`]: (anti-)automorphisms given by a letter permutation.
//! - [`automata`]: the regular-language engine everything else runs on.
//! - [`analysis`]: code tests and property checks.
//! - [`measure`]: Bernoulli measures, exact over the rationals.
//! - [`hull`]: free hulls and θ-invariant free hulls.
//! - [`completion`]: the completion construction and its verification.
//! - [`families`]: generators for well-known complete invariant codes.
//! - [`formats`]: text formats for sets, maps and distributions.

pub mod analysis;
pub mod automata;
pub mod completion;
mod error;
pub mod families;
pub mod formats;
pub mod hull;
pub mod measure;
pub mod theta;
pub mod words;

pub use automata::{RegexAst, RegularLanguage};
pub use error::{Error, Result};
pub use theta::{Kind, ThetaMap};
pub use words::{Alphabet, FiniteLanguage, Letter, Word};
