//! Exact computational toolkit for quantifying how lawless a finitely
//! generated group is.
//!
//! A *law* for a group is a nontrivial reduced word vanishing under
//! every evaluation; the *complexity* of a non-law is the least total
//! word length of a tuple witnessing its survival, and the lawlessness
//! growth function tracks the maximal complexity over all short words.
//! This crate evaluates word maps over pluggable group backends with
//! decidable word problems, computes complexity and growth tables
//! exactly, constructs explicit witness elements in iterated wreath
//! products, Grigorchuk's group, Thompson's group F and lamplighter-like
//! wreath extensions, and checks Golod-Shafarevich certificates in
//! exact rational arithmetic.

pub mod checks;
pub mod engine;
pub mod golod;
pub mod grigorchuk;
pub mod groups;
pub mod mixed;
pub mod report;
pub mod rfbounds;
pub mod slowgrowth;
pub mod thompson;
pub mod words;
pub mod wreath;

pub use groups::GroupBackend;
pub use report::{EntryStatus, GrowthTable, SearchOutcome};
pub use words::FreeWord;
