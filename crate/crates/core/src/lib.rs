//! Graded minimal free resolutions of semigroup rings `k[S]` for numerical
//! semigroups `S` of embedding dimension at most four, together with the
//! invariants read off from them and strong indispensability tests.

pub mod cli;
pub mod indispensability;
pub mod invariants;
pub mod polyalg;
pub mod presentation;
pub mod resolution;
pub mod semigroup;
