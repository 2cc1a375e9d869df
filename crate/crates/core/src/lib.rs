//! Exact quantum-cohomology pipeline for Fano fourfolds with a factor-swap
//! involution, ending in a Hodge-atom irrationality certificate.
//!
//! The stages are: ambient cohomology and its eigenbasis
//! ([`cohomology`]), the self-adjoint quantum multiplication ansatz
//! ([`ansatz`]), elimination and period matching ([`qde`]), the spectrum of
//! Euler multiplication ([`spectrum`]), and the atom obstruction calculus
//! ([`atoms`]). [`certificate`] runs them end to end.

pub mod algebra;
pub mod ansatz;
pub mod atoms;
pub mod certificate;
pub mod cohomology;
pub mod instance;
pub mod qde;
pub mod spectrum;
