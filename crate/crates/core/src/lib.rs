//! Exact computations behind the Calabi–Yau pairs cut out of the roof
//! `F(n, n+1, 2n+1)`.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs: Borel–Weil–Bott on `G(n, 2n+1)`, tensor calculus of
//! homogeneous bundles, Koszul pages of the zero locus of a section of
//! `Q^∨(2)`, plethysms `s_λ[e_n]`, classes in the Grothendieck ring generated by
//! `𝕃`, Betti bookkeeping and exact compound-matrix algebra.
//!
//! IO, JSON formats, the command line and the concurrent suite runner live in
//! the companion `roofcalc` crate.

#![no_std]

extern crate alloc;

pub mod bundles;
pub mod bwb;
pub mod error;
pub mod hodge;
pub mod koszul;
pub mod motivic;
pub mod partitions;
pub mod pluecker;
pub mod report;
pub mod subsets;
pub mod symfunc;

pub use error::{Error, Result};
pub use partitions::{GeneralizedWeight, LrDecomposition, Partition};
