//! Exact computation of cylindrical contact homology and its `Z_k`-equivariant
//! version for prequantized balls `B(R) x S^1`, driven by piecewise-linear
//! radial Hamiltonians, together with non-squeezing certificates built on top.

pub mod assembler;
pub mod cli;
pub mod complexes;
pub mod groupring;
pub mod ladder;
pub mod linalg;
pub mod profiles;
pub mod rational;
pub mod squeeze;
