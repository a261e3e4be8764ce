//! Subtraction-free arithmetic circuits for matroid basis generating polynomials.
//!
//! The pipeline: a matroid arrives as a graph, a binary representation matrix,
//! an explicit basis list, or a declared decomposition tree. The synthesizer
//! turns it into a `(+,×,/)`-circuit computing `Σ_B Π_{e∈B} x_e`, the basis
//! generating polynomial. That circuit can then be tropicalized into a
//! `(max,+,−)`-circuit (which solves weighted basis maximization) and further
//! lowered to a ReLU network description. Every stage is checked against
//! independent brute-force oracles over exact rationals.
//!
//! Entry points:
//! - [`matroid`]: ground sets, bases, duality, minors, sums, Δ-Y exchanges.
//! - [`linalg`]: exact {0,±1} matrix machinery — Camion signing, total
//!   unimodularity, determinants, the generalized star-mesh transformation.
//! - [`circuit`]: the circuit IR, evaluation, tropicalization, ReLU lowering.
//! - [`synth`]: the compiler from decomposition trees to circuits.
//! - [`verify`]: brute-force oracles and the named verification suites.
//! - [`fixtures`]: the standard test matroids (K_n, R10, R12, F7, composites).

pub mod circuit;
pub mod cli;
pub mod fixtures;
pub mod gf2;
pub mod linalg;
pub mod matroid;
pub mod rational;
pub mod synth;
pub mod verify;

pub use circuit::{Circuit, ReluNetwork, TropicalCircuit};
pub use matroid::{DecompositionTree, Matroid};
pub use rational::Rat;
pub use synth::SynthesisReport;
