//! Boolean functions on GF(2^n) as truth tables.

mod anf;
mod table;
mod trace_poly;
mod walsh;

pub use anf::{algebraic_degree, anf, moebius, Anf};
pub use table::{TruthTable, MAX_VARS};
pub use trace_poly::{evaluate, evaluate_at, TermJson, TraceKind, TracePolynomial, TracePolynomialJson, TraceTerm};
pub use walsh::{
    dual, fwht, is_affine_difference, is_bent, nonlinearity, trace_pairing_map, walsh, walsh_naive, BentVerdict,
    Pairing, SpectrumSummary, WalshSpectrum,
};
