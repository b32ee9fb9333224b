//! Niho bent functions over GF(2^{2m}) built from o-polynomials over GF(2^m).
//!
//! The crate is organised bottom-up:
//!
//! * [`gf2`]: the deterministic field tower GF(2) ⊂ GF(2^m) ⊂ GF(2^{2m});
//! * [`boolfun`]: truth tables, fast Walsh–Hadamard spectra, ANF, bentness;
//! * [`niho`]: Niho exponents and the explicit bent-function families;
//! * [`opoly`]: o-polynomial checks, the o-monomial catalog and the
//!   equivalent-o-monomial degree tables;
//! * [`bridge`]: class-H bivariate evaluation and the monomial expansion that
//!   turns an o-polynomial into a univariate Niho bent function.

pub mod boolfun;
pub mod bridge;
pub mod error;
pub mod gf2;
pub mod hexfmt;
pub mod niho;
pub mod opoly;

pub use error::{Error, Result};
pub use gf2::{FieldElement, FieldTower};
