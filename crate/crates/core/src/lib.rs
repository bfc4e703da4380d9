//! Golay–Rudin–Shapiro sequence pairs and their aperiodic correlations.
//!
//! The crate is split into layers:
//!
//! * [`seq`] builds sequence pairs by the doubling recursion
//!   `x ← x + z^ℓ·y`, `y ← x − z^ℓ·y`.
//! * [`correlation`] is the brute-force oracle: aperiodic and periodic
//!   correlation, peak sidelobe level, peak crosscorrelation and demerit
//!   factors, all computed exactly.
//! * [`fast`] evaluates crosscorrelation coefficients from much lower levels
//!   of the recursion and scans very long pairs without materializing them.
//! * [`exactnum`] is exact arithmetic in `Q(α0)` and in the splitting field of
//!   `X³ + X² − 2X − 4`, with a rational-only sign test.
//! * [`bounds`] holds the shift-sequence machinery and the exact verdicts on
//!   the peak-correlation bounds.
//! * [`cli`] is the command-line surface.
//!
//! No floating point value ever feeds a verdict.

pub mod bounds;
pub mod cli;
pub mod correlation;
pub mod error;
pub mod exactnum;
pub mod fast;
pub mod scalar;
pub mod seq;

pub use error::{Error, Result, SeedError};
pub use scalar::{CRational, CorrScalar};
pub use seq::{Budget, GolayPair, SeedPair, Sequence};
