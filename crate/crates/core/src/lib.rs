//! Chow and augmented Chow polynomials of bounded graded posets, with exact
//! real-rootedness and interlacing certificates.

pub mod certify;
pub mod cli;
pub mod engine;
pub mod oracle;
pub mod polynomial;
pub mod poset;
pub mod sequences;

pub use engine::{augmented_chow, chow, AugmentedMethod, ChowMethod, EngineConfig, EngineError, Identity};
pub use polynomial::{IntPolynomial, PolyError, RatPolynomial};
pub use poset::{Family, GradedPoset, IntervalHandle, PosetError};
