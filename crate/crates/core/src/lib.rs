//! Exact knot invariants for twist families of the knots 7_6, 8_12 and
//! 10_58, and a verifier for their cosmetic-surgery casework.

pub mod algebra;
pub mod casework;
pub mod error;
pub mod family;
pub mod obstruction;
pub mod oracle;
pub mod seifert;

pub use error::{Error, Result};
