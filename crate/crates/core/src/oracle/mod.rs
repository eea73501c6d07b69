//! Independent Jones computation from planar diagrams, used to cross-check
//! the family engine.

pub mod bracket;
pub mod pd;
pub mod template;

pub use bracket::{jones_from_pd, kauffman_bracket, Bracket, BracketResult, DEFAULT_BUDGET};
pub use pd::PdCode;
pub use template::{crosscheck, expand_twists, DiagramTemplate, TwistBox};
