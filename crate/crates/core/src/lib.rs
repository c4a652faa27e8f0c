//! Lottie animation toolkit: a typed model with a canonical JSON reader and
//! writer, corpus cleaning and normalization, a reversible command/token
//! encoding, motion augmentation, and a renderability linter.

pub mod corpus;
pub mod fixtures;
pub mod lint;
pub mod model;
pub mod motion;
pub mod pipeline;
pub mod tokenizer;
pub mod vocab;
