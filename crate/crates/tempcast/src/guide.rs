//! Executable mirror of the user guide.
//!
//! The repository ships an mdBook under `book/`; every Rust listing in it
//! is included here as module documentation so `cargo test --doc` compiles
//! and runs the guide. A chapter that drifts from the library fails the
//! build, which keeps the prose honest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/data-model.md")]
pub mod data_model {}

#[doc = include_str!("../../../book/src/least-squares.md")]
pub mod least_squares {}

#[doc = include_str!("../../../book/src/inference.md")]
pub mod inference {}

#[doc = include_str!("../../../book/src/feature-selection.md")]
pub mod feature_selection {}

#[doc = include_str!("../../../book/src/pipeline.md")]
pub mod pipeline_guide {}
