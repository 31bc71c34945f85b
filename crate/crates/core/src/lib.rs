//! Covering maps of finite graphs: pullbacks, fundamental groups via
//! Stallings foldings, and a checker comparing the faithful/full/essentially
//! surjective behaviour of the pullback functor with what `f` does on `π₀`
//! and `π₁`.

pub mod cli;
pub mod cover;
pub mod error;
pub mod format;
pub mod functor;
pub mod graph;
pub mod pi1;
pub mod pullback;
pub mod report;
pub mod shapes;

pub use error::{Error, Result};
