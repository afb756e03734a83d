//! Graph braid group presentations from discrete Morse theory on the
//! discretized configuration complex, conversion to minimal and
//! exchange-loop presentations, and numerical work on their unitary
//! representation varieties.

pub mod cli;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod manifest;
pub mod morse;
pub mod oracle;
pub mod physical;
pub mod presentation;
pub mod representations;
pub mod stability;
pub mod word;

pub use complex::{Cell, DiscreteComplex, MorseClass};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, Label, OrderedGraph};
pub use morse::{MorsePresentation, Rewriter};
pub use presentation::{FPGroup, HomologyClass};
pub use word::{Letter, Word};
