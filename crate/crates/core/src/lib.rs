//! (a:b)-choosability of graphs: exact oracles, kernel-based choosers, the 2-choosable
//! family, randomized multipartite choosers, clique augmentations and gadget generators.

pub mod error;
pub mod gadgets;
pub mod graph;
pub mod kernel;
pub mod lists;
pub mod oracle;
pub mod orientation;
pub mod random;
pub mod strong;
pub mod suites;
pub mod two_choice;

pub use error::{Error, Result};
pub use graph::{Digraph, Graph, Vertex};
pub use lists::{verify_choice, Choice, Color, ColorSet, ListAssignment};
