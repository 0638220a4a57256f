//! Tutte-type polynomials of edge-attributed multigraphs and Kauffman brackets
//! of links built from them.

pub mod chain_sheaf;
pub mod cli;
pub mod colored_tutte;
pub mod error;
pub mod io;
mod laurent;
pub mod multigraph;
pub mod polyring;
pub mod rational_links;
pub mod replacement;
pub mod signed_tutte;
pub mod verify;

pub use error::{Error, Result};
pub use multigraph::{Color, ColoredGraph, Edge, EdgeKind, Graph, Label, LabeledGraph, Sign, SignedGraph};
pub use polyring::{MultiPoly, VarRegistry};
pub use signed_tutte::{BracketValue, JonesValue, Ring};
