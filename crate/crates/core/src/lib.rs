//! Quivers, mixed graphs and their representations; the Tits form; canonical
//! forms for the six classical matrix problems; path algebras with relations;
//! doubling of mixed graphs; and the wildness embeddings.

pub mod canon;
pub mod doubling;
pub mod error;
pub mod graph;
pub mod io;
pub mod path_algebra;
pub mod rep;
pub mod tits;
pub mod wild;

pub use error::CoreError;
pub use graph::{Arrow, Edge, MixedGraph};
pub use rep::{Morphism, Representation};
