//! Spine crossings of one-sided book embeddings for outerplanar triangulated
//! st-digraphs.

pub mod book;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod format;
pub mod gen;
pub mod graph;
pub mod hamiltonicity;
pub mod oracle;
pub mod solver;
pub mod verify;
