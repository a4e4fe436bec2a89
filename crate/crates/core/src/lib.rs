//! Exact computational checks for Riemannian submersions from compact Lie
//! groups obtained through two presentations `G/K1 = K2/H` of one
//! homogeneous space, and for the homotopy bookkeeping showing the bases are
//! not group quotients.

pub mod catalog;
pub mod embeddings;
pub mod fixtures;
pub mod homotopy;
pub mod isotropy;
pub mod lie;
pub mod linalg;
pub mod metric;
pub mod report;
