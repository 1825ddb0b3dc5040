//! Combinatorics of plumbing graphs for Hirzebruch-Jung and cusp surface
//! singularities: continued-fraction chains of lens spaces, Laufer's
//! fundamental cycle, blow-ups, torus-bundle monodromy, orientation
//! reversal, and the inner bilipschitz descriptor built from L-nodes, inner
//! rates and curvette counts.

pub mod bnp;
pub mod cli;
pub mod cusp;
pub mod cycles;
pub mod dihedral;
pub mod format;
pub mod graph;
pub mod lens;
pub mod resolution;
pub mod survey;

pub use bnp::{bnp_descriptor, bnp_equal, compare, BnpDescriptor, Comparison};
pub use cusp::{CuspWord, MonodromyMatrix};
pub use cycles::{fundamental_cycle, Divisor};
pub use graph::{PlumbingGraph, Shape, Vertex, VertexId};
pub use lens::{LensParams, NegContFrac};
