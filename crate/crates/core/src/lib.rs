//! Friends-and-strangers graphs.
//!
//! `FS(X, Y)` has one vertex per bijection `V(X) -> V(Y)`; two bijections are adjacent when they
//! differ by swapping the images of the endpoints of an edge of `X` whose images form an edge of `Y`.

pub mod construction;
pub mod error;
pub mod explorer;
pub mod fs;
pub mod girth_probe;
pub mod graph;
pub mod limits;
pub mod markov;
pub mod orientations;
pub mod repro;
pub mod solvers;

pub use error::{Error, Result};
pub use fs::{Configuration, FsContext, Parity, SwapSequence};
pub use graph::{BarbellDecomposition, Family, SimpleGraph, ThetaWitness};
pub use limits::Limits;
