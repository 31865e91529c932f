//! Edge ideals and cover ideals of graphs: their powers, Betti numbers,
//! depth, regularity and Stanley decompositions, together with the
//! ordered matching number that bounds them.

pub mod bits;
pub mod decomp;
pub mod error;
pub mod graph;
pub mod graph_ideals;
pub mod harness;
pub mod homology;
pub mod monomial;
pub mod sdepth;

pub use bits::VarSet;
pub use error::{Error, Result};
pub use graph::Graph;
pub use monomial::{Monomial, MonomialIdeal};
