//! Exact computation of the Potts partition function in a set of magnetic
//! fields, `Z(G, q, s, v, w)`, and of the weighted-set chromatic polynomial
//! `Ph(G, q, s, w) = Z(G, q, s, -1, w)`.

pub mod asymptotics;
pub mod engine;
pub mod error;
pub mod families;
pub mod graph;
pub mod identities;
pub mod poly;
pub mod strips;
pub mod zeros;

pub use error::{Error, Result};
pub use graph::{make_family, FamilyKind, Graph, SubgraphSummary};
pub use poly::{Binding, MultiPoly, RationalExpr, TPoly, Var};
