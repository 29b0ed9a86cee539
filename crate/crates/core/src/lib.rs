//! Exact computation in partially commutative metabelian Lie algebras.

pub mod centralizer;
pub mod cli;
pub mod equivalence;
pub mod graph;
pub mod lie;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod random;
pub mod suite;

pub use graph::{Graph, GraphError, VertexSet};
pub use lie::{Algebra, BasisMonomial, GeneratorOrder, LieElement, LieError, Multidegree, RawExpr};
pub use poly::{AssocMonomial, AssocPoly};
