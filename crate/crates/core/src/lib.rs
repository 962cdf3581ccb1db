//! Critical groups (graph Jacobians) of finite multigraphs, computed with
//! exact integer arithmetic, and their decomposition under harmonic
//! dihedral actions into Jacobians of quotient graphs.

pub mod abelian;
pub mod action;
pub mod critical;
pub mod decomposition;
pub mod families;
pub mod io;
pub mod json;
pub mod linalg;
pub mod multigraph;
pub mod oracle;
pub mod quotient;

pub use abelian::{cokernel, is_isomorphic, Cokernel, FinAbGroup, GroupHom};
pub use linalg::{hermite_normal_form, integer_kernel, lattice_contains, smith_normal_form, IntMatrix, Lattice};
pub use multigraph::{GraphError, Multigraph, VertexId};
