pub mod cli;
pub mod cones;
pub mod crossconn;
pub mod dual;
pub mod error;
pub mod field;
pub mod matrix;
pub mod semigroup;
pub mod subspace;
pub mod table;
pub mod report;
pub mod variant;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Prime, Scalar};
pub use matrix::Mat;
pub use semigroup::{Endo, GreenFlags};
pub use subspace::{Lattice, Morphism, Side, Subspace, SubspaceFilter};
pub use table::SemigroupTable;
