//! Exact computational Lie theory: root systems, Chevalley bases, Kostant cascades,
//! symmetric pairs from abelian parabolics, centralizer subpairs, and nilpotent orbits
//! of `(so(p+2), so(p) × so(2))`.

pub mod cascade;
pub mod centralizer;
pub mod chevalley;
pub mod field;
pub mod linalg;
pub mod matrix_model;
pub mod orbits;
pub mod parabolic;
pub mod poly;
pub mod report;
pub mod root_system;

pub use chevalley::{ChevalleyAlgebra, ChevalleyError, LieElement};
pub use field::{Gaussian, Q};
pub use linalg::Matrix;
pub use root_system::{CartanType, Family, Root, RootSystem, RootSystemError};
