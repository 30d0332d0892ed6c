//! Translation-invariant rational functions on configuration space and the
//! tree-indexed coordinates in which they are expanded.

mod admissible;
mod basepoint;
mod coords;
mod degree;
mod expand;
mod identities;
mod rational_fn;

pub use admissible::{admissible, uniform_radii, Admissibility, Inequality, Witness};
pub use basepoint::{base_point, BasePoint};
pub(crate) use coords::EXACT;
pub use coords::{var_name, ChartPoint, CoordinateSystem, Factored, X_NAME};
pub use degree::{degree, Degree, DegreeResult};
pub use expand::{expand, expand_log, leading_degree};
pub use identities::{edge_vector_field, resummation_sides, theta_edge, Resummation};
pub use rational_fn::{Factors, RationalFunction};
