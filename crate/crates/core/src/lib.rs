//! Exact and interval computation for graphoids of rational functions over
//! ℚ in one and two variables, the ℝ-places they determine, and real number
//! fields given by a minimal polynomial.
//!
//! Evaluations land in the extended real line S̄ = ℝ ∪ {∞} ([`XReal`]); see
//! [`xreal`] for the arc orientation convention used throughout.

pub mod chart;
pub mod error;
pub mod feasibility;
pub mod graphoid;
pub mod interval;
pub mod parse;
pub mod places;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod resultant;
pub mod sturm;
pub mod topo;
pub mod upoly;
pub mod xreal;

pub use error::{Error, Result};
pub use feasibility::{
    build_system, feasible, feasible_with, verify_cover, Constraint, Cover, FeasOptions, InequalitySystem, Relation,
    Target, Verdict,
};
pub use graphoid::{
    cluster_set, fiber_sample, member, one_var_extension, ClusterSet, GraphoidPoint, MembershipVerdict,
};
pub use parse::parse;
pub use places::{check_place_table, delta_place, AlgebraicNumber, NumberFieldElement, PlaceTable};
pub use poly::Poly;
pub use ratfunc::{normalize, FunctionFamily, Member, RatFunc, Region};
pub use rational::Q;
pub use topo::{rips_betti, stable_range, PointCloud, RipsSummary, StableRange};
pub use upoly::UPoly;
pub use xreal::{arc_hull, chordal_dist, chordal_dist_sq, xadd, xmul, ArcSet, XInterval, XReal, XSet};
