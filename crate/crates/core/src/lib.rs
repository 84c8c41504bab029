//! Trading-hub placement on weighted transport networks.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`network`]: all-pairs shortest paths (Floyd–Warshall) for heavy
//!    vehicles, light vehicles and buyers.
//! 2. [`supply`]: for every candidate hub location, the cheapest production
//!    hub and storage pair and the resulting unit price.
//! 3. [`market`]: every placement profile, each buyer's hub choice, and the
//!    actors × profiles payoff matrix.
//! 4. [`compromise`]: the lexicographic min-max regret selection.
//!
//! [`pipeline::solve`] chains them; [`report`] renders the result.
//!
//! Everything numeric is generic over [`Scalar`]. The aliases below fix it
//! to [`Money`], the exact fixed-point type scenario files are read into.

pub mod compromise;
pub mod error;
pub mod market;
pub mod matrix;
pub mod money;
pub mod network;
pub mod pipeline;
pub mod report;
pub mod scalar;
pub mod scenario;
pub mod supply;

pub use error::{ValidationError, ValidationErrors};
pub use money::Money;
pub use network::{CostClass, Distance, NegativeCycle};
pub use pipeline::{solve, SolveError};
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Rational = num_rational::Ratio<i64>;

pub type Network = network::Network<Money>;
pub type Edge = network::Edge<Money>;
pub type CostMatrix = network::CostMatrix<Money>;
pub type Scenario = scenario::Scenario<Money>;
pub type MarginPolicy = scenario::MarginPolicy<Money>;
pub type SupplyPlan = supply::SupplyPlan<Money>;
pub type PayoffMatrix = market::PayoffMatrix<Money>;
pub type CompromiseResult = compromise::CompromiseResult<Money>;
pub type Solution = pipeline::Solution<Money>;
