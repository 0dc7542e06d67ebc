//! Continuous refueling-station placement for fleets on dedicated closed
//! routes.
//!
//! Given an undirected road network with exact edge lengths, a set of closed
//! vehicle routes with ordered stops, a driving range, and a deviation bound,
//! this crate scans every edge for the sub-intervals whose points can serve
//! each route, collects the interval endpoints into a finite candidate set
//! that provably contains an optimal placement, and solves the resulting set
//! covering problem exactly, including every alternative optimum.
//!
//! All geometry uses exact rational arithmetic; no tolerances anywhere.

pub mod cover;
pub mod coverage;
pub mod length;
pub mod network;
pub mod route;
pub mod scan;
pub mod synth;
pub mod verify;

pub use coverage::{covers, oracle_covers, Coverage, Params};
pub use length::Length;
pub use network::{EdgeId, Network, NetworkError, Point, Segment, VertexId};
pub use route::{Route, RouteError, Stop, StopSpec};
pub use scan::{scan, ScanResult};
