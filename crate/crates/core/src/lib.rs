//! Precubical sets and their tame directed paths, computed exactly.
//!
//! - [`pcs`]: cells, face maps, standard cubes, gluings, agreement subcomplexes
//! - [`reparam`]: PL nondecreasing surjections `[0, ℓ1] → [0, ℓ2]`
//! - [`dpath`]: tame d-paths, arc length, naturalization, factorization,
//!   cube-chain enumeration
//! - [`spatial`]: vertex-avoiding reachability in boundary subcomplexes and
//!   the spatiality check
//! - [`metric`]: taxicab distances and chain upper bounds
//! - [`io`]: file formats
//!
//! All arithmetic is arbitrary-precision rational. Parallel work goes through
//! [`exec::Exec`]; building without the `parallel` feature makes it
//! sequential.

pub mod dpath;
pub mod exec;
pub mod fm;
pub mod io;
pub mod metric;
pub mod pcs;
pub mod rational;
pub mod reparam;
pub mod spatial;

pub use dpath::{Leg, NaturalPath, Point, Skeleton, SkeletonStep, TameDPath, TrackPoint};
pub use exec::Exec;
pub use pcs::{BoundarySubcomplex, CellId, Corner, PrecubicalSet, Word};
pub use rational::Q;
pub use reparam::Reparam;
