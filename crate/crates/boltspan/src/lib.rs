//! Sparse roadmap spanners over continuous configuration spaces.
//!
//! The library builds compact roadmaps with a hybrid of lattice seeding and
//! random sampling, applying the classical coverage / connectivity /
//! interface / quality criteria with six independently switchable
//! graph-size reductions, and answers shortest-path queries over the result
//! with near-optimal length guarantees that a brute-force grid oracle can
//! audit.
//!
//! Modules:
//! - [`cspace`]: environments, metrics, validity, and motion checking
//! - [`sampling`]: lattice seeding and deterministic uniform sampling
//! - [`spanner`]: the criteria pipeline and roadmap construction
//! - [`query`]: planning, smoothing, and lazy repair over a roadmap
//! - [`oracle`]: grid Dijkstra reference for optimality audits
//! - [`bench`]: map suite, matched-seed comparisons, and ablations
//! - [`viz`]: deterministic SVG rendering
//! - [`cli`]: the command-line interface behind the `boltspan` binary
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod bench;
pub mod cli;
pub mod cspace;
mod error;
pub mod oracle;
pub mod query;
pub mod sampling;
pub mod spanner;
pub mod viz;

pub use error::{Error, Result};
