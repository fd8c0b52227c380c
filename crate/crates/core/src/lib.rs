//! zeta-edge core: a verification toolkit for zero-density and
//! prime-counting constructions.
//!
//! The crate computes, at desk scale, every piece of the chain from
//! explicit exponential-sum bounds to the prime number theorem error
//! envelope: Barban-Vehov weights and their divisor sums, the mollifier
//! Dirichlet polynomial, Euler-Maclaurin zeta evaluation with an explicit
//! growth-bound audit, maximal dyadic exponential sums, zero-dataset
//! counting in rectangles and disks, the box decomposition into
//! delta-well-spaced systems, segmented sieving of psi/theta/pi, the
//! omega(x) minimization with its closed form, and the lcm-reciprocal sum.
//! Inequalities with fully explicit constants are audited pass/fail;
//! statements with free implied constants are reported as ratios, never
//! converted into invented thresholds.

pub mod arith;
pub mod audit;
pub mod battery;
pub mod engine;
pub mod hiprec;
pub mod regions;
pub mod sieve;
pub mod sum;
pub mod weights;
pub mod zerolab;

pub use audit::{AuditReport, BoundAuditRecord, ReportFormat};
pub use engine::ComplexPoint;
pub use regions::{OmegaResult, ParameterSchedule, ZeroFreeRegion};
pub use sieve::SieveSummary;
pub use weights::{WeightConfig, WeightTable};
pub use zerolab::ZeroDataset;
