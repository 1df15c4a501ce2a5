//! The independent referee: a brute-force grid oracle for `−S` and
//! `−(−S)`, verification campaigns comparing it with the operational
//! answers, and seeded random bodies.

pub mod grid;
pub mod random;
pub mod verify;

pub use grid::{build_grid_oracle, oracle_double_complement, GridOracle, Label};
pub use random::{random_body, random_flat_body, BodyKind};
pub use verify::{verify_theorem, GridParams, Theorem, VerificationReport, Violation};
