//! Property-check harness: random instances, brute-force oracles and the
//! named suites behind `cpint check`.

pub mod fubini;
pub mod limit;
pub mod oracle;
pub mod quadrature;
pub mod random;
pub mod suites;

pub use fubini::{fubini_check, Kernel};
pub use limit::{verify_l1defn_limit, LimitTerm};
pub use oracle::{oracle_convolve, reversed_order_oracle, OracleConfig};
pub use random::{random_instances, RandomParams, RandomValue};
pub use suites::{run_suite, PropertyReport, SUITES};
