//! Exact and combinatorial rank/corank computations for adjacency and
//! biadjacency matrices of sparse random graphs, together with the samplers,
//! closed-form analytics, and Monte-Carlo harness used to study them.
//!
//! The central objects:
//!
//! - [`peeling::karp_sipser`]: leaf removal; the number `i` of stranded
//!   isolated vertices plus the special-cycle count of the core predicts the
//!   adjacency corank.
//! - [`cycles::enumerate_special_cycles`]: induced cycles of length divisible
//!   by 4 with every second vertex of degree 2; each carries an explicit
//!   alternating +-1 kernel vector.
//! - [`linalg`]: exact rank via modular elimination over three fixed 62-bit
//!   primes (or fraction-free elimination for small matrices), maximum
//!   matching, and the permutation-submatrix parameter sigma.
//! - [`generators`]: G(n, p), bipartite G(n1, n2, p), uniform minimum-degree-2
//!   models, and configuration-model samplers.
//! - [`analytics`]: closed-form predictions (fixed points, corank rate
//!   constants, 2-core statistics).
//! - [`harness`]: reproducible Monte-Carlo experiment driver with CSV output.

pub mod analytics;
pub mod cycles;
pub mod error;
pub mod exec;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod linalg;
pub mod oracle;
pub mod peeling;
pub mod predictor;

pub use error::{Error, Result};
