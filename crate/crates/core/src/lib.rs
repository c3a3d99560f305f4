//! Weighted longest common subsequence over exact rationals.
//!
//! Two position-weight sequences `X`, `Y` over a shared alphabet and two
//! thresholds `a1`, `a2`. A string `s` is feasible when it embeds in `X`
//! with probability at least `a1` and in `Y` with probability at least
//! `a2`; the task is the longest feasible string. All arithmetic is exact.
//!
//! - [`exactnum`]: nonnegative rationals and balanced products
//! - [`model`]: sequences, instances, witnesses, text formats
//! - [`dp_core`]: embedding DP and three exact solvers
//! - [`approx`]: the quantized-cost DP and the `eps` wrapper
//! - [`transforms`]: threshold unification and the rounding counterexample
//! - [`reductions`]: planted instances from subset product, perfect code
//!   and 1-in-3 SAT
//! - [`sample`]: seeded random generators

pub mod approx;
pub mod dp_core;
pub mod error;
pub mod exactnum;
pub mod model;
pub mod reductions;
pub mod sample;
pub mod transforms;

pub use approx::{eptas, ptas_core, quantize_cost, ApproxResult};
pub use dp_core::{brute_force_opt, dfs_opt, dfs_oracle, embed_dp, pareto_opt, BruteForce};
pub use error::{Error, ParseError, Result};
pub use exactnum::{mul_many, Rational};
pub use model::{
    parse_instance, parse_witness, serialize_instance, serialize_witness, Alphabet, Instance,
    Letter, Verification, WeightedSequence, Witness,
};
pub use transforms::{unify_thresholds, UnifiedInstance};
