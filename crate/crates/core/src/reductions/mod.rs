//! Hardness constructions used as planted-instance generators, together
//! with brute-force deciders for their source problems.
//!
//! Chains available:
//!
//! - subset product → two-letter WLCS ([`subset_product_to_wlcs`])
//! - perfect code → k-sized subset product → diagonal WLCS
//!   ([`perfect_code_to_ksubset`], [`ksubset_to_wlcs`])
//! - sparse 1-in-3 SAT → k-sized subset product ([`sat13_to_ksubset`])
//!
//! Perfect codes use closed neighbourhoods `N[v] = N(v) ∪ {v}`.

pub mod formats;
mod perfect_code;
mod primes;
mod sat13;
mod subset_product;

pub use perfect_code::{
    find_perfect_code, perfect_code_exists, perfect_code_to_ksubset, Graph, PERFECT_CODE_CAP,
};
pub use primes::{sieve_primes, sieve_up_to};
pub use sat13::{
    find_sat13, sat13_exists, sat13_target, sat13_to_ksubset, Literal, Sat13Formula,
    SAT13_BLOCK_ASSIGNMENTS_CAP, SAT13_SEARCH_CAP, SAT13_VAR_CAP,
};
pub use subset_product::{
    find_subset_product, ksubset_to_wlcs, subset_product_exists, subset_product_to_wlcs,
    SubsetProductInstance, SUBSET_SEARCH_CAP,
};
