use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::exactnum::mul_many_int;
use crate::reductions::primes::sieve_primes;
use crate::reductions::subset_product::SubsetProductInstance;

/// Simple undirected graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n + 1];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::domain(format!(
                    "edge #{} ({u}, {v}) leaves vertex range 1..={n}",
                    i + 1
                )));
            }
            if u == v {
                return Err(Error::domain(format!("self-loop at vertex {u}")));
            }
            if adj[u].contains(&v) {
                return Err(Error::domain(format!("duplicate edge ({u}, {v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `N[v]`: `v` together with its neighbours.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = self.adj[v].clone();
        out.push(v);
        out.sort_unstable();
        out
    }

    /// Every vertex has exactly one member of `code` in its closed
    /// neighbourhood.
    pub fn is_perfect_code(&self, code: &[usize]) -> bool {
        let mut hits = vec![0usize; self.n + 1];
        for &c in code {
            for u in self.closed_neighborhood(c) {
                hits[u] += 1;
            }
        }
        hits[1..].iter().all(|&h| h == 1)
    }
}

/// `L_v` is the product of the primes of `N[v]`, `P` the product of all
/// vertex primes, where vertex `v` gets the `v`-th prime. By unique
/// factorization a `k`-subset multiplies to `P` iff those vertices form a
/// perfect code.
pub fn perfect_code_to_ksubset(g: &Graph, k: usize) -> Result<SubsetProductInstance> {
    if k == 0 || k > g.n {
        return Err(Error::domain(format!("k = {k} outside 1..={}", g.n)));
    }
    let primes: Vec<BigUint> = sieve_primes(g.n).into_iter().map(BigUint::from).collect();
    let numbers = (1..=g.n)
        .map(|v| {
            let factors: Vec<BigUint> = g
                .closed_neighborhood(v)
                .into_iter()
                .map(|u| primes[u - 1].clone())
                .collect();
            mul_many_int(&factors)
        })
        .collect();
    SubsetProductInstance::new(numbers, mul_many_int(&primes), Some(k))
}

/// Largest graph accepted by [`find_perfect_code`].
pub const PERFECT_CODE_CAP: usize = 12;

/// A perfect code of exactly `k` vertices, by trying every `k`-subset in
/// lexicographic order.
pub fn find_perfect_code(g: &Graph, k: usize) -> Result<Option<Vec<usize>>> {
    if g.n > PERFECT_CODE_CAP {
        return Err(Error::ResourceCap {
            what: "perfect-code search size",
            limit: PERFECT_CODE_CAP as u64,
        });
    }
    if k > g.n {
        return Ok(None);
    }
    let mut pick: Vec<usize> = (1..=k).collect();
    loop {
        if g.is_perfect_code(&pick) {
            return Ok(Some(pick));
        }
        // Advance to the next k-combination of 1..=n.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if pick[i] < g.n - (k - 1 - i) {
                pick[i] += 1;
                for t in i + 1..k {
                    pick[t] = pick[t - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn perfect_code_exists(g: &Graph, k: usize) -> Result<bool> {
    find_perfect_code(g, k).map(|c| c.is_some())
}
