//! Seeded random generators for tests, benches and the CLI.
//!
//! Everything takes `&mut impl Rng`; [`rng`] gives the reproducible
//! ChaCha8 stream used throughout.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::Rational;
use crate::model::{Alphabet, Instance, WeightedSequence};
use crate::reductions::{Graph, Sat13Formula, SubsetProductInstance};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of [`random_instance`] output.
#[derive(Clone, Copy, Debug)]
pub struct InstanceShape {
    pub max_len: usize,
    pub max_alphabet: usize,
    /// Denominators are drawn from `1..=max_den`.
    pub max_den: u64,
    /// Chance (in percent) that a row puts all mass on one letter.
    pub certain_pct: u32,
}

impl Default for InstanceShape {
    fn default() -> Self {
        InstanceShape {
            max_len: 7,
            max_alphabet: 4,
            max_den: 255,
            certain_pct: 30,
        }
    }
}

/// One row of `kk` probabilities with common denominator `den`, as a
/// random composition of `den` into `kk` nonnegative parts.
fn random_row(rng: &mut impl Rng, kk: usize, shape: &InstanceShape) -> Vec<Rational> {
    if rng.gen_range(0..100) < shape.certain_pct {
        let hit = rng.gen_range(0..kk);
        return (0..kk)
            .map(|c| {
                if c == hit {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
    }
    let den = rng.gen_range(1..=shape.max_den);
    let mut cuts: Vec<u64> = (1..kk).map(|_| rng.gen_range(0..=den)).collect();
    cuts.push(0);
    cuts.push(den);
    cuts.sort_unstable();
    cuts.windows(2)
        .map(|w| Rational::ratio(w[1] - w[0], den).reduced())
        .collect()
}

fn random_sequence(
    rng: &mut impl Rng,
    alphabet: &Alphabet,
    shape: &InstanceShape,
) -> WeightedSequence {
    // Empty sequences show up about once in twenty draws.
    let len = if rng.gen_ratio(1, 20) {
        0
    } else {
        rng.gen_range(1..=shape.max_len)
    };
    let rows = (0..len)
        .map(|_| random_row(rng, alphabet.len(), shape))
        .collect();
    WeightedSequence::from_rows(alphabet.clone(), rows)
}

fn random_threshold(rng: &mut impl Rng, shape: &InstanceShape) -> Rational {
    if rng.gen_bool(0.5) {
        Rational::ratio(1, rng.gen_range(1..=64))
    } else {
        let den = rng.gen_range(1..=shape.max_den);
        Rational::ratio(rng.gen_range(1..=den), den).reduced()
    }
}

pub fn random_alphabet(rng: &mut impl Rng, max: usize) -> Alphabet {
    let size = rng.gen_range(1..=max.clamp(1, 26));
    Alphabet::new((b'a'..).take(size).map(|c| (c as char).to_string()))
        .expect("distinct single-letter names")
}

pub fn random_instance(rng: &mut impl Rng, shape: &InstanceShape) -> Instance {
    let alphabet = random_alphabet(rng, shape.max_alphabet);
    let x = random_sequence(rng, &alphabet, shape);
    let y = random_sequence(rng, &alphabet, shape);
    let a1 = random_threshold(rng, shape);
    let a2 = random_threshold(rng, shape);
    Instance::new(x, y, a1, a2, None).expect("rows are distributions by construction")
}

/// Instance with `a1 < a2`, for exercising the threshold transform.
pub fn random_instance_below(rng: &mut impl Rng, shape: &InstanceShape) -> Instance {
    let mut inst = random_instance(rng, shape);
    while inst.a1 == inst.a2 {
        inst.a2 = random_threshold(rng, shape);
    }
    if inst.a1 > inst.a2 {
        std::mem::swap(&mut inst.a1, &mut inst.a2);
    }
    inst
}

/// `n` numbers from `1..=max_value`. Half the time the target is the
/// product of a random subset (which then also fixes `k` when
/// `with_k`), otherwise it is drawn independently.
pub fn random_subset_product(
    rng: &mut impl Rng,
    max_n: usize,
    max_value: u64,
    with_k: bool,
) -> SubsetProductInstance {
    let n = rng.gen_range(1..=max_n.max(1));
    let numbers: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_value)).collect();
    let (target, k) = if rng.gen_bool(0.5) {
        let size = rng.gen_range(usize::from(with_k)..=n);
        let picked = numbers.choose_multiple(rng, size);
        let t = picked.fold(BigUint::from(1u32), |acc, &x| acc * x);
        (t, size)
    } else {
        let size = rng.gen_range(1..=n);
        let t = (0..size).fold(BigUint::from(1u32), |acc, _| {
            acc * rng.gen_range(1..=max_value)
        });
        (t, size)
    };
    let numbers = numbers.into_iter().map(BigUint::from).collect();
    SubsetProductInstance::new(numbers, target, with_k.then_some(k))
        .expect("positive numbers and target")
}

/// `G(n, p)` with `p = pct / 100`.
pub fn random_graph(rng: &mut impl Rng, n: usize, pct: u32) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_range(0..100) < pct {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("simple graph by construction")
}

/// Every graph on `n` labelled vertices, one per edge subset.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 32, "too many vertices to enumerate");
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::new(n, edges).expect("simple graph by construction")
    })
}

/// Up to `max_clauses` clauses over `num_vars` variables, no variable in
/// more than three clauses. Clauses that would break sparsity are dropped.
pub fn random_sat13(rng: &mut impl Rng, num_vars: usize, max_clauses: usize) -> Sat13Formula {
    let mut occ = vec![0usize; num_vars + 1];
    let mut clauses = Vec::new();
    if num_vars > 0 {
        for _ in 0..max_clauses {
            let clause: [i32; 3] = std::array::from_fn(|_| {
                let v = rng.gen_range(1..=num_vars) as i32;
                if rng.gen_bool(0.5) {
                    v
                } else {
                    -v
                }
            });
            let mut vars: Vec<usize> = clause.iter().map(|l| l.unsigned_abs() as usize).collect();
            vars.sort_unstable();
            vars.dedup();
            if vars.iter().all(|&v| occ[v] < 3) {
                for v in vars {
                    occ[v] += 1;
                }
                clauses.push(clause);
            }
        }
    }
    Sat13Formula::new(num_vars, clauses).expect("literals in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_valid_and_reproducible() {
        let shape = InstanceShape::default();
        let a: Vec<Instance> = {
            let mut r = rng(7);
            (0..50).map(|_| random_instance(&mut r, &shape)).collect()
        };
        let mut r = rng(7);
        for inst in &a {
            assert_eq!(inst, &random_instance(&mut r, &shape));
            assert!(inst.max_len() <= shape.max_len);
        }
    }

    #[test]
    fn planted_and_sparse() {
        let mut r = rng(1);
        for _ in 0..100 {
            let sp = random_subset_product(&mut r, 6, 30, true);
            assert!(sp.k.unwrap() <= sp.numbers.len());
            let f = random_sat13(&mut r, 6, 5);
            assert!(f.check_sparse(3).is_ok());
        }
        assert_eq!(all_graphs(4).count(), 64);
    }
}
