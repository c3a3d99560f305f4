use num_bigint::BigUint;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::exactnum::mul_many_int;
use crate::reductions::primes::sieve_primes;
use crate::reductions::subset_product::SubsetProductInstance;

/// A literal: variable index (1-based) with sign.
pub type Literal = i32;

/// CNF with exactly three literals per clause, read under 1-in-3
/// semantics: a clause is satisfied when exactly one of its literals is
/// true (repeated literals count separately).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sat13Formula {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl Sat13Formula {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        for (i, clause) in clauses.iter().enumerate() {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(Error::domain(format!(
                        "clause #{} uses literal {lit} outside 1..={num_vars}",
                        i + 1
                    )));
                }
            }
        }
        Ok(Sat13Formula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// Largest number of clauses any variable appears in.
    pub fn max_occurrences(&self) -> usize {
        let mut occ = vec![0usize; self.num_vars + 1];
        for clause in &self.clauses {
            let mut vars: Vec<usize> = clause.iter().map(|l| l.unsigned_abs() as usize).collect();
            vars.sort_unstable();
            vars.dedup();
            for v in vars {
                occ[v] += 1;
            }
        }
        occ.into_iter().max().unwrap_or(0)
    }

    /// Rejects formulas where some variable appears in more than `bound`
    /// clauses.
    pub fn check_sparse(&self, bound: usize) -> Result<()> {
        let occ = self.max_occurrences();
        if occ > bound {
            return Err(Error::domain(format!(
                "a variable appears in {occ} clauses, more than {bound}"
            )));
        }
        Ok(())
    }

    /// True literals in `clause` under `assign` (index 0 unused).
    fn true_literals(clause: &[Literal; 3], assign: impl Fn(usize) -> Option<bool>) -> u32 {
        clause
            .iter()
            .filter(|&&lit| assign(lit.unsigned_abs() as usize).is_some_and(|val| val == (lit > 0)))
            .count() as u32
    }
}

/// Caps on the block construction: total variables, and assignments per
/// block.
pub const SAT13_VAR_CAP: usize = 24;
pub const SAT13_BLOCK_ASSIGNMENTS_CAP: u64 = 4096;

/// Split the variables into `k` blocks of `ceil(N/k)` (the last may be
/// shorter or empty) and emit one identifier per (block, assignment of
/// that block). The identifier starts as the block's prime `p_b` and is
/// multiplied by `p_(k+i)^j` for clause `i`, where `j` counts the literals
/// of clause `i` made true by that partial assignment. The target is
/// `p_1 ... p_(k+M)`, so a `k`-subset hits it iff it picks one assignment
/// per block and every clause gets exactly one true literal.
pub fn sat13_to_ksubset(f: &Sat13Formula, k: usize) -> Result<SubsetProductInstance> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    if f.num_vars > SAT13_VAR_CAP {
        return Err(Error::ResourceCap {
            what: "1-in-3 SAT variables",
            limit: SAT13_VAR_CAP as u64,
        });
    }
    let block = f.num_vars.div_ceil(k);
    if 1u64 << block > SAT13_BLOCK_ASSIGNMENTS_CAP {
        return Err(Error::ResourceCap {
            what: "assignments per block",
            limit: SAT13_BLOCK_ASSIGNMENTS_CAP,
        });
    }
    let m = f.clauses.len();
    let primes: Vec<BigUint> = sieve_primes(k + m).into_iter().map(BigUint::from).collect();
    let mut numbers = Vec::new();
    for b in 0..k {
        let start = (b * block).min(f.num_vars);
        let end = ((b + 1) * block).min(f.num_vars);
        let width = end - start;
        for mask in 0u64..(1u64 << width) {
            // Variable start+1+t is true iff bit t is set.
            let assign =
                |v: usize| (v > start && v <= end).then(|| mask >> (v - start - 1) & 1 == 1);
            let mut factors = vec![primes[b].clone()];
            for (i, clause) in f.clauses.iter().enumerate() {
                let j = Sat13Formula::true_literals(clause, assign);
                if j > 0 {
                    factors.push(Pow::pow(&primes[k + i], j));
                }
            }
            numbers.push(mul_many_int(&factors));
        }
    }
    SubsetProductInstance::new(numbers, mul_many_int(&primes), Some(k))
}

pub const SAT13_SEARCH_CAP: usize = 20;

/// A satisfying 1-in-3 assignment (index `v - 1` holds variable `v`), by
/// trying all of them.
pub fn find_sat13(f: &Sat13Formula) -> Result<Option<Vec<bool>>> {
    if f.num_vars > SAT13_SEARCH_CAP {
        return Err(Error::ResourceCap {
            what: "1-in-3 SAT search variables",
            limit: SAT13_SEARCH_CAP as u64,
        });
    }
    for mask in 0u64..(1u64 << f.num_vars) {
        let assign = |v: usize| Some(mask >> (v - 1) & 1 == 1);
        if f.clauses
            .iter()
            .all(|c| Sat13Formula::true_literals(c, assign) == 1)
        {
            return Ok(Some((1..=f.num_vars).map(|v| assign(v).unwrap()).collect()));
        }
    }
    Ok(None)
}

pub fn sat13_exists(f: &Sat13Formula) -> Result<bool> {
    find_sat13(f).map(|a| a.is_some())
}

/// `P` for a given formula and `k`, without building the identifiers.
pub fn sat13_target(f: &Sat13Formula, k: usize) -> BigUint {
    let primes: Vec<BigUint> = sieve_primes(k + f.clauses.len())
        .into_iter()
        .map(BigUint::from)
        .collect();
    mul_many_int(&primes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::subset_product::subset_product_exists;

    fn sorted(sp: &SubsetProductInstance) -> Vec<BigUint> {
        let mut v = sp.numbers.clone();
        v.sort();
        v
    }

    fn big(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn two_variable_example() {
        let f = Sat13Formula::new(2, vec![[1, 2, -2]]).unwrap();
        let sp = sat13_to_ksubset(&f, 1).unwrap();
        assert_eq!(sorted(&sp), big(&[6, 6, 18, 18]));
        assert_eq!(sp.target, BigUint::from(6u32));
        assert!(subset_product_exists(&sp).unwrap());
        assert!(sat13_exists(&f).unwrap());
        let a = find_sat13(&f).unwrap().unwrap();
        assert!(!a[0]);
    }

    #[test]
    fn all_same_literal_is_unsatisfiable() {
        let f = Sat13Formula::new(1, vec![[1, 1, 1]]).unwrap();
        assert!(!sat13_exists(&f).unwrap());
        let sp = sat13_to_ksubset(&f, 1).unwrap();
        assert_eq!(sorted(&sp), big(&[2, 2 * 27]));
        assert!(!subset_product_exists(&sp).unwrap());
    }

    #[test]
    fn empty_clause_list() {
        let f = Sat13Formula::new(3, vec![]).unwrap();
        let sp = sat13_to_ksubset(&f, 1).unwrap();
        assert!(sp.numbers.iter().all(|x| *x == BigUint::from(2u32)));
        assert_eq!(sp.numbers.len(), 8);
        assert_eq!(sp.target, BigUint::from(2u32));
        assert!(subset_product_exists(&sp).unwrap());
        assert_eq!(sat13_target(&f, 1), sp.target);
    }

    #[test]
    fn more_blocks_than_variables() {
        let f = Sat13Formula::new(2, vec![[1, -2, 2]]).unwrap();
        let sp = sat13_to_ksubset(&f, 3).unwrap();
        // Blocks {v1}, {v2} and an empty one.
        assert_eq!(sp.numbers.len(), 5);
        assert_eq!(
            sat13_exists(&f).unwrap(),
            subset_product_exists(&sp).unwrap()
        );
    }

    #[test]
    fn caps_and_validation() {
        assert!(Sat13Formula::new(2, vec![[1, 3, 2]]).is_err());
        assert!(Sat13Formula::new(2, vec![[1, 0, 2]]).is_err());
        let wide = Sat13Formula::new(25, vec![]).unwrap();
        assert!(sat13_to_ksubset(&wide, 5).is_err());
        let blocky = Sat13Formula::new(13, vec![]).unwrap();
        assert!(sat13_to_ksubset(&blocky, 1).is_err());
        assert!(sat13_to_ksubset(&blocky, 2).is_ok());
        assert!(find_sat13(&Sat13Formula::new(21, vec![]).unwrap()).is_err());
    }

    #[test]
    fn sparsity() {
        let f = Sat13Formula::new(3, vec![[1, 2, 3], [1, -2, 3], [-1, 1, 2]]).unwrap();
        assert_eq!(f.max_occurrences(), 3);
        assert!(f.check_sparse(3).is_ok());
        assert!(f.check_sparse(2).is_err());
    }
}
