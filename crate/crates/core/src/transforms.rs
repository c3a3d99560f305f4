//! Reduction from two thresholds to one, and the rounding-sensitive fixture.
//!
//! Given `(X, Y, a1, a2, k)` with `a1 < a2`, [`unify_thresholds`] builds
//! `(X', Y', a, k + 1)` over the alphabet extended by `#`, `$` and `%`:
//! original probabilities are scaled by `m = a1 / 2`, `#` absorbs the
//! remainder of every X' row and `$` of every Y' row, and a final position
//! reads `%` with probability 1 in X' and `a1 / a2` in Y'. With
//! `a = m^k * a1`, the original has a common subsequence of length `k` iff the
//! new instance has one of length `k + 1`, and every such solution ends in
//! `%`.

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::model::{Alphabet, Instance, WeightedSequence, Witness};

pub const FILL_X: &str = "#";
pub const FILL_Y: &str = "$";
pub const MARKER: &str = "%";

/// A single-threshold instance with what is needed to map solutions back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnifiedInstance {
    /// `a1 == a2 == a`, decision target `k + 1` (or `k` when the input
    /// thresholds were already equal).
    pub inst: Instance,
    pub k_prime: u64,
    pub k: u64,
    pub a1: Rational,
    pub a2: Rational,
    /// `a1 / 2`; `None` when the input was returned unchanged.
    pub m: Option<Rational>,
    /// X and Y were exchanged because the input had `a1 > a2`.
    pub swapped: bool,
}

/// Builds the equivalent single-threshold instance for decision target `k`.
///
/// When `a1 > a2` the sequences are exchanged first so that the smaller
/// threshold sits on the X side; when `a1 == a2` the instance is returned
/// as is. Fails if `k > min(|X|, |Y|)` or the alphabet already uses one of
/// the three added letters.
pub fn unify_thresholds(inst: &Instance, k: u64) -> Result<UnifiedInstance> {
    if k as usize > inst.max_len() {
        return Err(Error::domain(format!(
            "k = {k} exceeds min(|X|, |Y|) = {}",
            inst.max_len()
        )));
    }
    if inst.a1 == inst.a2 {
        let mut same = inst.clone();
        same.k = Some(k);
        return Ok(UnifiedInstance {
            inst: same,
            k_prime: k,
            k,
            a1: inst.a1.clone(),
            a2: inst.a2.clone(),
            m: None,
            swapped: false,
        });
    }
    let swapped = inst.a1 > inst.a2;
    let (x, y, a1, a2) = if swapped {
        (&inst.y, &inst.x, &inst.a2, &inst.a1)
    } else {
        (&inst.x, &inst.y, &inst.a1, &inst.a2)
    };

    let base = inst.alphabet();
    for extra in [FILL_X, FILL_Y, MARKER] {
        if base.index_of(extra).is_some() {
            return Err(Error::domain(format!(
                "alphabet already contains reserved letter `{extra}`"
            )));
        }
    }
    let mut names: Vec<String> = base.names().to_vec();
    names.extend([FILL_X, FILL_Y, MARKER].map(String::from));
    let alphabet = Alphabet::new(names)?;
    let kk = base.len();
    let (hash, dollar, pct) = (kk, kk + 1, kk + 2);

    let m = (a1 * &Rational::ratio(1, 2)).reduced();
    let a = (&m.pow(k) * a1).reduced();
    let filler = m.one_minus()?;

    let scale = |seq: &WeightedSequence, fill: usize| -> Vec<Vec<Rational>> {
        seq.rows()
            .iter()
            .map(|row| {
                let mut out: Vec<Rational> = row.iter().map(|p| (&m * p).reduced()).collect();
                out.extend([Rational::zero(), Rational::zero(), Rational::zero()]);
                out[fill] = filler.clone();
                out
            })
            .collect()
    };

    let mut x_rows = scale(x, hash);
    let mut last = vec![Rational::zero(); kk + 3];
    last[pct] = Rational::one();
    x_rows.push(last);

    let mut y_rows = scale(y, dollar);
    let ratio = (a1 / a2).reduced();
    let mut last = vec![Rational::zero(); kk + 3];
    last[dollar] = ratio.one_minus()?;
    last[pct] = ratio;
    y_rows.push(last);

    let unified = Instance::new(
        WeightedSequence::from_rows(alphabet.clone(), x_rows),
        WeightedSequence::from_rows(alphabet, y_rows),
        a.clone(),
        a,
        Some(k + 1),
    )?;
    Ok(UnifiedInstance {
        inst: unified,
        k_prime: k + 1,
        k,
        a1: inst.a1.clone(),
        a2: inst.a2.clone(),
        m: Some(m),
        swapped,
    })
}

impl UnifiedInstance {
    /// Drops the trailing `%` and restores the original X/Y roles.
    pub fn map_witness_back(&self, w: &Witness) -> Result<Witness> {
        if self.m.is_none() {
            return Ok(w.clone());
        }
        let marker = self
            .inst
            .alphabet()
            .index_of(MARKER)
            .expect("unified alphabet has the marker");
        if w.s.last() != Some(&marker) || w.pi.is_empty() || w.rho.is_empty() {
            return Err(Error::domain(
                "unified witness does not end with the `%` letter",
            ));
        }
        let keep = w.len() - 1;
        let s = w.s[..keep].to_vec();
        let (pi, rho) = (w.pi[..keep].to_vec(), w.rho[..keep].to_vec());
        Ok(if self.swapped {
            Witness {
                s,
                pi: rho,
                rho: pi,
            }
        } else {
            Witness { s, pi, rho }
        })
    }

    /// Forward image of an original witness: append `%` at the final
    /// positions of X' and Y'.
    pub fn map_witness_forward(&self, w: &Witness) -> Witness {
        if self.m.is_none() {
            return w.clone();
        }
        let (pi, rho) = if self.swapped {
            (w.rho.clone(), w.pi.clone())
        } else {
            (w.pi.clone(), w.rho.clone())
        };
        let marker = self.inst.alphabet().index_of(MARKER).unwrap();
        let mut out = Witness {
            s: w.s.clone(),
            pi,
            rho,
        };
        out.s.push(marker);
        out.pi.push(self.inst.x.len());
        out.rho.push(self.inst.y.len());
        out
    }
}

/// The four-position instance on which rounding `(1/2)^(3/2)` changes the
/// answer: the optimum is `aaaa` for `x = 1` and `aaa` for `x < 1`.
pub fn appendix_counterexample(x: &Rational) -> Result<Instance> {
    let rest = x
        .one_minus()
        .map_err(|_| Error::domain(format!("x = {x} must lie in [0, 1]")))?;
    let r = Rational::ratio;
    let alphabet = Alphabet::new(["a", "b"])?;
    let xs = vec![
        vec![r(1, 1), r(0, 1)],
        vec![r(1, 1), r(0, 1)],
        vec![r(1, 1), r(0, 1)],
        vec![r(1, 8), r(7, 8)],
    ];
    let ys = vec![
        vec![x.clone(), rest],
        vec![r(1, 2), r(1, 2)],
        vec![r(1, 2), r(1, 2)],
        vec![r(1, 1), r(0, 1)],
    ];
    Instance::new(
        WeightedSequence::from_rows(alphabet.clone(), xs),
        WeightedSequence::from_rows(alphabet, ys),
        r(1, 8),
        r(1, 4),
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp_core::{brute_force_opt, pareto_opt};

    fn r(n: u64, d: u64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn appendix_threshold_and_equivalence() {
        let inst = appendix_counterexample(&r(1, 1)).unwrap();
        let u = unify_thresholds(&inst, 4).unwrap();
        assert_eq!(u.m, Some(r(1, 16)));
        assert_eq!(u.inst.a1, &r(1, 16).pow(4) * &r(1, 8));
        assert_eq!(u.k_prime, 5);
        assert!(pareto_opt(&u.inst).unwrap().0 >= 5);

        let fails = appendix_counterexample(&r(81, 100)).unwrap();
        let u = unify_thresholds(&fails, 4).unwrap();
        assert!(pareto_opt(&u.inst).unwrap().0 < 5);
    }

    #[test]
    fn appendix_witness_back() {
        let inst = appendix_counterexample(&r(1, 1)).unwrap();
        let u = unify_thresholds(&inst, 4).unwrap();
        let (len, w) = pareto_opt(&u.inst).unwrap();
        assert_eq!(len, 5);
        assert!(u.inst.verify_witness(&w).unwrap().feasible);
        let back = u.map_witness_back(&w).unwrap();
        assert_eq!(back.s, vec![0; 4]);
        assert_eq!(back.pi, vec![1, 2, 3, 4]);
        assert_eq!(back.rho, vec![1, 2, 3, 4]);
        let v = inst.verify_witness(&back).unwrap();
        assert_eq!((v.px, v.py, v.feasible), (r(1, 8), r(1, 4), true));
    }

    #[test]
    fn forward_then_back() {
        let inst = appendix_counterexample(&r(1, 1)).unwrap();
        let (_, w) = brute_force_opt(&inst, None).unwrap();
        let u = unify_thresholds(&inst, 4).unwrap();
        let fwd = u.map_witness_forward(&w);
        assert!(u.inst.verify_witness(&fwd).unwrap().feasible);
        assert_eq!(u.map_witness_back(&fwd).unwrap(), w);
    }

    #[test]
    fn k_zero_is_always_solvable() {
        let inst = appendix_counterexample(&r(0, 1)).unwrap();
        let u = unify_thresholds(&inst, 0).unwrap();
        assert_eq!(u.inst.a1, r(1, 8));
        let (len, w) = pareto_opt(&u.inst).unwrap();
        assert!(len >= 1);
        assert_eq!(u.map_witness_back(&w).unwrap(), Witness::empty());
    }

    #[test]
    fn rows_are_distributions_and_fillers_stay_put() {
        let inst = appendix_counterexample(&r(3, 7)).unwrap();
        let u = unify_thresholds(&inst, 2).unwrap();
        assert!(u.inst.x.validate().is_ok());
        assert!(u.inst.y.validate().is_ok());
        let ab = u.inst.alphabet();
        let (h, d, p) = (
            ab.index_of(FILL_X).unwrap(),
            ab.index_of(FILL_Y).unwrap(),
            ab.index_of(MARKER).unwrap(),
        );
        for i in 1..=u.inst.y.len() {
            assert!(u.inst.y.prob(i, h).is_zero());
        }
        for i in 1..=u.inst.x.len() {
            assert!(u.inst.x.prob(i, d).is_zero());
        }
        for i in 1..u.inst.x.len() {
            assert!(u.inst.x.prob(i, p).is_zero());
        }
        for i in 1..u.inst.y.len() {
            assert!(u.inst.y.prob(i, p).is_zero());
        }
    }

    #[test]
    fn swapped_and_equal_thresholds() {
        let mut inst = appendix_counterexample(&r(1, 1)).unwrap();
        std::mem::swap(&mut inst.x, &mut inst.y);
        std::mem::swap(&mut inst.a1, &mut inst.a2);
        let u = unify_thresholds(&inst, 4).unwrap();
        assert!(u.swapped);
        let (len, w) = pareto_opt(&u.inst).unwrap();
        assert_eq!(len, 5);
        let back = u.map_witness_back(&w).unwrap();
        assert!(inst.verify_witness(&back).unwrap().feasible);

        inst.a2 = r(1, 4);
        let u = unify_thresholds(&inst, 2).unwrap();
        assert_eq!(u.k_prime, 2);
        assert_eq!(u.inst.x, inst.x);
    }

    #[test]
    fn errors() {
        let inst = appendix_counterexample(&r(1, 1)).unwrap();
        assert!(unify_thresholds(&inst, 5).is_err());
        assert!(appendix_counterexample(&r(5, 4)).is_err());
        let u = unify_thresholds(&inst, 1).unwrap();
        let bad = Witness {
            s: vec![0],
            pi: vec![1],
            rho: vec![1],
        };
        assert!(u.map_witness_back(&bad).is_err());
    }
}
