//! Enumeration oracles shared by the integration tests. They share no code
//! with the library's DP or search routines.

#![allow(dead_code)]

use wlcs::exactnum::Rational;
use wlcs::{Instance, Letter, WeightedSequence};

/// All increasing `len`-tuples of `1..=n`, in lexicographic order.
pub fn position_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in start..=n {
            if n - p + 1 < left {
                break;
            }
            cur.push(p);
            go(p + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, len, &mut Vec::new(), &mut out);
    out
}

/// Plain left-to-right product, no reduction, no tree.
pub fn fold_product<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Rational {
    let mut acc = Rational::one();
    for x in xs {
        acc = &acc * x;
    }
    acc
}

/// Best embedding probability of `s` and the lexicographically largest
/// tuple attaining it, by trying every tuple.
pub fn brute_embed(seq: &WeightedSequence, s: &[Letter]) -> (Rational, Option<Vec<usize>>) {
    let mut best = Rational::zero();
    let mut arg = None;
    for pos in position_tuples(seq.len(), s.len()) {
        let p = fold_product(s.iter().zip(&pos).map(|(&c, &i)| seq.prob(i, c)));
        // `>=` keeps the last (largest) tuple among equals.
        if p >= best && !p.is_zero() {
            best = p;
            arg = Some(pos);
        }
    }
    if s.is_empty() {
        return (Rational::one(), Some(Vec::new()));
    }
    (best, arg)
}

pub fn brute_feasible(inst: &Instance, s: &[Letter]) -> bool {
    let (px, _) = brute_embed(&inst.x, s);
    let (py, _) = brute_embed(&inst.y, s);
    px >= inst.a1 && py >= inst.a2
}

/// Every string over `0..k` of length `len`, in alphabet order.
pub fn strings(k: usize, len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..k).map(move |c| {
                    let mut t = s.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

/// Optimum by trying every string of every length. Only for tiny inputs.
pub fn enumerate_opt(inst: &Instance) -> usize {
    let k = inst.alphabet().len();
    (0..=inst.max_len())
        .rev()
        .find(|&len| strings(k, len).iter().any(|s| brute_feasible(inst, s)))
        .unwrap_or(0)
}
