//! Approximation with the d / d+1 guarantee and the EPTAS driver built on it.
//!
//! [`ptas_core`] returns a feasible common subsequence of length `d` such
//! that the optimum is `d` or `d + 1`. It tracks the X-side product exactly
//! and discretizes the Y-side constraint: every Y factor `y` gets an integer
//! cost `c`, the least value with `y^N >= a2^c`, where `N = n0^2` and `n0 =
//! min(|X|, |Y|)`. A string whose costs sum to at most `N` then satisfies
//! `P_Y^N >= a2^(sum c) >= a2^N`, so `P_Y >= a2`; no logarithms or roots are
//! taken.
//!
//! Why `d >= OPT - 1`: write the Y factors of an optimal string of length
//! `L` as `a2^g_k` with `sum g_k <= 1`. Then `c_k = ceil(N g_k)` and `sum c_k
//! < N + L`. If `sum c_k <= N` the DP sees the whole string. Otherwise the
//! largest cost exceeds `N / L >= n0 >= L`, and deleting that letter leaves
//! cost below `N`, while the X product can only grow, so the DP sees a
//! string of length `L - 1`.

use num_bigint::BigUint;

use crate::dp_core::embed_dp;
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::model::{check_threshold, Instance, Letter, Witness};

/// Cap on `(|X|+1)(|Y|+1)(n0+1)(N+1)` DP cells in [`ptas_core`].
pub const PTAS_CELL_CAP: u64 = 20_000_000;

/// Least `c` in `0..=n` with `y^n >= a2^c`, or `None` when no such `c`
/// exists (exactly when `y < a2`).
pub fn quantize_cost(y: &Rational, a2: &Rational, n: u64) -> Result<Option<u64>> {
    if !y.is_probability() {
        return Err(Error::domain(format!("probability {y} exceeds 1")));
    }
    check_threshold("a2", a2)?;
    if n == 0 {
        return Err(Error::domain("quantization resolution must be positive"));
    }
    let yn = y.pow(n);
    let (mut lo, mut hi) = (0u64, n + 1);
    // Invariant: predicate false below lo, true at hi (hi = n + 1 means "none yet").
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if yn >= a2.pow(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok((lo <= n).then_some(lo))
}

/// Quantized Y-side costs, indexed by 1-based Y position and letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostTable {
    pub resolution: u64,
    cost: Vec<Vec<Option<u64>>>,
}

impl CostTable {
    pub fn build(inst: &Instance, resolution: u64) -> Self {
        assert!(resolution >= 1);
        // a2^c for c = 0..=N; non-increasing since a2 <= 1.
        let mut powers = Vec::with_capacity(resolution as usize + 1);
        powers.push(Rational::one());
        for c in 1..=resolution as usize {
            let next = (&powers[c - 1] * &inst.a2).reduced();
            powers.push(next);
        }
        let cost = inst
            .y
            .rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| {
                        let pn = p.pow(resolution);
                        let c = powers.partition_point(|q| *q > pn) as u64;
                        (c <= resolution).then_some(c)
                    })
                    .collect()
            })
            .collect();
        CostTable { resolution, cost }
    }

    /// Cost of `letter` at 1-based Y position `j`; `None` when unusable.
    pub fn cost(&self, j: usize, letter: Letter) -> Option<u64> {
        self.cost[j - 1][letter]
    }
}

/// Table of best exact X products, indexed by (i, j, length, budget).
struct Table {
    dims: [usize; 4],
    cells: Vec<Option<Rational>>,
}

impl Table {
    fn idx(&self, i: usize, j: usize, l: usize, c: usize) -> usize {
        let [_, dj, dl, dc] = self.dims;
        ((i * dj + j) * dl + l) * dc + c
    }

    fn get(&self, i: usize, j: usize, l: usize, c: usize) -> &Option<Rational> {
        &self.cells[self.idx(i, j, l, c)]
    }
}

/// Returns `(d, witness)` with a feasible witness of length `d` and
/// `OPT <= d + 1`.
pub fn ptas_core(inst: &Instance) -> Result<(usize, Witness)> {
    let (n, m) = (inst.x.len(), inst.y.len());
    let n0 = n.min(m);
    let resolution = ((n0 * n0) as u64).max(1);
    let cells = (n as u64 + 1) * (m as u64 + 1) * (n0 as u64 + 1) * (resolution + 1);
    if cells > PTAS_CELL_CAP {
        return Err(Error::ResourceCap {
            what: "approximation DP cells",
            limit: PTAS_CELL_CAP,
        });
    }
    let costs = CostTable::build(inst, resolution);
    let big_n = resolution as usize;
    let k = inst.alphabet().len();
    let mut t = Table {
        dims: [n + 1, m + 1, n0 + 1, big_n + 1],
        cells: vec![None; cells as usize],
    };

    for i in 0..=n {
        for j in 0..=m {
            for c in 0..=big_n {
                let at = t.idx(i, j, 0, c);
                t.cells[at] = Some(Rational::one());
            }
            if i == 0 || j == 0 {
                continue;
            }
            for l in 1..=n0.min(i).min(j) {
                for c in 0..=big_n {
                    let mut best: Option<Rational> = None;
                    let mut offer = |v: Option<Rational>| {
                        if let Some(v) = v {
                            if best.as_ref().is_none_or(|b| v > *b) {
                                best = Some(v);
                            }
                        }
                    };
                    offer(t.get(i - 1, j, l, c).clone());
                    offer(t.get(i, j - 1, l, c).clone());
                    for s in 0..k {
                        let p = inst.x.prob(i, s);
                        if p.is_zero() {
                            continue;
                        }
                        let Some(cost) = costs.cost(j, s) else {
                            continue;
                        };
                        let cost = cost as usize;
                        if cost > c {
                            continue;
                        }
                        if let Some(v) = t.get(i - 1, j - 1, l - 1, c - cost) {
                            offer(Some((v * p).reduced()));
                        }
                    }
                    let at = t.idx(i, j, l, c);
                    t.cells[at] = best;
                }
            }
        }
    }

    let d = (0..=n0)
        .rev()
        .find(|&l| {
            t.get(n, m, l, big_n)
                .as_ref()
                .is_some_and(|v| *v >= inst.a1)
        })
        .unwrap_or(0);

    // Traceback: skip X, then skip Y, then the first matching letter.
    let mut steps = Vec::with_capacity(d);
    let (mut i, mut j, mut l, mut c) = (n, m, d, big_n);
    while l > 0 {
        let v = t.get(i, j, l, c).clone();
        if *t.get(i - 1, j, l, c) == v {
            i -= 1;
            continue;
        }
        if *t.get(i, j - 1, l, c) == v {
            j -= 1;
            continue;
        }
        let v = v.expect("traceback follows reachable states");
        let (s, cost) = (0..k)
            .find_map(|s| {
                let p = inst.x.prob(i, s);
                let cost = costs.cost(j, s)? as usize;
                if p.is_zero() || cost > c {
                    return None;
                }
                let prev = t.get(i - 1, j - 1, l - 1, c - cost).as_ref()?;
                (prev * p == v).then_some((s, cost))
            })
            .expect("some transition realizes every reachable state");
        steps.push((s, i, j));
        i -= 1;
        j -= 1;
        l -= 1;
        c -= cost;
    }
    steps.reverse();
    let mut w = Witness::empty();
    for (s, i, j) in steps {
        w.s.push(s);
        w.pi.push(i);
        w.rho.push(j);
    }
    Ok((d, w))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxResult {
    pub length: usize,
    pub witness: Witness,
    /// True when the driver proved `length == OPT`.
    pub exact: bool,
    /// Strings examined by the exhaustive branch (zero when it did not run).
    pub strings_checked: u64,
    pub exhaustive_ran: bool,
}

/// `(1 - eps)`-approximation.
///
/// Runs [`ptas_core`] to get `d`. If `d + 1 >= 1/eps` the ratio
/// `d / (d + 1)` already meets the bound. Otherwise every string of length
/// `d + 1` is tried against both sequences; since `OPT` is `d` or `d + 1`,
/// the answer is then exact.
pub fn eptas(inst: &Instance, eps: &Rational) -> Result<ApproxResult> {
    if eps.is_zero() || !eps.is_probability() {
        return Err(Error::domain(format!("eps = {eps} must lie in (0, 1]")));
    }
    let (d, witness) = ptas_core(inst)?;
    let next = BigUint::from(d + 1);
    if &next * eps.numer() >= *eps.denom() {
        return Ok(ApproxResult {
            length: d,
            witness,
            exact: false,
            strings_checked: 0,
            exhaustive_ran: false,
        });
    }
    let mut checked = 0u64;
    if d < inst.max_len() {
        let k = inst.alphabet().len();
        let mut s: Vec<Letter> = vec![0; d + 1];
        loop {
            checked += 1;
            let ex = embed_dp(&inst.x, &s);
            if !ex.positions.is_empty() && ex.prob >= inst.a1 {
                let ey = embed_dp(&inst.y, &s);
                if !ey.positions.is_empty() && ey.prob >= inst.a2 {
                    return Ok(ApproxResult {
                        length: d + 1,
                        witness: Witness {
                            s,
                            pi: ex.positions,
                            rho: ey.positions,
                        },
                        exact: true,
                        strings_checked: checked,
                        exhaustive_ran: true,
                    });
                }
            }
            // Next string in alphabet order.
            let mut pos = s.len();
            loop {
                if pos == 0 {
                    return Ok(ApproxResult {
                        length: d,
                        witness,
                        exact: true,
                        strings_checked: checked,
                        exhaustive_ran: true,
                    });
                }
                pos -= 1;
                s[pos] += 1;
                if s[pos] < k {
                    break;
                }
                s[pos] = 0;
            }
        }
    }
    Ok(ApproxResult {
        length: d,
        witness,
        exact: true,
        strings_checked: checked,
        exhaustive_ran: true,
    })
}
