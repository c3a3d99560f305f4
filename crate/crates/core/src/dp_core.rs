//! Fixed-string embedding DP and the exact optimizers.
//!
//! Three exact solvers live here and are cross-checked against each other:
//! [`brute_force_opt`] enumerates strings, [`dfs_opt`] enumerates matched
//! position pairs, and [`pareto_opt`] runs a bicriteria DP over prefix
//! pairs.

use std::rc::Rc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::model::{Instance, Letter, WeightedSequence, Witness};

/// Best embedding of a fixed string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbedResult {
    pub prob: Rational,
    /// 1-based positions realizing `prob`; empty when `prob` is zero.
    pub positions: Vec<usize>,
}

/// Maximum probability with which `s` embeds into `seq` along increasing
/// positions.
///
/// The prefix recurrence `opt(i, j) = max(opt(i-1, j), opt(i-1, j-1) *
/// p_i(s_j))` is run mirrored, over suffixes, so that the traceback walks
/// left to right. It skips a position whenever skipping keeps the optimum,
/// which makes the returned positions the lexicographically largest
/// optimal tuple.
pub fn embed_dp(seq: &WeightedSequence, s: &[Letter]) -> EmbedResult {
    let n = seq.len();
    let len = s.len();
    if len > n {
        return EmbedResult {
            prob: Rational::zero(),
            positions: Vec::new(),
        };
    }
    // suf[i][j]: best probability of embedding s[j..] into positions i+1..=n.
    let width = len + 1;
    let mut suf = vec![Rational::zero(); (n + 1) * width];
    for i in 0..=n {
        suf[i * width + len] = Rational::one();
    }
    for i in (0..n).rev() {
        // s[j..] needs len - j positions out of the n - i left.
        for j in (len.saturating_sub(n - i)..len).rev() {
            let skip = &suf[(i + 1) * width + j];
            let take = &suf[(i + 1) * width + j + 1] * seq.prob(i + 1, s[j]);
            suf[i * width + j] = if take > *skip {
                take.reduced()
            } else {
                skip.clone()
            };
        }
    }
    let prob = suf[0].clone();
    if prob.is_zero() {
        return EmbedResult {
            prob,
            positions: Vec::new(),
        };
    }
    let mut positions = Vec::with_capacity(len);
    let (mut i, mut j) = (0, 0);
    while j < len {
        if suf[(i + 1) * width + j] != suf[i * width + j] {
            positions.push(i + 1);
            j += 1;
        }
        i += 1;
    }
    EmbedResult { prob, positions }
}

/// Builds the witness for a string known to be feasible on both sides.
fn witness_for(inst: &Instance, s: Vec<Letter>) -> Witness {
    let pi = embed_dp(&inst.x, &s).positions;
    let rho = embed_dp(&inst.y, &s).positions;
    Witness { s, pi, rho }
}

/// Default cap on string checks performed by [`BruteForce`].
pub const BRUTE_FORCE_WORK_BOUND: u64 = 10_000_000;

/// Exhaustive search over candidate strings.
///
/// Lengths are tried in descending order from `min(|X|, |Y|, len_cap)`;
/// within a length, strings are visited in alphabet order and the first
/// feasible one is returned. Because every probability is at most one, a
/// string is feasible only if all its prefixes are, so a prefix that fails
/// either threshold cuts off its whole subtree. Each prefix extension counts
/// as one string check against `work_bound`.
#[derive(Clone, Debug)]
pub struct BruteForce {
    pub len_cap: Option<usize>,
    pub work_bound: u64,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce {
            len_cap: None,
            work_bound: BRUTE_FORCE_WORK_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteResult {
    pub opt: usize,
    pub witness: Witness,
    pub checks: u64,
}

/// One DP column per sequence for the current prefix.
#[derive(Clone)]
struct Columns {
    x: Vec<Rational>,
    y: Vec<Rational>,
}

impl Columns {
    fn root(inst: &Instance) -> Self {
        Columns {
            x: vec![Rational::one(); inst.x.len() + 1],
            y: vec![Rational::one(); inst.y.len() + 1],
        }
    }

    fn extend(col: &[Rational], seq: &WeightedSequence, c: Letter) -> Vec<Rational> {
        let mut next = Vec::with_capacity(col.len());
        next.push(Rational::zero());
        for i in 1..col.len() {
            let take = &col[i - 1] * seq.prob(i, c);
            let best = if take > next[i - 1] {
                take.reduced()
            } else {
                next[i - 1].clone()
            };
            next.push(best);
        }
        next
    }

    /// Extends by `c`, or `None` if either side falls below its threshold.
    fn push(&self, inst: &Instance, c: Letter) -> Option<Columns> {
        let x = Columns::extend(&self.x, &inst.x, c);
        if *x.last().unwrap() < inst.a1 {
            return None;
        }
        let y = Columns::extend(&self.y, &inst.y, c);
        if *y.last().unwrap() < inst.a2 {
            return None;
        }
        Some(Columns { x, y })
    }
}

struct Search<'a> {
    inst: &'a Instance,
    target: usize,
    checks: u64,
    bound: u64,
}

impl Search<'_> {
    /// Depth-first in alphabet order; returns the first feasible string of
    /// length `target` below `prefix`.
    fn descend(&mut self, prefix: &mut Vec<Letter>, cols: &Columns) -> Result<bool> {
        if prefix.len() == self.target {
            return Ok(true);
        }
        for c in 0..self.inst.alphabet().len() {
            self.checks += 1;
            if self.checks > self.bound {
                return Err(Error::ResourceCap {
                    what: "brute-force string checks",
                    limit: self.bound,
                });
            }
            if let Some(next) = cols.push(self.inst, c) {
                prefix.push(c);
                if self.descend(prefix, &next)? {
                    return Ok(true);
                }
                prefix.pop();
            }
        }
        Ok(false)
    }
}

impl BruteForce {
    pub fn run(&self, inst: &Instance) -> Result<BruteResult> {
        let top = inst.max_len().min(self.len_cap.unwrap_or(usize::MAX));
        let mut checks = 0u64;
        for len in (1..=top).rev() {
            let (found, used) = self.search_length(inst, len, self.work_bound - checks)?;
            checks += used;
            if let Some(s) = found {
                return Ok(BruteResult {
                    opt: len,
                    witness: witness_for(inst, s),
                    checks,
                });
            }
        }
        Ok(BruteResult {
            opt: 0,
            witness: Witness::empty(),
            checks,
        })
    }

    /// First feasible string of exactly `len` letters in alphabet order.
    ///
    /// Subtrees under each first letter are searched in parallel; results
    /// and check counts are merged in letter order so the outcome does not
    /// depend on the thread count.
    fn search_length(
        &self,
        inst: &Instance,
        len: usize,
        budget: u64,
    ) -> Result<(Option<Vec<Letter>>, u64)> {
        let root = Columns::root(inst);
        let cap_error = || Error::ResourceCap {
            what: "brute-force string checks",
            limit: self.work_bound,
        };
        let branches: Vec<Result<(Option<Vec<Letter>>, u64)>> = (0..inst.alphabet().len())
            .into_par_iter()
            .map(|c| {
                let mut search = Search {
                    inst,
                    target: len,
                    checks: 1,
                    bound: budget,
                };
                let Some(cols) = root.push(inst, c) else {
                    return Ok((None, search.checks));
                };
                let mut prefix = vec![c];
                let hit = search
                    .descend(&mut prefix, &cols)
                    .map_err(|_| cap_error())?;
                Ok((hit.then_some(prefix), search.checks))
            })
            .collect();
        let mut used = 0u64;
        for branch in branches {
            let (hit, checks) = branch?;
            used += checks;
            if used > budget {
                return Err(cap_error());
            }
            if hit.is_some() {
                return Ok((hit, used));
            }
        }
        Ok((None, used))
    }

    /// A feasible witness of exactly `len` letters, if one exists.
    pub fn feasible_at_length(&self, inst: &Instance, len: usize) -> Result<Option<Witness>> {
        if len == 0 {
            return Ok(Some(Witness::empty()));
        }
        if len > inst.max_len() {
            return Ok(None);
        }
        let (found, _) = self.search_length(inst, len, self.work_bound)?;
        Ok(found.map(|s| witness_for(inst, s)))
    }
}

/// Exact optimum by string enumeration, see [`BruteForce`].
pub fn brute_force_opt(inst: &Instance, len_cap: Option<usize>) -> Result<(usize, Witness)> {
    let res = BruteForce {
        len_cap,
        ..BruteForce::default()
    }
    .run(inst)?;
    Ok((res.opt, res.witness))
}

/// Default cap on `|X| + |Y|` for [`dfs_opt`].
pub const DFS_SIZE_CAP: usize = 16;

struct Dfs<'a> {
    inst: &'a Instance,
    best: usize,
    best_path: Vec<(Letter, usize, usize)>,
    path: Vec<(Letter, usize, usize)>,
}

impl Dfs<'_> {
    /// `i`, `j` are the numbers of X and Y positions already consumed.
    fn go(&mut self, i: usize, j: usize, px: &Rational, py: &Rational) {
        let (n, m) = (self.inst.x.len(), self.inst.y.len());
        let len = self.path.len();
        if len > self.best {
            self.best = len;
            self.best_path = self.path.clone();
        }
        let k = self.inst.alphabet().len();
        for ni in i + 1..=n {
            for nj in j + 1..=m {
                if len + 1 + (n - ni).min(m - nj) <= self.best {
                    continue;
                }
                for c in 0..k {
                    let p = self.inst.x.prob(ni, c);
                    let q = self.inst.y.prob(nj, c);
                    if p.is_zero() || q.is_zero() {
                        continue;
                    }
                    let npx = px * p;
                    if npx < self.inst.a1 {
                        continue;
                    }
                    let npy = py * q;
                    if npy < self.inst.a2 {
                        continue;
                    }
                    self.path.push((c, ni, nj));
                    self.go(ni, nj, &npx, &npy);
                    self.path.pop();
                }
            }
        }
    }
}

/// Exact optimum by depth-first search over increasing matched position
/// pairs, pruning any branch whose running product falls below a threshold.
///
/// Refuses instances with `|X| + |Y| > cap`.
pub fn dfs_opt(inst: &Instance, cap: usize) -> Result<(usize, Witness)> {
    if inst.x.len() + inst.y.len() > cap {
        return Err(Error::ResourceCap {
            what: "|X| + |Y| for depth-first search",
            limit: cap as u64,
        });
    }
    let mut dfs = Dfs {
        inst,
        best: 0,
        best_path: Vec::new(),
        path: Vec::new(),
    };
    dfs.go(0, 0, &Rational::one(), &Rational::one());
    let mut w = Witness::empty();
    for (c, i, j) in dfs.best_path {
        w.s.push(c);
        w.pi.push(i);
        w.rho.push(j);
    }
    Ok((dfs.best, w))
}

/// Optimum value from [`dfs_opt`] with the default size cap.
pub fn dfs_oracle(inst: &Instance) -> Result<usize> {
    dfs_opt(inst, DFS_SIZE_CAP).map(|(opt, _)| opt)
}

/// Default cap on the total number of frontier entries in [`pareto_opt`].
pub const PARETO_WORK_BOUND: u64 = 1_000_000;

struct Step {
    letter: Letter,
    i: usize,
    j: usize,
    prev: Option<Rc<Step>>,
}

/// A non-dominated (length, P_X, P_Y) triple with its match history.
#[derive(Clone)]
struct FrontierEntry {
    len: usize,
    px: Rational,
    py: Rational,
    trail: Option<Rc<Step>>,
}

impl FrontierEntry {
    fn covers(&self, other: &FrontierEntry) -> bool {
        self.len >= other.len && self.px >= other.px && self.py >= other.py
    }
}

/// Removes dominated entries and keeps one entry per value triple.
///
/// After sorting by (len, px, py) descending, no entry can dominate an
/// earlier one, so a single sweep against the kept prefix suffices.
fn prune(mut cands: Vec<FrontierEntry>) -> Vec<FrontierEntry> {
    cands.sort_by(|a, b| {
        b.len
            .cmp(&a.len)
            .then_with(|| b.px.cmp(&a.px))
            .then_with(|| b.py.cmp(&a.py))
    });
    let mut kept: Vec<FrontierEntry> = Vec::with_capacity(cands.len());
    for c in cands {
        if !kept.iter().any(|k| k.covers(&c)) {
            kept.push(c);
        }
    }
    kept
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParetoResult {
    pub opt: usize,
    pub witness: Witness,
    /// Total frontier entries stored over all prefix pairs.
    pub entries: u64,
}

/// Exact optimum by a Pareto-frontier DP over prefix pairs `(i, j)`.
///
/// Each cell keeps the non-dominated triples `(len, P_X, P_Y)` reachable by
/// common strings of `X[..i]` and `Y[..j]`. Triples below either threshold
/// are discarded immediately: factors never exceed one, so they could only
/// shrink further.
pub fn pareto_opt_with_bound(inst: &Instance, work_bound: u64) -> Result<ParetoResult> {
    let (n, m) = (inst.x.len(), inst.y.len());
    let k = inst.alphabet().len();
    let root = vec![FrontierEntry {
        len: 0,
        px: Rational::one(),
        py: Rational::one(),
        trail: None,
    }];
    let mut entries = (m as u64 + 1) + n as u64;
    let mut prev: Vec<Vec<FrontierEntry>> = vec![root.clone(); m + 1];
    for i in 1..=n {
        let mut cur: Vec<Vec<FrontierEntry>> = Vec::with_capacity(m + 1);
        cur.push(root.clone());
        for j in 1..=m {
            let mut cands: Vec<FrontierEntry> = prev[j].clone();
            cands.extend(cur[j - 1].iter().cloned());
            for e in &prev[j - 1] {
                for c in 0..k {
                    let p = inst.x.prob(i, c);
                    let q = inst.y.prob(j, c);
                    if p.is_zero() || q.is_zero() {
                        continue;
                    }
                    let px = (&e.px * p).reduced();
                    if px < inst.a1 {
                        continue;
                    }
                    let py = (&e.py * q).reduced();
                    if py < inst.a2 {
                        continue;
                    }
                    cands.push(FrontierEntry {
                        len: e.len + 1,
                        px,
                        py,
                        trail: Some(Rc::new(Step {
                            letter: c,
                            i,
                            j,
                            prev: e.trail.clone(),
                        })),
                    });
                }
            }
            let cell = prune(cands);
            entries += cell.len() as u64;
            if entries > work_bound {
                return Err(Error::ResourceCap {
                    what: "Pareto frontier entries",
                    limit: work_bound,
                });
            }
            cur.push(cell);
        }
        prev = cur;
    }

    let best = prev[m]
        .first()
        .expect("frontier always holds the empty string");
    let mut steps = Vec::with_capacity(best.len);
    let mut at = best.trail.clone();
    while let Some(step) = at {
        steps.push((step.letter, step.i, step.j));
        at = step.prev.clone();
    }
    steps.reverse();
    let mut witness = Witness::empty();
    for (c, i, j) in steps {
        witness.s.push(c);
        witness.pi.push(i);
        witness.rho.push(j);
    }
    Ok(ParetoResult {
        opt: best.len,
        witness,
        entries,
    })
}

pub fn pareto_opt(inst: &Instance) -> Result<(usize, Witness)> {
    pareto_opt_with_bound(inst, PARETO_WORK_BOUND).map(|r| (r.opt, r.witness))
}
