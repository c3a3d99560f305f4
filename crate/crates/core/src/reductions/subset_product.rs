use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::exactnum::{mul_many, mul_many_int, Rational};
use crate::model::{Alphabet, Instance, WeightedSequence};

/// Numbers `L`, target `P`, and an optional exact subset size `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetProductInstance {
    pub numbers: Vec<BigUint>,
    pub target: BigUint,
    pub k: Option<usize>,
}

impl SubsetProductInstance {
    pub fn new(numbers: Vec<BigUint>, target: BigUint, k: Option<usize>) -> Result<Self> {
        if let Some(i) = numbers.iter().position(|x| *x < BigUint::one()) {
            return Err(Error::domain(format!("number #{} must be positive", i + 1)));
        }
        if target < BigUint::one() {
            return Err(Error::domain("target must be positive"));
        }
        Ok(SubsetProductInstance { numbers, target, k })
    }

    pub fn from_u64s(numbers: &[u64], target: u64, k: Option<usize>) -> Result<Self> {
        SubsetProductInstance::new(
            numbers.iter().map(|&x| BigUint::from(x)).collect(),
            BigUint::from(target),
            k,
        )
    }
}

/// Cap on the subsets [`find_subset_product`] may have to visit: `2^n`
/// without a size constraint, `C(n, k)` with one.
pub const SUBSET_SEARCH_CAP: u64 = 1 << 20;

fn search_space(n: usize, k: Option<usize>) -> Option<u64> {
    match k {
        None => (n < 64).then(|| 1u64 << n),
        Some(k) if k > n => Some(0),
        Some(k) => (0..k.min(n - k) as u64).try_fold(1u64, |acc, i| {
            acc.checked_mul(n as u64 - i).map(|v| v / (i + 1))
        }),
    }
}

/// Indices (0-based) of a subset whose product is the target, respecting
/// the size constraint when present. Exhaustive, with subtrees skipped as
/// soon as the partial product stops dividing the target.
pub fn find_subset_product(sp: &SubsetProductInstance) -> Result<Option<Vec<usize>>> {
    if search_space(sp.numbers.len(), sp.k).is_none_or(|s| s > SUBSET_SEARCH_CAP) {
        return Err(Error::ResourceCap {
            what: "subset-product search space",
            limit: SUBSET_SEARCH_CAP,
        });
    }
    fn go(
        nums: &[BigUint],
        idx: usize,
        rest: &BigUint,
        want: Option<usize>,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if let Some(k) = want {
            if chosen.len() > k || chosen.len() + (nums.len() - idx) < k {
                return false;
            }
        }
        if idx == nums.len() {
            return rest.is_one() && want.is_none_or(|k| chosen.len() == k);
        }
        let (q, r) = rest.div_rem(&nums[idx]);
        if r == BigUint::ZERO {
            chosen.push(idx);
            if go(nums, idx + 1, &q, want, chosen) {
                return true;
            }
            chosen.pop();
        }
        go(nums, idx + 1, rest, want, chosen)
    }
    let mut chosen = Vec::new();
    Ok(go(&sp.numbers, 0, &sp.target, sp.k, &mut chosen).then_some(chosen))
}

pub fn subset_product_exists(sp: &SubsetProductInstance) -> Result<bool> {
    find_subset_product(sp).map(|s| s.is_some())
}

/// Two-letter instance whose optimum reaches `n + 2` exactly when some
/// subset of the numbers multiplies to the target.
///
/// With `c_i = 1/(1+L_i)` and `d_i = 1/(1+1/L_i)`, position `i <= n` reads
/// `A` with probability `c_i L_i` in X and `d_i / L_i` in Y; position `n+1`
/// reads `A` surely in X and with probability `prod 1/L_i` in Y; position
/// `n+2` reads `A` with probability `1/P^2` in X and surely in Y. Both
/// thresholds are `prod c_i / P`. Choosing `A` at position `i` means taking
/// `L_i`: X then forces the product to be at least `P`, Y at most `P`.
pub fn subset_product_to_wlcs(sp: &SubsetProductInstance) -> Result<Instance> {
    if sp.k.is_some() {
        return Err(Error::domain(
            "size-constrained subset product; use the diagonal construction",
        ));
    }
    let alphabet = Alphabet::new(["A", "B"])?;
    let one = Rational::one();
    let mut x_rows = Vec::with_capacity(sp.numbers.len() + 2);
    let mut y_rows = Vec::with_capacity(sp.numbers.len() + 2);
    let mut cs = Vec::with_capacity(sp.numbers.len());
    let mut inv = Vec::with_capacity(sp.numbers.len());
    for l in &sp.numbers {
        let l = Rational::integer(l.clone());
        let c = (&one + &l).recip()?;
        let d = (&one + &l.recip()?).recip()?;
        let xa = (&c * &l).reduced();
        let ya = (&d / &l).reduced();
        x_rows.push(vec![xa.clone(), c.clone()]);
        y_rows.push(vec![ya, d]);
        cs.push(c);
        inv.push(l.recip()?);
    }
    let y_last = mul_many(&inv);
    x_rows.push(vec![one.clone(), Rational::zero()]);
    y_rows.push(vec![y_last.clone(), y_last.one_minus()?]);

    let p = Rational::integer(sp.target.clone());
    let x_end = (&p * &p).recip()?;
    x_rows.push(vec![x_end.clone(), x_end.one_minus()?]);
    y_rows.push(vec![one.clone(), Rational::zero()]);

    let a = (&mul_many(&cs) / &p).reduced();
    Instance::new(
        WeightedSequence::from_rows(alphabet.clone(), x_rows),
        WeightedSequence::from_rows(alphabet, y_rows),
        a.clone(),
        a,
        Some(sp.numbers.len() as u64 + 2),
    )
}

/// Diagonal instance whose optimum reaches `k + 1` exactly when some
/// `k`-subset multiplies to the target.
///
/// Letter `i` (1-based) appears only at position `i`, with probability
/// `L_i / M` in X and `1 / (M L_i)` in Y, where `M = m^(k+1)` and `m =
/// max L`. Letter `n+1` closes both sequences (`1/P^2` in X, 1 in Y);
/// letters `n+2` and `n+3` absorb the X and Y remainders and are never
/// usable on the other side. The threshold is `1 / (P M^k)`.
///
/// Rejects inputs with `m^k <= P`, which are decidable by looking at the
/// `k` largest numbers.
pub fn ksubset_to_wlcs(sp: &SubsetProductInstance) -> Result<Instance> {
    let k =
        sp.k.ok_or_else(|| Error::domain("diagonal construction needs a subset size k"))?;
    let n = sp.numbers.len();
    let m = sp
        .numbers
        .iter()
        .max()
        .cloned()
        .ok_or_else(|| Error::domain("empty number list"))?;
    if Pow::pow(&m, k as u64) <= sp.target {
        return Err(Error::domain(format!(
            "max^k <= P ({m}^{k} <= {}): only the product of the {k} largest numbers needs checking",
            sp.target
        )));
    }
    let big_m = Rational::integer(Pow::pow(&m, k as u64 + 1));
    let p = Rational::integer(sp.target.clone());
    let names: Vec<String> = (1..=n + 3).map(|i| i.to_string()).collect();
    let alphabet = Alphabet::new(names)?;
    let (fill_x, fill_y) = (n + 1, n + 2);

    let mut x_rows = Vec::with_capacity(n + 1);
    let mut y_rows = Vec::with_capacity(n + 1);
    for (i, l) in sp.numbers.iter().enumerate() {
        let l = Rational::integer(l.clone());
        let px = (&l / &big_m).reduced();
        let py = (&l * &big_m).recip()?.reduced();
        let mut xr = vec![Rational::zero(); n + 3];
        let mut yr = vec![Rational::zero(); n + 3];
        xr[fill_x] = px.one_minus()?;
        xr[i] = px;
        yr[fill_y] = py.one_minus()?;
        yr[i] = py;
        x_rows.push(xr);
        y_rows.push(yr);
    }
    let mut xr = vec![Rational::zero(); n + 3];
    let close = (&p * &p).recip()?;
    xr[fill_x] = close.one_minus()?;
    xr[n] = close;
    let mut yr = vec![Rational::zero(); n + 3];
    yr[n] = Rational::one();
    x_rows.push(xr);
    y_rows.push(yr);

    let mk = mul_many_int(&vec![big_m.numer().clone(); k]);
    let a = Rational::integer(&sp.target * mk).recip()?;
    Instance::new(
        WeightedSequence::from_rows(alphabet.clone(), x_rows),
        WeightedSequence::from_rows(alphabet, y_rows),
        a.clone(),
        a,
        Some(k as u64 + 1),
    )
}
