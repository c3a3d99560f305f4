//! Exact nonnegative rationals over arbitrary-precision integers.
//!
//! Every probability, threshold and product in the crate is a [`Rational`].
//! Equality and ordering are decided by cross-multiplication, so two
//! representations of the same value compare equal whether or not they have
//! been reduced.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// Below this many factors [`mul_many`] multiplies sequentially.
pub const PRODUCT_TREE_LEAF: usize = 8;

#[derive(Clone, Debug)]
pub struct Rational {
    num: BigUint,
    den: BigUint,
}

impl Rational {
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("rational with zero denominator"));
        }
        Ok(Rational { num, den })
    }

    /// Builds `num/den` from machine integers.
    ///
    /// Panics if `den` is zero; use [`Rational::new`] for untrusted input.
    pub fn ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        Rational {
            num: BigUint::from(num),
            den: BigUint::from(den),
        }
    }

    pub fn integer(n: impl Into<BigUint>) -> Self {
        Rational {
            num: n.into(),
            den: BigUint::one(),
        }
    }

    pub fn zero() -> Self {
        Rational::integer(0u32)
    }

    pub fn one() -> Self {
        Rational::integer(1u32)
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Lowest-terms representation of the same value.
    pub fn reduced(&self) -> Rational {
        let mut r = self.clone();
        r.reduce();
        r
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = BigUint::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num /= &g;
            self.den /= &g;
        }
    }

    /// `1 - x` for `x <= 1`, computed as `(den - num)/den`.
    pub fn one_minus(&self) -> Result<Rational> {
        if self.num > self.den {
            return Err(Error::domain(format!("one_minus of {self} > 1")));
        }
        Ok(Rational {
            num: &self.den - &self.num,
            den: self.den.clone(),
        })
    }

    /// `self - other`, or `None` when the difference would be negative.
    pub fn checked_sub(&self, other: &Rational) -> Option<Rational> {
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        if lhs < rhs {
            return None;
        }
        Some(Rational {
            num: lhs - rhs,
            den: &self.den * &other.den,
        })
    }

    pub fn recip(&self) -> Result<Rational> {
        if self.num.is_zero() {
            return Err(Error::domain("reciprocal of zero"));
        }
        Ok(Rational {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    /// Exact `self^exp` by repeated squaring, returned in lowest terms.
    pub fn pow(&self, exp: u64) -> Rational {
        let base = self.reduced();
        let mut out = Rational {
            num: Pow::pow(&base.num, exp),
            den: Pow::pow(&base.den, exp),
        };
        // Powers of a reduced fraction are already reduced; only zero needs fixing.
        if out.num.is_zero() {
            out.den = BigUint::one();
        }
        out
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> BigUint {
        let (q, r) = self.num.div_rem(&self.den);
        if r.is_zero() {
            q
        } else {
            q + 1u32
        }
    }

    /// `self <= 1`.
    pub fn is_probability(&self) -> bool {
        self.num <= self.den
    }
}

/// Exact product of all factors.
///
/// The list is split in halves recursively so both operands of every
/// multiplication have comparable size. Lists shorter than
/// [`PRODUCT_TREE_LEAF`] are folded sequentially.
pub fn mul_many(xs: &[Rational]) -> Rational {
    let mut out = product_tree(xs);
    out.reduce();
    out
}

fn product_tree(xs: &[Rational]) -> Rational {
    if xs.len() < PRODUCT_TREE_LEAF {
        return xs.iter().fold(Rational::one(), |acc, x| &acc * x);
    }
    let (lo, hi) = xs.split_at(xs.len() / 2);
    &product_tree(lo) * &product_tree(hi)
}

/// Balanced product of plain integers; shared by the reduction generators.
pub fn mul_many_int(xs: &[BigUint]) -> BigUint {
    if xs.len() < PRODUCT_TREE_LEAF {
        return xs.iter().fold(BigUint::one(), |acc, x| acc * x);
    }
    let (lo, hi) = xs.split_at(xs.len() / 2);
    mul_many_int(lo) * mul_many_int(hi)
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for Rational {}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let r = self.reduced();
        r.num.hash(state);
        r.den.hash(state);
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;

    fn mul(self, rhs: &'a Rational) -> Rational {
        Rational {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}

impl Mul for Rational {
    type Output = Rational;

    fn mul(self, rhs: Rational) -> Rational {
        &self * &rhs
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;

    fn add(self, rhs: &'a Rational) -> Rational {
        if self.den == rhs.den {
            return Rational {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
        }
        Rational {
            num: &self.num * &rhs.den + &rhs.num * &self.den,
            den: &self.den * &rhs.den,
        }
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;

    /// Panics on division by zero.
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.num.is_zero(), "division by zero rational");
        Rational {
            num: &self.num * &rhs.den,
            den: &self.den * &rhs.num,
        }
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigUint> for Rational {
    fn from(n: BigUint) -> Self {
        Rational::integer(n)
    }
}

/// `NUM/DEN` or `N`, as stored (not reduced).
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `NUM/DEN` or `N` in plain decimal digits. Signs, whitespace
    /// and zero denominators are rejected.
    fn from_str(s: &str) -> Result<Self> {
        fn digits(part: &str, whole: &str) -> Result<BigUint> {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::domain(format!("malformed rational `{whole}`")));
            }
            Ok(part.parse::<BigUint>().expect("validated decimal digits"))
        }
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (digits(n, s)?, digits(d, s)?),
            None => (digits(s, s)?, BigUint::one()),
        };
        if den.is_zero() {
            return Err(Error::domain(format!("zero denominator in `{s}`")));
        }
        Ok(Rational { num, den })
    }
}
