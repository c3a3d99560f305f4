//! Weighted sequences, instances and witnesses.
//!
//! Letters are addressed by their index into the shared [`Alphabet`];
//! positions in witnesses and messages are 1-based.

pub(crate) mod format;

use std::fmt;

pub use format::{parse_instance, parse_witness, serialize_instance, serialize_witness};

use crate::dp_core::embed_dp;
use crate::error::{Error, Result};
use crate::exactnum::{mul_many, Rational};

/// Index into an [`Alphabet`].
pub type Letter = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Result<Self> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::domain("alphabet must contain at least one letter"));
        }
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::domain(format!("invalid letter name `{l}`")));
            }
            if letters[..i].contains(l) {
                return Err(Error::domain(format!("duplicate letter `{l}`")));
            }
        }
        Ok(Alphabet { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.letters[letter]
    }

    pub fn index_of(&self, name: &str) -> Option<Letter> {
        self.letters.iter().position(|l| l == name)
    }

    pub fn names(&self) -> &[String] {
        &self.letters
    }

    /// Renders a string of letter indices as space-separated names.
    pub fn render(&self, s: &[Letter]) -> String {
        s.iter()
            .map(|&c| self.name(c))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// One problem with a weighted sequence, reported by [`WeightedSequence::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Row (1-based) whose entries do not sum to exactly one.
    RowSum { row: usize, sum: Rational },
    /// Row (1-based) whose width differs from the alphabet size.
    RowWidth {
        row: usize,
        width: usize,
        expected: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RowSum { row, sum } => {
                write!(f, "row {row} sums to {} instead of 1", sum.reduced())
            }
            Violation::RowWidth {
                row,
                width,
                expected,
            } => write!(f, "row {row} has {width} entries, expected {expected}"),
        }
    }
}

/// A position weight matrix: one probability distribution per position.
///
/// Entries are nonnegative by construction of [`Rational`]; row sums are not
/// checked on construction, see [`WeightedSequence::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSequence {
    alphabet: Alphabet,
    rows: Vec<Vec<Rational>>,
}

impl WeightedSequence {
    pub fn from_rows(alphabet: Alphabet, rows: Vec<Vec<Rational>>) -> Self {
        WeightedSequence { alphabet, rows }
    }

    /// Builds the sequence and rejects it unless every row is a distribution.
    pub fn new(alphabet: Alphabet, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let seq = WeightedSequence::from_rows(alphabet, rows);
        seq.validate().map_err(|violations| Error::Invalid {
            seq: "sequence",
            violations,
        })?;
        Ok(seq)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Probability of `letter` at 1-based position `pos`.
    pub fn prob(&self, pos: usize, letter: Letter) -> &Rational {
        &self.rows[pos - 1][letter]
    }

    /// Reports every row that is not an exact probability distribution.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let k = self.alphabet.len();
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != k {
                out.push(Violation::RowWidth {
                    row: i + 1,
                    width: row.len(),
                    expected: k,
                });
                continue;
            }
            let sum = row.iter().fold(Rational::zero(), |acc, p| &acc + p);
            if !sum.is_one() {
                out.push(Violation::RowSum { row: i + 1, sum });
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// `P(pos, s)`: probability that positions `pos` read `s`.
    pub fn embedding_probability(&self, s: &[Letter], pos: &[usize]) -> Result<Rational> {
        if s.len() != pos.len() {
            return Err(Error::domain(format!(
                "string has {} letters but {} positions were given",
                s.len(),
                pos.len()
            )));
        }
        let mut factors = Vec::with_capacity(s.len());
        for (&c, &p) in s.iter().zip(pos) {
            if p == 0 || p > self.len() {
                return Err(Error::domain(format!(
                    "position {p} outside 1..={}",
                    self.len()
                )));
            }
            if c >= self.alphabet.len() {
                return Err(Error::domain(format!("unknown letter index {c}")));
            }
            factors.push(self.prob(p, c).clone());
        }
        Ok(mul_many(&factors))
    }

    /// Whether `s` belongs to SUBS(self, a): some increasing embedding has
    /// probability at least `a`.
    pub fn subs_membership(&self, a: &Rational, s: &[Letter]) -> Result<bool> {
        check_threshold("a", a)?;
        if let Some(&c) = s.iter().find(|&&c| c >= self.alphabet.len()) {
            return Err(Error::domain(format!("unknown letter index {c}")));
        }
        let best = embed_dp(self, s);
        Ok(best.positions.len() == s.len() && best.prob >= *a)
    }
}

pub(crate) fn check_threshold(name: &str, a: &Rational) -> Result<()> {
    if a.is_zero() || !a.is_probability() {
        return Err(Error::domain(format!(
            "threshold {name} = {a} must lie in (0, 1]"
        )));
    }
    Ok(())
}

/// Two weighted sequences over one alphabet with cut-off probabilities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub x: WeightedSequence,
    pub y: WeightedSequence,
    pub a1: Rational,
    pub a2: Rational,
    /// Decision target, when the instance poses one.
    pub k: Option<u64>,
}

impl Instance {
    pub fn new(
        x: WeightedSequence,
        y: WeightedSequence,
        a1: Rational,
        a2: Rational,
        k: Option<u64>,
    ) -> Result<Self> {
        if x.alphabet != y.alphabet {
            return Err(Error::domain("X and Y use different alphabets"));
        }
        check_threshold("a1", &a1)?;
        check_threshold("a2", &a2)?;
        for (seq, w) in [("X", &x), ("Y", &y)] {
            if let Err(violations) = w.validate() {
                return Err(Error::Invalid { seq, violations });
            }
        }
        Ok(Instance { x, y, a1, a2, k })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.x.alphabet
    }

    /// `min(|X|, |Y|)`, the longest conceivable common subsequence.
    pub fn max_len(&self) -> usize {
        self.x.len().min(self.y.len())
    }

    /// Exact feasibility check of a candidate solution.
    pub fn verify_witness(&self, w: &Witness) -> Result<Verification> {
        let problems = w.shape_violations(self);
        if !problems.is_empty() {
            return Err(Error::Shape(problems));
        }
        let px = self.x.embedding_probability(&w.s, &w.pi)?;
        let py = self.y.embedding_probability(&w.s, &w.rho)?;
        let feasible = px >= self.a1 && py >= self.a2;
        Ok(Verification { px, py, feasible })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub px: Rational,
    pub py: Rational,
    pub feasible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeViolation {
    LengthMismatch {
        s: usize,
        pi: usize,
        rho: usize,
    },
    UnknownLetter {
        index: usize,
        letter: Letter,
    },
    OutOfRange {
        seq: &'static str,
        index: usize,
        pos: usize,
        len: usize,
    },
    NotIncreasing {
        seq: &'static str,
        index: usize,
    },
}

impl fmt::Display for ShapeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeViolation::LengthMismatch { s, pi, rho } => {
                write!(f, "|s| = {s}, |pi| = {pi}, |rho| = {rho} differ")
            }
            ShapeViolation::UnknownLetter { index, letter } => {
                write!(f, "letter #{index} ({letter}) is not in the alphabet")
            }
            ShapeViolation::OutOfRange {
                seq,
                index,
                pos,
                len,
            } => write!(f, "{seq}[{index}] = {pos} outside 1..={len}"),
            ShapeViolation::NotIncreasing { seq, index } => {
                write!(f, "{seq} is not strictly increasing at entry {index}")
            }
        }
    }
}

/// A common string together with its embeddings into X (`pi`) and Y (`rho`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witness {
    pub s: Vec<Letter>,
    pub pi: Vec<usize>,
    pub rho: Vec<usize>,
}

impl Witness {
    pub fn empty() -> Self {
        Witness::default()
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// Keeps only the entries at the given (0-based, increasing) indices.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Witness {
        let mut out = Witness::empty();
        for i in (0..self.len()).filter(|&i| keep(i)) {
            out.s.push(self.s[i]);
            out.pi.push(self.pi[i]);
            out.rho.push(self.rho[i]);
        }
        out
    }

    pub fn shape_violations(&self, inst: &Instance) -> Vec<ShapeViolation> {
        let mut out = Vec::new();
        if self.s.len() != self.pi.len() || self.s.len() != self.rho.len() {
            out.push(ShapeViolation::LengthMismatch {
                s: self.s.len(),
                pi: self.pi.len(),
                rho: self.rho.len(),
            });
        }
        let k = inst.alphabet().len();
        for (i, &c) in self.s.iter().enumerate() {
            if c >= k {
                out.push(ShapeViolation::UnknownLetter {
                    index: i + 1,
                    letter: c,
                });
            }
        }
        for (name, pos, len) in [
            ("pi", &self.pi, inst.x.len()),
            ("rho", &self.rho, inst.y.len()),
        ] {
            for (i, &p) in pos.iter().enumerate() {
                if p == 0 || p > len {
                    out.push(ShapeViolation::OutOfRange {
                        seq: name,
                        index: i + 1,
                        pos: p,
                        len,
                    });
                }
                if i > 0 && pos[i - 1] >= p {
                    out.push(ShapeViolation::NotIncreasing {
                        seq: name,
                        index: i + 1,
                    });
                }
            }
        }
        out
    }
}
