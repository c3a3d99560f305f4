//! Line-oriented text formats for instances and witnesses.
//!
//! ```text
//! WLCS 1
//! alphabet: a b
//! a1: 1/8
//! a2: 1/4
//! k: 4
//! X 2
//! 1 0
//! 1/8 7/8
//! Y 1
//! 1/2 1/2
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::error::{Error, ParseError, Result};
use crate::exactnum::Rational;
use crate::model::{Alphabet, Instance, WeightedSequence, Witness};

pub(crate) type Token<'a> = (usize, &'a str);

/// Whitespace-separated tokens with their 1-based columns.
pub(crate) fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate().peekable(),
            last: 0,
        }
    }

    fn skip_ignorable(&mut self) {
        while let Some((_, l)) = self.inner.peek() {
            let t = l.trim_start();
            if t.is_empty() || t.starts_with('#') {
                self.inner.next();
            } else {
                break;
            }
        }
    }

    /// Next significant line as (line number, tokens).
    fn next(&mut self, what: &str) -> Result<(usize, Vec<Token<'a>>), ParseError> {
        self.skip_ignorable();
        match self.inner.next() {
            Some((i, l)) => {
                self.last = i + 1;
                Ok((i + 1, tokens(l)))
            }
            None => Err(ParseError::new(
                self.last + 1,
                1,
                format!("unexpected end of input, expected {what}"),
            )),
        }
    }

    fn peek_key(&mut self) -> Option<&'a str> {
        self.skip_ignorable();
        self.inner
            .peek()
            .and_then(|(_, l)| l.split_whitespace().next())
    }
}

fn expect_key<'a>(line: usize, toks: &[Token<'a>], key: &str) -> Result<(), ParseError> {
    match toks.first() {
        Some((_, k)) if *k == key => Ok(()),
        Some((col, k)) => Err(ParseError::new(
            line,
            *col,
            format!("expected `{key}`, found `{k}`"),
        )),
        None => Err(ParseError::new(line, 1, format!("expected `{key}`"))),
    }
}

fn single<'a>(line: usize, toks: &[Token<'a>], key: &str) -> Result<Token<'a>, ParseError> {
    expect_key(line, toks, key)?;
    match toks {
        [_, v] => Ok(*v),
        [(col, _)] => Err(ParseError::new(
            line,
            col + key.len(),
            format!("missing value after `{key}`"),
        )),
        [_, _, (col, extra), ..] => {
            Err(ParseError::new(line, *col, format!("unexpected `{extra}`")))
        }
        [] => unreachable!(),
    }
}

fn rational((col, tok): Token<'_>, line: usize) -> Result<Rational, ParseError> {
    tok.parse::<Rational>()
        .map_err(|e| ParseError::new(line, col, e.to_string()))
}

fn integer<T: std::str::FromStr>((col, tok): Token<'_>, line: usize) -> Result<T, ParseError> {
    if !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::new(
            line,
            col,
            format!("expected an integer, found `{tok}`"),
        ));
    }
    tok.parse::<T>()
        .map_err(|_| ParseError::new(line, col, format!("integer `{tok}` out of range")))
}

fn parse_rows(
    lines: &mut Lines<'_>,
    name: &str,
    width: usize,
) -> Result<Vec<Vec<Rational>>, ParseError> {
    let (ln, toks) = lines.next(name)?;
    let n: usize = integer(single(ln, &toks, name)?, ln)?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, toks) = lines.next(&format!("a row of {name}"))?;
        if toks.len() != width {
            let col = toks.get(width).map_or(1, |t| t.0);
            return Err(ParseError::new(
                ln,
                col,
                format!("expected {width} probabilities, found {}", toks.len()),
            ));
        }
        rows.push(
            toks.into_iter()
                .map(|t| rational(t, ln))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(rows)
}

/// Parses an instance file.
///
/// Syntax problems come back as [`Error::Parse`]; rows that do not sum to one
/// come back as [`Error::Invalid`] and bad thresholds as [`Error::Domain`].
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = Lines::new(text);

    let (ln, toks) = lines.next("header")?;
    match toks.as_slice() {
        [(_, "WLCS"), (_, "1")] => {}
        [(_, "WLCS"), (col, v), ..] => {
            return Err(ParseError::new(ln, *col, format!("unsupported version `{v}`")).into())
        }
        _ => return Err(ParseError::new(ln, 1, "expected header `WLCS 1`").into()),
    }

    let (ln, toks) = lines.next("alphabet")?;
    expect_key(ln, &toks, "alphabet:")?;
    if toks.len() < 2 {
        return Err(ParseError::new(ln, 10, "alphabet needs at least one letter").into());
    }
    let names: Vec<&str> = toks[1..].iter().map(|t| t.1).collect();
    for (i, (col, name)) in toks[1..].iter().enumerate() {
        if names[..i].contains(name) {
            return Err(ParseError::new(ln, *col, format!("duplicate letter `{name}`")).into());
        }
    }
    let alphabet = Alphabet::new(names)?;

    let (ln, toks) = lines.next("a1")?;
    let a1 = rational(single(ln, &toks, "a1:")?, ln)?;
    let (ln, toks) = lines.next("a2")?;
    let a2 = rational(single(ln, &toks, "a2:")?, ln)?;

    let mut k = None;
    if lines.peek_key() == Some("k:") {
        let (ln, toks) = lines.next("k")?;
        k = Some(integer::<u64>(single(ln, &toks, "k:")?, ln)?);
    }

    let x_rows = parse_rows(&mut lines, "X", alphabet.len())?;
    let y_rows = parse_rows(&mut lines, "Y", alphabet.len())?;

    lines.skip_ignorable();
    if let Some((i, l)) = lines.inner.next() {
        let col = tokens(l).first().map_or(1, |t| t.0);
        return Err(ParseError::new(i + 1, col, "trailing content after Y").into());
    }

    let x = WeightedSequence::from_rows(alphabet.clone(), x_rows);
    let y = WeightedSequence::from_rows(alphabet, y_rows);
    Instance::new(x, y, a1, a2, k)
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str("WLCS 1\n");
    let _ = writeln!(out, "alphabet: {}", inst.alphabet().names().join(" "));
    let _ = writeln!(out, "a1: {}", inst.a1);
    let _ = writeln!(out, "a2: {}", inst.a2);
    if let Some(k) = inst.k {
        let _ = writeln!(out, "k: {k}");
    }
    for (name, seq) in [("X", &inst.x), ("Y", &inst.y)] {
        let _ = writeln!(out, "{name} {}", seq.len());
        for row in seq.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
    }
    out
}

/// Report lines written by the command-line tool (`OPT 4`, `METHOD pareto`)
/// use all-uppercase keys; the witness reader skips them so solver output can
/// be verified directly.
fn is_report_line(key: &str) -> bool {
    key.chars().next().is_some_and(|c| c.is_ascii_uppercase())
        && key
            .chars()
            .all(|c| c.is_ascii_uppercase() || c == '_' || c.is_ascii_digit())
}

/// Parses `s: …`, `pi: …` and `rho: …` lines, resolving letter names
/// against `alphabet`. Shape is not checked here; see
/// [`Instance::verify_witness`].
pub fn parse_witness(text: &str, alphabet: &Alphabet) -> Result<Witness> {
    let mut s = None;
    let mut pi = None;
    let mut rho = None;
    let mut last = 0;
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        last = ln;
        let toks = tokens(line);
        let Some(&(col, key)) = toks.first() else {
            continue;
        };
        if key.starts_with('#') || is_report_line(key) {
            continue;
        }
        let rest = &toks[1..];
        let dup = || Error::from(ParseError::new(ln, col, format!("duplicate `{key}` line")));
        match key {
            "s:" => {
                if s.is_some() {
                    return Err(dup());
                }
                let letters = rest
                    .iter()
                    .map(|&(c, name)| {
                        alphabet.index_of(name).ok_or_else(|| {
                            ParseError::new(ln, c, format!("unknown letter `{name}`"))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                s = Some(letters);
            }
            "pi:" | "rho:" => {
                let slot = if key == "pi:" { &mut pi } else { &mut rho };
                if slot.is_some() {
                    return Err(dup());
                }
                let positions = rest
                    .iter()
                    .map(|&t| integer::<usize>(t, ln))
                    .collect::<Result<Vec<_>, _>>()?;
                *slot = Some(positions);
            }
            _ => {
                return Err(
                    ParseError::new(ln, col, format!("unexpected `{key}` in witness")).into(),
                )
            }
        }
    }
    match (s, pi, rho) {
        (Some(s), Some(pi), Some(rho)) => Ok(Witness { s, pi, rho }),
        (s, pi, _) => {
            let missing = if s.is_none() {
                "s:"
            } else if pi.is_none() {
                "pi:"
            } else {
                "rho:"
            };
            Err(ParseError::new(
                last + 1,
                1,
                format!("witness is missing its `{missing}` line"),
            )
            .into())
        }
    }
}

pub fn serialize_witness(w: &Witness, alphabet: &Alphabet) -> String {
    fn join(xs: &[usize]) -> String {
        xs.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
    let line = |key: &str, body: String| {
        if body.is_empty() {
            format!("{key}\n")
        } else {
            format!("{key} {body}\n")
        }
    };
    let mut out = line("s:", alphabet.render(&w.s));
    out.push_str(&line("pi:", join(&w.pi)));
    out.push_str(&line("rho:", join(&w.rho)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::appendix_counterexample;

    const APPENDIX: &str = "\
WLCS 1
alphabet: a b
a1: 1/8
a2: 1/4
# comment
X 4
1 0
1 0
1 0
1/8 7/8

Y 4
1 0
1/2 1/2
1/2 1/2
1 0
";

    #[test]
    fn parses_appendix_text() {
        let inst = parse_instance(APPENDIX).unwrap();
        assert_eq!(inst, appendix_counterexample(&Rational::one()).unwrap());
        assert_eq!(inst.k, None);
    }

    #[test]
    fn round_trip_appendix() {
        let mut inst = appendix_counterexample(&Rational::ratio(81, 100)).unwrap();
        inst.k = Some(4);
        let back = parse_instance(&serialize_instance(&inst)).unwrap();
        assert_eq!(back, inst);
    }

    fn parse_err(text: &str) -> ParseError {
        match parse_instance(text) {
            Err(Error::Parse(e)) => e,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_err("WLCS 2\n");
        assert_eq!((e.line, e.column), (1, 6));

        let e = parse_err(&APPENDIX.replace("a2: 1/4", "a2: 1/0"));
        assert_eq!((e.line, e.column), (4, 5));

        let e = parse_err(&APPENDIX.replace("1/8 7/8", "1/8 7/8 0"));
        assert_eq!((e.line, e.column), (10, 9));

        let e = parse_err(&APPENDIX.replace("X 4", "X four"));
        assert_eq!((e.line, e.column), (6, 3));

        let e = parse_err(&APPENDIX.replace("1/2 1/2\n1 0", "-1/2 1/2\n1 0"));
        assert_eq!(e.line, 15);

        let e = parse_err("WLCS 1\nalphabet: a\na1: 1\na2: 1\nX 0\n");
        assert!(e.message.contains("end of input"));

        let e = parse_err(&format!("{APPENDIX}extra\n"));
        assert_eq!(e.line, 17);

        let e = parse_err(&APPENDIX.replace("alphabet: a b", "alphabet: a a"));
        assert_eq!((e.line, e.column), (2, 13));
    }

    #[test]
    fn row_sum_is_validation_error() {
        let text = APPENDIX.replace("1/8 7/8", "1/8 31/40");
        match parse_instance(&text) {
            Err(Error::Invalid { seq, violations }) => {
                assert_eq!(seq, "X");
                assert_eq!(violations.len(), 1);
                assert!(violations[0].to_string().starts_with("row 4 sums to 9/10"));
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn zero_threshold_is_domain_error() {
        let text = APPENDIX.replace("a1: 1/8", "a1: 0");
        assert!(matches!(parse_instance(&text), Err(Error::Domain(_))));
    }

    #[test]
    fn optional_k() {
        let text = APPENDIX.replace("a2: 1/4\n", "a2: 1/4\nk: 3\n");
        assert_eq!(parse_instance(&text).unwrap().k, Some(3));
    }

    #[test]
    fn witness_round_trip_and_report_lines() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let w = Witness {
            s: vec![0, 1],
            pi: vec![1, 4],
            rho: vec![2, 3],
        };
        let text = serialize_witness(&w, &ab);
        assert_eq!(text, "s: a b\npi: 1 4\nrho: 2 3\n");
        assert_eq!(parse_witness(&text, &ab).unwrap(), w);

        let report = format!("METHOD pareto\nOPT 2\n{text}");
        assert_eq!(parse_witness(&report, &ab).unwrap(), w);

        let empty = serialize_witness(&Witness::empty(), &ab);
        assert_eq!(parse_witness(&empty, &ab).unwrap(), Witness::empty());
    }

    #[test]
    fn witness_errors() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let e = parse_witness("s: a c\npi: 1 2\nrho: 1 2\n", &ab).unwrap_err();
        assert!(matches!(
            e,
            Error::Parse(ParseError {
                line: 1,
                column: 6,
                ..
            })
        ));
        assert!(parse_witness("s: a\npi: 1\n", &ab).is_err());
        assert!(parse_witness("s: a\ns: a\npi: 1\nrho: 1\n", &ab).is_err());
        assert!(parse_witness("s: a\npi: x\nrho: 1\n", &ab).is_err());
    }
}
