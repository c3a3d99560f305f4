//! Text formats for the source problems of the reductions.
//!
//! ```text
//! SUBSETPROD 1        GRAPH 1        p cnf 2 1
//! k: 2                n: 3           1 2 -2 0
//! numbers: 2 3 5      1 2
//! target: 6           2 3
//! ```
//!
//! The CNF reader follows DIMACS (`c` comments, a `p cnf VARS CLAUSES`
//! header, clauses terminated by `0`) but requires exactly three literals
//! per clause. The other two formats skip blank lines and `#` comments.

use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::error::{ParseError, Result};
use crate::model::format::{tokens, Token};
use crate::reductions::perfect_code::Graph;
use crate::reductions::sat13::{Literal, Sat13Formula};
use crate::reductions::subset_product::SubsetProductInstance;

fn significant<'a>(text: &'a str, comment: &str) -> Vec<(usize, Vec<Token<'a>>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let t = l.trim_start();
            (!t.is_empty() && !t.starts_with(comment)).then(|| (i + 1, tokens(l)))
        })
        .collect()
}

fn number<T: std::str::FromStr>((col, tok): Token<'_>, line: usize) -> Result<T, ParseError> {
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

fn end_line(lines: &[(usize, Vec<Token<'_>>)]) -> usize {
    lines.last().map_or(1, |l| l.0 + 1)
}

pub fn parse_subset_product(text: &str) -> Result<SubsetProductInstance> {
    let lines = significant(text, "#");
    let mut it = lines.iter().peekable();
    let eof = |what: &str| ParseError::new(end_line(&lines), 1, format!("expected {what}"));

    let (ln, toks) = it.next().ok_or_else(|| eof("header `SUBSETPROD 1`"))?;
    if !matches!(toks.as_slice(), [(_, "SUBSETPROD"), (_, "1")]) {
        return Err(ParseError::new(*ln, 1, "expected header `SUBSETPROD 1`").into());
    }
    let mut k = None;
    if let Some((ln, toks)) = it.peek() {
        if toks.first().map(|t| t.1) == Some("k:") {
            let [_, v] = toks.as_slice() else {
                return Err(ParseError::new(*ln, 1, "expected `k: INT`").into());
            };
            k = Some(number::<usize>(*v, *ln)?);
            it.next();
        }
    }
    let (ln, toks) = it.next().ok_or_else(|| eof("`numbers:`"))?;
    if toks.first().map(|t| t.1) != Some("numbers:") {
        return Err(ParseError::new(*ln, 1, "expected `numbers:`").into());
    }
    let numbers = toks[1..]
        .iter()
        .map(|&t| number::<BigUint>(t, *ln))
        .collect::<Result<Vec<_>, _>>()?;
    let (ln, toks) = it.next().ok_or_else(|| eof("`target:`"))?;
    let [(_, "target:"), v] = toks.as_slice() else {
        return Err(ParseError::new(*ln, 1, "expected `target: INT`").into());
    };
    let target = number::<BigUint>(*v, *ln)?;
    if let Some((ln, toks)) = it.next() {
        return Err(ParseError::new(*ln, toks[0].0, "trailing content").into());
    }
    SubsetProductInstance::new(numbers, target, k)
}

pub fn serialize_subset_product(sp: &SubsetProductInstance) -> String {
    let mut out = String::from("SUBSETPROD 1\n");
    if let Some(k) = sp.k {
        let _ = writeln!(out, "k: {k}");
    }
    let nums: Vec<String> = sp.numbers.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "numbers: {}", nums.join(" "));
    let _ = writeln!(out, "target: {}", sp.target);
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let lines = significant(text, "#");
    let mut it = lines.iter();
    let eof = |what: &str| ParseError::new(end_line(&lines), 1, format!("expected {what}"));
    let (ln, toks) = it.next().ok_or_else(|| eof("header `GRAPH 1`"))?;
    if !matches!(toks.as_slice(), [(_, "GRAPH"), (_, "1")]) {
        return Err(ParseError::new(*ln, 1, "expected header `GRAPH 1`").into());
    }
    let (ln, toks) = it.next().ok_or_else(|| eof("`n:`"))?;
    let [(_, "n:"), v] = toks.as_slice() else {
        return Err(ParseError::new(*ln, 1, "expected `n: INT`").into());
    };
    let n = number::<usize>(*v, *ln)?;
    let mut edges = Vec::new();
    for (ln, toks) in it {
        let [u, v] = toks.as_slice() else {
            let col = toks.get(2).map_or(1, |t| t.0);
            return Err(ParseError::new(*ln, col, "expected an edge `u v`").into());
        };
        edges.push((number::<usize>(*u, *ln)?, number::<usize>(*v, *ln)?));
    }
    Graph::new(n, edges)
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("GRAPH 1\nn: {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_cnf(text: &str) -> Result<Sat13Formula> {
    let lines = significant(text, "c");
    let mut it = lines.iter();
    let (ln, toks) = it
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "expected header `p cnf VARS CLAUSES`"))?;
    let [(_, "p"), (_, "cnf"), vars, count] = toks.as_slice() else {
        return Err(ParseError::new(*ln, 1, "expected header `p cnf VARS CLAUSES`").into());
    };
    let num_vars = number::<usize>(*vars, *ln)?;
    let expected = number::<usize>(*count, *ln)?;
    let mut clauses = Vec::with_capacity(expected);
    for (ln, toks) in it {
        if toks.len() != 4 || toks[3].1 != "0" {
            let col = toks.get(3).map_or(1, |t| t.0);
            return Err(ParseError::new(
                *ln,
                col,
                "expected exactly three literals followed by `0`",
            )
            .into());
        }
        let mut clause = [0 as Literal; 3];
        for (slot, &(col, tok)) in clause.iter_mut().zip(&toks[..3]) {
            *slot = tok
                .parse::<Literal>()
                .ok()
                .filter(|&l| l != 0)
                .ok_or_else(|| ParseError::new(*ln, col, format!("bad literal `{tok}`")))?;
        }
        clauses.push(clause);
    }
    if clauses.len() != expected {
        return Err(ParseError::new(
            end_line(&lines),
            1,
            format!(
                "header announces {expected} clauses, found {}",
                clauses.len()
            ),
        )
        .into());
    }
    Sat13Formula::new(num_vars, clauses)
}

pub fn serialize_cnf(f: &Sat13Formula) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars(), f.clauses().len());
    for [a, b, c] in f.clauses() {
        let _ = writeln!(out, "{a} {b} {c} 0");
    }
    out
}
