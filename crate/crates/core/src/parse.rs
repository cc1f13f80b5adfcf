//! Line-oriented text formats for the four instance kinds.
//!
//! All formats are UTF-8, one item per line, `#` starting a comment line.
//! Blank lines are skipped, with one exception: inside the monomial section
//! of a formula file a blank line is an empty monomial (a conjunction of
//! nothing, i.e. constant true), since that is a legal monomial and needs a
//! spelling.
//!
//! ```text
//! expression            linear-set containment      1-D set      formula
//! ----------            ----------------------      -------      -------
//! dim 3                 dim 2                       c 4          n 2
//! terms 2               c 1,1                       p 3 5        m 2
//! 1,1,0|0,0,0           p 1,0                                    x1.1 !x2.1
//! 1,0,0|1,0,0           p 0,1                                    x2.2
//!                       ---
//!                       dim 2
//!                       c 0,0
//!                       p 1,0
//!                       p 0,1
//!                       s 1
//! ```
//!
//! Parsing reports 1-based line and column positions; serializing then
//! parsing any valid instance returns it unchanged.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::expr::UnionSumExpr;
use crate::linsets::LinearSetDesc;
use crate::natvec::NatVec;
use crate::onedim::OneDimLinearSet;
use crate::qbf::{Block, DnfFormula, Literal};

/// One input line that survived comment filtering.
#[derive(Clone, Copy)]
struct Line<'a> {
    number: usize,
    text: &'a str,
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    total_lines: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let lines: Vec<Line<'a>> = text
            .lines()
            .enumerate()
            .map(|(i, text)| Line {
                number: i + 1,
                text,
            })
            .filter(|line| !line.text.trim_start().starts_with('#'))
            .collect();
        Cursor {
            lines,
            pos: 0,
            total_lines: text.lines().count(),
        }
    }

    /// Next line with content, skipping blank lines.
    fn next_data(&mut self) -> Option<Line<'a>> {
        while self.pos < self.lines.len() {
            let line = self.lines[self.pos];
            self.pos += 1;
            if !line.text.trim().is_empty() {
                return Some(line);
            }
        }
        None
    }

    /// Next line even if blank (the formula monomial section).
    fn next_any(&mut self) -> Option<Line<'a>> {
        if self.pos < self.lines.len() {
            let line = self.lines[self.pos];
            self.pos += 1;
            Some(line)
        } else {
            None
        }
    }

    fn peek_data(&mut self) -> Option<Line<'a>> {
        let saved = self.pos;
        let line = self.next_data();
        self.pos = saved;
        line
    }

    fn eof_line(&self) -> usize {
        self.total_lines + 1
    }

    /// The whole remaining input must be blank.
    fn expect_end(&mut self) -> Result<()> {
        match self.next_data() {
            None => Ok(()),
            Some(line) => Err(Error::syntax(
                line.number,
                first_token_col(line.text),
                "unexpected content after instance",
            )),
        }
    }
}

/// 1-based character column of the first non-whitespace character.
fn first_token_col(text: &str) -> usize {
    for (i, ch) in text.chars().enumerate() {
        if !ch.is_whitespace() {
            return i + 1;
        }
    }
    1
}

/// Split into whitespace-separated tokens with 1-based character columns.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None; // (char col, byte index)
    for (char_idx, (byte_idx, ch)) in text.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((col, begin)) = start.take() {
                out.push((col, &text[begin..byte_idx]));
            }
        } else if start.is_none() {
            start = Some((char_idx + 1, byte_idx));
        }
    }
    if let Some((col, begin)) = start {
        out.push((col, &text[begin..]));
    }
    out
}

fn parse_biguint(line: usize, col: usize, token: &str) -> Result<BigUint> {
    token
        .parse::<BigUint>()
        .map_err(|_| Error::syntax(line, col, format!("expected a natural number, found '{token}'")))
}

fn parse_usize(line: usize, col: usize, token: &str) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| Error::syntax(line, col, format!("expected a nonnegative integer, found '{token}'")))
}

/// A `<key> <values...>` line; returns the value tokens.
fn keyed_line<'a>(line: Line<'a>, key: &str) -> Result<Vec<(usize, &'a str)>> {
    let mut toks = tokens(line.text);
    if toks.is_empty() || toks[0].1 != key {
        let (col, found) = toks
            .first()
            .map(|&(c, t)| (c, t))
            .unwrap_or((1, ""));
        return Err(Error::syntax(
            line.number,
            col,
            format!("expected '{key} ...', found '{found}'"),
        ));
    }
    Ok(toks.split_off(1))
}

fn require_line<'a>(cursor: &mut Cursor<'a>, what: &str) -> Result<Line<'a>> {
    cursor
        .next_data()
        .ok_or_else(|| Error::syntax(cursor.eof_line(), 1, format!("missing {what}")))
}

/// `key <single nonnegative integer>` line; returns the integer.
fn single_value_line(cursor: &mut Cursor<'_>, key: &str, what: &str) -> Result<usize> {
    let line = require_line(cursor, what)?;
    let values = keyed_line(line, key)?;
    match values.as_slice() {
        [(col, token)] => parse_usize(line.number, *col, token),
        [] => Err(Error::syntax(
            line.number,
            line.text.chars().count() + 1,
            format!("'{key}' needs a value"),
        )),
        rest => {
            let (col, token) = rest[1];
            Err(Error::syntax(
                line.number,
                col,
                format!("unexpected extra token '{token}'"),
            ))
        }
    }
}

/// Comma-separated naturals inside one token, e.g. `0,2,1,1`.
fn parse_vector(line: usize, col: usize, token: &str, expect_dim: usize) -> Result<NatVec> {
    let mut entries = Vec::new();
    let mut piece_col = col;
    for piece in token.split(',') {
        if piece.is_empty() {
            return Err(Error::syntax(line, piece_col, "empty vector entry"));
        }
        entries.push(parse_biguint(line, piece_col, piece)?);
        piece_col += piece.chars().count() + 1;
    }
    if entries.len() != expect_dim {
        return Err(Error::syntax(
            line,
            col,
            format!("expected {} entries, found {}", expect_dim, entries.len()),
        ));
    }
    NatVec::new(entries)
}

// ---------------------------------------------------------------- expression

pub fn parse_expr(text: &str) -> Result<UnionSumExpr> {
    let mut cursor = Cursor::new(text);
    let dim = single_value_line(&mut cursor, "dim", "'dim <m>' header")?;
    if dim == 0 {
        return Err(Error::invalid("expression dimension must be at least 1"));
    }
    let terms = single_value_line(&mut cursor, "terms", "'terms <s>' header")?;

    let mut parsed = Vec::with_capacity(terms);
    for _ in 0..terms {
        let line = require_line(&mut cursor, "expression term line 'atom|atom'")?;
        let toks = tokens(line.text);
        let (col, token) = toks[0];
        if toks.len() > 1 {
            let (extra_col, extra) = toks[1];
            return Err(Error::syntax(
                line.number,
                extra_col,
                format!("unexpected extra token '{extra}'"),
            ));
        }
        let Some(bar) = token.find('|') else {
            return Err(Error::syntax(
                line.number,
                col,
                "term must be two atoms separated by '|'",
            ));
        };
        let (left, right_with_bar) = token.split_at(bar);
        let right = &right_with_bar[1..];
        if right.contains('|') {
            let second_bar = col + left.chars().count() + 1 + right.find('|').unwrap();
            return Err(Error::syntax(line.number, second_bar + 1, "term has more than one '|'"));
        }
        let a = parse_atom(line.number, col, left, dim)?;
        let b = parse_atom(line.number, col + left.chars().count() + 1, right, dim)?;
        parsed.push((a, b));
    }
    cursor.expect_end()?;
    UnionSumExpr::new(dim, parsed)
}

fn parse_atom(line: usize, col: usize, token: &str, dim: usize) -> Result<NatVec> {
    let v = parse_vector(line, col, token, dim)?;
    if !v.is_binary() {
        return Err(Error::syntax(line, col, "atom entries must be 0 or 1"));
    }
    Ok(v)
}

pub fn serialize_expr(expr: &UnionSumExpr) -> String {
    let mut out = String::new();
    out.push_str(&format!("dim {}\n", expr.dim()));
    out.push_str(&format!("terms {}\n", expr.term_count()));
    for (a, b) in expr.terms() {
        out.push_str(&format!("{a}|{b}\n"));
    }
    out
}

// ------------------------------------------------------- linear-set instance

fn parse_linset_block(cursor: &mut Cursor<'_>) -> Result<LinearSetDesc> {
    let dim = single_value_line(cursor, "dim", "'dim <m>' header")?;
    if dim == 0 {
        return Err(Error::invalid("linear set dimension must be at least 1"));
    }
    let line = require_line(cursor, "'c <entries>' line")?;
    let values = keyed_line(line, "c")?;
    let constant = match values.as_slice() {
        [(col, token)] => parse_vector(line.number, *col, token, dim)?,
        _ => {
            return Err(Error::syntax(
                line.number,
                first_token_col(line.text),
                "'c' needs exactly one comma-separated vector",
            ))
        }
    };
    let mut periods = Vec::new();
    while let Some(line) = cursor.peek_data() {
        let toks = tokens(line.text);
        if toks.first().map(|&(_, t)| t) != Some("p") {
            break;
        }
        cursor.next_data();
        match toks.as_slice() {
            [_, (col, token)] => periods.push(parse_vector(line.number, *col, token, dim)?),
            [_] => {
                return Err(Error::syntax(
                    line.number,
                    line.text.chars().count() + 1,
                    "'p' needs a vector",
                ))
            }
            [_, _, (col, token), ..] => {
                return Err(Error::syntax(
                    line.number,
                    *col,
                    format!("unexpected extra token '{token}'"),
                ))
            }
            [] => unreachable!("peeked line has a 'p' token"),
        }
    }
    LinearSetDesc::new(constant, periods)
}

/// Two linear-set blocks separated by `---`, then an optional `s <k>` line.
pub fn parse_linset_instance(
    text: &str,
) -> Result<(LinearSetDesc, LinearSetDesc, Option<usize>)> {
    let mut cursor = Cursor::new(text);
    let lhs = parse_linset_block(&mut cursor)?;
    let sep = require_line(&mut cursor, "'---' separator between the two sets")?;
    if sep.text.trim() != "---" {
        return Err(Error::syntax(
            sep.number,
            first_token_col(sep.text),
            "expected '---' separator between the two sets",
        ));
    }
    let rhs = parse_linset_block(&mut cursor)?;
    let mut s = None;
    if let Some(line) = cursor.peek_data() {
        if tokens(line.text).first().map(|&(_, t)| t) == Some("s") {
            let value = single_value_line(&mut cursor, "s", "'s <k>' line")?;
            s = Some(value);
        }
    }
    cursor.expect_end()?;
    Ok((lhs, rhs, s))
}

pub fn serialize_linset_block(set: &LinearSetDesc) -> String {
    let mut out = String::new();
    out.push_str(&format!("dim {}\n", set.dim()));
    out.push_str(&format!("c {}\n", set.constant()));
    for p in set.periods() {
        out.push_str(&format!("p {p}\n"));
    }
    out
}

pub fn serialize_linset_instance(
    lhs: &LinearSetDesc,
    rhs: &LinearSetDesc,
    s: Option<usize>,
) -> String {
    let mut out = serialize_linset_block(lhs);
    out.push_str("---\n");
    out.push_str(&serialize_linset_block(rhs));
    if let Some(s) = s {
        out.push_str(&format!("s {s}\n"));
    }
    out
}

// ------------------------------------------------------------------ 1-D set

pub fn parse_onedim(text: &str) -> Result<OneDimLinearSet> {
    let mut cursor = Cursor::new(text);
    let line = require_line(&mut cursor, "'c <constant>' line")?;
    let values = keyed_line(line, "c")?;
    let constant = match values.as_slice() {
        [(col, token)] => parse_biguint(line.number, *col, token)?,
        [] => {
            return Err(Error::syntax(
                line.number,
                line.text.chars().count() + 1,
                "'c' needs a value",
            ))
        }
        rest => {
            let (col, token) = rest[1];
            return Err(Error::syntax(
                line.number,
                col,
                format!("unexpected extra token '{token}'"),
            ));
        }
    };
    let line = require_line(&mut cursor, "'p <period> <period> ...' line")?;
    let values = keyed_line(line, "p")?;
    if values.is_empty() {
        return Err(Error::syntax(
            line.number,
            line.text.chars().count() + 1,
            "'p' needs at least one period",
        ));
    }
    let mut periods = Vec::with_capacity(values.len());
    for (col, token) in values {
        let p = parse_biguint(line.number, col, token)?;
        if p == BigUint::ZERO {
            return Err(Error::syntax(line.number, col, "periods must be strictly positive"));
        }
        periods.push(p);
    }
    cursor.expect_end()?;
    OneDimLinearSet::new(constant, periods)
}

pub fn serialize_onedim(set: &OneDimLinearSet) -> String {
    let mut out = format!("c {}\n", set.constant());
    if !set.periods().is_empty() {
        out.push('p');
        for p in set.periods() {
            out.push_str(&format!(" {p}"));
        }
        out.push('\n');
    }
    out
}

// ------------------------------------------------------------------ formula

pub fn parse_dnf(text: &str) -> Result<DnfFormula> {
    let mut cursor = Cursor::new(text);
    let n = single_value_line(&mut cursor, "n", "'n <variables per block>' header")?;
    if n == 0 {
        return Err(Error::invalid("formula needs at least one variable per block"));
    }
    let m = single_value_line(&mut cursor, "m", "'m <monomials>' header")?;
    if m == 0 {
        return Err(Error::invalid("formula needs at least one monomial"));
    }

    let mut monomials = Vec::with_capacity(m);
    for _ in 0..m {
        let line = cursor
            .next_any()
            .ok_or_else(|| Error::syntax(cursor.eof_line(), 1, "missing monomial line"))?;
        let mut monomial = Vec::new();
        let mut seen: Vec<(Block, usize)> = Vec::new();
        for (col, token) in tokens(line.text) {
            let lit = parse_literal(line.number, col, token, n)?;
            if seen.contains(&(lit.block, lit.index)) {
                return Err(Error::syntax(
                    line.number,
                    col,
                    format!("repeated variable '{}'", token.trim_start_matches('!')),
                ));
            }
            seen.push((lit.block, lit.index));
            monomial.push(lit);
        }
        monomials.push(monomial);
    }
    cursor.expect_end()?;
    DnfFormula::new(n, monomials)
}

fn parse_literal(line: usize, col: usize, token: &str, n: usize) -> Result<Literal> {
    let (negated, body) = match token.strip_prefix('!') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    let bad = || {
        Error::syntax(
            line,
            col,
            format!("expected a literal like 'x1.2' or '!x2.1', found '{token}'"),
        )
    };
    let rest = body.strip_prefix('x').ok_or_else(bad)?;
    let (block_digit, index_part) = rest.split_once('.').ok_or_else(bad)?;
    let block = match block_digit {
        "1" => Block::First,
        "2" => Block::Second,
        _ => return Err(bad()),
    };
    if index_part.is_empty() || !index_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let index = parse_usize(line, col, index_part)?;
    if index == 0 || index > n {
        return Err(Error::syntax(
            line,
            col,
            format!("variable index {index} out of range 1..={n}"),
        ));
    }
    Ok(Literal {
        block,
        index,
        negated,
    })
}

pub fn serialize_dnf(f: &DnfFormula) -> String {
    let mut out = String::new();
    out.push_str(&format!("n {}\n", f.vars_per_block()));
    out.push_str(&format!("m {}\n", f.monomials().len()));
    for monomial in f.monomials() {
        let rendered: Vec<String> = monomial
            .iter()
            .map(|lit| {
                format!(
                    "{}x{}.{}",
                    if lit.negated { "!" } else { "" },
                    match lit.block {
                        Block::First => 1,
                        Block::Second => 2,
                    },
                    lit.index
                )
            })
            .collect();
        out.push_str(&rendered.join(" "));
        out.push('\n');
    }
    out
}

// ----------------------------------------------------------------- size line

/// Total instance size under a declared number encoding: unary counts each
/// number's value, binary counts its bit length (zero costs one digit
/// either way). Reporting only; no procedure behaves differently.
pub fn encoded_size<'a>(numbers: impl IntoIterator<Item = &'a BigUint>, unary: bool) -> BigUint {
    let mut total = BigUint::ZERO;
    for v in numbers {
        if unary {
            total += v;
            if v == &BigUint::ZERO {
                total += BigUint::one();
            }
        } else {
            total += BigUint::from(v.bits().max(1));
        }
    }
    total
}
