//! The line-oriented function spec format.
//!
//! ```text
//! # Heaviside step, H(0) = 1
//! domain -1 1
//! breakpoints -1 0 1
//! piece 0 coeffs 0
//! piece 1 coeffs 1
//! values 0 1 1
//! ```
//!
//! A spec may end with one of `modify finite (x,v) ...`,
//! `modify dense rationals v` or `modify dense dyadics v`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{CountableModification, DenseSet, FunctionModel, PiecewiseFunction, DEFAULT_MAX_DEGREE};
use crate::numeric::{parse_rational, Polynomial, Rational};

/// A parse or validation failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

type Parsed<T> = std::result::Result<T, SpecError>;

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn err(self, message: impl Into<String>) -> SpecError {
        SpecError { line: self.line, column: self.column, message: message.into() }
    }
}

#[derive(Debug, Clone)]
struct Token<'a> {
    text: &'a str,
    pos: Pos,
}

fn tokenize(line: &str, number: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                out.push(Token { text: &line[b..byte], pos: Pos { line: number, column: c + 1 } });
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        out.push(Token { text: &line[b..], pos: Pos { line: number, column: c + 1 } });
    }
    out
}

fn number(tok: &Token<'_>) -> Parsed<Rational> {
    parse_rational(tok.text).map_err(|_| tok.pos.err(format!("invalid number `{}`", tok.text)))
}

struct Numbers {
    values: Vec<Rational>,
    positions: Vec<Pos>,
    directive: Pos,
}

fn numbers(directive: &Token<'_>, rest: &[Token<'_>]) -> Parsed<Numbers> {
    let values = rest.iter().map(number).collect::<Parsed<Vec<_>>>()?;
    Ok(Numbers { values, positions: rest.iter().map(|t| t.pos).collect(), directive: directive.pos })
}

struct PieceLine {
    index: usize,
    coeffs: Vec<Rational>,
    pos: Pos,
    index_pos: Pos,
}

enum Modification {
    Finite(Vec<(Rational, Rational, Pos)>),
    Dense(DenseSet, Rational),
}

#[derive(Default)]
struct Draft {
    domain: Option<Numbers>,
    breakpoints: Option<Numbers>,
    pieces: Vec<PieceLine>,
    values: Option<Numbers>,
    modify: Option<(Modification, Pos)>,
}

/// Parses a spec into a validated model.
pub fn parse_spec(text: &str) -> Parsed<FunctionModel> {
    let mut draft = Draft::default();
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        last_line = number;
        let line = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(line, number);
        let Some((head, rest)) = tokens.split_first() else {
            continue;
        };
        match head.text {
            "domain" => {
                let n = numbers(head, rest)?;
                if n.values.len() != 2 {
                    return Err(extra_or_missing(head, rest, 2, "domain"));
                }
                set_once(&mut draft.domain, n, head)?;
            }
            "breakpoints" => {
                let n = numbers(head, rest)?;
                if n.values.len() < 2 {
                    return Err(head.pos.err("`breakpoints` needs at least two points"));
                }
                set_once(&mut draft.breakpoints, n, head)?;
            }
            "values" => {
                let n = numbers(head, rest)?;
                if n.values.is_empty() {
                    return Err(head.pos.err("`values` needs at least one value"));
                }
                set_once(&mut draft.values, n, head)?;
            }
            "piece" => draft.pieces.push(piece_line(head, rest)?),
            "modify" => {
                if let Some((_, _)) = draft.modify {
                    return Err(head.pos.err("duplicate `modify` directive"));
                }
                draft.modify = Some((modify_line(head, rest, line)?, head.pos));
            }
            other => return Err(head.pos.err(format!("unknown directive `{other}`"))),
        }
    }
    let eof = Pos { line: last_line + usize::from(!text.is_empty() && text.ends_with('\n')), column: 1 };
    validate(draft, eof)
}

fn extra_or_missing(head: &Token<'_>, rest: &[Token<'_>], want: usize, name: &str) -> SpecError {
    let pos = rest.get(want).map_or(head.pos, |t| t.pos);
    pos.err(format!("`{name}` takes exactly {want} numbers, found {}", rest.len()))
}

fn set_once(slot: &mut Option<Numbers>, value: Numbers, head: &Token<'_>) -> Parsed<()> {
    if slot.is_some() {
        return Err(head.pos.err(format!("duplicate `{}` directive", head.text)));
    }
    *slot = Some(value);
    Ok(())
}

fn piece_line(head: &Token<'_>, rest: &[Token<'_>]) -> Parsed<PieceLine> {
    let Some(index_tok) = rest.first() else {
        return Err(head.pos.err("expected a piece index after `piece`"));
    };
    let index = index_tok
        .text
        .parse::<usize>()
        .ok()
        .filter(|_| index_tok.text.bytes().all(|b| b.is_ascii_digit()))
        .ok_or_else(|| index_tok.pos.err(format!("invalid piece index `{}`", index_tok.text)))?;
    match rest.get(1) {
        Some(t) if t.text == "coeffs" => {}
        Some(t) => return Err(t.pos.err(format!("expected `coeffs`, found `{}`", t.text))),
        None => return Err(index_tok.pos.err("expected `coeffs` after the piece index")),
    }
    if rest.len() < 3 {
        return Err(rest[1].pos.err("`coeffs` needs at least one coefficient"));
    }
    let coeffs = rest[2..].iter().map(number).collect::<Parsed<Vec<_>>>()?;
    Ok(PieceLine { index, coeffs, pos: head.pos, index_pos: index_tok.pos })
}

fn modify_line(head: &Token<'_>, rest: &[Token<'_>], line: &str) -> Parsed<Modification> {
    let Some(kind) = rest.first() else {
        return Err(head.pos.err("expected `finite` or `dense` after `modify`"));
    };
    match kind.text {
        "dense" => {
            let set = match rest.get(1).map(|t| t.text) {
                Some("rationals") => DenseSet::Rationals,
                Some("dyadics") => DenseSet::Dyadics,
                Some(other) => {
                    return Err(rest[1].pos.err(format!("unknown dense set `{other}`, expected `rationals` or `dyadics`")))
                }
                None => return Err(kind.pos.err("expected `rationals` or `dyadics` after `dense`")),
            };
            match rest.len() {
                3 => Ok(Modification::Dense(set, number(&rest[2])?)),
                2 => Err(rest[1].pos.err("expected the dense modification value")),
                _ => Err(rest[3].pos.err("unexpected token after the dense modification value")),
            }
        }
        "finite" => {
            let start = kind.pos.column - 1 + kind.text.chars().count();
            finite_pairs(line, start, kind.pos.line).map(Modification::Finite)
        }
        other => Err(kind.pos.err(format!("unknown modification `{other}`, expected `finite` or `dense`"))),
    }
}

// Parses `(x,v) (x,v) ...` from character column `start` (0-based) on.
fn finite_pairs(line: &str, start: usize, number: usize) -> Parsed<Vec<(Rational, Rational, Pos)>> {
    let chars: Vec<char> = line.chars().collect();
    let at = |i: usize| Pos { line: number, column: i + 1 };
    let mut i = start;
    let mut pairs = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let field = |i: &mut usize, end: char| -> Parsed<Rational> {
        skip_ws(i);
        let begin = *i;
        while *i < chars.len() && !chars[*i].is_whitespace() && chars[*i] != ',' && chars[*i] != ')' {
            *i += 1;
        }
        let text: String = chars[begin..*i].iter().collect();
        let value = parse_rational(&text).map_err(|_| {
            if text.is_empty() {
                at(begin).err("expected a number")
            } else {
                at(begin).err(format!("invalid number `{text}`"))
            }
        })?;
        skip_ws(i);
        if *i >= chars.len() || chars[*i] != end {
            return Err(at(*i).err(format!("expected `{end}`")));
        }
        *i += 1;
        Ok(value)
    };
    loop {
        skip_ws(&mut i);
        if i >= chars.len() {
            break;
        }
        if chars[i] != '(' {
            return Err(at(i).err("expected `(x,v)`"));
        }
        let open = at(i);
        i += 1;
        let x = field(&mut i, ',')?;
        let v = field(&mut i, ')')?;
        pairs.push((x, v, open));
    }
    if pairs.is_empty() {
        return Err(at(i).err("`modify finite` needs at least one `(x,v)` pair"));
    }
    Ok(pairs)
}

fn validate(draft: Draft, eof: Pos) -> Parsed<FunctionModel> {
    let domain = draft.domain.ok_or_else(|| eof.err("missing `domain` directive"))?;
    let (lo, hi) = (&domain.values[0], &domain.values[1]);
    if lo >= hi {
        return Err(domain.positions[1].err("domain upper bound must exceed the lower bound"));
    }
    let bps = draft.breakpoints.ok_or_else(|| eof.err("missing `breakpoints` directive"))?;
    if let Some(i) = bps.values.windows(2).position(|w| w[0] >= w[1]) {
        return Err(bps.positions[i + 1].err("breakpoints must be strictly increasing"));
    }
    if &bps.values[0] != lo {
        return Err(bps.positions[0].err("first breakpoint must equal the domain lower bound"));
    }
    if bps.values.last() != Some(hi) {
        return Err(bps.positions[bps.values.len() - 1].err("last breakpoint must equal the domain upper bound"));
    }
    let values = draft.values.ok_or_else(|| eof.err("missing `values` directive"))?;
    let intervals = bps.values.len() - 1;
    if draft.pieces.len() != intervals {
        let pos = draft.pieces.get(intervals).map_or(bps.directive, |p| p.pos);
        return Err(pos.err(format!(
            "piece count mismatch: {} breakpoints need {intervals} piece(s), found {}",
            bps.values.len(),
            draft.pieces.len()
        )));
    }
    let mut slots: Vec<Option<Polynomial>> = vec![None; intervals];
    for p in draft.pieces {
        if p.index >= intervals {
            return Err(p.index_pos.err(format!("piece index {} out of range 0..{}", p.index, intervals - 1)));
        }
        if slots[p.index].is_some() {
            return Err(p.index_pos.err(format!("duplicate piece {}", p.index)));
        }
        let poly = Polynomial::new(p.coeffs);
        if poly.degree() > DEFAULT_MAX_DEGREE {
            return Err(p.pos.err(format!("piece degree {} exceeds the maximum {DEFAULT_MAX_DEGREE}", poly.degree())));
        }
        slots[p.index] = Some(poly);
    }
    if values.values.len() != bps.values.len() {
        return Err(values.directive.err(format!(
            "value count mismatch: {} breakpoints need {} values, found {}",
            bps.values.len(),
            bps.values.len(),
            values.values.len()
        )));
    }
    let bp_line = bps.directive;
    let pieces = slots.into_iter().map(|p| p.expect("every index filled")).collect();
    let base = PiecewiseFunction::new(bps.values, pieces, values.values).map_err(|e| bp_line.err(e.to_string()))?;
    let modification = match draft.modify {
        None => None,
        Some((Modification::Dense(set, value), _)) => Some(CountableModification::Dense { set, value }),
        Some((Modification::Finite(pairs), _)) => {
            for (k, (x, _, pos)) in pairs.iter().enumerate() {
                if x < lo || x > hi {
                    return Err(pos.err(format!("modification point {x} outside the domain [{lo}, {hi}]")));
                }
                if k > 0 && &pairs[k - 1].0 >= x {
                    return Err(pos.err("modification points must be strictly increasing"));
                }
            }
            Some(CountableModification::Finite(pairs.into_iter().map(|(x, v, _)| (x, v)).collect()))
        }
    };
    let modify_pos = eof;
    FunctionModel::new(base, modification).map_err(|e| modify_pos.err(e.to_string()))
}

/// Prints a model in the spec format; `parse_spec` reads it back.
pub fn print_spec(f: &FunctionModel) -> String {
    let base = f.base();
    let mut out = String::new();
    let join = |xs: &[Rational]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "domain {} {}", base.domain_lo(), base.domain_hi());
    let _ = writeln!(out, "breakpoints {}", join(base.breakpoints()));
    for (i, p) in base.pieces().iter().enumerate() {
        let coeffs = if p.is_zero() { "0".to_string() } else { join(p.coeffs()) };
        let _ = writeln!(out, "piece {i} coeffs {coeffs}");
    }
    let _ = writeln!(out, "values {}", join(base.point_values()));
    match f.modification() {
        None => {}
        Some(CountableModification::Finite(points)) => {
            let pairs: Vec<String> = points.iter().map(|(x, v)| format!("({x},{v})")).collect();
            let _ = writeln!(out, "modify finite {}", pairs.join(" "));
        }
        Some(CountableModification::Dense { set, value }) => {
            let _ = writeln!(out, "modify dense {} {value}", set.keyword());
        }
    }
    out
}
