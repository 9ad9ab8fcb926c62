//! Text forms: elements as integers or digit tuples, matrices as `[[a,b],[c,d]]`, quaternions
//! as `r1+r2*i+r3*j+r4*k`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::chain_ring::{Elem, Ring};
use crate::error::ParseError;
use crate::gf::FieldElem;
use crate::mat2::Mat2;
use crate::quaternion::Quaternion;

/// Splits on `sep` outside parentheses and brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn strip_ws(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Parses an integer (mapped through `Z -> R`) or a digit tuple `(d0,d1,...)`, either with an
/// optional leading `-`.
pub fn parse_elem(ring: &Ring, s: &str) -> Result<Elem, ParseError> {
    let t = strip_ws(s);
    let bad = || ParseError::Element(s.to_string());
    let (negate, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.as_str()),
    };
    let value = if let Some(inner) = body.strip_prefix('(') {
        let inner = inner.strip_suffix(')').ok_or_else(bad)?;
        let digits = inner
            .split(',')
            .map(|d| d.parse::<u32>().map(FieldElem).map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        ring.from_digits(&digits)?
    } else {
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let k: i64 = body.parse().map_err(|_| bad())?;
        ring.from_int(k)
    };
    Ok(if negate { ring.neg(value) } else { value })
}

pub fn render_elem(ring: &Ring, a: Elem) -> String {
    ring.render(a)
}

pub fn parse_matrix(ring: &Ring, s: &str) -> Result<Mat2, ParseError> {
    let t = strip_ws(s);
    let bad = || ParseError::Matrix(s.to_string());
    let inner = t
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(bad)?;
    let rows = split_top(inner, ',');
    if rows.len() != 2 {
        return Err(bad());
    }
    let mut entries = Vec::with_capacity(4);
    for row in rows {
        let row = row
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(bad)?;
        let cells = split_top(row, ',');
        if cells.len() != 2 {
            return Err(bad());
        }
        for c in cells {
            entries.push(parse_elem(ring, c)?);
        }
    }
    Ok(Mat2::new(entries[0], entries[1], entries[2], entries[3]))
}

pub fn render_matrix(ring: &Ring, m: &Mat2) -> String {
    let r = |e| ring.render(e);
    format!(
        "[[{},{}],[{},{}]]",
        r(m.a11),
        r(m.a12),
        r(m.a21),
        r(m.a22)
    )
}

/// Accepts terms in any order, each `c`, `c*i`, `c*j`, `c*k`, or a bare unit `i`/`j`/`k`;
/// repeated components add up.
pub fn parse_quaternion(ring: &Ring, s: &str) -> Result<Quaternion, ParseError> {
    let t = strip_ws(s);
    let bad = || ParseError::Quaternion(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    let mut coeffs = [Elem::ZERO; 4];
    for term in split_top(&t, '+') {
        let (coef, slot) = match term.rsplit_once('*') {
            Some((c, "i")) => (c, 1),
            Some((c, "j")) => (c, 2),
            Some((c, "k")) => (c, 3),
            Some(_) => return Err(bad()),
            None => match term {
                "i" => ("1", 1),
                "j" => ("1", 2),
                "k" => ("1", 3),
                c => (c, 0),
            },
        };
        let value = parse_elem(ring, coef).map_err(|_| bad())?;
        coeffs[slot] = ring.add(coeffs[slot], value);
    }
    Ok(Quaternion::new(coeffs[0], coeffs[1], coeffs[2], coeffs[3]))
}

pub fn render_quaternion(ring: &Ring, x: &Quaternion) -> String {
    let c = x.coefficients();
    format!(
        "{}+{}*i+{}*j+{}*k",
        ring.render(c[0]),
        ring.render(c[1]),
        ring.render(c[2]),
        ring.render(c[3])
    )
}
