//! Canonical text form: terms joined by `" + "`, each `c*x1^a*x2^b*y1^c*y2^d`
//! with unit coefficients and zero exponents elided. Field coefficients that
//! contain `+` are parenthesized, e.g. `(1+T)*x1*y2`.

use std::fmt;

use super::{Monomial, Poly, PolyError, Var};
use crate::gf::{Fe, FieldSpec};

pub(super) fn format(p: &Poly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (i, (m, c)) in p.terms().iter().enumerate() {
        if i > 0 {
            f.write_str(" + ")?;
        }
        let cs = p.field().format_elem(*c);
        let cs = if cs.contains('+') { format!("({cs})") } else { cs };
        if *m == Monomial::ONE {
            f.write_str(&cs)?;
        } else if *c == Fe::ONE {
            write!(f, "{m}")?;
        } else {
            write!(f, "{cs}*{m}")?;
        }
    }
    Ok(())
}

/// Splits at top-level `+`/`-`, keeping the sign with each piece.
fn split_terms(s: &str) -> Result<Vec<(bool, &str)>, PolyError> {
    let mut out = Vec::new();
    let (mut depth, mut start, mut neg) = (0i32, 0usize, false);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(PolyError::Parse(format!("unbalanced ')' in {s:?}")));
                }
            }
            '+' | '-' if depth == 0 => {
                let piece = s[start..i].trim();
                if !piece.is_empty() {
                    out.push((neg, piece));
                } else if i > 0 && !s[..i].trim().is_empty() {
                    return Err(PolyError::Parse(format!("empty term in {s:?}")));
                }
                neg = ch == '-';
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(PolyError::Parse(format!("unbalanced '(' in {s:?}")));
    }
    let last = s[start..].trim();
    if last.is_empty() {
        return Err(PolyError::Parse(format!("dangling operator in {s:?}")));
    }
    out.push((neg, last));
    Ok(out)
}

fn split_factors(term: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in term.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(term[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(term[start..].trim());
    out
}

pub(super) fn parse(field: &FieldSpec, s: &str) -> Result<Poly, PolyError> {
    let perr = |what: &str| PolyError::Parse(format!("{what} in {s:?}"));
    if s.trim() == "0" {
        return Ok(Poly::zero(field));
    }
    let mut terms = Vec::new();
    for (neg, term) in split_terms(s)? {
        let mut coeff = Fe::ONE;
        let mut exps = [0u16; 4];
        for factor in split_factors(term) {
            if factor.is_empty() {
                return Err(perr("empty factor"));
            }
            if let Some(inner) = factor.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                let c = field.parse_elem(inner).map_err(|e| perr(&e.to_string()))?;
                coeff = field.mul(coeff, c);
                continue;
            }
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => {
                    let e: u16 = e.trim().parse().map_err(|_| perr("bad exponent"))?;
                    (b.trim(), e)
                }
                None => (factor, 1),
            };
            if let Some(v) = Var::ALL.iter().find(|v| v.name() == base) {
                exps[v.index()] = exps[v.index()]
                    .checked_add(exp)
                    .ok_or(PolyError::DegreeOverflow)?;
            } else {
                let c = field.parse_elem(factor).map_err(|e| perr(&e.to_string()))?;
                coeff = field.mul(coeff, c);
            }
        }
        if neg {
            coeff = field.neg(coeff);
        }
        terms.push((Monomial(exps), coeff));
    }
    Ok(Poly::from_terms(field, terms))
}
