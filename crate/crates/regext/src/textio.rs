//! The line-based presentation file format.
//!
//! ```text
//! # comment
//! RING 32003 x y
//! GENS 0 1
//! REL x^2 | y
//! REL x*y | 0
//! ```
//!
//! `RING p v1 v2 ...` fixes the prime and the variables; `GENS a1 a2 ...`
//! lists the generator degrees (twists, so `F = ⊕ R(-a_j)`; the line may be
//! empty for the zero module); each `REL` line is one relation column with
//! `|`-separated polynomial entries, `0` allowed. Polynomials are sums of
//! terms `c*x^e*y^f` with optional coefficient and `-`/`+` signs;
//! coefficients are reduced modulo `p`. A relation must be homogeneous:
//! `deg(entry_i) + a_i` must agree over its nonzero entries.

use crate::freemod::{FreeModule, FreeVector};
use crate::monomial::Monomial;
use crate::poly::{format_poly, Poly};
use crate::presentation::Presentation;
use crate::ring::PolyRing;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        msg: msg.into(),
    })
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut ring: Option<Arc<PolyRing>> = None;
    let mut twists: Option<Vec<i64>> = None;
    let mut rels: Vec<FreeVector> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match keyword {
            "RING" => {
                let mut parts = rest.split_whitespace();
                let Some(p_str) = parts.next() else {
                    return err(line_no, 1, "RING needs a modulus and variable names");
                };
                let p: u32 = p_str
                    .parse()
                    .map_err(|_| ParseError {
                        line: line_no,
                        col: 6,
                        msg: format!("invalid modulus `{p_str}`"),
                    })?;
                let vars: Vec<String> = parts.map(|s| s.to_string()).collect();
                match PolyRing::new(p, vars) {
                    Ok(r) => ring = Some(Arc::new(r)),
                    Err(e) => return err(line_no, 1, e.to_string()),
                }
            }
            "GENS" => {
                let mut ts = Vec::new();
                for tok in rest.split_whitespace() {
                    match tok.parse::<i64>() {
                        Ok(v) => ts.push(v),
                        Err(_) => return err(line_no, 1, format!("invalid twist `{tok}`")),
                    }
                }
                twists = Some(ts);
            }
            "REL" => {
                let Some(ring) = &ring else {
                    return err(line_no, 1, "REL before RING");
                };
                let Some(twists) = &twists else {
                    return err(line_no, 1, "REL before GENS");
                };
                let entries: Vec<&str> = rest.split('|').map(|s| s.trim()).collect();
                if entries.len() != twists.len() {
                    return err(
                        line_no,
                        1,
                        format!(
                            "relation has {} entries for {} generators",
                            entries.len(),
                            twists.len()
                        ),
                    );
                }
                let mut comps = Vec::with_capacity(entries.len());
                for (k, e) in entries.iter().enumerate() {
                    let p = parse_poly(ring, e, line_no)?;
                    let _ = k;
                    comps.push(p);
                }
                // homogeneity with line-precise diagnostics
                let mut col_deg: Option<i64> = None;
                for (i, p) in comps.iter().enumerate() {
                    if p.is_zero() {
                        continue;
                    }
                    let Some(d) = p.homogeneous_degree() else {
                        return err(line_no, 1, format!("entry {} is not homogeneous", i + 1));
                    };
                    let d = d as i64 + twists[i];
                    match col_deg {
                        None => col_deg = Some(d),
                        Some(c) if c == d => {}
                        Some(c) => {
                            return err(
                                line_no,
                                1,
                                format!("degree mismatch: entry {} gives {d}, expected {c}", i + 1),
                            )
                        }
                    }
                }
                rels.push(FreeVector { comps });
            }
            other => return err(line_no, 1, format!("unknown keyword `{other}`")),
        }
    }
    let Some(ring) = ring else {
        return err(1, 1, "missing RING line");
    };
    let Some(twists) = twists else {
        return err(1, 1, "missing GENS line");
    };
    Presentation::new(ring, FreeModule::new(twists), rels)
        .map_err(|e| ParseError {
            line: 0,
            col: 0,
            msg: e.to_string(),
        })
}

/// Polynomial syntax: `c*x^e*y^f ± ...`; a bare `0` is the zero polynomial.
fn parse_poly(ring: &PolyRing, text: &str, line_no: usize) -> Result<Poly, ParseError> {
    let n = ring.n();
    let s = text.trim();
    if s.is_empty() {
        return err(line_no, 1, "empty polynomial entry");
    }
    let mut terms: Vec<(Monomial, u32)> = Vec::new();
    let mut chars = s.char_indices().peekable();
    let mut sign = 1i64;
    let mut expect_term = true;
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '+' || c == '-' {
            if expect_term && terms.is_empty() && c == '-' {
                // leading minus
            } else if expect_term {
                return err(line_no, pos + 1, "unexpected sign");
            }
            sign = if c == '-' { -1 } else { 1 };
            expect_term = true;
            chars.next();
            continue;
        }
        // term: [integer][*factor]* where factor = var[^exp]
        let start = pos;
        let mut coeff: i64 = 1;
        let mut exps = vec![0u32; n];
        let mut saw_factor = false;
        let mut first = true;
        loop {
            match chars.peek() {
                Some(&(p2, ch)) if ch.is_ascii_digit() && first => {
                    let mut num = String::new();
                    while let Some(&(_, d)) = chars.peek() {
                        if d.is_ascii_digit() {
                            num.push(d);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    coeff = num.parse::<i64>().map_err(|_| ParseError {
                        line: line_no,
                        col: p2 + 1,
                        msg: format!("coefficient `{num}` out of range"),
                    })?;
                    saw_factor = true;
                }
                Some(&(p2, ch)) if ch.is_alphabetic() || ch == '_' => {
                    let mut name = String::new();
                    while let Some(&(_, d)) = chars.peek() {
                        if d.is_alphanumeric() || d == '_' {
                            name.push(d);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    let Some(vi) = ring.var_index(&name) else {
                        return err(line_no, p2 + 1, format!("unknown variable `{name}`"));
                    };
                    let mut exp = 1u32;
                    if let Some(&(_, '^')) = chars.peek() {
                        chars.next();
                        let mut num = String::new();
                        while let Some(&(_, d)) = chars.peek() {
                            if d.is_ascii_digit() {
                                num.push(d);
                                chars.next();
                            } else {
                                break;
                            }
                        }
                        exp = num.parse().map_err(|_| ParseError {
                            line: line_no,
                            col: p2 + 1,
                            msg: "missing exponent after `^`".into(),
                        })?;
                    }
                    exps[vi] += exp;
                    saw_factor = true;
                }
                _ => {
                    if !saw_factor {
                        return err(line_no, start + 1, "expected a term");
                    }
                    break;
                }
            }
            first = false;
            match chars.peek() {
                Some(&(_, '*')) => {
                    chars.next();
                }
                _ => break,
            }
        }
        let c = ring.reduce_i64(sign * coeff);
        terms.push((Monomial::new(exps), c));
        sign = 1;
        expect_term = false;
    }
    if expect_term && terms.is_empty() {
        return err(line_no, 1, "expected a polynomial");
    }
    Ok(Poly::from_terms(ring, terms))
}

/// Canonical emission; `parse(emit(p))` recovers an equal presentation.
pub fn emit_presentation(pres: &Presentation) -> String {
    let ring = &pres.ring;
    let mut out = String::new();
    out.push_str(&format!("RING {} {}\n", ring.p(), ring.vars().join(" ")));
    let twists: Vec<String> = pres.gens.twists().iter().map(|t| t.to_string()).collect();
    if twists.is_empty() {
        out.push_str("GENS\n");
    } else {
        out.push_str(&format!("GENS {}\n", twists.join(" ")));
    }
    for r in &pres.rels {
        let entries: Vec<String> = r.comps.iter().map(|p| format_poly(ring, p)).collect();
        out.push_str(&format!("REL {}\n", entries.join(" | ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::ModuleData;

    #[test]
    fn parse_cyclic_example() {
        let text = "RING 32003 x y\nGENS 0\nREL x^2\nREL x*y\n";
        let pres = parse_presentation(text).unwrap();
        assert_eq!(pres.gens.twists(), &[0]);
        assert_eq!(pres.rels.len(), 2);
        let md = ModuleData::analyze(&pres);
        assert_eq!(md.inv.reg, crate::ExtInt::Fin(1));
    }

    #[test]
    fn parse_vector_relation_with_twists() {
        // degrees: 2 + 0 = 3 + (-1); entry degrees shift by the twists
        let text = "RING 32003 x y\nGENS 0 -1\nREL x^2 | y^3\n";
        let pres = parse_presentation(text).unwrap();
        assert_eq!(pres.rels.len(), 1);
        // a zero entry is unconstrained
        let text = "RING 32003 x y\nGENS 0 -1\nREL x | 0\n";
        assert!(parse_presentation(text).is_ok());
    }

    #[test]
    fn degree_mismatch_rejected() {
        let text = "RING 32003 x y\nGENS 0 -1\nREL x^2 | y\n";
        let e = parse_presentation(text).unwrap_err();
        assert!(e.msg.contains("degree mismatch"), "{e}");
        assert_eq!(e.line, 3);
    }

    #[test]
    fn inhomogeneous_entry_rejected() {
        let text = "RING 32003 x y\nGENS 0\nREL x^2 + y\n";
        let e = parse_presentation(text).unwrap_err();
        assert!(e.msg.contains("not homogeneous"));
    }

    #[test]
    fn unknown_variable_and_bad_modulus() {
        let text = "RING 32003 x y\nGENS 0\nREL z^2\n";
        let e = parse_presentation(text).unwrap_err();
        assert!(e.msg.contains("unknown variable"));
        let text = "RING 32004 x y\nGENS 0\n";
        let e = parse_presentation(text).unwrap_err();
        assert!(e.msg.contains("not prime"));
    }

    #[test]
    fn signs_and_coefficients() {
        let text = "RING 7 x y\nGENS 0\nREL 3*x^2 - 2*x*y + y^2\n";
        let pres = parse_presentation(text).unwrap();
        let p = &pres.rels[0].comps[0];
        assert_eq!(p.terms().len(), 3);
        // -2 mod 7 = 5
        assert!(p.terms().iter().any(|(_, c)| *c == 5));
    }

    #[test]
    fn round_trip() {
        let text = "RING 32003 x y z\nGENS 0 1\nREL x^2 - 14*y*z | y\nREL z^3 | 0\n";
        let pres = parse_presentation(text).unwrap();
        let emitted = emit_presentation(&pres);
        let back = parse_presentation(&emitted).unwrap();
        assert_eq!(pres.gens, back.gens);
        assert_eq!(pres.rels, back.rels);
    }

    #[test]
    fn zero_module_round_trip() {
        let text = "RING 32003 x y\nGENS\n";
        let pres = parse_presentation(text).unwrap();
        assert!(pres.gens.is_zero());
        let back = parse_presentation(&emit_presentation(&pres)).unwrap();
        assert!(back.gens.is_zero());
    }
}
