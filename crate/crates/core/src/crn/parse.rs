//! Network text format.
//!
//! One statement per line or `;`-separated. A statement is a chain
//! `complex (-> | <=>) complex ...`; a complex is `0` or `[k] Name + ...`.
//! `#` starts a comment. A line `species: A, B, C` fixes the species order;
//! otherwise species are ordered by first appearance.

use std::collections::BTreeMap;

use super::network::ReactionNetwork;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Number(u32),
    Name(String),
    Plus,
    Forward,
    Reversible,
}

struct Lexed {
    token: Token,
    column: usize,
}

fn error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str, line: usize, offset: usize) -> Result<Vec<Lexed>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = offset + i + 1;
        if c.is_whitespace() || c == '*' {
            i += 1;
        } else if c == '+' {
            out.push(Lexed { token: Token::Plus, column });
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Lexed { token: Token::Forward, column });
            i += 2;
        } else if c == '<' && chars.get(i + 1) == Some(&'=') && chars.get(i + 2) == Some(&'>') {
            out.push(Lexed { token: Token::Reversible, column });
            i += 3;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let value = digits
                .parse::<u32>()
                .map_err(|_| error(line, column, format!("coefficient {digits} is too large")))?;
            out.push(Lexed { token: Token::Number(value), column });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Lexed {
                token: Token::Name(chars[start..i].iter().collect()),
                column,
            });
        } else {
            return Err(error(line, column, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Builder {
    species: Vec<String>,
    fixed: bool,
    reactions: Vec<(BTreeMap<usize, u32>, BTreeMap<usize, u32>)>,
}

impl Builder {
    fn species_index(&mut self, name: &str, line: usize, column: usize) -> Result<usize> {
        if let Some(i) = self.species.iter().position(|s| s == name) {
            return Ok(i);
        }
        if self.fixed {
            return Err(error(line, column, format!("species {name} is not declared")));
        }
        self.species.push(name.to_string());
        Ok(self.species.len() - 1)
    }

    /// Parses one complex starting at `pos`; returns the complex and the next position.
    fn complex(&mut self, toks: &[Lexed], mut pos: usize, line: usize, end_column: usize) -> Result<(BTreeMap<usize, u32>, usize)> {
        let mut out = BTreeMap::new();
        if let Some(Lexed { token: Token::Number(0), column }) = toks.get(pos) {
            if matches!(toks.get(pos + 1), Some(Lexed { token: Token::Name(_), .. })) {
                return Err(error(line, *column, "zero coefficient"));
            }
            return Ok((out, pos + 1));
        }
        loop {
            let mut coefficient = 1;
            let column = toks.get(pos).map_or(end_column, |t| t.column);
            if let Some(Lexed { token: Token::Number(k), column }) = toks.get(pos) {
                if *k == 0 {
                    return Err(error(line, *column, "zero coefficient"));
                }
                coefficient = *k;
                pos += 1;
            }
            match toks.get(pos) {
                Some(Lexed { token: Token::Name(name), column }) => {
                    let idx = self.species_index(name, line, *column)?;
                    *out.entry(idx).or_insert(0) += coefficient;
                    pos += 1;
                }
                Some(t) => return Err(error(line, t.column, "expected a species name")),
                None => return Err(error(line, column, "expected a species name")),
            }
            if matches!(toks.get(pos), Some(Lexed { token: Token::Plus, .. })) {
                pos += 1;
            } else {
                return Ok((out, pos));
            }
        }
    }

    fn statement(&mut self, toks: &[Lexed], line: usize, end_column: usize) -> Result<()> {
        let (mut left, mut pos) = self.complex(toks, 0, line, end_column)?;
        let mut arrows = 0;
        while pos < toks.len() {
            let reversible = match &toks[pos].token {
                Token::Forward => false,
                Token::Reversible => true,
                _ => return Err(error(line, toks[pos].column, "expected '->' or '<=>'")),
            };
            let arrow_column = toks[pos].column;
            let (right, next) = self.complex(toks, pos + 1, line, end_column)?;
            if left == right {
                return Err(error(line, arrow_column, "reaction with identical source and target"));
            }
            self.reactions.push((left.clone(), right.clone()));
            if reversible {
                self.reactions.push((right.clone(), left));
            }
            left = right;
            pos = next;
            arrows += 1;
        }
        if arrows == 0 {
            return Err(error(line, end_column, "expected '->' or '<=>'"));
        }
        Ok(())
    }
}

fn dense(c: &BTreeMap<usize, u32>, n: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    for (&i, &k) in c {
        v[i] = k;
    }
    v
}

pub fn parse_network(text: &str) -> Result<ReactionNetwork> {
    let mut b = Builder {
        species: Vec::new(),
        fixed: false,
        reactions: Vec::new(),
    };
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if let Some(rest) = trimmed.strip_prefix("species:") {
            if b.fixed || !b.reactions.is_empty() {
                return Err(error(line, 1, "the species line must come first and only once"));
            }
            let offset = content.len() - rest.len();
            for name in rest.split(',') {
                let name = name.trim();
                let column = offset + rest.find(name).unwrap_or(0) + 1;
                let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                    && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                if !valid {
                    return Err(error(line, column, format!("invalid species name '{name}'")));
                }
                if b.species.iter().any(|s| s == name) {
                    return Err(error(line, column, format!("species {name} declared twice")));
                }
                b.species.push(name.to_string());
            }
            b.fixed = true;
            continue;
        }
        let mut offset = 0;
        for part in content.split(';') {
            let toks = lex(part, line, offset)?;
            if !toks.is_empty() {
                let end_column = offset + part.trim_end().chars().count() + 1;
                b.statement(&toks, line, end_column)?;
            }
            offset += part.chars().count() + 1;
        }
    }
    if b.reactions.is_empty() {
        return Err(error(1, 1, "no reactions"));
    }
    let n = b.species.len();
    let reactions: Vec<(Vec<u32>, Vec<u32>)> = b.reactions.iter().map(|(s, t)| (dense(s, n), dense(t, n))).collect();
    ReactionNetwork::from_reactions(b.species, &reactions)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idh_network() {
        let net = parse_network("X1 + X2 <=> X3 -> X1 + X4 ; X3 + X4 <=> X5 -> X2 + X3").unwrap();
        assert_eq!(net.n(), 5);
        assert_eq!(net.m(), 6);
        assert_eq!(net.complexes().len(), 6);
        assert_eq!(net.species(), ["X1", "X2", "X3", "X4", "X5"]);
    }

    #[test]
    fn outflow_and_coefficients() {
        let net = parse_network("2A -> 0\n3 B + A <=> 2*C # comment").unwrap();
        assert_eq!(net.m(), 3);
        assert_eq!(net.source(0), [2, 0, 0]);
        assert_eq!(net.target(0), [0, 0, 0]);
        assert_eq!(net.source(1), [1, 3, 0]);
        assert_eq!(net.target(2), [1, 3, 0]);
    }

    #[test]
    fn species_header_orders_species() {
        let net = parse_network("species: B, A\nA -> B").unwrap();
        assert_eq!(net.species(), ["B", "A"]);
        assert_eq!(net.source(0), [0, 1]);
        assert!(matches!(parse_network("species: A\nA -> B"), Err(Error::Parse { line: 2, column: 6, .. })));
    }

    #[test]
    fn parse_errors_have_positions() {
        assert!(matches!(parse_network("A -> B ; C => D"), Err(Error::Parse { line: 1, column: 12, .. })));
        assert!(matches!(parse_network("A -> B\nA + -> C"), Err(Error::Parse { line: 2, column: 5, .. })));
        assert!(matches!(parse_network("A -> A"), Err(Error::Parse { line: 1, column: 3, .. })));
        assert!(matches!(parse_network("A B"), Err(Error::Parse { line: 1, column: 3, .. })));
        assert!(matches!(parse_network(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_network("A ->"), Err(Error::Parse { line: 1, column: 5, .. })));
    }

    #[test]
    fn matrices_of_single_reaction() {
        let net = parse_network("A -> B").unwrap();
        let (n, m) = net.mass_action_matrices();
        assert_eq!(n, crate::exactalg::IntegerMatrix::from_i64(&[&[-1], &[1]]));
        assert_eq!(m, crate::exactalg::IntegerMatrix::from_i64(&[&[1], &[0]]));
    }
}
