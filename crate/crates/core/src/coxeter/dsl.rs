//! Text syntax for Coxeter graphs.
//!
//! A graph is one or more parts joined by `+` (disjoint union). A part is
//! either a catalog name (`A4`, `B3`, `D5`, `E6`, `F4`, `H3`, `I2(7)`,
//! `I2(inf)`, `Dinf`) or an explicit form `n=<rank>; i-j:<label>; ...` with
//! 1-based vertices. Omitted pairs mean m = 2, an edge without a label means
//! m = 3. Whitespace is ignored everywhere.

use std::collections::BTreeSet;

use super::catalog::{catalog_graph, IrreducibleType};
use super::{CoxeterMatrix, Entry};
use crate::error::{Error, Result};

pub fn parse_graph(text: &str) -> Result<CoxeterMatrix> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut parser = Parser {
        chars,
        at: 0,
        end_pos: text.len(),
    };
    let mut parts = vec![parser.part()?];
    while parser.eat('+') {
        parts.push(parser.part()?);
    }
    if let Some(c) = parser.peek() {
        return Err(Error::parse(parser.pos(), format!("unexpected '{c}'")));
    }
    Ok(CoxeterMatrix::disjoint_union(&parts))
}

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
    end_pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.end_pos, |&(p, _)| p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        match self.peek() {
            Some(c) => Error::parse(self.pos(), format!("expected {wanted}, found '{c}'")),
            None => Error::parse(self.pos(), format!("expected {wanted}, found end of input")),
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        let n = word.chars().count();
        let matches = self.chars.len() >= self.at + n
            && self.chars[self.at..self.at + n]
                .iter()
                .zip(word.chars())
                .all(|(&(_, a), b)| a.eq_ignore_ascii_case(&b));
        if matches {
            self.at += n;
        }
        matches
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.at;
        let mut value: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value * 10 + u64::from(d);
            if value > u64::from(u32::MAX) {
                return Err(Error::parse(self.chars[start].0, "number too large"));
            }
            self.at += 1;
        }
        if self.at == start {
            return Err(self.unexpected("a number"));
        }
        Ok(value as u32)
    }

    fn label(&mut self) -> Result<Entry> {
        let pos = self.pos();
        if self.eat_word("inf") {
            return Ok(Entry::Infinite);
        }
        let m = self.number()?;
        if m < 3 {
            return Err(Error::parse(pos, format!("edge label {m} is below 3")));
        }
        Ok(Entry::Finite(m))
    }

    fn part(&mut self) -> Result<CoxeterMatrix> {
        if self.peek() == Some('n') {
            self.explicit()
        } else {
            self.named()
        }
    }

    fn explicit(&mut self) -> Result<CoxeterMatrix> {
        self.expect('n')?;
        self.expect('=')?;
        let rank_pos = self.pos();
        let rank = self.number()? as usize;
        if rank == 0 {
            return Err(Error::parse(rank_pos, "rank must be at least 1"));
        }
        let mut m = CoxeterMatrix::commuting(rank);
        let mut seen = BTreeSet::new();
        while self.eat(';') {
            if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                continue;
            }
            let edge_pos = self.pos();
            let i = self.number()? as usize;
            self.expect('-')?;
            let j = self.number()? as usize;
            let label = if self.eat(':') {
                self.label()?
            } else {
                Entry::Finite(3)
            };
            if i == 0 || j == 0 || i > rank || j > rank {
                return Err(Error::parse(
                    edge_pos,
                    format!("vertex out of range 1..={rank} in edge {i}-{j}"),
                ));
            }
            if i == j {
                return Err(Error::parse(edge_pos, format!("loop at vertex {i}")));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::parse(edge_pos, format!("duplicate edge {i}-{j}")));
            }
            m.set(i - 1, j - 1, label);
        }
        Ok(m)
    }

    fn named(&mut self) -> Result<CoxeterMatrix> {
        let pos = self.pos();
        let Some(letter) = self.peek() else {
            return Err(self.unexpected("a graph"));
        };
        self.at += 1;
        let ty = match letter {
            'I' => {
                self.expect('2')?;
                self.expect('(')?;
                let label_pos = self.pos();
                let ty = match self.label() {
                    Ok(Entry::Finite(m)) => IrreducibleType::I2(Some(m)),
                    Ok(Entry::Infinite) => IrreducibleType::I2(None),
                    Err(_) => {
                        return Err(Error::parse(label_pos, "I2 needs a label >= 3 or inf"))
                    }
                };
                self.expect(')')?;
                ty
            }
            'D' if self.eat_word("inf") => IrreducibleType::I2(None),
            'A' | 'B' | 'D' | 'E' | 'F' | 'H' => {
                let n = self.number()? as usize;
                let ty = match letter {
                    'A' if n >= 1 => Some(IrreducibleType::A(n)),
                    'B' if n >= 2 => Some(IrreducibleType::B(n)),
                    'D' if n >= 4 => Some(IrreducibleType::D(n)),
                    'E' if n == 6 => Some(IrreducibleType::E6),
                    'E' if n == 7 => Some(IrreducibleType::E7),
                    'E' if n == 8 => Some(IrreducibleType::E8),
                    'F' if n == 4 => Some(IrreducibleType::F4),
                    'H' if n == 3 => Some(IrreducibleType::H3),
                    'H' if n == 4 => Some(IrreducibleType::H4),
                    _ => None,
                };
                ty.ok_or_else(|| Error::parse(pos, format!("no catalog type {letter}{n}")))?
            }
            other => {
                return Err(Error::parse(pos, format!("unknown graph name '{other}'")));
            }
        };
        Ok(catalog_graph(ty).expect("catalog types have graphs"))
    }
}
