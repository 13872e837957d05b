//! Plain-text strategy tables.
//!
//! ```text
//! n d
//! x_1 ... x_n m        (d^n lines, one per input)
//! m answer             (n blocks of d lines, one block per question)
//! ```
//!
//! Inputs are written in lexicographic order. On reading, input lines may
//! come in any order but each input must appear exactly once; blank lines and
//! lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{ClassicalTask, DeterministicStrategy};
use crate::error::{RacError, Result};

/// A task together with a strategy for it, as stored in a table file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyTable {
    pub task: ClassicalTask,
    pub strategy: DeterministicStrategy,
}

impl StrategyTable {
    pub fn new(task: ClassicalTask, strategy: DeterministicStrategy) -> Result<Self> {
        strategy.validate(&task)?;
        Ok(Self { task, strategy })
    }

    pub fn to_text(&self) -> String {
        let (n, d) = (self.task.n(), self.task.d());
        let mut out = format!("{n} {d}\n");
        for (x, m) in self.strategy.encoder.iter().enumerate() {
            for v in self.task.digits(x) {
                write!(out, "{v} ").unwrap();
            }
            writeln!(out, "{m}").unwrap();
        }
        for dec in &self.strategy.decoders {
            for (m, a) in dec.iter().enumerate() {
                writeln!(out, "{m} {a}").unwrap();
            }
        }
        out
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> RacError {
    RacError::Parse {
        line,
        message: message.into(),
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_err(line, format!("not a nonnegative integer: {t:?}")))
        })
        .collect()
}

impl FromStr for StrategyTable {
    type Err = RacError;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let header = numbers(hline, header)?;
        let [n, d] = header[..] else {
            return Err(parse_err(hline, "header must be `n d`"));
        };
        let task = ClassicalTask::new(n, d).map_err(|e| parse_err(hline, e.to_string()))?;

        let mut encoder = vec![None; task.inputs()];
        for _ in 0..task.inputs() {
            let (ln, text) = lines
                .next()
                .ok_or_else(|| parse_err(0, "unexpected end of encoder table"))?;
            let row = numbers(ln, text)?;
            if row.len() != n + 1 {
                return Err(parse_err(ln, format!("expected {} numbers", n + 1)));
            }
            let x = task
                .index_of(&row[..n])
                .map_err(|e| parse_err(ln, e.to_string()))?;
            if row[n] >= d {
                return Err(parse_err(ln, format!("message {} out of range", row[n])));
            }
            if encoder[x].replace(row[n]).is_some() {
                return Err(parse_err(ln, "duplicate input"));
            }
        }
        let encoder = encoder.into_iter().map(|m| m.expect("every input filled")).collect();

        let mut decoders = Vec::with_capacity(n);
        for y in 0..n {
            let mut dec = vec![None; d];
            for _ in 0..d {
                let (ln, text) = lines.next().ok_or_else(|| {
                    parse_err(0, format!("unexpected end of decoder {}", y + 1))
                })?;
                let row = numbers(ln, text)?;
                let [m, a] = row[..] else {
                    return Err(parse_err(ln, "decoder rows must be `m answer`"));
                };
                if m >= d || a >= d {
                    return Err(parse_err(ln, "decoder entry out of range"));
                }
                if dec[m].replace(a).is_some() {
                    return Err(parse_err(ln, "duplicate message"));
                }
            }
            decoders.push(dec.into_iter().map(|a| a.expect("every message filled")).collect());
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "trailing content"));
        }
        Self::new(task, DeterministicStrategy::new(encoder, decoders))
    }
}
