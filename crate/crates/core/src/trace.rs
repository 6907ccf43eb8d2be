//! Update traces: a line-oriented text format and a seeded generator.
//!
//! ```text
//! # comment
//! n 4
//! root 0
//! + 0 1
//! - 0 1
//! !
//! ```
//!
//! `n` and `root` must both appear before the first operation. `+ x y`
//! inserts, `- x y` deletes and `!` is a verification checkpoint.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceOp {
    Insert(VertexId, VertexId),
    Delete(VertexId, VertexId),
    Check,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateTrace {
    pub n: u32,
    pub root: VertexId,
    pub ops: Vec<TraceOp>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid generator parameters: {0}")]
    Parameters(String),
}

fn parse_error(line: usize, message: impl Into<String>) -> TraceError {
    TraceError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the trace text format. Line numbers in errors are 1-based.
pub fn parse_trace(text: &str) -> Result<UpdateTrace, TraceError> {
    let mut n: Option<u32> = None;
    let mut root: Option<u32> = None;
    let mut ops = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let opcode = fields.next().unwrap_or_default();
        let mut number = |what: &str| -> Result<u32, TraceError> {
            let tok = fields
                .next()
                .ok_or_else(|| parse_error(line_no, format!("missing {what}")))?;
            tok.parse::<u32>()
                .map_err(|_| parse_error(line_no, format!("bad {what} {tok:?}")))
        };
        match opcode {
            "n" | "root" if !ops.is_empty() => {
                return Err(parse_error(
                    line_no,
                    "header line after the first operation",
                ))
            }
            "n" => n = Some(number("vertex count")?),
            "root" => root = Some(number("root id")?),
            "+" | "-" | "!" => {
                let (Some(count), Some(r)) = (n, root) else {
                    return Err(parse_error(
                        line_no,
                        "operation before the `n` and `root` header",
                    ));
                };
                if r >= count {
                    return Err(parse_error(
                        line_no,
                        format!("root {r} out of range for n={count}"),
                    ));
                }
                let op = if opcode == "!" {
                    TraceOp::Check
                } else {
                    let x = number("source vertex")?;
                    let y = number("target vertex")?;
                    if x >= count || y >= count {
                        return Err(parse_error(
                            line_no,
                            format!("vertex id out of range for n={count}"),
                        ));
                    }
                    if opcode == "+" {
                        TraceOp::Insert(VertexId(x), VertexId(y))
                    } else {
                        TraceOp::Delete(VertexId(x), VertexId(y))
                    }
                };
                ops.push(op);
            }
            other => return Err(parse_error(line_no, format!("unknown opcode {other:?}"))),
        }
        if fields.next().is_some() {
            return Err(parse_error(line_no, "trailing fields"));
        }
    }

    let line_count = text.lines().count().max(1);
    let n = n.ok_or_else(|| parse_error(line_count, "missing `n` header"))?;
    let root = root.ok_or_else(|| parse_error(line_count, "missing `root` header"))?;
    if root >= n {
        return Err(parse_error(
            line_count,
            format!("root {root} out of range for n={n}"),
        ));
    }
    Ok(UpdateTrace {
        n,
        root: VertexId(root),
        ops,
    })
}

impl fmt::Display for UpdateTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        writeln!(f, "root {}", self.root)?;
        for op in &self.ops {
            match op {
                TraceOp::Insert(x, y) => writeln!(f, "+ {x} {y}")?,
                TraceOp::Delete(x, y) => writeln!(f, "- {x} {y}")?,
                TraceOp::Check => writeln!(f, "!")?,
            }
        }
        Ok(())
    }
}

/// SplitMix64 (Steele, Lea and Flood), the reference constants:
/// increment `0x9E3779B97F4A7C15`, multipliers `0xBF58476D1CE4E5B9` and
/// `0x94D049BB133111EB`, shifts 30, 27, 31.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// `next_u64() % bound`; the modulo bias is irrelevant at trace sizes.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Edge set of the graph a generator is building, in a deterministic order.
struct EdgePool {
    n: u64,
    edges: Vec<(u32, u32)>,
    present: HashSet<(u32, u32)>,
}

impl EdgePool {
    fn capacity(&self) -> u64 {
        self.n * self.n.saturating_sub(1)
    }

    /// Uniform absent ordered pair without self-loops. Rejection sampling
    /// while the graph is at most half full, enumeration afterwards.
    fn sample_absent(&mut self, rng: &mut SplitMix64) -> Option<(u32, u32)> {
        let free = self.capacity() - self.edges.len() as u64;
        if free == 0 {
            return None;
        }
        let pair = if 2 * (self.edges.len() as u64) <= self.capacity() {
            loop {
                let x = rng.below(self.n) as u32;
                let mut y = rng.below(self.n - 1) as u32;
                if y >= x {
                    y += 1;
                }
                if !self.present.contains(&(x, y)) {
                    break (x, y);
                }
            }
        } else {
            let mut pick = rng.below(free);
            let mut found = None;
            'outer: for x in 0..self.n as u32 {
                for y in (0..self.n as u32).filter(|&y| y != x) {
                    if self.present.contains(&(x, y)) {
                        continue;
                    }
                    if pick == 0 {
                        found = Some((x, y));
                        break 'outer;
                    }
                    pick -= 1;
                }
            }
            found?
        };
        self.edges.push(pair);
        self.present.insert(pair);
        Some(pair)
    }

    fn sample_present(&mut self, rng: &mut SplitMix64) -> Option<(u32, u32)> {
        if self.edges.is_empty() {
            return None;
        }
        let i = rng.below(self.edges.len() as u64) as usize;
        let pair = self.edges.swap_remove(i);
        self.present.remove(&pair);
        Some(pair)
    }
}

/// Deterministic random trace rooted at vertex 0.
///
/// Warm-up inserts bring the graph to `target_m` edges. Each of the `ops`
/// following steps draws an insertion with probability `p_insert` (over
/// absent pairs) and a deletion otherwise (over present pairs); a step whose
/// draw has no legal edge emits nothing. A checkpoint follows every tenth
/// step.
pub fn generate(
    seed: u64,
    n: u32,
    target_m: u64,
    ops: usize,
    p_insert: f64,
) -> Result<UpdateTrace, TraceError> {
    if n == 0 {
        return Err(TraceError::Parameters("n must be positive".into()));
    }
    if !(0.0..=1.0).contains(&p_insert) {
        return Err(TraceError::Parameters(format!(
            "p_insert {p_insert} outside [0, 1]"
        )));
    }
    let mut pool = EdgePool {
        n: n as u64,
        edges: Vec::new(),
        present: HashSet::new(),
    };
    if target_m > pool.capacity() {
        return Err(TraceError::Parameters(format!(
            "{target_m} edges do not fit in a simple digraph on {n} vertices"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut trace = UpdateTrace {
        n,
        root: VertexId(0),
        ops: Vec::new(),
    };
    let v = |(x, y): (u32, u32)| (VertexId(x), VertexId(y));
    while (pool.edges.len() as u64) < target_m {
        let (x, y) = v(pool.sample_absent(&mut rng).expect("capacity checked"));
        trace.ops.push(TraceOp::Insert(x, y));
    }
    for step in 0..ops {
        if rng.unit() < p_insert {
            if let Some(pair) = pool.sample_absent(&mut rng) {
                let (x, y) = v(pair);
                trace.ops.push(TraceOp::Insert(x, y));
            }
        } else if let Some(pair) = pool.sample_present(&mut rng) {
            let (x, y) = v(pair);
            trace.ops.push(TraceOp::Delete(x, y));
        }
        if (step + 1) % 10 == 0 {
            trace.ops.push(TraceOp::Check);
        }
    }
    Ok(trace)
}
