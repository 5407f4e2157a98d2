//! Plain-text instance formats.
//!
//! All formats are whitespace-separated decimal integers with `#` comments
//! running to the end of the line. The header is the first non-empty line.
//!
//! ```text
//! knapsack, unbounded   n T          then n lines "w v"
//! sequence              n k delta    then n integers
//! dag                   n m s t [transitive]
//!                       then n rewards ("-inf" forbids a vertex), then m lines "u v"
//! monge                 n m s t [complete]
//!                       then m lines "u v w" over vertices 0..n-1
//! ```

use std::fmt::{self, Write as _};
use std::str::FromStr;

use capdp::{Dag, Ext, Knapsack, Monge, MongeDag, NodeWeightedDag, Unbounded};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Kind {
    Knapsack,
    Unbounded,
    Dag,
    Monge,
    Sequence,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Knapsack => "knapsack",
            Kind::Unbounded => "unbounded",
            Kind::Dag => "dag",
            Kind::Monge => "monge",
            Kind::Sequence => "sequence",
        }
    }
}

/// Parse failure with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone)]
pub struct DagInstance {
    pub graph: Dag,
    pub source: usize,
    pub sink: usize,
}

#[derive(Debug, Clone)]
pub struct MongeInstance {
    pub graph: Monge,
    pub source: usize,
    pub sink: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceInstance {
    pub values: Vec<i64>,
    pub k: usize,
    pub delta: usize,
}

#[derive(Debug, Clone)]
pub enum Instance {
    Knapsack(Knapsack),
    Unbounded(Unbounded),
    Dag(DagInstance),
    Monge(MongeInstance),
    Sequence(SequenceInstance),
}

impl Instance {
    pub fn kind(&self) -> Kind {
        match self {
            Instance::Knapsack(_) => Kind::Knapsack,
            Instance::Unbounded(_) => Kind::Unbounded,
            Instance::Dag(_) => Kind::Dag,
            Instance::Monge(_) => Kind::Monge,
            Instance::Sequence(_) => Kind::Sequence,
        }
    }
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

struct Tokens<'a> {
    toks: Vec<Token<'a>>,
    pos: usize,
    end: (usize, usize),
}

impl<'a> Tokens<'a> {
    fn new(src: &'a str) -> Self {
        let mut toks = Vec::new();
        let mut end = (1, 1);
        for (i, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let mut offset = 0;
            for piece in line.split_whitespace() {
                let at = offset + line[offset..].find(piece).expect("piece comes from line");
                toks.push(Token { text: piece, line: i + 1, column: at + 1 });
                offset = at + piece.len();
            }
            end = (i + 1, raw.chars().count() + 1);
        }
        Tokens { toks, pos: 0, end }
    }

    fn error_here(&self, message: String) -> ParseError {
        let (line, column) = match self.toks.get(self.pos) {
            Some(t) => (t.line, t.column),
            None => self.end,
        };
        ParseError { line, column, message }
    }

    fn next<T: FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let Some(tok) = self.toks.get(self.pos) else {
            return Err(self.error_here(format!("expected {what}, found end of input")));
        };
        let v = tok.text.parse().map_err(|_| self.error_here(format!("expected {what}, found {:?}", tok.text)))?;
        self.pos += 1;
        Ok(v)
    }

    /// Optional trailing flag word on the same line as the previous token.
    fn flag(&mut self, word: &str) -> Result<bool, ParseError> {
        let prev_line = self.toks[self.pos - 1].line;
        match self.toks.get(self.pos) {
            Some(t) if t.line == prev_line => {
                if t.text == word {
                    self.pos += 1;
                    Ok(true)
                } else {
                    Err(self.error_here(format!("expected {word:?} or end of line, found {:?}", t.text)))
                }
            }
            _ => Ok(false),
        }
    }

    fn reward(&mut self) -> Result<Ext<i64>, ParseError> {
        if self.toks.get(self.pos).is_some_and(|t| t.text == "-inf") {
            self.pos += 1;
            return Ok(Ext::Bottom);
        }
        self.next::<i64>("a reward or -inf").map(Ext::Finite)
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(self.error_here(format!("unexpected trailing token {:?}", t.text))),
        }
    }
}

fn validation(e: capdp::Error) -> CliError {
    CliError::from(e)
}

fn item_list(tk: &mut Tokens) -> Result<(Vec<(usize, i64)>, usize), ParseError> {
    let n: usize = tk.next("item count n")?;
    let cap: usize = tk.next("capacity T")?;
    let mut items = Vec::with_capacity(n.min(1 << 20));
    for _ in 0..n {
        let w = tk.next("item weight")?;
        let v = tk.next("item value")?;
        items.push((w, v));
    }
    Ok((items, cap))
}

/// Parses and validates an instance of the given kind. With `lax`,
/// knapsack items of weight or value 0 are accepted.
pub fn parse_instance(kind: Kind, src: &str, lax: bool) -> Result<Instance, CliError> {
    let mut tk = Tokens::new(src);
    if tk.toks.is_empty() {
        return Err(tk.error_here("empty instance".into()).into());
    }
    let inst = match kind {
        Kind::Knapsack => {
            let (items, cap) = item_list(&mut tk)?;
            tk.finish()?;
            let inst = if lax { Knapsack::new_lax(items, cap) } else { Knapsack::new(items, cap) };
            Instance::Knapsack(inst.map_err(validation)?)
        }
        Kind::Unbounded => {
            let (items, cap) = item_list(&mut tk)?;
            tk.finish()?;
            Instance::Unbounded(Unbounded::new(items, cap).map_err(validation)?)
        }
        Kind::Sequence => {
            let n: usize = tk.next("length n")?;
            let k = tk.next("pick count k")?;
            let delta = tk.next("separation delta")?;
            let mut values = Vec::with_capacity(n.min(1 << 24));
            for _ in 0..n {
                values.push(tk.next("sequence entry")?);
            }
            tk.finish()?;
            if delta == 0 {
                return Err(CliError::Validation("separation delta must be at least 1".into()));
            }
            Instance::Sequence(SequenceInstance { values, k, delta })
        }
        Kind::Dag => {
            let n: usize = tk.next("vertex count n")?;
            let m: usize = tk.next("edge count m")?;
            let source = tk.next("source s")?;
            let sink = tk.next("sink t")?;
            let transitive = tk.flag("transitive")?;
            let mut rewards = Vec::with_capacity(n.min(1 << 24));
            for _ in 0..n {
                rewards.push(tk.reward()?);
            }
            let mut edges = Vec::with_capacity(m.min(1 << 24));
            for _ in 0..m {
                edges.push((tk.next("edge tail")?, tk.next("edge head")?));
            }
            tk.finish()?;
            if source >= n || sink >= n || source > sink {
                return Err(CliError::Validation(format!("need s <= t < {n}, got s={source} t={sink}")));
            }
            let graph = NodeWeightedDag::new(rewards, edges, transitive).map_err(validation)?;
            Instance::Dag(DagInstance { graph, source, sink })
        }
        Kind::Monge => {
            let n: usize = tk.next("vertex count n")?;
            let m: usize = tk.next("edge count m")?;
            let source = tk.next("source s")?;
            let sink = tk.next("sink t")?;
            let complete = tk.flag("complete")?;
            let mut edges = Vec::with_capacity(m.min(1 << 24));
            for _ in 0..m {
                edges.push((tk.next("edge tail")?, tk.next("edge head")?, tk.next("edge weight")?));
            }
            tk.finish()?;
            if n == 0 || source >= sink || sink >= n {
                return Err(CliError::Validation(format!("need s < t < {n}, got s={source} t={sink}")));
            }
            let graph = MongeDag::from_edges(n - 1, edges, complete).map_err(validation)?;
            Instance::Monge(MongeInstance { graph, source, sink })
        }
    };
    Ok(inst)
}

/// Knapsack or unbounded file body.
pub fn format_items(items: &[(usize, i64)], capacity: usize) -> String {
    let mut out = format!("{} {}\n", items.len(), capacity);
    for (w, v) in items {
        writeln!(out, "{w} {v}").unwrap();
    }
    out
}

pub fn format_sequence(s: &SequenceInstance) -> String {
    let mut out = format!("{} {} {}\n", s.values.len(), s.k, s.delta);
    for chunk in s.values.chunks(16) {
        let line: Vec<String> = chunk.iter().map(i64::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn format_dag(d: &DagInstance) -> String {
    let g = &d.graph;
    let mut out = format!("{} {} {} {}", g.n(), g.m(), d.source, d.sink);
    if g.is_transitive() {
        out.push_str(" transitive");
    }
    out.push('\n');
    let rewards: Vec<String> =
        g.rewards().iter().map(|r| r.finite().map_or("-inf".into(), |v| v.to_string())).collect();
    for chunk in rewards.chunks(16) {
        writeln!(out, "{}", chunk.join(" ")).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn format_monge(d: &MongeInstance) -> String {
    let g = &d.graph;
    let mut out = format!("{} {} {} {}", g.n() + 1, g.edge_count(), d.source, d.sink);
    if g.is_complete() {
        out.push_str(" complete");
    }
    out.push('\n');
    for (u, v, w) in g.edges() {
        writeln!(out, "{u} {v} {w}").unwrap();
    }
    out
}

/// Serializes any instance back to its file format. Lax knapsack offsets
/// are not representable and must be zero.
pub fn format_instance(inst: &Instance) -> String {
    match inst {
        Instance::Knapsack(k) => {
            debug_assert_eq!(k.offset(), 0);
            let items: Vec<(usize, i64)> = k.items().iter().map(|it| (it.weight, it.value)).collect();
            format_items(&items, k.capacity())
        }
        Instance::Unbounded(u) => format_items(u.items(), u.capacity()),
        Instance::Dag(d) => format_dag(d),
        Instance::Monge(m) => format_monge(m),
        Instance::Sequence(s) => format_sequence(s),
    }
}
