//! Plain-text file formats.
//!
//! | ext    | header      | body                                   |
//! |--------|-------------|----------------------------------------|
//! | `.ls`  | `n`         | `n` rows of `n` symbols                |
//! | `.g`   | `n m`       | `m` edges `u v` with `u < v`           |
//! | `.sd`  | `v t k b`   | `b` blocks of `k` ascending points     |
//! | `.net` | `n k`       | `k·n` lines `c p₁ … pₙ`, `c` the class |
//!
//! Everything is 0-indexed ASCII with single spaces between fields. Parsers
//! are strict: blank lines, extra lines, extra fields and repeated edges are
//! errors, and each error carries the 1-based line number it was found on.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use isokit_core::{Graph, LatinSquare, Net, SteinerDesign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

struct Lines<'a> {
    lines: Vec<&'a str>,
    next: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let lines = if body.is_empty() { Vec::new() } else { body.split('\n').collect() };
        Lines { lines, next: 0 }
    }

    /// The next line split into exactly `want` numbers (any count if `None`).
    fn fields(&mut self, want: Option<usize>, what: &str) -> Result<(usize, Vec<usize>), ParseError> {
        let no = self.next + 1;
        let Some(&line) = self.lines.get(self.next) else {
            return err(no, format!("missing {what}"));
        };
        self.next += 1;
        if line.is_empty() {
            return err(no, format!("blank line where {what} was expected"));
        }
        let mut out = Vec::new();
        for tok in line.split(' ') {
            if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                return err(no, format!("bad field {tok:?} in {what}"));
            }
            match tok.parse() {
                Ok(x) => out.push(x),
                Err(_) => return err(no, format!("number {tok} is too large")),
            }
        }
        if let Some(w) = want {
            if out.len() != w {
                return err(no, format!("{what} needs {w} fields, found {}", out.len()));
            }
        }
        Ok((no, out))
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.next < self.lines.len() {
            return err(self.next + 1, "unexpected extra line");
        }
        Ok(())
    }
}

/// Upper bound on header counts, so a corrupted header cannot trigger a
/// huge allocation before the body is read.
const MAX_COUNT: usize = 1 << 20;

fn bounded(no: usize, x: usize, what: &str) -> Result<usize, ParseError> {
    if x > MAX_COUNT {
        return err(no, format!("{what} {x} is too large"));
    }
    Ok(x)
}

pub fn parse_latin(text: &str) -> Result<LatinSquare, ParseError> {
    let mut lines = Lines::new(text);
    let (no, h) = lines.fields(Some(1), "order")?;
    let n = bounded(no, h[0], "order")?;
    if n.checked_mul(n).is_none_or(|s| s > MAX_COUNT) {
        return err(no, format!("order {n} is too large"));
    }
    let mut cells = Vec::with_capacity(n * n);
    for r in 0..n {
        let (_, row) = lines.fields(Some(n), &format!("row {r}"))?;
        cells.extend(row);
    }
    lines.finish()?;
    LatinSquare::from_cells(n, cells).or_else(|e| err(1, e.to_string()))
}

pub fn write_latin(l: &LatinSquare) -> String {
    let mut s = format!("{}\n", l.order());
    for r in 0..l.order() {
        s.push_str(&join(l.row(r)));
        s.push('\n');
    }
    s
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = Lines::new(text);
    let (no, h) = lines.fields(Some(2), "header \"n m\"")?;
    let n = bounded(no, h[0], "vertex count")?;
    let m = bounded(no, h[1], "edge count")?;
    let mut edges = BTreeSet::new();
    for i in 0..m {
        let (no, e) = lines.fields(Some(2), &format!("edge {i}"))?;
        let (u, v) = (e[0], e[1]);
        if u >= v {
            return err(no, format!("edge {u} {v} is not written with u < v"));
        }
        if v >= n {
            return err(no, format!("vertex {v} is outside 0..{n}"));
        }
        if !edges.insert((u, v)) {
            return err(no, format!("edge {u} {v} is repeated"));
        }
    }
    lines.finish()?;
    Graph::from_edges(n, edges).or_else(|e| err(1, e.to_string()))
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn parse_design(text: &str) -> Result<SteinerDesign, ParseError> {
    let mut lines = Lines::new(text);
    let (no, h) = lines.fields(Some(4), "header \"v t k b\"")?;
    let v = bounded(no, h[0], "point count")?;
    let (t, k) = (h[1], h[2]);
    let b = bounded(no, h[3], "block count")?;
    if k > v {
        return err(no, format!("block size {k} exceeds point count {v}"));
    }
    let mut blocks = Vec::with_capacity(b);
    for i in 0..b {
        let (no, block) = lines.fields(Some(k), &format!("block {i}"))?;
        if block.windows(2).any(|w| w[0] >= w[1]) {
            return err(no, format!("block {i} is not strictly ascending"));
        }
        blocks.push(block);
    }
    lines.finish()?;
    SteinerDesign::new(v, t, k, blocks).or_else(|e| err(1, e.to_string()))
}

pub fn write_design(d: &SteinerDesign) -> String {
    let mut s = format!("{} {} {} {}\n", d.points(), d.strength(), d.block_size(), d.blocks().len());
    for block in d.blocks() {
        s.push_str(&join(block));
        s.push('\n');
    }
    s
}

pub fn parse_net(text: &str) -> Result<Net, ParseError> {
    let mut lines = Lines::new(text);
    let (no, h) = lines.fields(Some(2), "header \"n k\"")?;
    let n = bounded(no, h[0], "order")?;
    let k = bounded(no, h[1], "degree")?;
    if k > n + 1 {
        return err(no, format!("degree {k} exceeds n + 1"));
    }
    let mut classes: Vec<Vec<Vec<usize>>> = vec![Vec::new(); k];
    for i in 0..k * n {
        let (no, f) = lines.fields(Some(n + 1), &format!("line {i}"))?;
        let c = f[0];
        if c >= k {
            return err(no, format!("class {c} is outside 0..{k}"));
        }
        if classes[c].len() == n {
            return err(no, format!("class {c} already has {n} lines"));
        }
        classes[c].push(f[1..].to_vec());
    }
    lines.finish()?;
    Net::new(n, classes).or_else(|e| err(1, e.to_string()))
}

pub fn write_net(net: &Net) -> String {
    let mut s = format!("{} {}\n", net.order(), net.degree());
    for (c, class) in net.classes().iter().enumerate() {
        for line in class {
            let _ = writeln!(s, "{c} {}", join(line));
        }
    }
    s
}

pub fn join(xs: &[usize]) -> String {
    let mut s = String::new();
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x}");
    }
    s
}

/// A parsed file of any supported kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Latin(LatinSquare),
    Graph(Graph),
    Design(SteinerDesign),
    Net(Net),
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: unknown extension (expected .ls, .g, .sd or .net)")]
    Extension { path: String },
    #[error("{path}: expected a {want} file")]
    Kind { path: String, want: &'static str },
}

/// Reads a file and parses it according to its extension.
pub fn load(path: &Path) -> Result<Structure, LoadError> {
    let shown = path.display().to_string();
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let parse: fn(&str) -> Result<Structure, ParseError> = match ext {
        "ls" => |t| parse_latin(t).map(Structure::Latin),
        "g" => |t| parse_graph(t).map(Structure::Graph),
        "sd" => |t| parse_design(t).map(Structure::Design),
        "net" => |t| parse_net(t).map(Structure::Net),
        _ => return Err(LoadError::Extension { path: shown }),
    };
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: shown.clone(), source })?;
    parse(&text).map_err(|source| LoadError::Parse { path: shown, source })
}

pub fn load_latin(path: &Path) -> Result<LatinSquare, LoadError> {
    match load(path)? {
        Structure::Latin(l) => Ok(l),
        _ => Err(kind(path, "Latin square (.ls)")),
    }
}

pub fn load_graph(path: &Path) -> Result<Graph, LoadError> {
    match load(path)? {
        Structure::Graph(g) => Ok(g),
        _ => Err(kind(path, "graph (.g)")),
    }
}

pub fn load_design(path: &Path) -> Result<SteinerDesign, LoadError> {
    match load(path)? {
        Structure::Design(d) => Ok(d),
        _ => Err(kind(path, "design (.sd)")),
    }
}

pub fn load_net(path: &Path) -> Result<Net, LoadError> {
    match load(path)? {
        Structure::Net(n) => Ok(n),
        _ => Err(kind(path, "net (.net)")),
    }
}

fn kind(path: &Path, want: &'static str) -> LoadError {
    LoadError::Kind {
        path: path.display().to_string(),
        want,
    }
}
