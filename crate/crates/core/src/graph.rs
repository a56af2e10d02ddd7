//! Simple undirected graphs with contiguous vertex ids, edge-list I/O and
//! the named generator families.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Immutable simple undirected graph.
///
/// Vertices are `0..n`. Edges carry ids `0..m` in insertion order and are
/// stored with the smaller endpoint first.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
    edge_index: HashMap<(usize, usize), usize>,
    labels: Vec<String>,
    duplicates: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges collapse (and are
    /// counted); self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::build(n, edges, labels)
    }

    fn build<I>(n: usize, edges: I, labels: Vec<String>) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n < 2 {
            return Err(Error::TooSmall { found: n });
        }
        let mut list = Vec::new();
        let mut edge_index = HashMap::new();
        let mut duplicates = 0;
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            if a == b {
                return Err(Error::SelfLoop {
                    line: 0,
                    label: labels[a].clone(),
                });
            }
            let key = (a.min(b), a.max(b));
            if edge_index.contains_key(&key) {
                duplicates += 1;
                continue;
            }
            edge_index.insert(key, list.len());
            list.push(key);
        }
        let mut adjacency = vec![Vec::new(); n];
        for (id, &(a, b)) in list.iter().enumerate() {
            adjacency[a].push((b, id));
            adjacency[b].push((a, id));
        }
        for row in &mut adjacency {
            row.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adjacency,
            edge_index,
            labels,
            duplicates,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, indexed by edge id.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    /// `(neighbor, edge id)` pairs sorted by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    /// Original label of vertex `v` (its decimal id for generated graphs).
    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of duplicate edges dropped during construction.
    pub fn duplicate_edges(&self) -> usize {
        self.duplicates
    }

    /// First vertex (in id order) that a BFS from vertex 0 does not reach.
    pub fn first_unreachable(&self) -> Option<usize> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter().position(|&s| !s)
    }

    pub fn is_connected(&self) -> bool {
        self.first_unreachable().is_none()
    }

    /// Fails with [`Error::NotConnected`] naming an unreachable vertex.
    pub fn require_connected(&self) -> Result<()> {
        match self.first_unreachable() {
            None => Ok(()),
            Some(vertex) => Err(Error::NotConnected {
                vertex,
                label: self.labels[vertex].clone(),
            }),
        }
    }

    /// Writes one `u v` line per edge, in edge-id order.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> io::Result<()> {
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn to_edge_list(&self) -> String {
        let mut buf = Vec::new();
        self.write_edge_list(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("edge list is ASCII")
    }
}

/// Parses a whitespace-separated edge list.
///
/// One edge per line; blank lines and lines starting with `#` are skipped.
/// Labels are arbitrary tokens interned to ids in first-appearance order.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected 2 vertex labels, found {}", tokens.len()),
            });
        }
        if tokens[0] == tokens[1] {
            return Err(Error::SelfLoop {
                line,
                label: tokens[0].to_string(),
            });
        }
        let mut intern = |tok| {
            *ids.entry(tok).or_insert_with(|| {
                labels.push(tok.to_string());
                labels.len() - 1
            })
        };
        let a = intern(tokens[0]);
        let b = intern(tokens[1]);
        edges.push((a, b));
    }
    let n = labels.len();
    if n < 2 {
        return Err(Error::TooSmall { found: n });
    }
    Graph::build(n, edges, labels)
}

/// Named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphFamily {
    Complete { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Star { n: usize },
    Petersen,
    ErdosRenyi { n: usize, p: f64, seed: u64 },
}

/// Resampling budget for connected G(n, p) draws.
pub const ER_MAX_ATTEMPTS: usize = 1000;

impl GraphFamily {
    /// Builds a family from its CLI name and parameters.
    pub fn from_name(name: &str, n: usize, p: f64, seed: u64) -> Result<Self> {
        let family = match name {
            "complete" => GraphFamily::Complete { n },
            "path" => GraphFamily::Path { n },
            "cycle" => GraphFamily::Cycle { n },
            "star" => GraphFamily::Star { n },
            "petersen" => GraphFamily::Petersen,
            "erdos_renyi" | "gnp" => GraphFamily::ErdosRenyi { n, p, seed },
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown graph family `{other}`"
                )))
            }
        };
        family.validate()?;
        Ok(family)
    }

    pub fn validate(&self) -> Result<()> {
        let n = match *self {
            GraphFamily::Petersen => return Ok(()),
            GraphFamily::Cycle { n } if n < 3 => {
                return Err(Error::InvalidParameter(format!(
                    "cycle needs n >= 3, got {n}"
                )))
            }
            GraphFamily::ErdosRenyi { p, .. } if !(p > 0.0 && p <= 1.0) => {
                return Err(Error::InvalidParameter(format!(
                    "edge probability must lie in (0, 1], got {p}"
                )))
            }
            GraphFamily::Complete { n }
            | GraphFamily::Path { n }
            | GraphFamily::Cycle { n }
            | GraphFamily::Star { n }
            | GraphFamily::ErdosRenyi { n, .. } => n,
        };
        if n < 2 {
            return Err(Error::TooSmall { found: n });
        }
        Ok(())
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphFamily::Complete { n } => write!(f, "complete(n={n})"),
            GraphFamily::Path { n } => write!(f, "path(n={n})"),
            GraphFamily::Cycle { n } => write!(f, "cycle(n={n})"),
            GraphFamily::Star { n } => write!(f, "star(n={n})"),
            GraphFamily::Petersen => write!(f, "petersen"),
            GraphFamily::ErdosRenyi { n, p, seed } => {
                write!(f, "erdos_renyi(n={n},p={p},seed={seed})")
            }
        }
    }
}

/// Generates a member of `family`.
pub fn generate(family: GraphFamily) -> Result<Graph> {
    family.validate()?;
    match family {
        GraphFamily::Complete { n } => {
            let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, edges)
        }
        GraphFamily::Path { n } => Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))),
        GraphFamily::Cycle { n } => {
            Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1)).chain([(n - 1, 0)]))
        }
        GraphFamily::Star { n } => Graph::from_edges(n, (1..n).map(|i| (0, i))),
        GraphFamily::Petersen => {
            let outer = (0..5).map(|i| (i, (i + 1) % 5));
            let spokes = (0..5).map(|i| (i, i + 5));
            let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
            Graph::from_edges(10, outer.chain(spokes).chain(inner))
        }
        GraphFamily::ErdosRenyi { n, p, seed } => erdos_renyi_connected(n, p, seed),
    }
}

fn erdos_renyi_connected(n: usize, p: f64, seed: u64) -> Result<Graph> {
    for attempt in 0..ER_MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, attempt as u64));
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::DisconnectedSample {
        attempts: ER_MAX_ATTEMPTS,
    })
}

/// splitmix64 step; attempt 0 uses the caller's seed unchanged.
fn derive_seed(seed: u64, attempt: u64) -> u64 {
    if attempt == 0 {
        return seed;
    }
    let mut z = seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
