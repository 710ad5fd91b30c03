//! Finite connected simple graphs with cached all-pairs distances.
//!
//! A graph here is always the *factor* of a Cartesian product power: small
//! (desk-scale), connected, undirected, no loops or multi-edges. Construction
//! validates all of that once; afterwards the BFS distance table and the
//! distance-k matrices are cheap lookups.
//!
//! Vertex numbering for the built-in families:
//! - `K:d` — complete graph on vertices `0..d`, `d >= 2`
//! - `P:n` — path `0 - 1 - ... - n-1`, `n >= 2`
//! - `C:n` — cycle `0 - 1 - ... - n-1 - 0`, `n >= 3`
//! - `S:n` — star with center `0` and leaves `1..=n`, `n >= 1` (leaf count)

use crate::matrix::IntSymMatrix;
use crate::Rational;
use num_bigint::BigInt;
use std::collections::VecDeque;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(u32, u32),
    #[error("line {line}: expected an integer, found {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: expected \"u v\", found {found:?}")]
    BadEdgeLine { line: usize, found: String },
    #[error("vertex {vertex} out of range for declared vertex count {count}")]
    VertexOutOfRange { vertex: u32, count: u32 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("need at least 2 vertices, got {0}")]
    TooFewVertices(u32),
    #[error("unknown family tag {0:?} (expected K:d, P:n, C:n or S:n)")]
    UnknownFamily(String),
    #[error("family {tag}: parameter must be at least {min}")]
    FamilyParamTooSmall { tag: String, min: u32 },
}

/// All-pairs shortest-path distances of a connected graph, from BFS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: u32,
    d: Vec<u32>,
    diameter: u32,
}

impl DistanceTable {
    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn get(&self, x: u32, y: u32) -> u32 {
        self.d[x as usize * self.n as usize + y as usize]
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }
}

/// Connected simple undirected graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    /// Sorted, each stored as (u, v) with u < v.
    edges: Vec<(u32, u32)>,
    dist: DistanceTable,
}

impl Graph {
    /// Validates and builds: range checks, no loops, no duplicates,
    /// connectivity, at least two vertices.
    pub fn new(
        vertex_count: u32,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self, GraphError> {
        // Diagnose malformed edges before complaining about the count, so a
        // lone self-loop line is reported as what it is.
        let mut norm: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            norm.push((a.min(b), a.max(b)));
        }
        if vertex_count < 2 {
            return Err(GraphError::TooFewVertices(vertex_count));
        }
        for &(a, b) in &norm {
            if b >= vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    vertex: if a >= vertex_count { a } else { b },
                    count: vertex_count,
                });
            }
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let dist = bfs_all_pairs(vertex_count, &norm)?;
        Ok(Graph {
            n: vertex_count,
            edges: norm,
            dist,
        })
    }

    /// Parses an edge list: one `u v` pair per line, `#` starts a comment,
    /// an optional `n <count>` header fixes the vertex count (otherwise it is
    /// `max index + 1`).
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut declared: Option<u32> = None;
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut max_seen: Option<u32> = None;
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw_line.find('#') {
                Some(p) => &raw_line[..p],
                None => raw_line,
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            if toks[0] == "n" && declared.is_none() && edges.is_empty() {
                if toks.len() != 2 {
                    return Err(GraphError::BadEdgeLine {
                        line: line_no,
                        found: line.trim().to_string(),
                    });
                }
                declared = Some(parse_tok(line_no, toks[1])?);
                continue;
            }
            if toks.len() != 2 {
                return Err(GraphError::BadEdgeLine {
                    line: line_no,
                    found: line.trim().to_string(),
                });
            }
            let u = parse_tok(line_no, toks[0])?;
            let v = parse_tok(line_no, toks[1])?;
            max_seen = Some(max_seen.unwrap_or(0).max(u).max(v));
            edges.push((u, v));
        }
        let count = match declared {
            Some(c) => c,
            None => match max_seen {
                Some(m) => m + 1,
                None => 0,
            },
        };
        Graph::new(count, edges)
    }

    /// Builds one of the named families from a `letter:param` tag.
    pub fn family(tag: &str) -> Result<Self, GraphError> {
        let (letter, param) = match tag.split_once(':') {
            Some((l, p)) => (l, p),
            None => return Err(GraphError::UnknownFamily(tag.to_string())),
        };
        let p: u32 = param
            .parse()
            .map_err(|_| GraphError::UnknownFamily(tag.to_string()))?;
        let too_small = |min: u32| GraphError::FamilyParamTooSmall {
            tag: tag.to_string(),
            min,
        };
        match letter {
            "K" => {
                if p < 2 {
                    return Err(too_small(2));
                }
                let edges = (0..p).flat_map(|a| (a + 1..p).map(move |b| (a, b)));
                Graph::new(p, edges)
            }
            "P" => {
                if p < 2 {
                    return Err(too_small(2));
                }
                Graph::new(p, (0..p - 1).map(|a| (a, a + 1)))
            }
            "C" => {
                if p < 3 {
                    return Err(too_small(3));
                }
                Graph::new(p, (0..p).map(|a| (a, (a + 1) % p)))
            }
            "S" => {
                if p < 1 {
                    return Err(too_small(1));
                }
                Graph::new(p + 1, (1..=p).map(|l| (0, l)))
            }
            _ => Err(GraphError::UnknownFamily(tag.to_string())),
        }
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.len() as u64
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn distances(&self) -> &DistanceTable {
        &self.dist
    }

    pub fn diameter(&self) -> u32 {
        self.dist.diameter()
    }

    pub fn adjacency(&self) -> IntSymMatrix {
        self.distance_k_matrix(1)
    }

    /// The 0/1 matrix with a one exactly where the graph distance equals `k`.
    /// `k = 0` gives the identity; `k > diameter` gives the zero matrix.
    pub fn distance_k_matrix(&self, k: u32) -> IntSymMatrix {
        let n = self.n as usize;
        IntSymMatrix::from_fn(n, |i, j| {
            if self.dist.get(i as u32, j as u32) == k {
                1
            } else {
                0
            }
        })
    }

    /// Mean degree `2|E| / |V|`, which is also the normalized trace of the
    /// squared adjacency.
    pub fn mean_degree(&self) -> Rational {
        Rational::new(BigInt::from(2 * self.edge_count()), BigInt::from(self.n))
    }
}

fn parse_tok(line: usize, tok: &str) -> Result<u32, GraphError> {
    tok.parse().map_err(|_| GraphError::BadToken {
        line,
        token: tok.to_string(),
    })
}

fn bfs_all_pairs(n: u32, edges: &[(u32, u32)]) -> Result<DistanceTable, GraphError> {
    let nu = n as usize;
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); nu];
    for &(a, b) in edges {
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    let mut d = vec![u32::MAX; nu * nu];
    let mut diameter = 0;
    let mut queue = VecDeque::new();
    for s in 0..nu {
        let row = &mut d[s * nu..(s + 1) * nu];
        row[s] = 0;
        queue.clear();
        queue.push_back(s as u32);
        while let Some(x) = queue.pop_front() {
            let dx = row[x as usize];
            for &y in &adj[x as usize] {
                if row[y as usize] == u32::MAX {
                    row[y as usize] = dx + 1;
                    queue.push_back(y);
                }
            }
        }
        for &v in row.iter() {
            if v == u32::MAX {
                return Err(GraphError::Disconnected);
            }
            diameter = diameter.max(v);
        }
    }
    Ok(DistanceTable { n, d, diameter })
}
