//! Simple undirected graphs: validation, edge-list text IO, connected
//! components over edge subsets, and a seeded random planar generator for
//! ensemble experiments.

use crate::partition::Vertex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("endpoint {0} out of range for {1} vertices")]
    EndpointOutOfRange(Vertex, usize),
    #[error("need at least 3 vertices for the planar generator, got {0}")]
    TooFewVertices(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("input is not valid UTF-8")]
    NotUtf8,
    #[error("malformed header, expected `N M`")]
    MalformedHeader,
    #[error("malformed edge line, expected `u v`")]
    MalformedEdge,
    #[error("endpoint {0} out of range for {1} vertices")]
    EndpointOutOfRange(Vertex, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("expected {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
}

/// A simple undirected graph: no self-loops, no parallel edges, endpoints
/// 0-indexed. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    /// Validates and normalises an edge list. Edge endpoints are stored with
    /// the smaller vertex first; input order is preserved otherwise.
    pub fn new(n_vertices: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut normalised = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w as usize >= n_vertices {
                    return Err(GraphError::EndpointOutOfRange(w, n_vertices));
                }
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            normalised.push(e);
        }
        Ok(Graph {
            n_vertices,
            edges: normalised,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let e = (u.min(v), u.max(v));
        self.edges.contains(&e)
    }

    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n_vertices];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        adj
    }

    /// Parses the edge-list text format: header `N M`, then M lines `u v`.
    /// Lines starting with `#` are comments. Errors carry 1-based line
    /// numbers.
    pub fn parse(input: &[u8]) -> Result<Self, GraphError> {
        let text = std::str::from_utf8(input).map_err(|_| GraphError::Parse {
            line: 0,
            kind: ParseErrorKind::NotUtf8,
        })?;
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|&(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            kind: ParseErrorKind::MalformedHeader,
        })?;
        let mut it = header.split_whitespace();
        let parse_count = |tok: Option<&str>| tok.and_then(|t| t.parse::<usize>().ok());
        let (n, m) = match (parse_count(it.next()), parse_count(it.next()), it.next()) {
            (Some(n), Some(m), None) => (n, m),
            _ => {
                return Err(GraphError::Parse {
                    line: header_line,
                    kind: ParseErrorKind::MalformedHeader,
                })
            }
        };

        let mut edges = Vec::with_capacity(m);
        let mut seen = HashSet::with_capacity(m);
        let mut last_line = header_line;
        for (line, content) in lines {
            last_line = line;
            if edges.len() == m {
                return Err(GraphError::Parse {
                    line,
                    kind: ParseErrorKind::EdgeCountMismatch {
                        expected: m,
                        found: m + 1,
                    },
                });
            }
            let mut it = content.split_whitespace();
            let parse_v = |tok: Option<&str>| tok.and_then(|t| t.parse::<Vertex>().ok());
            let (u, v) = match (parse_v(it.next()), parse_v(it.next()), it.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => {
                    return Err(GraphError::Parse {
                        line,
                        kind: ParseErrorKind::MalformedEdge,
                    })
                }
            };
            for w in [u, v] {
                if w as usize >= n {
                    return Err(GraphError::Parse {
                        line,
                        kind: ParseErrorKind::EndpointOutOfRange(w, n),
                    });
                }
            }
            if u == v {
                return Err(GraphError::Parse {
                    line,
                    kind: ParseErrorKind::SelfLoop(u),
                });
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::Parse {
                    line,
                    kind: ParseErrorKind::DuplicateEdge(e.0, e.1),
                });
            }
            edges.push(e);
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: last_line,
                kind: ParseErrorKind::EdgeCountMismatch {
                    expected: m,
                    found: edges.len(),
                },
            });
        }
        Ok(Graph {
            n_vertices: n,
            edges,
        })
    }

    /// Inverse of [`Graph::parse`] up to comments and whitespace.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.n_vertices, self.edges.len()).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Number of connected components of the spanning subgraph keeping the
    /// edges whose indices satisfy `active`. Isolated vertices count.
    pub fn connected_components_with(&self, active: impl Fn(usize) -> bool) -> usize {
        let mut dsu = Dsu::new(self.n_vertices);
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if active(i) {
                dsu.union(u as usize, v as usize);
            }
        }
        dsu.count()
    }

    pub fn connected_components(&self) -> usize {
        self.connected_components_with(|_| true)
    }

    pub fn is_connected(&self) -> bool {
        self.n_vertices <= 1 || self.connected_components() == 1
    }

    /// Splits the graph into connected components. Each component comes with
    /// its vertices relabelled to 0..k and the original ids of its vertices.
    pub fn components(&self) -> Vec<(Graph, Vec<Vertex>)> {
        let mut dsu = Dsu::new(self.n_vertices);
        for &(u, v) in &self.edges {
            dsu.union(u as usize, v as usize);
        }
        let roots: Vec<usize> = (0..self.n_vertices).map(|v| dsu.find(v)).collect();
        let order: Vec<usize> = {
            let mut uniq = roots.clone();
            uniq.sort_unstable();
            uniq.dedup();
            uniq
        };
        let index_of = |r: usize| order.binary_search(&r).unwrap();
        let mut vertex_lists: Vec<Vec<Vertex>> = vec![Vec::new(); order.len()];
        let mut local_id: Vec<Vertex> = vec![0; self.n_vertices];
        for v in 0..self.n_vertices {
            let c = index_of(roots[v]);
            local_id[v] = vertex_lists[c].len() as Vertex;
            vertex_lists[c].push(v as Vertex);
        }
        let mut edge_lists: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); order.len()];
        for &(u, v) in &self.edges {
            let c = index_of(dsu.find(u as usize));
            edge_lists[c].push((local_id[u as usize], local_id[v as usize]));
        }
        vertex_lists
            .into_iter()
            .zip(edge_lists)
            .map(|(vs, es)| {
                let g = Graph::new(vs.len(), es).expect("component of a valid graph");
                (g, vs)
            })
            .collect()
    }

    /// Seeded random connected planar graph on `n >= 3` vertices.
    ///
    /// Construction: grow a triangulation by dropping each new vertex into a
    /// uniformly chosen face (giving |E| = 3n-6), then delete each edge
    /// independently with probability 1/3, and restore the edges of a
    /// spanning tree of the triangulation if connectivity broke. Not a
    /// uniform sampler, but reproducible for a fixed seed.
    pub fn random_planar(n: usize, seed: u64) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::TooFewVertices(n));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // inner and outer face of the starting triangle
        let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 1, 2]];
        let mut edges: Vec<(Vertex, Vertex)> = vec![(0, 1), (0, 2), (1, 2)];
        for v in 3..n as Vertex {
            let f = rng.gen_range(0..faces.len());
            let [a, b, c] = faces[f];
            faces[f] = [a, b, v];
            faces.push([b, c, v]);
            faces.push([a, c, v]);
            edges.push((a, v));
            edges.push((b, v));
            edges.push((c, v));
        }
        let keep: Vec<bool> = edges.iter().map(|_| rng.gen::<f64>() >= 1.0 / 3.0).collect();

        let mut dsu = Dsu::new(n);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if keep[i] {
                dsu.union(u as usize, v as usize);
            }
        }
        let mut kept: Vec<(Vertex, Vertex)> = edges
            .iter()
            .zip(&keep)
            .filter(|&(_, &k)| k)
            .map(|(&e, _)| e)
            .collect();
        if dsu.count() > 1 {
            // spanning tree of the full triangulation, restored where missing
            let mut tree_dsu = Dsu::new(n);
            for &(u, v) in &edges {
                if tree_dsu.union(u as usize, v as usize) {
                    let have = kept.contains(&(u, v));
                    if !have {
                        kept.push((u, v));
                    }
                }
            }
        }
        Graph::new(n, kept)
    }
}

/// Plain union-find with path halving.
pub(crate) struct Dsu {
    parent: Vec<usize>,
    components: usize,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the two elements were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        self.components -= 1;
        true
    }

    pub fn count(&self) -> usize {
        self.components
    }
}

/// The 9-vertex, 12-edge worked example used across the test suite.
pub fn nine_vertex_example() -> Graph {
    Graph::parse(b"9 12\n0 2\n0 1\n1 3\n3 7\n7 8\n8 4\n4 6\n6 5\n5 2\n2 3\n3 4\n4 2\n").unwrap()
}
