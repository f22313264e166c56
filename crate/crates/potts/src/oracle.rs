//! Independent brute-force references for testing the engine: the subset
//! expansion of the partition function, direct colouring enumeration, and a
//! deletion-contraction recursion. All guarded to desk scale; these exist
//! for verification, not performance.

use crate::graph::Graph;
use crate::partition::Vertex;
use crate::weights::{Rational, Weight, WeightError, WeightMode};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("graph has {0} edges, above the subset-expansion guard of {1}")]
    TooManyEdges(usize, usize),
    #[error("colouring enumeration would visit ~{0:.0} assignments, above the 1e8 guard")]
    TooManyColourings(f64),
    #[error("deletion-contraction in univariate mode needs an integer v")]
    NonIntegerV,
    #[error(transparent)]
    Weight(#[from] WeightError),
}

const FK_EDGE_GUARD: usize = 24;
const DELCON_EDGE_GUARD: usize = 20;

/// A minor-producing operation on an edge, for building test instances of
/// the deletion-contraction identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorOp {
    Delete,
    Contract,
}

/// Counts, for every (|A|, k(A)) pair, the edge subsets A with that size
/// and component count. Everything the subset expansion needs, independent
/// of the weight mode.
fn subset_counts(g: &Graph) -> Result<Vec<Vec<u64>>, OracleError> {
    let m = g.n_edges();
    if m > FK_EDGE_GUARD {
        return Err(OracleError::TooManyEdges(m, FK_EDGE_GUARD));
    }
    let n = g.n_vertices();
    let mut counts = vec![vec![0_u64; n + 1]; m + 1];
    for mask in 0_u64..(1 << m) {
        let k = g.connected_components_with(|i| mask >> i & 1 == 1);
        counts[mask.count_ones() as usize][k] += 1;
    }
    Ok(counts)
}

/// The subset expansion: summing v^|A| Q^k(A) over all edge subsets A.
pub fn fk_brute_force(g: &Graph, mode: &WeightMode) -> Result<Weight, OracleError> {
    let counts = subset_counts(g)?;
    let m = g.n_edges();
    match mode {
        WeightMode::Bivariate => {
            let mut grid: Vec<Vec<BigInt>> = vec![Vec::new(); m + 1];
            for (a, row) in counts.iter().enumerate() {
                for (k, &c) in row.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    if grid[a].len() <= k {
                        grid[a].resize(k + 1, BigInt::zero());
                    }
                    grid[a][k] += c;
                }
            }
            Ok(Weight::Bivariate(grid)
                .add(&Weight::Bivariate(Vec::new()))
                .expect("normalising add"))
        }
        WeightMode::Univariate { v } => {
            // for v = num/den this is the den^M-scaled polynomial the engine
            // computes: sum over A of num^|A| den^(M-|A|) Q^k(A)
            let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); g.n_vertices() + 1];
            for (a, row) in counts.iter().enumerate() {
                let weight = v.num().pow(a as u32) * v.den().pow((m - a) as u32);
                for (k, &c) in row.iter().enumerate() {
                    if c != 0 {
                        coeffs[k] += &weight * c;
                    }
                }
            }
            Ok(Weight::Univariate(coeffs)
                .add(&Weight::Univariate(Vec::new()))
                .expect("normalising add"))
        }
        WeightMode::Modular { prime, v } => {
            let p = *prime;
            let (vn, vd) = v.reduce_mod(p)?;
            let powmod = |base: u32, exp: usize| -> u64 {
                let mut acc = 1_u64;
                for _ in 0..exp {
                    acc = acc * base as u64 % p as u64;
                }
                acc
            };
            let mut coeffs = vec![0_u64; g.n_vertices() + 1];
            for (a, row) in counts.iter().enumerate() {
                let w = powmod(vn, a) * powmod(vd, m - a) % p as u64;
                for (k, &c) in row.iter().enumerate() {
                    coeffs[k] = (coeffs[k] + w * (c % p as u64)) % p as u64;
                }
            }
            let mut coeffs: Vec<u32> = coeffs.into_iter().map(|c| c as u32).collect();
            while coeffs.last() == Some(&0) {
                coeffs.pop();
            }
            Ok(Weight::Modular { prime: p, coeffs })
        }
        WeightMode::Scalar { q, v } => {
            let mut z = 0.0_f64;
            for (a, row) in counts.iter().enumerate() {
                for (k, &c) in row.iter().enumerate() {
                    if c != 0 {
                        z += c as f64 * v.powi(a as i32) * q.powi(k as i32);
                    }
                }
            }
            Ok(Weight::Scalar(z))
        }
    }
}

/// Exact count of proper q-colourings by exhaustive assignment with early
/// pruning. Guarded to q^N <= 1e8.
pub fn colouring_count(g: &Graph, q: u32) -> Result<u64, OracleError> {
    let n = g.n_vertices();
    let budget = (q as f64).powi(n as i32);
    if budget > 1e8 {
        return Err(OracleError::TooManyColourings(budget));
    }
    if n == 0 {
        return Ok(1);
    }
    if q == 0 {
        return Ok(0);
    }
    // neighbours with smaller index, per vertex
    let mut back: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        let (lo, hi) = (u.min(v) as usize, u.max(v) as usize);
        back[hi].push(lo);
    }
    let mut colour = vec![0_u32; n];
    let mut count = 0_u64;
    let mut depth = 0_usize;
    colour[0] = 0;
    loop {
        let conflict = back[depth].iter().any(|&u| colour[u] == colour[depth]);
        if !conflict {
            if depth + 1 == n {
                count += 1;
            } else {
                depth += 1;
                colour[depth] = 0;
                continue;
            }
        }
        // advance, backtracking over exhausted positions
        loop {
            colour[depth] += 1;
            if colour[depth] < q {
                break;
            }
            if depth == 0 {
                return Ok(count);
            }
            depth -= 1;
        }
    }
}

/// A graph with one weight per edge, arising when contraction collapses
/// parallel edges: two parallels with weights a and b act like a single
/// edge of weight a + b + ab.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    pub n_vertices: usize,
    pub edges: Vec<(Vertex, Vertex, Weight)>,
}

impl WeightedGraph {
    /// Every edge carries the plain v of `mode`. Univariate mode requires an
    /// integer v, since a rational v is not a ring element here.
    pub fn from_graph(g: &Graph, mode: &WeightMode) -> Result<Self, OracleError> {
        let v_weight = base_edge_weight(mode)?;
        Ok(WeightedGraph {
            n_vertices: g.n_vertices(),
            edges: g
                .edges()
                .iter()
                .map(|&(u, v)| (u, v, v_weight.clone()))
                .collect(),
        })
    }
}

fn base_edge_weight(mode: &WeightMode) -> Result<Weight, OracleError> {
    Ok(match mode {
        WeightMode::Bivariate => {
            Weight::Bivariate(vec![Vec::new(), vec![BigInt::from(1)]]) // v
        }
        WeightMode::Univariate { v } => {
            if !v.is_integer() {
                return Err(OracleError::NonIntegerV);
            }
            Weight::Univariate(vec![v.num().clone()])
                .add(&Weight::Univariate(Vec::new()))
                .expect("normalising add")
        }
        WeightMode::Modular { prime, v } => {
            let (vn, vd) = v.reduce_mod(*prime)?;
            if vd != 1 {
                return Err(OracleError::NonIntegerV);
            }
            let coeffs = if vn == 0 { Vec::new() } else { vec![vn] };
            Weight::Modular {
                prime: *prime,
                coeffs,
            }
        }
        WeightMode::Scalar { v, .. } => Weight::Scalar(*v),
    })
}

/// Applies a minor operation. Contraction merges the endpoints, relabels the
/// last vertex into the gap, and collapses any parallel pairs that arise.
pub fn apply_minor(wg: &WeightedGraph, edge_index: usize, op: MinorOp) -> WeightedGraph {
    let (u, v, _) = wg.edges[edge_index].clone();
    match op {
        MinorOp::Delete => {
            let mut edges = wg.edges.clone();
            edges.remove(edge_index);
            WeightedGraph {
                n_vertices: wg.n_vertices,
                edges,
            }
        }
        MinorOp::Contract => {
            let (keep, gone) = (u.min(v), u.max(v));
            let last = (wg.n_vertices - 1) as Vertex;
            let rename = |x: Vertex| -> Vertex {
                if x == gone {
                    keep
                } else if x == last {
                    gone
                } else {
                    x
                }
            };
            let mut edges: Vec<(Vertex, Vertex, Weight)> = Vec::new();
            for (i, (a, b, w)) in wg.edges.iter().enumerate() {
                if i == edge_index {
                    continue;
                }
                let (mut x, mut y) = (rename(*a), rename(*b));
                if x > y {
                    std::mem::swap(&mut x, &mut y);
                }
                debug_assert_ne!(x, y, "self-loops cannot arise from simple inputs");
                if let Some(existing) = edges.iter_mut().find(|(p, q, _)| *p == x && *q == y) {
                    // parallel pair: w' = w1 + w2 + w1 w2
                    let combined = existing
                        .2
                        .add(w)
                        .and_then(|s| s.add(&existing.2.mul(w)?))
                        .expect("weights share a mode");
                    existing.2 = combined;
                } else {
                    edges.push((x, y, w.clone()));
                }
            }
            WeightedGraph {
                n_vertices: wg.n_vertices - 1,
                edges,
            }
        }
    }
}

/// Subset expansion for a weighted graph: sum over A of (prod of edge
/// weights in A) Q^k(A). The independent cross-check for contracted minors.
pub fn fk_weighted(wg: &WeightedGraph, mode: &WeightMode) -> Result<Weight, OracleError> {
    let m = wg.edges.len();
    if m > FK_EDGE_GUARD {
        return Err(OracleError::TooManyEdges(m, FK_EDGE_GUARD));
    }
    let mut z = Weight::zero(mode);
    for mask in 0_u64..(1 << m) {
        let mut dsu = crate::graph::Dsu::new(wg.n_vertices);
        let mut term = Weight::one(mode);
        for (i, (u, v, w)) in wg.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                dsu.union(*u as usize, *v as usize);
                term = term.mul(w)?;
            }
        }
        for _ in 0..dsu.count() {
            term = term.scale_q(mode);
        }
        z = z.add(&term)?;
    }
    Ok(z)
}

/// Deletion-contraction recursion: Z(G) = Z(G - e) + v_e Z(G / e), with
/// parallel edges collapsed on contraction. Guarded to 20 edges.
pub fn deletion_contraction(g: &Graph, mode: &WeightMode) -> Result<Weight, OracleError> {
    if g.n_edges() > DELCON_EDGE_GUARD {
        return Err(OracleError::TooManyEdges(g.n_edges(), DELCON_EDGE_GUARD));
    }
    let wg = WeightedGraph::from_graph(g, mode)?;
    delcon_recursive(&wg, mode)
}

fn delcon_recursive(wg: &WeightedGraph, mode: &WeightMode) -> Result<Weight, OracleError> {
    match wg.edges.first() {
        None => {
            let mut z = Weight::one(mode);
            for _ in 0..wg.n_vertices {
                z = z.scale_q(mode);
            }
            Ok(z)
        }
        Some((_, _, w)) => {
            let w = w.clone();
            let deleted = delcon_recursive(&apply_minor(wg, 0, MinorOp::Delete), mode)?;
            let contracted = delcon_recursive(&apply_minor(wg, 0, MinorOp::Contract), mode)?;
            Ok(deleted.add(&w.mul(&contracted)?)?)
        }
    }
}

/// Evaluates a univariate weight at integer Q, for cross-checks like
/// chi(q) = number of proper q-colourings.
pub fn eval_weight_at(w: &Weight, q: i64) -> Option<BigInt> {
    match w {
        Weight::Univariate(coeffs) => {
            Some(crate::weights::eval_univariate(coeffs, &BigInt::from(q)))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::nine_vertex_example;

    fn triangle() -> Graph {
        Graph::parse(b"3 3\n0 1\n1 2\n0 2\n").unwrap()
    }

    fn biv(grid: &[&[i64]]) -> Weight {
        let rows: Vec<Vec<BigInt>> = grid
            .iter()
            .map(|row| row.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        Weight::Bivariate(rows)
            .add(&Weight::Bivariate(Vec::new()))
            .unwrap()
    }

    #[test]
    fn fk_single_edge() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let z = fk_brute_force(&g, &WeightMode::Bivariate).unwrap();
        assert_eq!(z, biv(&[&[0, 0, 1], &[0, 1]]));
    }

    #[test]
    fn fk_triangle() {
        // Q^3 + 3vQ^2 + (3v^2 + v^3) Q
        let z = fk_brute_force(&triangle(), &WeightMode::Bivariate).unwrap();
        assert_eq!(z, biv(&[&[0, 0, 0, 1], &[0, 0, 3], &[0, 3], &[0, 1]]));
    }

    #[test]
    fn fk_empty_graph() {
        let g = Graph::new(4, vec![]).unwrap();
        let z = fk_brute_force(&g, &WeightMode::Bivariate).unwrap();
        assert_eq!(z, biv(&[&[0, 0, 0, 0, 1]]));
    }

    #[test]
    fn fk_guard() {
        let g = Graph::random_planar(12, 0).unwrap();
        if g.n_edges() > FK_EDGE_GUARD {
            assert!(matches!(
                fk_brute_force(&g, &WeightMode::Bivariate),
                Err(OracleError::TooManyEdges(_, _))
            ));
        }
        let k5_ish = Graph::new(
            8,
            (0..8)
                .flat_map(|a| (a + 1..8).map(move |b| (a as Vertex, b as Vertex)))
                .collect(),
        )
        .unwrap();
        assert!(matches!(
            fk_brute_force(&k5_ish, &WeightMode::Bivariate),
            Err(OracleError::TooManyEdges(28, 24))
        ));
    }

    #[test]
    fn colouring_examples() {
        assert_eq!(colouring_count(&triangle(), 3).unwrap(), 6);
        assert_eq!(colouring_count(&triangle(), 2).unwrap(), 0);
        assert_eq!(colouring_count(&triangle(), 0).unwrap(), 0);
        let empty = Graph::new(3, vec![]).unwrap();
        assert_eq!(colouring_count(&empty, 2).unwrap(), 8);
        assert!(matches!(
            colouring_count(&Graph::new(40, vec![]).unwrap(), 10),
            Err(OracleError::TooManyColourings(_))
        ));
    }

    #[test]
    fn colouring_matches_fk_at_minus_one() {
        let g = nine_vertex_example();
        let chi = fk_brute_force(
            &g,
            &WeightMode::Univariate {
                v: Rational::from_integer(-1),
            },
        )
        .unwrap();
        for q in 0..=4 {
            assert_eq!(
                eval_weight_at(&chi, q).unwrap(),
                BigInt::from(colouring_count(&g, q as u32).unwrap()),
                "q={q}"
            );
        }
    }

    #[test]
    fn delcon_matches_fk() {
        let mode = WeightMode::Bivariate;
        assert_eq!(
            deletion_contraction(&triangle(), &mode).unwrap(),
            fk_brute_force(&triangle(), &mode).unwrap()
        );
        let k2 = Graph::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(
            deletion_contraction(&k2, &mode).unwrap(),
            fk_brute_force(&k2, &mode).unwrap()
        );
        let g = nine_vertex_example();
        assert_eq!(
            deletion_contraction(&g, &mode).unwrap(),
            fk_brute_force(&g, &mode).unwrap()
        );
    }

    #[test]
    fn delcon_tree_closed_form() {
        // star on 5 vertices: Z = Q (Q + v)^4
        let star = Graph::new(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let z = deletion_contraction(&star, &WeightMode::Bivariate).unwrap();
        let q_plus_v = biv(&[&[0, 1], &[1]]);
        let mut expected = biv(&[&[0, 1]]);
        for _ in 0..4 {
            expected = expected.mul(&q_plus_v).unwrap();
        }
        assert_eq!(z, expected);
    }

    #[test]
    fn contraction_collapses_parallels() {
        // contracting one triangle edge leaves a single doubled edge:
        // K2 with weight 2v + v^2
        let wg = WeightedGraph::from_graph(&triangle(), &WeightMode::Bivariate).unwrap();
        let contracted = apply_minor(&wg, 0, MinorOp::Contract);
        assert_eq!(contracted.n_vertices, 2);
        assert_eq!(contracted.edges.len(), 1);
        assert_eq!(contracted.edges[0].2, biv(&[&[], &[2], &[1]]));
        // and the weighted expansion agrees with the identity
        let z_full = fk_brute_force(&triangle(), &WeightMode::Bivariate).unwrap();
        let z_del = fk_weighted(
            &apply_minor(&wg, 0, MinorOp::Delete),
            &WeightMode::Bivariate,
        )
        .unwrap();
        let z_con = fk_weighted(&contracted, &WeightMode::Bivariate).unwrap();
        let v = biv(&[&[], &[1]]);
        assert_eq!(z_full, z_del.add(&v.mul(&z_con).unwrap()).unwrap());
    }

    #[test]
    fn delcon_guard_and_noninteger_v() {
        let g = Graph::random_planar(10, 3).unwrap();
        if g.n_edges() > DELCON_EDGE_GUARD {
            assert!(deletion_contraction(&g, &WeightMode::Bivariate).is_err());
        }
        let half = WeightMode::Univariate {
            v: Rational::parse("1/2").unwrap(),
        };
        assert!(matches!(
            deletion_contraction(&triangle(), &half),
            Err(OracleError::NonIntegerV)
        ));
    }

    #[test]
    fn scalar_fk_example() {
        // triangle at (Q, v) = (2, 1): Q^3 + 3Q^2 + 3Q + Q = 28
        let z = fk_brute_force(&triangle(), &WeightMode::Scalar { q: 2.0, v: 1.0 }).unwrap();
        assert_eq!(z, Weight::Scalar(28.0));
    }
}
