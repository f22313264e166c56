//! Tree and path decompositions, validity checking, and per-bag schedules.
//!
//! A tree decomposition organises vertex subsets (bags) as a tree such that
//! (i) every vertex appears in some bag, (ii) every edge has a bag containing
//! both endpoints, and (iii) the bags containing any one vertex form a
//! connected subtree. The transfer matrix processes the bags in post-order;
//! the [`Schedule`] fixes, per bag, which daughters fuse in which order,
//! which vertices enter and leave scope, which graph edges are applied, and
//! what each edge application may prune against.

use crate::graph::{Dsu, Graph};
use crate::partition::{count_states, Vertex};
use num_bigint::BigUint;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeDecompError {
    #[error("graph is disconnected; decompose per component")]
    Disconnected,
    #[error("vertex order is not a permutation of the graph vertices")]
    NotAPermutation,
    #[error("invalid decomposition: {0}")]
    Invalid(Violation),
    #[error("bag index {0} out of range")]
    BagIndexOutOfRange(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// First violation found when checking a decomposition against a graph.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Violation {
    #[error("vertex {0} is in no bag")]
    VertexUncovered(Vertex),
    #[error("edge ({0}, {1}) has no bag containing both endpoints")]
    EdgeUncovered(Vertex, Vertex),
    #[error("bags containing vertex {0} do not form a connected subtree")]
    VertexBagsDisconnected(Vertex),
    #[error("bag structure is not a tree: {0}")]
    NotATree(String),
    #[error("bag {bag} contains vertex {vertex}, outside the graph")]
    BagVertexOutOfRange { bag: usize, vertex: Vertex },
}

/// Bags organised as a tree, with a designated root bag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Each bag sorted ascending.
    pub bags: Vec<Vec<Vertex>>,
    pub tree_edges: Vec<(usize, usize)>,
    pub root: usize,
}

impl TreeDecomposition {
    pub fn n_max(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.n_max().saturating_sub(1)
    }

    fn bag_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree_edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

/// How to choose the root bag when building a schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootChoice {
    /// Use the decomposition's stored root.
    Keep,
    Bag(usize),
    /// Pick the root minimising the worst-case cost estimate.
    Auto,
}

/// Per-bag processing plan, produced by [`build_schedule`].
#[derive(Clone, Debug, Default)]
pub struct BagPlan {
    /// Daughters in the order their states fuse.
    pub fuse_order: Vec<usize>,
    /// Vertices entering scope at this bag, ascending.
    pub insert_set: Vec<Vertex>,
    /// Graph edges applied at this bag, in input-edge order.
    pub edge_plan: Vec<(Vertex, Vertex)>,
    /// Vertices leaving scope before passing to the parent, ascending.
    pub delete_set: Vec<Vertex>,
    /// For each edge_plan position: the edges still to be processed in this
    /// bag, plus every edge processed in the parent bag.
    pub prune_lookahead: Vec<Vec<(Vertex, Vertex)>>,
}

/// A complete processing order over a rooted decomposition.
#[derive(Clone, Debug)]
pub struct Schedule {
    /// Post-order over bag indices; the root comes last.
    pub order: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    pub plans: Vec<BagPlan>,
    pub root: usize,
}

impl Schedule {
    /// Number of binary fusions: the sum of (daughters - 1) over bags with
    /// at least one daughter.
    pub fn fusion_count(&self) -> usize {
        self.plans
            .iter()
            .map(|p| p.fuse_order.len().saturating_sub(1))
            .sum()
    }
}

/// Checks properties (i)-(iii) and tree-ness, reporting the first violation.
pub fn verify_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<(), Violation> {
    let b = td.bags.len();
    if b == 0 {
        return Err(Violation::NotATree("no bags".into()));
    }
    if td.root >= b {
        return Err(Violation::NotATree(format!(
            "root {} out of range for {} bags",
            td.root, b
        )));
    }
    if td.tree_edges.len() != b - 1 {
        return Err(Violation::NotATree(format!(
            "{} bags need {} tree edges, found {}",
            b,
            b - 1,
            td.tree_edges.len()
        )));
    }
    let mut dsu = Dsu::new(b);
    for &(x, y) in &td.tree_edges {
        if x >= b || y >= b {
            return Err(Violation::NotATree(format!(
                "tree edge ({x}, {y}) out of range"
            )));
        }
        if !dsu.union(x, y) {
            return Err(Violation::NotATree(format!(
                "tree edge ({x}, {y}) closes a cycle"
            )));
        }
    }
    if dsu.count() != 1 {
        return Err(Violation::NotATree("bag tree is disconnected".into()));
    }

    let n = g.n_vertices();
    for (bag_idx, bag) in td.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|&&v| v as usize >= n) {
            return Err(Violation::BagVertexOutOfRange {
                bag: bag_idx,
                vertex: v,
            });
        }
    }
    let contains = |bag: &Vec<Vertex>, v: Vertex| bag.binary_search(&v).is_ok();

    // (i)
    let mut covered = vec![false; n];
    for bag in &td.bags {
        for &v in bag {
            covered[v as usize] = true;
        }
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        return Err(Violation::VertexUncovered(v as Vertex));
    }
    // (ii)
    for &(u, v) in g.edges() {
        if !td.bags.iter().any(|b| contains(b, u) && contains(b, v)) {
            return Err(Violation::EdgeUncovered(u, v));
        }
    }
    // (iii): the bags holding v induce a forest; connected iff edge count is
    // bag count minus one
    for v in 0..n as Vertex {
        let holding = td.bags.iter().filter(|b| contains(b, v)).count();
        let internal = td
            .tree_edges
            .iter()
            .filter(|&&(x, y)| contains(&td.bags[x], v) && contains(&td.bags[y], v))
            .count();
        if internal + 1 != holding {
            return Err(Violation::VertexBagsDisconnected(v));
        }
    }
    Ok(())
}

/// Min-fill elimination heuristic.
///
/// Repeatedly eliminates the vertex whose neighbourhood needs the fewest
/// fill edges to become a clique (ties: smaller current degree, then smaller
/// id), turning that neighbourhood into a clique. The bag of an eliminated
/// vertex is itself plus its neighbours at elimination time, attached to the
/// bag of its earliest-eliminated neighbour.
pub fn greedy_fill_in(g: &Graph) -> Result<TreeDecomposition, TreeDecompError> {
    greedy_fill_in_with_order(g).map(|(td, _)| td)
}

/// The elimination order chosen by [`greedy_fill_in`]: bag `i` of its
/// decomposition is the bag created when the `i`-th vertex was eliminated.
pub fn greedy_elimination_order(g: &Graph) -> Result<Vec<Vertex>, TreeDecompError> {
    greedy_fill_in_with_order(g).map(|(_, order)| order)
}

fn greedy_fill_in_with_order(
    g: &Graph,
) -> Result<(TreeDecomposition, Vec<Vertex>), TreeDecompError> {
    if g.n_vertices() == 0 || !g.is_connected() {
        return Err(TreeDecompError::Disconnected);
    }
    let n = g.n_vertices();
    let mut adj: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); n];
    for &(u, v) in g.edges() {
        adj[u as usize].insert(v);
        adj[v as usize].insert(u);
    }
    let mut alive: BTreeSet<Vertex> = (0..n as Vertex).collect();
    let mut bags: Vec<Vec<Vertex>> = Vec::with_capacity(n);
    let mut neighbour_sets: Vec<Vec<Vertex>> = Vec::with_capacity(n);
    let mut elim_index: Vec<usize> = vec![usize::MAX; n];
    let mut order: Vec<Vertex> = Vec::with_capacity(n);

    for step in 0..n {
        let mut best: Option<(usize, usize, Vertex)> = None;
        for &v in &alive {
            let nb = &adj[v as usize];
            let mut fill = 0_usize;
            for (i, &x) in nb.iter().enumerate() {
                for &y in nb.iter().skip(i + 1) {
                    if !adj[x as usize].contains(&y) {
                        fill += 1;
                    }
                }
            }
            let key = (fill, nb.len(), v);
            if best.map_or(true, |b| key < b) {
                best = Some(key);
            }
        }
        let (_, _, v) = best.unwrap();
        let nb: Vec<Vertex> = adj[v as usize].iter().copied().collect();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                adj[nb[i] as usize].insert(nb[j]);
                adj[nb[j] as usize].insert(nb[i]);
            }
        }
        for &u in &nb {
            adj[u as usize].remove(&v);
        }
        adj[v as usize].clear();
        alive.remove(&v);
        elim_index[v as usize] = step;
        order.push(v);

        let mut bag = nb.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        neighbour_sets.push(nb);
    }

    // bag of step i attaches to the bag of the earliest-eliminated neighbour
    let mut tree_edges = Vec::with_capacity(n.saturating_sub(1));
    for (i, nb) in neighbour_sets.iter().enumerate() {
        if let Some(&u) = nb.iter().min_by_key(|&&u| elim_index[u as usize]) {
            tree_edges.push((i, elim_index[u as usize]));
        }
    }
    let td = TreeDecomposition {
        bags,
        tree_edges,
        root: n - 1,
    };
    Ok((td, order))
}

/// Active-vertex time slicing for a processing order: the bag at step t is
/// the processed vertex plus every vertex that has a processed neighbour but
/// is itself unprocessed. Bags are chained linearly; the last bag is the
/// root.
pub fn path_decomposition(
    g: &Graph,
    order: &[Vertex],
) -> Result<TreeDecomposition, TreeDecompError> {
    let n = g.n_vertices();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| (v as usize) >= n) {
        return Err(TreeDecompError::NotAPermutation);
    }
    for &v in order {
        if seen[v as usize] {
            return Err(TreeDecompError::NotAPermutation);
        }
        seen[v as usize] = true;
    }
    let adj = g.adjacency();
    let mut processed = vec![false; n];
    let mut active: BTreeSet<Vertex> = BTreeSet::new();
    let mut bags = Vec::with_capacity(n);
    for &v in order {
        processed[v as usize] = true;
        active.remove(&v);
        for &u in &adj[v as usize] {
            if !processed[u as usize] {
                active.insert(u);
            }
        }
        let mut bag: Vec<Vertex> = active.iter().copied().collect();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
    }
    let tree_edges = (0..n.saturating_sub(1)).map(|t| (t, t + 1)).collect();
    Ok(TreeDecomposition {
        bags,
        tree_edges,
        root: n - 1,
    })
}

/// Orders daughter fusions to minimise the number of basis-state pairs,
/// summing C(|accumulated ∩ parent|) · C(|next ∩ parent|) over the sequence.
/// Exhaustive for up to 8 daughters, greedy by ascending intersection size
/// beyond that.
pub fn fusion_order_optimise(parent: &[Vertex], daughters: &[Vec<Vertex>]) -> Vec<usize> {
    let d = daughters.len();
    if d <= 1 {
        return (0..d).collect();
    }
    let parent_set: BTreeSet<Vertex> = parent.iter().copied().collect();
    let intersections: Vec<BTreeSet<Vertex>> = daughters
        .iter()
        .map(|dg| {
            dg.iter()
                .copied()
                .filter(|v| parent_set.contains(v))
                .collect()
        })
        .collect();

    if d > 8 {
        let mut idx: Vec<usize> = (0..d).collect();
        idx.sort_by_key(|&i| (intersections[i].len(), i));
        return idx;
    }

    let catalan: Vec<BigUint> = (0..=parent.len()).map(|n| count_states(n, true)).collect();
    let cost_of = |perm: &[usize]| -> BigUint {
        let mut acc: BTreeSet<Vertex> = BTreeSet::new();
        let mut cost = BigUint::from(0_u32);
        for &i in perm {
            cost += &catalan[acc.len()] * &catalan[intersections[i].len()];
            acc.extend(intersections[i].iter().copied());
        }
        cost
    };

    let mut best_perm: Vec<usize> = (0..d).collect();
    let mut best_cost = cost_of(&best_perm);
    let mut perm: Vec<usize> = (0..d).collect();
    // lexicographic permutation sweep keeps ties deterministic
    while next_permutation(&mut perm) {
        let cost = cost_of(&perm);
        if cost < best_cost {
            best_cost = cost;
            best_perm = perm.clone();
        }
    }
    best_perm
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Worst-case operation count for running the transfer matrix over this
/// schedule: (N + M + B) S n_max + F S^2 n_max, with S the number of
/// partition states of the largest bag.
pub fn estimate_cost(
    g: &Graph,
    td: &TreeDecomposition,
    schedule: &Schedule,
    planar: bool,
) -> BigUint {
    let n_max = td.n_max();
    let states = count_states(n_max, planar);
    let linear = BigUint::from(g.n_vertices() + g.n_edges() + td.bags.len());
    let fusions = BigUint::from(schedule.fusion_count());
    let nm = BigUint::from(n_max);
    linear * &states * &nm + fusions * &states * &states * &nm
}

/// Builds the per-bag processing plans for a rooted decomposition.
///
/// Every graph edge goes to the first bag, in post-order, containing both of
/// its endpoints; every vertex leaves scope when its last containing bag
/// passes its state to a parent without it. Daughters are visited in the
/// order chosen by [`fusion_order_optimise`], and the post-order follows
/// that same order.
pub fn build_schedule(
    g: &Graph,
    td: &TreeDecomposition,
    root_choice: RootChoice,
) -> Result<Schedule, TreeDecompError> {
    verify_decomposition(g, td).map_err(TreeDecompError::Invalid)?;
    let b = td.bags.len();
    let root = match root_choice {
        RootChoice::Keep => td.root,
        RootChoice::Bag(i) => {
            if i >= b {
                return Err(TreeDecompError::BagIndexOutOfRange(i));
            }
            i
        }
        RootChoice::Auto => {
            // only the fusion count in the cost formula depends on the root
            let adj = td.bag_adjacency();
            let mut best = (usize::MAX, 0_usize);
            for r in 0..b {
                let mut fusions = 0_usize;
                for (i, nb) in adj.iter().enumerate() {
                    let daughters = if i == r { nb.len() } else { nb.len() - 1 };
                    fusions += daughters.saturating_sub(1);
                }
                if fusions < best.0 {
                    best = (fusions, r);
                }
            }
            best.1
        }
    };

    let adj = td.bag_adjacency();
    let mut parent: Vec<Option<usize>> = vec![None; b];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); b];
    let mut stack = vec![root];
    let mut visited = vec![false; b];
    visited[root] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !visited[y] {
                visited[y] = true;
                parent[y] = Some(x);
                children[x].push(y);
                stack.push(y);
            }
        }
    }
    for c in children.iter_mut() {
        c.sort_unstable();
    }

    // fusion order per bag, then a post-order that visits daughters in that
    // same order
    let mut plans: Vec<BagPlan> = vec![BagPlan::default(); b];
    for i in 0..b {
        let daughter_bags: Vec<Vec<Vertex>> =
            children[i].iter().map(|&c| td.bags[c].clone()).collect();
        let perm = fusion_order_optimise(&td.bags[i], &daughter_bags);
        plans[i].fuse_order = perm.into_iter().map(|k| children[i][k]).collect();
    }

    let mut order = Vec::with_capacity(b);
    {
        let mut stack: Vec<(usize, bool)> = vec![(root, false)];
        while let Some((x, expanded)) = stack.pop() {
            if expanded {
                order.push(x);
                continue;
            }
            stack.push((x, true));
            for &c in plans[x].fuse_order.iter().rev() {
                stack.push((c, false));
            }
        }
    }

    let bag_sets: Vec<BTreeSet<Vertex>> = td
        .bags
        .iter()
        .map(|bag| bag.iter().copied().collect())
        .collect();

    let mut assigned = vec![false; g.n_edges()];
    for &i in &order {
        let set = &bag_sets[i];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if !assigned[e] && set.contains(&u) && set.contains(&v) {
                assigned[e] = true;
                plans[i].edge_plan.push((u, v));
            }
        }
        let mut arriving: BTreeSet<Vertex> = BTreeSet::new();
        for &c in &children[i] {
            arriving.extend(bag_sets[c].intersection(set).copied());
        }
        plans[i].insert_set = set.difference(&arriving).copied().collect();
        plans[i].delete_set = match parent[i] {
            Some(p) => set.difference(&bag_sets[p]).copied().collect(),
            None => td.bags[i].clone(),
        };
    }
    debug_assert!(assigned.iter().all(|&a| a));

    for i in 0..b {
        let parent_edges: Vec<(Vertex, Vertex)> = match parent[i] {
            Some(p) => plans[p].edge_plan.clone(),
            None => Vec::new(),
        };
        let lookahead: Vec<Vec<(Vertex, Vertex)>> = (0..plans[i].edge_plan.len())
            .map(|k| {
                let mut look: Vec<(Vertex, Vertex)> = plans[i].edge_plan[k + 1..].to_vec();
                look.extend(parent_edges.iter().copied());
                look
            })
            .collect();
        plans[i].prune_lookahead = lookahead;
    }

    Ok(Schedule {
        order,
        parent,
        plans,
        root,
    })
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScheduleAuditError {
    #[error("bag {bag}: insert set overlaps incoming scope")]
    InsertOverlap { bag: usize },
    #[error("bag {bag}: scope does not equal the bag after insertion")]
    ScopeMismatch { bag: usize },
    #[error("bag {bag}: edge ({u}, {v}) endpoint out of scope")]
    EdgeOutOfScope { bag: usize, u: Vertex, v: Vertex },
    #[error("edge ({u}, {v}) processed {count} times")]
    EdgeMultiplicity { u: Vertex, v: Vertex, count: usize },
    #[error("vertex {vertex} deleted {count} times")]
    DeleteMultiplicity { vertex: Vertex, count: usize },
    #[error("vertex {vertex} never inserted")]
    NeverInserted { vertex: Vertex },
}

/// Structural audit: simulates the scopes the engine will see and checks
/// that edges are processed exactly once with both endpoints in scope, that
/// every vertex is deleted exactly once, and that every vertex enters scope
/// at the leaf-most bags of its subtree. A vertex whose bag subtree branches
/// is inserted once per branch; those branch states fuse before the vertex
/// is ever deleted.
pub fn audit_schedule(
    g: &Graph,
    td: &TreeDecomposition,
    schedule: &Schedule,
) -> Result<(), ScheduleAuditError> {
    let n = g.n_vertices();
    let mut passed: HashMap<usize, BTreeSet<Vertex>> = HashMap::new();
    let mut edge_counts: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    let mut delete_counts = vec![0_usize; n];
    let mut insert_counts = vec![0_usize; n];

    for &i in &schedule.order {
        let plan = &schedule.plans[i];
        let mut scope: BTreeSet<Vertex> = BTreeSet::new();
        for &c in &plan.fuse_order {
            scope.extend(passed.remove(&c).expect("children precede parents"));
        }
        for &v in &plan.insert_set {
            if !scope.insert(v) {
                return Err(ScheduleAuditError::InsertOverlap { bag: i });
            }
            insert_counts[v as usize] += 1;
        }
        let bag_set: BTreeSet<Vertex> = td.bags[i].iter().copied().collect();
        if scope != bag_set {
            return Err(ScheduleAuditError::ScopeMismatch { bag: i });
        }
        for &(u, v) in &plan.edge_plan {
            if !scope.contains(&u) || !scope.contains(&v) {
                return Err(ScheduleAuditError::EdgeOutOfScope { bag: i, u, v });
            }
            *edge_counts.entry((u.min(v), u.max(v))).or_default() += 1;
        }
        for &v in &plan.delete_set {
            delete_counts[v as usize] += 1;
            scope.remove(&v);
        }
        passed.insert(i, scope);
    }

    for &(u, v) in g.edges() {
        let count = edge_counts.get(&(u, v)).copied().unwrap_or(0);
        if count != 1 {
            return Err(ScheduleAuditError::EdgeMultiplicity { u, v, count });
        }
    }
    for (&(u, v), &count) in &edge_counts {
        if !g.has_edge(u, v) {
            return Err(ScheduleAuditError::EdgeMultiplicity { u, v, count });
        }
    }
    for v in 0..n {
        if delete_counts[v] != 1 {
            return Err(ScheduleAuditError::DeleteMultiplicity {
                vertex: v as Vertex,
                count: delete_counts[v],
            });
        }
        if insert_counts[v] == 0 {
            return Err(ScheduleAuditError::NeverInserted {
                vertex: v as Vertex,
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

/// Line 1 `B n_max`, then B bag lines of vertex ids, then B-1 tree-edge
/// lines `a b`, then `root r`.
pub fn format_decomposition(td: &TreeDecomposition) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", td.bags.len(), td.n_max()).unwrap();
    for bag in &td.bags {
        let line: Vec<String> = bag.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    for &(a, b) in &td.tree_edges {
        writeln!(out, "{a} {b}").unwrap();
    }
    writeln!(out, "root {}", td.root).unwrap();
    out
}

pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition, TreeDecompError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|&(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line: usize, msg: &str| TreeDecompError::Parse {
        line,
        msg: msg.to_string(),
    };

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let mut it = header.split_whitespace();
    let b: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(hline, "malformed header, expected `B n_max`"))?;
    let n_max: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(hline, "malformed header, expected `B n_max`"))?;
    if it.next().is_some() || b == 0 {
        return Err(err(hline, "malformed header, expected `B n_max`"));
    }

    let mut bags = Vec::with_capacity(b);
    for _ in 0..b {
        let (line, content) = lines.next().ok_or_else(|| err(hline, "missing bag line"))?;
        let mut bag = Vec::new();
        for tok in content.split_whitespace() {
            let v: Vertex = tok
                .parse()
                .map_err(|_| err(line, &format!("bad vertex id {tok:?}")))?;
            bag.push(v);
        }
        bag.sort_unstable();
        bag.dedup();
        if bag.is_empty() {
            return Err(err(line, "empty bag"));
        }
        bags.push(bag);
    }
    let found_n_max = bags.iter().map(|bag| bag.len()).max().unwrap_or(0);
    if found_n_max != n_max {
        return Err(err(
            hline,
            &format!("header says n_max {n_max}, bags say {found_n_max}"),
        ));
    }

    let mut tree_edges = Vec::with_capacity(b.saturating_sub(1));
    for _ in 0..b.saturating_sub(1) {
        let (line, content) = lines
            .next()
            .ok_or_else(|| err(hline, "missing tree edge line"))?;
        let mut it = content.split_whitespace();
        let parse_idx = |tok: Option<&str>| tok.and_then(|t| t.parse::<usize>().ok());
        let (x, y) = match (parse_idx(it.next()), parse_idx(it.next()), it.next()) {
            (Some(x), Some(y), None) => (x, y),
            _ => return Err(err(line, "malformed tree edge, expected `a b`")),
        };
        if x >= b || y >= b {
            return Err(err(line, "tree edge index out of range"));
        }
        tree_edges.push((x, y));
    }

    let (rline, rcontent) = lines.next().ok_or_else(|| err(hline, "missing root line"))?;
    let root: usize = rcontent
        .strip_prefix("root")
        .map(str::trim)
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(rline, "malformed root line, expected `root r`"))?;
    if root >= b {
        return Err(err(rline, "root index out of range"));
    }
    if let Some((line, _)) = lines.next() {
        return Err(err(line, "unexpected trailing content"));
    }
    Ok(TreeDecomposition {
        bags,
        tree_edges,
        root,
    })
}

/// The worked tree decomposition of [`crate::graph::nine_vertex_example`],
/// rooted at the central bag {2,3,4}.
pub fn nine_vertex_tree_decomposition() -> TreeDecomposition {
    TreeDecomposition {
        bags: vec![
            vec![0, 1, 2],
            vec![1, 2, 3],
            vec![2, 3, 4],
            vec![2, 4, 5],
            vec![4, 5, 6],
            vec![3, 4, 7],
            vec![4, 7, 8],
        ],
        tree_edges: vec![(0, 1), (1, 2), (3, 2), (4, 3), (5, 2), (6, 5)],
        root: 2,
    }
}
