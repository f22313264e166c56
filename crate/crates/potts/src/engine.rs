//! The tree-decomposed transfer matrix.
//!
//! A [`WeightedState`] is a linear superposition of partition basis states
//! over the active vertices, kept as a hash table from canonical label
//! strings to weights. Processing an edge (i,j) applies `1 + v J_ij`;
//! deleting a vertex applies a factor Q when it was a singleton block;
//! daughter branches of the decomposition tree fuse entrywise through the
//! partition-lattice join with multiplied weights. The partition function
//! is the weight of the empty partition after the root bag deletes its last
//! vertex.

use crate::graph::Graph;
use crate::partition::{
    self, catalan, JoinContext, Label, SetPartition, Vertex,
};
use crate::treedecomp::{self, RootChoice, Schedule, TreeDecompError};
use crate::weights::{Weight, WeightError, WeightMode};
use num_bigint::BigUint;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("vertex {0} not in scope")]
    VertexNotInScope(Vertex),
    #[error("delete set contains {0}, which is not in scope")]
    DeleteNotInScope(Vertex),
    #[error("insert set contains {0}, which is already in scope")]
    InsertAlreadyInScope(Vertex),
    #[error("pruning requires v = -1 in an exact mode")]
    PruningUnavailable,
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Decomposition(#[from] TreeDecompError),
}

/// Engine configuration: the coefficient ring and whether to prune.
#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub mode: WeightMode,
    pub pruning: bool,
}

impl EngineConfig {
    pub fn new(mode: WeightMode) -> Self {
        EngineConfig {
            mode,
            pruning: false,
        }
    }

    pub fn with_pruning(mode: WeightMode) -> Result<Self, EngineError> {
        if !mode.allows_pruning() {
            return Err(EngineError::PruningUnavailable);
        }
        Ok(EngineConfig {
            mode,
            pruning: true,
        })
    }
}

/// Where in a bag's processing a trace snapshot was taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    /// After all daughters fused (bags with at least one daughter).
    Fused,
    /// After applying the k-th edge of the bag's edge plan.
    Edge(usize),
    /// After the bag's delete set left scope.
    Deleted,
}

/// Observer invoked with (bag index, phase, state snapshot).
pub type TraceHook<'a> = dyn FnMut(usize, Phase, &WeightedState) + 'a;

/// The propagating transfer-matrix state: a table from canonical partition
/// label strings over `scope` to weights. Exact zeros are purged on write.
#[derive(Clone, Debug)]
pub struct WeightedState {
    scope: Vec<Vertex>,
    table: HashMap<Vec<Label>, Weight>,
}

impl WeightedState {
    /// The empty-scope state with unit weight: the seed of every run.
    pub fn unit(mode: &WeightMode) -> Self {
        let mut table = HashMap::new();
        table.insert(Vec::new(), Weight::one(mode));
        WeightedState {
            scope: Vec::new(),
            table,
        }
    }

    pub fn scope(&self) -> &[Vertex] {
        &self.scope
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (SetPartition, &Weight)> {
        self.table.iter().map(|(labels, w)| {
            (
                SetPartition::from_scope_labels(self.scope.clone(), labels.clone()),
                w,
            )
        })
    }

    /// Weight of a given partition of the current scope, if present.
    pub fn weight_of(&self, p: &SetPartition) -> Option<&Weight> {
        if p.scope() != self.scope.as_slice() {
            return None;
        }
        self.table.get(p.labels())
    }

    fn position(&self, v: Vertex) -> Result<usize, EngineError> {
        self.scope
            .binary_search(&v)
            .map_err(|_| EngineError::VertexNotInScope(v))
    }

    fn insert_weight(table: &mut HashMap<Vec<Label>, Weight>, key: Vec<Label>, w: Weight) {
        if w.is_zero() {
            return;
        }
        match table.entry(key) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let sum = e
                    .get()
                    .add(&w)
                    .expect("weights in one table share a mode");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(w);
            }
        }
    }

    /// Applies the edge operator `1 + v J_ij` (for rational v, its
    /// denominator-scaled form `den·1 + num·J_ij`).
    pub fn apply_edge(
        &mut self,
        i: Vertex,
        j: Vertex,
        mode: &WeightMode,
    ) -> Result<(), EngineError> {
        let pi = self.position(i)?;
        let pj = self.position(j)?;
        let mut next: HashMap<Vec<Label>, Weight> = HashMap::with_capacity(self.table.len() * 2);
        for (labels, w) in self.table.drain() {
            let joined_w = w.scale_v(mode);
            let identity_w = w.scale_v_den(mode);
            if labels[pi] != labels[pj] {
                let joined = partition::join_positions(&labels, pi, pj);
                Self::insert_weight(&mut next, joined, joined_w);
                Self::insert_weight(&mut next, labels, identity_w);
            } else {
                // J is the identity here: the entry scales by (1 + v)
                let sum = identity_w.add(&joined_w)?;
                Self::insert_weight(&mut next, labels, sum);
            }
        }
        self.table = next;
        Ok(())
    }

    /// Deletes `delete_set` (factor Q per singleton) and inserts
    /// `insert_set` as fresh singleton blocks, in one scope change.
    pub fn delete_and_insert(
        &mut self,
        delete_set: &[Vertex],
        insert_set: &[Vertex],
        mode: &WeightMode,
    ) -> Result<(), EngineError> {
        if delete_set.is_empty() && insert_set.is_empty() {
            return Ok(());
        }
        let mut delete_positions = Vec::with_capacity(delete_set.len());
        for &v in delete_set {
            delete_positions.push(
                self.scope
                    .binary_search(&v)
                    .map_err(|_| EngineError::DeleteNotInScope(v))?,
            );
        }
        delete_positions.sort_unstable();
        for &v in insert_set {
            if self.scope.binary_search(&v).is_ok() {
                return Err(EngineError::InsertAlreadyInScope(v));
            }
        }

        let mut new_scope: Vec<Vertex> = self
            .scope
            .iter()
            .copied()
            .filter(|v| delete_set.binary_search(v).is_err())
            .chain(insert_set.iter().copied())
            .collect();
        new_scope.sort_unstable();
        // position of each kept old-scope vertex in the new scope
        let kept: Vec<(usize, usize)> = self
            .scope
            .iter()
            .enumerate()
            .filter(|(_, v)| delete_set.binary_search(v).is_err())
            .map(|(old_pos, v)| (old_pos, new_scope.binary_search(v).unwrap()))
            .collect();
        let inserted_positions: Vec<usize> = insert_set
            .iter()
            .map(|v| new_scope.binary_search(v).unwrap())
            .collect();

        let mut next: HashMap<Vec<Label>, Weight> = HashMap::with_capacity(self.table.len());
        for (labels, w) in self.table.drain() {
            // count singleton deletions for the Q factors
            let mut occupancy: HashMap<Label, usize> = HashMap::new();
            for &l in &labels {
                *occupancy.entry(l).or_default() += 1;
            }
            let mut q_factors = 0_usize;
            for &pos in &delete_positions {
                let l = labels[pos];
                let remaining = occupancy
                    .get_mut(&l)
                    .expect("label present in occupancy map");
                if *remaining == 1 {
                    q_factors += 1;
                }
                *remaining -= 1;
            }
            let mut new_labels: Vec<Label> = vec![0; new_scope.len()];
            let mut fresh = labels.iter().max().map_or(0, |&m| m + 1);
            for &(old_pos, new_pos) in &kept {
                new_labels[new_pos] = labels[old_pos];
            }
            for &new_pos in &inserted_positions {
                new_labels[new_pos] = fresh;
                fresh += 1;
            }
            partition::canonicalize(&mut new_labels);
            let mut scaled = w;
            for _ in 0..q_factors {
                scaled = scaled.scale_q(mode);
            }
            Self::insert_weight(&mut next, new_labels, scaled);
        }
        self.scope = new_scope;
        self.table = next;
        Ok(())
    }

    /// Fuses two daughter states: every entry pair joins in the partition
    /// lattice over the union scope, with multiplied weights.
    pub fn fuse(s1: &WeightedState, s2: &WeightedState) -> Result<WeightedState, EngineError> {
        let ctx = JoinContext::new(&s1.scope, &s2.scope);
        let mut table: HashMap<Vec<Label>, Weight> =
            HashMap::with_capacity(s1.table.len() * s2.table.len());
        for (l1, w1) in &s1.table {
            for (l2, w2) in &s2.table {
                let key = ctx.join(l1, l2);
                let w = w1.mul(w2)?;
                Self::insert_weight(&mut table, key, w);
            }
        }
        Ok(WeightedState {
            scope: ctx.union_scope,
            table,
        })
    }

    /// Drops every entry whose partition co-blocks the endpoints of a
    /// lookahead edge. Sound only at v = -1, where the edge operator
    /// annihilates exactly those states.
    pub fn prune(&mut self, lookahead: &[(Vertex, Vertex)]) {
        let positions: Vec<(usize, usize)> = lookahead
            .iter()
            .filter_map(|&(i, j)| {
                let pi = self.scope.binary_search(&i).ok()?;
                let pj = self.scope.binary_search(&j).ok()?;
                Some((pi, pj))
            })
            .collect();
        if positions.is_empty() {
            return;
        }
        self.table
            .retain(|labels, _| positions.iter().all(|&(pi, pj)| labels[pi] != labels[pj]));
    }
}

/// Size and bound bookkeeping for one engine run.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunStats {
    /// Largest state table observed at any point of the run.
    pub peak_table_size: usize,
    /// Largest scope observed.
    pub max_scope: usize,
    /// Whether |table| stayed within the Catalan bound C_|scope| throughout
    /// (expected for planar inputs).
    pub catalan_bound_respected: bool,
}

impl RunStats {
    fn new() -> Self {
        RunStats {
            peak_table_size: 0,
            max_scope: 0,
            catalan_bound_respected: true,
        }
    }

    fn observe(&mut self, state: &WeightedState) {
        self.peak_table_size = self.peak_table_size.max(state.len());
        self.max_scope = self.max_scope.max(state.scope().len());
        if self.catalan_bound_respected {
            let bound = catalan(state.scope().len());
            if BigUint::from(state.len()) > bound {
                self.catalan_bound_respected = false;
            }
        }
    }

    fn merge(&mut self, other: &RunStats) {
        self.peak_table_size = self.peak_table_size.max(other.peak_table_size);
        self.max_scope = self.max_scope.max(other.max_scope);
        self.catalan_bound_respected &= other.catalan_bound_respected;
    }
}

/// Runs the transfer matrix over a schedule and returns the partition
/// function weight (the coefficient of the empty partition at the end).
pub fn run(
    g: &Graph,
    schedule: &Schedule,
    config: &EngineConfig,
) -> Result<(Weight, RunStats), EngineError> {
    run_with_trace(g, schedule, config, None)
}

/// As [`run`], with an optional observer called after fusion, after each
/// edge application, and after each bag's deletions.
pub fn run_with_trace(
    g: &Graph,
    schedule: &Schedule,
    config: &EngineConfig,
    mut trace: Option<&mut TraceHook<'_>>,
) -> Result<(Weight, RunStats), EngineError> {
    if config.pruning && !config.mode.allows_pruning() {
        return Err(EngineError::PruningUnavailable);
    }
    let _ = g;
    let mode = &config.mode;
    let mut stats = RunStats::new();
    let mut pending: HashMap<usize, WeightedState> = HashMap::new();

    for &bag in &schedule.order {
        let plan = &schedule.plans[bag];
        let mut state = WeightedState::unit(mode);
        let mut fused_any = false;
        for &c in &plan.fuse_order {
            let daughter = pending.remove(&c).expect("children precede parents");
            state = if fused_any || !state.scope.is_empty() || state.table.len() != 1 {
                WeightedState::fuse(&state, &daughter)?
            } else {
                // fusing with the unit state is the identity
                daughter
            };
            fused_any = true;
        }
        if fused_any {
            stats.observe(&state);
            if let Some(hook) = trace.as_deref_mut() {
                hook(bag, Phase::Fused, &state);
            }
        }
        state.delete_and_insert(&[], &plan.insert_set, mode)?;
        stats.observe(&state);
        for (k, &(u, v)) in plan.edge_plan.iter().enumerate() {
            state.apply_edge(u, v, mode)?;
            if config.pruning {
                state.prune(&plan.prune_lookahead[k]);
            }
            stats.observe(&state);
            if let Some(hook) = trace.as_deref_mut() {
                hook(bag, Phase::Edge(k), &state);
            }
        }
        state.delete_and_insert(&plan.delete_set, &[], mode)?;
        stats.observe(&state);
        if let Some(hook) = trace.as_deref_mut() {
            hook(bag, Phase::Deleted, &state);
        }
        pending.insert(bag, state);
    }

    let final_state = pending
        .remove(&schedule.root)
        .expect("root processed last");
    debug_assert!(final_state.scope.is_empty());
    let z = final_state
        .table
        .get(&Vec::new())
        .cloned()
        .unwrap_or_else(|| Weight::zero(mode));
    Ok((z, stats))
}

/// Computes Z for an arbitrary graph: builds a min-fill decomposition and
/// an auto-rooted schedule per connected component and multiplies the
/// component results.
pub fn run_auto(g: &Graph, config: &EngineConfig) -> Result<(Weight, RunStats), EngineError> {
    let mut result = Weight::one(&config.mode);
    let mut stats = RunStats::new();
    for (component, _) in g.components() {
        let td = treedecomp::greedy_fill_in(&component)?;
        let schedule = treedecomp::build_schedule(&component, &td, RootChoice::Auto)?;
        let (z, component_stats) = run(&component, &schedule, config)?;
        stats.merge(&component_stats);
        result = result.mul(&z)?;
    }
    Ok((result, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::nine_vertex_example;
    use crate::treedecomp::{build_schedule, nine_vertex_tree_decomposition};
    use crate::weights::Rational;
    use num_bigint::BigInt;

    fn bivariate() -> EngineConfig {
        EngineConfig::new(WeightMode::Bivariate)
    }

    fn chromatic_mode() -> WeightMode {
        WeightMode::Univariate {
            v: Rational::from_integer(-1),
        }
    }

    /// grid[j][i] = coefficient of v^j Q^i
    fn biv(grid: &[&[i64]]) -> Weight {
        let rows: Vec<Vec<BigInt>> = grid
            .iter()
            .map(|row| row.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        let a = Weight::Bivariate(rows);
        // normalise through an additive identity
        a.add(&Weight::Bivariate(Vec::new())).unwrap()
    }

    #[test]
    fn worked_example_first_bag() {
        // singleton state on {1,2,3}, edges (1,2) and (1,3), then delete 1:
        // (Q + 2v) on the split pair plus v^2 on the joined pair
        let mode = WeightMode::Bivariate;
        let mut state = WeightedState::unit(&mode);
        state.delete_and_insert(&[], &[1, 2, 3], &mode).unwrap();
        state.apply_edge(1, 2, &mode).unwrap();
        state.apply_edge(1, 3, &mode).unwrap();
        state.delete_and_insert(&[1], &[], &mode).unwrap();

        assert_eq!(state.scope(), &[2, 3]);
        assert_eq!(state.len(), 2);
        let split = SetPartition::from_blocks(&[vec![2], vec![3]]).unwrap();
        let joined = SetPartition::from_blocks(&[vec![2, 3]]).unwrap();
        assert_eq!(
            state.weight_of(&split).unwrap(),
            &biv(&[&[0, 1], &[2]]) // Q + 2v
        );
        assert_eq!(
            state.weight_of(&joined).unwrap(),
            &biv(&[&[], &[], &[1]]) // v^2
        );
    }

    #[test]
    fn apply_edge_on_coblocked_pair_scales_by_one_plus_v() {
        let mode = WeightMode::Bivariate;
        let mut state = WeightedState::unit(&mode);
        state.delete_and_insert(&[], &[1, 2], &mode).unwrap();
        state.apply_edge(1, 2, &mode).unwrap();
        state.apply_edge(1, 2, &mode).unwrap();
        // (1 + vJ)^2 acting on singletons: singleton part stays 1,
        // joined part accumulates (v + v(1+v)) = 2v + v^2
        let split = SetPartition::from_blocks(&[vec![1], vec![2]]).unwrap();
        let joined = SetPartition::from_blocks(&[vec![1, 2]]).unwrap();
        assert_eq!(state.weight_of(&split).unwrap(), &biv(&[&[1]]));
        assert_eq!(state.weight_of(&joined).unwrap(), &biv(&[&[], &[2], &[1]]));
    }

    #[test]
    fn scalar_mode_with_v_zero_leaves_state_unchanged() {
        let mode = WeightMode::Scalar { q: 3.0, v: 0.0 };
        let mut state = WeightedState::unit(&mode);
        state.delete_and_insert(&[], &[0, 1], &mode).unwrap();
        let before: Vec<_> = state.entries().map(|(p, w)| (p, w.clone())).collect();
        state.apply_edge(0, 1, &mode).unwrap();
        let after: Vec<_> = state.entries().map(|(p, w)| (p, w.clone())).collect();
        assert_eq!(before.len(), after.len());
        for (p, w) in before {
            let found = after.iter().find(|(q, _)| *q == p).unwrap();
            assert_eq!(found.1, w);
        }
    }

    #[test]
    fn delete_last_vertex_yields_partition_function_weight() {
        // single edge K2 in bivariate mode: Z = Q^2 + vQ
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let (z, _) = run_auto(&g, &bivariate()).unwrap();
        assert_eq!(z, biv(&[&[0, 0, 1], &[0, 1]]));
    }

    #[test]
    fn fuse_identity_and_single_blocks() {
        let mode = WeightMode::Bivariate;
        // fuse with pure all-singleton weight-1 state is the identity
        let mut s1 = WeightedState::unit(&mode);
        s1.delete_and_insert(&[], &[1, 2], &mode).unwrap();
        s1.apply_edge(1, 2, &mode).unwrap();
        let mut identity = WeightedState::unit(&mode);
        identity.delete_and_insert(&[], &[1, 2], &mode).unwrap();
        let fused = WeightedState::fuse(&s1, &identity).unwrap();
        assert_eq!(fused.len(), s1.len());
        for (p, w) in s1.entries() {
            assert_eq!(fused.weight_of(&p).unwrap(), w);
        }

        // {{a,b}} fused with {{b,c}} gives {{a,b,c}} with product weight
        let mut a = WeightedState::unit(&mode);
        a.delete_and_insert(&[], &[1, 2], &mode).unwrap();
        a.apply_edge(1, 2, &mode).unwrap();
        let mut b = WeightedState::unit(&mode);
        b.delete_and_insert(&[], &[2, 3], &mode).unwrap();
        b.apply_edge(2, 3, &mode).unwrap();
        let fused = WeightedState::fuse(&a, &b).unwrap();
        assert_eq!(fused.scope(), &[1, 2, 3]);
        let all = SetPartition::from_blocks(&[vec![1, 2, 3]]).unwrap();
        // the v·J branches of both edges meet in the fully joined partition
        assert_eq!(
            fused.weight_of(&all).unwrap(),
            &biv(&[&[], &[], &[1]]) // v * v
        );
    }

    #[test]
    fn prune_drops_coblocked_entries() {
        let mode = chromatic_mode();
        let mut state = WeightedState::unit(&mode);
        state.delete_and_insert(&[], &[2, 3], &mode).unwrap();
        state.apply_edge(2, 3, &mode).unwrap();
        assert_eq!(state.len(), 2);
        let mut pruned = state.clone();
        pruned.prune(&[(2, 3)]);
        assert_eq!(pruned.len(), 1);
        let split = SetPartition::from_blocks(&[vec![2], vec![3]]).unwrap();
        assert!(pruned.weight_of(&split).is_some());
        // empty lookahead leaves the state unchanged
        let mut same = state.clone();
        same.prune(&[]);
        assert_eq!(same.len(), state.len());
    }

    #[test]
    fn pruning_requires_v_minus_one() {
        assert!(EngineConfig::with_pruning(WeightMode::Bivariate).is_err());
        assert!(EngineConfig::with_pruning(chromatic_mode()).is_ok());
        let ok = WeightMode::Modular {
            prime: 101,
            v: Rational::from_integer(-1),
        };
        assert!(EngineConfig::with_pruning(ok).is_ok());
    }

    #[test]
    fn triangle_chromatic_polynomial() {
        let g = Graph::parse(b"3 3\n0 1\n1 2\n0 2\n").unwrap();
        let config = EngineConfig::with_pruning(chromatic_mode()).unwrap();
        let (z, stats) = run_auto(&g, &config).unwrap();
        let expected: Vec<BigInt> = [0, 2, -3, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(z, Weight::Univariate(expected));
        assert!(stats.catalan_bound_respected);
        assert!(stats.peak_table_size >= 1);
    }

    #[test]
    fn worked_example_intermediate_state_via_trace() {
        // after the two left-most bags of the worked decomposition the
        // propagating state on {2,3} carries the two known weights
        let g = nine_vertex_example();
        let td = nine_vertex_tree_decomposition();
        let schedule = build_schedule(&g, &td, RootChoice::Keep).unwrap();
        let config = bivariate();
        let mut captured: Option<WeightedState> = None;
        let mut hook = |bag: usize, phase: Phase, state: &WeightedState| {
            if bag == 1 && phase == Phase::Deleted {
                captured = Some(state.clone());
            }
        };
        run_with_trace(&g, &schedule, &config, Some(&mut hook)).unwrap();
        let state = captured.expect("bag 1 completion observed");
        assert_eq!(state.scope(), &[2, 3]);
        let split = SetPartition::from_blocks(&[vec![2], vec![3]]).unwrap();
        let joined = SetPartition::from_blocks(&[vec![2, 3]]).unwrap();
        // omega_1 = Q^2 + 3vQ + 3v^2, omega_2 = vQ^2 + 3v^2 Q + 4v^3 + v^4
        assert_eq!(
            state.weight_of(&split).unwrap(),
            &biv(&[&[0, 0, 1], &[0, 3], &[3]])
        );
        assert_eq!(
            state.weight_of(&joined).unwrap(),
            &biv(&[&[], &[0, 0, 1], &[0, 3], &[4], &[1]])
        );
    }

    #[test]
    fn pruning_does_not_change_chromatic_polynomial() {
        let g = nine_vertex_example();
        let with = EngineConfig::with_pruning(chromatic_mode()).unwrap();
        let without = EngineConfig::new(chromatic_mode());
        let (z1, _) = run_auto(&g, &with).unwrap();
        let (z2, _) = run_auto(&g, &without).unwrap();
        assert_eq!(z1, z2);
    }

    #[test]
    fn disconnected_graphs_multiply() {
        // triangle plus an isolated edge and an isolated vertex
        let g = Graph::new(6, vec![(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let (z, _) = run_auto(&g, &bivariate()).unwrap();
        let triangle = Graph::parse(b"3 3\n0 1\n1 2\n0 2\n").unwrap();
        let (zt, _) = run_auto(&triangle, &bivariate()).unwrap();
        let k2 = Graph::new(2, vec![(0, 1)]).unwrap();
        let (zk, _) = run_auto(&k2, &bivariate()).unwrap();
        let q = biv(&[&[0, 1]]);
        let expected = zt.mul(&zk).unwrap().mul(&q).unwrap();
        assert_eq!(z, expected);
    }

    #[test]
    fn errors_on_out_of_scope_operations() {
        let mode = WeightMode::Bivariate;
        let mut state = WeightedState::unit(&mode);
        state.delete_and_insert(&[], &[0, 1], &mode).unwrap();
        assert!(matches!(
            state.apply_edge(0, 5, &mode),
            Err(EngineError::VertexNotInScope(5))
        ));
        assert!(matches!(
            state.delete_and_insert(&[7], &[], &mode),
            Err(EngineError::DeleteNotInScope(7))
        ));
        assert!(matches!(
            state.delete_and_insert(&[], &[1], &mode),
            Err(EngineError::InsertAlreadyInScope(1))
        ));
    }
}
