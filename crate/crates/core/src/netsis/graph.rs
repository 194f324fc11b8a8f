use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::CoreError;
use crate::Result;

/// Node label: susceptible or infected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum NodeState {
    S,
    I,
}

/// Parameters of the full network model.
///
/// `w0` is the rewiring gain: an SI link is rewired with probability
/// `min(1, w0 * theta_I)` evaluated after the infection substep.
#[derive(Debug, Clone, Copy)]
pub struct SisParams {
    /// Infection probability per SI link per step.
    pub p: f64,
    /// Recovery probability per step.
    pub r: f64,
    /// Rewiring gain; effective probability is `w0 * theta_I`.
    pub w0: f64,
}

impl SisParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(CoreError::config(format!("p={} outside [0,1]", self.p)));
        }
        if !(0.0..=1.0).contains(&self.r) {
            return Err(CoreError::config(format!("r={} outside [0,1]", self.r)));
        }
        if self.w0 < 0.0 || !self.w0.is_finite() {
            return Err(CoreError::config(format!("w0={} must be >= 0", self.w0)));
        }
        Ok(())
    }
}

/// Coarse link/node fractions of a labeled graph.
///
/// `g_ss + g_si + g_ii == 1` exactly: the numerators are integer edge counts
/// over the fixed total `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observables {
    pub theta_i: f64,
    pub g_ss: f64,
    pub g_si: f64,
    pub g_ii: f64,
    /// Raw counts behind the fractions: (i, l_ss, l_si, l_ii).
    pub counts: (usize, usize, usize, usize),
}

/// Fixed-N, fixed-L undirected labeled graph; the full model state.
///
/// `edges` and `adj` always describe the same simple edge set; edges are
/// stored with the smaller endpoint first.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub(crate) states: Vec<NodeState>,
    pub(crate) adj: Vec<HashSet<u32>>,
    pub(crate) edges: Vec<(u32, u32)>,
}

impl LabeledGraph {
    pub fn n_nodes(&self) -> usize {
        self.states.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn state(&self, node: usize) -> NodeState {
        self.states[node]
    }

    pub fn states(&self) -> &[NodeState] {
        &self.states
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, node: usize) -> &HashSet<u32> {
        &self.adj[node]
    }

    pub(crate) fn from_parts(states: Vec<NodeState>, edges: Vec<(u32, u32)>) -> Result<Self> {
        let n = states.len();
        let mut adj = vec![HashSet::new(); n];
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in &edges {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if a == b {
                return Err(CoreError::data(format!("self-loop at node {a}")));
            }
            if b as usize >= n {
                return Err(CoreError::data(format!("edge ({a},{b}) out of range")));
            }
            if !adj[a as usize].insert(b) {
                return Err(CoreError::data(format!("duplicate edge ({a},{b})")));
            }
            adj[b as usize].insert(a);
            canon.push((a, b));
        }
        Ok(LabeledGraph {
            states,
            adj,
            edges: canon,
        })
    }

    /// Exact integer counts divided by N and L.
    pub fn observables(&self) -> Observables {
        let i = self
            .states
            .iter()
            .filter(|&&s| s == NodeState::I)
            .count();
        let (mut l_ss, mut l_si, mut l_ii) = (0usize, 0usize, 0usize);
        for &(u, v) in &self.edges {
            match (self.states[u as usize], self.states[v as usize]) {
                (NodeState::S, NodeState::S) => l_ss += 1,
                (NodeState::I, NodeState::I) => l_ii += 1,
                _ => l_si += 1,
            }
        }
        let n = self.n_nodes() as f64;
        let l = self.n_edges() as f64;
        Observables {
            theta_i: i as f64 / n,
            g_ss: l_ss as f64 / l,
            g_si: l_si as f64 / l,
            g_ii: l_ii as f64 / l,
            counts: (i, l_ss, l_si, l_ii),
        }
    }

    /// One discrete time step: recovery, infection, rewiring.
    pub fn step<R: Rng>(&mut self, params: &SisParams, rng: &mut R) {
        let mut scratch = StepScratch::default();
        self.step_with_scratch(params, rng, &mut scratch);
    }

    pub(crate) fn step_with_scratch<R: Rng>(
        &mut self,
        params: &SisParams,
        rng: &mut R,
        scratch: &mut StepScratch,
    ) {
        let n = self.n_nodes();

        // substep 1: recovery. Decisions depend only on the node's own label,
        // so in-place flips in index order are synchronous.
        for v in 0..n {
            if self.states[v] == NodeState::I && rng.random::<f64>() < params.r {
                self.states[v] = NodeState::S;
            }
        }

        // substep 2: infection across SI links, synchronous w.r.t. the
        // post-recovery labels. Each SI link is an independent trial; flips
        // are applied after the scan so later edges see start-of-substep
        // labels.
        scratch.newly_infected.clear();
        scratch.newly_infected.resize(n, false);
        for &(u, v) in &self.edges {
            let (su, sv) = (self.states[u as usize], self.states[v as usize]);
            let target = match (su, sv) {
                (NodeState::S, NodeState::I) => u,
                (NodeState::I, NodeState::S) => v,
                _ => continue,
            };
            if rng.random::<f64>() < params.p {
                scratch.newly_infected[target as usize] = true;
            }
        }
        for v in 0..n {
            if scratch.newly_infected[v] {
                self.states[v] = NodeState::I;
            }
        }

        // substep 3: rewiring. theta_I is measured after infection; SI links
        // are visited in uniformly random order and each is rewired with
        // probability min(1, w0 * theta_I).
        let infected = self.states.iter().filter(|&&s| s == NodeState::I).count();
        let w = (params.w0 * infected as f64 / n as f64).min(1.0);
        if w <= 0.0 || infected == 0 {
            return;
        }

        scratch.si_edges.clear();
        for (idx, &(u, v)) in self.edges.iter().enumerate() {
            if self.states[u as usize] != self.states[v as usize] {
                scratch.si_edges.push(idx as u32);
            }
        }
        scratch.si_edges.shuffle(rng);

        scratch.s_nodes.clear();
        for v in 0..n {
            if self.states[v] == NodeState::S {
                scratch.s_nodes.push(v as u32);
            }
        }
        if scratch.s_nodes.is_empty() {
            return;
        }

        for k in 0..scratch.si_edges.len() {
            let edge_idx = scratch.si_edges[k] as usize;
            if rng.random::<f64>() >= w {
                continue;
            }
            let (u, v) = self.edges[edge_idx];
            let (s, i) = if self.states[u as usize] == NodeState::S {
                (u, v)
            } else {
                (v, u)
            };
            if let Some(t) = self.sample_rewire_target(s, &scratch.s_nodes, rng) {
                self.adj[s as usize].remove(&i);
                self.adj[i as usize].remove(&s);
                self.adj[s as usize].insert(t);
                self.adj[t as usize].insert(s);
                self.edges[edge_idx] = if s < t { (s, t) } else { (t, s) };
            }
        }
        debug_assert_eq!(self.edges.len(), self.adj.iter().map(|a| a.len()).sum::<usize>() / 2);
    }

    /// Uniform choice over susceptible nodes that are neither `s` itself nor
    /// already adjacent to `s`. Rejection sampling first; if the acceptance
    /// rate is too low, fall back to an explicit scan of the candidates.
    fn sample_rewire_target<R: Rng>(&self, s: u32, s_nodes: &[u32], rng: &mut R) -> Option<u32> {
        const MAX_REJECT: usize = 32;
        for _ in 0..MAX_REJECT {
            let t = s_nodes[rng.random_range(0..s_nodes.len())];
            if t != s && !self.adj[s as usize].contains(&t) {
                return Some(t);
            }
        }
        let valid: Vec<u32> = s_nodes
            .iter()
            .copied()
            .filter(|&t| t != s && !self.adj[s as usize].contains(&t))
            .collect();
        if valid.is_empty() {
            None
        } else {
            Some(valid[rng.random_range(0..valid.len())])
        }
    }

    /// Full structural check: edge/adjacency agreement, no self-loops, no
    /// duplicates. Intended for tests and debug paths; O(N + L).
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n_nodes();
        let mut seen = HashSet::with_capacity(self.edges.len());
        for &(u, v) in &self.edges {
            if u >= v {
                return Err(CoreError::data(format!("edge ({u},{v}) not canonical")));
            }
            if v as usize >= n {
                return Err(CoreError::data(format!("edge ({u},{v}) out of range")));
            }
            if !seen.insert((u, v)) {
                return Err(CoreError::data(format!("duplicate edge ({u},{v})")));
            }
            if !self.adj[u as usize].contains(&v) || !self.adj[v as usize].contains(&u) {
                return Err(CoreError::data(format!(
                    "edge ({u},{v}) missing from adjacency"
                )));
            }
        }
        let adj_total: usize = self.adj.iter().map(|a| a.len()).sum();
        if adj_total != 2 * self.edges.len() {
            return Err(CoreError::data("adjacency/edge_list size mismatch".to_string()));
        }
        Ok(())
    }
}

#[derive(Default)]
pub(crate) struct StepScratch {
    newly_infected: Vec<bool>,
    si_edges: Vec<u32>,
    s_nodes: Vec<u32>,
}

/// Uniform simple random graph with exactly `n_edges` edges and
/// `floor(infected_fraction * N)` infected nodes chosen uniformly.
pub fn init_random_graph<R: Rng>(
    n_nodes: usize,
    n_edges: usize,
    infected_fraction: f64,
    rng: &mut R,
) -> Result<LabeledGraph> {
    let max_edges = n_nodes.saturating_mul(n_nodes.saturating_sub(1)) / 2;
    if n_edges > max_edges {
        return Err(CoreError::config(format!(
            "{n_edges} edges infeasible for {n_nodes} nodes (max {max_edges})"
        )));
    }
    if !(0.0..=1.0).contains(&infected_fraction) {
        return Err(CoreError::config(format!(
            "infected_fraction={infected_fraction} outside [0,1]"
        )));
    }

    let mut edge_set = HashSet::with_capacity(n_edges);
    let mut edges = Vec::with_capacity(n_edges);
    if n_edges > max_edges / 2 {
        // dense regime: enumerate all pairs and take a random prefix
        let mut all: Vec<(u32, u32)> = (0..n_nodes as u32)
            .flat_map(|u| ((u + 1)..n_nodes as u32).map(move |v| (u, v)))
            .collect();
        all.shuffle(rng);
        edges.extend(all.into_iter().take(n_edges));
    } else {
        while edges.len() < n_edges {
            let u = rng.random_range(0..n_nodes as u32);
            let v = rng.random_range(0..n_nodes as u32);
            if u == v {
                continue;
            }
            let e = if u < v { (u, v) } else { (v, u) };
            if edge_set.insert(e) {
                edges.push(e);
            }
        }
    }

    let mut states = vec![NodeState::S; n_nodes];
    let n_infected = (infected_fraction * n_nodes as f64).floor() as usize;
    let mut order: Vec<usize> = (0..n_nodes).collect();
    order.shuffle(rng);
    for &v in order.iter().take(n_infected) {
        states[v] = NodeState::I;
    }

    LabeledGraph::from_parts(states, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;

    fn graph(labels: &[NodeState], edges: &[(u32, u32)]) -> LabeledGraph {
        LabeledGraph::from_parts(labels.to_vec(), edges.to_vec()).unwrap()
    }

    #[test]
    fn k4_complete_all_s() {
        let g = init_random_graph(4, 6, 0.0, &mut stream_rng(1, 0)).unwrap();
        assert_eq!(g.n_edges(), 6);
        assert!(g.states().iter().all(|&s| s == NodeState::S));
        for v in 0..4 {
            assert_eq!(g.neighbors(v).len(), 3);
        }
    }

    #[test]
    fn random_graph_observables_partition() {
        let g = init_random_graph(10_000, 100_000, 0.5, &mut stream_rng(2, 0)).unwrap();
        let obs = g.observables();
        assert!((obs.theta_i - 0.5).abs() < 1e-12);
        assert_eq!(obs.g_ss + obs.g_si + obs.g_ii, 1.0);
        g.check_invariants().unwrap();
    }

    #[test]
    fn handshake_lemma() {
        let g = init_random_graph(100, 200, 0.1, &mut stream_rng(3, 0)).unwrap();
        let degree_sum: usize = (0..100).map(|v| g.neighbors(v).len()).sum();
        assert_eq!(degree_sum, 400);
    }

    #[test]
    fn infeasible_edge_count_rejected() {
        assert!(matches!(
            init_random_graph(4, 7, 0.0, &mut stream_rng(1, 0)),
            Err(CoreError::Config(_))
        ));
    }

    #[test]
    fn all_s_graph_is_fixed() {
        let mut g = init_random_graph(50, 100, 0.0, &mut stream_rng(4, 0)).unwrap();
        let before = g.clone();
        let params = SisParams {
            p: 0.7,
            r: 0.3,
            w0: 2.0,
        };
        g.step(&params, &mut stream_rng(4, 1));
        assert_eq!(g.states(), before.states());
        assert_eq!(g.edges(), before.edges());
    }

    #[test]
    fn certain_recovery_no_infection() {
        let mut g = init_random_graph(60, 150, 0.5, &mut stream_rng(5, 0)).unwrap();
        let params = SisParams {
            p: 0.0,
            r: 1.0,
            w0: 0.0,
        };
        g.step(&params, &mut stream_rng(5, 1));
        assert!(g.states().iter().all(|&s| s == NodeState::S));
    }

    #[test]
    fn certain_infection_single_edge() {
        let mut g = graph(&[NodeState::S, NodeState::I], &[(0, 1)]);
        let params = SisParams {
            p: 1.0,
            r: 0.0,
            w0: 0.0,
        };
        g.step(&params, &mut stream_rng(6, 0));
        assert_eq!(g.state(0), NodeState::I);
        assert_eq!(g.state(1), NodeState::I);
    }

    #[test]
    fn observables_k3_all_infected() {
        let g = graph(
            &[NodeState::I, NodeState::I, NodeState::I],
            &[(0, 1), (0, 2), (1, 2)],
        );
        let obs = g.observables();
        assert_eq!(obs.theta_i, 1.0);
        assert_eq!(obs.g_ii, 1.0);
        assert_eq!(obs.g_ss, 0.0);
        assert_eq!(obs.g_si, 0.0);
    }

    #[test]
    fn observables_mixed_edges() {
        let g = graph(
            &[NodeState::S, NodeState::S, NodeState::I],
            &[(0, 1), (1, 2)],
        );
        let obs = g.observables();
        assert_eq!(obs.g_ss, 0.5);
        assert_eq!(obs.g_si, 0.5);
    }

    #[test]
    fn step_preserves_counts_and_structure() {
        let mut g = init_random_graph(200, 600, 0.3, &mut stream_rng(7, 0)).unwrap();
        let mut rng = stream_rng(7, 1);
        let params = SisParams {
            p: 0.1,
            r: 0.05,
            w0: 1.5,
        };
        for _ in 0..200 {
            g.step(&params, &mut rng);
            assert_eq!(g.n_edges(), 600);
            assert_eq!(g.n_nodes(), 200);
        }
        g.check_invariants().unwrap();
    }

    #[test]
    fn monotonicity_under_one_sided_rules() {
        // p = 0: infections never increase
        let mut g = init_random_graph(150, 400, 0.4, &mut stream_rng(8, 0)).unwrap();
        let mut rng = stream_rng(8, 1);
        let params = SisParams {
            p: 0.0,
            r: 0.1,
            w0: 1.0,
        };
        let mut prev = g.observables().counts.0;
        for _ in 0..50 {
            g.step(&params, &mut rng);
            let now = g.observables().counts.0;
            assert!(now <= prev);
            prev = now;
        }
        // r = 0, w0 = 0: susceptibles never increase
        let mut g = init_random_graph(150, 400, 0.1, &mut stream_rng(9, 0)).unwrap();
        let mut rng = stream_rng(9, 1);
        let params = SisParams {
            p: 0.05,
            r: 0.0,
            w0: 0.0,
        };
        let mut prev_s = 150 - g.observables().counts.0;
        for _ in 0..50 {
            g.step(&params, &mut rng);
            let s = 150 - g.observables().counts.0;
            assert!(s <= prev_s);
            prev_s = s;
        }
    }

    #[test]
    fn step_is_reproducible() {
        let g0 = init_random_graph(100, 300, 0.2, &mut stream_rng(10, 0)).unwrap();
        let params = SisParams {
            p: 0.08,
            r: 0.02,
            w0: 2.0,
        };
        let run = |seed_stream: u64| {
            let mut g = g0.clone();
            let mut rng = stream_rng(11, seed_stream);
            for _ in 0..100 {
                g.step(&params, &mut rng);
            }
            (g.states().to_vec(), g.edges().to_vec())
        };
        assert_eq!(run(0), run(0));
        assert_ne!(run(0).1, run(1).1);
    }

    #[test]
    fn rewiring_keeps_link_when_no_target() {
        // two nodes: single SI edge, no other susceptible exists
        let mut g = graph(&[NodeState::S, NodeState::I], &[(0, 1)]);
        let params = SisParams {
            p: 0.0,
            r: 0.0,
            w0: 1e9, // forces w = 1
        };
        g.step(&params, &mut stream_rng(12, 0));
        assert_eq!(g.edges(), &[(0, 1)]);
    }
}
