use super::graph::{LabeledGraph, NodeState};

/// Column names for the 13 motif classes, in storage order.
///
/// Classes 0-2 are labeled edges, 3-8 are induced open triads keyed by
/// center label and the unordered end-label pair, 9-12 are triangles keyed
/// by their infected count.
pub const MOTIF_NAMES: [&str; 13] = [
    "edge_ss",
    "edge_si",
    "edge_ii",
    "triad_s_ss",
    "triad_s_si",
    "triad_s_ii",
    "triad_i_ss",
    "triad_i_si",
    "triad_i_ii",
    "tri_sss",
    "tri_ssi",
    "tri_sii",
    "tri_iii",
];

/// Counts and per-size-class fractions of the 13 labeled motifs.
///
/// Fractions: edge classes are normalized by L; open triads and triangles
/// are normalized jointly by the total number of connected induced 3-node
/// subgraphs. A size class with zero total keeps zero fractions.
#[derive(Debug, Clone, PartialEq)]
pub struct MotifVector {
    pub counts: [u64; 13],
    pub fractions: [f64; 13],
}

impl MotifVector {
    fn from_counts(counts: [u64; 13]) -> Self {
        let mut fractions = [0.0; 13];
        let edge_total: u64 = counts[..3].iter().sum();
        if edge_total > 0 {
            for k in 0..3 {
                fractions[k] = counts[k] as f64 / edge_total as f64;
            }
        }
        let tri_total: u64 = counts[3..].iter().sum();
        if tri_total > 0 {
            for k in 3..13 {
                fractions[k] = counts[k] as f64 / tri_total as f64;
            }
        }
        MotifVector { counts, fractions }
    }
}

fn triad_class(center: NodeState, a: NodeState, b: NodeState) -> usize {
    let ends = match (a, b) {
        (NodeState::S, NodeState::S) => 0,
        (NodeState::I, NodeState::I) => 2,
        _ => 1,
    };
    match center {
        NodeState::S => 3 + ends,
        NodeState::I => 6 + ends,
    }
}

fn triangle_class(a: NodeState, b: NodeState, c: NodeState) -> usize {
    let infected = [a, b, c].iter().filter(|&&s| s == NodeState::I).count();
    9 + infected
}

/// Census of the 13 labeled connected subgraphs on at most 3 nodes.
///
/// Open triads are counted as induced (the two ends not adjacent), so the
/// classes partition all connected induced subgraphs of size 2 and 3. Each
/// triangle is attributed once, at its smallest-index vertex.
pub fn motif_census(graph: &LabeledGraph) -> MotifVector {
    let mut counts = [0u64; 13];

    for &(u, v) in graph.edges() {
        let class = match (graph.state(u as usize), graph.state(v as usize)) {
            (NodeState::S, NodeState::S) => 0,
            (NodeState::I, NodeState::I) => 2,
            _ => 1,
        };
        counts[class] += 1;
    }

    // sorted adjacency once; membership tests then run on the smaller list
    let n = graph.n_nodes();
    let mut nbrs: Vec<Vec<u32>> = vec![Vec::new(); n];
    for v in 0..n {
        let mut list: Vec<u32> = graph.neighbors(v).iter().copied().collect();
        list.sort_unstable();
        nbrs[v] = list;
    }
    let adjacent = |a: u32, b: u32| -> bool {
        let (short, key) = if nbrs[a as usize].len() <= nbrs[b as usize].len() {
            (&nbrs[a as usize], b)
        } else {
            (&nbrs[b as usize], a)
        };
        short.binary_search(&key).is_ok()
    };

    for c in 0..n {
        let list = &nbrs[c];
        for ai in 0..list.len() {
            for bi in (ai + 1)..list.len() {
                let (a, b) = (list[ai], list[bi]);
                if adjacent(a, b) {
                    // triangle {c,a,b}; count once at its smallest vertex
                    if (c as u32) < a {
                        counts[triangle_class(
                            graph.state(c),
                            graph.state(a as usize),
                            graph.state(b as usize),
                        )] += 1;
                    }
                } else {
                    counts[triad_class(
                        graph.state(c),
                        graph.state(a as usize),
                        graph.state(b as usize),
                    )] += 1;
                }
            }
        }
    }

    MotifVector::from_counts(counts)
}

#[cfg(test)]
pub(crate) fn motif_census_brute_force(graph: &LabeledGraph) -> MotifVector {
    let n = graph.n_nodes();
    let mut counts = [0u64; 13];
    let adj = |a: usize, b: usize| graph.neighbors(a).contains(&(b as u32));

    for u in 0..n {
        for v in (u + 1)..n {
            if adj(u, v) {
                let class = match (graph.state(u), graph.state(v)) {
                    (NodeState::S, NodeState::S) => 0,
                    (NodeState::I, NodeState::I) => 2,
                    _ => 1,
                };
                counts[class] += 1;
            }
        }
    }

    for u in 0..n {
        for v in (u + 1)..n {
            for w in (v + 1)..n {
                let e = [adj(u, v), adj(u, w), adj(v, w)];
                match e.iter().filter(|&&x| x).count() {
                    3 => {
                        counts[triangle_class(graph.state(u), graph.state(v), graph.state(w))] += 1
                    }
                    2 => {
                        // the center is incident to both present edges
                        let (center, a, b) = if !e[0] {
                            (w, u, v)
                        } else if !e[1] {
                            (v, u, w)
                        } else {
                            (u, v, w)
                        };
                        counts[triad_class(
                            graph.state(center),
                            graph.state(a),
                            graph.state(b),
                        )] += 1;
                    }
                    _ => {}
                }
            }
        }
    }
    MotifVector::from_counts(counts)
}
