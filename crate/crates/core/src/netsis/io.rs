use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::graph::{LabeledGraph, NodeState};
use super::motifs::MOTIF_NAMES;
use super::sim::TrajectoryRecord;
use crate::error::CoreError;
use crate::Result;

/// Write a trajectory as CSV: `step,theta_I,g_SS,g_SI,g_II[,m01..m13]`.
///
/// Motif columns appear when any record carries a census; rows without one
/// leave those fields empty.
pub fn write_trajectory_csv(records: &[TrajectoryRecord], path: &Path) -> Result<()> {
    let with_motifs = records.iter().any(|r| r.motifs.is_some());
    let mut out = String::from("step,theta_I,g_SS,g_SI,g_II");
    if with_motifs {
        for k in 1..=MOTIF_NAMES.len() {
            let _ = write!(out, ",m{k:02}");
        }
    }
    out.push('\n');
    for r in records {
        let o = &r.observables;
        let _ = write!(
            out,
            "{},{},{},{},{}",
            r.step, o.theta_i, o.g_ss, o.g_si, o.g_ii
        );
        if with_motifs {
            match &r.motifs {
                Some(m) => {
                    for f in m.fractions {
                        let _ = write!(out, ",{f}");
                    }
                }
                None => out.push_str(&",".repeat(MOTIF_NAMES.len())),
            }
        }
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Save a graph snapshot: first line `N L`, second line node labels as a
/// string of S/I characters, then one `u v` pair per line (0-indexed).
pub fn write_snapshot(graph: &LabeledGraph, path: &Path) -> Result<()> {
    let mut out = format!("{} {}\n", graph.n_nodes(), graph.n_edges());
    for &s in graph.states() {
        out.push(match s {
            NodeState::S => 'S',
            NodeState::I => 'I',
        });
    }
    out.push('\n');
    for &(u, v) in graph.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    fs::write(path, out)?;
    Ok(())
}

/// Load a graph snapshot written by [`write_snapshot`].
pub fn read_snapshot(path: &Path) -> Result<LabeledGraph> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CoreError::data("empty snapshot file".to_string()))?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| CoreError::data("bad N in snapshot header".to_string()))?;
    let l: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| CoreError::data("bad L in snapshot header".to_string()))?;

    let labels = lines
        .next()
        .ok_or_else(|| CoreError::data("missing label line".to_string()))?;
    if labels.len() != n {
        return Err(CoreError::data(format!(
            "label line has {} chars, expected {n}",
            labels.len()
        )));
    }
    let states: Vec<NodeState> = labels
        .chars()
        .map(|c| match c {
            'S' => Ok(NodeState::S),
            'I' => Ok(NodeState::I),
            other => Err(CoreError::data(format!("bad label char {other:?}"))),
        })
        .collect::<Result<_>>()?;

    let mut edges = Vec::with_capacity(l);
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let u: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| CoreError::data(format!("bad edge line {line:?}")))?;
        let v: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| CoreError::data(format!("bad edge line {line:?}")))?;
        edges.push((u, v));
    }
    if edges.len() != l {
        return Err(CoreError::data(format!(
            "snapshot lists {} edges, header says {l}",
            edges.len()
        )));
    }
    LabeledGraph::from_parts(states, edges)
}
