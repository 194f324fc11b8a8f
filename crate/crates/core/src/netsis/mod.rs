//! The full adaptive SIS network model.
//!
//! A population of `N` individuals sits on an undirected graph with a fixed
//! number of links `L`. Nodes are susceptible (S) or infected (I). One
//! discrete time step applies three substeps in order: recovery of infected
//! nodes with probability `r`, infection across each SI link with probability
//! `p`, and rewiring of each SI link with probability `w = w0 * theta_I`,
//! where the susceptible endpoint keeps the edge and reattaches it to a
//! uniformly chosen non-adjacent susceptible node. Each substep is
//! synchronous with respect to the labels at its own start.

mod graph;
mod io;
mod motifs;
mod sim;

pub use graph::{init_random_graph, LabeledGraph, NodeState, Observables, SisParams};
pub use io::{read_snapshot, write_snapshot, write_trajectory_csv};
pub use motifs::{motif_census, MotifVector, MOTIF_NAMES};
pub use sim::{find_nominal_graph, simulate, NominalSearch, TrajectoryRecord};
