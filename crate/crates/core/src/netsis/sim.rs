use rand::Rng;

use super::graph::{LabeledGraph, Observables, SisParams, StepScratch};
use super::motifs::{motif_census, MotifVector};
use crate::error::CoreError;
use crate::Result;

/// One recorded row of a network trajectory.
#[derive(Debug, Clone)]
pub struct TrajectoryRecord {
    pub step: u64,
    pub observables: Observables,
    pub motifs: Option<MotifVector>,
}

/// Run `n_steps` of the model, recording observables at steps
/// 0, record_every, 2 * record_every, ...
///
/// `motifs_every` additionally attaches a motif census every that many
/// recorded rows (0 disables the census). Deterministic for a fixed rng.
pub fn simulate<R: Rng>(
    graph: &mut LabeledGraph,
    params: &SisParams,
    n_steps: u64,
    record_every: u64,
    motifs_every: u64,
    rng: &mut R,
) -> Result<Vec<TrajectoryRecord>> {
    if n_steps < 1 {
        return Err(CoreError::config("n_steps must be >= 1".to_string()));
    }
    if record_every < 1 {
        return Err(CoreError::config("record_every must be >= 1".to_string()));
    }
    params.validate()?;

    let l0 = graph.n_edges();
    let mut scratch = StepScratch::default();
    let mut records = Vec::with_capacity((n_steps / record_every + 1) as usize);
    let mut recorded_rows = 0u64;
    let mut record = |g: &LabeledGraph, step: u64, rows: &mut u64, out: &mut Vec<TrajectoryRecord>| {
        let motifs = if motifs_every > 0 && *rows % motifs_every == 0 {
            Some(motif_census(g))
        } else {
            None
        };
        *rows += 1;
        out.push(TrajectoryRecord {
            step,
            observables: g.observables(),
            motifs,
        });
    };

    record(graph, 0, &mut recorded_rows, &mut records);
    for step in 1..=n_steps {
        graph.step_with_scratch(params, rng, &mut scratch);
        debug_assert_eq!(graph.n_edges(), l0);
        if step % record_every == 0 {
            record(graph, step, &mut recorded_rows, &mut records);
        }
    }
    Ok(records)
}

/// Result of a nominal-graph search: the first graph whose coarse variables
/// land within `eps_t` of the target.
#[derive(Debug)]
pub struct NominalSearch {
    pub graph: LabeledGraph,
    pub steps_taken: u64,
    pub observables: Observables,
}

/// Simulate until `(theta_I, g_SS)` lies within Euclidean distance `eps_t`
/// of `target`. Errors when `max_steps` is exhausted without a hit.
pub fn find_nominal_graph<R: Rng>(
    graph: &LabeledGraph,
    params: &SisParams,
    target: (f64, f64),
    eps_t: f64,
    max_steps: u64,
    rng: &mut R,
) -> Result<NominalSearch> {
    if eps_t <= 0.0 {
        return Err(CoreError::config("eps_t must be positive".to_string()));
    }
    params.validate()?;

    let close = |obs: &Observables| {
        let d0 = obs.theta_i - target.0;
        let d1 = obs.g_ss - target.1;
        (d0 * d0 + d1 * d1).sqrt() < eps_t
    };

    let mut g = graph.clone();
    let mut scratch = StepScratch::default();
    let obs = g.observables();
    if close(&obs) {
        return Ok(NominalSearch {
            graph: g,
            steps_taken: 0,
            observables: obs,
        });
    }
    for step in 1..=max_steps {
        g.step_with_scratch(params, rng, &mut scratch);
        let obs = g.observables();
        if close(&obs) {
            return Ok(NominalSearch {
                graph: g,
                steps_taken: step,
                observables: obs,
            });
        }
    }
    Err(CoreError::SearchFailure(format!(
        "no graph within {eps_t} of target ({}, {}) in {max_steps} steps",
        target.0, target.1
    )))
}
