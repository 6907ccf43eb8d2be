//! Trace replay with per-operation metrics, and the dynamic-versus-recompute
//! benchmark.

use std::io::{self, Write};
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::engine::{build_initial, DynamicBfs, WorkCounters};
use crate::error::BfsError;
use crate::graph::DynamicDigraph;
use crate::oracle::verify;
use crate::trace::{TraceOp, UpdateTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReplayMode {
    /// Oracle check after every operation.
    Verify,
    /// Oracle check only at `!` checkpoints.
    Fast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OpKind {
    Insert,
    Delete,
    Check,
}

/// One JSON line per trace operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricsRecord {
    pub op_index: usize,
    pub op_kind: OpKind,
    pub changed: bool,
    pub vertices_touched: u64,
    pub edges_examined: u64,
    pub emits: u64,
    pub fast_path_skips: u64,
    /// `n + m` after the operation: what a from-scratch rebuild would scan.
    pub recompute_cost: u64,
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("op {op_index}: {source}")]
    Engine {
        op_index: usize,
        #[source]
        source: BfsError,
    },
    #[error("op {op_index}: verification failed:\n  {}", diffs.join("\n  "))]
    Verification { op_index: usize, diffs: Vec<String> },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReplaySummary {
    pub ops: usize,
    pub checks: usize,
    pub totals: WorkCounters,
}

fn fresh_engine(trace: &UpdateTrace) -> Result<DynamicBfs, ReplayError> {
    DynamicBfs::new(DynamicDigraph::with_vertices(trace.n as usize), trace.root).map_err(|source| {
        ReplayError::Engine {
            op_index: 0,
            source,
        }
    })
}

pub fn replay<W: Write>(
    trace: &UpdateTrace,
    mode: ReplayMode,
    metrics: &mut W,
) -> Result<ReplaySummary, ReplayError> {
    replay_with(trace, mode, metrics, |_, _| {})
}

/// Like [`replay`], with `hook` called after each operation is applied and
/// before it is checked. Tests use it to corrupt state on purpose.
pub fn replay_with<W, H>(
    trace: &UpdateTrace,
    mode: ReplayMode,
    metrics: &mut W,
    mut hook: H,
) -> Result<ReplaySummary, ReplayError>
where
    W: Write,
    H: FnMut(usize, &mut DynamicBfs),
{
    let mut engine = fresh_engine(trace)?;
    let mut summary = ReplaySummary::default();

    for (op_index, op) in trace.ops.iter().enumerate() {
        let (kind, outcome) = match *op {
            TraceOp::Insert(x, y) => (OpKind::Insert, Some(engine.insert_edge(x, y))),
            TraceOp::Delete(x, y) => (OpKind::Delete, Some(engine.delete_edge(x, y))),
            TraceOp::Check => (OpKind::Check, None),
        };
        let outcome = outcome
            .transpose()
            .map_err(|source| ReplayError::Engine { op_index, source })?;
        hook(op_index, &mut engine);

        let counters = outcome.as_ref().map(|o| o.counters).unwrap_or_default();
        summary.totals += counters;
        summary.ops += 1;
        let record = MetricsRecord {
            op_index,
            op_kind: kind,
            changed: outcome.as_ref().is_some_and(|o| o.changed),
            vertices_touched: counters.vertices_touched,
            edges_examined: counters.edges_examined,
            emits: counters.emits,
            fast_path_skips: counters.fast_path_skips,
            recompute_cost: (engine.graph().vertex_count() + engine.graph().edge_count()) as u64,
        };
        serde_json::to_writer(&mut *metrics, &record).map_err(io::Error::from)?;
        metrics.write_all(b"\n")?;

        if kind == OpKind::Check || mode == ReplayMode::Verify {
            summary.checks += 1;
            let verdict = verify(engine.state(), engine.graph(), engine.root());
            if !verdict.is_ok() {
                return Err(ReplayError::Verification {
                    op_index,
                    diffs: verdict.diffs,
                });
            }
        }
    }
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub updates: usize,
    #[serde(rename = "dynamic_wall_secs", serialize_with = "as_secs")]
    pub dynamic_wall: Duration,
    #[serde(rename = "recompute_wall_secs", serialize_with = "as_secs")]
    pub recompute_wall: Duration,
    pub dynamic_touched: u64,
    pub dynamic_edges_examined: u64,
    /// Sum of `n + m` over all updates.
    pub recompute_work: u64,
    /// `dynamic_touched / recompute_work`.
    pub locality_ratio: f64,
    /// Final levels of both runs agree.
    pub final_states_agree: bool,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl BenchReport {
    pub fn table(&self) -> String {
        let speedup = if self.dynamic_wall.is_zero() {
            f64::INFINITY
        } else {
            self.recompute_wall.as_secs_f64() / self.dynamic_wall.as_secs_f64()
        };
        format!(
            "updates            {}\n\
             dynamic wall       {:.3} ms\n\
             recompute wall     {:.3} ms\n\
             speedup            {:.2}x\n\
             vertices touched   {}\n\
             edges examined     {}\n\
             recompute work     {}\n\
             locality ratio     {:.5}\n\
             final states agree {}\n",
            self.updates,
            self.dynamic_wall.as_secs_f64() * 1e3,
            self.recompute_wall.as_secs_f64() * 1e3,
            speedup,
            self.dynamic_touched,
            self.dynamic_edges_examined,
            self.recompute_work,
            self.locality_ratio,
            self.final_states_agree,
        )
    }
}

/// Runs the trace twice: once through the dynamic engine, once rebuilding
/// from scratch after every update. Checkpoints are ignored.
pub fn bench(trace: &UpdateTrace) -> Result<BenchReport, ReplayError> {
    let mut engine = fresh_engine(trace)?;
    let mut totals = WorkCounters::default();
    let mut recompute_work = 0u64;
    let mut updates = 0usize;

    let start = Instant::now();
    for (op_index, op) in trace.ops.iter().enumerate() {
        let outcome = match *op {
            TraceOp::Insert(x, y) => engine.insert_edge(x, y),
            TraceOp::Delete(x, y) => engine.delete_edge(x, y),
            TraceOp::Check => continue,
        }
        .map_err(|source| ReplayError::Engine { op_index, source })?;
        totals += outcome.counters;
        updates += 1;
        recompute_work += (engine.graph().vertex_count() + engine.graph().edge_count()) as u64;
    }
    let dynamic_wall = start.elapsed();

    let mut graph = DynamicDigraph::with_vertices(trace.n as usize);
    let mut rebuilt = None;
    let start = Instant::now();
    for (op_index, op) in trace.ops.iter().enumerate() {
        let applied = match *op {
            TraceOp::Insert(x, y) => graph.raw_insert_edge(x, y),
            TraceOp::Delete(x, y) => graph.raw_delete_edge(x, y),
            TraceOp::Check => continue,
        };
        let engine_err = |source| ReplayError::Engine { op_index, source };
        applied.map_err(engine_err)?;
        rebuilt = Some(build_initial(&graph, trace.root).map_err(engine_err)?);
    }
    let recompute_wall = start.elapsed();

    let final_states_agree = match &rebuilt {
        Some(state) => graph
            .vertices()
            .all(|v| state.level(v) == engine.state().level(v)),
        None => true,
    };

    Ok(BenchReport {
        updates,
        dynamic_wall,
        recompute_wall,
        dynamic_touched: totals.vertices_touched,
        dynamic_edges_examined: totals.edges_examined,
        recompute_work,
        locality_ratio: if recompute_work == 0 {
            0.0
        } else {
            totals.vertices_touched as f64 / recompute_work as f64
        },
        final_states_agree,
    })
}
