//! End-to-end acceptance criteria. Runs as a plain binary so that every
//! criterion prints its own PASS/FAIL line even when the suite succeeds.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::v;
use dynbfs::state::{
    check_child_order, check_contiguous_levels, check_depth_parent_rule, check_stable_level_order,
    check_tree_validity,
};
use dynbfs::trace::{SplitMix64, TraceOp};
use dynbfs::{
    build_initial, generate, verify, DynamicBfs, DynamicDigraph, UpdateOutcome, VertexId,
};

type Levels = BTreeMap<VertexId, u32>;

fn levels(e: &DynamicBfs) -> Levels {
    e.state()
        .tree
        .discovered()
        .map(|u| (u, e.state().level(u).unwrap()))
        .collect()
}

fn apply(e: &mut DynamicBfs, op: TraceOp) -> Option<UpdateOutcome> {
    match op {
        TraceOp::Insert(x, y) => Some(e.insert_edge(x, y).unwrap()),
        TraceOp::Delete(x, y) => Some(e.delete_edge(x, y).unwrap()),
        TraceOp::Check => None,
    }
}

/// What the randomized corpus run observed, shared by criteria 1, 2, 3 and 6.
#[derive(Default)]
struct CorpusReport {
    traces: usize,
    updates: usize,
    elapsed: Duration,
    oracle_failures: Vec<String>,
    invariant_failures: Vec<String>,
    monotonicity_failures: Vec<String>,
    work_bound_failures: Vec<String>,
}

const SEEDS: u64 = 50;
const SIZES: [u32; 4] = [8, 16, 32, 64];
const MIXED_UPDATES: usize = 200;

fn run_corpus() -> CorpusReport {
    let mut report = CorpusReport::default();
    let started = Instant::now();
    for seed in 0..SEEDS {
        for &n in &SIZES {
            let m = (1 + seed % 4) * n as u64;
            let trace = generate(seed, n, m, MIXED_UPDATES, 0.5).unwrap();
            let mut e = DynamicBfs::new(DynamicDigraph::with_vertices(n as usize), v(0)).unwrap();
            report.traces += 1;
            for (i, &op) in trace.ops.iter().enumerate() {
                let before = levels(&e);
                let Some(out) = apply(&mut e, op) else {
                    continue;
                };
                report.updates += 1;
                let at = format!("seed {seed} n {n} op {i} {op:?}");

                let verdict = verify(e.state(), e.graph(), v(0));
                if !verdict.is_ok() {
                    report
                        .oracle_failures
                        .push(format!("{at}: {:?}", verdict.diffs));
                }

                let s = e.state();
                let broken = [
                    ("I1", check_depth_parent_rule(s).len()),
                    ("I2", check_contiguous_levels(s).len()),
                    ("I3", check_stable_level_order(s).len()),
                ];
                for (name, count) in broken {
                    if count > 0 {
                        report
                            .invariant_failures
                            .push(format!("{at}: {name} x{count}"));
                    }
                }

                let after = levels(&e);
                let monotone = match op {
                    TraceOp::Insert(..) => before
                        .iter()
                        .all(|(u, l)| after.get(u).is_some_and(|a| a <= l)),
                    _ => after
                        .iter()
                        .all(|(u, l)| before.get(u).is_some_and(|b| b <= l)),
                };
                if !monotone {
                    report.monotonicity_failures.push(at.clone());
                }

                let c = out.counters;
                let edges = e.graph().edge_count() as u64;
                if c.vertices_touched > n as u64 + 2 || c.edges_examined > edges {
                    report
                        .work_bound_failures
                        .push(format!("{at}: {c:?} with m={edges}"));
                }
            }
        }
    }
    report.elapsed = started.elapsed();
    report
}

fn summarize(failures: &[String]) -> String {
    match failures.first() {
        None => String::new(),
        Some(first) => format!("{} failures, first: {first}", failures.len()),
    }
}

type Outcome = Result<String, String>;

fn criterion_1(r: &CorpusReport) -> Outcome {
    let detail = format!(
        "{} traces, {} updates verified in {:.1?}",
        r.traces, r.updates, r.elapsed
    );
    if !r.oracle_failures.is_empty() {
        return Err(format!("{detail}; {}", summarize(&r.oracle_failures)));
    }
    if r.elapsed >= Duration::from_secs(60) {
        return Err(format!("{detail}; over the 60 s budget"));
    }
    Ok(detail)
}

fn criterion_2(r: &CorpusReport) -> Outcome {
    if !r.invariant_failures.is_empty() {
        return Err(summarize(&r.invariant_failures));
    }
    let injected = fault_injection();
    Ok(format!(
        "I1/I2/I3 clean after {} updates; {injected} injected faults all detected",
        r.updates
    ))
}

/// Each checker must flag at least three kinds of corruption.
fn fault_injection() -> usize {
    let broom = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)];
    let fresh = || {
        let g = DynamicDigraph::from_edges(7, broom).unwrap();
        let s = build_initial(&g, v(0)).unwrap();
        (g, s)
    };
    let mut count = 0;
    let mut expect = |flagged: bool, what: &str| {
        assert!(flagged, "undetected fault: {what}");
        count += 1;
    };

    // I1
    let (_, mut s) = fresh();
    s.tree.set_level(v(4), 7).unwrap();
    expect(!check_depth_parent_rule(&s).is_empty(), "I1 level bump");
    let (_, mut s) = fresh();
    s.tree.remove_edge(v(1), v(4)).unwrap();
    expect(
        !check_depth_parent_rule(&s).is_empty(),
        "I1 detached vertex",
    );
    let (_, mut s) = fresh();
    s.tree.remove_edge(v(2), v(5)).unwrap();
    s.tree.add_edge(v(0), v(5)).unwrap();
    expect(
        !check_depth_parent_rule(&s).is_empty(),
        "I1 parent one level too high",
    );

    // I2
    let (_, mut s) = fresh();
    s.numbering.swap_indices(4, 5);
    expect(
        !check_contiguous_levels(&s).is_empty(),
        "I2 swap across boundary",
    );
    let (_, mut s) = fresh();
    s.numbering.truncate_levels(2);
    expect(
        !check_contiguous_levels(&s).is_empty(),
        "I2 truncated boundaries",
    );
    let (_, mut s) = fresh();
    s.numbering.set_level_end(1, 5).unwrap();
    expect(
        !check_contiguous_levels(&s).is_empty(),
        "I2 shifted boundary",
    );

    // I3
    for (i, j) in [(5, 6), (6, 7), (5, 7)] {
        let (_, mut s) = fresh();
        s.numbering.swap_indices(i, j);
        expect(
            !check_stable_level_order(&s).is_empty(),
            "I3 same-level swap",
        );
    }

    // child order and tree validity
    let (_, mut s) = fresh();
    s.numbering.swap_indices(2, 3);
    expect(!check_child_order(&s).is_empty(), "child order");
    let (mut g, s) = fresh();
    g.raw_delete_edge(v(3), v(6)).unwrap();
    expect(!check_tree_validity(&s, &g).is_empty(), "missing tree edge");
    let (mut g, s) = fresh();
    g.raw_insert_edge(v(0), v(6)).unwrap();
    expect(
        !check_tree_validity(&s, &g).is_empty(),
        "shallower predecessor",
    );
    count
}

fn criterion_3(r: &CorpusReport) -> Outcome {
    if r.monotonicity_failures.is_empty() {
        Ok(format!(
            "{} updates, no level moved the wrong way",
            r.updates
        ))
    } else {
        Err(summarize(&r.monotonicity_failures))
    }
}

/// Absent pair `(x, y)` whose insertion the repair guards reject.
fn is_guard_hit(e: &DynamicBfs, x: VertexId, y: VertexId) -> bool {
    let s = e.state();
    let Some(lx) = s.level(x) else { return true };
    let Some(ly) = s.level(y) else { return false };
    if ly > lx + 1 {
        return false;
    }
    !(ly == lx + 1 && s.parent(y).and_then(|p| s.index_of(p)) > s.index_of(x))
}

fn criterion_4() -> Outcome {
    let mut rng = SplitMix64::new(4);
    let (mut inserts, mut deletes) = (0, 0);
    let mut graphs = 0;
    while inserts < 100 || deletes < 100 {
        let n = 12;
        let trace = generate(1000 + graphs, n, 20, 0, 1.0).unwrap();
        graphs += 1;
        let mut e = DynamicBfs::new(DynamicDigraph::with_vertices(n as usize), v(0)).unwrap();
        for &op in &trace.ops {
            apply(&mut e, op);
        }
        for _ in 0..40 {
            let x = v(rng.below(n as u64) as u32);
            let y = v(rng.below(n as u64) as u32);
            if x == y {
                continue;
            }
            let before = e.state().snapshot();
            if !e.graph().has_edge(x, y) && is_guard_hit(&e, x, y) && inserts < 100 {
                let out = e.insert_edge(x, y).unwrap();
                if out.changed || out.counters.edges_examined != 0 {
                    return Err(format!("insert {x}->{y}: {out:?}"));
                }
                if e.state().snapshot() != before {
                    return Err(format!("insert {x}->{y} changed the snapshot"));
                }
                inserts += 1;
            } else if e.graph().has_edge(x, y) && e.state().parent(y) != Some(x) && deletes < 100 {
                let out = e.delete_edge(x, y).unwrap();
                if out.changed || e.state().snapshot() != before {
                    return Err(format!("delete {x}->{y} changed the state"));
                }
                deletes += 1;
            }
        }
    }
    Ok(format!(
        "{inserts} guard-hit inserts, {deletes} non-tree deletes, snapshots identical"
    ))
}

fn criterion_5() -> Outcome {
    let n = 1024u32;
    let path: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    let mut e =
        DynamicBfs::new(DynamicDigraph::from_edges(n as usize, path).unwrap(), v(0)).unwrap();
    let budget = 0.05 * (n as f64 + (n - 1) as f64);
    let del = e.delete_edge(v(n - 2), v(n - 1)).unwrap();
    let ins = e.insert_edge(v(n - 2), v(n - 1)).unwrap();
    let touched = del.counters.vertices_touched + ins.counters.vertices_touched;
    if !verify(e.state(), e.graph(), v(0)).is_ok() {
        return Err("path state broken after delete+reinsert".into());
    }
    if touched as f64 >= budget {
        return Err(format!("path: {touched} touched, budget {budget:.1}"));
    }

    // root -> a, root -> hub, hub -> leaves; hang the first leaf under a
    let leaves = 1000u32;
    let mut edges = vec![(0, 1), (0, 2)];
    edges.extend((3..3 + leaves).map(|l| (2, l)));
    let mut star = DynamicBfs::new(
        DynamicDigraph::from_edges(3 + leaves as usize, edges).unwrap(),
        v(0),
    )
    .unwrap();
    let out = star.insert_edge(v(1), v(3)).unwrap();
    if star.state().parent(v(3)) != Some(v(1)) || !verify(star.state(), star.graph(), v(0)).is_ok()
    {
        return Err("star reparent did not produce a valid state".into());
    }
    let star_touched = out.counters.vertices_touched;
    if star_touched > 8 {
        return Err(format!("star: {star_touched} touched"));
    }
    Ok(format!(
        "path: {touched} touched (budget {budget:.1}); star: {star_touched} touched"
    ))
}

fn criterion_6(r: &CorpusReport) -> Outcome {
    if r.work_bound_failures.is_empty() {
        Ok(format!(
            "{} updates within n+2 vertices and m edges",
            r.updates
        ))
    } else {
        Err(summarize(&r.work_bound_failures))
    }
}

fn criterion_7() -> Outcome {
    let mut rng = SplitMix64::new(7);
    let mut done = 0;
    let mut graph_seed = 0;
    while done < 500 {
        let n = 8 + (graph_seed % 4) as u32 * 8;
        let trace = generate(5000 + graph_seed, n, 3 * n as u64, 0, 1.0).unwrap();
        graph_seed += 1;
        let mut e = DynamicBfs::new(DynamicDigraph::with_vertices(n as usize), v(0)).unwrap();
        for &op in &trace.ops {
            apply(&mut e, op);
        }
        for _ in 0..10 {
            let tree_edges: Vec<_> = e
                .state()
                .tree
                .discovered()
                .filter_map(|u| e.state().parent(u).map(|p| (p, u)))
                .collect();
            if tree_edges.is_empty() {
                break;
            }
            let (x, y) = tree_edges[rng.below(tree_edges.len() as u64) as usize];
            let before = levels(&e);
            e.delete_edge(x, y).unwrap();
            e.insert_edge(x, y).unwrap();
            if levels(&e) != before {
                return Err(format!(
                    "round trip {done}: ({x},{y}) changed the level map"
                ));
            }
            let verdict = verify(e.state(), e.graph(), v(0));
            if !verdict.is_ok() {
                return Err(format!("round trip {done}: {:?}", verdict.diffs));
            }
            done += 1;
            if done == 500 {
                break;
            }
        }
    }
    Ok(format!(
        "{done} delete/reinsert pairs restored levels and reachability"
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = SplitMix64::new(8);
    for case in 0..50u64 {
        // main part on 0..a, detached part on a..a+b with random internal edges
        let a = 3 + rng.below(10) as u32;
        let b = 2 + rng.below(10) as u32;
        let n = a + b;
        let mut g = DynamicDigraph::with_vertices(n as usize);
        for i in 1..a {
            g.raw_insert_edge(v(rng.below(i as u64) as u32), v(i))
                .unwrap();
        }
        for _ in 0..2 * b {
            let x = a + rng.below(b as u64) as u32;
            let y = a + rng.below(b as u64) as u32;
            g.raw_insert_edge(v(x), v(y)).unwrap();
        }
        // edges back into the main part must not matter
        g.raw_insert_edge(
            v(a + rng.below(b as u64) as u32),
            v(rng.below(a as u64) as u32),
        )
        .unwrap();
        let mut e = DynamicBfs::new(g, v(0)).unwrap();
        let before: BTreeSet<_> = e.state().tree.discovered().collect();
        let x = v(rng.below(a as u64) as u32);
        let y = v(a + rng.below(b as u64) as u32);
        let out = e.insert_edge(x, y).unwrap();

        let verdict = verify(e.state(), e.graph(), v(0));
        if !verdict.is_ok() {
            return Err(format!("case {case}: {:?}", verdict.diffs));
        }
        if !check_contiguous_levels(e.state()).is_empty() {
            return Err(format!("case {case}: numbering not contiguous"));
        }
        let after: BTreeSet<_> = e.state().tree.discovered().collect();
        let gained: BTreeSet<_> = after.difference(&before).copied().collect();
        let reported: BTreeSet<_> = out.newly_discovered.iter().copied().collect();
        if gained.is_empty() || gained != reported {
            return Err(format!(
                "case {case}: gained {gained:?}, reported {reported:?}"
            ));
        }
        let exact = dynbfs::static_distances(e.graph(), v(0));
        if gained
            .iter()
            .any(|u| e.state().level(*u) != exact.get(u).copied())
        {
            return Err(format!("case {case}: wrong level on a merged vertex"));
        }
    }
    Ok("50 merges verified".into())
}

fn run(number: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    match &result {
        Ok(detail) => println!("criterion {number} PASS  {name}: {detail}"),
        Err(detail) => println!("criterion {number} FAIL  {name}: {detail}"),
    }
    result.is_ok()
}

fn main() -> ExitCode {
    let corpus = run_corpus();
    let results = [
        run(1, "oracle equivalence", || criterion_1(&corpus)),
        run(2, "invariants", || criterion_2(&corpus)),
        run(3, "monotonicity", || criterion_3(&corpus)),
        run(4, "no-op stability", criterion_4),
        run(5, "locality", criterion_5),
        run(6, "work bound", || criterion_6(&corpus)),
        run(7, "round trip", criterion_7),
        run(8, "component merge", criterion_8),
    ];
    if results.iter().all(|&ok| ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
