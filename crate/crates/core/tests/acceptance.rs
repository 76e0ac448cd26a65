//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::time::Instant;

use kpath::bench::{emit_report, gen_queries, run_suite, Algorithm, ReportFormat, SuiteOptions};
use kpath::enumerate::{oracle_enumerate, BarrierPrune, BcDfs, EnumLimits, JoinPlan, ResultSet};
use kpath::generators::{layered_dag, random_graph, super_node_graph};
use kpath::graph::{build_graph, reverse, EdgeList, Graph, VertexId};
use kpath::pefp::{
    barrier_blocks, batch_slots, verify, verify_staged, BatchEntry, BatchOrder, EngineObserver,
    PefpEngine, TierConfig, TierState, VerifyInput, VerifyOutcome,
};
use kpath::preprocess::{bounded_bfs, pre_bfs, pre_bfs_with_reverse, BarrierMap, Query};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Case {
    g: Graph,
    rev: Graph,
    q: Query,
    cfg: TierConfig,
}

/// Seeded random graphs with n <= 64 and average out-degree <= 4, queried at
/// k = 2..=6 with one sampled reachable pair and one arbitrary pair each.
fn random_cases() -> (usize, Vec<Case>) {
    let graphs = 240u64;
    let mut cases = Vec::new();
    for seed in 0..graphs {
        let n = 8 + (seed % 57) as usize;
        let deg = 1.0 + (seed % 4) as f64;
        let g = random_graph(n, deg, seed);
        let cfg = TierConfig::new(1 + (seed % 8) as usize, 1 + (seed % 5) as usize).unwrap();
        for k in 2..=6u32 {
            let mut qs: Vec<Query> = gen_queries(&g, k, 1, seed * 31 + k as u64)
                .map(|qs| qs.queries)
                .unwrap_or_default();
            let s = (seed * 13 + k as u64) % n as u64;
            let t = (seed * 7 + 3 * k as u64 + 1) % n as u64;
            if s != t {
                qs.push(Query::new(s as u32, t as u32, k).unwrap());
            }
            for q in qs {
                cases.push(Case {
                    g: g.clone(),
                    rev: reverse(&g),
                    q,
                    cfg,
                });
            }
        }
    }
    (graphs as usize, cases)
}

fn oracle(g: &Graph, q: Query) -> ResultSet {
    oracle_enumerate(g, q, &EnumLimits::default()).unwrap()
}

fn criterion_1(graphs: usize, cases: &[Case]) -> Outcome {
    let limits = EnumLimits::default();
    let mut nonempty = 0;
    for c in cases {
        let expected = oracle(&c.g, c.q);
        nonempty += usize::from(!expected.is_empty());
        let bar = BarrierMap::for_target(&c.rev, c.q.target, c.q.k);
        let bcdfs = BcDfs::new(&c.g, &c.rev)
            .run(c.q, &bar, &limits)
            .unwrap()
            .results;
        let join = JoinPlan::prepare(&c.g, &c.rev, c.q)
            .enumerate(&limits)
            .unwrap();
        let pre = pre_bfs_with_reverse(&c.g, &c.rev, c.q).unwrap();
        let pefp = PefpEngine::new(&pre, c.cfg).run(&limits).unwrap().results;
        let fifo = PefpEngine::new(&pre, c.cfg)
            .order(BatchOrder::Fifo)
            .run(&limits)
            .unwrap()
            .results;
        for (name, got) in [
            ("bcdfs", bcdfs),
            ("join", join),
            ("pefp", pefp),
            ("pefp-fifo", fifo),
        ] {
            ensure(got == expected, || {
                format!(
                    "{name} differs from oracle on {:?} ({} vs {})",
                    c.q,
                    got.len(),
                    expected.len()
                )
            })?;
        }
    }
    Ok(format!(
        "{graphs} graphs, {} queries ({nonempty} with results), 0 mismatches",
        cases.len()
    ))
}

fn criterion_2(cases: &[Case]) -> Outcome {
    for c in cases {
        let pre = pre_bfs_with_reverse(&c.g, &c.rev, c.q).unwrap();
        let reduced = oracle(&pre.subgraph, pre.local_query()).map_vertices(&pre.mapping);
        ensure(reduced == oracle(&c.g, c.q), || {
            format!("subgraph result differs on {:?}", c.q)
        })?;
    }
    Ok(format!("{} queries, 0 mismatches", cases.len()))
}

fn criterion_3(cases: &[Case]) -> Outcome {
    let mut checked = 0usize;
    for c in cases {
        let q = c.q;
        // Recomputed independently of pre_bfs: radius k-1 on both sides.
        let from_s = bounded_bfs(&c.g, q.source, q.k - 1);
        let to_t = bounded_bfs(&c.rev, q.target, q.k - 1);
        let in_n = |v: VertexId| {
            v == q.source
                || v == q.target
                || matches!((from_s.get(v), to_t.get(v)), (Some(a), Some(b)) if a + b <= q.k)
        };
        let kept: HashSet<VertexId> = pre_bfs(&c.g, q)
            .unwrap()
            .mapping
            .kept()
            .iter()
            .copied()
            .collect();
        for p in &oracle(&c.g, q) {
            for &v in p.vertices() {
                checked += 1;
                ensure(in_n(v) && kept.contains(&v), || {
                    format!("vertex {v} of path [{p}] outside the (k-1)-hop set for {q:?}")
                })?;
            }
        }
    }
    Ok(format!("{checked} path vertices checked, 0 violations"))
}

fn criterion_4() -> Outcome {
    let path = |n: u32| (0..=n).map(VertexId).collect::<Vec<_>>();
    let check = |len: u32, bar: u32, k: u32| {
        let p = path(len);
        let input = VerifyInput {
            path: &p,
            successor: VertexId(100),
            barrier: bar,
            target: VertexId(200),
            k,
        };
        (
            barrier_blocks(len, bar, k),
            verify(&input),
            verify_staged(&input),
        )
    };
    let pruned = (
        true,
        VerifyOutcome::InvalidBarrier,
        VerifyOutcome::InvalidBarrier,
    );
    let kept = (false, VerifyOutcome::Valid, VerifyOutcome::Valid);
    ensure(check(2, 6, 7) == pruned, || "2+1+6 > 7 not pruned".into())?;
    ensure(check(4, 2, 6) == pruned, || "4+1+2 > 6 not pruned".into())?;
    ensure(check(3, 2, 6) == kept, || "3+1+2 <= 6 not kept".into())?;

    // The 2+1+6 case arising from a learned barrier inside BC-DFS.
    let g = build_graph(&EdgeList::new([
        (0, 1),
        (1, 2),
        (1, 3),
        (3, 2),
        (3, 4),
        (2, 1),
    ]));
    let rev = reverse(&g);
    let q = Query::new(0, 4, 7).unwrap();
    let out = BcDfs::new(&g, &rev)
        .log_prunes(true)
        .run(
            q,
            &BarrierMap::for_target(&rev, q.target, q.k),
            &EnumLimits::default(),
        )
        .unwrap();
    let expected = BarrierPrune {
        vertex: VertexId(2),
        path_len: 2,
        barrier: 6,
    };
    ensure(out.prunes == vec![expected], || {
        format!("learned prunes {:?}", out.prunes)
    })?;
    Ok("2+1+6=9>7 prune, 4+1+2=7>6 prune, 3+1+2=6<=6 keep".into())
}

#[derive(Default)]
struct CapacityProbe {
    capacity: usize,
    theta2: usize,
    hub: VertexId,
    violations: Vec<String>,
    hub_checks: HashMap<(Vec<VertexId>, VertexId), usize>,
}

impl CapacityProbe {
    fn check_buffer(&mut self, state: &TierState) {
        if state.buffer().len() > self.capacity {
            self.violations.push(format!(
                "buffer {} > capacity {}",
                state.buffer().len(),
                self.capacity
            ));
        }
    }
}

impl EngineObserver for CapacityProbe {
    fn on_batch(&mut self, batch: &[BatchEntry], state: &TierState) {
        let slots = batch_slots(batch);
        if slots > self.theta2 {
            self.violations
                .push(format!("batch slots {slots} > {}", self.theta2));
        }
        self.check_buffer(state);
    }

    fn on_verify(&mut self, input: &VerifyInput<'_>, _outcome: &VerifyOutcome) {
        if input.path.last() == Some(&self.hub) {
            *self
                .hub_checks
                .entry((input.path.to_vec(), input.successor))
                .or_default() += 1;
        }
    }

    fn on_push(&mut self, state: &TierState) {
        self.check_buffer(state);
    }
}

fn criterion_5() -> Outcome {
    let mut configs = 0;
    for theta2 in [1usize, 4, 64] {
        let (g, s, t, hub) = super_node_graph(100 * theta2);
        let q = Query {
            source: s,
            target: t,
            k: 4,
        };
        let expected = oracle(&g, q);
        let pre = pre_bfs(&g, q).unwrap();
        let local_hub = pre.mapping.to_new(hub).ok_or("hub pruned")?;
        let hub_succ: HashSet<VertexId> =
            pre.subgraph.successors(local_hub).iter().copied().collect();
        ensure(hub_succ.len() == 100 * theta2, || "hub fan pruned".into())?;
        for cap in [1usize, 2, 16] {
            let cfg = TierConfig::new(cap, theta2).unwrap();
            let mut probe = CapacityProbe {
                capacity: cap,
                theta2,
                hub: local_hub,
                ..CapacityProbe::default()
            };
            let out = PefpEngine::new(&pre, cfg)
                .run_observed(&EnumLimits::default(), &mut probe)
                .unwrap();
            let tag = format!("cap={cap} theta2={theta2}");
            ensure(out.results == expected, || {
                format!("{tag}: results differ from oracle")
            })?;
            ensure(probe.violations.is_empty(), || {
                format!("{tag}: {}", probe.violations[0])
            })?;
            ensure(out.stats.peak_buffer as usize <= cap, || {
                format!("{tag}: peak buffer")
            })?;
            ensure(out.stats.peak_batch_slots as usize <= theta2, || {
                format!("{tag}: peak slots")
            })?;
            let mut per_path: HashMap<&Vec<VertexId>, HashSet<VertexId>> = HashMap::new();
            for ((p, succ), n) in &probe.hub_checks {
                ensure(*n == 1, || {
                    format!("{tag}: successor {succ} verified {n} times")
                })?;
                per_path.entry(p).or_default().insert(*succ);
            }
            ensure(!per_path.is_empty(), || {
                format!("{tag}: hub never expanded")
            })?;
            for succs in per_path.values() {
                ensure(*succs == hub_succ, || {
                    format!(
                        "{tag}: {} of {} hub successors verified",
                        succs.len(),
                        hub_succ.len()
                    )
                })?;
            }
            configs += 1;
        }
    }
    Ok(format!(
        "{configs} configs, hub degree up to 6400, 0 violations"
    ))
}

fn criterion_6(cases: &[Case]) -> Outcome {
    let k = 6;
    let (g, s, t) = layered_dag(8, k as usize - 1);
    let q = Query {
        source: s,
        target: t,
        k,
    };
    let pre = pre_bfs(&g, q).unwrap();
    let cfg = TierConfig::new(64, 32).unwrap();
    let limits = EnumLimits::default();
    let dfs = PefpEngine::new(&pre, cfg).run(&limits).unwrap();
    let fifo = PefpEngine::new(&pre, cfg)
        .order(BatchOrder::Fifo)
        .run(&limits)
        .unwrap();
    ensure(
        dfs.results == fifo.results && dfs.results.len() == 8usize.pow(k - 1),
        || "layered DAG result sets disagree".into(),
    )?;
    let (wd, wf) = (dfs.stats.external_writes, fifo.stats.external_writes);
    ensure(wd < wf, || format!("writes dfs={wd} fifo={wf}"))?;

    let small = TierConfig::new(4, 2).unwrap();
    let (mut sum_d, mut sum_f) = (0u64, 0u64);
    for c in cases {
        let pre = pre_bfs_with_reverse(&c.g, &c.rev, c.q).unwrap();
        sum_d += PefpEngine::new(&pre, small)
            .run(&limits)
            .unwrap()
            .stats
            .external_writes;
        sum_f += PefpEngine::new(&pre, small)
            .order(BatchOrder::Fifo)
            .run(&limits)
            .unwrap()
            .stats
            .external_writes;
    }
    let ratio = if sum_d == 0 {
        "n/a".to_string()
    } else {
        format!("{:.2}", sum_f as f64 / sum_d as f64)
    };
    Ok(format!(
        "layered w=8 k=6: writes dfs={wd} < fifo={wf}; random suite (cap 4, theta2 2) fifo/dfs = {sum_f}/{sum_d} = {ratio}"
    ))
}

#[derive(Default)]
struct StagedProbe {
    inputs: u64,
    mismatches: u64,
    first: Option<String>,
}

impl EngineObserver for StagedProbe {
    fn on_verify(&mut self, input: &VerifyInput<'_>, outcome: &VerifyOutcome) {
        self.inputs += 1;
        let sequential = verify(input);
        if verify_staged(input) != sequential || *outcome != sequential {
            self.mismatches += 1;
            self.first.get_or_insert_with(|| format!("{input:?}"));
        }
    }
}

fn criterion_7() -> Outcome {
    const TARGET: u64 = 1_000_000;
    let mut probe = StagedProbe::default();
    let mut seed = 0;
    let limits = EnumLimits::default();
    while probe.inputs < TARGET {
        let n = 60 + (seed % 140) as usize;
        let g = random_graph(n, 3.0 + (seed % 6) as f64, 1000 + seed);
        let k = 3 + (seed % 4) as u32;
        if let Ok(qs) = gen_queries(&g, k, 4, seed) {
            let cfg = TierConfig::new(1 + (seed % 64) as usize, 1 + (seed % 32) as usize).unwrap();
            for q in qs.queries {
                let pre = pre_bfs(&g, q).unwrap();
                PefpEngine::new(&pre, cfg)
                    .run_observed(&limits, &mut probe)
                    .unwrap();
            }
        }
        seed += 1;
    }
    ensure(probe.mismatches == 0, || {
        format!(
            "{} mismatches, first {}",
            probe.mismatches,
            probe.first.clone().unwrap()
        )
    })?;
    Ok(format!(
        "{} live inputs from {seed} graphs, 0 mismatches",
        probe.inputs
    ))
}

fn criterion_8() -> Outcome {
    let g = random_graph(200, 8.0, 2024);
    let qs = gen_queries(&g, 2, 5, 7).map_err(|e| e.to_string())?;
    let rev = reverse(&g);
    let cfg = TierConfig::default();
    let mut counts = Vec::new();
    for k in 2..=6 {
        let mut total = 0usize;
        for q in &qs.queries {
            let q = Query { k, ..*q };
            let pre = pre_bfs_with_reverse(&g, &rev, q).unwrap();
            total += PefpEngine::new(&pre, cfg)
                .run(&EnumLimits::default())
                .unwrap()
                .results
                .len();
        }
        counts.push(total);
    }
    ensure(counts.windows(2).all(|w| w[0] <= w[1]), || {
        format!("|R| decreased: {counts:?}")
    })?;
    ensure(counts.windows(2).any(|w| w[1] >= 2 * w[0].max(1)), || {
        format!("no 2x step: {counts:?}")
    })?;
    Ok(format!("|R| over 5 queries for k=2..6: {counts:?}"))
}

fn criterion_9() -> Outcome {
    let g = random_graph(48, 3.0, 99);
    let suite = |jobs: usize| {
        let qs = gen_queries(&g, 4, 40, 1234).unwrap();
        let opts = SuiteOptions {
            repetitions: 1,
            no_timing: true,
            jobs,
            ..SuiteOptions::default()
        };
        let r = run_suite(
            &g,
            &qs,
            &Algorithm::ALL,
            TierConfig::new(8, 4).unwrap(),
            &opts,
        )
        .map_err(|e| e.to_string())?;
        Ok::<_, String>(emit_report(&r, ReportFormat::JsonLines))
    };
    let a = suite(1)?;
    let b = suite(1)?;
    let c = suite(4)?;
    ensure(!a.is_empty() && a == b, || "serial reports differ".into())?;
    ensure(a == c, || "report with 4 jobs differs".into())?;
    Ok(format!(
        "{} records, {} bytes, identical across 3 runs",
        a.lines().count(),
        a.len()
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let (graphs, cases) = random_cases();
    let criteria: Vec<Criterion<'_>> = vec![
        (
            "oracle equivalence",
            Box::new(|| criterion_1(graphs, &cases)),
        ),
        (
            "pre-bfs subgraph equivalence",
            Box::new(|| criterion_2(&cases)),
        ),
        ("(k-1)-hop sufficiency", Box::new(|| criterion_3(&cases))),
        ("verification arithmetic", Box::new(criterion_4)),
        (
            "capacity invariants under a super node",
            Box::new(criterion_5),
        ),
        (
            "batch-dfs external writes",
            Box::new(|| criterion_6(&cases)),
        ),
        ("staged verification equivalence", Box::new(criterion_7)),
        ("result growth in k", Box::new(criterion_8)),
        ("report determinism", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
