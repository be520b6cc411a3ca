//! Search controller: partitions the tree into disjoint units
//! (case/prefix, or segment-row ranges), runs units on parallel workers
//! that share no mutable state, and merges emissions with canonical-code
//! deduplication. Identical options and seed give identical found sets;
//! with one job the emission order itself is deterministic.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::bsq::BaseQuadruple;
use crate::codec;
use crate::gamma::{self, EdgeId};

use super::engine::{case_table, enumerate_prefixes, search_case_with_stop, Parity, Prefix, Restriction, SearchFlow};
use super::segment::{segment_phase1, segment_phase2_with_stop, SegmentRow};
use super::SearchError;

/// Which part of the tree to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunMode {
    /// The printed 18-case split (or a single case of it). Completeness
    /// is not claimed for this mode.
    Paper { case: Option<u8> },
    /// Every valid five-quad prefix; completeness claims attach here.
    All,
    /// Two-phase segment mode over one case.
    Segment { case: u8, selection: RowSelection, rows: Option<Vec<SegmentRow>> },
}

/// Which phase-1 rows to complete in segment mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSelection {
    /// `count` consecutive rows from a fixed entry point.
    Window { entry: usize, count: usize },
    /// `repeats` seeded random entry points, `count` consecutive rows
    /// each, drawn without replacement (windows never overlap).
    Sampled { count: usize, repeats: usize },
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub n: usize,
    pub mode: RunMode,
    pub restriction: Restriction,
    /// Parallel workers; 1 keeps the emission order itself deterministic.
    pub jobs: usize,
    /// Seed for the sampled segment selection.
    pub seed: u64,
    /// Stop once witnesses for all of these loops/edges have been found.
    pub until_edges: Option<BTreeSet<EdgeId>>,
}

impl RunOptions {
    pub fn new(n: usize, mode: RunMode) -> Self {
        Self { n, mode, restriction: Restriction::Free, jobs: 1, seed: 0, until_edges: None }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunStats {
    pub found: u64,
    pub units: usize,
    pub nodes: u64,
    pub stopped_early: bool,
}

struct Unit {
    id: String,
    work: UnitWork,
}

enum UnitWork {
    Prefix(Prefix),
    Rows { rows: std::sync::Arc<Vec<SegmentRow>>, entry: usize, count: usize },
}

fn build_units(opts: &RunOptions) -> Result<Vec<Unit>, SearchError> {
    match &opts.mode {
        RunMode::Paper { case } => {
            let table = case_table(Parity::of(opts.n));
            let picked: Vec<_> = match case {
                Some(id) => {
                    let spec = table
                        .iter()
                        .find(|c| c.id == *id)
                        .copied()
                        .ok_or(SearchError::NoSuchCase { id: *id })?;
                    vec![spec]
                }
                None => table.to_vec(),
            };
            Ok(picked
                .into_iter()
                .map(|c| Unit { id: format!("case{}", c.id), work: UnitWork::Prefix(c.to_prefix()) })
                .collect())
        }
        RunMode::All => Ok(enumerate_prefixes(opts.n)?
            .into_iter()
            .map(|p| Unit { id: format!("prefix{}", p.id()), work: UnitWork::Prefix(p) })
            .collect()),
        RunMode::Segment { case, selection, rows } => {
            let table = case_table(Parity::of(opts.n));
            let spec = table
                .iter()
                .find(|c| c.id == *case)
                .copied()
                .ok_or(SearchError::NoSuchCase { id: *case })?;
            let rows = std::sync::Arc::new(match rows {
                Some(rows) => rows.clone(),
                None => segment_phase1(opts.n, &spec, opts.restriction)?,
            });
            let windows = select_windows(rows.len(), *selection, opts.seed)?;
            Ok(windows
                .into_iter()
                .map(|(entry, count)| Unit {
                    id: format!("rows{}..{}", entry, entry + count),
                    work: UnitWork::Rows { rows: rows.clone(), entry, count },
                })
                .collect())
        }
    }
}

/// Picks the row windows for segment mode. Sampled windows are drawn
/// without replacement: a candidate overlapping an already chosen window
/// is rejected and redrawn.
fn select_windows(
    total_rows: usize,
    selection: RowSelection,
    seed: u64,
) -> Result<Vec<(usize, usize)>, SearchError> {
    match selection {
        RowSelection::Window { entry, count } => {
            if entry >= total_rows {
                return Err(SearchError::EntryOutOfRange { entry, rows: total_rows });
            }
            Ok(vec![(entry, count.min(total_rows - entry))])
        }
        RowSelection::Sampled { count, repeats } => {
            if count == 0 || repeats == 0 {
                return Ok(Vec::new());
            }
            if count.saturating_mul(repeats) > total_rows {
                return Err(SearchError::SampleSpaceExhausted { requested: count * repeats, rows: total_rows });
            }
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(repeats);
            let mut attempts = 0usize;
            while chosen.len() < repeats {
                attempts += 1;
                if attempts > 100_000 {
                    return Err(SearchError::SampleSpaceExhausted { requested: count * repeats, rows: total_rows });
                }
                let entry = rng.random_range(0..total_rows);
                let len = count.min(total_rows - entry);
                if len < count {
                    continue;
                }
                let overlaps = chosen
                    .iter()
                    .any(|&(e, c)| entry < e + c && e < entry + len);
                if !overlaps {
                    chosen.push((entry, len));
                }
            }
            Ok(chosen)
        }
    }
}

fn run_unit(
    n: usize,
    unit: &Unit,
    restriction: Restriction,
    stop: &AtomicBool,
    mut on_found: impl FnMut(&BaseQuadruple) -> SearchFlow,
) -> Result<super::engine::SearchStats, SearchError> {
    match &unit.work {
        UnitWork::Prefix(prefix) => {
            search_case_with_stop(n, prefix, restriction, Some(stop), &mut on_found)
        }
        UnitWork::Rows { rows, entry, count } => {
            segment_phase2_with_stop(n, rows, *entry, *count, restriction, Some(stop), &mut on_found)
        }
    }
}

/// Runs a search. `on_found` sees every emitted member (deduplicated by
/// encoded code across units); `progress` gets one
/// `unit=<id> emitted=<k> elapsed=<s>` line per finished unit.
pub fn run_search(
    opts: &RunOptions,
    mut on_found: impl FnMut(&BaseQuadruple),
    mut progress: impl FnMut(&str),
) -> Result<RunStats, SearchError> {
    let units = build_units(opts)?;
    let stop = AtomicBool::new(false);
    let mut remaining = opts.until_edges.clone();
    let mut seen_codes: BTreeSet<String> = BTreeSet::new();
    let mut stats = RunStats { units: units.len(), ..RunStats::default() };

    // Deduplicate by canonical encoded form and track the stopping rule.
    let accept = |q: &BaseQuadruple,
                      remaining: &mut Option<BTreeSet<EdgeId>>,
                      seen: &mut BTreeSet<String>,
                      stats: &mut RunStats|
     -> bool {
        let code = match codec::encode(q) {
            Ok(code) => code.to_string(),
            // Members outside the quad alphabet cannot occur here (the
            // engine builds from labels), but fall back to raw signs.
            Err(_) => format!("{}|{}|{}|{}", q.a, q.b, q.c, q.d),
        };
        if !seen.insert(code) {
            return false;
        }
        stats.found += 1;
        if let Some(edges) = remaining {
            if let Ok(id) = gamma::edge_id(q) {
                edges.remove(&id);
            }
            if edges.is_empty() {
                return true;
            }
        }
        false
    };

    if opts.jobs <= 1 {
        for unit in &units {
            let started = Instant::now();
            let mut emitted = 0u64;
            let unit_stats = run_unit(opts.n, unit, opts.restriction, &stop, |q| {
                emitted += 1;
                if accept(q, &mut remaining, &mut seen_codes, &mut stats) {
                    stop.store(true, Ordering::Relaxed);
                }
                on_found(q);
                if stop.load(Ordering::Relaxed) {
                    SearchFlow::Stop
                } else {
                    SearchFlow::Continue
                }
            })?;
            stats.nodes += unit_stats.nodes;
            progress(&format!(
                "unit={} emitted={} elapsed={:.3}",
                unit.id,
                emitted,
                started.elapsed().as_secs_f64()
            ));
            if stop.load(Ordering::Relaxed) {
                stats.stopped_early = true;
                break;
            }
        }
        return Ok(stats);
    }

    // Parallel path: workers pull unit indices and send findings to the
    // collector on the main thread; only the stop flag is shared.
    enum Message {
        Found(BaseQuadruple),
        Done { unit: usize, emitted: u64, nodes: u64, elapsed: f64 },
        Failed(SearchError),
    }

    let next_unit = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<Message>();
    let workers = opts.jobs.min(units.len().max(1));
    std::thread::scope(|scope| -> Result<(), SearchError> {
        for _ in 0..workers {
            let tx = tx.clone();
            let units = &units;
            let next_unit = &next_unit;
            let stop = &stop;
            let (n, restriction) = (opts.n, opts.restriction);
            scope.spawn(move || loop {
                let idx = next_unit.fetch_add(1, Ordering::Relaxed);
                if idx >= units.len() || stop.load(Ordering::Relaxed) {
                    break;
                }
                let started = Instant::now();
                let mut emitted = 0u64;
                let result = run_unit(n, &units[idx], restriction, stop, |q| {
                    emitted += 1;
                    let _ = tx.send(Message::Found(q.clone()));
                    if stop.load(Ordering::Relaxed) {
                        SearchFlow::Stop
                    } else {
                        SearchFlow::Continue
                    }
                });
                match result {
                    Ok(unit_stats) => {
                        let _ = tx.send(Message::Done {
                            unit: idx,
                            emitted,
                            nodes: unit_stats.nodes,
                            elapsed: started.elapsed().as_secs_f64(),
                        });
                    }
                    Err(e) => {
                        let _ = tx.send(Message::Failed(e));
                        break;
                    }
                }
            });
        }
        drop(tx);

        let mut done = 0usize;
        for message in rx {
            match message {
                Message::Found(q) => {
                    if accept(&q, &mut remaining, &mut seen_codes, &mut stats) {
                        stop.store(true, Ordering::Relaxed);
                        stats.stopped_early = true;
                    }
                    on_found(&q);
                }
                Message::Done { unit, emitted, nodes, elapsed } => {
                    stats.nodes += nodes;
                    done += 1;
                    progress(&format!("unit={} emitted={} elapsed={:.3}", units[unit].id, emitted, elapsed));
                }
                Message::Failed(e) => {
                    stop.store(true, Ordering::Relaxed);
                    return Err(e);
                }
            }
        }
        if done < units.len() {
            stats.stopped_early = true;
        }
        Ok(())
    })?;
    Ok(stats)
}

/// All normal members (`b_i = a_i` for `i <= n`, first quad label 0):
/// the restricted engine for `n >= 7`, the brute-force oracle filtered by
/// the predicate below that.
pub fn search_normal(n: usize) -> Result<Vec<BaseQuadruple>, SearchError> {
    restricted_search(n, Restriction::Normal)
}

/// All near-normal members (`b_i = (-1)^(i-1) a_i` for `i <= n`).
/// `n` must be even or 1.
pub fn search_near_normal(n: usize) -> Result<Vec<BaseQuadruple>, SearchError> {
    if n % 2 == 1 && n != 1 {
        return Err(SearchError::NearNormalParity { n });
    }
    restricted_search(n, Restriction::NearNormal)
}

fn restricted_search(n: usize, restriction: Restriction) -> Result<Vec<BaseQuadruple>, SearchError> {
    let predicate = |q: &BaseQuadruple| match restriction {
        Restriction::Normal => q.is_normal(),
        Restriction::NearNormal => q.is_near_normal(),
        Restriction::Free => true,
    };
    if n < 7 {
        return Ok(super::brute::brute_force(n)?.into_iter().filter(predicate).collect());
    }
    let mut found = Vec::new();
    for prefix in super::engine::enumerate_prefixes_restricted(n, restriction)? {
        search_case_with_stop(n, &prefix, restriction, None, &mut |q| {
            debug_assert!(predicate(q));
            found.push(q.clone());
            SearchFlow::Continue
        })?;
    }
    found.sort_unstable();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn paper_mode_runs_all_cases() {
        let opts = RunOptions::new(7, RunMode::Paper { case: None });
        let mut found = Vec::new();
        let mut lines = Vec::new();
        let stats = run_search(&opts, |q| found.push(q.clone()), |l| lines.push(l.to_owned())).unwrap();
        assert_eq!(stats.units, 18);
        assert_eq!(lines.len(), 18);
        assert!(lines[0].starts_with("unit=case1 emitted="));
        for q in &found {
            assert!(q.is_bs());
        }
    }

    #[test]
    fn parallel_run_finds_the_same_set() {
        let serial = {
            let opts = RunOptions::new(8, RunMode::All);
            let mut found = BTreeSet::new();
            run_search(&opts, |q| {
                found.insert(q.clone());
            }, |_| {})
            .unwrap();
            found
        };
        let parallel = {
            let mut opts = RunOptions::new(8, RunMode::All);
            opts.jobs = 4;
            let mut found = BTreeSet::new();
            run_search(&opts, |q| {
                found.insert(q.clone());
            }, |_| {})
            .unwrap();
            found
        };
        assert_eq!(serial, parallel);
        assert!(!serial.is_empty());
    }

    #[test]
    fn until_edges_stops_early() {
        let mut opts = RunOptions::new(7, RunMode::All);
        // Gamma for n=7 is conjectured complete-with-loops on 2 vertices.
        opts.until_edges = Some([EdgeId::new(1, 1)].into_iter().collect());
        let mut found = Vec::new();
        let stats = run_search(&opts, |q| found.push(q.clone()), |_| {}).unwrap();
        assert!(stats.stopped_early);
        assert!(found
            .iter()
            .any(|q| gamma::edge_id(q).unwrap() == EdgeId::new(1, 1)));
    }

    #[test]
    fn sampled_windows_are_disjoint_and_deterministic() {
        let sel = RowSelection::Sampled { count: 10, repeats: 5 };
        let a = select_windows(1000, sel, 42).unwrap();
        let b = select_windows(1000, sel, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        for (i, &(e1, c1)) in a.iter().enumerate() {
            assert_eq!(c1, 10);
            for &(e2, c2) in &a[i + 1..] {
                assert!(e1 + c1 <= e2 || e2 + c2 <= e1, "windows overlap");
            }
        }
        assert_ne!(select_windows(1000, sel, 43).unwrap(), a);
    }
}
