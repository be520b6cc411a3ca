// scratch: calibrate the n=28 sampled hunt
use baseseq::search::*;
fn main() {
    let args: Vec<String> = std::env::args().collect();
    let case: u8 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(1);
    let seed: u64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(0);
    let rows: usize = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(100);
    let repeats: usize = args.get(4).map(|s| s.parse().unwrap()).unwrap_or(100);
    let t0 = std::time::Instant::now();
    let table = case_table(Parity::Even);
    let spec = table.iter().find(|c| c.id == case).unwrap();
    let phase1 = segment_phase1(28, spec, Restriction::Free).unwrap();
    eprintln!("phase1: {} rows in {:?}", phase1.len(), t0.elapsed());
    let t1 = std::time::Instant::now();
    let opts = RunOptions {
        n: 28,
        mode: RunMode::Segment { case, selection: RowSelection::Sampled { count: rows, repeats }, rows: Some(phase1) },
        restriction: Restriction::Free,
        jobs: 1,
        seed,
        until_edges: None,
    };
    let mut found = 0u64;
    let stats = run_search(&opts, |q| { found += 1; assert!(q.is_bs()); }, |_l| {}).unwrap();
    eprintln!("case {case} seed {seed} rows {rows} repeats {repeats}: found {found} (stats {}) in {:?}", stats.found, t1.elapsed());
}
