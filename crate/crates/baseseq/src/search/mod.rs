//! Exhaustive backtracking search over `BS(n+1,n)` quad sequences: the
//! 18-case split, an all-prefixes mode whose completeness does not
//! depend on the case selection, the two-phase segment mode for large
//! `n`, restricted normal/near-normal searches, and an independent
//! meet-in-the-middle oracle.

mod brute;
mod driver;
mod engine;
mod segment;
mod state;

pub use brute::{brute_force, three_square_feasible};
pub use driver::{run_search, search_near_normal, search_normal, RowSelection, RunMode, RunOptions, RunStats};
pub use engine::{case_table, enumerate_prefixes, search_case, CaseSpec, Parity, Prefix, Restriction, SearchFlow, SearchStats};
pub use segment::{
    parse_segment_file, render_segment_file, segment_phase1, segment_phase2, SegmentRow,
    SEGMENT_AB_QUADS, SEGMENT_CD_QUADS,
};
pub use state::PartialState;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("quad search needs n >= 7 (got {n}); use the brute-force oracle below that")]
    TooSmall { n: usize },
    #[error("segment mode needs n >= 15 (got {n})")]
    SegmentTooSmall { n: usize },
    #[error("brute force is limited to n <= 12 (got {n})")]
    BruteForceTooLarge { n: usize },
    #[error("invalid prefix: {reason}")]
    BadPrefix { reason: &'static str },
    #[error("entry {entry} is out of range for a segment file with {rows} rows")]
    EntryOutOfRange { entry: usize, rows: usize },
    #[error("malformed segment row: {line:?}")]
    BadSegmentRow { line: String },
    #[error("near-normal sequences need even n or n = 1 (got {n})")]
    NearNormalParity { n: usize },
    #[error("no case with id {id} (cases are 1..18)")]
    NoSuchCase { id: u8 },
    #[error("cannot sample {requested} distinct rows from a file with {rows}")]
    SampleSpaceExhausted { requested: usize, rows: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// The all-prefixes search agrees with the meet-in-the-middle oracle.
    #[test]
    fn all_mode_equals_brute_force_n7() {
        let oracle: BTreeSet<_> = brute_force(7).unwrap().into_iter().collect();
        let mut engine = BTreeSet::new();
        for prefix in enumerate_prefixes(7).unwrap() {
            search_case(7, &prefix, Restriction::Free, &mut |q| {
                assert!(engine.insert(q.clone()), "duplicate emission");
                SearchFlow::Continue
            })
            .unwrap();
        }
        assert_eq!(engine, oracle);
        assert!(!oracle.is_empty());
    }

    #[test]
    fn normal_search_examples() {
        assert!(search_normal(6).unwrap().is_empty());
        let ns7 = search_normal(7).unwrap();
        assert!(!ns7.is_empty());
        for q in &ns7 {
            assert!(q.is_bs() && q.is_normal());
        }
    }

    #[test]
    fn near_normal_search_examples() {
        let nn8 = search_near_normal(8).unwrap();
        assert!(!nn8.is_empty());
        for q in &nn8 {
            assert!(q.is_bs() && q.is_near_normal());
        }
        assert!(matches!(search_near_normal(9), Err(SearchError::NearNormalParity { n: 9 })));
        assert!(!search_near_normal(1).unwrap().is_empty());
    }

    /// The engine's restricted mode agrees with predicate-filtering the
    /// oracle.
    #[test]
    fn restricted_search_matches_filtered_oracle() {
        for n in [7usize, 8] {
            let expected: BTreeSet<_> = brute_force(n)
                .unwrap()
                .into_iter()
                .filter(|q| q.is_normal())
                .collect();
            let got: BTreeSet<_> = search_normal(n).unwrap().into_iter().collect();
            assert_eq!(got, expected, "normal n={n}");
        }
        let expected: BTreeSet<_> = brute_force(8)
            .unwrap()
            .into_iter()
            .filter(|q| q.is_near_normal())
            .collect();
        let got: BTreeSet<_> = search_near_normal(8).unwrap().into_iter().collect();
        assert_eq!(got, expected);
    }
}
