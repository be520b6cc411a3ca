//! Two-phase segment mode for large `n`: phase 1 extends a case to every
//! valid 8-quad/7-quad initial segment (cheap, file-backed), phase 2
//! resumes the full search on a chosen range of rows.

use std::sync::atomic::AtomicBool;

use crate::bsq::BaseQuadruple;

use super::engine::{CaseSpec, Dfs, Emit, Prefix, Restriction, SearchFlow, SearchStats};
use super::SearchError;

pub const SEGMENT_AB_QUADS: usize = 8;
pub const SEGMENT_CD_QUADS: usize = 7;

/// One phase-1 row: a case id plus the eight `(A;B)` and seven `(C;D)`
/// leading quad labels, every decided lag zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SegmentRow {
    pub case_id: u8,
    pub ab: [u8; SEGMENT_AB_QUADS],
    pub cd: [u8; SEGMENT_CD_QUADS],
}

impl SegmentRow {
    pub fn to_prefix(&self) -> Prefix {
        Prefix { ab: self.ab.to_vec(), cd: self.cd.to_vec() }
    }

    /// Renders `"caseId q1..q8 | c1..c7"` with space-separated labels.
    pub fn to_line(&self) -> String {
        let join = |v: &[u8]| v.iter().map(u8::to_string).collect::<Vec<_>>().join(" ");
        format!("{} {} | {}", self.case_id, join(&self.ab), join(&self.cd))
    }

    pub fn parse_line(line: &str) -> Result<Self, SearchError> {
        let bad = || SearchError::BadSegmentRow { line: line.to_owned() };
        let (head, tail) = line.split_once('|').ok_or_else(bad)?;
        let head: Vec<u8> = head
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        let tail: Vec<u8> = tail
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        if head.len() != 1 + SEGMENT_AB_QUADS || tail.len() != SEGMENT_CD_QUADS {
            return Err(bad());
        }
        let mut ab = [0u8; SEGMENT_AB_QUADS];
        ab.copy_from_slice(&head[1..]);
        let mut cd = [0u8; SEGMENT_CD_QUADS];
        cd.copy_from_slice(&tail);
        Ok(Self { case_id: head[0], ab, cd })
    }
}

/// Renders a segment file, one row per line.
pub fn render_segment_file(rows: &[SegmentRow]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&row.to_line());
        out.push('\n');
    }
    out
}

pub fn parse_segment_file(text: &str) -> Result<Vec<SegmentRow>, SearchError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(SegmentRow::parse_line)
        .collect()
}

/// Phase 1: every valid extension of the case to 8 `(A;B)` and 7 `(C;D)`
/// quads, in deterministic label order.
pub fn segment_phase1(
    n: usize,
    case: &CaseSpec,
    restriction: Restriction,
) -> Result<Vec<SegmentRow>, SearchError> {
    if n < 15 {
        return Err(SearchError::SegmentTooSmall { n });
    }
    let mut rows = Vec::new();
    let case_id = case.id;
    let mut dfs = Dfs::new(n, restriction, None).with_row_cap(SEGMENT_AB_QUADS);
    let mut sink = |ab: &[u8], cd: &[u8]| {
        let mut row = SegmentRow { case_id, ab: [0; SEGMENT_AB_QUADS], cd: [0; SEGMENT_CD_QUADS] };
        row.ab.copy_from_slice(ab);
        row.cd.copy_from_slice(cd);
        rows.push(row);
        SearchFlow::Continue
    };
    dfs.run(&case.to_prefix(), &mut Emit::Rows(&mut sink))?;
    Ok(rows)
}

/// Phase 2: resumes the full search on rows `[entry, entry+count)`,
/// clamped at the end of the file.
pub fn segment_phase2(
    n: usize,
    rows: &[SegmentRow],
    entry: usize,
    count: usize,
    restriction: Restriction,
    sink: &mut dyn FnMut(&BaseQuadruple) -> SearchFlow,
) -> Result<SearchStats, SearchError> {
    segment_phase2_with_stop(n, rows, entry, count, restriction, None, sink)
}

pub(super) fn segment_phase2_with_stop(
    n: usize,
    rows: &[SegmentRow],
    entry: usize,
    count: usize,
    restriction: Restriction,
    stop_flag: Option<&AtomicBool>,
    sink: &mut dyn FnMut(&BaseQuadruple) -> SearchFlow,
) -> Result<SearchStats, SearchError> {
    if entry >= rows.len() {
        return Err(SearchError::EntryOutOfRange { entry, rows: rows.len() });
    }
    let end = entry.saturating_add(count).min(rows.len());
    let mut total = SearchStats::default();
    for row in &rows[entry..end] {
        let stats = super::engine::search_case_with_stop(n, &row.to_prefix(), restriction, stop_flag, sink)?;
        total.emitted += stats.emitted;
        total.nodes += stats.nodes;
        if stats.stopped {
            total.stopped = true;
            break;
        }
    }
    Ok(total)
}
