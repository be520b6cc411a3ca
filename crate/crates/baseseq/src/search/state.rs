//! Incrementally maintained partial assignment for the quad-by-quad
//! search over `BS(n+1,n)`.
//!
//! A lag is *decided* once every product contributing to the combined
//! residual at that lag has both positions filled. The search never
//! keeps a state in which a decided lag has nonzero residual; placement
//! reports the violation and the caller retracts.

use crate::bsq::BaseQuadruple;
use crate::codec::{label_to_column, label_to_quad, ColumnLabel, QuadLabel};
use crate::seqcore::PMSequence;

const SEQ_A: usize = 0;
const SEQ_B: usize = 1;
const SEQ_C: usize = 2;
const SEQ_D: usize = 3;

#[derive(Debug, Clone)]
struct Slots {
    vals: Vec<i8>,
    /// Positions filled so far, in placement order (a stack).
    filled: Vec<u16>,
}

impl Slots {
    fn new(len: usize) -> Self {
        Self { vals: vec![0; len], filled: Vec::with_capacity(len) }
    }
}

/// Partial assignment of the four sequences with residual accumulators
/// per lag and the decided-lag bookkeeping.
#[derive(Debug, Clone)]
pub struct PartialState {
    m: usize,
    n: usize,
    seqs: [Slots; 4],
    /// Accumulated sum of known products per lag (index by lag; 0 unused).
    res: Vec<i32>,
    /// Number of known products per lag.
    known: Vec<u32>,
    /// Total number of products per lag once everything is placed.
    total: Vec<u32>,
    /// Lags decided by the placement group currently being applied.
    newly_decided: Vec<u16>,
    unset: usize,
    placements: u64,
}

/// One atomic placement: a quad or a central column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Piece {
    AbQuad(usize, QuadLabel),
    CdQuad(usize, QuadLabel),
    AbCenter(ColumnLabel),
    CdCenter(ColumnLabel),
}

impl PartialState {
    /// Fresh empty state for the `BS(n+1,n)` search.
    pub fn new(n: usize) -> Self {
        let m = n + 1;
        let max_lag = m.max(n).saturating_sub(1);
        let mut total = vec![0u32; max_lag + 1];
        for (lag, t) in total.iter_mut().enumerate().skip(1) {
            let ab = 2 * m.saturating_sub(lag) as u32;
            let cd = 2 * n.saturating_sub(lag) as u32;
            *t = ab + cd;
        }
        Self {
            m,
            n,
            seqs: [Slots::new(m), Slots::new(m), Slots::new(n), Slots::new(n)],
            res: vec![0; max_lag + 1],
            known: vec![0; max_lag + 1],
            total,
            newly_decided: Vec::with_capacity(8),
            unset: 2 * m + 2 * n,
            placements: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of quads per pair and presence of central columns.
    pub fn ab_quad_count(&self) -> usize {
        self.m / 2
    }

    pub fn cd_quad_count(&self) -> usize {
        self.n / 2
    }

    pub fn has_ab_center(&self) -> bool {
        self.m % 2 == 1
    }

    pub fn has_cd_center(&self) -> bool {
        self.n % 2 == 1
    }

    pub fn is_complete(&self) -> bool {
        self.unset == 0
    }

    pub fn residual(&self, lag: usize) -> i32 {
        self.res[lag]
    }

    /// Whether every product at this lag is known.
    pub fn decided(&self, lag: usize) -> bool {
        self.known[lag] == self.total[lag]
    }

    pub fn max_lag(&self) -> usize {
        self.res.len() - 1
    }

    fn place_entry(&mut self, seq: usize, pos: usize, val: i8) {
        debug_assert_eq!(self.seqs[seq].vals[pos], 0, "slot already filled");
        let slots = &mut self.seqs[seq];
        let count = slots.filled.len();
        for k in 0..count {
            let q = slots.filled[k] as usize;
            let lag = pos.abs_diff(q);
            let product = i32::from(val) * i32::from(slots.vals[q]);
            self.res[lag] += product;
            self.known[lag] += 1;
            if self.known[lag] == self.total[lag] {
                self.newly_decided.push(lag as u16);
            }
        }
        let slots = &mut self.seqs[seq];
        slots.vals[pos] = val;
        slots.filled.push(pos as u16);
        self.unset -= 1;
    }

    fn unplace_entry(&mut self, seq: usize, pos: usize) {
        let slots = &mut self.seqs[seq];
        let popped = slots.filled.pop().expect("retraction order must mirror placement");
        debug_assert_eq!(popped as usize, pos, "retraction order must mirror placement");
        let val = slots.vals[pos];
        slots.vals[pos] = 0;
        self.unset += 1;
        let count = self.seqs[seq].filled.len();
        for k in 0..count {
            let q = self.seqs[seq].filled[k] as usize;
            let lag = pos.abs_diff(q);
            let product = i32::from(val) * i32::from(self.seqs[seq].vals[q]);
            self.res[lag] -= product;
            self.known[lag] -= 1;
        }
    }

    fn piece_entries(&self, piece: Piece) -> ([(usize, usize, i8); 4], usize) {
        match piece {
            Piece::AbQuad(j, label) => {
                let (tl, tr, bl, br) = label_to_quad(label);
                let (lo, hi) = (j - 1, self.m - j);
                ([(SEQ_A, lo, tl), (SEQ_A, hi, tr), (SEQ_B, lo, bl), (SEQ_B, hi, br)], 4)
            }
            Piece::CdQuad(j, label) => {
                let (tl, tr, bl, br) = label_to_quad(label);
                let (lo, hi) = (j - 1, self.n - j);
                ([(SEQ_C, lo, tl), (SEQ_C, hi, tr), (SEQ_D, lo, bl), (SEQ_D, hi, br)], 4)
            }
            Piece::AbCenter(label) => {
                let (t, b) = label_to_column(label);
                let p = (self.m - 1) / 2;
                ([(SEQ_A, p, t), (SEQ_B, p, b), (0, 0, 0), (0, 0, 0)], 2)
            }
            Piece::CdCenter(label) => {
                let (t, b) = label_to_column(label);
                let p = (self.n - 1) / 2;
                ([(SEQ_C, p, t), (SEQ_D, p, b), (0, 0, 0), (0, 0, 0)], 2)
            }
        }
    }

    /// Applies a piece and returns whether every lag decided by it has
    /// zero residual. The piece is placed either way; retract with the
    /// matching `unplace_*` call.
    fn place(&mut self, piece: Piece) -> bool {
        self.newly_decided.clear();
        let (entries, count) = self.piece_entries(piece);
        for &(seq, pos, val) in &entries[..count] {
            self.place_entry(seq, pos, val);
        }
        self.placements += 1;
        #[cfg(debug_assertions)]
        self.sampled_cross_check();
        self.newly_decided.iter().all(|&lag| self.res[lag as usize] == 0)
    }

    fn unplace(&mut self, piece: Piece) {
        let (entries, count) = self.piece_entries(piece);
        for &(seq, pos, _) in entries[..count].iter().rev() {
            self.unplace_entry(seq, pos);
        }
    }

    /// Places the `j`-th (1-based) quad of the `(A;B)` pair.
    pub fn place_ab_quad(&mut self, j: usize, label: QuadLabel) -> bool {
        debug_assert!((1..=self.ab_quad_count()).contains(&j));
        self.place(Piece::AbQuad(j, label))
    }

    pub fn unplace_ab_quad(&mut self, j: usize, label: QuadLabel) {
        self.unplace(Piece::AbQuad(j, label));
    }

    pub fn place_cd_quad(&mut self, j: usize, label: QuadLabel) -> bool {
        debug_assert!((1..=self.cd_quad_count()).contains(&j));
        self.place(Piece::CdQuad(j, label))
    }

    pub fn unplace_cd_quad(&mut self, j: usize, label: QuadLabel) {
        self.unplace(Piece::CdQuad(j, label));
    }

    pub fn place_ab_center(&mut self, label: ColumnLabel) -> bool {
        debug_assert!(self.has_ab_center());
        self.place(Piece::AbCenter(label))
    }

    pub fn unplace_ab_center(&mut self, label: ColumnLabel) {
        self.unplace(Piece::AbCenter(label));
    }

    pub fn place_cd_center(&mut self, label: ColumnLabel) -> bool {
        debug_assert!(self.has_cd_center());
        self.place(Piece::CdCenter(label))
    }

    pub fn unplace_cd_center(&mut self, label: ColumnLabel) {
        self.unplace(Piece::CdCenter(label));
    }

    /// Residuals and known-product counts recomputed from scratch off the
    /// raw slots. Verification hook for the incremental bookkeeping.
    pub fn recomputed(&self) -> (Vec<i32>, Vec<u32>) {
        let mut res = vec![0i32; self.res.len()];
        let mut known = vec![0u32; self.known.len()];
        for slots in &self.seqs {
            for (i, &p) in slots.filled.iter().enumerate() {
                for &q in &slots.filled[i + 1..] {
                    let lag = (p as usize).abs_diff(q as usize);
                    res[lag] += i32::from(slots.vals[p as usize]) * i32::from(slots.vals[q as usize]);
                    known[lag] += 1;
                }
            }
        }
        (res, known)
    }

    #[cfg(debug_assertions)]
    fn sampled_cross_check(&self) {
        // Full recomputation is quadratic; sample it so debug builds stay
        // usable for the larger searches.
        if self.placements % 1024 != 0 {
            return;
        }
        let (res, known) = self.recomputed();
        debug_assert_eq!(res, self.res, "incremental residuals diverged");
        debug_assert_eq!(known, self.known, "incremental known-counts diverged");
    }

    /// Extracts the quadruple from a complete state.
    pub fn to_quadruple(&self) -> BaseQuadruple {
        assert!(self.is_complete(), "state still has unset entries");
        let seq = |i: usize| PMSequence::new(self.seqs[i].vals.clone()).expect("complete state holds +-1 only");
        BaseQuadruple::new(seq(SEQ_A), seq(SEQ_B), seq(SEQ_C), seq(SEQ_D)).expect("lengths fixed at construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: u8) -> QuadLabel {
        QuadLabel::new(v).unwrap()
    }

    fn col(v: u8) -> ColumnLabel {
        ColumnLabel::new(v).unwrap()
    }

    #[test]
    fn worked_example_places_cleanly() {
        // "06142;1675" at n=8: every step decides only zero-residual lags.
        let mut st = PartialState::new(8);
        for (j, lab) in [0u8, 6, 1, 4].into_iter().enumerate() {
            assert!(st.place_ab_quad(j + 1, q(lab)), "ab quad {}", j + 1);
        }
        for (j, lab) in [1u8, 6, 7, 5].into_iter().enumerate() {
            assert!(st.place_cd_quad(j + 1, q(lab)), "cd quad {}", j + 1);
        }
        assert!(st.place_ab_center(col(2)));
        assert!(st.is_complete());
        for lag in 1..=st.max_lag() {
            assert!(st.decided(lag));
            assert_eq!(st.residual(lag), 0);
        }
        let quad = st.to_quadruple();
        assert!(quad.is_bs());
        assert_eq!(quad.a.to_string(), "++++--+-+");
    }

    #[test]
    fn decided_schedule_follows_depth() {
        // After j AB quads and j-1 CD quads, exactly the lags >= n+1-j
        // are decided.
        let n = 11;
        let mut st = PartialState::new(n);
        assert!(st.place_ab_quad(1, q(0)));
        for j in 2..=4 {
            assert!(st.place_ab_quad(j, q(6)) || true);
            assert!(st.place_cd_quad(j - 1, q(1)) || true);
            for lag in 1..=st.max_lag() {
                assert_eq!(st.decided(lag), lag >= n + 1 - j, "j={j} lag={lag}");
            }
        }
    }

    #[test]
    fn retraction_restores_state() {
        let mut st = PartialState::new(9);
        let before = st.recomputed();
        st.place_ab_quad(1, q(0));
        st.place_ab_quad(2, q(6));
        st.place_cd_quad(1, q(1));
        st.unplace_cd_quad(1, q(1));
        st.unplace_ab_quad(2, q(6));
        st.unplace_ab_quad(1, q(0));
        let (res, known) = st.recomputed();
        assert_eq!((res.clone(), known.clone()), before);
        assert!(res.iter().all(|&v| v == 0));
        assert!(known.iter().all(|&v| v == 0));
    }

    #[test]
    fn incremental_matches_recomputation() {
        let mut st = PartialState::new(10);
        st.place_ab_quad(1, q(0));
        st.place_ab_quad(2, q(7));
        st.place_cd_quad(1, q(1));
        st.place_ab_quad(3, q(6));
        st.place_cd_quad(2, q(2));
        let (res, known) = st.recomputed();
        for lag in 0..=st.max_lag() {
            assert_eq!(st.residual(lag), res[lag]);
            assert_eq!(st.decided(lag), known[lag] == st.total[lag]);
        }
    }
}
