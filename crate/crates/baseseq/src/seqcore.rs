//! Elementary sequence arithmetic: aperiodic autocorrelation, norm
//! residuals, evaluations at `z = 1` and `z = -1`, reversal and negation.
//!
//! Norms are represented operationally as integer autocorrelation
//! coefficient lists; no symbolic Laurent polynomials are ever built.
//! All operations are total on empty sequences.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("entry {0} is not +1 or -1")]
    NotPlusMinus(i8),
    #[error("entry {0} is not in {{-1, 0, +1}}")]
    NotTernary(i8),
    #[error("character {0:?} is not a valid sequence symbol")]
    BadChar(char),
}

fn autocorrelation_of(entries: &[i8], lag: usize) -> i32 {
    let len = entries.len();
    if lag >= len {
        return 0;
    }
    let mut acc = 0i32;
    for i in 0..len - lag {
        acc += i32::from(entries[i]) * i32::from(entries[i + lag]);
    }
    acc
}

fn eval_plus_of(entries: &[i8]) -> i32 {
    entries.iter().map(|&v| i32::from(v)).sum()
}

fn eval_minus_of(entries: &[i8]) -> i32 {
    // Index origin 1: the first entry enters positively.
    entries
        .iter()
        .enumerate()
        .map(|(i, &v)| if i % 2 == 0 { i32::from(v) } else { -i32::from(v) })
        .sum()
}

fn render_signs(entries: &[i8], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for &v in entries {
        f.write_str(match v {
            1 => "+",
            -1 => "-",
            _ => "0",
        })?;
    }
    Ok(())
}

/// A binary sequence: every entry is `+1` or `-1`. Empty sequences are
/// legal and represent the degenerate `BS(m,0)`-style cases.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PMSequence {
    entries: Vec<i8>,
}

impl PMSequence {
    pub fn new(entries: Vec<i8>) -> Result<Self, SeqError> {
        if let Some(&bad) = entries.iter().find(|&&v| v != 1 && v != -1) {
            return Err(SeqError::NotPlusMinus(bad));
        }
        Ok(Self { entries })
    }

    pub fn empty() -> Self {
        Self { entries: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// Coefficient of `z^lag` in the norm: the sum of products of entries
    /// `lag` apart. Zero whenever `lag >= len`.
    pub fn autocorrelation(&self, lag: usize) -> i32 {
        autocorrelation_of(&self.entries, lag)
    }

    /// Evaluation at `z = 1`: the sum of the entries.
    pub fn eval_plus(&self) -> i32 {
        eval_plus_of(&self.entries)
    }

    /// Evaluation at `z = -1`: the alternating sum, first entry positive.
    pub fn eval_minus(&self) -> i32 {
        eval_minus_of(&self.entries)
    }

    pub fn reversed(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        Self { entries }
    }

    pub fn negated(&self) -> Self {
        Self { entries: self.entries.iter().map(|&v| -v).collect() }
    }
}

impl fmt::Display for PMSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_signs(&self.entries, f)
    }
}

impl FromStr for PMSequence {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<Self, SeqError> {
        let mut entries = Vec::with_capacity(s.len());
        for ch in s.chars() {
            entries.push(match ch {
                '+' => 1,
                '-' => -1,
                _ => return Err(SeqError::BadChar(ch)),
            });
        }
        Ok(Self { entries })
    }
}

/// A ternary sequence: entries in `{-1, 0, +1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TernarySequence {
    entries: Vec<i8>,
}

impl TernarySequence {
    pub fn new(entries: Vec<i8>) -> Result<Self, SeqError> {
        if let Some(&bad) = entries.iter().find(|&&v| !(-1..=1).contains(&v)) {
            return Err(SeqError::NotTernary(bad));
        }
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn autocorrelation(&self, lag: usize) -> i32 {
        autocorrelation_of(&self.entries, lag)
    }

    pub fn reversed(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        Self { entries }
    }

    pub fn negated(&self) -> Self {
        Self { entries: self.entries.iter().map(|&v| -v).collect() }
    }
}

impl fmt::Display for TernarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_signs(&self.entries, f)
    }
}

impl FromStr for TernarySequence {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<Self, SeqError> {
        let mut entries = Vec::with_capacity(s.len());
        for ch in s.chars() {
            entries.push(match ch {
                '+' => 1,
                '-' => -1,
                '0' => 0,
                _ => return Err(SeqError::BadChar(ch)),
            });
        }
        Ok(Self { entries })
    }
}

/// Lag coefficient of `N(A)+N(B)+N(C)+N(D)`. For base sequences this must
/// vanish at every lag `>= 1`.
pub fn combined_residual(
    a: &PMSequence,
    b: &PMSequence,
    c: &PMSequence,
    d: &PMSequence,
    lag: usize,
) -> i32 {
    a.autocorrelation(lag) + b.autocorrelation(lag) + c.autocorrelation(lag) + d.autocorrelation(lag)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(s: &str) -> PMSequence {
        s.parse().unwrap()
    }

    #[test]
    fn autocorrelation_small_cases() {
        assert_eq!(pm("++").autocorrelation(1), 1);
        assert_eq!(pm("+-+").autocorrelation(1), -2);
        assert_eq!(pm("+-+").autocorrelation(2), 1);
    }

    #[test]
    fn autocorrelation_zero_beyond_length() {
        let s = pm("+--+");
        for lag in 4..10 {
            assert_eq!(s.autocorrelation(lag), 0);
        }
        assert_eq!(PMSequence::empty().autocorrelation(0), 0);
    }

    #[test]
    fn worked_example_sequence_a_lag_8() {
        // A of the n=8 worked example "06142;1675".
        let a = pm("++++--+-+");
        assert_eq!(a.autocorrelation(8), 1);
        assert_eq!(a.eval_plus(), 3);
    }

    #[test]
    fn worked_example_combined_residual() {
        let a = pm("++++--+-+");
        let b = pm("+++-+++--");
        let c = pm("++--+--+");
        let d = pm("++++-+-+");
        for lag in 1..=8 {
            assert_eq!(combined_residual(&a, &b, &c, &d, lag), 0, "lag {lag}");
        }
        assert_eq!(c.eval_plus(), 0);

        // Flipping the last entry of A breaks the lag-8 coefficient.
        let mut entries = a.entries().to_vec();
        entries[8] = -entries[8];
        let a_bad = PMSequence::new(entries).unwrap();
        assert_ne!(combined_residual(&a_bad, &b, &c, &d, 8), 0);
    }

    #[test]
    fn degenerate_quadruple_has_no_products() {
        let a = pm("+");
        let e = PMSequence::empty();
        assert_eq!(combined_residual(&a, &a, &e, &e, 1), 0);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(pm("+").eval_plus(), 1);
        assert_eq!(pm("+").eval_minus(), 1);
        assert_eq!(pm("++").eval_minus(), 0);
    }

    #[test]
    fn reverse_and_negate() {
        assert_eq!(pm("+--").reversed(), pm("--+"));
        assert_eq!(pm("+-").negated(), pm("-+"));
        let s = pm("+-++");
        for lag in 0..5 {
            assert_eq!(s.reversed().autocorrelation(lag), s.autocorrelation(lag));
            assert_eq!(s.negated().autocorrelation(lag), s.autocorrelation(lag));
        }
    }

    #[test]
    fn render_round_trip() {
        let s = pm("++-+-");
        assert_eq!(s.to_string(), "++-+-");
        let t: TernarySequence = "+0-".parse().unwrap();
        assert_eq!(t.to_string(), "+0-");
        assert!("+,+".parse::<PMSequence>().is_err());
    }
}
