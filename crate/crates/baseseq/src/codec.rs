//! Compact quad-label encoding of `BS(n+1,n)` members.
//!
//! A pair of sequences of length `L` is decomposed into quads pairing
//! positions `i` and `L+1-i`, plus a central column when `L` is odd. The
//! first quad of the `(A;B)` pair is normalized to the distinguished
//! label 0; every other quad must belong to the eight-label alphabet.
//! Codes for the two pairs are written as `"ABcode;CDcode"`.

use std::fmt;

use thiserror::Error;

use crate::bsq::BaseQuadruple;
use crate::seqcore::PMSequence;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("2x2 pattern ({0},{1},{2},{3}) is not one of the nine quad patterns")]
    NotInAlphabet(i8, i8, i8, i8),
    #[error("first quad of the (A;B) pair is not the label-0 pattern")]
    NotNormalized,
    #[error("{side} code has length {got}, expected {expected} for n={n}")]
    BadLength { side: &'static str, n: usize, expected: usize, got: usize },
    #[error("{side} code has invalid digit {ch:?} at position {index}")]
    BadDigit { side: &'static str, index: usize, ch: char },
    #[error("code must contain exactly one ';' separator")]
    MissingSeparator,
    #[error("quadruple has lengths ({m},{n}); this encoding requires m = n+1")]
    WrongShape { m: usize, n: usize },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<CodecError>,
    },
    #[error("line {line}: missing \"n:\" length prefix")]
    MissingLengthPrefix { line: usize },
}

/// The nine 2x2 patterns, indexed by label. Tuple order is
/// (top-left, top-right, bottom-left, bottom-right); the top row belongs
/// to the first sequence of the pair, the left column to position `i`.
const QUAD_PATTERNS: [(i8, i8, i8, i8); 9] = [
    (1, 1, 1, -1),   // 0 (first quad only)
    (1, 1, 1, 1),    // 1
    (1, 1, -1, -1),  // 2
    (-1, 1, -1, 1),  // 3
    (1, -1, -1, 1),  // 4
    (-1, 1, 1, -1),  // 5
    (1, -1, 1, -1),  // 6
    (-1, -1, 1, 1),  // 7
    (-1, -1, -1, -1) // 8
];

/// Central column patterns (top, bottom).
const COLUMN_PATTERNS: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// Label of a quad: 0 is reserved for the first quad of the `(A;B)` pair,
/// 1..8 form the alphabet of all other quads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadLabel(u8);

impl QuadLabel {
    pub fn new(value: u8) -> Option<Self> {
        (value <= 8).then_some(Self(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

/// Label of a central column, 0..3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColumnLabel(u8);

impl ColumnLabel {
    pub fn new(value: u8) -> Option<Self> {
        (value <= 3).then_some(Self(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

pub fn quad_to_label(tl: i8, tr: i8, bl: i8, br: i8) -> Result<QuadLabel, CodecError> {
    QUAD_PATTERNS
        .iter()
        .position(|&p| p == (tl, tr, bl, br))
        .map(|i| QuadLabel(i as u8))
        .ok_or(CodecError::NotInAlphabet(tl, tr, bl, br))
}

pub fn label_to_quad(label: QuadLabel) -> (i8, i8, i8, i8) {
    QUAD_PATTERNS[label.0 as usize]
}

pub fn column_to_label(top: i8, bottom: i8) -> ColumnLabel {
    ColumnLabel(COLUMN_PATTERNS.iter().position(|&p| p == (top, bottom)).expect("entries are +-1") as u8)
}

pub fn label_to_column(label: ColumnLabel) -> (i8, i8) {
    COLUMN_PATTERNS[label.0 as usize]
}

/// Number of quad digits and presence of a central digit for a pair of
/// length `len`.
fn code_shape(len: usize) -> (usize, bool) {
    (len / 2, len % 2 == 1)
}

/// The textual encoding `"ABcode;CDcode"` of a `BS(n+1,n)` member.
/// Construction validates the structural invariants (lengths and digit
/// ranges); it does not check membership, which is [`BaseQuadruple`]'s
/// job, so deliberately corrupt rows can still be decoded and examined.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CodePair {
    ab: String,
    cd: String,
    n: usize,
}

impl CodePair {
    pub fn new(ab: &str, cd: &str, n: usize) -> Result<Self, CodecError> {
        validate_side("ab", ab, n + 1, n)?;
        validate_side("cd", cd, n, n)?;
        Ok(Self { ab: ab.to_owned(), cd: cd.to_owned(), n })
    }

    /// Parses `"ABcode;CDcode"`; whitespace around the separator is
    /// tolerated on input and never emitted on output.
    pub fn parse(code: &str, n: usize) -> Result<Self, CodecError> {
        let mut parts = code.split(';');
        let (ab, cd) = match (parts.next(), parts.next(), parts.next()) {
            (Some(ab), Some(cd), None) => (ab.trim(), cd.trim()),
            _ => return Err(CodecError::MissingSeparator),
        };
        Self::new(ab, cd, n)
    }

    pub fn ab_code(&self) -> &str {
        &self.ab
    }

    pub fn cd_code(&self) -> &str {
        &self.cd
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl fmt::Display for CodePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.ab, self.cd)
    }
}

fn validate_side(side: &'static str, code: &str, len: usize, n: usize) -> Result<(), CodecError> {
    let (quads, center) = code_shape(len);
    let expected = quads + usize::from(center);
    if code.len() != expected || !code.is_ascii() {
        return Err(CodecError::BadLength { side, n, expected, got: code.len() });
    }
    for (index, ch) in code.chars().enumerate() {
        let ok = if index < quads {
            if side == "ab" && index == 0 {
                ch == '0'
            } else {
                ('1'..='8').contains(&ch)
            }
        } else {
            // central digit
            ('0'..='3').contains(&ch)
        };
        if !ok {
            return Err(CodecError::BadDigit { side, index, ch });
        }
    }
    Ok(())
}

fn decode_side(code: &str, len: usize) -> (PMSequence, PMSequence) {
    let (quads, center) = code_shape(len);
    let mut top = vec![0i8; len];
    let mut bot = vec![0i8; len];
    let digits: Vec<u8> = code.bytes().map(|b| b - b'0').collect();
    for i in 0..quads {
        let (tl, tr, bl, br) = label_to_quad(QuadLabel::new(digits[i]).expect("validated"));
        top[i] = tl;
        top[len - 1 - i] = tr;
        bot[i] = bl;
        bot[len - 1 - i] = br;
    }
    if center {
        let (t, b) = label_to_column(ColumnLabel::new(digits[quads]).expect("validated"));
        top[quads] = t;
        bot[quads] = b;
    }
    (PMSequence::new(top).expect("all entries filled"), PMSequence::new(bot).expect("all entries filled"))
}

/// Decodes a structurally valid code into the raw quadruple. Structural
/// validity is enforced when the [`CodePair`] is constructed, so this is
/// total; membership is not checked here.
pub fn decode(code: &CodePair) -> BaseQuadruple {
    let (a, b) = decode_side(&code.ab, code.n + 1);
    let (c, d) = decode_side(&code.cd, code.n);
    BaseQuadruple::new(a, b, c, d).expect("lengths match by construction")
}

fn encode_side(top: &PMSequence, bot: &PMSequence, is_ab: bool) -> Result<String, CodecError> {
    let len = top.len();
    let (quads, center) = code_shape(len);
    let mut out = String::with_capacity(quads + usize::from(center));
    let t = top.entries();
    let b = bot.entries();
    for i in 0..quads {
        let pattern = (t[i], t[len - 1 - i], b[i], b[len - 1 - i]);
        if is_ab && i == 0 {
            if pattern != QUAD_PATTERNS[0] {
                return Err(CodecError::NotNormalized);
            }
            out.push('0');
            continue;
        }
        let label = quad_to_label(pattern.0, pattern.1, pattern.2, pattern.3)?;
        if label.value() == 0 {
            return Err(CodecError::NotInAlphabet(pattern.0, pattern.1, pattern.2, pattern.3));
        }
        out.push(char::from(b'0' + label.value()));
    }
    if center {
        let label = column_to_label(t[quads], b[quads]);
        out.push(char::from(b'0' + label.value()));
    }
    Ok(out)
}

/// Encodes a quadruple with `m = n+1` whose first `(A;B)` quad is the
/// label-0 pattern and whose remaining quads all lie in the 1..8
/// alphabet. Inverse of [`decode`] on its image.
pub fn encode(q: &BaseQuadruple) -> Result<CodePair, CodecError> {
    if q.m() != q.n() + 1 {
        return Err(CodecError::WrongShape { m: q.m(), n: q.n() });
    }
    let ab = encode_side(&q.a, &q.b, true)?;
    let cd = encode_side(&q.c, &q.d, false)?;
    Ok(CodePair { ab, cd, n: q.n() })
}

/// One line of a witness file: `"n: ABcode;CDcode"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRecord {
    pub n: usize,
    pub code: CodePair,
}

impl fmt::Display for WitnessRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.n, self.code)
    }
}

/// Parses witness-file text: one record per line, `#` starts a comment,
/// blank lines are skipped.
pub fn parse_witness_file(text: &str) -> Result<Vec<WitnessRecord>, CodecError> {
    let mut records = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (n_part, code_part) = body
            .split_once(':')
            .ok_or(CodecError::MissingLengthPrefix { line })?;
        let n: usize = n_part
            .trim()
            .parse()
            .map_err(|_| CodecError::MissingLengthPrefix { line })?;
        let code = CodePair::parse(code_part, n)
            .map_err(|e| CodecError::AtLine { line, source: Box::new(e) })?;
        records.push(WitnessRecord { n, code });
    }
    Ok(records)
}

/// Renders records in the witness-file format, one per line.
pub fn render_witness_file(records: &[WitnessRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quad_label_round_trip() {
        assert_eq!(quad_to_label(-1, 1, -1, 1).unwrap().value(), 3);
        assert_eq!(quad_to_label(1, 1, 1, -1).unwrap().value(), 0);
        assert!(matches!(quad_to_label(1, 1, -1, 1), Err(CodecError::NotInAlphabet(..))));
        assert_eq!(label_to_quad(QuadLabel::new(6).unwrap()), (1, -1, 1, -1));
        assert_eq!(label_to_column(ColumnLabel::new(2).unwrap()), (-1, 1));
        for v in 0..9 {
            let label = QuadLabel::new(v).unwrap();
            let (tl, tr, bl, br) = label_to_quad(label);
            assert_eq!(quad_to_label(tl, tr, bl, br).unwrap(), label);
        }
    }

    #[test]
    fn decode_worked_example() {
        let code = CodePair::parse("06142;1675", 8).unwrap();
        let q = decode(&code);
        assert_eq!(q.a.to_string(), "++++--+-+");
        assert_eq!(q.b.to_string(), "+++-+++--");
        assert_eq!(q.c.to_string(), "++--+--+");
        assert_eq!(q.d.to_string(), "++++-+-+");
    }

    #[test]
    fn decode_minimal_cases() {
        let q = decode(&CodePair::new("0", "0", 1).unwrap());
        assert_eq!(q.a.to_string(), "++");
        assert_eq!(q.b.to_string(), "+-");
        assert_eq!(q.c.to_string(), "+");
        assert_eq!(q.d.to_string(), "+");

        assert!(matches!(
            CodePair::new("0", "", 1),
            Err(CodecError::BadLength { side: "cd", .. })
        ));

        // n = 0: the ab code is a single central digit, the cd code empty.
        let q0 = decode(&CodePair::new("0", "", 0).unwrap());
        assert_eq!(q0.a.to_string(), "+");
        assert_eq!(q0.b.to_string(), "+");
        assert!(q0.c.is_empty() && q0.d.is_empty());
    }

    #[test]
    fn decode_table_row_sums() {
        let code = CodePair::parse("076413275222630;12875373652226", 28).unwrap();
        let q = decode(&code);
        let s = q.sums_profile();
        assert_eq!((s.a, s.b, s.c, s.d), (9, -1, 4, -4));
    }

    #[test]
    fn encode_worked_example() {
        let code = CodePair::parse("06142;1675", 8).unwrap();
        let q = decode(&code);
        assert_eq!(encode(&q).unwrap(), code);

        // Swapping A and B changes the first quad away from label 0.
        let swapped = BaseQuadruple::new(q.b.clone(), q.a.clone(), q.c.clone(), q.d.clone()).unwrap();
        assert_eq!(encode(&swapped), Err(CodecError::NotNormalized));
    }

    #[test]
    fn digit_validation() {
        assert!(matches!(
            CodePair::new("16142", "1675", 8),
            Err(CodecError::BadDigit { side: "ab", index: 0, .. })
        ));
        assert!(matches!(
            CodePair::new("06142", "1605", 8),
            Err(CodecError::BadDigit { side: "cd", index: 2, .. })
        ));
        // central digit out of range
        assert!(matches!(
            CodePair::new("06144", "1675", 8),
            Err(CodecError::BadDigit { side: "ab", index: 4, .. })
        ));
        // whitespace around the separator is tolerated
        assert!(CodePair::parse("06142 ; 1675", 8).is_ok());
    }

    #[test]
    fn witness_file_round_trip() {
        let text = "# header\n8: 06142;1675\n\n1: 0 ; 0 # trailing comment\n";
        let records = parse_witness_file(text).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].n, 8);
        assert_eq!(records[1].code.to_string(), "0;0");
        let rendered = render_witness_file(&records);
        assert_eq!(parse_witness_file(&rendered).unwrap(), records);
    }

    #[test]
    fn witness_file_errors_carry_line_numbers() {
        let err = parse_witness_file("8: 06142;1675\nbogus\n").unwrap_err();
        assert!(matches!(err, CodecError::MissingLengthPrefix { line: 2 }));
        let err = parse_witness_file("\n\n9: 06142;1675\n").unwrap_err();
        assert!(matches!(err, CodecError::AtLine { line: 3, .. }));
    }
}
