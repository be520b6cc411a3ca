//! Base-sequence semantics: membership, normality predicates, sums
//! profile, vertex partitions, parity class, and the symmetry group used
//! for normalization and completeness testing.

use std::fmt;

use thiserror::Error;

use crate::codec::{self, CodePair};
use crate::seqcore::PMSequence;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BsqError {
    #[error("pair lengths differ: |A|={a} |B|={b} |C|={c} |D|={d}")]
    LengthMismatch { a: usize, b: usize, c: usize, d: usize },
    #[error("quadruple is not a base sequence (first failing lag {lag}, residual {residual})")]
    NotBaseSequences { lag: usize, residual: i32 },
    #[error("parity class is only defined for even n")]
    ParityUndefined,
    #[error("no orbit member admits an encoding")]
    NoCanonicalForm,
}

/// A quadruple `(A;B;C;D)` of binary sequences with `|A| = |B| = m` and
/// `|C| = |D| = n`; a candidate member of `BS(m,n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseQuadruple {
    pub a: PMSequence,
    pub b: PMSequence,
    pub c: PMSequence,
    pub d: PMSequence,
}

/// The eight sequence evaluations of a quadruple: `a = A(1)`, ...,
/// `a_star = A(-1)`, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumsProfile {
    pub a: i32,
    pub b: i32,
    pub c: i32,
    pub d: i32,
    pub a_star: i32,
    pub b_star: i32,
    pub c_star: i32,
    pub d_star: i32,
}

impl SumsProfile {
    pub fn sums(&self) -> [i32; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn star_sums(&self) -> [i32; 4] {
        [self.a_star, self.b_star, self.c_star, self.d_star]
    }

    pub fn vertex(&self) -> Partition4 {
        Partition4::from_sums(self.sums())
    }

    pub fn covertex(&self) -> Partition4 {
        Partition4::from_sums(self.star_sums())
    }
}

/// A partition of an integer into four squares, stored as the four
/// nonnegative roots in decreasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition4 {
    roots: [u32; 4],
}

impl Partition4 {
    pub fn new(mut roots: [u32; 4]) -> Self {
        roots.sort_unstable_by(|x, y| y.cmp(x));
        Self { roots }
    }

    pub fn from_sums(sums: [i32; 4]) -> Self {
        Self::new(sums.map(|v| v.unsigned_abs()))
    }

    pub fn roots(&self) -> [u32; 4] {
        self.roots
    }

    pub fn sum_of_squares(&self) -> u32 {
        self.roots.iter().map(|&r| r * r).sum()
    }
}

impl fmt::Display for Partition4 {
    /// Renders like `(9^2,4^2,4^2,1)`: roots below 2 are printed plain.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.roots.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if *r <= 1 {
                write!(f, "{r}")?;
            } else {
                write!(f, "{r}^2")?;
            }
        }
        write!(f, ")")
    }
}

/// Parity class of a vertex for even `n`: Even when the two even roots
/// are congruent to 0 modulo 4, Odd when congruent to 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityClass {
    Even,
    Odd,
}

/// Parity class of a four-square partition of `4n+2` for even `n`. The
/// partition must have exactly two even roots, congruent modulo 4; this
/// holds for every partition of `4n+2` with `n` even.
pub fn parity_class(p: &Partition4, n: usize) -> Result<ParityClass, BsqError> {
    if n % 2 == 1 {
        return Err(BsqError::ParityUndefined);
    }
    let evens: Vec<u32> = p.roots().iter().copied().filter(|r| r % 2 == 0).collect();
    assert_eq!(evens.len(), 2, "partition of 4n+2 must have exactly two even roots: {p}");
    assert_eq!(evens[0] % 4, evens[1] % 4, "even roots must be congruent mod 4: {p}");
    Ok(if evens[0] % 4 == 0 { ParityClass::Even } else { ParityClass::Odd })
}

/// A violated lag of the combined residual, reported by membership
/// checking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LagViolation {
    pub lag: usize,
    pub residual: i32,
}

impl BaseQuadruple {
    pub fn new(a: PMSequence, b: PMSequence, c: PMSequence, d: PMSequence) -> Result<Self, BsqError> {
        if a.len() != b.len() || c.len() != d.len() {
            return Err(BsqError::LengthMismatch { a: a.len(), b: b.len(), c: c.len(), d: d.len() });
        }
        Ok(Self { a, b, c, d })
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn combined_residual(&self, lag: usize) -> i32 {
        crate::seqcore::combined_residual(&self.a, &self.b, &self.c, &self.d, lag)
    }

    /// First lag in `1..max(m,n)` whose combined residual is nonzero, if
    /// any. `None` means the quadruple is a base sequence.
    pub fn first_violation(&self) -> Option<LagViolation> {
        let max = self.m().max(self.n());
        for lag in 1..max.max(1) {
            let residual = self.combined_residual(lag);
            if residual != 0 {
                return Some(LagViolation { lag, residual });
            }
        }
        None
    }

    pub fn is_bs(&self) -> bool {
        self.first_violation().is_none()
    }

    fn require_bs(&self) -> Result<(), BsqError> {
        match self.first_violation() {
            None => Ok(()),
            Some(v) => Err(BsqError::NotBaseSequences { lag: v.lag, residual: v.residual }),
        }
    }

    pub fn sums_profile(&self) -> SumsProfile {
        SumsProfile {
            a: self.a.eval_plus(),
            b: self.b.eval_plus(),
            c: self.c.eval_plus(),
            d: self.d.eval_plus(),
            a_star: self.a.eval_minus(),
            b_star: self.b.eval_minus(),
            c_star: self.c.eval_minus(),
            d_star: self.d.eval_minus(),
        }
    }

    /// The partition of `4n+2` formed by the squared sums. Requires a
    /// base sequence with `m = n+1`.
    pub fn vertex(&self) -> Result<Partition4, BsqError> {
        self.require_vertex_shape()?;
        Ok(self.sums_profile().vertex())
    }

    /// Like [`vertex`](Self::vertex) but over the alternating sums.
    pub fn covertex(&self) -> Result<Partition4, BsqError> {
        self.require_vertex_shape()?;
        Ok(self.sums_profile().covertex())
    }

    fn require_vertex_shape(&self) -> Result<(), BsqError> {
        if self.m() != self.n() + 1 {
            return Err(BsqError::LengthMismatch {
                a: self.m(),
                b: self.m(),
                c: self.n(),
                d: self.n(),
            });
        }
        self.require_bs()
    }

    /// `b_i = a_i` for all `i <= n`; the last entry of `B` is free.
    pub fn is_normal(&self) -> bool {
        assert_eq!(self.m(), self.n() + 1, "normality is defined on BS(n+1,n)");
        let (a, b) = (self.a.entries(), self.b.entries());
        (0..self.n()).all(|i| b[i] == a[i])
    }

    /// `b_i = (-1)^(i-1) a_i` for all `i <= n` (index origin 1, so the
    /// first entries agree); the last entry of `B` is free.
    pub fn is_near_normal(&self) -> bool {
        assert_eq!(self.m(), self.n() + 1, "near-normality is defined on BS(n+1,n)");
        let (a, b) = (self.a.entries(), self.b.entries());
        (0..self.n()).all(|i| b[i] == if i % 2 == 0 { a[i] } else { -a[i] })
    }
}

/// Generators of the symmetry group: negate or reverse any one of the
/// four sequences, swap `A` with `B`, swap `C` with `D`. Each preserves
/// membership and the vertex/covertex pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    NegateA,
    NegateB,
    NegateC,
    NegateD,
    ReverseA,
    ReverseB,
    ReverseC,
    ReverseD,
    SwapAB,
    SwapCD,
}

impl Generator {
    pub const ALL: [Generator; 10] = [
        Generator::NegateA,
        Generator::NegateB,
        Generator::NegateC,
        Generator::NegateD,
        Generator::ReverseA,
        Generator::ReverseB,
        Generator::ReverseC,
        Generator::ReverseD,
        Generator::SwapAB,
        Generator::SwapCD,
    ];

    fn apply_raw(self, q: &BaseQuadruple) -> BaseQuadruple {
        let mut out = q.clone();
        match self {
            Generator::NegateA => out.a = q.a.negated(),
            Generator::NegateB => out.b = q.b.negated(),
            Generator::NegateC => out.c = q.c.negated(),
            Generator::NegateD => out.d = q.d.negated(),
            Generator::ReverseA => out.a = q.a.reversed(),
            Generator::ReverseB => out.b = q.b.reversed(),
            Generator::ReverseC => out.c = q.c.reversed(),
            Generator::ReverseD => out.d = q.d.reversed(),
            Generator::SwapAB => {
                out.a = q.b.clone();
                out.b = q.a.clone();
            }
            Generator::SwapCD => {
                out.c = q.d.clone();
                out.d = q.c.clone();
            }
        }
        out
    }
}

/// Applies one group generator to a base sequence.
pub fn symmetry_apply(g: Generator, q: &BaseQuadruple) -> Result<BaseQuadruple, BsqError> {
    q.require_bs()?;
    Ok(g.apply_raw(q))
}

/// Image of `q` under one element of the group, indexed by negation and
/// reversal masks over (A,B,C,D) plus the two swaps. Swaps act first, so
/// the 1024 combinations cover the whole group.
fn transform(q: &BaseQuadruple, neg_mask: u8, rev_mask: u8, swap_ab: bool, swap_cd: bool) -> BaseQuadruple {
    let mut seqs = [&q.a, &q.b, &q.c, &q.d].map(Clone::clone);
    if swap_ab {
        seqs.swap(0, 1);
    }
    if swap_cd {
        seqs.swap(2, 3);
    }
    for (i, s) in seqs.iter_mut().enumerate() {
        if rev_mask & (1 << i) != 0 {
            *s = s.reversed();
        }
        if neg_mask & (1 << i) != 0 {
            *s = s.negated();
        }
    }
    let [a, b, c, d] = seqs;
    BaseQuadruple { a, b, c, d }
}

/// The full orbit of `q` under the symmetry group, deduplicated. At most
/// 1024 members.
pub fn orbit(q: &BaseQuadruple) -> Result<Vec<BaseQuadruple>, BsqError> {
    q.require_bs()?;
    let mut out = std::collections::BTreeSet::new();
    for neg_mask in 0..16u8 {
        for rev_mask in 0..16u8 {
            for swaps in 0..4u8 {
                out.insert(transform(q, neg_mask, rev_mask, swaps & 1 != 0, swaps & 2 != 0));
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// The lexicographically smallest encoding over the orbit members whose
/// first `(A;B)` quad is the label-0 pattern. Constant on orbits.
pub fn canonicalize(q: &BaseQuadruple) -> Result<CodePair, BsqError> {
    q.require_bs()?;
    let mut best: Option<CodePair> = None;
    for neg_mask in 0..16u8 {
        for rev_mask in 0..16u8 {
            for swaps in 0..4u8 {
                let image = transform(q, neg_mask, rev_mask, swaps & 1 != 0, swaps & 2 != 0);
                if let Ok(code) = codec::encode(&image) {
                    if best.as_ref().is_none_or(|b| code < *b) {
                        best = Some(code);
                    }
                }
            }
        }
    }
    best.ok_or(BsqError::NoCanonicalForm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{decode, CodePair};

    fn worked_example() -> BaseQuadruple {
        decode(&CodePair::parse("06142;1675", 8).unwrap())
    }

    fn pm(s: &str) -> PMSequence {
        s.parse().unwrap()
    }

    #[test]
    fn membership_worked_examples() {
        assert!(worked_example().is_bs());

        let q37 = decode(
            &CodePair::parse("0686287846153524326;1153175814738523732", 37).unwrap(),
        );
        assert!(q37.is_bs());

        // Flip one entry: a violated lag must be reported.
        let q = worked_example();
        let mut entries = q.a.entries().to_vec();
        entries[4] = -entries[4];
        let bad = BaseQuadruple::new(PMSequence::new(entries).unwrap(), q.b, q.c, q.d).unwrap();
        let violation = bad.first_violation().expect("must fail some lag");
        assert_ne!(violation.residual, 0);
    }

    #[test]
    fn sums_profile_table_rows() {
        let q = decode(&CodePair::parse("076413275222630;12875373652226", 28).unwrap());
        let s = q.sums_profile();
        assert_eq!(s.sums(), [9, -1, 4, -4]);
        assert_eq!(s.star_sums(), [9, -1, 4, 4]);

        let q = decode(&CodePair::parse("07643661131422181;1286331583848171", 32).unwrap());
        let s = q.sums_profile();
        assert_eq!(s.sums(), [11, 3, 0, 0]);
        assert_eq!(s.star_sums(), [11, 3, 0, 0]);

        let trivial = BaseQuadruple::new(pm("+"), pm("+"), PMSequence::empty(), PMSequence::empty()).unwrap();
        let s = trivial.sums_profile();
        assert_eq!(s.sums(), [1, 1, 0, 0]);
        assert_eq!(s.star_sums(), [1, 1, 0, 0]);
    }

    #[test]
    fn vertex_examples() {
        let q = decode(&CodePair::parse("076413275222630;12875373652226", 28).unwrap());
        let v = q.vertex().unwrap();
        assert_eq!(v.roots(), [9, 4, 4, 1]);
        assert_eq!(v.sum_of_squares(), 114);
        assert_eq!(v.to_string(), "(9^2,4^2,4^2,1)");

        let v8 = worked_example().vertex().unwrap();
        assert_eq!(v8.roots(), [4, 3, 3, 0]);
        assert_eq!(v8.sum_of_squares(), 34);

        // 4n+2 is never divisible by 4, so the all-zero profile is impossible.
        assert_ne!((4 * 8 + 2) % 4, 0);
    }

    #[test]
    fn normality_predicates() {
        let q38 = decode(
            &CodePair::parse("07641237828515856281;1782612553714317675", 38).unwrap(),
        );
        assert!(q38.is_near_normal());

        let q37 = decode(
            &CodePair::parse("0686287846153524326;1153175814738523732", 37).unwrap(),
        );
        assert!(!q37.is_near_normal());

        let q = BaseQuadruple::new(pm("++"), pm("+-"), pm("+"), pm("+")).unwrap();
        assert!(q.is_normal());
        assert!(q.is_near_normal());
    }

    #[test]
    fn parity_class_examples() {
        assert_eq!(parity_class(&Partition4::new([9, 4, 4, 1]), 28).unwrap(), ParityClass::Even);
        assert_eq!(parity_class(&Partition4::new([10, 3, 2, 1]), 28).unwrap(), ParityClass::Odd);
        assert_eq!(parity_class(&Partition4::new([1, 1, 0, 0]), 0).unwrap(), ParityClass::Even);
        assert_eq!(parity_class(&Partition4::new([3, 2, 1, 0]), 3), Err(BsqError::ParityUndefined));
    }

    #[test]
    fn orbit_preserves_membership_and_vertices() {
        let q = worked_example();
        let members = orbit(&q).unwrap();
        assert!(members.len() <= 1024);
        let vertex_pair = {
            let (v, w) = (q.vertex().unwrap(), q.covertex().unwrap());
            if v <= w { (v, w) } else { (w, v) }
        };
        for member in &members {
            assert!(member.is_bs());
            let (v, w) = (member.vertex().unwrap(), member.covertex().unwrap());
            let pair = if v <= w { (v, w) } else { (w, v) };
            assert_eq!(pair, vertex_pair);
        }
    }

    #[test]
    fn canonicalize_is_constant_on_orbits() {
        let q = worked_example();
        let canon = canonicalize(&q).unwrap();
        for g in Generator::ALL {
            let image = symmetry_apply(g, &q).unwrap();
            assert_eq!(canonicalize(&image).unwrap(), canon, "{g:?}");
        }
    }

    #[test]
    fn non_members_are_rejected() {
        let q = BaseQuadruple::new(pm("++"), pm("++"), pm("+"), pm("+")).unwrap();
        assert!(matches!(q.vertex(), Err(BsqError::NotBaseSequences { .. })));
        assert!(matches!(canonicalize(&q), Err(BsqError::NotBaseSequences { .. })));
    }
}
