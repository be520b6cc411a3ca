//! Toolkit for base sequences `BS(m,n)`: quadruples `(A;B;C;D)` of
//! plus/minus-one sequences, `A` and `B` of length `m` and `C` and `D`
//! of length `n`, whose aperiodic autocorrelations sum to zero at every
//! positive lag.
//!
//! The crate provides
//!
//! * elementary sequence arithmetic ([`seqcore`]),
//! * the compact quad-label encoding of `BS(n+1,n)` members ([`codec`]),
//! * membership, normality predicates and the normalization symmetry
//!   group ([`bsq`]),
//! * Golay pairs, T-sequences and the derivation maps between them
//!   ([`constructions`]),
//! * the gamma graphs on four-square partitions of `4n+2` together with
//!   their conjectured shapes ([`gamma`]),
//! * an exhaustive backtracking search engine with an independent
//!   meet-in-the-middle oracle ([`search`]),
//! * an embedded, machine-checked witness corpus ([`corpus`]).

pub mod bsq;
pub mod codec;
pub mod constructions;
pub mod corpus;
pub mod gamma;
pub mod search;
pub mod seqcore;

pub use bsq::{BaseQuadruple, ParityClass, Partition4, SumsProfile};
pub use codec::{CodePair, ColumnLabel, QuadLabel, WitnessRecord};
pub use constructions::{GolayPair, TQuadruple, TsDerivation};
pub use corpus::Corpus;
pub use gamma::{EdgeId, ExpectedGamma, GammaGraph};
pub use seqcore::{PMSequence, TernarySequence};
