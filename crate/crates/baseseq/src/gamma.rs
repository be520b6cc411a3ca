//! The gamma graphs: four-square partition enumeration, vertex ordering,
//! graph construction from witnesses, the conjectured shapes, comparison
//! reports, and the related number-theoretic coverage question.
//!
//! The graph for parameter `n` has one vertex per partition of `4n+2`
//! into four squares. A witness quadruple contributes the loop or edge
//! `{vertex, covertex}` built from its sums and alternating sums.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde_json::json;
use thiserror::Error;

use crate::bsq::{parity_class, BaseQuadruple, BsqError, ParityClass, Partition4};
use crate::codec::{self, CodePair};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GammaError {
    #[error("partition {partition} is not a vertex of the graph for n={n}")]
    VertexNotFound { n: usize, partition: Partition4 },
    #[error("witness {index}: code is for n={got}, graph is for n={expected}")]
    WrongN { index: usize, expected: usize, got: usize },
    #[error("witness {index}: {source}")]
    BadWitness {
        index: usize,
        #[source]
        source: BsqError,
    },
    #[error("malformed edge id {0:?}")]
    BadEdgeId(String),
}

/// Enumerates all multisets `{w >= x >= y >= z >= 0}` of integers whose
/// squares sum to `total`, in decreasing lexicographic order of the
/// square lists. Brute force by descending nested loops; the totals in
/// play are small.
pub fn four_square_partitions(total: u32) -> Vec<Partition4> {
    let mut out = Vec::new();
    let isqrt = |v: u32| (v as f64).sqrt() as u32 + 1;
    for w in (0..=isqrt(total)).rev() {
        let rw = match total.checked_sub(w * w) {
            Some(r) => r,
            None => continue,
        };
        for x in (0..=w.min(isqrt(rw))).rev() {
            let rx = match rw.checked_sub(x * x) {
                Some(r) => r,
                None => continue,
            };
            for y in (0..=x.min(isqrt(rx))).rev() {
                let ry = match rx.checked_sub(y * y) {
                    Some(r) => r,
                    None => continue,
                };
                let z = (ry as f64).sqrt() as u32;
                for cand in [z.saturating_sub(1), z, z + 1] {
                    if cand * cand == ry && cand <= y {
                        out.push(Partition4::new([w, x, y, cand]));
                        break;
                    }
                }
            }
        }
    }
    // Descending roots give descending squares, so the natural array
    // order reversed is exactly decreasing lexicographic on squares.
    out.sort_unstable_by(|p, q| q.cmp(p));
    out.dedup();
    out
}

/// Vertex counts of the graph for parameter `n`: a single count for odd
/// `n`, the even/odd parity-class split for even `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuCounts {
    Odd(usize),
    Even { nu0: usize, nu1: usize },
}

pub fn nu_counts(n: usize) -> NuCounts {
    let parts = four_square_partitions(4 * n as u32 + 2);
    if n % 2 == 1 {
        NuCounts::Odd(parts.len())
    } else {
        let nu0 = parts
            .iter()
            .filter(|p| parity_class(p, n) == Ok(ParityClass::Even))
            .count();
        NuCounts::Even { nu0, nu1: parts.len() - nu0 }
    }
}

/// Vertices in table order: decreasing lexicographic for odd `n`; for
/// even `n` first the even-class vertices, then the odd-class ones, each
/// block in decreasing lexicographic order.
pub fn vertex_order(n: usize) -> Vec<Partition4> {
    let parts = four_square_partitions(4 * n as u32 + 2);
    if n % 2 == 1 {
        return parts;
    }
    let (even, odd): (Vec<_>, Vec<_>) = parts
        .into_iter()
        .partition(|p| parity_class(p, n) == Ok(ParityClass::Even));
    even.into_iter().chain(odd).collect()
}

/// A loop or edge named by 1-based vertex indices, printed `"i-j"` with
/// `i <= j`; `i = j` denotes a loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId {
    lo: usize,
    hi: usize,
}

impl EdgeId {
    pub fn new(i: usize, j: usize) -> Self {
        Self { lo: i.min(j), hi: i.max(j) }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn is_loop(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl FromStr for EdgeId {
    type Err = GammaError;

    fn from_str(s: &str) -> Result<Self, GammaError> {
        let (i, j) = s.split_once('-').ok_or_else(|| GammaError::BadEdgeId(s.to_owned()))?;
        let i: usize = i.trim().parse().map_err(|_| GammaError::BadEdgeId(s.to_owned()))?;
        let j: usize = j.trim().parse().map_err(|_| GammaError::BadEdgeId(s.to_owned()))?;
        Ok(Self::new(i, j))
    }
}

fn vertex_index(order: &[Partition4], p: Partition4, n: usize) -> Result<usize, GammaError> {
    order
        .iter()
        .position(|&v| v == p)
        .map(|i| i + 1)
        .ok_or(GammaError::VertexNotFound { n, partition: p })
}

/// The loop/edge contributed by a witness, as 1-based indices into
/// [`vertex_order`]. Requires a base sequence with `m = n+1`.
pub fn edge_id(q: &BaseQuadruple) -> Result<EdgeId, GammaError> {
    let n = q.n();
    let vertex = q.vertex().map_err(|source| GammaError::BadWitness { index: 0, source })?;
    let covertex = q.covertex().map_err(|source| GammaError::BadWitness { index: 0, source })?;
    let order = vertex_order(n);
    let i = vertex_index(&order, vertex, n)?;
    let j = vertex_index(&order, covertex, n)?;
    Ok(EdgeId::new(i, j))
}

/// Conjectured isomorphism type of the graph for parameter `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedShape {
    /// `K_v^0`: complete with a loop at every vertex (odd `n`).
    CompleteWithLoops(usize),
    /// `K_{v0,v1}`: complete bipartite across the parity classes, no
    /// loops (`n = 2 mod 4`).
    CompleteBipartite(usize, usize),
    /// `K_{v0}^0 + K_{v1}^0`: two complete-with-loops components, one per
    /// parity class (`n = 0 mod 4`).
    TwoCompleteWithLoops(usize, usize),
    /// `n` in {4, 8, 12}: the conjecture makes no claim.
    Excepted,
}

/// The conjectured graph for parameter `n`: vertex order plus explicit
/// loop and edge sets (absent for the excepted `n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedGamma {
    pub n: usize,
    pub vertices: Vec<Partition4>,
    pub shape: ExpectedShape,
    pub loops: Option<BTreeSet<usize>>,
    pub edges: Option<BTreeSet<(usize, usize)>>,
}

impl ExpectedGamma {
    /// All expected loops and edges as ids, when the conjecture claims a
    /// shape.
    pub fn edge_ids(&self) -> Option<BTreeSet<EdgeId>> {
        let loops = self.loops.as_ref()?;
        let edges = self.edges.as_ref()?;
        Some(
            loops
                .iter()
                .map(|&i| EdgeId::new(i, i))
                .chain(edges.iter().map(|&(i, j)| EdgeId::new(i, j)))
                .collect(),
        )
    }

    pub fn total_count(&self) -> Option<usize> {
        Some(self.loops.as_ref()?.len() + self.edges.as_ref()?.len())
    }
}

pub fn expected_gamma(n: usize) -> ExpectedGamma {
    let vertices = vertex_order(n);
    let nv = vertices.len();
    if matches!(n, 4 | 8 | 12) {
        return ExpectedGamma { n, vertices, shape: ExpectedShape::Excepted, loops: None, edges: None };
    }
    let mut loops = BTreeSet::new();
    let mut edges = BTreeSet::new();
    let shape;
    if n % 2 == 1 {
        shape = ExpectedShape::CompleteWithLoops(nv);
        loops.extend(1..=nv);
        for i in 1..=nv {
            for j in i + 1..=nv {
                edges.insert((i, j));
            }
        }
    } else {
        let nu0 = vertices
            .iter()
            .filter(|p| parity_class(p, n) == Ok(ParityClass::Even))
            .count();
        if n % 4 == 2 {
            shape = ExpectedShape::CompleteBipartite(nu0, nv - nu0);
            for i in 1..=nu0 {
                for j in nu0 + 1..=nv {
                    edges.insert((i, j));
                }
            }
        } else {
            shape = ExpectedShape::TwoCompleteWithLoops(nu0, nv - nu0);
            loops.extend(1..=nv);
            for (lo, hi) in [(1, nu0), (nu0 + 1, nv)] {
                for i in lo..=hi {
                    for j in i + 1..=hi {
                        edges.insert((i, j));
                    }
                }
            }
        }
    }
    ExpectedGamma { n, vertices, shape, loops: Some(loops), edges: Some(edges) }
}

/// A gamma graph built from witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaGraph {
    pub n: usize,
    pub vertices: Vec<Partition4>,
    pub loops: BTreeSet<usize>,
    pub edges: BTreeSet<(usize, usize)>,
    /// Witness codes per loop/edge, in input order.
    pub witnesses: BTreeMap<EdgeId, Vec<CodePair>>,
}

/// Builds the graph witnessed by the given codes. Every witness must
/// decode to a base sequence for this `n`; failures identify the
/// offending row.
pub fn build_gamma(witnesses: &[CodePair], n: usize) -> Result<GammaGraph, GammaError> {
    let order = vertex_order(n);
    let mut graph = GammaGraph {
        n,
        vertices: order.clone(),
        loops: BTreeSet::new(),
        edges: BTreeSet::new(),
        witnesses: BTreeMap::new(),
    };
    for (index, code) in witnesses.iter().enumerate() {
        if code.n() != n {
            return Err(GammaError::WrongN { index, expected: n, got: code.n() });
        }
        let q = codec::decode(code);
        let vertex = q.vertex().map_err(|source| GammaError::BadWitness { index, source })?;
        let covertex = q.covertex().map_err(|source| GammaError::BadWitness { index, source })?;
        let i = vertex_index(&order, vertex, n)?;
        let j = vertex_index(&order, covertex, n)?;
        let id = EdgeId::new(i, j);
        if id.is_loop() {
            graph.loops.insert(id.lo());
        } else {
            graph.edges.insert((id.lo(), id.hi()));
        }
        graph.witnesses.entry(id).or_default().push(code.clone());
    }
    Ok(graph)
}

impl GammaGraph {
    pub fn edge_ids(&self) -> BTreeSet<EdgeId> {
        self.loops
            .iter()
            .map(|&i| EdgeId::new(i, i))
            .chain(self.edges.iter().map(|&(i, j)| EdgeId::new(i, j)))
            .collect()
    }

    /// DOT rendering: loops as self-edges, vertex labels as sums of
    /// squares.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph gamma_{} {{\n", self.n);
        for (i, p) in self.vertices.iter().enumerate() {
            let r = p.roots();
            out.push_str(&format!(
                "  v{} [label=\"{}^2+{}^2+{}^2+{}^2\"];\n",
                i + 1,
                r[0],
                r[1],
                r[2],
                r[3]
            ));
        }
        for &i in &self.loops {
            out.push_str(&format!("  v{i} -- v{i};\n"));
        }
        for &(i, j) in &self.edges {
            out.push_str(&format!("  v{i} -- v{j};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let witnesses: BTreeMap<String, Vec<String>> = self
            .witnesses
            .iter()
            .map(|(id, codes)| (id.to_string(), codes.iter().map(|c| c.to_string()).collect()))
            .collect();
        json!({
            "n": self.n,
            "vertices": self.vertices.iter().map(|p| p.roots()).collect::<Vec<_>>(),
            "loops": self.loops,
            "edges": self.edges,
            "witnesses": witnesses,
        })
    }
}

/// Status of one loop/edge in a built-vs-expected comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeStatus {
    /// Expected and witnessed.
    Present,
    /// Expected but not witnessed.
    Missing,
    /// Witnessed but not expected.
    Extra,
    /// Witnessed where the conjecture makes no claim (excepted `n`).
    Observed,
}

impl fmt::Display for EdgeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeStatus::Present => "present",
            EdgeStatus::Missing => "missing",
            EdgeStatus::Extra => "extra",
            EdgeStatus::Observed => "observed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareRow {
    pub edge: EdgeId,
    pub status: EdgeStatus,
    pub witness: Option<CodePair>,
}

/// Comparison of a witnessed graph against the conjectured one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaComparison {
    pub rows: Vec<CompareRow>,
}

impl GammaComparison {
    pub fn missing(&self) -> Vec<EdgeId> {
        self.rows.iter().filter(|r| r.status == EdgeStatus::Missing).map(|r| r.edge).collect()
    }

    pub fn extra(&self) -> Vec<EdgeId> {
        self.rows.iter().filter(|r| r.status == EdgeStatus::Extra).map(|r| r.edge).collect()
    }

    pub fn present(&self) -> Vec<EdgeId> {
        self.rows.iter().filter(|r| r.status == EdgeStatus::Present).map(|r| r.edge).collect()
    }

    pub fn matches(&self) -> bool {
        self.rows
            .iter()
            .all(|r| matches!(r.status, EdgeStatus::Present | EdgeStatus::Observed))
    }

    /// Tab-separated report: edge id, status, witness code.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("edge\tstatus\twitness\n");
        for row in &self.rows {
            let witness = row.witness.as_ref().map(|c| c.to_string()).unwrap_or_else(|| "-".into());
            out.push_str(&format!("{}\t{}\t{}\n", row.edge, row.status, witness));
        }
        out
    }
}

/// Compares a built graph against the expected one, listing expected but
/// unwitnessed and witnessed but unexpected loops/edges. For the
/// excepted `n` the report carries no claims, only observations.
pub fn compare(built: &GammaGraph, expected: &ExpectedGamma) -> GammaComparison {
    let built_ids = built.edge_ids();
    let witness_for = |id: &EdgeId| built.witnesses.get(id).and_then(|v| v.first().cloned());
    let mut rows = Vec::new();
    match expected.edge_ids() {
        None => {
            for id in built_ids {
                rows.push(CompareRow { edge: id, status: EdgeStatus::Observed, witness: witness_for(&id) });
            }
        }
        Some(expected_ids) => {
            for id in expected_ids.union(&built_ids) {
                let status = match (expected_ids.contains(id), built_ids.contains(id)) {
                    (true, true) => EdgeStatus::Present,
                    (true, false) => EdgeStatus::Missing,
                    (false, true) => EdgeStatus::Extra,
                    (false, false) => unreachable!(),
                };
                rows.push(CompareRow { edge: *id, status, witness: witness_for(id) });
            }
        }
    }
    GammaComparison { rows }
}

/// Coverage question over squares and triangular numbers: with
/// `S2 = {x+y : x,y squares}` and `T2 = {x+y : x,y triangular}`, returns
/// the even integers `<= limit` not of the form `4x+y` with `x,y` in
/// `T2`, and the odd integers `<= limit` not of the form `2x+y` with `x`
/// in `S2` and `y` in `T2`.
pub fn question_coverage(limit: usize) -> (Vec<usize>, Vec<usize>) {
    let mut triangular = Vec::new();
    let mut k = 0usize;
    loop {
        let t = k * (k + 1) / 2;
        if t > limit {
            break;
        }
        triangular.push(t);
        k += 1;
    }
    let mut squares = Vec::new();
    let mut k = 0usize;
    while k * k <= limit {
        squares.push(k * k);
        k += 1;
    }

    let pair_sums = |vals: &[usize]| {
        let mut hit = vec![false; limit + 1];
        for (i, &x) in vals.iter().enumerate() {
            for &y in &vals[i..] {
                if x + y <= limit {
                    hit[x + y] = true;
                }
            }
        }
        hit
    };
    let t2 = pair_sums(&triangular);
    let s2 = pair_sums(&squares);
    let t2_list: Vec<usize> = (0..=limit).filter(|&v| t2[v]).collect();
    let s2_list: Vec<usize> = (0..=limit).filter(|&v| s2[v]).collect();

    let mut covered = vec![false; limit + 1];
    for &x in &t2_list {
        if 4 * x > limit {
            break;
        }
        for &y in &t2_list {
            match 4usize.checked_mul(x).and_then(|v| v.checked_add(y)) {
                Some(v) if v <= limit => covered[v] = true,
                _ => break,
            }
        }
    }
    let uncovered_even = (0..=limit).step_by(2).filter(|&v| !covered[v]).collect();

    let mut covered = vec![false; limit + 1];
    for &x in &s2_list {
        if 2 * x > limit {
            break;
        }
        for &y in &t2_list {
            let v = 2 * x + y;
            if v > limit {
                break;
            }
            covered[v] = true;
        }
    }
    let uncovered_odd = (1..=limit).step_by(2).filter(|&v| !covered[v]).collect();

    (uncovered_even, uncovered_odd)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let p6 = four_square_partitions(6);
        assert_eq!(p6.len(), 1);
        assert_eq!(p6[0].roots(), [2, 1, 1, 0]);

        assert_eq!(four_square_partitions(114).len(), 8);
        // Two independent enumerations agree that 150 has 11 partitions.
        assert_eq!(four_square_partitions(150).len(), 11);
    }

    #[test]
    fn partitions_match_exhaustive_scan() {
        for total in 0..=400u32 {
            let fast: BTreeSet<Partition4> = four_square_partitions(total).into_iter().collect();
            let mut slow = BTreeSet::new();
            let cap = (1..).find(|v| v * v > total).unwrap();
            for a in 0..cap {
                for b in 0..=a {
                    for c in 0..=b {
                        for d in 0..=c {
                            if a * a + b * b + c * c + d * d == total {
                                slow.insert(Partition4::new([a, b, c, d]));
                            }
                        }
                    }
                }
            }
            assert_eq!(fast, slow, "total {total}");
        }
    }

    #[test]
    fn partition_parity_structure() {
        // Every partition of 4n+2 has exactly two odd roots; for even n
        // the two even roots are congruent mod 4.
        for n in 0..=60usize {
            for p in four_square_partitions(4 * n as u32 + 2) {
                let odd = p.roots().iter().filter(|r| *r % 2 == 1).count();
                assert_eq!(odd, 2, "n={n} {p}");
                if n % 2 == 0 {
                    assert!(parity_class(&p, n).is_ok());
                }
            }
        }
    }

    #[test]
    fn nu_count_examples() {
        assert_eq!(nu_counts(28), NuCounts::Even { nu0: 5, nu1: 3 });
        assert_eq!(nu_counts(40), NuCounts::Even { nu0: 9, nu1: 4 });
        assert_eq!(nu_counts(0), NuCounts::Even { nu0: 1, nu1: 0 });
        assert_eq!(nu_counts(37), NuCounts::Odd(11));
    }

    #[test]
    fn vertex_order_n28_matches_listing() {
        let order = vertex_order(28);
        let roots: Vec<[u32; 4]> = order.iter().map(|p| p.roots()).collect();
        assert_eq!(
            roots,
            vec![
                [9, 4, 4, 1],
                [8, 7, 1, 0],
                [8, 5, 5, 0],
                [8, 5, 4, 3],
                [7, 7, 4, 0],
                [10, 3, 2, 1],
                [9, 5, 2, 2],
                [7, 6, 5, 2],
            ]
        );
    }

    #[test]
    fn edge_id_examples() {
        let q = codec::decode(&CodePair::parse("078467557578650;12836515766382", 28).unwrap());
        assert_eq!(edge_id(&q).unwrap().to_string(), "6-7");

        let q = codec::decode(&CodePair::parse("07643661131422181;1286331583848171", 32).unwrap());
        assert_eq!(edge_id(&q).unwrap().to_string(), "1-1");
    }

    #[test]
    fn expected_gamma_counts() {
        assert_eq!(expected_gamma(28).total_count(), Some(21));
        assert_eq!(expected_gamma(36).total_count(), Some(27));
        let g30 = expected_gamma(30);
        assert_eq!(g30.shape, ExpectedShape::CompleteBipartite(4, 4));
        assert_eq!(g30.total_count(), Some(16));
        assert_eq!(expected_gamma(4).shape, ExpectedShape::Excepted);
    }

    #[test]
    fn empty_witness_list_reports_missing_loop() {
        let built = build_gamma(&[], 1).unwrap();
        assert_eq!(built.vertices.len(), 1);
        assert!(built.edges.is_empty() && built.loops.is_empty());
        let cmp = compare(&built, &expected_gamma(1));
        assert_eq!(cmp.missing(), vec![EdgeId::new(1, 1)]);
        assert!(cmp.extra().is_empty());
    }

    #[test]
    fn dot_and_json_rendering() {
        let code = CodePair::parse("06142;1675", 8).unwrap();
        let g = build_gamma(std::slice::from_ref(&code), 8).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("graph gamma_8 {"));
        assert!(dot.contains("4^2+3^2+3^2+0^2"));
        let v = g.to_json();
        assert_eq!(v["n"], 8);
        // vertex = covertex = (4,3,3,0), third in the even class
        assert_eq!(v["witnesses"]["3-3"][0], "06142;1675");
    }

    #[test]
    fn question_coverage_examples() {
        assert_eq!(question_coverage(0), (vec![], vec![]));
        assert_eq!(question_coverage(50), (vec![], vec![]));
    }

    #[test]
    fn edge_id_parsing() {
        let id: EdgeId = "3-5".parse().unwrap();
        assert_eq!((id.lo(), id.hi()), (3, 5));
        assert!("3_5".parse::<EdgeId>().is_err());
    }
}
