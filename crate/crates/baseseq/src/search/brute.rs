//! Independent brute-force oracle: meet-in-the-middle enumeration of all
//! `BS(n+1,n)` members. Shares nothing with the incremental backtracking
//! engine beyond the sequence definitions, so the two can check each
//! other.
//!
//! Sequences are enumerated as bit masks (bit set = `+1`); the pair
//! `(A;B)` side is indexed by its lag-residual vector and the `(C;D)`
//! side streams against it, joining on negated residuals.

use crate::bsq::BaseQuadruple;
use crate::seqcore::PMSequence;

use super::SearchError;

/// Aperiodic autocorrelation of a `len`-bit mask at `lag`, computed by
/// the agree/disagree window count.
fn mask_autocorrelation(mask: u32, len: usize, lag: usize) -> i32 {
    if lag >= len {
        return 0;
    }
    let window = len - lag;
    let diff = (mask ^ (mask >> lag)) & ((1u32 << window) - 1);
    window as i32 - 2 * diff.count_ones() as i32
}

fn mask_to_sequence(mask: u32, len: usize) -> PMSequence {
    let entries: Vec<i8> = (0..len).map(|i| if mask & (1 << i) != 0 { 1 } else { -1 }).collect();
    PMSequence::new(entries).expect("entries are +-1")
}

/// Packs the residuals at lags `1..n-1` (each in `[-2m, 2m]`, `m <= 13`)
/// into one key byte per lag.
fn residual_key(res: &[i32]) -> u128 {
    let mut key = 0u128;
    for (i, &r) in res.iter().enumerate() {
        debug_assert!((-100..=100).contains(&r));
        key |= (((r + 101) as u8) as u128) << (8 * i);
    }
    key
}

/// All members of `BS(n+1,n)` whose first `(A;B)` quad is the label-0
/// pattern (for `n = 0` there is no quad and all four sign choices are
/// returned). Output is sorted by raw entries, so runs are comparable as
/// sets. `n <= 12` keeps the enumeration desk-sized.
pub fn brute_force(n: usize) -> Result<Vec<BaseQuadruple>, SearchError> {
    if n > 12 {
        return Err(SearchError::BruteForceTooLarge { n });
    }
    Ok(enumerate_members(n, true))
}

/// As [`brute_force`] but without pinning the first quad; used to test
/// the forced structure of the first quad at small `n`.
pub(crate) fn enumerate_members(n: usize, pin_first_quad: bool) -> Vec<BaseQuadruple> {
    let m = n + 1;
    if n == 0 {
        // No lag constraints at all: every sign choice of the two
        // length-1 sequences qualifies.
        let mut out = Vec::new();
        for a in [-1i8, 1] {
            for b in [-1i8, 1] {
                out.push(
                    BaseQuadruple::new(
                        PMSequence::new(vec![a]).unwrap(),
                        PMSequence::new(vec![b]).unwrap(),
                        PMSequence::empty(),
                        PMSequence::empty(),
                    )
                    .unwrap(),
                );
            }
        }
        out.sort_unstable();
        return out;
    }

    // (A;B) side: residuals at lags 1..n-1 keyed; lag n must vanish on
    // this side alone since C and D are too short to reach it.
    let key_lags = n - 1;
    let mut ab_index: Vec<(u128, u32, u32)> = Vec::new();
    let ab_masks: Vec<u32> = if pin_first_quad {
        // a_1 = a_m = +, so free bits are the middle m-2.
        (0..1u32 << (m - 2)).map(|free| (free << 1) | 1 | (1 << (m - 1))).collect()
    } else {
        (0..1u32 << m).collect()
    };
    let mut a_res = vec![0i32; key_lags];
    for &a_mask in &ab_masks {
        for lag in 1..=key_lags {
            a_res[lag - 1] = mask_autocorrelation(a_mask, m, lag);
        }
        let a_lag_n = mask_autocorrelation(a_mask, m, n);
        let b_masks: Box<dyn Iterator<Item = u32>> = if pin_first_quad {
            // b_1 = +, b_m = -.
            Box::new((0..1u32 << (m - 2)).map(|free| (free << 1) | 1))
        } else {
            Box::new(0..1u32 << m)
        };
        for b_mask in b_masks {
            if a_lag_n + mask_autocorrelation(b_mask, m, n) != 0 {
                continue;
            }
            let mut res = [0i32; 16];
            for lag in 1..=key_lags {
                res[lag - 1] = a_res[lag - 1] + mask_autocorrelation(b_mask, m, lag);
            }
            ab_index.push((residual_key(&res[..key_lags]), a_mask, b_mask));
        }
    }
    ab_index.sort_unstable();

    // (C;D) side streams and joins on the negated residual vector.
    let mut out = Vec::new();
    let mut c_res = vec![0i32; key_lags];
    for c_mask in 0..1u32 << n {
        for lag in 1..=key_lags {
            c_res[lag - 1] = mask_autocorrelation(c_mask, n, lag);
        }
        for d_mask in 0..1u32 << n {
            let mut res = [0i32; 16];
            for lag in 1..=key_lags {
                res[lag - 1] = -(c_res[lag - 1] + mask_autocorrelation(d_mask, n, lag));
            }
            let key = residual_key(&res[..key_lags]);
            let start = ab_index.partition_point(|&(k, _, _)| k < key);
            for &(k, a_mask, b_mask) in &ab_index[start..] {
                if k != key {
                    break;
                }
                let q = BaseQuadruple::new(
                    mask_to_sequence(a_mask, m),
                    mask_to_sequence(b_mask, m),
                    mask_to_sequence(c_mask, n),
                    mask_to_sequence(d_mask, n),
                )
                .unwrap();
                debug_assert!(q.is_bs());
                out.push(q);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Whether `2n` is a sum of three squares, a necessary condition for
/// normal sequences to exist. Direct enumeration.
pub fn three_square_feasible(n: usize) -> bool {
    let target = 2 * n;
    let isqrt = |v: usize| (v as f64).sqrt() as usize + 1;
    for x in 0..=isqrt(target) {
        let Some(rx) = target.checked_sub(x * x) else { continue };
        for y in x..=isqrt(rx) {
            let Some(ry) = rx.checked_sub(y * y) else { continue };
            let z = (ry as f64).sqrt() as usize;
            for cand in [z.saturating_sub(1), z, z + 1] {
                if cand * cand == ry && cand >= y {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec;

    #[test]
    fn mask_autocorrelation_matches_definition() {
        for len in 0..=10usize {
            for mask in 0..1u32 << len {
                let seq = mask_to_sequence(mask, len);
                for lag in 0..=len + 2 {
                    assert_eq!(mask_autocorrelation(mask, len, lag), seq.autocorrelation(lag));
                }
            }
        }
    }

    #[test]
    fn n1_contains_the_minimal_code() {
        let members = brute_force(1).unwrap();
        assert_eq!(members.len(), 4);
        let codes: Vec<String> = members
            .iter()
            .map(|q| codec::encode(q).unwrap().to_string())
            .collect();
        assert!(codes.contains(&"0;0".to_string()));
        for q in &members {
            assert!(q.is_bs());
        }
    }

    #[test]
    fn every_member_verifies_and_encodes() {
        for n in 1..=6usize {
            for q in brute_force(n).unwrap() {
                assert!(q.is_bs());
                // Interior quads stay inside the 1..8 alphabet.
                let code = codec::encode(&q).unwrap();
                assert_eq!(codec::decode(&code), q);
            }
        }
    }

    #[test]
    fn first_quad_products_are_forced() {
        // Over *all* members (no normalization), lag n forces
        // a_1 a_m = -b_1 b_m.
        for n in 1..=5usize {
            let m = n + 1;
            let all = enumerate_members(n, false);
            assert!(!all.is_empty());
            for q in &all {
                let (a, b) = (q.a.entries(), q.b.entries());
                assert_eq!(a[0] * a[m - 1], -(b[0] * b[m - 1]), "n={n}");
            }
        }
    }

    #[test]
    fn three_square_examples() {
        assert!(!three_square_feasible(14));
        assert!(three_square_feasible(31));
        assert!(three_square_feasible(0));
    }
}
