//! Brute-force p-adic isotropy oracle, independent of the symbol-based
//! classification.
//!
//! Strategy: strip even powers of p from each diagonal entry (a coordinate
//! rescaling, so isotropy is unchanged), leaving every entry with valuation
//! 0 or 1. For such entries any primitive tuple x has a coordinate j with
//! v_p(x_j) = 0, hence 2 v_p(2 a_j x_j) <= 2 v_p(2) + 2 < k for k = 3 (odd
//! p) or k = 6 (p = 2). A primitive solution of q(x) = 0 mod p^k therefore
//! lifts to a genuine Z_p zero by Hensel's lemma, and conversely a genuine
//! primitive zero reduces to one, so isotropy is equivalent to the
//! existence of a primitive solution mod p^k.
//!
//! The search is meet-in-the-middle: tabulate the reachable partial sums of
//! the smaller half of the coordinates (with and without a unit
//! coordinate), then scan the larger half with early exit.

use crate::arith::{val_int, Int};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// Decides isotropy of the diagonal form <entries> over Q_p by exhaustive
/// search modulo p^k. Entries must be nonzero.
pub fn isotropic_oracle(entries: &[Int], p: u64) -> bool {
    assert!(entries.iter().all(|e| !e.is_zero()), "degenerate form");
    let k: u32 = if p == 2 { 6 } else { 3 };
    let q: u64 = p.pow(k);
    let pi = Int::from(p);
    let qi = Int::from(q);
    let coeffs: Vec<u64> = entries
        .iter()
        .map(|a| {
            let v = val_int(a, &pi);
            let mut r = a.clone();
            for _ in 0..(v - v % 2) {
                r /= &pi;
            }
            r.mod_floor(&qi).to_u64().unwrap()
        })
        .collect();
    // per-coordinate value tables a_j x^2 mod q
    let sq: Vec<Vec<u64>> = coeffs
        .iter()
        .map(|&a| (0..q).map(|x| a * x % q * x % q).collect())
        .collect();
    let (sq_a, sq_b) = sq.split_at(sq.len() / 2);

    // reachable sums of the first half, split by whether a unit appears
    let qq = q as usize;
    let mut any_reach = vec![false; qq];
    let mut unit_reach = vec![false; qq];
    fill(sq_a, 0, 0, false, p, q, &mut any_reach, &mut unit_reach);
    scan(sq_b, 0, 0, false, p, q, &any_reach, &unit_reach)
}

fn fill(
    sq: &[Vec<u64>],
    idx: usize,
    sum: u64,
    has_unit: bool,
    p: u64,
    q: u64,
    any_reach: &mut [bool],
    unit_reach: &mut [bool],
) {
    if idx == sq.len() {
        any_reach[sum as usize] = true;
        if has_unit {
            unit_reach[sum as usize] = true;
        }
        return;
    }
    for x in 0..q {
        fill(
            sq,
            idx + 1,
            (sum + sq[idx][x as usize]) % q,
            has_unit || x % p != 0,
            p,
            q,
            any_reach,
            unit_reach,
        );
    }
}

fn scan(
    sq: &[Vec<u64>],
    idx: usize,
    sum: u64,
    has_unit: bool,
    p: u64,
    q: u64,
    any_reach: &[bool],
    unit_reach: &[bool],
) -> bool {
    if idx == sq.len() {
        let target = ((q - sum % q) % q) as usize;
        return unit_reach[target] || (has_unit && any_reach[target]);
    }
    for x in 0..q {
        if scan(
            sq,
            idx + 1,
            (sum + sq[idx][x as usize]) % q,
            has_unit || x % p != 0,
            p,
            q,
            any_reach,
            unit_reach,
        ) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(entries: &[i64], p: u64) -> bool {
        let v: Vec<Int> = entries.iter().map(|&e| Int::from(e)).collect();
        isotropic_oracle(&v, p)
    }

    #[test]
    fn small_forms() {
        assert!(oracle(&[1, -1], 2));
        assert!(oracle(&[1, -1], 3));
        assert!(oracle(&[1, -1], 7));
        assert!(!oracle(&[1, 1], 3)); // -1 nonsquare mod 3
        assert!(oracle(&[1, 1], 5)); // -1 = 2^2 mod 5
        assert!(!oracle(&[1, -3], 3)); // valuation parity
        assert!(!oracle(&[2, -5], 5));
        assert!(!oracle(&[1], 2));
        assert!(!oracle(&[1], 7));
    }

    #[test]
    fn four_squares() {
        assert!(!oracle(&[1, 1, 1, 1], 2));
        assert!(oracle(&[1, 1, 1, 1], 3));
        assert!(oracle(&[1, 1, 1, 1], 5));
        assert!(!oracle(&[1, 1, 1, -7], 2)); // -7 is a 2-adic square
        assert!(oracle(&[1, 1, 1, -7], 7));
    }

    #[test]
    fn scaling_invariance() {
        for p in [2u64, 3, 5, 7] {
            for f in [[3i64, -5, 7], [9, 2, -6], [4, 4, -1]] {
                let scaled: Vec<i64> = f.iter().map(|e| e * (p * p) as i64).collect();
                assert_eq!(oracle(&f, p), oracle(&scaled, p));
            }
        }
    }

    #[test]
    fn rank_five_always_isotropic() {
        for p in [2u64, 3, 5, 7] {
            assert!(oracle(&[1, 2, 3, 5, 7], p));
            assert!(oracle(&[1, 1, 1, 1, 1], p));
            assert!(oracle(&[2, 6, 10, 14, 5], p));
        }
    }

    #[test]
    fn agrees_with_invariants_exhaustively() {
        let vals = [1i64, -1, 2, -2, 3, -3, 5, -5, 7, 10];
        for p in [2u64, 3, 5, 7] {
            for &a in &vals {
                for &b in &vals {
                    assert!(
                        crate::localglobal::isotropy_verdicts_agree(&[a, b], p).unwrap(),
                        "disagreement on <{a},{b}> at p = {p}"
                    );
                    for &c in &[1i64, -3, 5, 14] {
                        assert!(
                            crate::localglobal::isotropy_verdicts_agree(&[a, b, c], p).unwrap(),
                            "disagreement on <{a},{b},{c}> at p = {p}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn agrees_on_rank_four() {
        let vals = [1i64, -1, 2, -3, 5, -7, 6];
        for p in [2u64, 3, 5] {
            for &a in &vals {
                for &b in &vals {
                    assert!(
                        crate::localglobal::isotropy_verdicts_agree(&[a, b, 3, -10], p).unwrap(),
                        "disagreement on <{a},{b},3,-10> at p = {p}"
                    );
                }
            }
        }
    }
}
