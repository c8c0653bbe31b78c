//! Integer and rational helpers: valuations, Legendre symbols, square tests,
//! deterministic factorization (trial division + Pollard-Brent), divisor lists.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

pub type Int = BigInt;
pub type Rat = num_rational::BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Parses "p/q" or "p" into a rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// Renders a rational as "p" or "p/q".
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// p-adic valuation of a nonzero integer.
pub fn val_int(n: &Int, p: &Int) -> u64 {
    assert!(!n.is_zero());
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational (may be negative).
pub fn val_rat(r: &Rat, p: &Int) -> i64 {
    val_int(r.numer(), p) as i64 - val_int(r.denom(), p) as i64
}

/// Unit part: n / p^{v_p(n)}.
pub fn unit_part(n: &Int, p: &Int) -> Int {
    let mut n = n.clone();
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return n;
        }
        n = q;
    }
}

/// Legendre symbol (a|p) for odd prime p; 0 when p | a.
pub fn legendre(a: &Int, p: &Int) -> i8 {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - Int::one()) >> 1;
    let r = a.modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Least positive quadratic nonresidue mod odd prime p.
pub fn least_nonresidue(p: &Int) -> Int {
    let mut a = int(2);
    while legendre(&a, p) != -1 {
        a += 1;
    }
    a
}

/// Exact integer square test.
pub fn is_square_int(n: &Int) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

/// Exact integer square root if n is a perfect square.
pub fn exact_sqrt(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

/// A rational is a square iff numerator and denominator both are.
pub fn is_square_rat(r: &Rat) -> bool {
    is_square_int(r.numer()) && is_square_int(r.denom())
}

pub fn sqrt_rat(r: &Rat) -> Option<Rat> {
    Some(Rat::new(exact_sqrt(r.numer())?, exact_sqrt(r.denom())?))
}

/// Deterministic Miller-Rabin for u64-range inputs, probabilistic-grade
/// fixed bases for larger ones (ample for desk-scale determinants).
pub fn is_prime(n: &Int) -> bool {
    if *n < int(2) {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = Int::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1;
    let s = val_int(&n_minus_1, &int(2));
    let d = &n_minus_1 >> s as usize;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = Int::from(a);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x.modpow(&int(2), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &Int) -> Int {
    // n odd composite, not a prime power handled by caller loop
    let mut c = int(1);
    loop {
        let f = |x: &Int| (x * x + &c).mod_floor(n);
        let mut x = int(2);
        let mut y = int(2);
        let mut d = int(1);
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of a nonzero integer (sign dropped).
pub fn factor(n: &Int) -> BTreeMap<Int, u64> {
    let mut out = BTreeMap::new();
    let mut n = n.abs();
    assert!(!n.is_zero());
    let mut p = int(2);
    // trial division over small primes
    while &p * &p <= n && p < int(100_000) {
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.insert(p.clone(), e);
        }
        p = if p == int(2) { int(3) } else { p + 2 };
    }
    // remaining cofactor: recurse with Pollard rho
    fn split(n: Int, out: &mut BTreeMap<Int, u64>) {
        if n.is_one() {
            return;
        }
        if is_prime(&n) {
            *out.entry(n).or_insert(0) += 1;
            return;
        }
        let d = pollard_brent(&n);
        let q = &n / &d;
        split(d, out);
        split(q, out);
    }
    split(n, &mut out);
    out
}

/// Squarefree kernel of a nonzero integer, keeping the sign.
pub fn squarefree_kernel(n: &Int) -> Int {
    let mut k = Int::one();
    for (p, e) in factor(n) {
        if e % 2 == 1 {
            k *= p;
        }
    }
    if n.sign() == Sign::Minus {
        -k
    } else {
        k
    }
}

/// All positive divisors of a nonzero integer, ascending.
pub fn divisors(n: &Int) -> Vec<Int> {
    let mut ds = vec![Int::one()];
    for (p, e) in factor(n) {
        let mut next = Vec::with_capacity(ds.len() * (e as usize + 1));
        let mut pk = Int::one();
        for _ in 0..=e {
            for d in &ds {
                next.push(d * &pk);
            }
            pk *= &p;
        }
        ds = next;
    }
    ds.sort();
    ds
}

/// Squarefree kernel of a rational: square class representative in Z.
pub fn rat_square_class_rep(r: &Rat) -> Int {
    assert!(!r.is_zero());
    squarefree_kernel(&(r.numer() * r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_small() {
        let p5 = int(5);
        assert_eq!(legendre(&int(1), &p5), 1);
        assert_eq!(legendre(&int(2), &p5), -1);
        assert_eq!(legendre(&int(4), &p5), 1);
        assert_eq!(legendre(&int(10), &p5), 0);
    }

    #[test]
    fn factor_mixed() {
        let f = factor(&int(2 * 2 * 3 * 49 * 101));
        assert_eq!(f[&int(2)], 2);
        assert_eq!(f[&int(3)], 1);
        assert_eq!(f[&int(7)], 2);
        assert_eq!(f[&int(101)], 1);
    }

    #[test]
    fn factor_large_semiprime() {
        let n = int(1_000_003) * int(999_983);
        let f = factor(&n);
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn square_class_reps() {
        assert_eq!(rat_square_class_rep(&rat(9, 4)), int(1));
        assert_eq!(rat_square_class_rep(&rat(-8, 3)), int(-6));
        assert_eq!(rat_square_class_rep(&rat_int(50)), int(2));
    }

    #[test]
    fn divisor_list() {
        assert_eq!(
            divisors(&int(12)),
            vec![int(1), int(2), int(3), int(4), int(6), int(12)]
        );
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("3/6"), Some(rat(1, 2)));
        assert_eq!(rat_to_string(&rat(-7, 2)), "-7/2");
        assert_eq!(rat_to_string(&rat_int(4)), "4");
    }
}
