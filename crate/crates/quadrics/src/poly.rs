//! Dense univariate polynomials over Z: exact Euclidean machinery,
//! Sturm-sequence real root isolation, rational roots, and a bounded
//! Kronecker factor search.

use crate::arith::{divisors, int, Int, Rat};
use crate::error::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Degrees above this are rejected by the root-finding entry points.
pub const DEGREE_CAP: usize = 16;

/// coeffs[i] is the coefficient of t^i; no trailing zeros; zero poly = empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn constant(c: Int) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn leading(&self) -> Option<&Int> {
        self.coeffs.last()
    }

    pub fn eval_int(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    /// Sign of p(x) in {-1,0,1}.
    pub fn sign_at(&self, x: &Rat) -> i8 {
        let v = self.eval_rat(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Sign of the value at +infinity (-infinity via `sign_at_neg_inf`).
    pub fn sign_at_inf(&self) -> i8 {
        match self.leading() {
            None => 0,
            Some(c) => {
                if c.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn sign_at_neg_inf(&self) -> i8 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = self.sign_at_inf();
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &Int) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Content: gcd of coefficients (nonnegative).
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Exact division; None if `other` does not divide `self`.
    pub fn exact_div(&self, other: &IntPoly) -> Option<IntPoly> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let (dn, dd) = (self.degree()?, other.degree()?);
        if dn < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Int::zero(); dn - dd + 1];
        let lead = other.leading().unwrap();
        for k in (0..=dn - dd).rev() {
            let (q, r) = rem[k + dd].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            quot[k] = q.clone();
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = &q * b;
                rem[k + j] -= t;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    /// Pseudo-remainder of self by other (deg(other) <= deg(self)).
    /// Each reduction step multiplies by -lead when lead is negative, so the
    /// result is always a positive multiple of the true remainder.
    fn pseudo_rem(&self, other: &IntPoly) -> IntPoly {
        let dd = other.degree().unwrap();
        let lead = other.leading().unwrap().clone();
        let lead_neg = lead.is_negative();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            let c = rem.leading().unwrap().clone();
            // lead * rem - c * t^shift * other
            let mut scaled = rem.scale(&lead);
            let mut sub = vec![Int::zero(); shift];
            sub.extend(other.coeffs.iter().map(|b| &c * b));
            scaled = scaled.sub(&IntPoly::new(sub));
            if lead_neg {
                scaled = scaled.neg();
            }
            rem = scaled;
            debug_assert!(rem.degree().map_or(true, |d| d < dr));
        }
        rem
    }

    /// GCD via primitive-part pseudo-remainder sequence; result primitive
    /// with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        loop {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.primitive();
            }
            a = b;
            b = r.primitive();
        }
    }

    /// Shift out the factor t^k (k = multiplicity of the root 0).
    pub fn trailing_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }
}

fn check_cap(p: &IntPoly) -> Result<()> {
    match p.degree() {
        Some(d) if d > DEGREE_CAP => Err(Error::DegreeCap(d, DEGREE_CAP)),
        _ => Ok(()),
    }
}

/// True iff gcd(p, p') is constant.
pub fn is_squarefree(p: &IntPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(true);
    }
    let g = p.gcd(&p.derivative());
    Ok(g.degree() == Some(0))
}

/// All rational roots, via divisor candidates of the leading and trailing
/// coefficients of the primitive part, each verified by exact evaluation.
pub fn rational_roots(p: &IntPoly) -> Result<Vec<Rat>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_cap(p)?;
    let mut roots = Vec::new();
    let k = p.trailing_valuation();
    if k > 0 {
        roots.push(Rat::zero());
    }
    let q = IntPoly::new(p.coeffs[k..].to_vec()).primitive();
    if q.degree() == Some(0) {
        roots.sort();
        return Ok(roots);
    }
    let a0 = q.coeff(0);
    let an = q.leading().unwrap().clone();
    for num in divisors(&a0) {
        for den in divisors(&an) {
            for sgn in [1i64, -1] {
                let r = Rat::new(&num * int(sgn), den.clone());
                if q.eval_rat(&r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Sturm sequence using primitive-part pseudo-remainders.
pub fn sturm_sequence(p: &IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![p.primitive(), p.derivative().primitive()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            return seq;
        }
        if seq[n - 1].degree() == Some(0) {
            return seq;
        }
        let r = seq[n - 2].pseudo_rem(&seq[n - 1]);
        if r.is_zero() {
            return seq;
        }
        // pseudo_rem is a positive multiple of the true remainder, so
        // dividing out the content keeps the Sturm sign structure.
        let c = r.content();
        let nr = IntPoly::new(r.coeffs.iter().map(|x| -(x / &c)).collect());
        seq.push(nr);
    }
}

fn sign_variations(signs: &[i8]) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(seq: &[IntPoly], x: &Rat) -> usize {
    let signs: Vec<i8> = seq.iter().map(|q| q.sign_at(x)).collect();
    sign_variations(&signs)
}

fn variations_at_inf(seq: &[IntPoly], positive: bool) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|q| {
            if positive {
                q.sign_at_inf()
            } else {
                q.sign_at_neg_inf()
            }
        })
        .collect();
    sign_variations(&signs)
}

/// Number of distinct real roots in (lo, hi].
pub fn count_roots_in(seq: &[IntPoly], lo: &Rat, hi: &Rat) -> usize {
    variations_at(seq, lo) - variations_at(seq, hi)
}

/// Total number of distinct real roots.
pub fn count_real_roots(seq: &[IntPoly]) -> usize {
    variations_at_inf(seq, false) - variations_at_inf(seq, true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rat,
    pub hi: Rat,
}

/// Cauchy root bound: all real roots lie in (-B, B).
pub fn root_bound(p: &IntPoly) -> Rat {
    let an = p.leading().expect("nonzero");
    let max = p
        .coeffs
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Int::zero);
    Rat::one() + Rat::new(max, an.abs())
}

/// Isolating intervals for the real roots of a squarefree polynomial,
/// ordered, pairwise disjoint, each open interval holding exactly one root
/// and p nonzero at both endpoints.
pub fn isolate_real_roots(p: &IntPoly) -> Result<Vec<IsolatingInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_cap(p)?;
    if !is_squarefree(p)? {
        return Err(Error::Precondition("polynomial is not squarefree".into()));
    }
    if p.degree() == Some(0) {
        return Ok(vec![]);
    }
    let seq = sturm_sequence(p);
    let total = count_real_roots(&seq);
    if total == 0 {
        return Ok(vec![]);
    }
    let b = root_bound(p);
    // invariant: p does not vanish at interval endpoints on the stack
    let mut stack = vec![(-b.clone(), b.clone())];
    let mut out: Vec<IsolatingInterval> = Vec::new();
    let two = Rat::from_integer(int(2));
    while let Some((lo, hi)) = stack.pop() {
        let n = count_roots_in(&seq, &lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(IsolatingInterval { lo, hi });
            continue;
        }
        let mid = (&lo + &hi) / &two;
        if p.sign_at(&mid) == 0 {
            // exact root at the midpoint: carve out a small interval around it
            let mut eps = (&hi - &lo) / Rat::from_integer(int(16));
            loop {
                let (a, b2) = (&mid - &eps, &mid + &eps);
                if p.sign_at(&a) != 0
                    && p.sign_at(&b2) != 0
                    && count_roots_in(&seq, &a, &b2) == 1
                {
                    out.push(IsolatingInterval {
                        lo: a.clone(),
                        hi: b2.clone(),
                    });
                    stack.push((lo, a));
                    stack.push((b2, hi));
                    break;
                }
                eps /= &two;
            }
            continue;
        }
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    debug_assert_eq!(out.len(), total);
    // make intervals pairwise disjoint, not merely non-nested
    for i in 1..out.len() {
        while out[i - 1].hi >= out[i].lo {
            let w1 = (&out[i - 1].hi - &out[i - 1].lo) / &two;
            let w2 = (&out[i].hi - &out[i].lo) / &two;
            out[i - 1] = refine_interval(p, &out[i - 1], &w1);
            out[i] = refine_interval(p, &out[i], &w2);
        }
    }
    Ok(out)
}

/// Refine an isolating interval for p until its width is below `width`.
pub fn refine_interval(p: &IntPoly, iv: &IsolatingInterval, width: &Rat) -> IsolatingInterval {
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let slo = p.sign_at(&lo);
    debug_assert!(slo != 0 && p.sign_at(&hi) != 0);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / Rat::from_integer(int(2));
        let sm = p.sign_at(&mid);
        if sm == 0 {
            // exact root hit; shrink symmetrically around it
            let eps = (&hi - &lo) / Rat::from_integer(int(4));
            lo = &mid - &eps;
            hi = &mid + &eps;
            if &hi - &lo <= *width {
                break;
            }
            continue;
        }
        if sm == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    IsolatingInterval { lo, hi }
}

/// Kronecker search for a nontrivial integer factor of degree in [1, d].
/// Samples at t = 0, +-1, 2, -2, ... and enumerates divisor combinations.
/// Sample points where p vanishes first split off the linear factor.
pub fn kronecker_factor_upto(p: &IntPoly, d: usize) -> Result<Option<IntPoly>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_cap(p)?;
    if !(1..=3).contains(&d) {
        return Err(Error::Precondition("kronecker degree bound must be 1..=3".into()));
    }
    let p = p.primitive();
    let n = p.degree().unwrap();
    if n == 0 {
        return Ok(None);
    }
    let sample_points: Vec<Int> = vec![int(0), int(1), int(-1), int(2), int(-2), int(3), int(-3)];
    for e in 1..=d {
        if e >= n {
            break; // only nontrivial factors
        }
        // pick e+1 sample points with nonzero values; zeros yield linear factors
        let mut pts: Vec<Int> = Vec::new();
        let mut vals: Vec<Int> = Vec::new();
        for t in &sample_points {
            let v = p.eval_int(t);
            if v.is_zero() {
                // (x - t) divides p
                let lin = IntPoly::new(vec![-t.clone(), Int::one()]);
                debug_assert!(p.exact_div(&lin).is_some());
                return Ok(Some(lin));
            }
            pts.push(t.clone());
            vals.push(v);
            if pts.len() == e + 1 {
                break;
            }
        }
        if pts.len() < e + 1 {
            continue;
        }
        // enumerate signed divisor tuples and interpolate
        let divs: Vec<Vec<Int>> = vals
            .iter()
            .map(|v| {
                let mut ds: Vec<Int> = Vec::new();
                for d in divisors(v) {
                    ds.push(d.clone());
                    ds.push(-d);
                }
                ds
            })
            .collect();
        let mut idx = vec![0usize; e + 1];
        loop {
            let chosen: Vec<Int> = idx.iter().zip(&divs).map(|(&i, ds)| ds[i].clone()).collect();
            if let Some(f) = interpolate_int(&pts, &chosen) {
                if f.degree() == Some(e) {
                    let f = f.primitive();
                    if f.degree() == Some(e) && p.exact_div(&f).is_some() {
                        return Ok(Some(f));
                    }
                }
            }
            // odometer
            let mut k = 0;
            loop {
                idx[k] += 1;
                if idx[k] < divs[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
                if k > e {
                    break;
                }
            }
            if k > e {
                break;
            }
        }
    }
    Ok(None)
}

/// Lagrange interpolation; Some only when the result has integer coefficients.
fn interpolate_int(pts: &[Int], vals: &[Int]) -> Option<IntPoly> {
    let n = pts.len();
    // build in rational arithmetic, then require integrality
    let mut acc: Vec<Rat> = vec![Rat::zero(); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut num = vec![Rat::one()];
        let mut den = Rat::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            // multiply num by (x - x_j)
            let mut next = vec![Rat::zero(); num.len() + 1];
            for (k, c) in num.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - c * Rat::from_integer(pts[j].clone());
            }
            num = next;
            den *= Rat::from_integer(&pts[i] - &pts[j]);
        }
        let w = Rat::from_integer(vals[i].clone()) / den;
        for (k, c) in num.iter().enumerate() {
            acc[k] = &acc[k] + c * &w;
        }
    }
    let mut out = Vec::with_capacity(n);
    for c in acc {
        if !c.denom().is_one() {
            return None;
        }
        out.push(c.numer().clone());
    }
    Some(IntPoly::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn rational_roots_examples() {
        // t^2 - 1
        assert_eq!(
            rational_roots(&poly(&[-1, 0, 1])).unwrap(),
            vec![rat(-1, 1), rat(1, 1)]
        );
        // (t-1)(t-2)(t-3)(t-4)(t-5)
        let p = poly(&[-1, 1])
            .mul(&poly(&[-2, 1]))
            .mul(&poly(&[-3, 1]))
            .mul(&poly(&[-4, 1]))
            .mul(&poly(&[-5, 1]));
        assert_eq!(
            rational_roots(&p).unwrap(),
            (1..=5).map(|k| rat(k, 1)).collect::<Vec<_>>()
        );
        // t^2 - 2
        assert!(rational_roots(&poly(&[-2, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn squarefree_examples() {
        let p = poly(&[1, 1])
            .mul(&poly(&[2, 1]))
            .mul(&poly(&[3, 1]))
            .mul(&poly(&[4, 1]));
        assert!(is_squarefree(&p).unwrap());
        assert!(!is_squarefree(&poly(&[1, 1]).mul(&poly(&[1, 1]))).unwrap());
        // t^8 + 1: gcd(p, p') constant by exact Euclid
        let mut c = vec![1i64, 0, 0, 0, 0, 0, 0, 0, 1];
        c[0] = 1;
        assert!(is_squarefree(&poly(&c)).unwrap());
        assert!(is_squarefree(&IntPoly::zero()).is_err());
    }

    #[test]
    fn isolate_sqrt2() {
        let ivs = isolate_real_roots(&poly(&[-2, 0, 1])).unwrap();
        assert_eq!(ivs.len(), 2);
        assert!(ivs[0].lo < rat(-1, 1) && ivs[0].hi > rat(-3, 2));
        assert!(ivs[1].hi > rat(1, 1) && ivs[1].lo < rat(3, 2));
        // each interval really contains the root: sign change
        let p = poly(&[-2, 0, 1]);
        for iv in &ivs {
            assert_ne!(p.sign_at(&iv.lo), p.sign_at(&iv.hi));
        }
    }

    #[test]
    fn isolate_constructed_roots() {
        // (t+1)(2t+1)(3t+1)(4t+1)
        let p = poly(&[1, 1])
            .mul(&poly(&[1, 2]))
            .mul(&poly(&[1, 3]))
            .mul(&poly(&[1, 4]));
        let ivs = isolate_real_roots(&p).unwrap();
        assert_eq!(ivs.len(), 4);
        let expected = [rat(-1, 1), rat(-1, 2), rat(-1, 3), rat(-1, 4)];
        for (iv, r) in ivs.iter().zip(expected.iter()) {
            assert!(iv.lo < *r && *r < iv.hi, "{:?} should contain {}", iv, r);
        }
        // no real roots
        assert!(isolate_real_roots(&poly(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn sturm_count_matches_interval_count() {
        let p = poly(&[-2, 0, 1]).mul(&poly(&[-3, 0, 1])).mul(&poly(&[1, 1]));
        let seq = sturm_sequence(&p);
        assert_eq!(count_real_roots(&seq), 5);
        assert_eq!(isolate_real_roots(&p).unwrap().len(), 5);
    }

    #[test]
    fn refine_width() {
        let p = poly(&[-2, 0, 1]);
        let ivs = isolate_real_roots(&p).unwrap();
        let r = refine_interval(&p, &ivs[1], &rat(1, 1000));
        assert!(&r.hi - &r.lo <= rat(1, 1000));
        assert_ne!(p.sign_at(&r.lo), p.sign_at(&r.hi));
    }

    #[test]
    fn kronecker_examples() {
        // (t^2+1)(t^3-2)
        let p = poly(&[1, 0, 1]).mul(&poly(&[-2, 0, 0, 1]));
        let f = kronecker_factor_upto(&p, 3).unwrap().unwrap();
        assert!(p.exact_div(&f).is_some());
        assert!(f.degree().unwrap() >= 1 && f.degree().unwrap() <= 3);
        // t^4 + 1 irreducible
        assert!(kronecker_factor_upto(&poly(&[1, 0, 0, 0, 1]), 3)
            .unwrap()
            .is_none());
        // t^5 - t has a linear factor
        let f = kronecker_factor_upto(&poly(&[0, -1, 0, 0, 0, 1]), 1)
            .unwrap()
            .unwrap();
        assert_eq!(f.degree(), Some(1));
    }

    #[test]
    fn degree_cap_enforced() {
        let mut c = vec![0i64; 18];
        c[17] = 1;
        c[0] = -1;
        assert!(matches!(
            rational_roots(&poly(&c)),
            Err(Error::DegreeCap(17, 16))
        ));
    }

    #[test]
    fn exact_div_roundtrip() {
        let a = poly(&[1, 2, 3]);
        let b = poly(&[-1, 1, 1, 2]);
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert!(prod.exact_div(&poly(&[1, 1])).is_none());
    }
}
