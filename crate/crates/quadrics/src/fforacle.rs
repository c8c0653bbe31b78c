//! Brute-force ground truth over finite fields F_q (q odd): field towers
//! with deterministic moduli, point and subspace enumeration on quadric
//! intersections, closed-form Witt indices, and the per-proposition
//! finite-field census.

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::pencil::Pencil;
use crate::localglobal::WittIndexResult;
use crate::qform::QuadraticForm;
use num_integer::Integer;
use serde::Serialize;
use std::collections::HashSet;

/// Largest supported field size (the addition table is q x q).
pub const MAX_Q: u64 = 4096;

/// Default budget in field operations for enumeration calls.
pub const DEFAULT_BUDGET: u128 = 10_000_000_000;

/// F_{p^m} for odd p, elements encoded as indices 0..q: the index digits
/// in base p are the coefficients of the polynomial residue. The modulus is
/// the monic irreducible of degree m whose coefficient index
/// sum_i c_i p^i is least; multiplication runs on log/exp tables over a
/// fixed generator (the one of least index).
pub struct FFField {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u16>,
}

impl FFField {
    pub fn new(p: u64, m: u32) -> Result<FFField> {
        if p < 3 || p % 2 == 0 || !crate::arith::is_prime(&Int::from(p)) {
            return Err(Error::Domain(format!("{p} is not an odd prime")));
        }
        if m == 0 {
            return Err(Error::Domain("extension degree must be >= 1".into()));
        }
        let q = p.checked_pow(m).filter(|&q| q <= MAX_Q).ok_or_else(|| {
            Error::Domain(format!("field size p^m = {p}^{m} exceeds {MAX_Q}"))
        })?;
        let modulus = least_irreducible(p, m);
        let mut field = FFField {
            p,
            m,
            q,
            modulus,
            exp: vec![],
            log: vec![],
            add: vec![],
        };
        // addition table: digitwise mod p
        field.add = vec![0u16; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                field.add[(a * q + b) as usize] = field.add_digits(a, b) as u16;
            }
        }
        // discrete log tables over the least-index generator
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![u32::MAX; q as usize];
        'gen: for g in 1..q {
            exp.fill(0);
            log.fill(u32::MAX);
            let mut x = 1u64;
            for i in 0..q - 1 {
                if log[x as usize] != u32::MAX {
                    continue 'gen; // order of g divides i < q-1
                }
                exp[i as usize] = x as u32;
                log[x as usize] = i as u32;
                x = field.raw_mul(x, g);
            }
            if x == 1 {
                field.exp = exp;
                field.log = log;
                return Ok(field);
            }
        }
        unreachable!("F_q* is cyclic");
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    fn add_digits(&self, a: u64, b: u64) -> u64 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    /// Polynomial multiplication mod (modulus, p), used only to seed the
    /// log/exp tables.
    fn raw_mul(&self, a: u64, b: u64) -> u64 {
        let da = digits(a, self.p, self.m);
        let db = digits(b, self.p, self.m);
        let mut prod = vec![0u64; 2 * self.m as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce by the monic modulus
        for k in (self.m as usize..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &mc) in self.modulus.iter().enumerate().take(self.m as usize) {
                let idx = k - self.m as usize + j;
                prod[idx] = (prod[idx] + c * (self.p - mc % self.p)) % self.p;
            }
        }
        prod[..self.m as usize]
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.p + d)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a as u64 * self.q + b as u64) as usize] as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let mut out = 0u64;
        let mut x = a as u64;
        let mut place = 1;
        while x > 0 {
            out += (self.p - x % self.p) % self.p * place;
            x /= self.p;
            place *= self.p;
        }
        out as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q - 1);
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "division by zero");
        let e = (self.q - 1 - self.log[a as usize] as u64) % (self.q - 1);
        self.exp[e as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    /// Squares are the elements of even discrete log (q odd).
    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.log[a as usize] % 2 == 0
    }

    pub fn from_int(&self, n: &Int) -> u32 {
        use num_traits::ToPrimitive;
        n.mod_floor(&Int::from(self.p)).to_u32().unwrap()
    }

    /// Reduction of a rational; error when the denominator is divisible
    /// by p.
    pub fn from_rat(&self, r: &Rat) -> Result<u32> {
        let den = self.from_int(r.denom());
        if den == 0 {
            return Err(Error::BadReduction(
                self.p,
                format!("denominator of {r} vanishes mod {}", self.p),
            ));
        }
        Ok(self.div(self.from_int(r.numer()), den))
    }
}

fn digits(x: u64, p: u64, m: u32) -> Vec<u64> {
    let mut x = x;
    (0..m)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

/// Monic irreducible of degree m over F_p with least coefficient index.
fn least_irreducible(p: u64, m: u32) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1];
    }
    // trial division by all monic polynomials of degree <= m/2
    'cand: for idx in 0..p.pow(m) {
        let mut cand = digits(idx, p, m);
        cand.push(1); // monic of degree m
        for d in 1..=m / 2 {
            for didx in 0..p.pow(d) {
                let mut div = digits(didx, p, d);
                div.push(1);
                if poly_mod_p(&cand, &div, p).iter().all(|&c| c == 0) {
                    continue 'cand;
                }
            }
        }
        return cand;
    }
    unreachable!("irreducibles of every degree exist");
}

/// Remainder of a by monic b over F_p.
fn poly_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let mut r: Vec<u64> = a.to_vec();
    while r.len() > db {
        let c = *r.last().unwrap();
        let k = r.len() - 1 - db;
        if c != 0 {
            for (j, &bc) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + c * (p - bc % p)) % p;
            }
        }
        r.pop();
    }
    r
}

/// Symmetric Gram matrix over F_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FFForm {
    dim: usize,
    gram: Vec<Vec<u32>>,
}

impl FFForm {
    pub fn from_gram(gram: Vec<Vec<u32>>) -> Result<FFForm> {
        let dim = gram.len();
        for row in &gram {
            if row.len() != dim {
                return Err(Error::Dimension("Gram matrix not square".into()));
            }
        }
        for i in 0..dim {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Input("Gram matrix not symmetric".into()));
                }
            }
        }
        Ok(FFForm { dim, gram })
    }

    pub fn from_diagonal(field: &FFField, entries: &[i64]) -> FFForm {
        let dim = entries.len();
        let mut gram = vec![vec![0u32; dim]; dim];
        for (i, &e) in entries.iter().enumerate() {
            gram[i][i] = field.from_int(&Int::from(e));
        }
        FFForm { dim, gram }
    }

    /// Reduction of a rational form; fails when a denominator vanishes.
    pub fn reduce(q: &QuadraticForm, field: &FFField) -> Result<FFForm> {
        let dim = q.dim();
        let mut gram = vec![vec![0u32; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                gram[i][j] = field.from_rat(&q.gram()[i][j])?;
            }
        }
        Ok(FFForm { dim, gram })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &Vec<Vec<u32>> {
        &self.gram
    }

    pub fn is_zero(&self) -> bool {
        self.gram.iter().all(|r| r.iter().all(|&e| e == 0))
    }

    pub fn evaluate(&self, field: &FFField, v: &[u32]) -> u32 {
        let mut s = 0u32;
        for i in 0..self.dim {
            if v[i] == 0 {
                continue;
            }
            let mut row = 0u32;
            for j in 0..self.dim {
                row = field.add(row, field.mul(self.gram[i][j], v[j]));
            }
            s = field.add(s, field.mul(v[i], row));
        }
        s
    }

    pub fn bilinear(&self, field: &FFField, u: &[u32], v: &[u32]) -> u32 {
        let mut s = 0u32;
        for i in 0..self.dim {
            if u[i] == 0 {
                continue;
            }
            let mut row = 0u32;
            for j in 0..self.dim {
                row = field.add(row, field.mul(self.gram[i][j], v[j]));
            }
            s = field.add(s, field.mul(u[i], row));
        }
        s
    }

    /// lam*self + mu*other.
    pub fn combination(&self, field: &FFField, lam: u32, other: &FFForm, mu: u32) -> FFForm {
        let gram = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        field.add(
                            field.mul(lam, self.gram[i][j]),
                            field.mul(mu, other.gram[i][j]),
                        )
                    })
                    .collect()
            })
            .collect();
        FFForm {
            dim: self.dim,
            gram,
        }
    }

    pub fn det(&self, field: &FFField) -> u32 {
        let mut a = self.gram.clone();
        let n = self.dim;
        let mut det = 1u32;
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            if piv != k {
                a.swap(k, piv);
                det = field.neg(det);
            }
            det = field.mul(det, a[k][k]);
            let inv = field.inv(a[k][k]);
            for i in k + 1..n {
                if a[i][k] == 0 {
                    continue;
                }
                let f = field.mul(a[i][k], inv);
                for j in k..n {
                    let t = field.mul(f, a[k][j]);
                    a[i][j] = field.sub(a[i][j], t);
                }
            }
        }
        det
    }

    pub fn rank(&self, field: &FFField) -> usize {
        let mut a = self.gram.clone();
        rref_ff(field, &mut a).len()
    }
}

/// Row-reduce over F_q in place; returns pivot columns.
pub fn rref_ff(field: &FFField, a: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let rows = a.len();
    if rows == 0 {
        return vec![];
    }
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let inv = field.inv(a[r][c]);
        for j in 0..cols {
            a[r][j] = field.mul(a[r][j], inv);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    let t = field.mul(f, a[r][j]);
                    a[i][j] = field.sub(a[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(pivots.len());
    pivots
}

/// Basis of the right kernel over F_q.
pub fn kernel_ff(field: &FFField, m: &[Vec<u32>], cols: usize) -> Vec<Vec<u32>> {
    let mut a: Vec<Vec<u32>> = m.to_vec();
    let pivots = rref_ff(field, &mut a);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(a[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Closed-form Witt index over F_q: odd rank 2m+1 -> m; even rank 2m -> m
/// when (-1)^m det is a square, else m-1.
pub fn ff_witt_index(form: &FFForm, field: &FFField) -> Result<WittIndexResult> {
    let det = form.det(field);
    if det == 0 {
        return Err(Error::Precondition("form is degenerate over F_q".into()));
    }
    let n = form.dim();
    let index = if n % 2 == 1 {
        n / 2
    } else {
        let m = n / 2;
        let signed = if m % 2 == 1 { field.neg(det) } else { det };
        if field.is_square(signed) {
            m
        } else {
            m - 1
        }
    };
    Ok(WittIndexResult {
        index,
        anisotropic_dim: n - 2 * index,
    })
}

struct BudgetCounter {
    used: u128,
    budget: u128,
}

impl BudgetCounter {
    fn charge(&mut self, ops: u128) -> Result<()> {
        self.used += ops;
        if self.used > self.budget {
            return Err(Error::Budget {
                needed: self.used,
                budget: self.budget,
            });
        }
        Ok(())
    }
}

/// Iterate projective representatives of P^{dim-1}(F_q): first nonzero
/// coordinate equal to 1, lexicographic within each leading block.
fn for_each_projective_rep<Fn2: FnMut(&[u32]) -> Result<()>>(
    q: u64,
    dim: usize,
    mut visit: Fn2,
) -> Result<()> {
    let mut v = vec![0u32; dim];
    for lead in 0..dim {
        for x in v.iter_mut() {
            *x = 0;
        }
        v[lead] = 1;
        // odometer over coordinates lead+1..dim
        loop {
            visit(&v)?;
            let mut k = dim;
            loop {
                if k == lead + 1 {
                    break;
                }
                k -= 1;
                v[k] += 1;
                if (v[k] as u64) < q {
                    break;
                }
                v[k] = 0;
                k += 1;
                if k == lead + 1 {
                    break;
                }
                k -= 1; // retry previous position
            }
            if v[lead + 1..].iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    Ok(())
}

/// |X(F_q)| for X the common zero locus in P^{dim-1}.
pub fn count_points(forms: &[&FFForm], field: &FFField, budget: u128) -> Result<u64> {
    let dim = forms
        .first()
        .map(|f| f.dim())
        .ok_or_else(|| Error::Input("no forms given".into()))?;
    if forms.iter().any(|f| f.dim() != dim) {
        return Err(Error::Dimension("mixed dimensions".into()));
    }
    let mut counter = BudgetCounter { used: 0, budget };
    let cost = (dim * dim * forms.len()) as u128;
    let mut count = 0u64;
    for_each_projective_rep(field.q(), dim, |v| {
        counter.charge(cost)?;
        if forms.iter().all(|f| f.evaluate(field, v) == 0) {
            count += 1;
        }
        Ok(())
    })?;
    Ok(count)
}

/// Independent reference implementation: scan all nonzero vectors and
/// divide by q-1.
pub fn count_points_naive(forms: &[&FFForm], field: &FFField) -> Result<u64> {
    let dim = forms
        .first()
        .map(|f| f.dim())
        .ok_or_else(|| Error::Input("no forms given".into()))?;
    let q = field.q();
    let total = q.pow(dim as u32);
    let mut count = 0u64;
    let mut v = vec![0u32; dim];
    for code in 1..total {
        let mut c = code;
        for x in v.iter_mut() {
            *x = (c % q) as u32;
            c /= q;
        }
        if forms.iter().all(|f| f.evaluate(field, &v) == 0) {
            count += 1;
        }
    }
    Ok(count / (q - 1))
}

#[derive(Debug, Clone, Serialize)]
pub struct PlaneEnumeration {
    pub count: u64,
    /// row bases (RREF) of the subspaces found, as element indices
    pub witnesses: Vec<Vec<Vec<u32>>>,
    pub ops_used: u128,
}

/// All r-dimensional projective subspaces (linear dimension r+1) contained
/// in the common zero locus of the given forms, by backtracking through
/// totally singular flags with orthogonal-complement pruning and canonical
/// RREF deduplication.
pub fn enumerate_r_planes(
    forms: &[&FFForm],
    field: &FFField,
    r: usize,
    budget: u128,
) -> Result<PlaneEnumeration> {
    let dim = forms
        .first()
        .map(|f| f.dim())
        .ok_or_else(|| Error::Input("no forms given".into()))?;
    if r + 1 > dim {
        return Err(Error::Dimension(format!(
            "no {r}-planes in P^{}",
            dim - 1
        )));
    }
    let mut counter = BudgetCounter { used: 0, budget };
    let mut found: HashSet<Vec<u32>> = HashSet::new();
    let mut basis: Vec<Vec<u32>> = Vec::new();
    extend_planes(forms, field, r, &mut basis, &mut found, &mut counter)?;
    let mut keys: Vec<&Vec<u32>> = found.iter().collect();
    keys.sort();
    let witnesses = keys
        .into_iter()
        .map(|k| k.chunks(dim).map(|row| row.to_vec()).collect())
        .collect();
    Ok(PlaneEnumeration {
        count: found.len() as u64,
        witnesses,
        ops_used: counter.used,
    })
}

fn extend_planes(
    forms: &[&FFForm],
    field: &FFField,
    r: usize,
    basis: &mut Vec<Vec<u32>>,
    found: &mut HashSet<Vec<u32>>,
    counter: &mut BudgetCounter,
) -> Result<()> {
    let dim = forms[0].dim();
    if basis.len() == r + 1 {
        let mut rows = basis.clone();
        rref_ff(field, &mut rows);
        found.insert(rows.concat());
        return Ok(());
    }
    // candidates live in the intersection of the orthogonal complements of
    // the current basis with respect to every form
    let mut constraints: Vec<Vec<u32>> = Vec::new();
    for b in basis.iter() {
        for f in forms {
            let mut row = vec![0u32; dim];
            for (j, slot) in row.iter_mut().enumerate() {
                let mut s = 0u32;
                for (i, &bi) in b.iter().enumerate() {
                    s = field.add(s, field.mul(bi, f.gram()[i][j]));
                }
                *slot = s;
            }
            constraints.push(row);
        }
    }
    let complement = if constraints.is_empty() {
        (0..dim)
            .map(|i| {
                let mut e = vec![0u32; dim];
                e[i] = 1;
                e
            })
            .collect::<Vec<_>>()
    } else {
        kernel_ff(field, &constraints, dim)
    };
    if complement.len() < basis.len() + 1 {
        return Ok(()); // cannot even contain the current span plus one
    }
    // current span in RREF for membership tests
    let mut span = basis.clone();
    rref_ff(field, &mut span);
    let q = field.q();
    let k = complement.len();
    // forms restricted to the complement basis: candidates are evaluated in
    // k coordinates, and the ambient vector is only materialized for the
    // rare singular hits
    let restricted: Vec<Vec<Vec<u32>>> = forms
        .iter()
        .map(|f| {
            let t: Vec<Vec<u32>> = complement
                .iter()
                .map(|row| {
                    (0..dim)
                        .map(|j| {
                            let mut s = 0u32;
                            for (i, &ri) in row.iter().enumerate() {
                                s = field.add(s, field.mul(ri, f.gram()[i][j]));
                            }
                            s
                        })
                        .collect()
                })
                .collect();
            (0..k)
                .map(|a| {
                    (0..k)
                        .map(|b| {
                            let mut s = 0u32;
                            for j in 0..dim {
                                s = field.add(s, field.mul(t[a][j], complement[b][j]));
                            }
                            s
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    for_each_projective_rep(q, k, |coeffs| {
        counter.charge((k * k * forms.len()) as u128)?;
        for m in &restricted {
            if eval_sym(field, m, coeffs) != 0 {
                return Ok(());
            }
        }
        // candidate vector in the ambient space
        let mut w = vec![0u32; dim];
        for (c, base) in coeffs.iter().zip(&complement) {
            if *c == 0 {
                continue;
            }
            for (wj, bj) in w.iter_mut().zip(base) {
                *wj = field.add(*wj, field.mul(*c, *bj));
            }
        }
        if in_span(field, &span, &w) {
            return Ok(());
        }
        basis.push(w);
        let res = extend_planes(forms, field, r, basis, found, counter);
        basis.pop();
        res
    })
}

fn eval_sym(field: &FFField, m: &[Vec<u32>], v: &[u32]) -> u32 {
    let mut s = 0u32;
    for (i, &vi) in v.iter().enumerate() {
        if vi == 0 {
            continue;
        }
        let mut row = 0u32;
        for (j, &vj) in v.iter().enumerate() {
            row = field.add(row, field.mul(m[i][j], vj));
        }
        s = field.add(s, field.mul(vi, row));
    }
    s
}

fn in_span(field: &FFField, rref_rows: &[Vec<u32>], v: &[u32]) -> bool {
    let mut v = v.to_vec();
    for row in rref_rows {
        let pivot = row.iter().position(|&x| x != 0).unwrap();
        if v[pivot] != 0 {
            let f = v[pivot];
            for (vj, rj) in v.iter_mut().zip(row) {
                let t = field.mul(f, *rj);
                *vj = field.sub(*vj, t);
            }
        }
    }
    v.iter().all(|&x| x == 0)
}

/// Squarefree test for the reduced determinant binary form: both chart
/// polynomials over F_p, gcd with derivative.
fn reduced_det_squarefree(coeffs: &[u32], field: &FFField) -> bool {
    // coeffs[j] multiplies lambda^{d-j} mu^j; chart lambda=1 gives the
    // polynomial sum coeffs[j] t^j
    if coeffs.iter().all(|&c| c == 0) {
        return false;
    }
    let d = coeffs.len() - 1;
    let chart: Vec<u32> = coeffs.to_vec();
    let drop = d - poly_deg(&chart).unwrap();
    if drop >= 2 {
        return false;
    }
    poly_squarefree_ff(field, &chart)
}

fn poly_deg(c: &[u32]) -> Option<usize> {
    c.iter().rposition(|&x| x != 0)
}

fn poly_squarefree_ff(field: &FFField, c: &[u32]) -> bool {
    let d = match poly_deg(c) {
        None => return false,
        Some(0) => return true,
        Some(d) => d,
    };
    let mut der = vec![0u32; d];
    for i in 1..=d {
        let mut s = 0u32;
        for _ in 0..(i as u64 % field.p()) {
            s = field.add(s, c[i]);
        }
        der[i - 1] = s;
    }
    let g = poly_gcd_ff(field, &c[..=d], &der);
    poly_deg(&g) == Some(0)
}

fn poly_gcd_ff(field: &FFField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    loop {
        let Some(db) = poly_deg(&b) else {
            return a;
        };
        // a mod b
        let lead_inv = field.inv(b[db]);
        while let Some(da) = poly_deg(&a) {
            if da < db {
                break;
            }
            let f = field.mul(a[da], lead_inv);
            for j in 0..=db {
                let t = field.mul(f, b[j]);
                a[da - db + j] = field.sub(a[da - db + j], t);
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FFPropositionReport {
    pub p: u64,
    pub q: u64,
    pub n: usize,
    pub smooth_reduction: bool,
    /// |X(F_q)|, when the scan is within budget
    pub point_count: Option<u64>,
    /// the paper's floor on the Witt index of nondegenerate members
    pub witt_floor: usize,
    pub all_members_meet_floor: Option<bool>,
    /// parameter of a totally hyperbolic member (n = 5 check)
    pub hyperbolic_member: Option<(u32, u32)>,
}

/// Per-n floor on the Witt index of nondegenerate members of a smooth
/// pencil over F_q: n=3 -> 1, n=4,5 -> 2, n=6,7 -> 3.
pub fn witt_floor(n: usize) -> usize {
    match n {
        3 => 1,
        4 | 5 => 2,
        _ => 3,
    }
}

/// Reduce the pencil mod p and check the finite-field propositions that
/// apply in its ambient dimension.
pub fn verify_ff_propositions(pencil: &Pencil, p: u64) -> Result<FFPropositionReport> {
    let field = FFField::new(p, 1)?;
    let n = pencil.n();
    let f = FFForm::reduce(pencil.f(), &field)?;
    let g = FFForm::reduce(pencil.g(), &field)?;
    let det_coeffs: Vec<u32> = pencil
        .det_coeffs()
        .iter()
        .map(|c| field.from_rat(c))
        .collect::<Result<_>>()?;
    let smooth = reduced_det_squarefree(&det_coeffs, &field);
    let mut report = FFPropositionReport {
        p,
        q: field.q(),
        n,
        smooth_reduction: smooth,
        point_count: None,
        witt_floor: witt_floor(n),
        all_members_meet_floor: None,
        hyperbolic_member: None,
    };
    if !smooth {
        return Ok(report);
    }
    // point count when affordable
    let cost = (field.q() as u128).pow(n as u32) * (n as u128 + 1).pow(2);
    if cost <= 10_000_000 {
        report.point_count = Some(count_points(&[&f, &g], &field, DEFAULT_BUDGET)?);
    }
    // scan all q+1 members
    let mut all_ok = true;
    let mut params: Vec<(u32, u32)> = (0..field.q()).map(|m| (1u32, m as u32)).collect();
    params.push((0, 1));
    for (lam, mu) in params {
        let member = f.combination(&field, lam, &g, mu);
        if member.det(&field) == 0 {
            continue;
        }
        let w = ff_witt_index(&member, &field)?;
        if w.index < report.witt_floor {
            all_ok = false;
        }
        if n == 5 && 2 * w.index == n + 1 && report.hyperbolic_member.is_none() {
            report.hyperbolic_member = Some((lam, mu));
        }
    }
    report.all_members_meet_floor = Some(all_ok);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::build_pencil;

    #[test]
    fn field_construction() {
        let f3 = FFField::new(3, 1).unwrap();
        assert_eq!(f3.q(), 3);
        assert_eq!(f3.add(2, 2), 1);
        assert_eq!(f3.mul(2, 2), 1);
        assert!(f3.is_square(1) && !f3.is_square(2));

        let f9 = FFField::new(3, 2).unwrap();
        assert_eq!(f9.q(), 9);
        // every F_3 element is a square in F_9
        for a in 1..3 {
            assert!(f9.is_square(a));
        }
        // field axioms on all elements
        for a in 0..9u32 {
            for b in 0..9u32 {
                assert_eq!(f9.add(a, b), f9.add(b, a));
                assert_eq!(f9.mul(a, b), f9.mul(b, a));
                if b != 0 {
                    assert_eq!(f9.mul(f9.div(a, b), b), a);
                }
            }
        }
        // Frobenius is additive: (a+b)^3 = a^3 + b^3
        let cube = |x: u32| f9.mul(x, f9.mul(x, x));
        for a in 0..9u32 {
            for b in 0..9u32 {
                assert_eq!(cube(f9.add(a, b)), f9.add(cube(a), cube(b)));
            }
        }

        assert!(FFField::new(2, 1).is_err());
        assert!(FFField::new(4, 1).is_err());
        assert!(FFField::new(3, 9).is_err());
    }

    #[test]
    fn square_counts() {
        for (p, m) in [(3u64, 1u32), (3, 2), (5, 1), (5, 2), (7, 1), (37, 1)] {
            let f = FFField::new(p, m).unwrap();
            let squares = (1..f.q() as u32).filter(|&a| f.is_square(a)).count() as u64;
            assert_eq!(squares, (f.q() - 1) / 2);
        }
    }

    #[test]
    fn ff_witt_examples() {
        let f5 = FFField::new(5, 1).unwrap();
        let f3 = FFField::new(3, 1).unwrap();
        let h = FFForm::from_diagonal(&f5, &[1, -1]);
        assert_eq!(ff_witt_index(&h, &f5).unwrap().index, 1);
        let q = FFForm::from_diagonal(&f3, &[1, 1]);
        assert_eq!(ff_witt_index(&q, &f3).unwrap().index, 0);
        let q = FFForm::from_diagonal(&f5, &[1, 1]);
        assert_eq!(ff_witt_index(&q, &f5).unwrap().index, 1);
        let degenerate = FFForm::from_diagonal(&f5, &[1, 0]);
        assert!(ff_witt_index(&degenerate, &f5).is_err());
    }

    #[test]
    fn ff_witt_matches_subspace_enumeration() {
        // exhaustive over diagonal entries in {1, nonresidue} (all
        // congruence classes of nondegenerate diagonal forms)
        for p in [3u64, 5] {
            let field = FFField::new(p, 1).unwrap();
            for rank in 2..=5usize {
                for mask in 0..1u32 << rank {
                    let entries: Vec<i64> = (0..rank)
                        .map(|i| if mask >> i & 1 == 0 { 1 } else { 2 })
                        .collect();
                    let form = FFForm::from_diagonal(&field, &entries);
                    let w = ff_witt_index(&form, &field).unwrap();
                    // largest r with a totally singular r-plane
                    let mut best = 0usize;
                    for r in 0..rank / 2 {
                        let e =
                            enumerate_r_planes(&[&form], &field, r, DEFAULT_BUDGET).unwrap();
                        if e.count > 0 {
                            best = r + 1;
                        } else {
                            break;
                        }
                    }
                    assert_eq!(w.index, best, "<{entries:?}> over F_{p}");
                }
            }
        }
    }

    #[test]
    fn count_points_examples() {
        let f3 = FFField::new(3, 1).unwrap();
        // conic x0^2+x1^2+x2^2 over F_3: q+1 = 4 points
        let conic = FFForm::from_diagonal(&f3, &[1, 1, 1]);
        assert_eq!(count_points(&[&conic], &f3, DEFAULT_BUDGET).unwrap(), 4);
        // union of four pairwise-intersecting lines in P^3
        let a = FFForm::from_diagonal(&f3, &[1, -1, 0, 0]);
        let b = FFForm::from_diagonal(&f3, &[0, 0, 1, -1]);
        assert_eq!(count_points(&[&a, &b], &f3, DEFAULT_BUDGET).unwrap(), 12);
    }

    #[test]
    fn count_points_matches_naive() {
        let f5 = FFField::new(5, 1).unwrap();
        let forms = [
            FFForm::from_diagonal(&f5, &[1, 2, 3, 4]),
            FFForm::from_diagonal(&f5, &[2, -1, 1, 1]),
        ];
        let refs: Vec<&FFForm> = forms.iter().collect();
        assert_eq!(
            count_points(&refs, &f5, DEFAULT_BUDGET).unwrap(),
            count_points_naive(&refs, &f5).unwrap()
        );
        let f9 = FFField::new(3, 2).unwrap();
        let c = FFForm::from_diagonal(&f9, &[1, 1, -1]);
        assert_eq!(
            count_points(&[&c], &f9, DEFAULT_BUDGET).unwrap(),
            count_points_naive(&[&c], &f9).unwrap()
        );
        // smooth conic over F_9 has q+1 points
        assert_eq!(count_points(&[&c], &f9, DEFAULT_BUDGET).unwrap(), 10);
    }

    #[test]
    fn split_quadric_has_two_rulings() {
        // x0x1 + x2x3 over F_3: 2(q+1) = 8 lines
        let f3 = FFField::new(3, 1).unwrap();
        let half = f3.inv(2);
        let mut gram = vec![vec![0u32; 4]; 4];
        gram[0][1] = half;
        gram[1][0] = half;
        gram[2][3] = half;
        gram[3][2] = half;
        let q = FFForm::from_gram(gram).unwrap();
        let e = enumerate_r_planes(&[&q], &f3, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(e.count, 8);
        // each witness basis really spans a singular plane
        for w in &e.witnesses {
            for v in w {
                assert_eq!(q.evaluate(&f3, v), 0);
            }
            assert_eq!(q.bilinear(&f3, &w[0], &w[1]), 0);
        }
    }

    #[test]
    fn budget_error_surfaces() {
        let f3 = FFField::new(3, 1).unwrap();
        let q = FFForm::from_diagonal(&f3, &[1, -1, 1, -1]);
        assert!(matches!(
            enumerate_r_planes(&[&q], &f3, 1, 10),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn dp4_lines_bounded_by_16() {
        // dP4 with good reduction at 5: f = diag(1,1,1,1,1),
        // g = diag(0,1,2,3,4); the chart polynomial (1+t)(1+2t)(1+3t)(1+4t)
        // has four distinct roots mod 5 plus the member at infinity
        let f5 = FFField::new(5, 1).unwrap();
        let f = FFForm::from_diagonal(&f5, &[1, 1, 1, 1, 1]);
        let g = FFForm::from_diagonal(&f5, &[0, 1, 2, 3, 4]);
        let e = enumerate_r_planes(&[&f, &g], &f5, 1, DEFAULT_BUDGET).unwrap();
        assert!(e.count <= 16, "got {}", e.count);
        // all 16 lines of a diagonal dP4 are defined over the quadratic
        // extension
        let f25 = FFField::new(5, 2).unwrap();
        let f2 = FFForm::from_diagonal(&f25, &[1, 1, 1, 1, 1]);
        let g2 = FFForm::from_diagonal(&f25, &[0, 1, 2, 3, 4]);
        let e25 = enumerate_r_planes(&[&f2, &g2], &f25, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(e25.count, 16);
        assert!(e25.count >= e.count, "line count monotone under extension");
    }

    #[test]
    fn verify_propositions_small() {
        // n = 3 diagonal pencil, good reduction at 7
        let p = build_pencil(
            QuadraticForm::from_diagonal_i64(&[1, 1, 1, 1]),
            QuadraticForm::from_diagonal_i64(&[1, 2, 3, 4]),
        )
        .unwrap();
        let rep = verify_ff_propositions(&p, 7).unwrap();
        assert!(rep.smooth_reduction);
        assert_eq!(rep.witt_floor, 1);
        assert_eq!(rep.all_members_meet_floor, Some(true));
        assert!(rep.point_count.is_some());

        // bad reduction mod 3 (roots collide): reported, not silent
        let rep = verify_ff_propositions(&p, 3).unwrap();
        assert!(!rep.smooth_reduction);
        assert!(rep.all_members_meet_floor.is_none());
    }
}
