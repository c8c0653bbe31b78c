//! Local and global invariants of quadratic forms over Q: square classes,
//! Hilbert symbols, Hasse invariants, Witt indices over R and Q_p, the
//! global Witt index via the finite critical set, and Albert-form Clifford
//! invariants.

pub mod oracle;

use crate::arith::{
    factor, int, is_square_rat, least_nonresidue, legendre, rat_square_class_rep, unit_part, Int,
    Rat,
};
use crate::error::{Error, Result};
use crate::qform::{Diagonalization, QuadraticForm, RealSignature};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A place of Q: the real place or a finite prime.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Real,
    Finite(Int),
}

impl Place {
    pub fn finite(p: u64) -> Place {
        Place::Finite(Int::from(p))
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Place::Real)
    }

    pub fn parse(s: &str) -> Result<Place> {
        if s == "real" || s == "inf" || s == "oo" {
            return Ok(Place::Real);
        }
        let p: Int = s
            .parse()
            .map_err(|_| Error::Input(format!("bad place {s:?}")))?;
        if !crate::arith::is_prime(&p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        Ok(Place::Finite(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Place::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Canonical square class at a place. The representative is a small integer:
/// real: {1,-1}; odd p: {1, u, p, u*p} with u the least positive nonresidue;
/// p = 2: {1,-1,2,-2,5,-5,10,-10}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareClass {
    pub place: Place,
    pub rep: Int,
}

impl SquareClass {
    pub fn is_trivial(&self) -> bool {
        self.rep.is_one()
    }

    /// Label per the report schema: "1", "u", "p", "u*p" at odd p, the
    /// representative integer elsewhere.
    pub fn label(&self) -> String {
        match &self.place {
            Place::Real => {
                if self.rep.is_one() {
                    "+1".into()
                } else {
                    "-1".into()
                }
            }
            Place::Finite(p) if *p == int(2) => self.rep.to_string(),
            Place::Finite(p) => {
                let u = least_nonresidue(p);
                if self.rep.is_one() {
                    "1".into()
                } else if self.rep == u {
                    "u".into()
                } else if self.rep == *p {
                    "p".into()
                } else {
                    "u*p".into()
                }
            }
        }
    }

    /// Product of square classes, again canonical.
    pub fn product(&self, other: &SquareClass) -> SquareClass {
        debug_assert_eq!(self.place, other.place);
        square_class(
            &Rat::from_integer(&self.rep * &other.rep),
            &self.place,
        )
        .expect("nonzero reps")
    }
}

/// Canonical square class of a nonzero rational at a place.
pub fn square_class(a: &Rat, v: &Place) -> Result<SquareClass> {
    if a.is_zero() {
        return Err(Error::Domain("square class of zero".into()));
    }
    let rep = match v {
        Place::Real => {
            if a.is_positive() {
                Int::one()
            } else {
                -Int::one()
            }
        }
        Place::Finite(p) => {
            // same square class as numer*denom
            let n = a.numer() * a.denom();
            let u = unit_part(&n, p);
            let odd_val = crate::arith::val_int(&n, p) % 2 == 1;
            if *p == int(2) {
                let m = u.mod_floor(&int(8));
                let base = if m == int(1) {
                    int(1)
                } else if m == int(3) {
                    int(-5)
                } else if m == int(5) {
                    int(5)
                } else {
                    int(-1)
                };
                if odd_val {
                    base * int(2)
                } else {
                    base
                }
            } else {
                let base = if legendre(&u, p) == 1 { int(1) } else { least_nonresidue(p) };
                if odd_val {
                    base * p
                } else {
                    base
                }
            }
        }
    };
    Ok(SquareClass {
        place: v.clone(),
        rep,
    })
}

pub fn is_local_square(a: &Rat, v: &Place) -> Result<bool> {
    Ok(square_class(a, v)?.is_trivial())
}

/// Hilbert symbol (a,b)_v by the classical closed formulas.
pub fn hilbert_symbol(a: &Rat, b: &Rat, v: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Domain("hilbert symbol of zero".into()));
    }
    match v {
        Place::Real => Ok(if a.is_negative() && b.is_negative() {
            -1
        } else {
            1
        }),
        Place::Finite(p) => {
            // square classes only: replace by numer*denom
            let a = a.numer() * a.denom();
            let b = b.numer() * b.denom();
            let alpha = crate::arith::val_int(&a, p);
            let beta = crate::arith::val_int(&b, p);
            let u = unit_part(&a, p);
            let w = unit_part(&b, p);
            if *p == int(2) {
                let eps = |x: &Int| -> u64 {
                    // (x-1)/2 mod 2 for odd x
                    if x.mod_floor(&int(4)) == int(1) {
                        0
                    } else {
                        1
                    }
                };
                let omega = |x: &Int| -> u64 {
                    // (x^2-1)/8 mod 2 for odd x
                    let m = x.mod_floor(&int(8));
                    if m == int(1) || m == int(7) {
                        0
                    } else {
                        1
                    }
                };
                let e = eps(&u) * eps(&w) + alpha * omega(&w) + beta * omega(&u);
                Ok(if e % 2 == 0 { 1 } else { -1 })
            } else {
                let mut s = 1i8;
                if alpha % 2 == 1 && beta % 2 == 1 {
                    // (-1)^{(p-1)/2}
                    if p.mod_floor(&int(4)) == int(3) {
                        s = -s;
                    }
                }
                if beta % 2 == 1 && legendre(&u, p) == -1 {
                    s = -s;
                }
                if alpha % 2 == 1 && legendre(&w, p) == -1 {
                    s = -s;
                }
                Ok(s)
            }
        }
    }
}

/// Hasse invariant of a diagonalization: product of pairwise Hilbert
/// symbols over the nonzero entries.
pub fn hasse_invariant(d: &Diagonalization, v: &Place) -> Result<i8> {
    if d.entries.iter().any(|e| e.is_zero()) {
        return Err(Error::Precondition(
            "hasse invariant needs a nondegenerate form".into(),
        ));
    }
    hasse_of_entries(&d.entries, v)
}

pub fn hasse_of_entries(entries: &[Rat], v: &Place) -> Result<i8> {
    let mut s = 1i8;
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            s *= hilbert_symbol(&entries[i], &entries[j], v)?;
        }
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittIndexResult {
    pub index: usize,
    pub anisotropic_dim: usize,
}

/// Local invariants at one place, the complete congruence invariant there.
#[derive(Debug, Clone, Serialize)]
pub struct LocalInvariants {
    pub place: Place,
    pub rank: usize,
    pub det_class: String,
    pub hasse: i8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<RealSignature>,
    pub witt: usize,
    pub anisotropic_dim: usize,
}

/// Isotropy over Q_p from (rank, det class, hasse), the standard
/// classification: rank 1 never; rank 2 iff -d is a square; rank 3 iff
/// (-1,-d) = eps; rank 4 iff d is a nonsquare or eps = (-1,-1); rank >= 5
/// always.
fn locally_isotropic_p(rank: usize, d: &SquareClass, eps: i8, p: &Int) -> bool {
    let v = Place::Finite(p.clone());
    match rank {
        0 | 1 => false,
        2 => square_class(&Rat::from_integer(-&d.rep), &v)
            .unwrap()
            .is_trivial(),
        3 => {
            hilbert_symbol(
                &Rat::from_integer(int(-1)),
                &Rat::from_integer(-&d.rep),
                &v,
            )
            .unwrap()
                == eps
        }
        4 => {
            !d.is_trivial()
                || eps
                    == hilbert_symbol(
                        &Rat::from_integer(int(-1)),
                        &Rat::from_integer(int(-1)),
                        &v,
                    )
                    .unwrap()
        }
        _ => true,
    }
}

/// Witt index over Q_p from the invariants, by repeatedly splitting off a
/// hyperbolic plane: d -> class(-d), eps -> eps * (-1, d_new).
pub fn witt_index_from_invariants_p(
    rank: usize,
    det_class: &SquareClass,
    hasse: i8,
    p: &Int,
) -> WittIndexResult {
    let v = Place::Finite(p.clone());
    let mut rank = rank;
    let mut d = det_class.clone();
    let mut eps = hasse;
    let mut index = 0;
    while locally_isotropic_p(rank, &d, eps, p) {
        index += 1;
        rank -= 2;
        d = square_class(&Rat::from_integer(-&d.rep), &v).unwrap();
        eps *= hilbert_symbol(
            &Rat::from_integer(int(-1)),
            &Rat::from_integer(d.rep.clone()),
            &v,
        )
        .unwrap();
    }
    WittIndexResult {
        index,
        anisotropic_dim: rank,
    }
}

fn nondegenerate_entries(q: &QuadraticForm) -> Result<Vec<Rat>> {
    let d = q.diagonalize();
    if d.rank != q.dim() {
        return Err(Error::Precondition("form is degenerate".into()));
    }
    Ok(d.entries)
}

/// Exact Witt index of a nondegenerate form over the completion at v.
pub fn local_witt_index(q: &QuadraticForm, v: &Place) -> Result<WittIndexResult> {
    let entries = nondegenerate_entries(q)?;
    local_witt_of_entries(&entries, v)
}

pub fn local_witt_of_entries(entries: &[Rat], v: &Place) -> Result<WittIndexResult> {
    match v {
        Place::Real => {
            let pos = entries.iter().filter(|e| e.is_positive()).count();
            let neg = entries.len() - pos;
            Ok(WittIndexResult {
                index: pos.min(neg),
                anisotropic_dim: pos.abs_diff(neg),
            })
        }
        Place::Finite(p) => {
            let det: Rat = entries.iter().product();
            let d = square_class(&det, v)?;
            let eps = hasse_of_entries(entries, v)?;
            Ok(witt_index_from_invariants_p(entries.len(), &d, eps, p))
        }
    }
}

pub fn local_invariants(q: &QuadraticForm, v: &Place) -> Result<LocalInvariants> {
    let entries = nondegenerate_entries(q)?;
    let det: Rat = entries.iter().product();
    let witt = local_witt_of_entries(&entries, v)?;
    Ok(LocalInvariants {
        place: v.clone(),
        rank: entries.len(),
        det_class: square_class(&det, v)?.label(),
        hasse: hasse_of_entries(&entries, v)?,
        signature: if v.is_real() {
            Some(q.signature())
        } else {
            None
        },
        witt: witt.index,
        anisotropic_dim: witt.anisotropic_dim,
    })
}

/// The finite critical set of places: real, 2, and the odd primes dividing
/// the squarefree kernel of any entry of an integral diagonalization.
pub fn critical_places(entries: &[Rat]) -> Vec<Place> {
    let mut primes: BTreeSet<Int> = BTreeSet::new();
    primes.insert(int(2));
    for e in entries {
        let k = rat_square_class_rep(e);
        for (p, _) in factor(&k) {
            if p != int(2) {
                primes.insert(p);
            }
        }
    }
    let mut out = vec![Place::Real];
    out.extend(primes.into_iter().map(Place::Finite));
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct GlobalWittReport {
    pub rank: usize,
    pub index: usize,
    pub anisotropic_dim: usize,
    /// Witt indices over the completions at the critical set.
    pub local: Vec<(Place, WittIndexResult)>,
    /// Contribution of all places outside the critical set.
    pub good_place_index: usize,
}

/// Global Witt index over Q: minimum of the local indices on the critical
/// set and the uniform good-place contribution (odd rank: floor(rank/2);
/// even rank 2m: m when (-1)^m det is a global square, else m-1).
pub fn global_witt_index(q: &QuadraticForm) -> Result<GlobalWittReport> {
    let entries = nondegenerate_entries(q)?;
    let rank = entries.len();
    let places = critical_places(&entries);
    let mut local = Vec::new();
    let mut min_index = usize::MAX;
    for v in &places {
        let w = local_witt_of_entries(&entries, v)?;
        min_index = min_index.min(w.index);
        local.push((v.clone(), w));
    }
    let det: Rat = entries.iter().product();
    let good_place_index = if rank % 2 == 1 {
        rank / 2
    } else {
        let m = rank / 2;
        let signed = if m % 2 == 1 { -det.clone() } else { det.clone() };
        if is_square_rat(&signed) {
            m
        } else {
            m - 1
        }
    };
    let index = min_index.min(good_place_index);
    Ok(GlobalWittReport {
        rank,
        index,
        anisotropic_dim: rank - 2 * index,
        local,
        good_place_index,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ContainsRhReport {
    pub r: usize,
    pub global: bool,
    pub per_place: Vec<(Place, bool)>,
    pub good_places: bool,
}

/// Per-place and global verdicts for "q contains r hyperbolic planes".
pub fn contains_rh_report(q: &QuadraticForm, r: usize) -> Result<ContainsRhReport> {
    let rank = nondegenerate_entries(q)?.len();
    if r > rank / 2 {
        return Err(Error::Domain(format!(
            "r = {r} out of range for rank {rank}"
        )));
    }
    let g = global_witt_index(q)?;
    Ok(ContainsRhReport {
        r,
        global: g.index >= r,
        per_place: g
            .local
            .iter()
            .map(|(v, w)| (v.clone(), w.index >= r))
            .collect(),
        good_places: g.good_place_index >= r,
    })
}

/// A 2-torsion Brauer class over Q as its table of local signs; places not
/// listed carry +1. Reciprocity forces an even number of -1 entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrauerClassTwoTorsion {
    pub ramified: Vec<Place>,
}

impl BrauerClassTwoTorsion {
    pub fn is_zero(&self) -> bool {
        self.ramified.is_empty()
    }

    pub fn sign_at(&self, v: &Place) -> i8 {
        if self.ramified.contains(v) {
            -1
        } else {
            1
        }
    }
}

/// The quaternion class (a,b) as a local-sign table over its critical set.
pub fn quaternion_class(a: &Rat, b: &Rat) -> Result<BrauerClassTwoTorsion> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Domain("quaternion class of zero".into()));
    }
    let mut places: BTreeSet<Place> = BTreeSet::new();
    places.insert(Place::Real);
    places.insert(Place::finite(2));
    for x in [a, b] {
        for (p, _) in factor(&rat_square_class_rep(x)) {
            places.insert(Place::Finite(p));
        }
    }
    let mut ramified = Vec::new();
    let mut product = 1i8;
    for v in places {
        let s = hilbert_symbol(a, b, &v)?;
        product *= s;
        if s == -1 {
            ramified.push(v);
        }
    }
    debug_assert_eq!(product, 1, "Hilbert reciprocity violated");
    Ok(BrauerClassTwoTorsion { ramified })
}

#[derive(Debug, Clone, Serialize)]
pub struct AlbertReport {
    pub class: BrauerClassTwoTorsion,
    pub albert_form: QuadraticForm,
    pub totally_hyperbolic: bool,
    /// Over Q a rank-6 Albert form is always isotropic: the exponent of
    /// c(phi) equals its index over a number field, so the index divides 2.
    pub isotropic: bool,
}

/// Clifford invariant c(phi) = (a,b) + (c,d) of the Albert form
/// <-a,-b,ab,-c,-d,cd>, with hyperbolicity and isotropy verdicts.
pub fn clifford_albert(a: &Rat, b: &Rat, c: &Rat, d: &Rat) -> Result<AlbertReport> {
    for x in [a, b, c, d] {
        if x.is_zero() {
            return Err(Error::Domain("albert parameters must be nonzero".into()));
        }
    }
    let q1 = quaternion_class(a, b)?;
    let q2 = quaternion_class(c, d)?;
    // sum in Br(Q)[2]: symmetric difference of ramification sets
    let mut places: BTreeSet<Place> = q1.ramified.iter().cloned().collect();
    for v in &q2.ramified {
        if !places.remove(v) {
            places.insert(v.clone());
        }
    }
    let class = BrauerClassTwoTorsion {
        ramified: places.into_iter().collect(),
    };
    let albert_form = QuadraticForm::from_diagonal(&[
        -a.clone(),
        -b.clone(),
        a * b,
        -c.clone(),
        -d.clone(),
        c * d,
    ]);
    let totally_hyperbolic = class.is_zero();
    Ok(AlbertReport {
        totally_hyperbolic,
        isotropic: true,
        class,
        albert_form,
    })
}

/// psi = q5 | <-det(q5)> for a nondegenerate rank-5 form; det(psi) lies in
/// the square class of -1, and psi is isotropic iff q5 represents det(q5).
pub fn albert_completion(q5: &QuadraticForm) -> Result<QuadraticForm> {
    let entries = nondegenerate_entries(q5)?;
    if entries.len() != 5 {
        return Err(Error::Precondition(format!(
            "albert completion needs rank 5, got {}",
            entries.len()
        )));
    }
    let det = q5.det();
    Ok(q5.direct_sum(&QuadraticForm::from_diagonal(&[-det])))
}

/// Validate the invariant-based local isotropy verdict against the Hensel
/// brute-force oracle for a diagonal form with integer entries.
pub fn isotropy_verdicts_agree(entries: &[i64], p: u64) -> Result<bool> {
    let rats: Vec<Rat> = entries
        .iter()
        .map(|&e| Rat::from_integer(Int::from(e)))
        .collect();
    let w = local_witt_of_entries(&rats, &Place::finite(p))?;
    let ints: Vec<Int> = entries.iter().map(|&e| Int::from(e)).collect();
    let brute = oracle::isotropic_oracle(&ints, p);
    Ok((w.index > 0) == brute)
}

/// All places where one of the given nonzero rationals could have a
/// nontrivial symbol: real, 2, and odd primes in any squarefree kernel.
pub fn symbol_critical_places(vals: &[&Rat]) -> Vec<Place> {
    let mut primes: BTreeSet<Int> = BTreeSet::new();
    primes.insert(int(2));
    for v in vals {
        for (p, _) in factor(&rat_square_class_rep(v)) {
            primes.insert(p);
        }
    }
    let mut out = vec![Place::Real];
    out.extend(primes.into_iter().map(Place::Finite));
    out
}

/// Local invariants grouped per place as a serializable report.
pub fn full_local_report(q: &QuadraticForm) -> Result<Vec<LocalInvariants>> {
    let entries = nondegenerate_entries(q)?;
    critical_places(&entries)
        .iter()
        .map(|v| local_invariants(q, v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    #[test]
    fn square_class_examples() {
        // -7 is a 2-adic square
        assert!(square_class(&rat_int(-7), &Place::finite(2))
            .unwrap()
            .is_trivial());
        // 2 is a nonresidue mod 5
        let c = square_class(&rat_int(2), &Place::finite(5)).unwrap();
        assert_eq!(c.label(), "u");
        // 9/4 is a real square
        assert_eq!(
            square_class(&rat(9, 4), &Place::Real).unwrap().label(),
            "+1"
        );
        assert!(square_class(&Rat::zero(), &Place::Real).is_err());
    }

    #[test]
    fn square_class_two_adic_labels() {
        for (a, want) in [
            (1i64, "1"),
            (-1, "-1"),
            (2, "2"),
            (-2, "-2"),
            (5, "5"),
            (-5, "-5"),
            (10, "10"),
            (-10, "-10"),
            (3, "-5"),
            (7, "-1"),
            (6, "-10"),
            (9, "1"),
        ] {
            let c = square_class(&rat_int(a), &Place::finite(2)).unwrap();
            assert_eq!(c.label(), want, "class of {a} at 2");
        }
    }

    #[test]
    fn square_class_product_closed() {
        let v = Place::finite(2);
        for a in [-10i64, -5, -2, -1, 1, 2, 5, 10] {
            for b in [-10i64, -5, -2, -1, 1, 2, 5, 10] {
                let ca = square_class(&rat_int(a), &v).unwrap();
                let cb = square_class(&rat_int(b), &v).unwrap();
                let prod = ca.product(&cb);
                let direct = square_class(&rat_int(a * b), &v).unwrap();
                assert_eq!(prod, direct);
            }
        }
    }

    #[test]
    fn hilbert_examples() {
        for v in [Place::Real, Place::finite(2), Place::finite(5)] {
            assert_eq!(hilbert_symbol(&rat_int(1), &rat_int(17), &v).unwrap(), 1);
        }
        assert_eq!(
            hilbert_symbol(&rat_int(-1), &rat_int(-1), &Place::Real).unwrap(),
            -1
        );
        assert_eq!(
            hilbert_symbol(&rat_int(2), &rat_int(5), &Place::finite(5)).unwrap(),
            -1
        );
        assert!(hilbert_symbol(&Rat::zero(), &rat_int(1), &Place::Real).is_err());
    }

    #[test]
    fn hasse_examples() {
        let ones = vec![rat_int(1); 4];
        for v in [Place::Real, Place::finite(2), Place::finite(7)] {
            assert_eq!(hasse_of_entries(&ones, &v).unwrap(), 1);
        }
        let mm = vec![rat_int(-1), rat_int(-1)];
        assert_eq!(hasse_of_entries(&mm, &Place::finite(2)).unwrap(), -1);
        assert_eq!(hasse_of_entries(&mm, &Place::finite(3)).unwrap(), 1);
    }

    #[test]
    fn local_witt_examples() {
        let h = QuadraticForm::from_diagonal_i64(&[1, -1]);
        for v in [Place::Real, Place::finite(2), Place::finite(3)] {
            assert_eq!(local_witt_index(&h, &v).unwrap().index, 1);
        }
        let q = QuadraticForm::from_diagonal_i64(&[1, 1, 1, 1]);
        let w = local_witt_index(&q, &Place::finite(2)).unwrap();
        assert_eq!((w.index, w.anisotropic_dim), (0, 4));
        assert_eq!(local_witt_index(&q, &Place::finite(5)).unwrap().index, 2);
        // <1,1,1,1> has (rank,d,eps) = (4,1,+1) at 3, the invariants of 2H
        assert_eq!(local_witt_index(&q, &Place::finite(3)).unwrap().index, 2);
        let deg = QuadraticForm::from_diagonal_i64(&[1, 0]);
        assert!(local_witt_index(&deg, &Place::Real).is_err());
    }

    #[test]
    fn sum_of_four_squares_plane_at_3() {
        // independent witness that <1,1,1,1> contains 2H over Q_3: the
        // explicit plane span{(1,0,a,b),(0,1,-b,a)} with a^2+b^2 = -1 is
        // totally isotropic; here check the construction shape at the
        // congruence level via the oracle instead.
        assert!(oracle::isotropic_oracle(
            &[int(1), int(1), int(1), int(1)],
            3
        ));
        assert!(!oracle::isotropic_oracle(
            &[int(1), int(1), int(1), int(1)],
            2
        ));
    }

    #[test]
    fn global_witt_examples() {
        let q = QuadraticForm::from_diagonal_i64(&[1, 1, -1, -1]);
        assert_eq!(global_witt_index(&q).unwrap().index, 2);
        let q = QuadraticForm::from_diagonal_i64(&[1, 1, 1, 1]);
        assert_eq!(global_witt_index(&q).unwrap().index, 0);
        let q = QuadraticForm::from_diagonal_i64(&[1, 1, 1, -7]);
        let g = global_witt_index(&q).unwrap();
        assert_eq!(g.index, 0);
        let at2 = g
            .local
            .iter()
            .find(|(v, _)| *v == Place::finite(2))
            .unwrap();
        assert_eq!(at2.1.index, 0);
    }

    #[test]
    fn contains_rh_examples() {
        let q = QuadraticForm::from_diagonal_i64(&[1, -1, 1, -1, 1, -1]);
        let r = contains_rh_report(&q, 3).unwrap();
        assert!(r.global && r.per_place.iter().all(|(_, b)| *b) && r.good_places);

        let q = QuadraticForm::from_diagonal_i64(&[1, 1, 1, 1]);
        let r = contains_rh_report(&q, 1).unwrap();
        assert!(!r.global);
        assert!(!r.per_place.iter().find(|(v, _)| v.is_real()).unwrap().1);

        let q = QuadraticForm::from_diagonal_i64(&[1, 1, 1, -7, 1, -1]);
        let r = contains_rh_report(&q, 2).unwrap();
        assert!(!r.global);
        let at2 = r
            .per_place
            .iter()
            .find(|(v, _)| *v == Place::finite(2))
            .unwrap();
        assert!(!at2.1);
        assert_eq!(global_witt_index(&q).unwrap().index, 1);

        assert!(contains_rh_report(&q, 4).is_err());
    }

    #[test]
    fn clifford_albert_examples() {
        let one = rat_int(1);
        let r = clifford_albert(&one, &one, &one, &one).unwrap();
        assert!(r.class.is_zero() && r.totally_hyperbolic && r.isotropic);
        assert_eq!(
            r.albert_form,
            QuadraticForm::from_diagonal_i64(&[-1, -1, 1, -1, -1, 1])
        );

        let m1 = rat_int(-1);
        let r = clifford_albert(&m1, &m1, &one, &one).unwrap();
        assert!(!r.totally_hyperbolic);
        let sig = r.albert_form.signature();
        assert_eq!((sig.positives, sig.negatives), (4, 2));
        assert_eq!(
            r.class.ramified,
            vec![Place::Real, Place::finite(2)]
        );

        let r = clifford_albert(&rat_int(2), &rat_int(5), &one, &one).unwrap();
        assert_eq!(
            r.class.ramified,
            vec![Place::finite(2), Place::finite(5)]
        );
    }

    #[test]
    fn albert_completion_examples() {
        let q = QuadraticForm::from_diagonal_i64(&[1, 1, 1, 1, 1]);
        let psi = albert_completion(&q).unwrap();
        assert_eq!(
            psi,
            QuadraticForm::from_diagonal_i64(&[1, 1, 1, 1, 1, -1])
        );
        let q = QuadraticForm::from_diagonal_i64(&[1, 2, 3, 4, 5]);
        let psi = albert_completion(&q).unwrap();
        assert_eq!(psi.gram()[5][5], rat_int(-120));
        // det(psi) in the square class of -1
        assert!(is_square_rat(&(-psi.det())));
        assert!(albert_completion(&QuadraticForm::from_diagonal_i64(&[1, 1])).is_err());
    }

    #[test]
    fn local_report_schema() {
        let q = QuadraticForm::from_diagonal_i64(&[1, 2, -3]);
        let reps = full_local_report(&q).unwrap();
        let j = serde_json::to_value(&reps).unwrap();
        let first = &j[0];
        assert!(first.get("place").is_some());
        assert!(first.get("rank").is_some());
        assert!(first.get("det_class").is_some());
        assert!(first.get("hasse").is_some());
        assert!(first.get("witt").is_some());
    }
}
