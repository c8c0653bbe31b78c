//! Height-bounded exact searches over Q: rational points on the base locus
//! of two quadrics, isotropic vectors and planes of a single form, and the
//! quadratic-point construction from a line on a pencil member.

use crate::arith::{rat_int, rat_to_string, Int, Rat};
use crate::error::{Error, Result};
use crate::linalg::kernel;
use crate::qform::QuadraticForm;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// A point of projective space with primitive integer coordinates, first
/// nonzero coordinate positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivePoint {
    coords: Vec<Int>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Int>) -> Result<ProjectivePoint> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Input("zero vector is not projective".into()));
        }
        let mut g = Int::zero();
        for c in &coords {
            g = g.gcd(c);
        }
        let lead_neg = coords
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap();
        if lead_neg {
            g = -g;
        }
        Ok(ProjectivePoint {
            coords: coords.into_iter().map(|c| c / &g).collect(),
        })
    }

    pub fn from_rat(coords: &[Rat]) -> Result<ProjectivePoint> {
        let mut lcm = Int::from(1);
        for c in coords {
            lcm = lcm.lcm(c.denom());
        }
        ProjectivePoint::new(
            coords
                .iter()
                .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
                .collect(),
        )
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        self.coords.iter().map(|c| Rat::from_integer(c.clone())).collect()
    }

    pub fn height(&self) -> Int {
        self.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap()
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ProjectivePoint", 2)?;
        st.serialize_field("type", "rational")?;
        let coords: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coords", &coords)?;
        st.end()
    }
}

/// A point with coordinates v0 + u*v1 where u is a root of the monic
/// quadratic u^2 + b*u + c (irreducible or split).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPoint {
    pub b: Rat,
    pub c: Rat,
    pub v0: Vec<Rat>,
    pub v1: Vec<Rat>,
}

impl QuadraticPoint {
    /// Exact check that q vanishes at v0 + u*v1 in Q[u]/(u^2 + b*u + c):
    /// q(v0+u*v1) = q(v0) + 2B(v0,v1)u + q(v1)u^2 reduces to
    /// (q(v0) - c*q(v1)) + (2B(v0,v1) - b*q(v1))u.
    pub fn satisfies(&self, q: &QuadraticForm) -> Result<bool> {
        let q0 = q.evaluate(&self.v0)?;
        let q1 = q.evaluate(&self.v1)?;
        let cross = q.bilinear(&self.v0, &self.v1)?;
        let constant = q0 - &self.c * &q1;
        let linear = rat_int(2) * cross - &self.b * &q1;
        Ok(constant.is_zero() && linear.is_zero())
    }

    pub fn is_split(&self) -> bool {
        let disc = &self.b * &self.b - rat_int(4) * &self.c;
        crate::arith::is_square_rat(&disc)
    }
}

impl Serialize for QuadraticPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuadraticPoint", 3)?;
        st.serialize_field("type", "quadratic")?;
        let min_poly = vec![
            rat_to_string(&self.c),
            rat_to_string(&self.b),
            "1".to_string(),
        ];
        st.serialize_field("min_poly", &min_poly)?;
        let coords: Vec<Vec<String>> = [&self.v0, &self.v1]
            .iter()
            .map(|v| v.iter().map(rat_to_string).collect())
            .collect();
        st.serialize_field("coords", &coords)?;
        st.end()
    }
}

/// Outcome of intersecting a line on one pencil member with the rest of
/// the pencil.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum LinePointOutcome {
    /// the restricted binary quadratic splits: its rational roots, as
    /// points of the base locus
    Rational(Vec<ProjectivePoint>),
    Quadratic(QuadraticPoint),
    /// both forms vanish identically on the plane: a line of rational
    /// points on X
    PlaneOnX {
        basis: Vec<ProjectivePoint>,
    },
}

/// Visit primitive normalized integer vectors of max-norm <= bound in
/// lexicographic order (coordinates ordered -bound < ... < bound); stop
/// when the visitor returns true.
fn for_each_primitive<F: FnMut(&[Int]) -> bool>(dim: usize, bound: i64, mut visit: F) {
    assert!(bound >= 1);
    let mut v = vec![0i64; dim];
    let mut ints = vec![Int::zero(); dim];
    // first nonzero coordinate must be positive, so lex order starts at
    // (0,...,0,1); odometer over the full box, filtered
    loop {
        // advance to next tuple
        let mut k = dim;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if v[k] < bound {
                v[k] += 1;
                break;
            }
            v[k] = -bound;
        }
        if normalized_primitive(&v) {
            for (s, d) in v.iter().zip(ints.iter_mut()) {
                *d = Int::from(*s);
            }
            if visit(&ints) {
                return;
            }
        }
    }
}

fn normalized_primitive(v: &[i64]) -> bool {
    let mut g: i64 = 0;
    for &x in v {
        if g == 0 && x < 0 {
            return false;
        }
        g = g.gcd(&x);
    }
    g == 1
}

/// Integer matrix proportional to the Gram matrix (denominators cleared),
/// as i128 when every entry fits.
fn integral_gram(q: &QuadraticForm) -> Vec<Vec<Int>> {
    let mut lcm = Int::from(1);
    for row in q.gram() {
        for e in row {
            lcm = lcm.lcm(e.denom());
        }
    }
    q.gram()
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| (e * Rat::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect()
}

fn i128_gram(m: &[Vec<Int>]) -> Option<Vec<Vec<i128>>> {
    m.iter()
        .map(|row| row.iter().map(|e| e.to_i128()).collect())
        .collect()
}

fn eval_i128(m: &[Vec<i128>], v: &[Int]) -> i128 {
    let n = m.len();
    let mut s = 0i128;
    for i in 0..n {
        let vi = v[i].to_i128().unwrap();
        if vi == 0 {
            continue;
        }
        let mut row = 0i128;
        for j in 0..n {
            row += m[i][j] * v[j].to_i128().unwrap();
        }
        s += vi * row;
    }
    s
}

fn eval_int(m: &[Vec<Int>], v: &[Int]) -> Int {
    let n = m.len();
    let mut s = Int::zero();
    for i in 0..n {
        if v[i].is_zero() {
            continue;
        }
        let mut row = Int::zero();
        for j in 0..n {
            row += &m[i][j] * &v[j];
        }
        s += &v[i] * row;
    }
    s
}

/// All primitive points of max-norm <= bound lying on both quadrics, in
/// lexicographic order.
pub fn point_search(
    f: &QuadraticForm,
    g: &QuadraticForm,
    bound: i64,
) -> Result<Vec<ProjectivePoint>> {
    if f.dim() != g.dim() {
        return Err(Error::Dimension(format!(
            "forms of dims {} and {}",
            f.dim(),
            g.dim()
        )));
    }
    let mf = integral_gram(f);
    let mg = integral_gram(g);
    let fast = i128_gram(&mf).zip(i128_gram(&mg));
    let mut out = Vec::new();
    for_each_primitive(f.dim(), bound, |v| {
        let on_x = match &fast {
            Some((a, b)) if bound < 1 << 20 => eval_i128(a, v) == 0 && eval_i128(b, v) == 0,
            _ => eval_int(&mf, v).is_zero() && eval_int(&mg, v).is_zero(),
        };
        if on_x {
            out.push(ProjectivePoint {
                coords: v.to_vec(),
            });
        }
        false
    });
    Ok(out)
}

/// First primitive isotropic vector of max-norm <= bound, in lexicographic
/// order; None when the bounded search is exhausted.
pub fn isotropic_vector(q: &QuadraticForm, bound: i64) -> Option<ProjectivePoint> {
    let m = integral_gram(q);
    let fast = i128_gram(&m);
    let mut out = None;
    for_each_primitive(q.dim(), bound, |v| {
        let zero = match &fast {
            Some(a) if bound < 1 << 20 => eval_i128(a, v) == 0,
            _ => eval_int(&m, v).is_zero(),
        };
        if zero {
            out = Some(ProjectivePoint {
                coords: v.to_vec(),
            });
        }
        out.is_some()
    });
    out
}

/// Extension is attempted from at most this many base vectors, keeping the
/// bounded search bounded when no plane exists.
const PLANE_BASE_ATTEMPTS: usize = 32;

/// A pair of independent vectors spanning a totally isotropic plane of q,
/// both of max-norm <= bound in the search coordinates; None when the
/// bounded search finds no extension of any bounded isotropic vector.
pub fn isotropic_plane(
    q: &QuadraticForm,
    bound: i64,
) -> Result<Option<(ProjectivePoint, ProjectivePoint)>> {
    let m = integral_gram(q);
    let fast = i128_gram(&m);
    let dim = q.dim();
    let mut result = None;
    let mut err = None;
    let mut attempts = 0usize;
    for_each_primitive(dim, bound, |u| {
        let zero = match &fast {
            Some(a) if bound < 1 << 20 => eval_i128(a, u) == 0,
            _ => eval_int(&m, u).is_zero(),
        };
        if !zero {
            return false;
        }
        attempts += 1;
        if attempts > PLANE_BASE_ATTEMPTS {
            return true;
        }
        match extend_to_plane(q, u, bound) {
            Ok(Some(v)) => {
                let u_pt = ProjectivePoint {
                    coords: u.to_vec(),
                };
                result = Some((u_pt, v));
                true
            }
            Ok(None) => false,
            Err(e) => {
                err = Some(e);
                true
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(result)
}

/// Search the orthogonal complement of the isotropic vector u for a second
/// isotropic vector independent of u.
fn extend_to_plane(
    q: &QuadraticForm,
    u: &[Int],
    bound: i64,
) -> Result<Option<ProjectivePoint>> {
    let dim = q.dim();
    let u_rat: Vec<Rat> = u.iter().map(|c| Rat::from_integer(c.clone())).collect();
    // u^perp = kernel of the single row (G u)^T
    let row: Vec<Rat> = (0..dim)
        .map(|j| {
            let mut s = Rat::zero();
            for i in 0..dim {
                s += &q.gram()[i][j] * &u_rat[i];
            }
            s
        })
        .collect();
    let basis = if row.iter().all(|e| e.is_zero()) {
        (0..dim)
            .map(|i| {
                let mut e = vec![Rat::zero(); dim];
                e[i] = rat_int(1);
                e
            })
            .collect::<Vec<_>>()
    } else {
        kernel(&vec![row])
    };
    if basis.len() < 2 {
        return Ok(None);
    }
    let restricted = q.restrict(&basis)?;
    let rm = integral_gram(&restricted);
    let rfast = i128_gram(&rm);
    // span of u in coordinates of the complement basis, for the
    // independence check: solve for u in the basis
    let mut found = None;
    for_each_primitive(basis.len(), bound, |w| {
        let zero = match &rfast {
            Some(a) if bound < 1 << 20 => eval_i128(a, w) == 0,
            _ => eval_int(&rm, w).is_zero(),
        };
        if !zero {
            return false;
        }
        // map back to ambient coordinates
        let mut ambient = vec![Rat::zero(); dim];
        for (c, b) in w.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            let cr = Rat::from_integer(c.clone());
            for (a, e) in ambient.iter_mut().zip(b) {
                *a += &cr * e;
            }
        }
        let pt = ProjectivePoint::from_rat(&ambient).unwrap();
        if pt.coords()
            .iter()
            .zip(u)
            .all(|(a, b)| a == b)
        {
            return false; // proportional to u
        }
        // independence: the 2 x dim matrix (u, pt) has rank 2
        let rows = vec![u_rat.clone(), pt.to_rat()];
        if crate::linalg::rank(&rows) == 2 {
            found = Some(pt);
            return true;
        }
        false
    });
    Ok(found)
}

/// Intersect the line {s*u + t*v} (a line on one pencil member) with the
/// rest of the pencil: the restrictions of f and g to the line are
/// proportional binary quadratics; return the root(s) of the nonzero one
/// as rational points or a quadratic point, or the plane itself when both
/// restrictions vanish.
pub fn quadratic_point_from_line(
    f: &QuadraticForm,
    g: &QuadraticForm,
    u: &[Rat],
    v: &[Rat],
) -> Result<LinePointOutcome> {
    if f.dim() != g.dim() || u.len() != f.dim() || v.len() != f.dim() {
        return Err(Error::Dimension("mismatched dimensions".into()));
    }
    let restrict_line = |q: &QuadraticForm| -> Result<(Rat, Rat, Rat)> {
        Ok((
            q.evaluate(u)?,
            rat_int(2) * q.bilinear(u, v)?,
            q.evaluate(v)?,
        ))
    };
    let rf = restrict_line(f)?;
    let rg = restrict_line(g)?;
    let zero = |r: &(Rat, Rat, Rat)| r.0.is_zero() && r.1.is_zero() && r.2.is_zero();
    if zero(&rf) && zero(&rg) {
        return Ok(LinePointOutcome::PlaneOnX {
            basis: vec![ProjectivePoint::from_rat(u)?, ProjectivePoint::from_rat(v)?],
        });
    }
    // proportionality of the two restrictions is the precondition that the
    // line lies on a pencil member
    let proportional = &rf.0 * &rg.1 == &rf.1 * &rg.0
        && &rf.0 * &rg.2 == &rf.2 * &rg.0
        && &rf.1 * &rg.2 == &rf.2 * &rg.1;
    if !proportional {
        return Err(Error::Precondition(
            "line does not lie on a pencil member".into(),
        ));
    }
    let (a, b, c) = if zero(&rf) { rg } else { rf };
    // roots of a s^2 + b st + c t^2 on the line s*u + t*v
    let line_point = |s: &Rat, t: &Rat| -> Result<ProjectivePoint> {
        let coords: Vec<Rat> = u
            .iter()
            .zip(v)
            .map(|(ui, vi)| s * ui + t * vi)
            .collect();
        ProjectivePoint::from_rat(&coords)
    };
    if a.is_zero() {
        // t = 0 is a root; the other root is (s:t) = (-c : b) when b != 0
        let mut pts = vec![line_point(&rat_int(1), &Rat::zero())?];
        if !b.is_zero() {
            let other = line_point(&(-&c), &b)?;
            if other != pts[0] {
                pts.push(other);
            }
        }
        return Ok(LinePointOutcome::Rational(pts));
    }
    let disc = &b * &b - rat_int(4) * &a * &c;
    if let Some(root) = crate::arith::sqrt_rat(&disc) {
        let two_a = rat_int(2) * &a;
        let x1 = (-&b + &root) / &two_a;
        let x2 = (-&b - &root) / &two_a;
        let mut pts = vec![line_point(&x1, &rat_int(1))?];
        let p2 = line_point(&x2, &rat_int(1))?;
        if p2 != pts[0] {
            pts.push(p2);
        }
        pts.sort_by(|p, q| p.coords().cmp(q.coords()));
        return Ok(LinePointOutcome::Rational(pts));
    }
    let qp = QuadraticPoint {
        b: &b / &a,
        c: &c / &a,
        v0: v.to_vec(),
        v1: u.to_vec(),
    };
    debug_assert!(qp.satisfies(f)? && qp.satisfies(g)?);
    Ok(LinePointOutcome::Quadratic(qp))
}
