//! The pencil λf + μg: determinant binary form, smoothness, rank
//! stratification, member construction, Mordell's real signature walk,
//! p-adic nonsquare-determinant members, searches for members with
//! prescribed hyperbolic content, and the hyperelliptic discriminant curve.

use crate::arith::{int, is_square_rat, rat_to_string, sqrt_rat, Int, Rat};
use crate::error::{Error, Result};
use crate::linalg;
use crate::localglobal::{
    global_witt_index, local_witt_index, square_class, GlobalWittReport, Place, WittIndexResult,
};
use crate::poly::{
    is_squarefree, isolate_real_roots, kronecker_factor_upto, rational_roots, IntPoly, DEGREE_CAP,
};
use crate::qform::{QuadraticForm, RealSignature};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A point (λ:μ) of ℙ¹(Q) in normalized coordinates: coprime integers with
/// λ > 0, or λ = 0 and μ = 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MemberParameter {
    lambda: Int,
    mu: Int,
}

impl MemberParameter {
    pub fn new(lambda: Int, mu: Int) -> Result<Self> {
        if lambda.is_zero() && mu.is_zero() {
            return Err(Error::Input("parameter (0:0) is not projective".into()));
        }
        let g = lambda.gcd(&mu);
        let (mut lambda, mut mu) = (lambda / &g, mu / &g);
        let leading_negative = if lambda.is_zero() {
            mu.is_negative()
        } else {
            lambda.is_negative()
        };
        if leading_negative {
            lambda = -lambda;
            mu = -mu;
        }
        Ok(MemberParameter { lambda, mu })
    }

    /// The affine parameter t, as (1:t) normalized.
    pub fn from_t(t: &Rat) -> Self {
        MemberParameter::new(t.denom().clone(), t.numer().clone()).expect("denominator nonzero")
    }

    /// (0:1), the member g.
    pub fn infinity() -> Self {
        MemberParameter {
            lambda: Int::zero(),
            mu: Int::one(),
        }
    }

    pub fn lambda(&self) -> &Int {
        &self.lambda
    }

    pub fn mu(&self) -> &Int {
        &self.mu
    }

    /// μ/λ when λ ≠ 0.
    pub fn to_t(&self) -> Option<Rat> {
        if self.lambda.is_zero() {
            None
        } else {
            Some(Rat::new(self.mu.clone(), self.lambda.clone()))
        }
    }

    pub fn height(&self) -> Int {
        self.lambda.abs().max(self.mu.abs())
    }
}

impl fmt::Display for MemberParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.lambda, self.mu)
    }
}

impl Serialize for MemberParameter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            lambda: String,
            mu: String,
        }
        Repr {
            lambda: self.lambda.to_string(),
            mu: self.mu.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MemberParameter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            lambda: String,
            mu: String,
        }
        let r = Repr::deserialize(d)?;
        let lambda: Int = r.lambda.parse().map_err(D::Error::custom)?;
        let mu: Int = r.mu.parse().map_err(D::Error::custom)?;
        MemberParameter::new(lambda, mu).map_err(D::Error::custom)
    }
}

/// Deterministic enumeration of ℙ¹(Q) parameters by increasing height
/// max(|λ|,|μ|): within each height, finite parameters t = a/b ordered by
/// denominator b then by |a| (positive before negative), with (0:1)
/// appended after height 1.
pub fn parameters_up_to_height(h: i64) -> Vec<MemberParameter> {
    let mut out = Vec::new();
    for height in 1..=h {
        for b in 1..=height {
            for a_abs in 0..=height {
                for sign in [1i64, -1] {
                    if a_abs == 0 && sign < 0 {
                        continue;
                    }
                    if a_abs.max(b) != height || a_abs.gcd(&b) != 1 {
                        continue;
                    }
                    out.push(MemberParameter::new(int(b), int(sign * a_abs)).unwrap());
                }
            }
        }
        if height == 1 {
            out.push(MemberParameter::infinity());
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmoothnessDiagnosis {
    Smooth,
    IdenticallyZero,
    DegreeDrop,
    RepeatedRoot,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Smoothness {
    pub smooth: bool,
    pub diagnosis: SmoothnessDiagnosis,
}

/// The pencil λf + μg with its exact determinant binary form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil {
    n: usize,
    f: QuadraticForm,
    g: QuadraticForm,
    /// det_coeffs[j] is the coefficient of λ^{n+1-j} μ^j in det(λf+μg)
    det_coeffs: Vec<Rat>,
}

/// Interpolation-based construction of det(λf+μg), with the expansion
/// re-verified at extra evaluation points.
pub fn build_pencil(f: QuadraticForm, g: QuadraticForm) -> Result<Pencil> {
    let dim = f.dim();
    if g.dim() != dim {
        return Err(Error::Dimension(format!(
            "pencil of forms in {} and {} variables",
            dim,
            g.dim()
        )));
    }
    if dim > DEGREE_CAP {
        return Err(Error::DegreeCap(dim, DEGREE_CAP));
    }
    let n = dim - 1;
    // det(f + t g) = sum_j c_j t^j at t = 0..n+1: Vandermonde solve
    let deg = n + 1;
    let mut rows = Vec::with_capacity(deg + 1);
    let mut vals = Vec::with_capacity(deg + 1);
    for i in 0..=deg as i64 {
        let t = Rat::from_integer(int(i));
        let member = f.linear_combination(&Rat::one(), &g, &t)?;
        vals.push(member.det());
        let mut row = Vec::with_capacity(deg + 1);
        let mut p = Rat::one();
        for _ in 0..=deg {
            row.push(p.clone());
            p *= &t;
        }
        rows.push(row);
    }
    let det_coeffs = linalg::solve(&rows, &vals).expect("Vandermonde is invertible");
    let pencil = Pencil {
        n,
        f,
        g,
        det_coeffs,
    };
    // re-verify the expansion away from the interpolation nodes
    for (lam, mu) in [(0i64, 1i64), (-1, 2), (2, -3)] {
        let lam = Rat::from_integer(int(lam));
        let mu = Rat::from_integer(int(mu));
        let direct = pencil
            .f
            .linear_combination(&lam, &pencil.g, &mu)?
            .det();
        debug_assert_eq!(pencil.eval_det(&lam, &mu), direct);
        if pencil.eval_det(&lam, &mu) != direct {
            return Err(Error::Precondition(
                "determinant form interpolation check failed".into(),
            ));
        }
    }
    Ok(pencil)
}

impl Pencil {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn f(&self) -> &QuadraticForm {
        &self.f
    }

    pub fn g(&self) -> &QuadraticForm {
        &self.g
    }

    pub fn det_coeffs(&self) -> &[Rat] {
        &self.det_coeffs
    }

    /// det(λf + μg) evaluated exactly.
    pub fn eval_det(&self, lam: &Rat, mu: &Rat) -> Rat {
        let deg = self.n + 1;
        let mut s = Rat::zero();
        let mut lam_pow = Rat::one();
        let mut pows_mu = Vec::with_capacity(deg + 1);
        let mut mp = Rat::one();
        for _ in 0..=deg {
            pows_mu.push(mp.clone());
            mp *= mu;
        }
        for j in (0..=deg).rev() {
            // lam_pow = lam^{deg-j}
            s += &self.det_coeffs[j] * &lam_pow * &pows_mu[j];
            lam_pow *= lam;
        }
        s
    }

    pub fn det_at(&self, p: &MemberParameter) -> Rat {
        self.eval_det(
            &Rat::from_integer(p.lambda.clone()),
            &Rat::from_integer(p.mu.clone()),
        )
    }

    /// λf + μg at a parameter.
    pub fn member(&self, p: &MemberParameter) -> QuadraticForm {
        self.f
            .linear_combination(
                &Rat::from_integer(p.lambda.clone()),
                &self.g,
                &Rat::from_integer(p.mu.clone()),
            )
            .expect("dims equal by construction")
    }

    /// Chart λ=1: det(f + t g) as a primitive integer polynomial (positive
    /// scalar multiple of the rational chart polynomial).
    pub fn chart_poly(&self) -> IntPoly {
        clear_denoms(&self.det_coeffs)
    }

    /// Chart μ=1: det(t f + g), coefficients reversed.
    pub fn chart_poly_mu(&self) -> IntPoly {
        let rev: Vec<Rat> = self.det_coeffs.iter().rev().cloned().collect();
        clear_denoms(&rev)
    }

    /// Reid's criterion: X = {f = g = 0} is a smooth complete intersection
    /// iff det(λf+μg) is nonzero and squarefree as a binary form.
    pub fn is_smooth(&self) -> Smoothness {
        let p = self.chart_poly();
        if p.is_zero() {
            return Smoothness {
                smooth: false,
                diagnosis: SmoothnessDiagnosis::IdenticallyZero,
            };
        }
        // multiplicity of the root (0:1) is the degree drop in this chart
        let drop = self.n + 1 - p.degree().unwrap();
        if drop >= 2 {
            return Smoothness {
                smooth: false,
                diagnosis: SmoothnessDiagnosis::DegreeDrop,
            };
        }
        if !is_squarefree(&p).expect("nonzero") {
            return Smoothness {
                smooth: false,
                diagnosis: SmoothnessDiagnosis::RepeatedRoot,
            };
        }
        Smoothness {
            smooth: true,
            diagnosis: SmoothnessDiagnosis::Smooth,
        }
    }

    fn require_smooth(&self) -> Result<()> {
        let s = self.is_smooth();
        if !s.smooth {
            return Err(Error::Precondition(format!(
                "pencil is not smooth: {:?}",
                s.diagnosis
            )));
        }
        Ok(())
    }

    /// Rational rank-drop members plus degree bookkeeping for the
    /// irrational ones.
    pub fn stratify(&self) -> Result<StratificationReport> {
        let p = self.chart_poly();
        if p.is_zero() {
            return Ok(StratificationReport {
                identically_zero: true,
                rational: vec![],
                irrational_factor_degrees: vec![],
                unresolved_degree: 0,
            });
        }
        let mut rational = Vec::new();
        let mut q = p.primitive();
        for root in rational_roots(&p)? {
            let param = MemberParameter::from_t(&root);
            let rank = self.member(&param).rank();
            rational.push(Stratum {
                parameter: param,
                rank,
            });
            // strip the linear factor completely
            let lin = IntPoly::new(vec![-root.numer().clone(), root.denom().clone()]);
            while let Some(next) = q.exact_div(&lin) {
                q = next;
            }
        }
        if self.det_coeffs[self.n + 1].is_zero() {
            let param = MemberParameter::infinity();
            let rank = self.member(&param).rank();
            rational.push(Stratum {
                parameter: param,
                rank,
            });
        }
        // irrational roots: peel off low-degree factors, record degrees
        let mut irrational_factor_degrees = Vec::new();
        while q.degree().map_or(false, |d| d >= 2) {
            match kronecker_factor_upto(&q, 3)? {
                Some(fac) => {
                    irrational_factor_degrees.push(fac.degree().unwrap());
                    q = q.exact_div(&fac).expect("kronecker factor divides");
                }
                None => break,
            }
        }
        Ok(StratificationReport {
            identically_zero: false,
            rational,
            irrational_factor_degrees,
            unresolved_degree: q.degree().unwrap_or(0),
        })
    }

    /// Mordell's walk: a nonsingular member with |positives − negatives| ≤ 1,
    /// found by sampling one rational parameter in each component of
    /// ℙ¹(R) minus the real roots of the determinant form.
    pub fn real_half_hyperbolic_member(&self) -> Result<(MemberParameter, RealSignature)> {
        self.require_smooth()?;
        let p = self.chart_poly();
        let ivs = isolate_real_roots(&p)?;
        let mut candidates: Vec<MemberParameter> = Vec::new();
        if ivs.is_empty() {
            candidates.push(MemberParameter::from_t(&Rat::zero()));
        } else {
            let two = Rat::from_integer(int(2));
            candidates.push(MemberParameter::from_t(&(&ivs[0].lo - Rat::one())));
            for w in ivs.windows(2) {
                // p has no roots in [w[0].hi, w[1].lo]
                let mid = (&w[0].hi + &w[1].lo) / &two;
                candidates.push(MemberParameter::from_t(&mid));
            }
            candidates.push(MemberParameter::from_t(
                &(&ivs[ivs.len() - 1].hi + Rat::one()),
            ));
        }
        candidates.push(MemberParameter::infinity());
        for c in candidates {
            if self.det_at(&c).is_zero() {
                continue;
            }
            let sig = self.member(&c).signature();
            if sig.spread() <= 1 {
                return Ok((c, sig));
            }
        }
        // Prop. mordell is unconditional on smooth pencils
        panic!(
            "signature walk found no member of spread <= 1 on a smooth pencil: \
             f = {:?}, g = {:?}, det coefficients = {:?}",
            self.f, self.g, self.det_coeffs
        );
    }

    /// A nonsingular member whose determinant is a nonsquare in Q_p.
    /// Requires the determinant form to be squarefree with a rational
    /// projective root (the hypothesis under which the paper's valuation
    /// argument applies).
    pub fn padic_nonsquare_det_member(&self, v: &Place) -> Result<MemberParameter> {
        let Place::Finite(prime) = v else {
            return Err(Error::Domain(
                "nonsquare-determinant member needs a finite place".into(),
            ));
        };
        let p = self.chart_poly();
        if p.is_zero() || !is_squarefree(&p)? {
            return Err(Error::Precondition(
                "determinant form must be nonzero and squarefree".into(),
            ));
        }
        let mut roots = rational_roots(&p)?;
        let has_infinite_root = self.det_coeffs[self.n + 1].is_zero();
        if roots.is_empty() && !has_infinite_root {
            return Err(Error::Precondition(
                "determinant form has no rational root".into(),
            ));
        }
        let check = |param: &MemberParameter| -> Option<MemberParameter> {
            let d = self.det_at(param);
            if d.is_zero() {
                return None;
            }
            if !square_class(&d, v).expect("nonzero").is_trivial() {
                Some(param.clone())
            } else {
                None
            }
        };
        for param in parameters_up_to_height(50) {
            if let Some(w) = check(&param) {
                return Ok(w);
            }
        }
        // valuation fallback: parameters p-adically close to a simple root
        // give determinant values of controllable valuation parity
        if roots.is_empty() {
            roots.push(Rat::zero()); // perturb around 0 toward the root at infinity
        }
        let mut pk = Rat::from_integer(prime.clone());
        for _ in 0..12 {
            for r in &roots {
                for t in [r + &pk, r - &pk] {
                    if let Some(w) = check(&MemberParameter::from_t(&t)) {
                        return Ok(w);
                    }
                }
            }
            pk *= Rat::from_integer(prime.clone());
        }
        Err(Error::Precondition(
            "exhausted search for a nonsquare-determinant member".into(),
        ))
    }

    /// First member (in enumeration order, height ≤ bound) with local Witt
    /// index ≥ r at v; None means "not found within bound".
    pub fn member_with_local_witt(
        &self,
        v: &Place,
        r: usize,
        height_bound: i64,
    ) -> Result<Option<(MemberParameter, WittIndexResult)>> {
        self.require_smooth()?;
        for param in parameters_up_to_height(height_bound) {
            if self.det_at(&param).is_zero() {
                continue;
            }
            let w = local_witt_index(&self.member(&param), v)?;
            if w.index >= r {
                return Ok(Some((param, w)));
            }
        }
        Ok(None)
    }

    /// Same scan against the global Witt index.
    pub fn member_with_global_witt(
        &self,
        r: usize,
        height_bound: i64,
    ) -> Result<Option<(MemberParameter, GlobalWittReport)>> {
        self.require_smooth()?;
        if 2 * r > self.n + 1 {
            return Ok(None);
        }
        for param in parameters_up_to_height(height_bound) {
            if self.det_at(&param).is_zero() {
                continue;
            }
            let w = global_witt_index(&self.member(&param))?;
            if w.index >= r {
                return Ok(Some((param, w)));
            }
        }
        Ok(None)
    }

    /// The discriminant hyperelliptic model y² = sign · det(t·f + g), as a
    /// primitive-up-to-squares integral polynomial (chart μ = 1).
    pub fn discriminant_curve(&self, sign: i8) -> Result<HyperellipticModel> {
        let coeffs: Vec<Rat> = self.det_coeffs.iter().rev().cloned().collect();
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroPolynomial);
        }
        // clear denominators by a square so y can absorb the scaling
        let mut l = Int::one();
        for c in &coeffs {
            l = l.lcm(c.denom());
        }
        let l2 = &l * &l;
        let mut ints: Vec<Int> = coeffs
            .iter()
            .map(|c| c.numer() * (&l2 / c.denom()))
            .collect();
        if sign < 0 {
            for c in &mut ints {
                *c = -c.clone();
            }
        }
        let mut poly = IntPoly::new(ints);
        // divide out the largest square factor of the content
        let content = poly.content();
        let mut s = Int::one();
        for (q, e) in crate::arith::factor(&content) {
            for _ in 0..(e / 2) {
                s *= &q;
            }
        }
        let s2 = &s * &s;
        poly = IntPoly::new(poly.coeffs().iter().map(|c| c / &s2).collect());
        let degree = poly.degree().unwrap();
        let squarefree = is_squarefree(&poly)?;
        Ok(HyperellipticModel {
            sign,
            degree,
            genus_arithmetic: if squarefree {
                Some((degree - 1) / 2)
            } else {
                None
            },
            squarefree,
            poly,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Stratum {
    pub parameter: MemberParameter,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct StratificationReport {
    pub identically_zero: bool,
    pub rational: Vec<Stratum>,
    /// degrees of irreducible-over-the-samples factors peeled off by the
    /// bounded Kronecker search (each ≥ 2)
    pub irrational_factor_degrees: Vec<usize>,
    /// degree of the part the bounded search could not split further
    pub unresolved_degree: usize,
}

/// y² = sign · det(t·f + g) as an exact integral model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperellipticModel {
    pub sign: i8,
    pub poly: IntPoly,
    pub degree: usize,
    /// ⌊(degree−1)/2⌋, only meaningful for squarefree models
    pub genus_arithmetic: Option<usize>,
    pub squarefree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvePointReport {
    /// points (t, ±y) with y ≠ 0, t of bounded height
    pub affine: Vec<(String, String)>,
    /// rational ramification points (t, 0)
    pub ramification: Vec<String>,
    /// rational point(s) at infinity (odd degree)
    pub infinity: bool,
}

/// Bounded search for rational points on y² = m.poly(t).
pub fn curve_point_search(m: &HyperellipticModel, height_bound: i64) -> Result<CurvePointReport> {
    if !m.squarefree {
        return Err(Error::Precondition("model is not squarefree".into()));
    }
    let mut affine = Vec::new();
    for b in 1..=height_bound {
        for a in -height_bound..=height_bound {
            if a.gcd(&b) != 1 {
                continue;
            }
            let t = crate::arith::rat(a, b);
            let v = m.poly.eval_rat(&t);
            if v.is_zero() {
                continue; // ramification handled exactly below
            }
            if is_square_rat(&v) {
                let y = sqrt_rat(&v).unwrap();
                affine.push((rat_to_string(&t), rat_to_string(&y)));
                affine.push((rat_to_string(&t), rat_to_string(&(-y))));
            }
        }
    }
    let ramification = rational_roots(&m.poly)?
        .iter()
        .map(rat_to_string)
        .collect();
    Ok(CurvePointReport {
        affine,
        ramification,
        infinity: m.degree % 2 == 1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OddDegreeOutcome {
    Yes(OddDegreeWitness),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OddDegreeWitness {
    /// odd model degree: a rational point at infinity
    OddDegreeAtInfinity,
    /// a rational ramification point
    RationalRoot(Rat),
    /// an odd-degree ramification point from an odd-degree factor
    OddFactor(IntPoly),
}

/// Detects an odd-degree point on the hyperelliptic model; never claims
/// nonexistence.
pub fn odd_degree_point_detector(m: &HyperellipticModel) -> Result<OddDegreeOutcome> {
    if !m.squarefree {
        return Err(Error::Precondition("model is not squarefree".into()));
    }
    if m.degree % 2 == 1 {
        return Ok(OddDegreeOutcome::Yes(OddDegreeWitness::OddDegreeAtInfinity));
    }
    let roots = rational_roots(&m.poly)?;
    if let Some(r) = roots.first() {
        return Ok(OddDegreeOutcome::Yes(OddDegreeWitness::RationalRoot(
            r.clone(),
        )));
    }
    let mut q = m.poly.primitive();
    while q.degree().map_or(false, |d| d >= 2) {
        match kronecker_factor_upto(&q, 3)? {
            Some(fac) => {
                if fac.degree().unwrap() % 2 == 1 {
                    return Ok(OddDegreeOutcome::Yes(OddDegreeWitness::OddFactor(fac)));
                }
                q = q.exact_div(&fac).expect("factor divides");
            }
            None => break,
        }
    }
    Ok(OddDegreeOutcome::Unknown)
}

/// Primitive integer polynomial proportional (by a positive rational) to
/// the polynomial with the given rational coefficients.
fn clear_denoms(coeffs: &[Rat]) -> IntPoly {
    let mut l = Int::one();
    for c in coeffs {
        l = l.lcm(c.denom());
    }
    IntPoly::new(coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect()).primitive()
}

// JSON: {"n": n, "f": form, "g": form}
impl Serialize for Pencil {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            n: usize,
            f: &'a QuadraticForm,
            g: &'a QuadraticForm,
        }
        Repr {
            n: self.n,
            f: &self.f,
            g: &self.g,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pencil {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            f: QuadraticForm,
            g: QuadraticForm,
        }
        let r = Repr::deserialize(d)?;
        if r.f.dim() != r.n + 1 {
            return Err(D::Error::custom(format!(
                "forms have {} variables but n = {}",
                r.f.dim(),
                r.n
            )));
        }
        build_pencil(r.f, r.g).map_err(D::Error::custom)
    }
}
