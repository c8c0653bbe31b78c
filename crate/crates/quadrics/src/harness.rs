//! Verification campaigns: seeded instance generation, per-theorem checks,
//! and machine-readable reports.

use crate::arith::{rat, Rat};
use crate::error::{Error, Result};
use crate::fforacle;
use crate::localglobal::{global_witt_index, local_witt_index, Place};
use crate::pencil::{build_pencil, odd_degree_point_detector, OddDegreeOutcome, Pencil};
use crate::qform::QuadraticForm;
use crate::search;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fmt;
use std::time::Instant;

pub const SCHEMA: &str = "pencil-quadrics/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    P3QuadPoint,
    P4QuadPoint,
    P5GlobalQuad,
    P5IyerParimala,
    P6ConicLocal,
    P7Local3h,
    P7Global3h,
    MordellReal,
    HasseSubform,
    FfCensus,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::P3QuadPoint,
        TheoremId::P4QuadPoint,
        TheoremId::P5GlobalQuad,
        TheoremId::P5IyerParimala,
        TheoremId::P6ConicLocal,
        TheoremId::P7Local3h,
        TheoremId::P7Global3h,
        TheoremId::MordellReal,
        TheoremId::HasseSubform,
        TheoremId::FfCensus,
    ];

    pub fn parse(s: &str) -> Result<TheoremId> {
        Self::ALL
            .into_iter()
            .find(|t| t.to_string() == s)
            .ok_or_else(|| Error::Input(format!("unknown theorem id {s:?}")))
    }

    /// Theorems of unconditional existence: every non-skipped instance must
    /// be witnessed, anything else fails the campaign.
    pub fn must_witness(&self) -> bool {
        matches!(
            self,
            TheoremId::MordellReal | TheoremId::P7Local3h | TheoremId::FfCensus
        )
    }

    fn default_n(&self) -> usize {
        match self {
            TheoremId::P3QuadPoint => 3,
            TheoremId::P4QuadPoint | TheoremId::FfCensus => 4,
            TheoremId::P5GlobalQuad | TheoremId::P5IyerParimala => 5,
            TheoremId::P6ConicLocal => 6,
            TheoremId::P7Local3h | TheoremId::P7Global3h => 7,
            TheoremId::MordellReal | TheoremId::HasseSubform => 4,
        }
    }

    fn default_places(&self) -> Vec<Place> {
        match self {
            TheoremId::P6ConicLocal => vec![Place::finite(11), Place::finite(13)],
            TheoremId::P7Local3h => {
                vec![Place::finite(2), Place::finite(3), Place::finite(5)]
            }
            TheoremId::FfCensus => vec![Place::finite(3), Place::finite(5), Place::finite(7)],
            _ => vec![
                Place::finite(2),
                Place::finite(3),
                Place::finite(5),
                Place::finite(7),
            ],
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremId::P3QuadPoint => "p3-quad-point",
            TheoremId::P4QuadPoint => "p4-quad-point",
            TheoremId::P5GlobalQuad => "p5-global-quad",
            TheoremId::P5IyerParimala => "p5-iyer-parimala",
            TheoremId::P6ConicLocal => "p6-conic-local",
            TheoremId::P7Local3h => "p7-local-3h",
            TheoremId::P7Global3h => "p7-global-3h",
            TheoremId::MordellReal => "mordell-real",
            TheoremId::HasseSubform => "hasse-subform",
            TheoremId::FfCensus => "ff-census",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignSpec {
    pub theorem_id: TheoremId,
    pub n: usize,
    pub samples: usize,
    pub coeff_bound: i64,
    pub height_bound: i64,
    pub places: Vec<Place>,
    pub seed: u64,
}

impl CampaignSpec {
    pub fn new(theorem_id: TheoremId, samples: usize, seed: u64) -> CampaignSpec {
        CampaignSpec {
            theorem_id,
            n: theorem_id.default_n(),
            samples,
            coeff_bound: 5,
            height_bound: 50,
            places: theorem_id.default_places(),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(3..=7).contains(&self.n) {
            return Err(Error::Input(format!("n = {} outside [3,7]", self.n)));
        }
        if self.coeff_bound < 1 || self.height_bound < 1 {
            return Err(Error::Input("bounds must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    Witnessed,
    NotFoundWithinBound,
    Skipped { reason: String },
    Refuted { certificate: Value },
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub index: usize,
    pub instance: Value,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub witness: Value,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub witnessed: usize,
    pub not_found: usize,
    pub skipped: usize,
    pub refuted: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    pub per_instance_ms: Vec<u128>,
    pub total_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub spec: CampaignSpec,
    pub instances: Vec<InstanceReport>,
    pub summary: Summary,
    /// excluded from determinism comparisons
    pub timings: Timings,
}

impl VerificationReport {
    /// A must-witness theorem with any non-witnessed, non-skipped instance,
    /// or any refutation, fails the campaign.
    pub fn campaign_failed(&self) -> bool {
        self.summary.refuted > 0
            || (self.spec.theorem_id.must_witness() && self.summary.not_found > 0)
    }

    /// Report JSON with the timings field removed, for byte-identical
    /// comparisons.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).unwrap();
        v.as_object_mut().unwrap().remove("timings");
        serde_json::to_string_pretty(&v).unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    HasRationalPoint,
}

fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&index.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

const MAX_REJECTIONS: u64 = 10_000;

/// Rejection-samples integer forms until the pencil is smooth (squarefree
/// determinant form of full degree); deterministic per seed.
pub fn generate_smooth_pencil(
    n: usize,
    coeff_bound: i64,
    seed: u64,
    constraints: &[Constraint],
) -> Result<Pencil> {
    let mut rng = instance_rng(seed, 0);
    generate_with_rng(n, coeff_bound, &mut rng, constraints)
}

pub fn generate_with_rng(
    n: usize,
    coeff_bound: i64,
    rng: &mut ChaCha8Rng,
    constraints: &[Constraint],
) -> Result<Pencil> {
    if !(3..=7).contains(&n) {
        return Err(Error::Input(format!("n = {n} outside [3,7]")));
    }
    let through_point = constraints.contains(&Constraint::HasRationalPoint);
    for _ in 0..MAX_REJECTIONS {
        let f = random_form(n + 1, coeff_bound, rng, through_point.then_some(1))?;
        let g = random_form(n + 1, coeff_bound, rng, through_point.then_some(2))?;
        let pencil = build_pencil(f, g)?;
        if pencil.is_smooth().smooth {
            return Ok(pencil);
        }
    }
    Err(Error::Generator(MAX_REJECTIONS))
}

/// Random integral form with monomial coefficients in [-bound, bound].
/// With `x0_partner = Some(j)`: zero x0^2 coefficient and x0-part exactly
/// x0*x_j, so e0 lies on the quadric and distinct partners for f and g keep
/// the x0-rows independent.
fn random_form(
    dim: usize,
    bound: i64,
    rng: &mut ChaCha8Rng,
    x0_partner: Option<usize>,
) -> Result<QuadraticForm> {
    let mut coeffs: Vec<(usize, usize, Rat)> = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            let c = if i == 0 {
                match x0_partner {
                    Some(partner) => i64::from(j == partner),
                    None => rng.gen_range(-bound..=bound),
                }
            } else {
                rng.gen_range(-bound..=bound)
            };
            if c != 0 {
                coeffs.push((i, j, rat(c, 1)));
            }
        }
    }
    QuadraticForm::from_monomial_coeffs(dim, &coeffs)
}

/// Runs a campaign: per-instance deterministic generation, theorem-specific
/// verification, and an assembled report.
pub fn verify(spec: &CampaignSpec) -> Result<VerificationReport> {
    spec.validate()?;
    let total_start = Instant::now();
    let mut instances = Vec::with_capacity(spec.samples);
    let mut per_instance_ms = Vec::with_capacity(spec.samples);
    let mut summary = Summary::default();
    for index in 0..spec.samples {
        let start = Instant::now();
        let mut rng = instance_rng(spec.seed, index as u64 + 1);
        let (instance, outcome, witness) = run_instance(spec, &mut rng)?;
        match &outcome {
            Outcome::Witnessed => summary.witnessed += 1,
            Outcome::NotFoundWithinBound => summary.not_found += 1,
            Outcome::Skipped { .. } => summary.skipped += 1,
            Outcome::Refuted { .. } => summary.refuted += 1,
        }
        instances.push(InstanceReport {
            index,
            instance,
            outcome,
            witness,
        });
        per_instance_ms.push(start.elapsed().as_millis());
    }
    Ok(VerificationReport {
        schema: SCHEMA,
        spec: spec.clone(),
        instances,
        summary,
        timings: Timings {
            per_instance_ms,
            total_ms: total_start.elapsed().as_millis(),
        },
    })
}

fn run_instance(spec: &CampaignSpec, rng: &mut ChaCha8Rng) -> Result<(Value, Outcome, Value)> {
    match spec.theorem_id {
        TheoremId::MordellReal => mordell_instance(spec, rng),
        TheoremId::P3QuadPoint | TheoremId::P4QuadPoint => local_quad_instance(spec, rng, 2),
        TheoremId::P5GlobalQuad => global_quad_instance(spec, rng),
        TheoremId::P5IyerParimala => iyer_parimala_instance(spec, rng),
        TheoremId::P6ConicLocal => conic_local_instance(spec, rng),
        TheoremId::P7Local3h => local_3h_instance(spec, rng),
        TheoremId::P7Global3h => global_3h_instance(spec, rng),
        TheoremId::HasseSubform => hasse_subform_instance(spec, rng),
        TheoremId::FfCensus => ff_census_instance(spec, rng),
    }
}

fn mordell_instance(spec: &CampaignSpec, rng: &mut ChaCha8Rng) -> Result<(Value, Outcome, Value)> {
    let pencil = generate_with_rng(spec.n, spec.coeff_bound, rng, &[])?;
    let (param, sig) = pencil.real_half_hyperbolic_member()?;
    // independent re-verification of the witness
    let check = pencil.member(&param).signature();
    if check.spread() > 1 {
        return Ok((
            json!(pencil),
            Outcome::Refuted {
                certificate: json!({"parameter": param, "signature": check}),
            },
            Value::Null,
        ));
    }
    Ok((
        json!(pencil),
        Outcome::Witnessed,
        json!({"parameter": param, "signature": sig}),
    ))
}

/// A member with local Witt index >= r at every requested place.
fn local_quad_instance(
    spec: &CampaignSpec,
    rng: &mut ChaCha8Rng,
    r: usize,
) -> Result<(Value, Outcome, Value)> {
    let pencil = generate_with_rng(spec.n, spec.coeff_bound, rng, &[])?;
    let mut per_place = Vec::new();
    for place in &spec.places {
        match pencil.member_with_local_witt(place, r, spec.height_bound)? {
            Some((param, w)) => {
                per_place.push(json!({"place": place, "parameter": param, "witt": w}))
            }
            None => {
                return Ok((
                    json!(pencil),
                    Outcome::NotFoundWithinBound,
                    json!({"failed_place": place, "found": per_place}),
                ));
            }
        }
    }
    Ok((json!(pencil), Outcome::Witnessed, json!(per_place)))
}

/// Member with global Witt >= 2, then an explicit quadratic point from a
/// line on it, re-verified symbolically against both forms.
fn global_quad_instance(
    spec: &CampaignSpec,
    rng: &mut ChaCha8Rng,
) -> Result<(Value, Outcome, Value)> {
    let pencil = generate_with_rng(spec.n, spec.coeff_bound, rng, &[])?;
    let Some((param, report)) = pencil.member_with_global_witt(2, spec.height_bound)? else {
        return Ok((json!(pencil), Outcome::NotFoundWithinBound, Value::Null));
    };
    let member = pencil.member(&param);
    let mut plane = None;
    for bound in [2, 4, 8] {
        plane = search::isotropic_plane(&member, bound)?;
        if plane.is_some() {
            break;
        }
    }
    let Some((u, v)) = plane else {
        return Ok((
            json!(pencil),
            Outcome::NotFoundWithinBound,
            json!({"parameter": param, "global": report, "missing": "isotropic plane"}),
        ));
    };
    let outcome = search::quadratic_point_from_line(pencil.f(), pencil.g(), &u.to_rat(), &v.to_rat())?;
    let verified = match &outcome {
        search::LinePointOutcome::Quadratic(qp) => {
            qp.satisfies(pencil.f())? && qp.satisfies(pencil.g())?
        }
        search::LinePointOutcome::Rational(pts) => {
            let mut ok = !pts.is_empty();
            for p in pts {
                ok = ok
                    && pencil.f().evaluate(&p.to_rat())?.is_zero()
                    && pencil.g().evaluate(&p.to_rat())?.is_zero();
            }
            ok
        }
        search::LinePointOutcome::PlaneOnX { basis } => {
            let mut ok = true;
            for p in basis {
                ok = ok
                    && pencil.f().evaluate(&p.to_rat())?.is_zero()
                    && pencil.g().evaluate(&p.to_rat())?.is_zero();
            }
            ok
        }
    };
    if !verified {
        return Ok((
            json!(pencil),
            Outcome::Refuted {
                certificate: json!({"parameter": param, "point": outcome}),
            },
            Value::Null,
        ));
    }
    Ok((
        json!(pencil),
        Outcome::Witnessed,
        json!({
            "parameter": param,
            "global": report,
            "plane": [u, v],
            "point": outcome,
        }),
    ))
}

/// Odd-degree point hypothesis on the discriminant curve, local line tests,
/// then bounded rational point search.
fn iyer_parimala_instance(
    spec: &CampaignSpec,
    rng: &mut ChaCha8Rng,
) -> Result<(Value, Outcome, Value)> {
    let pencil = generate_with_rng(spec.n, spec.coeff_bound, rng, &[])?;
    let curve = pencil.discriminant_curve(-1)?;
    let hypothesis = match odd_degree_point_detector(&curve)? {
        OddDegreeOutcome::Yes(_) => true,
        OddDegreeOutcome::Unknown => false,
    };
    if !hypothesis {
        return Ok((
            json!(pencil),
            Outcome::Skipped {
                reason: "no odd-degree point detected on the discriminant curve".into(),
            },
            Value::Null,
        ));
    }
    for place in &spec.places {
        if pencil
            .member_with_local_witt(place, 2, spec.height_bound)?
            .is_none()
        {
            return Ok((
                json!(pencil),
                Outcome::Skipped {
                    reason: format!("no member with 2H at {place} within bound"),
                },
                Value::Null,
            ));
        }
    }
    let bound = spec.height_bound.min(6);
    let points = search::point_search(pencil.f(), pencil.g(), bound)?;
    match points.first() {
        Some(p) => Ok((
            json!(pencil),
            Outcome::Witnessed,
            json!({"point": p, "search_bound": bound}),
        )),
        None => Ok((json!(pencil), Outcome::NotFoundWithinBound, Value::Null)),
    }
}

/// Member with 3H over Q_p at places of good reduction with residue field
/// larger than 9.
fn conic_local_instance(
    spec: &CampaignSpec,
    rng: &mut ChaCha8Rng,
) -> Result<(Value, Outcome, Value)> {
    let pencil = generate_with_rng(spec.n, spec.coeff_bound, rng, &[])?;
    let mut per_place = Vec::new();
    let mut checked_any = false;
    for place in &spec.places {
        let Place::Finite(p) = place else { continue };
        let p: u64 = p.to_string().parse().map_err(|_| Error::Rank)?;
        if p <= 9 {
            per_place.push(json!({"place": place, "skipped": "residue field too small"}));
            continue;
        }
        let good = fforacle::verify_ff_propositions(&pencil, p)?.smooth_reduction;
        if !good {
            per_place.push(json!({"place": place, "skipped": "bad reduction"}));
            continue;
        }
        checked_any = true;
        match pencil.member_with_local_witt(place, 3, spec.height_bound)? {
            Some((param, w)) => {
                per_place.push(json!({"place": place, "parameter": param, "witt": w}))
            }
            None => {
                return Ok((
                    json!(pencil),
                    Outcome::NotFoundWithinBound,
                    json!({"failed_place": place, "found": per_place}),
                ));
            }
        }
    }
    if !checked_any {
        return Ok((
            json!(pencil),
            Outcome::Skipped {
                reason: "no place with good reduction and residue field > 9".into(),
            },
            json!(per_place),
        ));
    }
    Ok((json!(pencil), Outcome::Witnessed, json!(per_place)))
}

/// Rank-8 member with local Witt >= 3 at each place: nonsquare-determinant
/// member when one exists, else a direct scan.
fn local_3h_instance(
    spec: &CampaignSpec,
    rng: &mut ChaCha8Rng,
) -> Result<(Value, Outcome, Value)> {
    let pencil = generate_with_rng(
        spec.n,
        spec.coeff_bound,
        rng,
        &[Constraint::HasRationalPoint],
    )?;
    let mut per_place = Vec::new();
    for place in &spec.places {
        let fast_path = pencil.padic_nonsquare_det_member(place).ok().and_then(|param| {
            let member = pencil.member(&param);
            if member.rank() != spec.n + 1 {
                return None;
            }
            match local_witt_index(&member, place) {
                Ok(w) if w.index >= 3 => Some((param, w, "nonsquare-det")),
                _ => None,
            }
        });
        let found = match fast_path {
            Some(hit) => Some(hit),
            None => pencil
                .member_with_local_witt(place, 3, spec.height_bound)?
                .map(|(param, w)| (param, w, "scan")),
        };
        match found {
            Some((param, w, path)) => per_place.push(
                json!({"place": place, "parameter": param, "witt": w, "path": path}),
            ),
            None => {
                return Ok((
                    json!(pencil),
                    Outcome::NotFoundWithinBound,
                    json!({"failed_place": place, "found": per_place}),
                ));
            }
        }
    }
    Ok((json!(pencil), Outcome::Witnessed, json!(per_place)))
}

fn global_3h_instance(
    spec: &CampaignSpec,
    rng: &mut ChaCha8Rng,
) -> Result<(Value, Outcome, Value)> {
    let pencil = generate_with_rng(spec.n, spec.coeff_bound, rng, &[])?;
    match pencil.member_with_global_witt(3, spec.height_bound)? {
        Some((param, report)) => {
            // independent re-verification
            let check = global_witt_index(&pencil.member(&param))?;
            if check.index < 3 {
                return Ok((
                    json!(pencil),
                    Outcome::Refuted {
                        certificate: json!({"parameter": param, "recomputed": check}),
                    },
                    Value::Null,
                ));
            }
            Ok((
                json!(pencil),
                Outcome::Witnessed,
                json!({"parameter": param, "global": report}),
            ))
        }
        None => Ok((json!(pencil), Outcome::NotFoundWithinBound, Value::Null)),
    }
}

/// Global Witt index vs. local Witt indices and explicitly found isotropic
/// subspaces on a random nondegenerate form.
fn hasse_subform_instance(
    spec: &CampaignSpec,
    rng: &mut ChaCha8Rng,
) -> Result<(Value, Outcome, Value)> {
    let dim = spec.n + 1;
    let entries: Vec<i64> = (0..dim)
        .map(|_| loop {
            let c = rng.gen_range(-spec.coeff_bound..=spec.coeff_bound);
            if c != 0 {
                break c;
            }
        })
        .collect();
    let q = QuadraticForm::from_diagonal_i64(&entries);
    let report = global_witt_index(&q)?;
    // the global index never exceeds any local index
    for (place, w) in &report.local {
        if report.index > w.index {
            return Ok((
                json!({"entries": entries}),
                Outcome::Refuted {
                    certificate: json!({"global": report.index, "place": place, "local": w}),
                },
                Value::Null,
            ));
        }
    }
    // bounded explicit subspaces never beat the computed index
    let mut dim_found = 0usize;
    let mut subspace = Value::Null;
    if let Some(v) = search::isotropic_vector(&q, 8) {
        dim_found = 1;
        subspace = json!([v]);
        if let Some((u, w)) = search::isotropic_plane(&q, 4)? {
            dim_found = 2;
            subspace = json!([u, w]);
        }
    }
    if dim_found > report.index {
        return Ok((
            json!({"entries": entries}),
            Outcome::Refuted {
                certificate: json!({"global": report.index, "subspace": subspace}),
            },
            Value::Null,
        ));
    }
    Ok((
        json!({"entries": entries}),
        Outcome::Witnessed,
        json!({"global": report, "subspace_dim_found": dim_found, "subspace": subspace}),
    ))
}

/// Finite-field census at every odd place of good reduction.
fn ff_census_instance(
    spec: &CampaignSpec,
    rng: &mut ChaCha8Rng,
) -> Result<(Value, Outcome, Value)> {
    let pencil = generate_with_rng(spec.n, spec.coeff_bound, rng, &[])?;
    let mut reports = Vec::new();
    let mut any_good = false;
    for place in &spec.places {
        let Place::Finite(p) = place else { continue };
        let p: u64 = p.to_string().parse().map_err(|_| Error::Rank)?;
        if p == 2 {
            continue;
        }
        let rep = fforacle::verify_ff_propositions(&pencil, p)?;
        if rep.smooth_reduction {
            any_good = true;
            if rep.all_members_meet_floor == Some(false) {
                return Ok((
                    json!(pencil),
                    Outcome::Refuted {
                        certificate: json!(rep),
                    },
                    Value::Null,
                ));
            }
        }
        reports.push(rep);
    }
    if !any_good {
        return Ok((
            json!(pencil),
            Outcome::Skipped {
                reason: "bad reduction at every requested place".into(),
            },
            json!(reports),
        ));
    }
    Ok((json!(pencil), Outcome::Witnessed, json!(reports)))
}
