//! Acceptance criteria, one test per criterion, each printing a single
//! pass/fail line (visible with `cargo test --test acceptance -- --nocapture`).

use quadrics::arith::{rat, Rat};
use quadrics::fforacle::{
    enumerate_r_planes, verify_ff_propositions, FFField, FFForm, DEFAULT_BUDGET,
};
use quadrics::harness::{generate_smooth_pencil, verify, CampaignSpec, TheoremId};
use quadrics::localglobal::{
    critical_places, global_witt_index, hilbert_symbol, isotropy_verdicts_agree,
    local_witt_index, symbol_critical_places, Place,
};
use quadrics::qform::QuadraticForm;
use quadrics::search::{isotropic_plane, isotropic_vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn conclude(num: u32, name: &str, ok: bool, detail: &str) {
    println!(
        "acceptance {num} ({name}): {}",
        if ok { "pass" } else { "fail" }
    );
    assert!(ok, "criterion {num} ({name}) failed: {detail}");
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            return x;
        }
    }
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(nonzero(rng, 100), nonzero(rng, 100))
}

#[test]
fn criterion_1_hilbert_symbol_laws() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xace1);
    let places = [
        Place::Real,
        Place::finite(2),
        Place::finite(3),
        Place::finite(5),
        Place::finite(7),
        Place::finite(11),
    ];
    let mut failures = Vec::new();
    for i in 0..10_000usize {
        let a = random_rat(&mut rng);
        let b = random_rat(&mut rng);
        let c = random_rat(&mut rng);
        for v in &places {
            let ab = hilbert_symbol(&a, &b, v).unwrap();
            if ab != hilbert_symbol(&b, &a, v).unwrap() {
                failures.push(format!("symmetry #{i} at {v}"));
            }
            let acb = hilbert_symbol(&(&a * &c), &b, v).unwrap();
            if acb != ab * hilbert_symbol(&c, &b, v).unwrap() {
                failures.push(format!("bimultiplicativity #{i} at {v}"));
            }
            if hilbert_symbol(&a, &(-&a), v).unwrap() != 1 {
                failures.push(format!("(a,-a) #{i} at {v}"));
            }
        }
        let mut product = 1i8;
        for v in symbol_critical_places(&[&a, &b]) {
            product *= hilbert_symbol(&a, &b, &v).unwrap();
        }
        if product != 1 {
            failures.push(format!("product formula #{i}"));
        }
        if failures.len() > 5 {
            break;
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed.as_secs() < 10;
    conclude(
        1,
        "hilbert symbol laws",
        ok,
        &format!("failures = {failures:?}, elapsed = {elapsed:?}"),
    );
}

#[test]
fn criterion_2_local_isotropy_oracle_agreement() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xace2);
    let mut disagreements = Vec::new();
    for i in 0..1000usize {
        let rank = rng.gen_range(2..=5usize);
        let entries: Vec<i64> = (0..rank).map(|_| nonzero(&mut rng, 20)).collect();
        for p in [2u64, 3, 5, 7] {
            if !isotropy_verdicts_agree(&entries, p).unwrap() {
                disagreements.push(format!("#{i} <{entries:?}> at p = {p}"));
            }
        }
        if !disagreements.is_empty() {
            break;
        }
    }
    let elapsed = start.elapsed();
    let ok = disagreements.is_empty() && elapsed.as_secs() < 60;
    conclude(
        2,
        "local isotropy oracle agreement",
        ok,
        &format!("disagreements = {disagreements:?}, elapsed = {elapsed:?}"),
    );
}

#[test]
fn criterion_3_mordell_walk() {
    let start = Instant::now();
    let mut all_ok = true;
    let mut detail = String::new();
    for n in 3..=7usize {
        let mut spec = CampaignSpec::new(TheoremId::MordellReal, 100, 0x3000 + n as u64);
        spec.n = n;
        let report = verify(&spec).unwrap();
        if report.summary.witnessed != 100 {
            all_ok = false;
            detail = report.canonical_json();
            break;
        }
    }
    let elapsed = start.elapsed();
    let ok = all_ok && elapsed.as_secs() < 60;
    conclude(
        3,
        "mordell real walk",
        ok,
        &format!("elapsed = {elapsed:?}; {detail}"),
    );
}

#[test]
fn criterion_4_dans_p4_quadratic_point() {
    let mut spec = CampaignSpec::new(TheoremId::P4QuadPoint, 50, 0x4000);
    spec.coeff_bound = 9;
    spec.height_bound = 50;
    let report = verify(&spec).unwrap();
    let ok = report.summary.witnessed == 50;
    conclude(
        4,
        "dansP4 member with 2H at p",
        ok,
        &report.canonical_json(),
    );
}

#[test]
fn criterion_5_hbrloc_rank8_3h() {
    let spec = CampaignSpec::new(TheoremId::P7Local3h, 25, 0x5000);
    let report = verify(&spec).unwrap();
    // every non-skipped instance must be witnessed
    let ok = report.summary.not_found == 0
        && report.summary.refuted == 0
        && report.summary.witnessed + report.summary.skipped == 25
        && report.summary.witnessed > 0;
    conclude(
        5,
        "hbrloc rank-8 members with 3H",
        ok,
        &report.canonical_json(),
    );
}

#[test]
fn criterion_6_quadratique_p5_global() {
    let mut spec = CampaignSpec::new(TheoremId::P5GlobalQuad, 25, 0x6000);
    spec.coeff_bound = 5;
    spec.height_bound = 100;
    let report = verify(&spec).unwrap();
    // witnesses are constructed and symbolically re-verified inside the
    // campaign; any verification failure surfaces as refuted
    let ok = report.summary.witnessed >= 23 && report.summary.refuted == 0;
    conclude(
        6,
        "quadratiqueP5nombres global 2H + quadratic point",
        ok,
        &report.canonical_json(),
    );
}

#[test]
fn criterion_7_finite_field_census() {
    let start = Instant::now();
    let mut problems = Vec::new();

    // (a) dP4 reductions over F_5, F_7: X(F_q) nonempty for every smooth
    // sample
    let mut smooth_samples = 0usize;
    for seed in 0..20u64 {
        let pencil = generate_smooth_pencil(4, 5, 0x7a00 + seed, &[]).unwrap();
        for p in [5u64, 7] {
            let rep = verify_ff_propositions(&pencil, p).unwrap();
            if !rep.smooth_reduction {
                continue;
            }
            smooth_samples += 1;
            match rep.point_count {
                Some(c) if c > 0 => {}
                other => problems.push(format!("(a) seed {seed} p {p}: points {other:?}")),
            }
        }
    }
    if smooth_samples < 10 {
        problems.push(format!("(a) only {smooth_samples} smooth samples"));
    }

    // (b) line counts bounded by 16, with equality attained: the 16 lines
    // of a diagonal dP4 are all defined over the quadratic extension
    for seed in 0..5u64 {
        let pencil = generate_smooth_pencil(4, 5, 0x7b00 + seed, &[]).unwrap();
        let field = FFField::new(5, 1).unwrap();
        let (Ok(f), Ok(g)) = (
            FFForm::reduce(pencil.f(), &field),
            FFForm::reduce(pencil.g(), &field),
        ) else {
            continue;
        };
        let e = enumerate_r_planes(&[&f, &g], &field, 1, DEFAULT_BUDGET).unwrap();
        if e.count > 16 {
            problems.push(format!("(b) seed {seed}: {} lines over F_5", e.count));
        }
    }
    let f25 = FFField::new(5, 2).unwrap();
    let df = FFForm::from_diagonal(&f25, &[1, 1, 1, 1, 1]);
    let dg = FFForm::from_diagonal(&f25, &[0, 1, 2, 3, 4]);
    let e = enumerate_r_planes(&[&df, &dg], &f25, 1, DEFAULT_BUDGET).unwrap();
    if e.count != 16 {
        problems.push(format!("(b) equality instance has {} lines", e.count));
    }

    // (c) n = 5 over F_37 (q > 30): a totally hyperbolic member in every
    // smooth sample
    for seed in 0..10u64 {
        let pencil = generate_smooth_pencil(5, 5, 0x7c00 + seed, &[]).unwrap();
        let rep = verify_ff_propositions(&pencil, 37).unwrap();
        if rep.smooth_reduction && rep.hyperbolic_member.is_none() {
            problems.push(format!("(c) seed {seed}: no hyperbolic member over F_37"));
        }
    }

    // (d) n = 7 over F_3: every nondegenerate member has Witt index >= 3
    for seed in 0..5u64 {
        let pencil = generate_smooth_pencil(7, 5, 0x7d00 + seed, &[]).unwrap();
        let rep = verify_ff_propositions(&pencil, 3).unwrap();
        if rep.smooth_reduction && rep.all_members_meet_floor != Some(true) {
            problems.push(format!("(d) seed {seed}: member below floor over F_3"));
        }
    }

    // (e) plane count of one smooth n = 6 instance over F_3 and F_9 is
    // bounded by 2^(2r+2) = 64
    let pencil = generate_smooth_pencil(6, 5, 3, &[]).unwrap();
    for (p, m) in [(3u64, 1u32), (3, 2)] {
        let field = FFField::new(p, m).unwrap();
        let f = FFForm::reduce(pencil.f(), &field).unwrap();
        let g = FFForm::reduce(pencil.g(), &field).unwrap();
        let e = enumerate_r_planes(&[&f, &g], &field, 2, 100_000_000_000).unwrap();
        if e.count > 64 {
            problems.push(format!("(e) {} planes over F_{}", e.count, field.q()));
        }
    }

    let elapsed = start.elapsed();
    let ok = problems.is_empty() && elapsed.as_secs() < 600;
    conclude(
        7,
        "finite-field census",
        ok,
        &format!("problems = {problems:?}, elapsed = {elapsed:?}"),
    );
}

#[test]
fn criterion_8_cross_module_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xace8);
    let mut violations = Vec::new();
    for i in 0..200usize {
        let rank = rng.gen_range(3..=8usize);
        let entries: Vec<i64> = (0..rank).map(|_| nonzero(&mut rng, 9)).collect();
        let q = QuadraticForm::from_diagonal_i64(&entries);
        // box bounds shrink with the dimension to keep the scans bounded
        let vec_bound = [0, 0, 0, 8, 8, 6, 4, 3, 2][rank];
        let plane_bound = [0, 0, 0, 4, 4, 3, 3, 2, 2][rank];
        let mut dim_found = 0usize;
        let mut witness = None;
        if let Some(v) = isotropic_vector(&q, vec_bound) {
            dim_found = 1;
            witness = Some(vec![v]);
            if let Some((u, w)) = isotropic_plane(&q, plane_bound).unwrap() {
                dim_found = 2;
                witness = Some(vec![u, w]);
            }
        }
        if dim_found == 0 {
            continue;
        }
        // re-verify the witness and compare against every Witt index
        for pt in witness.as_ref().unwrap() {
            assert!(q.evaluate(&pt.to_rat()).unwrap() == rat(0, 1));
        }
        let rats: Vec<Rat> = entries.iter().map(|&e| rat(e, 1)).collect();
        for place in critical_places(&rats) {
            let w = local_witt_index(&q, &place).unwrap();
            if dim_found > w.index {
                violations.push(format!("#{i} <{entries:?}>: dim {dim_found} > {place}-index {}", w.index));
            }
        }
        let g = global_witt_index(&q).unwrap();
        if dim_found > g.index {
            violations.push(format!("#{i} <{entries:?}>: dim {dim_found} > global {}", g.index));
        }
    }
    conclude(
        8,
        "cross-module isotropic subspace bounds",
        violations.is_empty(),
        &format!("{violations:?}"),
    );
}

#[test]
fn criterion_9_determinism() {
    let mut ok = true;
    let mut detail = String::new();
    for theorem in [
        TheoremId::MordellReal,
        TheoremId::P4QuadPoint,
        TheoremId::FfCensus,
    ] {
        let spec = CampaignSpec::new(theorem, 5, 0x9000);
        let a = verify(&spec).unwrap().canonical_json();
        let b = verify(&spec).unwrap().canonical_json();
        if a != b {
            ok = false;
            detail = format!("{theorem}: reports differ");
            break;
        }
    }
    conclude(9, "deterministic reports", ok, &detail);
}
