//! End-to-end acceptance checks for the library: seeded sweeps over both
//! model families, one test per criterion, each printing a single PASS line
//! with its observed counts and runtime. Criteria that exercise the command
//! line tool live in the companion binary crate.

use std::time::{Duration, Instant};

use rand::SeedableRng;

use exactcat::axioms::check_exact_axioms;
use exactcat::category::{compose, equal, identity, IsoCertificate, Object, Payload};
use exactcat::error::Error;
use exactcat::exact::{
    factor_through_kernel, lift, random_presentation_pair, sum_with_object, KernelCokernelPair,
};
use exactcat::models::linrep::interval_multiplicities;
use exactcat::models::{Model, SampleRng};
use exactcat::schanuel::{
    global_dimension_sample, injective_dimension, injective_dimension_of_resolution,
    resolution_schanuel, schanuel_isomorphism, verify_certificate, DimensionResult, Resolution,
};

fn linrep_sweep(i: usize) -> Model {
    let p = [2u64, 3, 5][i % 3];
    let n = (i % 4) + 1;
    Model::linrep(p, n).unwrap()
}

fn cyclicmod_sweep(i: usize) -> Model {
    let p = [2u64, 3][i % 2];
    let k = (i % 3) as u32 + 1;
    Model::cyclicmod(p, k).unwrap()
}

/// Iso-invariant fingerprint: pointwise dimension vector for representations,
/// sorted exponent multiset for cyclic modules.
fn invariants(o: &Object) -> Vec<usize> {
    match o.payload() {
        Payload::LinRep(r) => r.dims().to_vec(),
        Payload::CyclicMod(c) => {
            let mut v: Vec<usize> = c.exponents().iter().map(|&e| e as usize).collect();
            v.sort_unstable();
            v
        }
    }
}

#[test]
fn criterion_1_comparison_certificates_verify_across_both_families() {
    let start = Instant::now();
    let mut verified = 0usize;
    for (family, pick) in [
        ("linrep", linrep_sweep as fn(usize) -> Model),
        ("cyclicmod", cyclicmod_sweep as fn(usize) -> Model),
    ] {
        for i in 0..200 {
            let model = pick(i);
            let mut rng = SampleRng::seed_from_u64(1_000 + i as u64);
            let e = model.random_object(&mut rng, 4);
            let pair1 = random_presentation_pair(&mut rng, &e).unwrap();
            let pair2 = random_presentation_pair(&mut rng, &e).unwrap();
            let cert = schanuel_isomorphism(&pair1, &pair2).unwrap();
            assert!(
                verify_certificate(&cert),
                "{family} instance {i} produced an invalid certificate"
            );
            verified += 1;
        }
    }
    assert_eq!(verified, 400);
    assert!(start.elapsed() < Duration::from_secs(60));
    println!(
        "criterion 1: PASS (400/400 certificates verified in {:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_2_iterated_comparison_preserves_model_invariants() {
    let start = Instant::now();
    let mut checked = 0usize;
    for (family, pick) in [
        ("linrep", linrep_sweep as fn(usize) -> Model),
        ("cyclicmod", cyclicmod_sweep as fn(usize) -> Model),
    ] {
        for i in 0..50 {
            let model = pick(i);
            let mut rng = SampleRng::seed_from_u64(2_000 + i as u64);
            let e = model.random_object(&mut rng, 3);
            let res1 = Resolution::canonical(&e, 5).unwrap();
            let res2 = Resolution::random(&e, 5, &mut rng).unwrap();
            for n in [1usize, 2] {
                let (even, odd) = resolution_schanuel(&res1, &res2, n).unwrap();
                for cert in [&even, &odd] {
                    assert!(
                        verify_certificate(cert),
                        "{family} instance {i} n={n} certificate failed"
                    );
                    assert_eq!(
                        invariants(cert.forward().domain()),
                        invariants(cert.forward().codomain()),
                        "{family} instance {i} n={n} sides disagree"
                    );
                }
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 200);
    assert!(start.elapsed() < Duration::from_secs(120));
    println!(
        "criterion 2: PASS (200 iterated comparisons, both certificates verified, invariants equal, {:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_3_representation_dimensions_are_at_most_one_and_seed_independent() {
    let start = Instant::now();
    let mut zeros = 0usize;
    let mut ones = 0usize;
    for i in 0..200 {
        let model = linrep_sweep(i);
        let (p, n) = match &model {
            Model::LinRep { p, n } => (*p, *n),
            _ => unreachable!(),
        };
        let mut rng = SampleRng::seed_from_u64(3_000 + i as u64);
        let x = model.random_object(&mut rng, 4);
        let dim = injective_dimension(&x, 4).unwrap();
        match dim {
            DimensionResult::Finite(0) => zeros += 1,
            DimensionResult::Finite(1) => ones += 1,
            other => panic!("instance {i} has dimension {other}"),
        }
        let mult = match x.payload() {
            Payload::LinRep(r) => interval_multiplicities(p, r),
            _ => unreachable!(),
        };
        let has_late_start = (1..n).any(|a| (a..n).any(|b| mult[a][b] > 0));
        assert_eq!(
            dim == DimensionResult::Finite(0),
            !has_late_start,
            "instance {i}: dimension and interval decomposition disagree"
        );
        let mut rng_a = SampleRng::seed_from_u64(30_000 + i as u64);
        let mut rng_b = SampleRng::seed_from_u64(60_000 + i as u64);
        let res_a = Resolution::random(&x, 2, &mut rng_a).unwrap();
        let res_b = Resolution::random(&x, 2, &mut rng_b).unwrap();
        assert_eq!(injective_dimension_of_resolution(&res_a), dim);
        assert_eq!(injective_dimension_of_resolution(&res_b), dim);
    }
    assert_eq!(zeros + ones, 200);
    assert!(start.elapsed() < Duration::from_secs(60));
    println!(
        "criterion 3: PASS (200 objects, {zeros} of dimension 0 and {ones} of dimension 1, two embedding seeds agree, {:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_4_simple_module_over_z4_exceeds_every_budget() {
    let start = Instant::now();
    let model = Model::cyclicmod(2, 2).unwrap();
    let z2 = model
        .probe_objects()
        .into_iter()
        .find(|o| o.size() == 1)
        .unwrap();
    let dim = injective_dimension(&z2, 8).unwrap();
    assert_eq!(dim, DimensionResult::ExceedsBudget(8));
    let res = Resolution::canonical(&z2, 8).unwrap();
    for m in 1..=8 {
        match res.syzygy(m).payload() {
            Payload::CyclicMod(c) => assert_eq!(c.exponents(), &[1], "syzygy {m}"),
            _ => unreachable!(),
        }
    }
    assert!(start.elapsed() < Duration::from_secs(1));
    println!(
        "criterion 4: PASS (dimension of Z/2 reported as {dim}, syzygies 1..8 all have exponents [1], {:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_5_padding_by_an_object_keeps_an_exact_pair_with_commuting_kernel() {
    let start = Instant::now();
    let mut checked = 0usize;
    for (family, pick) in [
        ("linrep", linrep_sweep as fn(usize) -> Model),
        ("cyclicmod", cyclicmod_sweep as fn(usize) -> Model),
    ] {
        for i in 0..100 {
            let model = pick(i);
            let mut rng = SampleRng::seed_from_u64(5_000 + i as u64);
            let e = model.random_object(&mut rng, 3);
            let pair = random_presentation_pair(&mut rng, &e).unwrap();
            let a = model.random_object(&mut rng, 3);
            // construction re-verifies the kernel-cokernel invariant
            let padded = sum_with_object(&pair, &a).unwrap();
            assert_eq!(padded.left(), &e.direct_sum(&a).unwrap());

            // independent kernel of the padded epi, compared through both monos
            let fresh = KernelCokernelPair::from_epi(padded.epi().clone()).unwrap();
            let u = factor_through_kernel(padded.mono(), &fresh).unwrap();
            let v = factor_through_kernel(fresh.mono(), &padded).unwrap();
            IsoCertificate::new(u.clone(), v.clone()).unwrap_or_else(|_| {
                panic!("{family} instance {i}: comparison is not an isomorphism")
            });
            assert!(equal(&compose(fresh.mono(), &u).unwrap(), padded.mono()));
            assert!(equal(&compose(padded.mono(), &v).unwrap(), fresh.mono()));
            checked += 1;
        }
    }
    assert_eq!(checked, 200);
    assert!(start.elapsed() < Duration::from_secs(30));
    println!(
        "criterion 5: PASS (200 padded pairs verified with commuting kernel comparisons, {:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_6_split_wrappers_pass_the_audit_and_have_global_dimension_zero() {
    let start = Instant::now();
    let models = [
        Model::split(Model::cyclicmod(2, 2).unwrap()).unwrap(),
        Model::split(Model::linrep(3, 3).unwrap()).unwrap(),
    ];
    for model in &models {
        for seed in 1..=5u64 {
            let report = check_exact_axioms(model, 500, seed, None).unwrap();
            assert!(
                report.all_passed(),
                "{} seed {seed}: {:?}",
                model.name(),
                report
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.name)
                    .collect::<Vec<_>>()
            );
        }
        let mut rng = SampleRng::seed_from_u64(6_000);
        for _ in 0..100 {
            let x = model.random_object(&mut rng, 4);
            assert!(model.is_injective(&x), "{}: {}", model.name(), x.describe());
        }
        let report = global_dimension_sample(model, 12, 4, 6_001).unwrap();
        assert_eq!(report.max, DimensionResult::Finite(0), "{}", model.name());
    }
    assert!(start.elapsed() < Duration::from_secs(60));
    println!(
        "criterion 6: PASS (both split wrappers: audit clean on 5 seeds x 500 samples, all objects injective, global dimension 0, {:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_8_injectivity_verdicts_match_the_lifting_definition() {
    let start = Instant::now();
    let mut positives = 0usize;
    let mut negatives = 0usize;
    for pick in [
        linrep_sweep as fn(usize) -> Model,
        cyclicmod_sweep as fn(usize) -> Model,
    ] {
        for i in 0..100 {
            let model = pick(i);
            let mut rng = SampleRng::seed_from_u64(8_000 + i as u64);
            let target = model.random_object(&mut rng, 4);
            let verdict = model.is_injective(&target);

            // decisive definitional instance: the canonical embedding of the
            // target splits exactly when the target is injective
            let embed = model.embed_into_injective(&target);
            assert_eq!(
                model.factor_right(&embed, &identity(&target)).is_some(),
                verdict,
                "instance {i} on {}",
                model.name()
            );

            // sampled lifting instance through an unrelated embedding
            let a = model.random_object(&mut rng, 3);
            let mu = model.random_injective_embedding(&mut rng, &a).unwrap();
            let f = model.random_morphism(&mut rng, &a, &target);
            if verdict {
                let g = lift(&f, &mu).unwrap();
                assert!(equal(&compose(&g, &mu).unwrap(), &f));
                positives += 1;
            } else {
                assert!(matches!(
                    lift(&f, &mu).unwrap_err(),
                    Error::NotInjectiveTarget(_)
                ));
                negatives += 1;
            }
        }
    }
    assert_eq!(positives + negatives, 200);
    assert!(positives > 0 && negatives > 0);
    assert!(start.elapsed() < Duration::from_secs(60));
    println!(
        "criterion 8: PASS (200 verdicts match the lifting definition, {positives} with explicit lifts, {negatives} refusals, {:.2?})",
        start.elapsed()
    );
}
