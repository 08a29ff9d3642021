mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::{oracle_perfect_seq, seq};
use quatseq_core::search::{
    aop_random_search, exhaustive_search_with, is_aop_hit, template_search_with, AopSearchOptions, AopVariant,
    ExhaustiveOptions, Hit, Polynomial, PolynomialIndexSpec, RunConfig, SearchReport, Symmetry, SymmetrySet,
};
use quatseq_core::{QuatSequence, Side, TemplateSpec, UnitQuat};

/// Every perfect sequence of length `len` over `±i, ±j, ±k`, by plain enumeration.
fn brute_force(len: usize) -> BTreeSet<QuatSequence> {
    let mut out = BTreeSet::new();
    for mut n in 0..6usize.pow(len as u32) {
        let elems = (0..len)
            .map(|_| {
                let u = UnitQuat::IMAGINARY[n % 6];
                n /= 6;
                u
            })
            .collect();
        let s = QuatSequence::new(elems).unwrap();
        if oracle_perfect_seq(&s, Side::Right) {
            out.insert(s);
        }
    }
    out
}

fn search(len: usize, symmetries: SymmetrySet, prune: bool) -> SearchReport {
    let opts = ExhaustiveOptions {
        symmetries,
        prune,
        ..ExhaustiveOptions::default()
    };
    exhaustive_search_with(len, &opts, &RunConfig::default(), &mut |_| {}).unwrap()
}

fn hit_set(r: &SearchReport) -> BTreeSet<QuatSequence> {
    r.hits.iter().map(|h| h.sequence().clone()).collect()
}

fn symmetry_sets() -> Vec<SymmetrySet> {
    let mut sets: Vec<SymmetrySet> = Symmetry::ALL.iter().map(|&s| SymmetrySet::none().with(s)).collect();
    sets.push(SymmetrySet::all());
    sets
}

#[test]
fn pruned_search_matches_reference_enumeration() {
    for len in [2, 4, 6] {
        let reference = brute_force(len);
        let pruned = search(len, SymmetrySet::none(), true);
        let unpruned = search(len, SymmetrySet::none(), false);
        assert_eq!(hit_set(&pruned), reference, "pruned, length {len}");
        assert_eq!(hit_set(&unpruned), reference, "unpruned, length {len}");
        assert_eq!(pruned.hits, unpruned.hits, "hit order, length {len}");
        assert_eq!(unpruned.examined, 6u64.pow(len as u32));
        // short lengths leave nothing to cut; from length 6 on pruning must bite
        assert!(pruned.examined <= unpruned.examined);
        if len >= 6 {
            assert!(pruned.examined < unpruned.examined);
        }
        assert!(pruned.verified && unpruned.verified);
    }
}

#[test]
fn every_symmetry_maps_perfect_to_perfect() {
    for len in [2, 4, 6] {
        let reference = brute_force(len);
        for s in Symmetry::ALL {
            let set = SymmetrySet::none().with(s);
            for hit in &reference {
                for image in set.orbit(hit) {
                    assert!(reference.contains(&image), "{} sends {hit} to {image}", s.name());
                }
            }
        }
    }
}

#[test]
fn canonical_hits_expand_to_every_raw_hit() {
    for len in [2, 4, 6] {
        let reference = brute_force(len);
        for set in symmetry_sets() {
            let report = search(len, set, true);
            let mut expanded = BTreeSet::new();
            for hit in &report.hits {
                let orbit = set.orbit(hit.sequence());
                assert!(orbit.is_disjoint(&expanded), "two hits share an orbit");
                assert_eq!(set.canonical(hit.sequence()), *hit.sequence());
                expanded.extend(orbit);
            }
            assert_eq!(expanded, reference, "length {len}, {set:?}");
        }
    }
}

#[test]
fn printed_examples_lie_in_canonical_orbits() {
    let set = SymmetrySet::all();
    for (len, printed) in [(4, "-k,i,-k,-i"), (6, "j,k,-j,k,j,-i")] {
        let report = search(len, set, true);
        let target = seq(printed);
        assert!(
            report.hits.iter().any(|h| set.orbit(h.sequence()).contains(&target)),
            "{printed}"
        );
    }
}

#[test]
fn unpruned_length_six_is_fast() {
    let start = Instant::now();
    let r = search(6, SymmetrySet::none(), false);
    assert_eq!(r.examined, 46_656);
    assert!(start.elapsed().as_secs_f64() < 1.0, "{:?}", start.elapsed());
}

fn template_hits(len: usize, run: &RunConfig) -> Vec<Hit> {
    template_search_with(len, run, &mut |_| {}).unwrap().hits
}

#[test]
fn template_search_recovers_printed_sign_vector() {
    let alpha: TemplateSpec = "-1,-1,-1,+1,+1,-1".parse().unwrap();
    let hits = template_hits(14, &RunConfig::default());
    assert!(hits
        .iter()
        .any(|h| matches!(h, Hit::Template { spec, .. } if *spec == alpha)));
    let printed = seq("-i,-j,-i,-j,i,j,-i,k,-i,j,i,-j,-i,-j");
    assert!(hits.iter().any(|h| *h.sequence() == printed));
}

#[test]
fn template_length_ten_has_hits() {
    assert!(!template_hits(10, &RunConfig::default()).is_empty());
}

#[test]
fn template_hits_do_not_depend_on_partitioning() {
    let reference = template_hits(30, &RunConfig::default());
    for ranges in [1, 4, 1 << 14] {
        for jobs in [0, 1, 3] {
            let run = RunConfig {
                ranges: Some(ranges),
                jobs,
                ..RunConfig::default()
            };
            assert_eq!(template_hits(30, &run), reference, "ranges {ranges}, jobs {jobs}");
        }
    }
    let bad = RunConfig {
        ranges: Some(3),
        ..RunConfig::default()
    };
    assert!(template_search_with(30, &bad, &mut |_| {}).is_err());
}

#[test]
fn template_length_thirty_is_fast() {
    let start = Instant::now();
    let r = template_search_with(30, &RunConfig::default(), &mut |_| {}).unwrap();
    assert_eq!(r.examined, 1 << 14);
    assert!(r.verified);
    assert!(start.elapsed().as_secs_f64() < 1.0, "{:?}", start.elapsed());
}

#[test]
fn resumed_search_equals_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("exhaustive.cp");
    let opts = ExhaustiveOptions {
        symmetries: SymmetrySet::none(),
        ..ExhaustiveOptions::default()
    };
    let full = exhaustive_search_with(6, &opts, &RunConfig::default(), &mut |_| {}).unwrap();

    // stop early through the hit limit, leaving a checkpoint mid-way
    let first = RunConfig {
        batch: Some(8),
        limit: Some(1),
        checkpoint: Some(cp.clone()),
        ..RunConfig::default()
    };
    let partial = exhaustive_search_with(6, &opts, &first, &mut |_| {}).unwrap();
    assert!(!partial.is_complete());
    assert_eq!(partial.hits.len(), 1);

    let mut streamed = Vec::new();
    let second = RunConfig {
        batch: Some(8),
        resume: Some(cp.clone()),
        ..RunConfig::default()
    };
    let resumed = exhaustive_search_with(6, &opts, &second, &mut |h| streamed.push(h.clone())).unwrap();
    assert!(resumed.same_outcome(&full));
    assert_eq!(streamed, full.hits);

    // a checkpoint from a different search is refused
    let mismatch = RunConfig {
        resume: Some(cp),
        ..RunConfig::default()
    };
    assert!(template_search_with(30, &mismatch, &mut |_| {}).is_err());
}

#[test]
fn aop_search_is_reproducible_and_finds_known_spec() {
    let opts = AopSearchOptions {
        sizes: vec![(8, 8), (4, 8), (16, 4)],
        samples: 700,
        seed: 2024,
        ..AopSearchOptions::default()
    };
    let a = aop_random_search(&opts, &RunConfig::default(), &mut |_| {}).unwrap();
    let b = aop_random_search(&opts, &RunConfig { jobs: 2, batch: Some(1), ..RunConfig::default() }, &mut |_| {})
        .unwrap();
    assert!(a.same_outcome(&b));
    assert_eq!(a.examined, 2100);
    assert!(a.verified);
    for hit in &a.hits {
        match hit {
            Hit::Aop { spec, sequence } => {
                assert!(is_aop_hit(spec, AopVariant::Plain));
                assert_eq!(spec.build().flatten_row_major(), *sequence);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
    let other_seed = AopSearchOptions { seed: 2025, ..opts };
    let c = aop_random_search(&other_seed, &RunConfig::default(), &mut |_| {}).unwrap();
    assert_eq!(c.examined, a.examined);

    let ab = Polynomial::monomial(1, 1, 1);
    let known = PolynomialIndexSpec::new(ab, 1, ab, 2, 8, 8).unwrap();
    assert!(is_aop_hit(&known, AopVariant::Plain));
    let zero = PolynomialIndexSpec::new(Polynomial::default(), 1, Polynomial::default(), 1, 8, 8).unwrap();
    assert!(!is_aop_hit(&zero, AopVariant::Plain));
}
