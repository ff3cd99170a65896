use std::collections::{BTreeSet, HashSet};

use msq_core::enumerate::{enumerate_all_orientations, Budget};
use msq_core::symmetry::orbit;
use msq_core::{
    enumerate_family, enumerate_with, frenicle_form, partition_tasks, EnumerateOptions, Error, Family, FamilySpec,
    Square,
};

fn spec(f: Family, n: usize) -> FamilySpec {
    FamilySpec::new(f, n).unwrap()
}

fn small_specs() -> Vec<FamilySpec> {
    vec![
        spec(Family::General, 3),
        spec(Family::General, 4),
        spec(Family::Associative, 4),
        spec(Family::Ultra, 5),
        spec(Family::Associative, 5),
    ]
}

#[test]
fn counts() {
    let expected = [1, 880, 48, 16, 48_544];
    for (s, want) in small_specs().iter().zip(expected) {
        let run = enumerate_family(s).unwrap();
        assert_eq!(run.squares.len(), want, "{}", s.fingerprint());
        assert_eq!(run.report.total_count, want as u64);
    }
}

#[test]
fn sound_sorted_and_canonical() {
    for s in small_specs() {
        let squares = enumerate_family(&s).unwrap().squares;
        for sq in &squares {
            assert!(sq.is_magic() && s.admits(sq), "{sq}");
            assert_eq!(&frenicle_form(sq), sq);
        }
        assert!(squares.windows(2).all(|w| w[0].cells() < w[1].cells()));
        // no two squares share an orbit
        let mut seen = HashSet::new();
        for sq in &squares {
            for image in orbit(sq) {
                if &image != sq {
                    assert!(!seen.contains(&image));
                }
            }
            seen.insert(sq.clone());
        }
    }
}

#[test]
fn canonical_pruning_matches_post_filter() {
    for s in [spec(Family::General, 3), spec(Family::General, 4), spec(Family::Associative, 4), spec(Family::Ultra, 5)]
    {
        let all = enumerate_all_orientations(&s);
        let filtered: BTreeSet<Square> = all.iter().map(frenicle_form).collect();
        let pruned: BTreeSet<Square> = enumerate_family(&s).unwrap().squares.into_iter().collect();
        assert_eq!(filtered, pruned, "{}", s.fingerprint());
        // all orientations are distinct squares, eight per orbit
        assert_eq!(all.len(), 8 * pruned.len());
    }
}

#[test]
fn partitions_cover_the_search() {
    let s = spec(Family::General, 4);
    assert_eq!(partition_tasks(&s, 1).len(), 1);
    assert!(partition_tasks(&s, 1)[0].prefix.is_empty());
    let tasks = partition_tasks(&s, 2);
    assert!(tasks.len() > 1);
    assert!(tasks.iter().all(|t| t.is_consistent()));
    let mut keys = HashSet::new();
    for t in &tasks {
        assert!(keys.insert(t.prefix.clone()));
    }
    let full = enumerate_family(&s).unwrap().squares;
    for g in [1, 2, 3, 5, 40] {
        let opts = EnumerateOptions { granularity: g, ..EnumerateOptions::default() };
        assert_eq!(enumerate_with(&s, &opts).unwrap().squares, full, "granularity {g}");
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let s = spec(Family::Associative, 5);
    let one = enumerate_with(&s, &EnumerateOptions::default()).unwrap().squares;
    let three = enumerate_with(&s, &EnumerateOptions { workers: 3, ..EnumerateOptions::default() }).unwrap().squares;
    assert_eq!(one, three);
}

#[test]
fn complements_stay_in_the_family() {
    for s in [spec(Family::Associative, 4), spec(Family::Associative, 5), spec(Family::General, 4)] {
        let squares: HashSet<Square> = enumerate_family(&s).unwrap().squares.into_iter().collect();
        for sq in &squares {
            assert!(squares.contains(&frenicle_form(&sq.complement())));
        }
    }
}

#[test]
fn budget_and_resume() {
    let s = spec(Family::Associative, 5);
    let full = enumerate_family(&s).unwrap().squares;
    let mut opts =
        EnumerateOptions { budget: Budget { max_nodes: Some(20_000), max_time: None }, ..Default::default() };
    let mut rounds = 0;
    let result = loop {
        rounds += 1;
        match enumerate_with(&s, &opts) {
            Ok(run) => break run.squares,
            Err(Error::PartialResult { count, checkpoint }) => {
                assert_eq!(count, checkpoint.found.len() as u64);
                let json = serde_json::to_string(&checkpoint).unwrap();
                opts.resume = Some(serde_json::from_str(&json).unwrap());
            }
            Err(e) => panic!("{e}"),
        }
        assert!(rounds < 10_000);
    };
    assert!(rounds > 1);
    assert_eq!(result, full);
}

#[test]
fn unsupported_pairs() {
    assert!(matches!(FamilySpec::new(Family::General, 6), Err(Error::UnsupportedFamily { .. })));
    assert!(matches!(FamilySpec::new(Family::Franklin, 4), Err(Error::UnsupportedFamily { .. })));
}
