//! Resumable and sampled census runs.

use canalizing::census::{
    census_exhaustive, census_resumable, census_sampled, CensusError, Checkpoint,
    ResumableOutcome,
};
use canalizing::truthtable::Classification;

#[test]
fn resumable_census_picks_up_where_it_stopped() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("n3.state");

    let first = census_resumable(3, &state, 50, 2, Some(2)).unwrap();
    let ResumableOutcome::Paused(cp) = first else {
        panic!("expected a paused census");
    };
    assert_eq!(cp.next, 100);
    let on_disk = Checkpoint::parse(&std::fs::read_to_string(&state).unwrap()).unwrap();
    assert_eq!(on_disk, cp);
    assert_eq!(on_disk.histogram.values().sum::<u64>(), 100);

    let done = census_resumable(3, &state, 50, 3, None).unwrap();
    let ResumableOutcome::Complete(report) = done else {
        panic!("expected a finished census");
    };
    assert_eq!(report.histogram, census_exhaustive(3, 1).unwrap().histogram);
    assert!(report.mismatches.is_empty());
}

#[test]
fn resumable_census_rejects_foreign_state() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("state");
    std::fs::write(&state, Checkpoint::new(2).to_text()).unwrap();
    assert!(matches!(
        census_resumable(3, &state, 10, 1, None),
        Err(CensusError::CheckpointArity { expected: 3, found: 2 })
    ));
    assert!(matches!(
        census_resumable(6, &state, 10, 1, None),
        Err(CensusError::ArityTooLarge { n: 6, limit: 5 })
    ));
}

#[test]
fn resumable_four_input_census_matches_formulas() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("n4.state");
    let ResumableOutcome::Complete(report) = census_resumable(4, &state, 9000, 4, None).unwrap()
    else {
        panic!("expected a finished census");
    };
    assert_eq!(report.total, 65536);
    assert!(report.mismatches.is_empty());
}

#[test]
fn sampled_four_input_cells_within_five_sigma() {
    let report = census_sampled(4, 100_000, 7, 4).unwrap();
    assert_eq!(report.total, 100_000);
    for cell in &report.sampled {
        let z = cell.z_score.unwrap();
        assert!(z.abs() <= 5.0, "{:?} z={z}", cell.key);
    }
}

#[test]
fn sampled_five_input_census_is_consistent() {
    let report = census_sampled(5, 1_000_000, 1, 8).unwrap();
    assert_eq!(report.total, 1_000_000);
    let ncf: u64 = report
        .histogram
        .iter()
        .filter(|(c, _)| c.m == 5 && c.k == 5)
        .map(|(_, n)| n)
        .sum();
    // expected 10624 / 2^32 * 10^6 = 2.47 hits
    assert!(ncf <= 15, "{ncf} nested canalizing hits");
    for cell in &report.sampled {
        let z = cell.z_score.unwrap();
        assert!(z.abs() <= 5.0, "{:?} z={z}", cell.key);
    }
    let nondegenerate_noncanalizing = report.histogram[&Classification { m: 5, k: 0, r: 0 }];
    assert!(nondegenerate_noncanalizing > 999_000);
}

#[test]
fn one_input_samples_stay_on_the_two_possible_classes() {
    let report = census_sampled(1, 4, 0, 1).unwrap();
    assert_eq!(report.total, 4);
    let allowed = [
        Classification { m: 0, k: 0, r: 0 },
        Classification { m: 1, k: 1, r: 1 },
    ];
    assert!(report.histogram.keys().all(|c| allowed.contains(c)));
}
