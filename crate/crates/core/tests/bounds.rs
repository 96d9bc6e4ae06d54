use octobil::bounds::{
    admissible, bounds_table, corollary_sections, sections_from_map, Registry, VerifyPolicy, OPEN_29_NOTE, RP28_NOTE,
};

fn registry() -> Registry {
    Registry::verified(VerifyPolicy {
        trials: 50,
        rank_samples: 3,
        ..VerifyPolicy::default()
    })
    .unwrap()
}

#[test]
fn table_entries_are_admissible_symmetric_and_below_the_trivial_bound() {
    let reg = registry();
    let table = bounds_table(&reg, 12).unwrap();
    assert_eq!(table.len(), 78);
    for e in &table {
        assert!(admissible(e.r, e.s, e.k).unwrap(), "{e:?}");
        assert!(e.k <= e.r + e.s - 1);
        assert_eq!(reg.best_upper_bound(e.s, e.r).unwrap().k, e.k);
    }
}

#[test]
fn named_values() {
    let reg = registry();
    assert_eq!(reg.best_upper_bound(2, 2).unwrap().source, "complex_mul");
    assert_eq!(reg.best_upper_bound(8, 8).unwrap().k, 8);
    let e = reg.best_upper_bound(29, 29).unwrap();
    assert_eq!(e.k, 51);
    assert!(e.notes.iter().any(|n| n == RP28_NOTE));
    assert!(e.notes.iter().any(|n| n == OPEN_29_NOTE));
}

#[test]
fn sections_need_verified_sources() {
    let reg = Registry::unverified().unwrap();
    let e = reg.entry_for("newnbl:r1").unwrap();
    assert!(sections_from_map(&e).is_err());
    let verified = registry();
    let rows: Vec<String> = corollary_sections(&verified).unwrap().iter().map(|e| e.to_string()).collect();
    assert_eq!(rows[0], "47ξ_23 has 32 independent sections");
    assert_eq!(rows.len(), 6);
}

#[test]
fn admissibility_rejects_impossible_squares() {
    let yes: Vec<usize> = (1..=64).filter(|&k| admissible(k, k, k).unwrap()).collect();
    assert_eq!(yes, [1, 2, 4, 8]);
    assert!(admissible(0, 1, 1).is_err());
}
