use g2calc::catalog::{self, load_shipped};
use g2calc::obstructions::search_obs3;
use g2calc::verify::{paper_verify, Format, Status};

#[test]
fn every_expectation_is_consumed_by_a_check() {
    let all = load_shipped().unwrap();
    let report = paper_verify(&all, None);
    let partition = report.records.iter().find(|r| r.check == "partition").expect("partition record");
    for e in &all {
        for (key, check) in e.raw.expected.claims() {
            let consumed = if check == "partition" {
                partition.detail.contains(e.id())
            } else {
                report.records.iter().any(|r| r.entry == e.id() && r.check == check)
            };
            assert!(consumed, "{}: expectation {key} has no {check} record", e.id());
        }
    }
}

#[test]
fn paper_verify_is_deterministic() {
    let all = load_shipped().unwrap();
    let a = paper_verify(&all, None).render(Format::Records);
    let b = paper_verify(&all, None).render(Format::Records);
    assert_eq!(a, b);
}

#[test]
fn record_inventory() {
    let all = load_shipped().unwrap();
    let report = paper_verify(&all, None);
    assert_eq!(report.records.len(), 198);
    assert_eq!(report.records.iter().filter(|r| r.check == "jacobi").count(), all.len());
    let sorted = report.records.windows(2).all(|w| (&w[0].entry, &w[0].check) <= (&w[1].entry, &w[1].check));
    assert!(sorted);
}

#[test]
fn single_entry_selection() {
    let all = load_shipped().unwrap();
    let report = paper_verify(&all, Some("g1"));
    assert!(report.records.iter().all(|r| r.entry == "g1"));
    assert!(report.records.iter().any(|r| r.check == "obs3" && r.status == Status::Pass));
}

/// No basis-pair certificate can exist where a coclosed structure exists.
#[test]
fn no_certificate_for_algebras_with_coclosed_structures() {
    let all = load_shipped().unwrap();
    let report = paper_verify(&all, None);
    for e in all.iter().filter(|e| e.raw.expected.admits_coclosed == Some(true) || e.raw.three_form.is_some()) {
        let certified = report
            .records
            .iter()
            .any(|r| r.entry == e.id() && (r.check == "coclosed" || r.check == "existence") && r.status != Status::Fail);
        if !certified {
            continue;
        }
        let found = search_obs3(&e.algebra);
        assert!(found.is_empty(), "{} has a coclosed structure yet pair {:?} passes", e.id(), found.first());
    }
}

#[test]
fn step_tags_agree_with_computation() {
    for e in load_shipped().unwrap() {
        if let Some(step) = e.raw.tags.step {
            assert_eq!(e.algebra.nilpotency_step().unwrap(), step, "{}", e.id());
        }
    }
}

#[test]
fn catalog_directory_loads_from_a_copy() {
    let dir = std::env::temp_dir().join(format!("g2calc-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("a.toml"), "[[entry]]\nid = \"h\"\nequations = \"(0,0,12)\"\ntags = { section = \"test\" }\n").unwrap();
    std::fs::write(dir.join("b.toml"), "").unwrap();
    let entries = catalog::load_catalog(&dir).unwrap();
    assert_eq!(entries.len(), 1);
    std::fs::write(dir.join("c.toml"), "[[entry]]\nid = \"h\"\nequations = \"(0,0,0)\"\ntags = { section = \"test\" }\n").unwrap();
    assert!(catalog::load_catalog(&dir).is_err());
    std::fs::remove_dir_all(&dir).unwrap();
}
