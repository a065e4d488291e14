//! Full-battery runs: every proved law over every built-in universe.

use finalg::decide::{is_s_secondary, SecondaryForm};
use finalg::laws::{law_check, run_battery, universe_battery, LawId, LawMode, LawStatus};

#[test]
fn every_proved_law_passes_on_every_applicable_universe() {
    let battery = universe_battery();
    let report = run_battery(&battery).expect("battery run");
    let mut pass = 0;
    let mut inapplicable = 0;
    for r in &report.law_reports {
        if r.mode != LawMode::Proved {
            continue;
        }
        match r.status {
            LawStatus::Pass => pass += 1,
            LawStatus::Inapplicable => inapplicable += 1,
            LawStatus::Fail => panic!(
                "law {} failed on {}: {:?}",
                r.law,
                r.universe,
                r.counterexample.as_ref().map(|c| &c.description)
            ),
        }
    }
    assert!(pass > 0 && inapplicable > 0);
    assert!(report.failures().is_empty());
}

#[test]
fn product_and_idealization_laws_actually_run() {
    let battery = universe_battery();
    let by = |law: LawId| {
        battery
            .iter()
            .map(|u| law_check(law, u).unwrap())
            .filter(|r| r.status == LawStatus::Pass)
            .count()
    };
    assert_eq!(by(LawId::L5), 1, "one two-factor product universe");
    assert_eq!(by(LawId::L6), 1, "one three-factor product universe");
    assert_eq!(by(LawId::L14), 2, "both idealization variants");
    assert!(
        by(LawId::L11) >= 3,
        "Z4, Z8, and idealization rings are quasilocal"
    );
    assert!(by(LawId::L13) >= 4, "comultiplication members exist");
}

#[test]
fn four_form_agreement_across_battery() {
    // forms a, b, c, d agree on every submodule of every universe
    let battery = universe_battery();
    assert!(battery.len() >= 14);
    let mut disagreements = 0;
    let mut checked = 0;
    for u in &battery {
        for n in u.module.submodules().unwrap() {
            let verdicts: Vec<bool> = SecondaryForm::ALL
                .iter()
                .map(|&f| is_s_secondary(&n, &u.s, f).unwrap().verdict)
                .collect();
            checked += 1;
            if !verdicts.iter().all(|&v| v == verdicts[0]) {
                disagreements += 1;
            }
        }
    }
    assert_eq!(
        disagreements, 0,
        "forms disagreed on {disagreements} of {checked} submodules"
    );
    assert!(checked >= 60, "expected a substantial sweep, got {checked}");
}

#[test]
fn l19_holds_exhaustively_on_every_battery_module() {
    let battery = universe_battery();
    for u in &battery {
        let rep = law_check(LawId::L19, u).unwrap();
        assert_ne!(rep.status, LawStatus::Fail, "L19 failed on {}", u.label);
    }
}

#[test]
fn separations_and_audit() {
    let battery = universe_battery();
    let report = run_battery(&battery).expect("battery run");
    assert!(!report.separations.s_secondary_not_s_second.is_empty());
    assert!(!report.separations.s_secondary_not_secondary.is_empty());
    assert!(report.audit.routes_agree);
    assert!(!report.audit.separation_found);
}
