//! Property tests over randomly generated small rings, sets, and modules.

use std::sync::Arc;

use proptest::prelude::*;

use finalg::decide::{
    is_s_second, is_s_secondary, is_secondary, recheck, DeciderCall, SecondaryForm,
};
use finalg::{spectrum, ElemSet, FiniteModule, FiniteRing, Ideal, MultClosedSet, Submodule};

fn arb_ring() -> impl Strategy<Value = Arc<FiniteRing>> {
    prop_oneof![
        (2usize..=12).prop_map(|n| FiniteRing::cyclic(n).unwrap()),
        ((2usize..=4), (2usize..=4)).prop_map(|(a, b)| FiniteRing::product(
            &FiniteRing::cyclic(a).unwrap(),
            &FiniteRing::cyclic(b).unwrap()
        )),
    ]
}

/// A ring together with a multiplicatively closed subset grown from a
/// random seed (seeds whose closure hits zero are discarded).
fn arb_ring_and_s() -> impl Strategy<Value = (Arc<FiniteRing>, MultClosedSet)> {
    (arb_ring(), proptest::collection::vec(0usize..64, 0..3)).prop_filter_map(
        "seed closure contains zero",
        |(ring, raw)| {
            let seed: Vec<usize> = raw.iter().map(|&x| 1 + x % (ring.size() - 1)).collect();
            MultClosedSet::closure(&ring, seed).ok().map(|s| (ring, s))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructed_rings_satisfy_the_axioms(ring in arb_ring()) {
        prop_assert!(ring.check_axioms().is_ok());
    }

    #[test]
    fn ideal_spans_validate_and_radicals_behave(
        ring in arb_ring(),
        gens in proptest::collection::vec(0usize..64, 0..3),
    ) {
        let gens: Vec<usize> = gens.iter().map(|&g| g % ring.size()).collect();
        let ideal = Ideal::span(&ring, gens);
        prop_assert!(ideal.validate().is_ok());
        let rad = ideal.radical();
        prop_assert!(rad.validate().is_ok());
        prop_assert!(ideal.members.is_subset(&rad.members));
        prop_assert_eq!(rad.radical().members, rad.members.clone());
    }

    #[test]
    fn radical_distributes_over_intersection(
        ring in arb_ring(),
        a in 0usize..64,
        b in 0usize..64,
    ) {
        let i = Ideal::span(&ring, [a % ring.size()]);
        let j = Ideal::span(&ring, [b % ring.size()]);
        let lhs = i.intersect(&j).radical().members;
        let rhs = i.radical().members.intersect(&j.radical().members);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn closures_and_saturations_are_mult_closed((_, s) in arb_ring_and_s()) {
        prop_assert!(s.validate().is_ok());
        let sat = s.saturation();
        prop_assert!(sat.validate().is_ok());
        prop_assert!(s.members.is_subset(&sat.members));
        prop_assert_eq!(sat.saturation().members, sat.members.clone());
    }

    #[test]
    fn prime_complements_are_mult_closed(ring in arb_ring()) {
        for p in spectrum(&ring).primes {
            prop_assert!(MultClosedSet::complement_of_prime(&p).is_ok());
        }
    }

    #[test]
    fn trivial_s_prime_matches_plain_primality(ring in arb_ring()) {
        let s1 = MultClosedSet::trivial(&ring);
        for i in spectrum(&ring).all_ideals {
            prop_assert_eq!(i.is_prime(), i.is_s_prime(&s1).verdict);
        }
    }

    #[test]
    fn submodule_spans_validate(
        ring in arb_ring(),
        gens in proptest::collection::vec(0usize..64, 0..3),
    ) {
        let m = FiniteModule::regular(&ring);
        let gens: Vec<usize> = gens.iter().map(|&g| g % m.size()).collect();
        let n = Submodule::span(&m, gens);
        prop_assert!(n.validate().is_ok());
    }

    #[test]
    fn lattice_is_canonically_sorted_and_valid(ring in arb_ring()) {
        let m = FiniteModule::regular(&ring);
        let lattice = m.submodules().unwrap();
        for w in lattice.windows(2) {
            prop_assert!(w[0].members() < w[1].members());
        }
        for n in &lattice {
            prop_assert!(n.validate().is_ok());
        }
    }

    #[test]
    fn annihilator_and_colon_results_are_ideals(
        ring in arb_ring(),
        g in 0usize..64,
    ) {
        let m = FiniteModule::regular(&ring);
        let n = Submodule::span(&m, [g % m.size()]);
        prop_assert!(n.annihilator().validate().is_ok());
        prop_assert!(n.colon_ideal().validate().is_ok());
        let back = n.colon_into(&n.annihilator());
        prop_assert!(back.validate().is_ok());
    }
}

proptest! {
    // the lattice-quantified checks are heavier; fewer cases
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn four_forms_agree_on_random_inputs(
        (ring, s) in arb_ring_and_s(),
        g in 0usize..64,
    ) {
        let m = FiniteModule::regular(&ring);
        let n = Submodule::span(&m, [g % m.size()]);
        let verdicts: Vec<bool> = SecondaryForm::ALL
            .iter()
            .map(|&f| is_s_secondary(&n, &s, f).unwrap().verdict)
            .collect();
        prop_assert!(verdicts.iter().all(|&v| v == verdicts[0]), "verdicts {:?}", verdicts);
    }

    #[test]
    fn s_second_implies_s_secondary_on_random_inputs(
        (ring, s) in arb_ring_and_s(),
        g in 0usize..64,
    ) {
        let m = FiniteModule::regular(&ring);
        let n = Submodule::span(&m, [g % m.size()]);
        if is_s_second(&n, &s).unwrap().verdict {
            prop_assert!(is_s_secondary(&n, &s, SecondaryForm::A).unwrap().verdict);
        }
    }

    #[test]
    fn trivial_s_secondary_is_plain_secondary(ring in arb_ring(), g in 0usize..64) {
        let m = FiniteModule::regular(&ring);
        let n = Submodule::span(&m, [g % m.size()]);
        let triv = MultClosedSet::trivial(&ring);
        prop_assert_eq!(
            is_secondary(&n).verdict,
            is_s_secondary(&n, &triv, SecondaryForm::A).unwrap().verdict
        );
    }

    #[test]
    fn submodules_are_meets_of_cis(ring in arb_ring()) {
        let m = FiniteModule::regular(&ring);
        let cis = m.completely_irreducibles().unwrap();
        for n in m.submodules().unwrap() {
            let mut meet = ElemSet::full(m.size());
            for l in &cis {
                if n.members().is_subset(l.members()) {
                    meet = meet.intersect(l.members());
                }
            }
            prop_assert_eq!(&meet, n.members());
        }
    }

    #[test]
    fn decision_reports_always_recheck(
        (ring, s) in arb_ring_and_s(),
        g in 0usize..64,
    ) {
        let m = FiniteModule::regular(&ring);
        let n = Submodule::span(&m, [g % m.size()]);
        let rep = is_secondary(&n);
        prop_assert!(recheck(&DeciderCall::Secondary(&n), &rep).is_ok());
        let rep = is_s_secondary(&n, &s, SecondaryForm::A).unwrap();
        prop_assert!(recheck(&DeciderCall::SSecondary(&n, &s, SecondaryForm::A), &rep).is_ok());
        let rep = finalg::decide::is_s_prime_submodule(&n, &s);
        prop_assert!(recheck(&DeciderCall::SPrime(&n, &s), &rep).is_ok());
    }
}
