use proptest::prelude::*;

use nia_core::refutation::mutate::{corrupt, Corruption};
use nia_core::refutation::{closed_form_a, occ, recurrence_a, refute, verify_proof, StepKind};
use nia_core::schema::generate_c;
use nia_core::term::Numeral;

#[test]
fn refutations_up_to_five_are_sound_and_use_only_inputs() {
    for n in 0..=5 {
        let p = refute(n).unwrap();
        assert!(p.is_refutation(), "n={n}");
        assert_eq!(verify_proof(&p), Ok(()), "n={n}");
        let cs = generate_c(Numeral(n));
        for node in &p.nodes {
            if let StepKind::Input { clause_id } = &node.kind {
                let input = cs.get(clause_id).expect("known id");
                assert_eq!(input.canonicalize(), *node.conclusion);
            }
        }
    }
}

#[test]
fn codomain_clause_uses_follow_the_recurrence() {
    for n in 0..=5u64 {
        let uses = occ("C5", &refute(n).unwrap()).unwrap();
        assert_eq!(uses, recurrence_a(n + 1), "n={n}");
    }
    assert_eq!(recurrence_a(1), 2u32.into());
    assert_eq!(recurrence_a(4), 65u32.into());
}

#[test]
fn recurrence_matches_the_closed_form() {
    for m in 0..=20 {
        assert_eq!(recurrence_a(m), closed_form_a(m), "m={m}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn single_node_corruptions_are_located(node in 0usize..1000, kind in 0usize..4, salt in 0usize..8) {
        thread_local! {
            static PROOF: nia_core::refutation::RefutationProof = refute(2).unwrap();
        }
        PROOF.with(|p| {
            let node = node % p.len();
            if let Some(bad) = corrupt(p, node, Corruption::ALL[kind], salt) {
                let err = verify_proof(&bad).expect_err("corruption caught");
                prop_assert_eq!(err.node, node);
            }
            Ok(())
        })?;
    }
}
