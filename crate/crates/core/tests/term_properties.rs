use proptest::prelude::*;

use nia_core::term::{apply_subst, match_term, unify, Substitution, Term};

fn leaf() -> impl Strategy<Value = Term> {
    prop_oneof![
        3 => prop::sample::select(vec!["x", "y", "z", "w"]).prop_map(Term::var),
        1 => (1u64..3).prop_map(|i| Term::indexed("x", i)),
        1 => (0u64..3).prop_map(Term::num),
    ]
}

fn term() -> impl Strategy<Value = Term> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::f),
            inner.clone().prop_map(Term::s),
            (inner.clone(), inner).prop_map(|(a, b)| Term::max(a, b)),
        ]
    })
}

fn with_m() -> impl Strategy<Value = Term> {
    term().prop_recursive(2, 16, 2, |inner| {
        prop_oneof![
            (0u64..4, inner.clone()).prop_map(|(k, t)| Term::m(k, t)),
            inner.clone().prop_map(Term::s),
            (inner.clone(), inner).prop_map(|(a, b)| Term::max(a, b)),
        ]
    })
}

/// `pattern` can be instantiated to `target`.
fn instance_of(target: &Term, pattern: &Term) -> bool {
    match_term(pattern, target, &mut Substitution::new())
}

/// Replaces the subterms at the chosen preorder positions by fresh
/// variables; `t` is then an instance of the result.
fn generalise(t: &Term, picks: &[usize], prefix: &str) -> Term {
    fn go(t: &Term, picks: &[usize], prefix: &str, pos: &mut usize) -> Term {
        let here = *pos;
        *pos += 1;
        if picks.contains(&here) {
            return Term::var(&format!("{prefix}{here}"));
        }
        match t {
            Term::App(func, args) => {
                Term::app(*func, args.iter().map(|a| go(a, picks, prefix, pos)).collect()).unwrap()
            }
            other => other.clone(),
        }
    }
    go(t, picks, prefix, &mut 0)
}

proptest! {
    #[test]
    fn unifiers_equalise_both_sides(a in term(), b in term()) {
        if let Ok(sigma) = unify(&a, &b) {
            prop_assert_eq!(apply_subst(&sigma, &a), apply_subst(&sigma, &b));
        }
    }

    #[test]
    fn unification_is_symmetric_up_to_renaming(a in term(), b in term()) {
        match (unify(&a, &b), unify(&b, &a)) {
            (Ok(s), Ok(t)) => {
                let (sa, ta) = (apply_subst(&s, &a), apply_subst(&t, &a));
                prop_assert!(instance_of(&sa, &ta) && instance_of(&ta, &sa), "{} vs {}", sa, ta);
            }
            (Err(_), Err(_)) => {}
            (l, r) => prop_assert!(false, "one direction failed: {:?} / {:?}", l.is_ok(), r.is_ok()),
        }
    }

    #[test]
    fn idempotent_unifiers_are_stable(a in term(), b in term(), t in term()) {
        if let Ok(sigma) = unify(&a, &b) {
            prop_assert!(sigma.is_idempotent());
            let once = apply_subst(&sigma, &t);
            prop_assert_eq!(apply_subst(&sigma, &once), once);
        }
    }

    #[test]
    fn unifiers_are_more_general_than_any_common_instance(
        c in term(),
        left in prop::collection::vec(0usize..12, 0..3),
        right in prop::collection::vec(0usize..12, 0..3),
    ) {
        let a = generalise(&c, &left, "a");
        let b = generalise(&c, &right, "b");
        let sigma = unify(&a, &b).expect("a common instance exists");
        prop_assert!(instance_of(&c, &apply_subst(&sigma, &a)));
    }

    #[test]
    fn m_unfolding_strictly_decreases_the_weight(t in with_m()) {
        let mut current = t.clone();
        let mut steps = 0;
        while current.contains_m() {
            let next = current.unfold_m().unwrap();
            prop_assert!(next.m_weight() < current.m_weight());
            current = next;
            steps += 1;
        }
        prop_assert_eq!(steps as u64, t.m_weight());
        prop_assert_eq!(current, t.unfold_all());
    }
}
