use std::collections::BTreeSet;

use proptest::prelude::*;

use nia_core::clause::{Atom, Clause, ClauseSet, ClauseTerm};
use nia_core::io::{export_tptp, import_tptp, parse_clause};
use nia_core::term::{Substitution, Term, Variable};

fn small_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
        (0u64..2).prop_map(Term::num),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::f),
            inner.clone().prop_map(Term::s),
            (inner.clone(), inner).prop_map(|(a, b)| Term::max(a, b)),
        ]
    })
}

fn atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        (small_term(), small_term()).prop_map(|(a, b)| Atom::le(a, b)),
        (small_term(), small_term()).prop_map(|(a, b)| Atom::eq(a, b)),
        small_term().prop_map(|t| Atom::new("P", vec![t]).unwrap()),
    ]
}

fn clause() -> impl Strategy<Value = Clause> {
    (prop::collection::vec(atom(), 0..3), prop::collection::vec(atom(), 0..3))
        .prop_map(|(a, s)| Clause::new(a, s).canonicalize())
}

fn clause_term() -> impl Strategy<Value = ClauseTerm> {
    let leaf = prop::collection::vec(clause(), 1..3).prop_map(ClauseTerm::leaf);
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| ClauseTerm::oplus(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| ClauseTerm::otimes(l, r)),
        ]
    })
}

fn substitution() -> impl Strategy<Value = Substitution> {
    prop::collection::vec((prop::sample::select(vec!["x", "y", "z"]), small_term()), 0..3).prop_map(|pairs| {
        // bind to terms over fresh names so the result is idempotent
        let fresh = |t: &Term| t.rename_plain(&|n| format!("{n}'").into());
        Substitution::from(
            pairs.into_iter().map(|(v, t)| (Variable::plain(v), fresh(&t))).collect::<Vec<_>>(),
        )
    })
}

fn eval(t: &ClauseTerm) -> BTreeSet<Clause> {
    t.eval().unwrap()
}

proptest! {
    #[test]
    fn otimes_distributes_over_oplus(a in clause_term(), b in clause_term(), c in clause_term()) {
        let lhs = ClauseTerm::otimes(a.clone(), ClauseTerm::oplus(b.clone(), c.clone()));
        let rhs = ClauseTerm::oplus(ClauseTerm::otimes(a.clone(), b), ClauseTerm::otimes(a, c));
        prop_assert_eq!(eval(&lhs), eval(&rhs));
    }

    #[test]
    fn both_operations_commute(a in clause_term(), b in clause_term()) {
        prop_assert_eq!(
            eval(&ClauseTerm::oplus(a.clone(), b.clone())),
            eval(&ClauseTerm::oplus(b.clone(), a.clone()))
        );
        prop_assert_eq!(eval(&ClauseTerm::otimes(a.clone(), b.clone())), eval(&ClauseTerm::otimes(b, a)));
    }

    #[test]
    fn subsumption_is_reflexive(c in clause()) {
        prop_assert!(c.subsumes(&c));
    }

    #[test]
    fn subsumption_is_transitive(
        c in clause(),
        s1 in substitution(),
        s2 in substitution(),
        extra1 in prop::collection::vec(atom(), 0..2),
        extra2 in prop::collection::vec(atom(), 0..2),
    ) {
        let mut d = c.apply(&s1);
        d.succedent.extend(extra1);
        let d = d.canonicalize();
        let mut e = d.apply(&s2);
        e.antecedent.extend(extra2);
        let e = e.canonicalize();
        if c.subsumes(&d) && d.subsumes(&e) {
            prop_assert!(c.subsumes(&e), "{} / {} / {}", c, d, e);
        }
    }

    #[test]
    fn tautology_is_invariant_under_canonicalisation(a in prop::collection::vec(atom(), 0..3), s in prop::collection::vec(atom(), 0..3), shared in atom()) {
        let plain = Clause::new(a.clone(), s.clone());
        prop_assert_eq!(plain.is_tautology(), plain.canonicalize().is_tautology());
        let mut a = a;
        let mut s = s;
        a.push(shared.clone());
        s.insert(0, shared);
        let taut = Clause::new(a, s);
        prop_assert!(taut.is_tautology() && taut.canonicalize().is_tautology());
    }

    #[test]
    fn display_syntax_round_trips(c in clause()) {
        prop_assert_eq!(parse_clause(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn tptp_round_trips_canonical_sets(cs in prop::collection::vec(clause(), 0..5)) {
        let set = ClauseSet::from_clauses(cs, None);
        let text = export_tptp(&set);
        let back = import_tptp(&text).unwrap();
        prop_assert!(back.same_clauses(&set));
        prop_assert_eq!(export_tptp(&back), text);
    }
}
