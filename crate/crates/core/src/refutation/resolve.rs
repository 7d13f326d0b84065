use std::collections::BTreeSet;

use thiserror::Error;

use crate::clause::{Atom, Clause};
use crate::term::{could_unify, extend_unifier, Substitution, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("pivot atoms do not unify")]
    NoUnifier,
    #[error("{0} is not an atom of the {1}")]
    PickNotFound(String, &'static str),
    #[error("no succedent/antecedent pair unifies with the target {0}")]
    NoCandidate(String),
}

/// A resolvent together with the unifier used and the resolved atom `P`.
/// `right` is the right premise after renaming apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolvent {
    pub conclusion: Clause,
    pub sigma: Substitution,
    pub pivot: Atom,
    pub right: Clause,
}

fn atom_pairs<'a>(
    a: &'a Atom,
    b: &'a Atom,
) -> Option<impl Iterator<Item = (crate::term::Term, crate::term::Term)> + 'a> {
    (a.pred == b.pred && a.args.len() == b.args.len())
        .then(|| a.args.iter().cloned().zip(b.args.iter().cloned()))
}

/// `(Π σ, Π′σ ⊢ Δσ, Δ′σ)` with every occurrence of `pivot` removed from the
/// left succedent and the right antecedent, canonicalised.
pub fn def10_conclusion(left: &Clause, right: &Clause, sigma: &Substitution, pivot: &Atom) -> Clause {
    let mut antecedent: Vec<Atom> = left.antecedent.iter().map(|a| a.apply(sigma)).collect();
    antecedent.extend(right.antecedent.iter().map(|a| a.apply(sigma)).filter(|a| a != pivot));
    let mut succedent: Vec<Atom> =
        left.succedent.iter().map(|a| a.apply(sigma)).filter(|a| a != pivot).collect();
    succedent.extend(right.succedent.iter().map(|a| a.apply(sigma)));
    Clause::new(antecedent, succedent).canonicalize()
}

/// `res(σ, P)` with σ the most general unifier of the two picked atoms.
/// `right_pick` is given in the right premise's own variables; the right
/// premise is renamed apart from the left first.
pub fn resolve(
    left: &Clause,
    right: &Clause,
    left_pick: &Atom,
    right_pick: &Atom,
) -> Result<Resolvent, ResolveError> {
    if !left.succedent.contains(left_pick) {
        return Err(ResolveError::PickNotFound(left_pick.to_string(), "left succedent"));
    }
    let position = right
        .antecedent
        .iter()
        .position(|a| a == right_pick)
        .ok_or_else(|| ResolveError::PickNotFound(right_pick.to_string(), "right antecedent"))?;
    let renamed = right.rename_apart_from(left);
    let picked = &renamed.antecedent[position];
    let pairs = atom_pairs(picked, left_pick).ok_or(ResolveError::NoUnifier)?;
    let mut sigma = Substitution::new();
    // the right pick goes first so its variables are the ones bound
    extend_unifier(&mut sigma, pairs).map_err(|_| ResolveError::NoUnifier)?;
    let pivot = left_pick.apply(&sigma);
    let conclusion = def10_conclusion(left, &renamed, &sigma, &pivot);
    Ok(Resolvent { conclusion, sigma, pivot, right: renamed })
}

/// `res(σ, P)` where σ unifies a left succedent atom, a right antecedent
/// atom and the template `target`. Template variables are kept out of σ's
/// domain, so σ is a (possibly non-most-general) unifier of the premises'
/// atoms that makes the resolved atom an instance of `target`.
pub fn resolve_toward(left: &Clause, right: &Clause, target: &Atom) -> Result<Resolvent, ResolveError> {
    let renamed = right.rename_apart_from(left);
    let mut template_vars = BTreeSet::new();
    target.collect_variables(&mut template_vars);
    let premise_vars: BTreeSet<Variable> = left.variables().union(&renamed.variables()).cloned().collect();
    if template_vars.iter().any(|v| v.is_plain() && premise_vars.contains(v)) {
        // template variables must be fresh for the premises
        return Err(ResolveError::NoCandidate(target.to_string()));
    }
    for l in &left.succedent {
        let Some(to_left) = atom_pairs(target, l) else { continue };
        let to_left: Vec<_> = to_left.collect();
        for r in &renamed.antecedent {
            let Some(to_right) = atom_pairs(target, r) else { continue };
            let mut sigma = Substitution::new();
            if extend_unifier(&mut sigma, to_left.iter().cloned().chain(to_right)).is_err() {
                continue;
            }
            sigma.retain(|v, _| !(v.is_plain() && template_vars.contains(v)));
            let pivot = l.apply(&sigma);
            debug_assert_eq!(pivot, r.apply(&sigma));
            let conclusion = def10_conclusion(left, &renamed, &sigma, &pivot);
            return Ok(Resolvent { conclusion, sigma, pivot, right: renamed });
        }
    }
    Err(ResolveError::NoCandidate(target.to_string()))
}

/// All standard binary resolvents (one succedent atom of `left` against one
/// antecedent atom of `right`, most general unifier, only the two picked
/// occurrences removed), canonicalised.
pub fn binary_resolvents(left: &Clause, right: &Clause) -> Vec<Resolvent> {
    binary_resolvents_on(left, right, &|_| true, &|_| true)
}

/// Binary resolvents restricted to the left succedent positions and right
/// antecedent positions accepted by the two filters.
pub fn binary_resolvents_on(
    left: &Clause,
    right: &Clause,
    left_ok: &dyn Fn(usize) -> bool,
    right_ok: &dyn Fn(usize) -> bool,
) -> Vec<Resolvent> {
    // renaming is the expensive part, so rule out hopeless pairs first
    let candidates: Vec<(usize, usize)> = left
        .succedent
        .iter()
        .enumerate()
        .filter(|(i, _)| left_ok(*i))
        .flat_map(|(li, l)| {
            right
                .antecedent
                .iter()
                .enumerate()
                .filter(|(i, r)| right_ok(*i) && skeletons_unify(l, r))
                .map(move |(ri, _)| (li, ri))
        })
        .collect();
    if candidates.is_empty() {
        return Vec::new();
    }
    let renamed = right.rename_apart_from(left);
    let mut out = Vec::new();
    for (li, ri) in candidates {
        let (l, r) = (&left.succedent[li], &renamed.antecedent[ri]);
        let Some(pairs) = atom_pairs(r, l) else { continue };
        let mut sigma = Substitution::new();
        if extend_unifier(&mut sigma, pairs).is_err() {
            continue;
        }
        let pivot = l.apply(&sigma);
        let mut antecedent: Vec<Atom> = left.antecedent.iter().map(|a| a.apply(&sigma)).collect();
        antecedent.extend(
            renamed.antecedent.iter().enumerate().filter(|(i, _)| *i != ri).map(|(_, a)| a.apply(&sigma)),
        );
        let mut succedent: Vec<Atom> = left
            .succedent
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != li)
            .map(|(_, a)| a.apply(&sigma))
            .collect();
        succedent.extend(renamed.succedent.iter().map(|a| a.apply(&sigma)));
        out.push(Resolvent {
            conclusion: Clause::new(antecedent, succedent).canonicalize(),
            sigma,
            pivot,
            right: renamed.clone(),
        });
    }
    out
}

fn skeletons_unify(a: &Atom, b: &Atom) -> bool {
    a.pred == b.pred
        && a.args.len() == b.args.len()
        && a.args.iter().zip(&b.args).all(|(s, t)| could_unify(s, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Term;

    fn v(name: &str) -> Term {
        Term::var(name)
    }

    #[test]
    fn c5_against_cor6_instance() {
        let c5 = Clause::new(vec![], vec![Atom::f_eq(v("y"), 0)]);
        let cor6 = Clause::new(vec![Atom::f_eq(Term::x(1), 0), Atom::f_eq(Term::s(Term::x(1)), 0)], vec![]);
        let r = resolve(&c5, &cor6, &c5.succedent[0], &cor6.antecedent[1]).unwrap();
        assert_eq!(r.conclusion, Clause::new(vec![Atom::f_eq(Term::x(1), 0)], vec![]));
        assert_eq!(r.sigma, Substitution::singleton(Variable::plain("y"), Term::s(Term::x(1))));
    }

    #[test]
    fn unit_clash() {
        let a = Atom::new("A", vec![]).unwrap();
        let pos = Clause::new(vec![], vec![a.clone()]);
        let neg = Clause::new(vec![a.clone()], vec![]);
        let r = resolve(&pos, &neg, &a, &a).unwrap();
        assert!(r.conclusion.is_empty());
        assert!(r.sigma.is_empty());
    }

    #[test]
    fn lemma_step_against_c3() {
        let big_m = Term::m(1, Term::max(Term::s(Term::x(2)), v("t0")));
        let left =
            Clause::new(vec![], vec![Atom::le(Term::max(Term::s(Term::x(1)), v("t0")), big_m.clone())]);
        let c3 = Clause::new(
            vec![Atom::le(Term::max(v("beta"), v("delta")), v("gamma"))],
            vec![Atom::le(v("delta"), v("gamma"))],
        );
        let r = resolve(&left, &c3, &left.succedent[0], &c3.antecedent[0]).unwrap();
        assert_eq!(r.conclusion, Clause::new(vec![], vec![Atom::le(v("t0"), big_m.clone())]).canonicalize());
        assert_eq!(r.sigma.get(&Variable::plain("beta")), Some(&Term::s(Term::x(1))));
        assert_eq!(r.sigma.get(&Variable::plain("gamma")), Some(&big_m));
        assert_eq!(r.sigma.get(&Variable::plain("delta")), Some(&v("t0")));
        assert_eq!(r.sigma.len(), 3);
    }

    #[test]
    fn all_pivot_instances_are_removed() {
        let left = Clause::new(vec![], vec![Atom::f_eq(v("x"), 0), Atom::f_eq(v("y"), 0)]);
        let right = Clause::new(vec![Atom::f_eq(Term::x(1), 0)], vec![]);
        let toward = resolve_toward(&left, &right, &Atom::f_eq(Term::x(1), 0)).unwrap();
        // only one of the two atoms becomes an instance of the pivot
        assert_eq!(toward.conclusion.succedent.len(), 1);
        let mut sigma = Substitution::new();
        sigma.insert_raw(Variable::plain("x"), Term::x(1));
        sigma.insert_raw(Variable::plain("y"), Term::x(1));
        let pivot = Atom::f_eq(Term::x(1), 0);
        assert!(def10_conclusion(&left, &right, &sigma, &pivot).is_empty());
    }

    #[test]
    fn toward_target_uses_a_non_most_general_unifier() {
        let lem = Clause::new(vec![], vec![Atom::le(v("v0"), v("v0"))]);
        let c3 = Clause::new(
            vec![Atom::le(Term::max(v("v0"), v("v1")), v("v2"))],
            vec![Atom::le(v("v1"), v("v2"))],
        );
        let target = Atom::le(Term::max(Term::s(Term::x(1)), v("_t")), v("_g"));
        let r = resolve_toward(&lem, &c3, &target).unwrap();
        let expected = Clause::new(vec![], vec![Atom::le(v("z"), Term::max(Term::s(Term::x(1)), v("z")))]);
        assert_eq!(r.conclusion, expected.canonicalize());
        assert!(r.sigma.domain().all(|d| !d.to_string().starts_with('_')));
        assert!(resolve_toward(&lem, &c3, &Atom::f_eq(v("_a"), 0)).is_err());
    }

    #[test]
    fn binary_resolution_keeps_other_instances() {
        let left = Clause::new(vec![], vec![Atom::f_eq(v("x"), 0), Atom::f_eq(Term::x(1), 0)]);
        let right = Clause::new(vec![Atom::f_eq(Term::x(1), 0)], vec![]);
        let all = binary_resolvents(&left, &right);
        assert_eq!(all.len(), 2);
        assert!(all.iter().any(|r| r.conclusion.len() == 1));
    }
}
