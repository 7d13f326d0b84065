//! Knuth-Bendix ordering with unit weights, lifted to atoms.
//!
//! Precedence: predicates compare by name, then `max > s > f`, and every
//! function symbol sits above every numeral, with smaller numerals above
//! larger ones. M-terms are unfolded before comparison.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::clause::Atom;
use crate::term::{Func, Term, Variable};

fn rank(t: &Term) -> (u8, u64) {
    match t {
        Term::Num(n) => (0, u64::MAX - n.value()),
        Term::App(Func::F, _) => (1, 0),
        Term::App(Func::S, _) => (1, 1),
        Term::App(Func::Max, _) => (1, 2),
        Term::Var(_) | Term::Indexed { .. } | Term::M { .. } => unreachable!("ranked only at symbols"),
    }
}

fn args(t: &Term) -> &[Term] {
    match t {
        Term::App(_, xs) => xs,
        _ => &[],
    }
}

// variable occurrences of `s` minus those of `t`
fn var_balance<'a>(
    s: impl Iterator<Item = &'a Term>,
    t: impl Iterator<Item = &'a Term>,
) -> HashMap<Variable, i64> {
    fn walk(t: &Term, sign: i64, out: &mut HashMap<Variable, i64>) {
        match t {
            Term::Var(_) | Term::Indexed { .. } => {
                *out.entry(t.as_variable().expect("variable")).or_default() += sign;
            }
            Term::App(_, xs) => xs.iter().for_each(|x| walk(x, sign, out)),
            Term::Num(_) => {}
            Term::M { .. } => walk(&t.unfold_all(), sign, out),
        }
    }
    let mut out = HashMap::new();
    s.for_each(|x| walk(x, 1, &mut out));
    t.for_each(|x| walk(x, -1, &mut out));
    out
}

// callers unfold m-terms first
fn gt(s: &Term, t: &Term) -> bool {
    if let Some(v) = t.as_variable() {
        return s != t && s.occurs(&v);
    }
    if s.is_variable() {
        return false;
    }
    if var_balance([s].into_iter(), [t].into_iter()).values().any(|&d| d < 0) {
        return false;
    }
    match s.size().cmp(&t.size()) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => match rank(s).cmp(&rank(t)) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => lex_gt(args(s), args(t)),
        },
    }
}

fn lex_gt(xs: &[Term], ys: &[Term]) -> bool {
    xs.iter().zip(ys).find(|(x, y)| x != y).is_some_and(|(x, y)| gt(x, y))
}

fn atom_gt(a: &Atom, b: &Atom) -> bool {
    if var_balance(a.args.iter(), b.args.iter()).values().any(|&d| d < 0) {
        return false;
    }
    match a.size().cmp(&b.size()) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => match a.pred.cmp(&b.pred) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => a.args.len() == b.args.len() && lex_gt(&a.args, &b.args),
        },
    }
}

/// `Some(order)` when the terms are comparable, `None` otherwise.
pub fn compare_terms(s: &Term, t: &Term) -> Option<Ordering> {
    if s.contains_m() || t.contains_m() {
        return compare_terms(&s.unfold_all(), &t.unfold_all());
    }
    if s == t {
        Some(Ordering::Equal)
    } else if gt(s, t) {
        Some(Ordering::Greater)
    } else if gt(t, s) {
        Some(Ordering::Less)
    } else {
        None
    }
}

pub fn compare_atoms(a: &Atom, b: &Atom) -> Option<Ordering> {
    if a.contains_m() || b.contains_m() {
        return compare_atoms(&a.unfold_all(), &b.unfold_all());
    }
    if a == b {
        Some(Ordering::Equal)
    } else if atom_gt(a, b) {
        Some(Ordering::Greater)
    } else if atom_gt(b, a) {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// Positions (in `atoms`) of the atoms no other atom is strictly above.
pub fn maximal(atoms: &[&Atom]) -> Vec<usize> {
    if atoms.iter().any(|a| a.contains_m()) {
        let unfolded: Vec<Atom> = atoms.iter().map(|a| a.unfold_all()).collect();
        return maximal(&unfolded.iter().collect::<Vec<_>>());
    }
    (0..atoms.len()).filter(|&i| !atoms.iter().any(|b| atom_gt(b, atoms[i]))).collect()
}
