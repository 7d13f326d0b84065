//! Independent proof checker. Every resolution step is recomputed from the
//! premises and the stored σ; nothing from the builder's search is trusted.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use super::{RefStep, RefutationProof, StepKind};
use crate::clause::{Atom, Clause};
use crate::term::{Substitution, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("node {node}: {reason}")]
pub struct VerifyError {
    pub node: usize,
    pub reason: String,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Strict,
    Relaxed,
}

/// Checks every node of `p` under the res(σ,P) rule. Returns the
/// least-index failing node.
pub fn verify_proof(p: &RefutationProof) -> Result<(), VerifyError> {
    verify(p, Mode::Strict)
}

/// Like [`verify_proof`], but additionally accepts standard binary
/// resolution steps and explicit factoring, as produced by saturation.
pub fn verify_trace(p: &RefutationProof) -> Result<(), VerifyError> {
    verify(p, Mode::Relaxed)
}

fn verify(p: &RefutationProof, mode: Mode) -> Result<(), VerifyError> {
    let failure = (0..p.nodes.len())
        .into_par_iter()
        .map(|i| check_node(p, i, mode).err().map(|reason| VerifyError { node: i, reason }))
        .find_first(|r| r.is_some())
        .flatten();
    if let Some(err) = failure {
        return Err(err);
    }
    if p.root >= p.nodes.len() {
        return Err(VerifyError { node: p.root, reason: "root does not exist".into() });
    }
    Ok(())
}

fn check_node(p: &RefutationProof, index: usize, mode: Mode) -> Result<(), String> {
    let RefStep { kind, conclusion } = &p.nodes[index];
    if !conclusion.is_canonical() {
        return Err(format!("conclusion {conclusion} is not in canonical form"));
    }
    for child in kind.children() {
        if child >= index {
            return Err(format!("child {child} does not precede its parent"));
        }
    }
    let premise = |i: usize| -> &Clause { &p.nodes[i].conclusion };
    match kind {
        StepKind::Input { clause_id } => {
            let input = p.inputs.get(clause_id).ok_or_else(|| format!("unknown input clause {clause_id}"))?;
            if input.canonicalize() != **conclusion {
                return Err(format!("conclusion differs from input {clause_id}"));
            }
            Ok(())
        }
        StepKind::Res { left, right, pivot, sigma } => {
            check_res(premise(*left), premise(*right), pivot, sigma, conclusion, mode)
        }
        StepKind::Factor { child, sigma } => match mode {
            Mode::Strict => Err("factoring is not a step of this calculus".into()),
            Mode::Relaxed => check_factor(premise(*child), sigma, conclusion),
        },
        StepKind::Contract { child } => {
            if premise(*child) != &**conclusion {
                return Err("contraction changed the clause".into());
            }
            Ok(())
        }
        StepKind::EpsUnfold { child } => {
            let from = premise(*child);
            if from == &**conclusion {
                return Err("ε step does not rewrite anything".into());
            }
            if from.unfold_all().canonicalize() != conclusion.unfold_all().canonicalize() {
                return Err("ε step is not an m-term rewrite".into());
            }
            Ok(())
        }
    }
}

fn apply_all(atoms: &[Atom], sigma: &Substitution) -> Vec<Atom> {
    atoms.iter().map(|a| a.apply(sigma)).collect()
}

fn check_res(
    left: &Clause,
    right: &Clause,
    pivot: &Atom,
    sigma: &Substitution,
    conclusion: &Clause,
    mode: Mode,
) -> Result<(), String> {
    if !sigma.is_idempotent() {
        return Err(format!("σ = {sigma} is not idempotent"));
    }
    let right = right.rename_apart_from(left);
    let mut vars: BTreeSet<Variable> = left.variables();
    vars.extend(right.variables());
    if let Some(v) = sigma.domain().find(|v| !vars.contains(*v)) {
        return Err(format!("σ binds {v}, which occurs in neither premise"));
    }
    let succ = apply_all(&left.succedent, sigma);
    let ante = apply_all(&right.antecedent, sigma);
    if !succ.contains(pivot) {
        return Err(format!("no left succedent atom becomes {pivot} under σ"));
    }
    if !ante.contains(pivot) {
        return Err(format!("no right antecedent atom becomes {pivot} under σ"));
    }

    // res(σ,P): every instance of P leaves both resolving sides
    let mut antecedent = apply_all(&left.antecedent, sigma);
    antecedent.extend(ante.iter().filter(|a| *a != pivot).cloned());
    let mut succedent: Vec<Atom> = succ.iter().filter(|a| *a != pivot).cloned().collect();
    succedent.extend(apply_all(&right.succedent, sigma));
    if Clause::new(antecedent, succedent).canonicalize() == *conclusion {
        return Ok(());
    }

    if mode == Mode::Relaxed {
        let left_ante = apply_all(&left.antecedent, sigma);
        let right_succ = apply_all(&right.succedent, sigma);
        for li in (0..succ.len()).filter(|&i| succ[i] == *pivot) {
            for ri in (0..ante.len()).filter(|&i| ante[i] == *pivot) {
                let mut a = left_ante.clone();
                a.extend(ante.iter().enumerate().filter(|(i, _)| *i != ri).map(|(_, x)| x.clone()));
                let mut s: Vec<Atom> =
                    succ.iter().enumerate().filter(|(i, _)| *i != li).map(|(_, x)| x.clone()).collect();
                s.extend(right_succ.iter().cloned());
                if Clause::new(a, s).canonicalize() == *conclusion {
                    return Ok(());
                }
            }
        }
    }
    Err("conclusion does not match the recomputed resolvent".into())
}

fn check_factor(child: &Clause, sigma: &Substitution, conclusion: &Clause) -> Result<(), String> {
    if !sigma.is_idempotent() {
        return Err(format!("σ = {sigma} is not idempotent"));
    }
    let merges = |atoms: &[Atom]| {
        let mapped = apply_all(atoms, sigma);
        (0..atoms.len()).any(|i| (i + 1..atoms.len()).any(|j| atoms[i] != atoms[j] && mapped[i] == mapped[j]))
    };
    if !merges(&child.antecedent) && !merges(&child.succedent) {
        return Err("σ does not identify two atoms on one side".into());
    }
    if child.apply(sigma).canonicalize() != *conclusion {
        return Err("conclusion is not the factor under σ".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::refutation::{derive_cor2, refute};
    use crate::term::Term;

    #[test]
    fn built_refutations_verify() {
        for n in 0..=3 {
            assert_eq!(verify_proof(&refute(n).unwrap()), Ok(()), "n = {n}");
        }
        assert_eq!(verify_proof(&derive_cor2(1, 1, 2).unwrap()), Ok(()));
    }

    fn first_res(p: &RefutationProof) -> usize {
        p.nodes.iter().position(|n| matches!(n.kind, StepKind::Res { .. })).unwrap()
    }

    #[test]
    fn retained_pivot_instance_is_rejected() {
        let mut p = refute(1).unwrap();
        let i = first_res(&p);
        let StepKind::Res { pivot, .. } = p.nodes[i].kind.clone() else { unreachable!() };
        let mut c = (*p.nodes[i].conclusion).clone();
        c.succedent.push(pivot);
        p.nodes[i].conclusion = Arc::new(c.canonicalize());
        let err = verify_proof(&p).unwrap_err();
        assert_eq!(err.node, i);
    }

    #[test]
    fn wrong_pivot_is_rejected() {
        let mut p = refute(2).unwrap();
        let i = first_res(&p);
        if let StepKind::Res { pivot, .. } = &mut p.nodes[i].kind {
            *pivot = Atom::f_eq(Term::num(9), 9);
        }
        assert_eq!(verify_proof(&p).unwrap_err().node, i);
    }

    #[test]
    fn strict_mode_rejects_factoring() {
        let mut p = refute(0).unwrap();
        p.nodes.push(RefStep {
            kind: StepKind::Factor { child: 0, sigma: Substitution::new() },
            conclusion: p.nodes[0].conclusion.clone(),
        });
        let last = p.nodes.len() - 1;
        assert_eq!(verify_proof(&p).unwrap_err().node, last);
        assert!(verify_trace(&p).is_err());
    }

    #[test]
    fn relaxed_mode_accepts_a_factor() {
        let clause =
            Clause::new(vec![], vec![Atom::f_eq(Term::var("x"), 0), Atom::f_eq(Term::s(Term::var("y")), 0)])
                .canonicalize();
        let mut sigma = Substitution::new();
        let (a, b) = (&clause.succedent[0], &clause.succedent[1]);
        let unifier = crate::term::unify(&a.args[0], &b.args[0]).unwrap();
        for (v, t) in unifier.iter() {
            sigma.insert_raw(v.clone(), t.clone());
        }
        let conclusion = clause.apply(&sigma).canonicalize();
        assert_eq!(conclusion.len(), 1);
        assert!(check_factor(&clause, &sigma, &conclusion).is_ok());
        assert!(check_factor(&clause, &Substitution::new(), &clause).is_err());
    }
}
