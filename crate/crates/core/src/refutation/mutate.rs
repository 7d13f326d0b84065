//! Single-node fault injection for exercising the verifier. Each corruption
//! leaves every other node untouched, so a sound checker must report
//! exactly the corrupted index.

use std::sync::Arc;

use super::{RefutationProof, StepKind};
use crate::clause::{Atom, Clause};
use crate::term::{Substitution, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Corruption {
    /// Drop one atom of the conclusion, or add one to an empty conclusion.
    Conclusion,
    /// Wrap the first argument of a resolution pivot in `s(…)`.
    Pivot,
    /// Wrap one σ binding in `s(…)`.
    Binding,
    /// Point an input node at a different input clause.
    InputId,
}

impl Corruption {
    pub const ALL: [Corruption; 4] =
        [Corruption::Conclusion, Corruption::Pivot, Corruption::Binding, Corruption::InputId];
}

/// `p` with node `node` corrupted as `what`; `salt` picks among the atoms,
/// bindings or ids involved. `None` if the corruption does not apply.
pub fn corrupt(p: &RefutationProof, node: usize, what: Corruption, salt: usize) -> Option<RefutationProof> {
    let step = p.nodes.get(node)?;
    let mut out = p.clone();
    let target = &mut out.nodes[node];
    match (what, &step.kind) {
        (Corruption::Conclusion, _) => {
            target.conclusion = Arc::new(drop_or_add(&step.conclusion, salt));
        }
        (Corruption::Pivot, StepKind::Res { left, right, pivot, sigma }) => {
            let mut args = pivot.args.clone();
            let first = args.first_mut()?;
            *first = Term::s(first.clone());
            target.kind = StepKind::Res {
                left: *left,
                right: *right,
                pivot: Atom::new(&pivot.pred, args).ok()?,
                sigma: sigma.clone(),
            };
        }
        (Corruption::Binding, StepKind::Res { sigma, .. } | StepKind::Factor { sigma, .. }) => {
            let wrapped = wrap_binding(sigma, salt)?;
            match &mut target.kind {
                StepKind::Res { sigma, .. } | StepKind::Factor { sigma, .. } => *sigma = wrapped,
                _ => unreachable!(),
            }
        }
        (Corruption::InputId, StepKind::Input { clause_id }) => {
            let own = p.inputs.get(clause_id)?.canonicalize();
            let others: Vec<&str> =
                p.inputs.iter().filter(|c| c.canonicalize() != own).filter_map(|c| c.id.as_deref()).collect();
            if others.is_empty() {
                return None;
            }
            target.kind = StepKind::Input { clause_id: others[salt % others.len()].to_string() };
        }
        _ => return None,
    }
    Some(out)
}

fn drop_or_add(c: &Clause, salt: usize) -> Clause {
    let mut c = c.clone();
    let total = c.antecedent.len() + c.succedent.len();
    if total == 0 {
        c.succedent.push(Atom::le(Term::num(0), Term::num(0)));
    } else {
        let k = salt % total;
        if k < c.antecedent.len() {
            c.antecedent.remove(k);
        } else {
            c.succedent.remove(k - c.antecedent.len());
        }
    }
    c.canonicalize()
}

fn wrap_binding(sigma: &Substitution, salt: usize) -> Option<Substitution> {
    let pairs: Vec<_> = sigma.iter().map(|(v, t)| (v.clone(), t.clone())).collect();
    if pairs.is_empty() {
        return None;
    }
    let k = salt % pairs.len();
    let wrapped = pairs
        .into_iter()
        .enumerate()
        .map(|(i, (v, t))| if i == k { (v, Term::s(t)) } else { (v, t) })
        .collect::<Vec<_>>();
    Some(Substitution::from(wrapped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refutation::{refute, verify_proof};

    #[test]
    fn every_applicable_corruption_of_a_small_proof_is_located() {
        let p = refute(1).unwrap();
        let mut tried = 0;
        for node in 0..p.len() {
            for what in Corruption::ALL {
                for salt in 0..3 {
                    let Some(bad) = corrupt(&p, node, what, salt) else { continue };
                    tried += 1;
                    let err = verify_proof(&bad).expect_err("corruption must be caught");
                    assert_eq!(err.node, node, "{what:?} salt {salt}: {err}");
                }
            }
        }
        assert!(tried > p.len() * 3);
    }
}
