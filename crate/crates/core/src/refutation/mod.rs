//! Resolution proofs over C(n): the res(σ,P) rule, the lemma-driven
//! refutation builder, an independent checker, occurrence counting and the
//! index ordering used by the induction.

mod builder;
pub mod mutate;
mod occ;
mod ordering;
mod resolve;
mod verify;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clause::{Atom, Clause, ClauseSet};
use crate::term::Substitution;

pub use builder::{
    c_b_template, c_prime_template, cor1_template, cor2_template, cor3_template, derive_c_b, derive_c_prime,
    derive_cor1, derive_cor2, derive_cor3, derive_lem_first, lem_first_template, refute, BuildError, Builder,
};
pub use occ::{closed_form_a, occ, occ_table, recurrence_a, OccError};
pub use ordering::{check_ordering_properties, lessdot, OrderingError, OrderingReport, PropertyStatus};
pub use resolve::{
    binary_resolvents, binary_resolvents_on, def10_conclusion, resolve, resolve_toward, ResolveError,
    Resolvent,
};
pub use verify::{verify_proof, verify_trace, VerifyError};

/// Index into [`RefutationProof::nodes`].
pub type NodeRef = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepKind {
    Input {
        clause_id: String,
    },
    /// `res(σ, P)`; `pivot` is the common instance `P`.
    Res {
        left: NodeRef,
        right: NodeRef,
        pivot: Atom,
        sigma: Substitution,
    },
    /// Standard factoring; only produced by the saturation prover.
    Factor {
        child: NodeRef,
        sigma: Substitution,
    },
    /// Contraction of duplicate atoms (a no-op on set-shaped clauses).
    Contract {
        child: NodeRef,
    },
    /// ε-rewriting of m-terms, in either direction.
    EpsUnfold {
        child: NodeRef,
    },
}

impl StepKind {
    pub fn children(&self) -> Vec<NodeRef> {
        match self {
            StepKind::Input { .. } => vec![],
            StepKind::Res { left, right, .. } => vec![*left, *right],
            StepKind::Factor { child, .. } | StepKind::Contract { child } | StepKind::EpsUnfold { child } => {
                vec![*child]
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            StepKind::Input { .. } => "input",
            StepKind::Res { .. } => "res",
            StepKind::Factor { .. } => "factor",
            StepKind::Contract { .. } => "contract",
            StepKind::EpsUnfold { .. } => "eps",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefStep {
    pub kind: StepKind,
    /// Canonical form; shared between nodes with equal conclusions.
    pub conclusion: Arc<Clause>,
}

/// A proof DAG whose children always precede their parents.
#[derive(Clone, Debug)]
pub struct RefutationProof {
    pub nodes: Vec<RefStep>,
    pub root: NodeRef,
    pub inputs: ClauseSet,
}

impl RefutationProof {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root_conclusion(&self) -> &Clause {
        &self.nodes[self.root].conclusion
    }

    /// The root derives the empty clause.
    pub fn is_refutation(&self) -> bool {
        self.root < self.nodes.len() && self.root_conclusion().is_empty()
    }

    pub fn count_kind(&self, name: &str) -> usize {
        self.nodes.iter().filter(|n| n.kind.name() == name).count()
    }

    /// Ids of the input clauses referenced by `Input` nodes.
    pub fn input_ids(&self) -> Vec<&str> {
        self.nodes
            .iter()
            .filter_map(|n| match &n.kind {
                StepKind::Input { clause_id } => Some(clause_id.as_str()),
                _ => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("{0:?} is not a permutation of 0..{1}")]
    NotAPermutation(Vec<u64>, usize),
}

/// A bijection `b` on `{0, …, m−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bijection {
    map: Vec<u64>,
}

impl Bijection {
    pub fn new(map: Vec<u64>) -> Result<Bijection, BijectionError> {
        let m = map.len();
        let mut seen = vec![false; m];
        for &v in &map {
            match seen.get_mut(v as usize) {
                Some(slot) if !*slot => *slot = true,
                _ => return Err(BijectionError::NotAPermutation(map, m)),
            }
        }
        Ok(Bijection { map })
    }

    pub fn identity(m: usize) -> Bijection {
        Bijection { map: (0..m as u64).collect() }
    }

    /// `prefix` followed by the unused values in ascending order.
    pub fn with_prefix(prefix: &[u64], m: usize) -> Result<Bijection, BijectionError> {
        let mut map = prefix.to_vec();
        map.extend((0..m as u64).filter(|v| !prefix.contains(v)));
        Bijection::new(map)
    }

    /// `b(0) = first`, the rest ascending.
    pub fn placing_first(m: usize, first: u64) -> Result<Bijection, BijectionError> {
        Bijection::with_prefix(&[first], m)
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    pub fn get(&self, i: u64) -> u64 {
        self.map[i as usize]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.map
    }

    /// The bijection `b′` of the induction step for `c′_b(k, j)`:
    /// `b′(i) = b(i)` for `i ≤ k`, `b′(k+1) = b(j+1)`, the rest ascending.
    pub fn derive_prime(&self, k: u64, j: u64) -> Bijection {
        let mut prefix: Vec<u64> = self.map[..=k as usize].to_vec();
        prefix.push(self.get(j + 1));
        Bijection::with_prefix(&prefix, self.size()).expect("prefix of a bijection stays injective")
    }
}

impl fmt::Display for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.map)
    }
}

/// An element `(i, j)` of `A_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderedPair {
    pub i: u64,
    pub j: u64,
}

impl OrderedPair {
    pub fn new(i: u64, j: u64) -> Self {
        OrderedPair { i, j }
    }

    pub fn in_a(&self, n: u64) -> bool {
        self.i <= self.j && self.j <= n
    }
}

impl fmt::Display for OrderedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bijection_construction() {
        assert!(Bijection::new(vec![1, 0, 2]).is_ok());
        assert!(Bijection::new(vec![1, 1, 2]).is_err());
        assert!(Bijection::new(vec![0, 3]).is_err());
        assert_eq!(Bijection::placing_first(4, 2).unwrap().as_slice(), &[2, 0, 1, 3]);
    }

    #[test]
    fn derived_bijection_keeps_prefix() {
        let b = Bijection::new(vec![2, 0, 3, 1]).unwrap();
        let b2 = b.derive_prime(0, 2);
        assert_eq!(b2.as_slice(), &[2, 1, 0, 3]);
        let b3 = b.derive_prime(1, 1);
        assert_eq!(b3.as_slice(), &[2, 0, 3, 1]);
    }
}
