use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

use super::{RefutationProof, StepKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OccError {
    #[error("no input clause named {0}")]
    UnknownClause(String),
}

/// Multiplicity of every node in the tree unfolding of the DAG below the root.
fn multiplicities(p: &RefutationProof) -> Vec<BigUint> {
    let mut mult = vec![BigUint::zero(); p.nodes.len()];
    if p.root >= p.nodes.len() {
        return mult;
    }
    mult[p.root] = BigUint::one();
    // children precede parents, so a reverse sweep sees each parent first
    for i in (0..=p.root).rev() {
        if mult[i].is_zero() {
            continue;
        }
        let m = mult[i].clone();
        for child in p.nodes[i].kind.children() {
            mult[child] += &m;
        }
    }
    mult
}

/// Uses of every input clause in the tree unfolding of `p`.
pub fn occ_table(p: &RefutationProof) -> BTreeMap<String, BigUint> {
    let mult = multiplicities(p);
    let mut table: BTreeMap<String, BigUint> =
        p.inputs.iter().filter_map(|c| c.id.clone()).map(|id| (id, BigUint::zero())).collect();
    for (node, m) in p.nodes.iter().zip(mult) {
        if let StepKind::Input { clause_id } = &node.kind {
            *table.entry(clause_id.clone()).or_default() += m;
        }
    }
    table
}

/// Number of times input `clause_id` is used in the tree unfolding of `p`.
pub fn occ(clause_id: &str, p: &RefutationProof) -> Result<BigUint, OccError> {
    occ_table(p).remove(clause_id).ok_or_else(|| OccError::UnknownClause(clause_id.to_string()))
}

/// `a(0) = 1`, `a(m) = m·a(m−1) + 1`.
pub fn recurrence_a(m: u64) -> BigUint {
    (1..=m).fold(BigUint::one(), |a, i| a * i + 1u32)
}

/// `Σ_{i=0}^{m} m!/i!`, summed from `i = m` downward as running products.
pub fn closed_form_a(m: u64) -> BigUint {
    let mut total = BigUint::zero();
    let mut term = BigUint::one();
    for i in (0..=m).rev() {
        total += &term;
        term *= i.max(1);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refutation::refute;

    #[test]
    fn recurrence_values() {
        let values: Vec<BigUint> = (0..5).map(recurrence_a).collect();
        let expected: Vec<BigUint> = [1u32, 2, 5, 16, 65].iter().map(|&v| v.into()).collect();
        assert_eq!(values, expected);
        for m in 0..=20 {
            assert_eq!(recurrence_a(m), closed_form_a(m), "m = {m}");
        }
    }

    #[test]
    fn c5_counts() {
        assert_eq!(occ("C5", &refute(0).unwrap()).unwrap(), 2u32.into());
        assert_eq!(occ("C5", &refute(1).unwrap()).unwrap(), 5u32.into());
        let p3 = refute(3).unwrap();
        assert_eq!(occ("C5", &p3).unwrap(), 65u32.into());
        assert!(matches!(occ("C9", &p3), Err(OccError::UnknownClause(_))));
    }

    #[test]
    fn single_input_proof() {
        let p = crate::refutation::derive_lem_first(0, 1).unwrap();
        assert_eq!(occ("C1", &p).unwrap(), BigUint::one());
        assert_eq!(occ("C5", &p).unwrap(), BigUint::zero());
    }
}
