//! Builds the recursive refutation of C(n) bottom-up.
//!
//! Write `X_i` for the schematic variable `x_i` and `M(k, T)` for
//! `m(k, x̄, T)`. The fragments are:
//!
//! * `lem_first(k)`: `⊢ t ≤ M(k, t)`
//! * `cor1(k)`: `⊢ s(X_{k+1}) ≤ M(k, max(s(X_{k+1}), t))`
//! * `cor2(k, i)`: `f(X_{k+1}) = ī, f(M(k, max(s(X_{k+1}), t))) = ī ⊢`
//! * `cor3(k, i)`: `f(X_{k+1}) = ī, f(M(k, s(X_{k+1}))) = ī ⊢`
//! * `c_b(k)`: `⋀_{i≤k} f(X_{i+1}) = b(i) ⊢ ⋁_{i>k} f(M(k+1, z)) = b(i)`
//! * `c′_b(k, j)`: `⋀_{i≤k} f(X_{i+1}) = b(i) ⊢ ⋁_{i=k+1}^{j} f(M(k, s(X_{k+1}))) = b(i)`
//!
//! Every resolution step resolves toward a target atom, which fixes the
//! unifier the derivation needs even where it is not most general.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use super::resolve::{resolve_toward, ResolveError};
use super::{Bijection, NodeRef, RefStep, RefutationProof, StepKind};
use crate::clause::{Atom, Clause, ClauseSet};
use crate::schema::generate_c;
use crate::term::{Numeral, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("input clause {0} is not in C(n)")]
    MissingInput(String),
    #[error("resolution step failed: {0}")]
    Resolve(#[from] ResolveError),
    #[error("derived {got} where {expected} was expected")]
    Unexpected { expected: String, got: String },
}

fn x(i: u64) -> Term {
    Term::x(i)
}

fn free(name: &str) -> Term {
    Term::var(name)
}

fn f_is(t: Term, i: u64) -> Atom {
    Atom::f_eq(t, i)
}

fn canonical(antecedent: Vec<Atom>, succedent: Vec<Atom>) -> Clause {
    Clause::new(antecedent, succedent).canonicalize()
}

/// `⊢ t ≤ m(k, x̄, t)`
pub fn lem_first_template(k: u64) -> Clause {
    canonical(vec![], vec![Atom::le(free("t"), Term::m(k, free("t")))])
}

/// `⊢ s(x_{k+1}) ≤ m(k, x̄, max(s(x_{k+1}), t))`
pub fn cor1_template(k: u64) -> Clause {
    let head = Term::s(x(k + 1));
    canonical(vec![], vec![Atom::le(head.clone(), Term::m(k, Term::max(head, free("t"))))])
}

/// `f(x_{k+1}) = ī, f(m(k, x̄, max(s(x_{k+1}), t))) = ī ⊢`
pub fn cor2_template(k: u64, i: u64) -> Clause {
    let inner = Term::m(k, Term::max(Term::s(x(k + 1)), free("t")));
    canonical(vec![f_is(x(k + 1), i), f_is(inner, i)], vec![])
}

/// `f(x_{k+1}) = ī, f(m(k, x̄, s(x_{k+1}))) = ī ⊢`
pub fn cor3_template(k: u64, i: u64) -> Clause {
    canonical(vec![f_is(x(k + 1), i), f_is(Term::m(k, Term::s(x(k + 1))), i)], vec![])
}

fn prefix_antecedent(len: u64, b: &Bijection) -> Vec<Atom> {
    (0..len).map(|i| f_is(x(i + 1), b.get(i))).collect()
}

/// `c_b(k, n, z)` for `k ≥ −1`, given as `depth = k + 1`.
pub fn c_b_template(depth: u64, b: &Bijection) -> Clause {
    let n = b.size() as u64 - 1;
    let end = Term::m(depth, free("z"));
    canonical(prefix_antecedent(depth, b), (depth..=n).map(|i| f_is(end.clone(), b.get(i))).collect())
}

/// `c′_b(k, j)`
pub fn c_prime_template(k: u64, j: u64, b: &Bijection) -> Clause {
    let end = Term::m(k, Term::s(x(k + 1)));
    canonical(prefix_antecedent(k + 1, b), (k + 1..=j).map(|i| f_is(end.clone(), b.get(i))).collect())
}

/// Derivation session over one clause set C(n). Fragments are memoised, so
/// the resulting proof is a DAG.
pub struct Builder {
    n: u64,
    inputs: ClauseSet,
    nodes: Vec<RefStep>,
    input_nodes: HashMap<String, NodeRef>,
    lem_first: HashMap<u64, NodeRef>,
    cor1: HashMap<u64, NodeRef>,
    cor2: HashMap<(u64, u64), NodeRef>,
    cor3: HashMap<(u64, u64), NodeRef>,
    c_b: HashMap<(u64, Vec<u64>), NodeRef>,
    c_prime: HashMap<PrimeKey, NodeRef>,
}

// c′_b(k, j) depends on b(0..=k) in order and on b(k+1..=j) as a set, so this
// key determines the canonical conclusion without building it
type PrimeKey = (u64, Vec<u64>, Vec<u64>);

fn prime_key(k: u64, j: u64, b: &Bijection) -> PrimeKey {
    let values = b.as_slice();
    let mut tail = values[k as usize + 1..=j as usize].to_vec();
    tail.sort_unstable();
    (k, values[..=k as usize].to_vec(), tail)
}

impl Builder {
    pub fn new(n: u64) -> Builder {
        Builder {
            n,
            inputs: generate_c(Numeral(n)),
            nodes: Vec::new(),
            input_nodes: HashMap::new(),
            lem_first: HashMap::new(),
            cor1: HashMap::new(),
            cor2: HashMap::new(),
            cor3: HashMap::new(),
            c_b: HashMap::new(),
            c_prime: HashMap::new(),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn conclusion(&self, node: NodeRef) -> &Clause {
        &self.nodes[node].conclusion
    }

    pub fn finish(self, root: NodeRef) -> RefutationProof {
        RefutationProof { nodes: self.nodes, root, inputs: self.inputs }
    }

    fn push(&mut self, kind: StepKind, conclusion: Arc<Clause>) -> NodeRef {
        self.nodes.push(RefStep { kind, conclusion });
        self.nodes.len() - 1
    }

    pub fn input(&mut self, id: &str) -> Result<NodeRef, BuildError> {
        if let Some(&node) = self.input_nodes.get(id) {
            return Ok(node);
        }
        let clause = self.inputs.get(id).ok_or_else(|| BuildError::MissingInput(id.to_string()))?;
        let mut conclusion = clause.clone();
        conclusion.id = None;
        let node = self.push(StepKind::Input { clause_id: id.to_string() }, Arc::new(conclusion));
        self.input_nodes.insert(id.to_string(), node);
        Ok(node)
    }

    fn res(&mut self, left: NodeRef, right: NodeRef, target: &Atom) -> Result<NodeRef, BuildError> {
        let resolvent = resolve_toward(self.conclusion(left), self.conclusion(right), target)?;
        Ok(self.push(
            StepKind::Res { left, right, pivot: resolvent.pivot, sigma: resolvent.sigma },
            Arc::new(resolvent.conclusion),
        ))
    }

    /// An ε step to `target`, which must have the same full unfolding.
    fn eps(&mut self, child: NodeRef, target: Clause) -> Result<NodeRef, BuildError> {
        let from = self.conclusion(child);
        debug_assert_eq!(
            from.unfold_all().canonicalize(),
            target.unfold_all().canonicalize(),
            "ε step must preserve the unfolding"
        );
        if *from == target {
            return Ok(child);
        }
        Ok(self.push(StepKind::EpsUnfold { child }, Arc::new(target)))
    }

    fn contract(&mut self, child: NodeRef) -> NodeRef {
        let conclusion = self.nodes[child].conclusion.clone();
        self.push(StepKind::Contract { child }, conclusion)
    }

    fn expect(&self, node: NodeRef, expected: &Clause) -> Result<NodeRef, BuildError> {
        let got = self.conclusion(node);
        if got != expected {
            return Err(BuildError::Unexpected { expected: expected.to_string(), got: got.to_string() });
        }
        Ok(node)
    }

    /// `⊢ t ≤ m(k, x̄, t)`; `k = 0` is C1 itself.
    pub fn lem_first(&mut self, k: u64) -> Result<NodeRef, BuildError> {
        if let Some(&node) = self.lem_first.get(&k) {
            return Ok(node);
        }
        let node = if k == 0 {
            self.input("C1")?
        } else {
            let ih = self.lem_first(k - 1)?;
            let c3 = self.input("C3")?;
            let target = Atom::le(Term::max(Term::s(x(k)), free("_t")), free("_g"));
            let step = self.res(ih, c3, &target)?;
            self.eps(step, lem_first_template(k))?
        };
        let node = self.expect(node, &lem_first_template(k))?;
        self.lem_first.insert(k, node);
        Ok(node)
    }

    pub fn cor1(&mut self, k: u64) -> Result<NodeRef, BuildError> {
        if let Some(&node) = self.cor1.get(&k) {
            return Ok(node);
        }
        let lem = self.lem_first(k)?;
        let c2 = self.input("C2")?;
        let target = Atom::le(Term::max(Term::s(x(k + 1)), free("_t")), free("_g"));
        let node = self.res(lem, c2, &target)?;
        let node = self.expect(node, &cor1_template(k))?;
        self.cor1.insert(k, node);
        Ok(node)
    }

    fn check_value(&self, i: u64) -> Result<(), BuildError> {
        if i > self.n {
            return Err(BuildError::Precondition(format!("value {i} exceeds n = {}", self.n)));
        }
        Ok(())
    }

    pub fn cor2(&mut self, k: u64, i: u64) -> Result<NodeRef, BuildError> {
        self.check_value(i)?;
        if let Some(&node) = self.cor2.get(&(k, i)) {
            return Ok(node);
        }
        let cor1 = self.cor1(k)?;
        let c4 = self.input(&format!("C4_{i}"))?;
        let node = self.res(cor1, c4, &Atom::le(Term::s(x(k + 1)), free("_g")))?;
        let node = self.expect(node, &cor2_template(k, i))?;
        self.cor2.insert((k, i), node);
        Ok(node)
    }

    pub fn cor3(&mut self, k: u64, i: u64) -> Result<NodeRef, BuildError> {
        self.check_value(i)?;
        if let Some(&node) = self.cor3.get(&(k, i)) {
            return Ok(node);
        }
        let lem = self.lem_first(k)?;
        let c4 = self.input(&format!("C4_{i}"))?;
        let node = self.res(lem, c4, &Atom::le(Term::s(x(k + 1)), free("_g")))?;
        let node = self.expect(node, &cor3_template(k, i))?;
        self.cor3.insert((k, i), node);
        Ok(node)
    }

    fn check_bijection(&self, b: &Bijection) -> Result<(), BuildError> {
        if b.size() as u64 != self.n + 1 {
            return Err(BuildError::Precondition(format!("bijection {b} is not on 0..={}", self.n)));
        }
        Ok(())
    }

    /// `c_b(depth − 1, n, z)`; `depth = 0` is C5.
    pub fn c_b(&mut self, depth: u64, b: &Bijection) -> Result<NodeRef, BuildError> {
        self.check_bijection(b)?;
        if depth > self.n + 1 {
            return Err(BuildError::Precondition(format!(
                "c_b index {} exceeds n = {}",
                depth as i64 - 1,
                self.n
            )));
        }
        let key = (depth, b.as_slice()[..depth as usize].to_vec());
        if let Some(&node) = self.c_b.get(&key) {
            return Ok(node);
        }
        let template = c_b_template(depth, b);
        let node = if depth == 0 {
            self.input("C5")?
        } else {
            let k = depth - 1;
            let ih = self.c_b(k, b)?;
            let cor2 = self.cor2(k, b.get(k))?;
            let target = Atom::f_eq(Term::m(k, Term::max(Term::s(x(k + 1)), free("_z"))), b.get(k));
            let step = self.res(ih, cor2, &target)?;
            self.eps(step, template.clone())?
        };
        let node = self.expect(node, &template)?;
        self.c_b.insert(key, node);
        Ok(node)
    }

    /// `c′_b(k, j)`: the base case `j = n` resolves `c_b(k − 1)` with
    /// `cor3(k, b(k))`; below `n` the step combines `c′_b(k, j+1)` with
    /// `c′_{b′}(k+1, k+1)` and contracts.
    pub fn c_prime(&mut self, k: u64, j: u64, b: &Bijection) -> Result<NodeRef, BuildError> {
        self.check_bijection(b)?;
        if k > j || j > self.n {
            return Err(BuildError::Precondition(format!(
                "c′ needs k ≤ j ≤ n, got k = {k}, j = {j}, n = {}",
                self.n
            )));
        }
        let key = prime_key(k, j, b);
        if let Some(&node) = self.c_prime.get(&key) {
            return Ok(node);
        }
        let node = if j == self.n {
            let chain = self.c_b(k, b)?;
            let cor3 = self.cor3(k, b.get(k))?;
            let target = Atom::f_eq(Term::m(k, Term::s(x(k + 1))), b.get(k));
            self.res(chain, cor3, &target)?
        } else {
            let wider = self.c_prime(k, j + 1, b)?;
            let b2 = b.derive_prime(k, j);
            let unit = self.c_prime(k + 1, k + 1, &b2)?;
            let target = Atom::f_eq(Term::m(k, Term::s(x(k + 1))), b.get(j + 1));
            let step = self.res(wider, unit, &target)?;
            self.contract(step)
        };
        let node = self.expect(node, &c_prime_template(k, j, b))?;
        self.c_prime.insert(key, node);
        Ok(node)
    }

    /// Resolves C5 successively against `f(x_1) = ī ⊢` for `i = 0..=n`.
    pub fn refute(&mut self) -> Result<NodeRef, BuildError> {
        let m = self.n as usize + 1;
        let mut current = self.input("C5")?;
        for i in 0..=self.n {
            let b = Bijection::placing_first(m, i).expect("valid first value");
            let unit = self.c_prime(0, 0, &b)?;
            current = self.res(current, unit, &Atom::f_eq(x(1), i))?;
        }
        let node = self.expect(current, &Clause::empty())?;
        Ok(node)
    }
}

fn fragment(
    n: u64,
    build: impl FnOnce(&mut Builder) -> Result<NodeRef, BuildError>,
) -> Result<RefutationProof, BuildError> {
    let mut builder = Builder::new(n);
    let root = build(&mut builder)?;
    Ok(builder.finish(root))
}

/// Fragment deriving `⊢ t ≤ m(k, x̄, t)` from C(n), with `t` a variable.
pub fn derive_lem_first(k: u64, n: u64) -> Result<RefutationProof, BuildError> {
    if k > 0 && n == 0 {
        return Err(BuildError::Precondition("C(0) lacks C2 and C3".into()));
    }
    fragment(n, |b| b.lem_first(k))
}

pub fn derive_cor1(k: u64, n: u64) -> Result<RefutationProof, BuildError> {
    if n == 0 {
        return Err(BuildError::Precondition("C(0) lacks C2 and C3".into()));
    }
    fragment(n, |b| b.cor1(k))
}

pub fn derive_cor2(k: u64, i: u64, n: u64) -> Result<RefutationProof, BuildError> {
    if n == 0 {
        return Err(BuildError::Precondition("C(0) lacks C2 and C3".into()));
    }
    fragment(n, |b| b.cor2(k, i))
}

pub fn derive_cor3(k: u64, i: u64, n: u64) -> Result<RefutationProof, BuildError> {
    if k > 0 && n == 0 {
        return Err(BuildError::Precondition("C(0) lacks C2 and C3".into()));
    }
    fragment(n, |b| b.cor3(k, i))
}

/// Fragment deriving `c_b(k, n, z)` for `−1 ≤ k ≤ n`.
pub fn derive_c_b(k: i64, n: u64, b: &Bijection) -> Result<RefutationProof, BuildError> {
    if k < -1 || k > n as i64 {
        return Err(BuildError::Precondition(format!("k = {k} outside −1..={n}")));
    }
    if k >= 0 && n == 0 {
        return Err(BuildError::Precondition("C(0) lacks C2 and C3".into()));
    }
    fragment(n, |builder| builder.c_b((k + 1) as u64, b))
}

pub fn derive_c_prime(k: u64, j: u64, n: u64, b: &Bijection) -> Result<RefutationProof, BuildError> {
    fragment(n, |builder| builder.c_prime(k, j, b))
}

/// The refutation of C(n).
pub fn refute(n: u64) -> Result<RefutationProof, BuildError> {
    fragment(n, Builder::refute)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inputs_used(p: &RefutationProof, id: &str) -> usize {
        p.input_ids().iter().filter(|i| **i == id).count()
    }

    #[test]
    fn lemma_first_fragments() {
        let p0 = derive_lem_first(0, 2).unwrap();
        assert_eq!(p0.root_conclusion().to_string(), "⊢ v0 ≤ v0");
        assert_eq!(p0.len(), 1);

        let p1 = derive_lem_first(1, 2).unwrap();
        assert_eq!(p1.root_conclusion(), &lem_first_template(1));
        assert_eq!(p1.count_kind("res"), 1);
        assert_eq!(p1.count_kind("eps"), 1);

        let p2 = derive_lem_first(2, 2).unwrap();
        assert_eq!(p2.count_kind("res"), 2);
        assert_eq!(inputs_used(&p2, "C3"), 1);
    }

    #[test]
    fn corollary_fragments() {
        let c1 = derive_cor1(0, 1).unwrap();
        assert_eq!(c1.root_conclusion().to_string(), "⊢ s(x_1) ≤ max(s(x_1),v0)");
        let c2 = derive_cor2(0, 0, 1).unwrap();
        assert_eq!(c2.root_conclusion().to_string(), "f(max(s(x_1),v0)) = n0, f(x_1) = n0 ⊢");
        assert!(matches!(derive_cor2(0, 2, 1), Err(BuildError::Precondition(_))));
        let c3 = derive_cor3(0, 0, 0).unwrap();
        assert_eq!(c3.root_conclusion().to_string(), "f(s(x_1)) = n0, f(x_1) = n0 ⊢");
        let c3 = derive_cor3(3, 2, 3).unwrap();
        let unfolded = c3.root_conclusion().unfold_all();
        let expected =
            Term::max(Term::s(x(1)), Term::max(Term::s(x(2)), Term::max(Term::s(x(3)), Term::s(x(4)))));
        assert!(unfolded.antecedent.contains(&Atom::f_eq(expected, 2)));
    }

    #[test]
    fn c_prime_small_cases() {
        let id0 = Bijection::identity(1);
        let p = derive_c_prime(0, 0, 0, &id0).unwrap();
        assert_eq!(p.root_conclusion().to_string(), "f(x_1) = n0 ⊢");

        let id1 = Bijection::identity(2);
        let p = derive_c_prime(0, 0, 1, &id1).unwrap();
        assert_eq!(p.root_conclusion().to_string(), "f(x_1) = n0 ⊢");
        assert_eq!(p.count_kind("contract"), 1);
        assert!(derive_c_prime(1, 0, 1, &id1).is_err());
        assert!(derive_c_prime(0, 0, 2, &id1).is_err());
    }

    #[test]
    fn c_b_chain() {
        let b = Bijection::new(vec![1, 0, 2]).unwrap();
        let p = derive_c_b(-1, 2, &b).unwrap();
        assert_eq!(p.input_ids(), vec!["C5"]);
        for k in 0..=2 {
            let p = derive_c_b(k, 2, &b).unwrap();
            assert_eq!(p.root_conclusion(), &c_b_template(k as u64 + 1, &b));
        }
    }

    #[test]
    fn refutations_reach_the_empty_clause() {
        for n in 0..=3 {
            let p = refute(n).unwrap();
            assert!(p.is_refutation(), "n = {n}");
        }
    }
}
