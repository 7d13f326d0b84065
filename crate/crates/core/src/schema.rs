//! Proof-schema skeleton of the non-injectivity proof, extraction of its
//! characteristic clause term, clause-set symbol unfolding and the direct
//! generator for the clause family C(n).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::clause::{Arith, Atom, Clause, ClauseError, ClauseSet, ClauseTerm, Formula, IteratedOr, Sequent};
use crate::term::{Numeral, Term};

pub const OMEGA: &str = "omega";
pub const PSI: &str = "psi";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("malformed proof node: {0}")]
    Malformed(String),
    #[error("no definition for cl^{{{proof},{config}}}")]
    MissingDefinition { proof: String, config: String },
    #[error("clause-set symbol argument {arg} is not ground for n = {n}")]
    NonGround { arg: String, n: u64 },
    #[error("proof link ordering violated in {proof}: {reason}")]
    LinkOrder { proof: String, reason: String },
    #[error(transparent)]
    Clause(#[from] ClauseError),
}

/// Which end-sequent occurrences count as Ω-ancestors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Configuration {
    Empty,
    /// `Ω(k) ≡ ∀x∃y(x ≤ y ∧ ⋁_{i=0}^{k} f(y) = ī)` on the left.
    Omega,
}

impl Configuration {
    pub fn id(self) -> &'static str {
        match self {
            Configuration::Empty => "empty",
            Configuration::Omega => "Omega",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Configuration::Empty => "no end-sequent occurrence is an Ω-ancestor",
            Configuration::Omega => "the antecedent I(k) of the end sequent is an Ω-ancestor",
        }
    }

    pub fn from_id(id: &str) -> Option<Configuration> {
        match id {
            "empty" => Some(Configuration::Empty),
            "Omega" => Some(Configuration::Omega),
            _ => None,
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// How the auxiliary formulas of a binary inference relate to the cut
/// structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ancestry {
    /// cut-ancestors in every configuration
    Cut,
    /// ancestors of end-sequent occurrences that a non-empty configuration selects
    Omega,
    None,
}

/// An axiom partitioned by ancestry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomParts {
    pub gamma_omega: Vec<Formula>,
    pub gamma_cut: Vec<Formula>,
    pub gamma: Vec<Formula>,
    pub delta_omega: Vec<Formula>,
    pub delta_cut: Vec<Formula>,
    pub delta: Vec<Formula>,
}

impl AxiomParts {
    fn is_empty(&self) -> bool {
        self.gamma_omega.is_empty()
            && self.gamma_cut.is_empty()
            && self.gamma.is_empty()
            && self.delta_omega.is_empty()
            && self.delta_cut.is_empty()
            && self.delta.is_empty()
    }
}

/// The rule-tree skeleton: only what characteristic-term extraction reads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofNode {
    Axiom(AxiomParts),
    Link { proof: String, config: Configuration, arg: Arith },
    Unary { rule: &'static str, child: Box<ProofNode> },
    Binary { rule: &'static str, left: Box<ProofNode>, right: Box<ProofNode>, aux: Ancestry },
}

impl ProofNode {
    fn unary(rule: &'static str, child: ProofNode) -> ProofNode {
        ProofNode::Unary { rule, child: Box::new(child) }
    }

    fn binary(rule: &'static str, aux: Ancestry, left: ProofNode, right: ProofNode) -> ProofNode {
        ProofNode::Binary { rule, left: Box::new(left), right: Box::new(right), aux }
    }

    /// All links, left to right.
    pub fn links(&self) -> Vec<(&str, Configuration, Arith)> {
        let mut out = Vec::new();
        self.collect_links(&mut out);
        out
    }

    fn collect_links<'a>(&'a self, out: &mut Vec<(&'a str, Configuration, Arith)>) {
        match self {
            ProofNode::Axiom(_) => {}
            ProofNode::Link { proof, config, arg } => out.push((proof, *config, *arg)),
            ProofNode::Unary { child, .. } => child.collect_links(out),
            ProofNode::Binary { left, right, .. } => {
                left.collect_links(out);
                right.collect_links(out);
            }
        }
    }
}

/// A proof schema pair `(π, ν(k))`; the step is instantiated at ground `k`
/// and proves the end sequent at `k + 1`.
#[derive(Clone)]
pub struct ProofSchemaPair {
    pub proof: String,
    pub base: ProofNode,
    pub step: Arc<dyn Fn(u64) -> ProofNode + Send + Sync>,
}

impl fmt::Debug for ProofSchemaPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProofSchemaPair")
            .field("proof", &self.proof)
            .field("base", &self.base)
            .finish_non_exhaustive()
    }
}

impl ProofSchemaPair {
    /// The proof for parameter value `a`.
    pub fn at(&self, a: u64) -> ProofNode {
        if a == 0 {
            self.base.clone()
        } else {
            (self.step)(a - 1)
        }
    }
}

/// Ordered pairs plus the configurations relevant for extraction.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub pairs: Vec<ProofSchemaPair>,
    pub configurations: Vec<Configuration>,
}

impl Fixture {
    pub fn pair(&self, proof: &str) -> Option<&ProofSchemaPair> {
        self.pairs.iter().find(|p| p.proof == proof)
    }

    /// Links in a base are forbidden; a step at `k` may link to its own
    /// symbol only at `k`, and to later pairs freely.
    pub fn validate(&self, up_to: u64) -> Result<(), SchemaError> {
        for (index, pair) in self.pairs.iter().enumerate() {
            if !pair.base.links().is_empty() {
                return Err(SchemaError::LinkOrder {
                    proof: pair.proof.clone(),
                    reason: "base proof contains a proof link".into(),
                });
            }
            for k in 0..up_to {
                for (target, _, arg) in pair.step.as_ref()(k).links() {
                    let position = self.pairs.iter().position(|p| p.proof == target).ok_or_else(|| {
                        SchemaError::MissingDefinition { proof: target.to_string(), config: String::new() }
                    })?;
                    let reason = if position < index {
                        Some(format!("links back to earlier pair {target}"))
                    } else if position == index && arg.eval(k) != Some(k) {
                        Some(format!("self link at {arg} from step parameter {k}"))
                    } else {
                        None
                    };
                    if let Some(reason) = reason {
                        return Err(SchemaError::LinkOrder { proof: pair.proof.clone(), reason });
                    }
                }
            }
        }
        Ok(())
    }
}

fn alpha() -> Term {
    Term::var("alpha")
}

fn beta() -> Term {
    Term::var("beta")
}

fn gamma() -> Term {
    Term::var("gamma")
}

fn atom(a: Atom) -> Formula {
    Formula::Atom(a)
}

fn f_eq(t: Term, i: u64) -> Formula {
    atom(Atom::f_eq(t, i))
}

/// `⋁_{i=0}^{bound} f(t) = ī`
fn f_disjunction(t: Term, bound: u64) -> Formula {
    Formula::IteratedOr(IteratedOr { body: Atom::f_eq(t, 0), hole: 1, bound: Numeral(bound) })
}

fn axiom(parts: AxiomParts) -> ProofNode {
    ProofNode::Axiom(parts)
}

/// `AX_eq(ī) ≡ f(β) = ī*, f(α) = ī* ⊢ f(β) = f(α)`
fn ax_eq(i: u64) -> ProofNode {
    axiom(AxiomParts {
        gamma_cut: vec![f_eq(beta(), i), f_eq(alpha(), i)],
        delta: vec![atom(Atom::eq(Term::f(beta()), Term::f(alpha())))],
        ..AxiomParts::default()
    })
}

/// `s(β) ≤ α* ⊢ β < α`
fn ax_succ() -> ProofNode {
    axiom(AxiomParts {
        gamma_cut: vec![atom(Atom::le(Term::s(beta()), alpha()))],
        delta: vec![atom(Atom { pred: Arc::from("lt"), args: vec![beta(), alpha()] })],
        ..AxiomParts::default()
    })
}

/// `⊢ α ≤ α*`
fn ax_refl() -> ProofNode {
    axiom(AxiomParts { delta_cut: vec![atom(Atom::le(alpha(), alpha()))], ..AxiomParts::default() })
}

/// The branch `I_s(ī)* ⊢ EQ_f` shared by ω(0), ψ(0) and ψ(k+1).
fn injectivity_branch(i: u64) -> ProofNode {
    ProofNode::unary("∃:r", ProofNode::binary("∧:r", Ancestry::None, ax_succ(), ax_eq(i)))
}

fn omega_base() -> ProofNode {
    let left = ProofNode::unary(
        "∀:l",
        ProofNode::binary(
            "∧:r",
            Ancestry::Cut,
            ax_refl(),
            axiom(AxiomParts {
                gamma: vec![f_eq(alpha(), 0)],
                delta_cut: vec![f_eq(alpha(), 0)],
                ..AxiomParts::default()
            }),
        ),
    );
    ProofNode::binary("cut", Ancestry::Cut, left, injectivity_branch(0))
}

fn omega_step(k: u64) -> ProofNode {
    let link = ProofNode::Link { proof: PSI.into(), config: Configuration::Omega, arg: Arith::Num(k + 1) };
    let disjunction = axiom(AxiomParts {
        gamma: vec![f_disjunction(alpha(), k + 1)],
        delta_cut: vec![f_disjunction(alpha(), k + 1)],
        ..AxiomParts::default()
    });
    ProofNode::binary(
        "cut",
        Ancestry::Cut,
        ProofNode::binary("∧:r", Ancestry::Cut, link, ax_refl()),
        ProofNode::unary("∀:l", disjunction),
    )
}

fn psi_base() -> ProofNode {
    injectivity_branch(0)
}

fn psi_step(k: u64) -> ProofNode {
    let max_le = || Atom::le(Term::max(alpha(), beta()), gamma());
    let max_axiom = |rhs: Term| {
        axiom(AxiomParts {
            gamma_omega: vec![atom(max_le())],
            delta_cut: vec![atom(Atom::le(rhs, gamma()))],
            ..AxiomParts::default()
        })
    };
    // f(γ) = 0̄** ⊢ f(γ) = 0̄*  …  f(γ) = k+1** ⊢ f(γ) = k+1*, joined by ∨:l
    let tautology = |i: u64| {
        axiom(AxiomParts {
            gamma_omega: vec![f_eq(gamma(), i)],
            delta_cut: vec![f_eq(gamma(), i)],
            ..AxiomParts::default()
        })
    };
    let cascade =
        (1..=k + 1).fold(tautology(0), |acc, i| ProofNode::binary("∨:l", Ancestry::Omega, acc, tautology(i)));
    let upper = ProofNode::unary(
        "∃:r",
        ProofNode::binary(
            "∧:r",
            Ancestry::Cut,
            ProofNode::binary("∧:r", Ancestry::Cut, max_axiom(alpha()), ProofNode::unary("∨:r", cascade)),
            max_axiom(beta()),
        ),
    );
    let link = ProofNode::Link { proof: PSI.into(), config: Configuration::Omega, arg: Arith::Num(k) };
    let with_link = ProofNode::binary("cut", Ancestry::Cut, upper, link);
    let with_branch = ProofNode::binary("cut", Ancestry::Cut, with_link, injectivity_branch(k + 1));
    ProofNode::unary("c:r", with_branch)
}

/// The two-pair proof schema `⟨(ω(0), ω(n+1)), (ψ(0), ψ(n+1))⟩`.
pub fn nia_fixture() -> Fixture {
    Fixture {
        pairs: vec![
            ProofSchemaPair { proof: OMEGA.into(), base: omega_base(), step: Arc::new(omega_step) },
            ProofSchemaPair { proof: PSI.into(), base: psi_base(), step: Arc::new(psi_step) },
        ],
        configurations: vec![Configuration::Empty, Configuration::Omega],
    }
}

/// Characteristic clause term `Θ^{π,Ω}` of a proof skeleton.
pub fn extract_char_term(node: &ProofNode, cfg: Configuration) -> Result<ClauseTerm, SchemaError> {
    let omega_active = cfg != Configuration::Empty;
    match node {
        ProofNode::Axiom(parts) => {
            if parts.is_empty() {
                return Err(SchemaError::Malformed("axiom without formulas".into()));
            }
            let mut antecedent = Vec::new();
            let mut succedent = Vec::new();
            if omega_active {
                antecedent.extend(parts.gamma_omega.iter().cloned());
                succedent.extend(parts.delta_omega.iter().cloned());
            }
            antecedent.extend(parts.gamma_cut.iter().cloned());
            succedent.extend(parts.delta_cut.iter().cloned());
            Ok(ClauseTerm::Leaf(vec![Sequent { antecedent, succedent }]))
        }
        ProofNode::Link { proof, config, arg } => {
            if proof.is_empty() {
                return Err(SchemaError::Malformed("proof link without a symbol".into()));
            }
            Ok(ClauseTerm::ClSym { proof: proof.clone(), config: config.id().to_string(), arg: *arg })
        }
        ProofNode::Unary { child, .. } => extract_char_term(child, cfg),
        ProofNode::Binary { left, right, aux, .. } => {
            let l = extract_char_term(left, cfg)?;
            let r = extract_char_term(right, cfg)?;
            let ancestors = match aux {
                Ancestry::Cut => true,
                Ancestry::Omega => omega_active,
                Ancestry::None => false,
            };
            Ok(if ancestors { ClauseTerm::oplus(l, r) } else { ClauseTerm::otimes(l, r) })
        }
    }
}

/// Definitions `cl^{ψ,Ω}(a)`, computed on demand from a fixture.
pub struct Definitions<'a> {
    fixture: &'a Fixture,
    cache: BTreeMap<(String, String, u64), ClauseTerm>,
}

impl<'a> Definitions<'a> {
    pub fn new(fixture: &'a Fixture) -> Self {
        Definitions { fixture, cache: BTreeMap::new() }
    }

    pub fn lookup(&mut self, proof: &str, config: &str, a: u64) -> Result<ClauseTerm, SchemaError> {
        let key = (proof.to_string(), config.to_string(), a);
        if let Some(t) = self.cache.get(&key) {
            return Ok(t.clone());
        }
        let missing =
            || SchemaError::MissingDefinition { proof: proof.to_string(), config: config.to_string() };
        let cfg = Configuration::from_id(config).ok_or_else(missing)?;
        if !self.fixture.configurations.contains(&cfg) {
            return Err(missing());
        }
        let pair = self.fixture.pair(proof).ok_or_else(missing)?;
        let term = extract_char_term(&pair.at(a), cfg)?;
        self.cache.insert(key, term.clone());
        Ok(term)
    }
}

/// Replaces every clause-set symbol by its definition (recursively, down to
/// the base case) and expands iterated disjunctions.
pub fn unfold_cl_symbols(
    t: &ClauseTerm,
    n: Numeral,
    defs: &mut Definitions<'_>,
) -> Result<ClauseTerm, SchemaError> {
    match t {
        ClauseTerm::Leaf(sequents) => Ok(ClauseTerm::Leaf(sequents.iter().map(unfold_sequent).collect())),
        ClauseTerm::Oplus(l, r) => {
            Ok(ClauseTerm::oplus(unfold_cl_symbols(l, n, defs)?, unfold_cl_symbols(r, n, defs)?))
        }
        ClauseTerm::Otimes(l, r) => {
            Ok(ClauseTerm::otimes(unfold_cl_symbols(l, n, defs)?, unfold_cl_symbols(r, n, defs)?))
        }
        ClauseTerm::ClSym { proof, config, arg } => {
            let a = arg.eval(n.0).ok_or_else(|| SchemaError::NonGround { arg: arg.to_string(), n: n.0 })?;
            let body = defs.lookup(proof, config, a)?;
            // symbols inside a definition at `a` only refer to arguments below
            // `a` or to later pairs, so this recursion terminates
            unfold_cl_symbols(&body, n, defs)
        }
    }
}

fn unfold_sequent(s: &Sequent) -> Sequent {
    let expand = |f: &Formula| match f {
        Formula::IteratedOr(it) => unfold_iterated_or(f, it.bound),
        other => other.clone(),
    };
    Sequent {
        antecedent: s.antecedent.iter().map(expand).collect(),
        succedent: s.succedent.iter().map(expand).collect(),
    }
}

/// `⋁_{i=0}^{0} P(i) ⇒ P(0)`, `⋁_{i=0}^{s(y)} P(i) ⇒ ⋁_{i=0}^{y} P(i) ∨ P(s(y))`.
/// Formulas that are not iterated disjunctions are returned unchanged.
pub fn unfold_iterated_or(formula: &Formula, bound: Numeral) -> Formula {
    match formula {
        Formula::IteratedOr(it) => (1..=bound.0).fold(Formula::Atom(it.instance(0)), |acc, i| {
            Formula::Or(Box::new(acc), Box::new(Formula::Atom(it.instance(i))))
        }),
        other => other.clone(),
    }
}

/// `CL_NiA(n)`, evaluated and with tautologies removed.
pub fn extract_clause_set(n: Numeral) -> Result<ClauseSet, SchemaError> {
    let fixture = nia_fixture();
    let top = ClauseTerm::ClSym {
        proof: OMEGA.into(),
        config: Configuration::Empty.id().into(),
        arg: Arith::Param(0),
    };
    let mut defs = Definitions::new(&fixture);
    let unfolded = unfold_cl_symbols(&top, n, &mut defs)?;
    let clauses = unfolded.eval()?;
    Ok(ClauseSet::from_clauses(clauses, Some(n)).without_tautologies())
}

/// The clause set C(n), built directly. Ids: C1, C2, C3, C4_0 … C4_n, C5.
pub fn generate_c(n: Numeral) -> ClauseSet {
    let mut clauses = vec![Clause::new(vec![], vec![Atom::le(alpha(), alpha())]).with_id("C1")];
    if n.0 >= 1 {
        let max_le = Atom::le(Term::max(alpha(), beta()), gamma());
        clauses.push(Clause::new(vec![max_le.clone()], vec![Atom::le(alpha(), gamma())]).with_id("C2"));
        clauses.push(Clause::new(vec![max_le], vec![Atom::le(beta(), gamma())]).with_id("C3"));
    }
    for i in 0..=n.0 {
        clauses.push(c4(i).with_id(format!("C4_{i}")));
    }
    clauses.push(c5(n).with_id("C5"));
    ClauseSet::from_clauses(clauses, Some(n))
}

/// `f(β) = ī, f(α) = ī, s(β) ≤ α ⊢`
pub fn c4(i: u64) -> Clause {
    Clause::new(
        vec![Atom::f_eq(beta(), i), Atom::f_eq(alpha(), i), Atom::le(Term::s(beta()), alpha())],
        vec![],
    )
}

/// `⊢ f(α) = 0̄, …, f(α) = n̄`
pub fn c5(n: Numeral) -> Clause {
    Clause::new(vec![], (0..=n.0).map(|i| Atom::f_eq(alpha(), i)).collect())
}

/// Expected size of C(n).
pub fn expected_count(n: u64) -> u64 {
    if n == 0 {
        3
    } else {
        n + 5
    }
}
