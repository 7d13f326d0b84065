//! Atoms, sequent-style clauses, canonical forms, tautologies, subsumption,
//! and the ⊕/⊗ clause-term algebra.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::term::{could_match, match_term, Numeral, Substitution, Term, Variable};

pub const LE: &str = "le";
pub const EQ: &str = "eq";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Atom {
    pub pred: Arc<str>,
    pub args: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClauseError {
    #[error("predicate {pred} expects {expected} arguments, got {got}")]
    Arity { pred: String, expected: usize, got: usize },
    #[error("clause term still contains the symbol cl^{{{0}}}; unfold it first")]
    UnfoldedSymbol(String),
    #[error("iterated disjunction left unexpanded in a leaf")]
    UnexpandedIteratedOr,
    #[error("disjunction in an antecedent is not clausal")]
    NotClausal,
}

impl Atom {
    pub fn new(pred: &str, args: Vec<Term>) -> Result<Atom, ClauseError> {
        let expected = match pred {
            LE | EQ => Some(2),
            _ => None,
        };
        if let Some(expected) = expected {
            if args.len() != expected {
                return Err(ClauseError::Arity { pred: pred.to_string(), expected, got: args.len() });
            }
        }
        Ok(Atom { pred: Arc::from(pred), args })
    }

    /// `lhs ≤ rhs`
    pub fn le(lhs: Term, rhs: Term) -> Atom {
        Atom { pred: Arc::from(LE), args: vec![lhs, rhs] }
    }

    /// `lhs = rhs`
    pub fn eq(lhs: Term, rhs: Term) -> Atom {
        Atom { pred: Arc::from(EQ), args: vec![lhs, rhs] }
    }

    /// `f(arg) = value̅`
    pub fn f_eq(arg: Term, value: u64) -> Atom {
        Atom::eq(Term::f(arg), Term::num(value))
    }

    pub fn map_terms(&self, f: impl Fn(&Term) -> Term) -> Atom {
        Atom { pred: self.pred.clone(), args: self.args.iter().map(f).collect() }
    }

    pub fn apply(&self, sigma: &Substitution) -> Atom {
        self.map_terms(|t| sigma.apply(t))
    }

    pub fn unfold_all(&self) -> Atom {
        self.map_terms(Term::unfold_all)
    }

    pub fn contains_m(&self) -> bool {
        self.args.iter().any(Term::contains_m)
    }

    pub fn collect_variables(&self, out: &mut BTreeSet<Variable>) {
        self.args.iter().for_each(|t| t.collect_variables(out));
    }

    pub fn size(&self) -> usize {
        1 + self.args.iter().map(Term::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        self.args.iter().map(Term::depth).max().unwrap_or(0)
    }

    pub fn render_into(&self, out: &mut String, blind: bool) {
        out.push_str(&self.pred);
        out.push('(');
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            a.render_into(out, blind);
        }
        out.push(')');
    }

    fn sort_key(&self) -> SortKey {
        let mut s = String::new();
        self.render_into(&mut s, true);
        (self.pred.clone(), self.args.len(), s)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&*self.pred, self.args.as_slice()) {
            (LE, [a, b]) => write!(f, "{a} ≤ {b}"),
            (EQ, [a, b]) => write!(f, "{a} = {b}"),
            _ => {
                let mut s = String::new();
                self.render_into(&mut s, false);
                f.write_str(&s)
            }
        }
    }
}

/// A sequent-style clause `antecedent ⊢ succedent`. Equality, ordering and
/// hashing ignore `id`; equality is syntactic, so compare canonical forms
/// to decide equality up to renaming.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Clause {
    pub antecedent: Vec<Atom>,
    pub succedent: Vec<Atom>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
}

impl PartialEq for Clause {
    fn eq(&self, other: &Self) -> bool {
        self.antecedent == other.antecedent && self.succedent == other.succedent
    }
}

impl Eq for Clause {}

impl Hash for Clause {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.antecedent.hash(state);
        self.succedent.hash(state);
    }
}

impl PartialOrd for Clause {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Clause {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.antecedent, &self.succedent).cmp(&(&other.antecedent, &other.succedent))
    }
}

// Tie groups larger than this are left in input order by canonicalize.
const MAX_TIE_PERMUTATIONS: usize = 5040;

impl Clause {
    pub fn new(antecedent: Vec<Atom>, succedent: Vec<Atom>) -> Clause {
        Clause { antecedent, succedent, id: None }
    }

    pub fn empty() -> Clause {
        Clause::default()
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Clause {
        self.id = Some(id.into());
        self
    }

    pub fn is_empty(&self) -> bool {
        self.antecedent.is_empty() && self.succedent.is_empty()
    }

    pub fn len(&self) -> usize {
        self.antecedent.len() + self.succedent.len()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.antecedent.iter().chain(self.succedent.iter())
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        self.atoms().for_each(|a| a.collect_variables(&mut out));
        out
    }

    pub fn apply(&self, sigma: &Substitution) -> Clause {
        Clause {
            antecedent: self.antecedent.iter().map(|a| a.apply(sigma)).collect(),
            succedent: self.succedent.iter().map(|a| a.apply(sigma)).collect(),
            id: self.id.clone(),
        }
    }

    pub fn unfold_all(&self) -> Clause {
        Clause {
            antecedent: self.antecedent.iter().map(Atom::unfold_all).collect(),
            succedent: self.succedent.iter().map(Atom::unfold_all).collect(),
            id: self.id.clone(),
        }
    }

    pub fn contains_m(&self) -> bool {
        self.atoms().any(Atom::contains_m)
    }

    /// Sequent concatenation `C ∘ D`, without renaming apart.
    pub fn merge(&self, other: &Clause) -> Clause {
        let mut out = self.clone();
        out.id = None;
        out.antecedent.extend(other.antecedent.iter().cloned());
        out.succedent.extend(other.succedent.iter().cloned());
        out
    }

    /// Renames the ordinary variables this clause shares with `other` by
    /// appending `'` until they are fresh for both clauses. Schematic
    /// variables are never renamed.
    pub fn rename_apart_from(&self, other: &Clause) -> Clause {
        let mine: BTreeSet<Arc<str>> = self.plain_variables();
        let theirs: BTreeSet<Arc<str>> = other.plain_variables();
        if mine.is_disjoint(&theirs) {
            return self.clone();
        }
        let mut mapping: HashMap<Arc<str>, Arc<str>> = HashMap::new();
        for name in mine.intersection(&theirs) {
            let mut fresh = format!("{name}'");
            while mine.contains(fresh.as_str()) || theirs.contains(fresh.as_str()) {
                fresh.push('\'');
            }
            mapping.insert(name.clone(), Arc::from(fresh));
        }
        let rename =
            |name: &str| -> Arc<str> { mapping.get(name).cloned().unwrap_or_else(|| Arc::from(name)) };
        let map = |a: &Atom| a.map_terms(|t| t.rename_plain(&rename));
        Clause {
            antecedent: self.antecedent.iter().map(map).collect(),
            succedent: self.succedent.iter().map(map).collect(),
            id: self.id.clone(),
        }
    }

    pub fn plain_variables(&self) -> BTreeSet<Arc<str>> {
        self.variables()
            .into_iter()
            .filter_map(|v| match v {
                Variable::Plain(name) => Some(name),
                Variable::Indexed(..) => None,
            })
            .collect()
    }

    pub fn has_duplicates(&self) -> bool {
        fn dup(side: &[Atom]) -> bool {
            side.iter().enumerate().any(|(i, a)| side[i + 1..].contains(a))
        }
        dup(&self.antecedent) || dup(&self.succedent)
    }

    pub fn size(&self) -> usize {
        self.atoms().map(Atom::size).sum()
    }

    pub fn depth(&self) -> usize {
        self.atoms().map(Atom::depth).max().unwrap_or(0)
    }

    pub fn render(&self, blind: bool) -> String {
        let mut out = String::new();
        for (i, a) in self.antecedent.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            a.render_into(&mut out, blind);
        }
        out.push_str(" |- ");
        for (i, a) in self.succedent.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            a.render_into(&mut out, blind);
        }
        out
    }

    /// Canonical representative of the clause's renaming class.
    ///
    /// Duplicate atoms collapse; each side is sorted by (predicate, arity,
    /// term string with ordinary variables blanked); ordinary variables are
    /// renamed `v0, v1, …` by first occurrence, antecedent first. Atoms that
    /// tie on the blanked key are permuted and the lexicographically least
    /// rendering wins. Schematic variables `x_i` keep their names.
    pub fn canonicalize(&self) -> Clause {
        let ante = sorted_groups(&self.antecedent);
        let succ = sorted_groups(&self.succedent);
        let tie_count: usize = ante
            .iter()
            .chain(succ.iter())
            .map(|g| factorial(g.len()))
            .try_fold(1usize, |acc, f| acc.checked_mul(f))
            .unwrap_or(usize::MAX);

        if tie_count == 1 {
            let mut out = rename_by_first_occurrence(ante.concat(), succ.concat());
            out.id = self.id.clone();
            return out;
        }
        let mut best: Option<(String, Clause)> = None;
        let mut consider = |ante: Vec<Atom>, succ: Vec<Atom>| {
            let candidate = rename_by_first_occurrence(ante, succ);
            let rendered = candidate.render(false);
            if best.as_ref().is_none_or(|(r, _)| rendered < *r) {
                best = Some((rendered, candidate));
            }
        };
        if tie_count <= MAX_TIE_PERMUTATIONS {
            let ante_orders = group_permutations(&ante);
            let succ_orders = group_permutations(&succ);
            for a in &ante_orders {
                for s in &succ_orders {
                    consider(a.clone(), s.clone());
                }
            }
        } else {
            consider(ante.concat(), succ.concat());
        }
        let mut out = best.expect("at least one ordering").1;
        out.id = self.id.clone();
        out
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }

    /// Some atom occurs on both sides.
    pub fn is_tautology(&self) -> bool {
        self.antecedent.iter().any(|a| self.succedent.contains(a))
    }

    /// There is θ with `self.antecedent θ ⊆ other.antecedent` and
    /// `self.succedent θ ⊆ other.succedent`, and `self` has no more atoms
    /// than `other`. Without the size condition a clause would subsume its
    /// own factors, which breaks completeness of resolution with factoring.
    pub fn subsumes(&self, other: &Clause) -> bool {
        if self.len() > other.len() {
            return false;
        }
        if self.contains_m() || other.contains_m() {
            return self.unfold_all().subsumes(&other.unfold_all());
        }
        self.subsumes_unfolded(other)
    }

    /// [`Clause::subsumes`] for clauses known to be free of m-terms.
    pub(crate) fn subsumes_unfolded(&self, other: &Clause) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut goals: Vec<(&Atom, &[Atom])> = self
            .antecedent
            .iter()
            .map(|a| (a, other.antecedent.as_slice()))
            .chain(self.succedent.iter().map(|a| (a, other.succedent.as_slice())))
            .collect();
        if !goals.iter().all(|(atom, targets)| targets.iter().any(|t| skeleton_fits(atom, t))) {
            return false;
        }
        // larger atoms first prune faster
        goals.sort_by_key(|(a, _)| std::cmp::Reverse(a.size()));
        subsume_search(&goals, &mut Substitution::new())
    }
}

fn skeleton_fits(pattern: &Atom, target: &Atom) -> bool {
    pattern.pred == target.pred
        && pattern.args.len() == target.args.len()
        && pattern.args.iter().zip(&target.args).all(|(p, t)| could_match(p, t))
}

fn subsume_search(goals: &[(&Atom, &[Atom])], theta: &mut Substitution) -> bool {
    let Some(((atom, targets), rest)) = goals.split_first() else {
        return true;
    };
    for target in targets.iter() {
        if !skeleton_fits(atom, target) {
            continue;
        }
        let mut trial = theta.clone();
        if atom.args.iter().zip(&target.args).all(|(p, t)| match_term(p, t, &mut trial))
            && subsume_search(rest, &mut trial)
        {
            *theta = trial;
            return true;
        }
    }
    false
}

fn factorial(n: usize) -> usize {
    (1..=n).try_fold(1usize, |acc, i| acc.checked_mul(i)).unwrap_or(usize::MAX)
}

type SortKey = (Arc<str>, usize, String);

fn sorted_groups(side: &[Atom]) -> Vec<Vec<Atom>> {
    let mut keyed: Vec<(SortKey, &Atom)> = side.iter().map(|a| (a.sort_key(), a)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let mut groups: Vec<Vec<Atom>> = Vec::new();
    let mut last_key: Option<&SortKey> = None;
    for (key, atom) in &keyed {
        if last_key == Some(key) {
            let group = groups.last_mut().expect("group exists");
            if !group.contains(atom) {
                group.push((*atom).clone());
            }
        } else {
            groups.push(vec![(*atom).clone()]);
        }
        last_key = Some(key);
    }
    groups
}

fn group_permutations(groups: &[Vec<Atom>]) -> Vec<Vec<Atom>> {
    let mut out: Vec<Vec<Atom>> = vec![Vec::new()];
    for group in groups {
        let perms = permutations(group);
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for prefix in &out {
            for p in &perms {
                let mut v = prefix.clone();
                v.extend(p.iter().cloned());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn permutations(items: &[Atom]) -> Vec<Vec<Atom>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

fn rename_by_first_occurrence(mut ante: Vec<Atom>, mut succ: Vec<Atom>) -> Clause {
    if !ante.iter().chain(succ.iter()).any(|a| a.args.iter().any(Term::has_plain_variable)) {
        ante.dedup();
        succ.dedup();
        return Clause::new(ante, succ);
    }
    let mut names: HashMap<Arc<str>, Arc<str>> = HashMap::new();
    let mut order: Vec<Arc<str>> = Vec::new();
    fn visit(t: &Term, order: &mut Vec<Arc<str>>, names: &mut HashMap<Arc<str>, Arc<str>>) {
        match t {
            Term::Var(name) => {
                if !names.contains_key(name) {
                    let fresh: Arc<str> = Arc::from(format!("v{}", order.len()));
                    names.insert(name.clone(), fresh);
                    order.push(name.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| visit(a, order, names)),
            Term::M { body, .. } => visit(body, order, names),
            _ => {}
        }
    }
    for atom in ante.iter().chain(succ.iter()) {
        for t in &atom.args {
            visit(t, &mut order, &mut names);
        }
    }
    let rename = |name: &str| -> Arc<str> { names.get(name).cloned().expect("visited") };
    let map = |a: &Atom| a.map_terms(|t| t.rename_plain(&rename));
    let mut antecedent: Vec<Atom> = ante.iter().map(map).collect();
    let mut succedent: Vec<Atom> = succ.iter().map(map).collect();
    antecedent.dedup();
    succedent.dedup();
    Clause::new(antecedent, succedent)
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |atoms: &[Atom]| atoms.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        let ante = side(&self.antecedent);
        let succ = side(&self.succedent);
        match (ante.is_empty(), succ.is_empty()) {
            (true, true) => f.write_str("⊢"),
            (true, false) => write!(f, "⊢ {succ}"),
            (false, true) => write!(f, "{ante} ⊢"),
            (false, false) => write!(f, "{ante} ⊢ {succ}"),
        }
    }
}

pub fn canonicalize(c: &Clause) -> Clause {
    c.canonicalize()
}

pub fn is_tautology(c: &Clause) -> bool {
    c.canonicalize().is_tautology()
}

pub fn subsumes(c: &Clause, d: &Clause) -> bool {
    c.subsumes(d)
}

/// A finite set of canonical clauses, optionally tied to the parameter it
/// instantiates. Clauses keep insertion order; duplicates up to renaming
/// are dropped (the first id wins).
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ClauseSet {
    pub clauses: Vec<Clause>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<Numeral>,
}

impl ClauseSet {
    pub fn new(parameter: Option<Numeral>) -> Self {
        ClauseSet { clauses: Vec::new(), parameter }
    }

    pub fn from_clauses(clauses: impl IntoIterator<Item = Clause>, parameter: Option<Numeral>) -> Self {
        let mut set = ClauseSet::new(parameter);
        for c in clauses {
            set.insert(c);
        }
        set
    }

    /// Returns false when an equal clause (up to renaming) is already present.
    pub fn insert(&mut self, clause: Clause) -> bool {
        let canonical = clause.canonicalize();
        if self.clauses.contains(&canonical) {
            return false;
        }
        self.clauses.push(canonical);
        true
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter()
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.clauses.contains(&clause.canonicalize())
    }

    pub fn get(&self, id: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.id.as_deref() == Some(id))
    }

    pub fn without_tautologies(&self) -> ClauseSet {
        ClauseSet {
            clauses: self.clauses.iter().filter(|c| !c.is_tautology()).cloned().collect(),
            parameter: self.parameter,
        }
    }

    /// The clauses as an order-free set (ids ignored).
    pub fn canonical_set(&self) -> BTreeSet<Clause> {
        self.clauses.iter().map(Clause::canonicalize).collect()
    }

    pub fn same_clauses(&self, other: &ClauseSet) -> bool {
        self.canonical_set() == other.canonical_set()
    }
}

/// Formulas that may appear in proof-schema axioms: atoms, binary
/// disjunction and the iterated disjunction `⋁_{i=0}^{bound} P(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Atom(Atom),
    Or(Box<Formula>, Box<Formula>),
    IteratedOr(IteratedOr),
}

/// `⋁_{i=0}^{bound} body[i]`, where `body[i]` puts the numeral `ī` at
/// argument position `hole` of `body`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedOr {
    pub body: Atom,
    pub hole: usize,
    pub bound: Numeral,
}

impl IteratedOr {
    pub fn instance(&self, i: u64) -> Atom {
        let mut atom = self.body.clone();
        atom.args[self.hole] = Term::num(i);
        atom
    }
}

impl Formula {
    /// Succedent reading: the disjuncts of a (fully expanded) disjunction.
    fn push_disjuncts(&self, out: &mut Vec<Atom>) -> Result<(), ClauseError> {
        match self {
            Formula::Atom(a) => out.push(a.clone()),
            Formula::Or(l, r) => {
                l.push_disjuncts(out)?;
                r.push_disjuncts(out)?;
            }
            Formula::IteratedOr(_) => return Err(ClauseError::UnexpandedIteratedOr),
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Or(l, r) => write!(f, "({l} ∨ {r})"),
            Formula::IteratedOr(it) => {
                let mut shown = it.body.clone();
                shown.args[it.hole] = Term::var("ī");
                write!(f, "⋁_{{i=0}}^{{{}}} {shown}", it.bound)
            }
        }
    }
}

/// An axiom's clausal part before expansion of defined formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Vec<Formula>,
}

impl Sequent {
    pub fn from_clause(c: &Clause) -> Sequent {
        Sequent {
            antecedent: c.antecedent.iter().cloned().map(Formula::Atom).collect(),
            succedent: c.succedent.iter().cloned().map(Formula::Atom).collect(),
        }
    }

    pub fn to_clause(&self) -> Result<Clause, ClauseError> {
        let mut antecedent = Vec::new();
        for f in &self.antecedent {
            match f {
                Formula::Atom(a) => antecedent.push(a.clone()),
                Formula::Or(..) => return Err(ClauseError::NotClausal),
                Formula::IteratedOr(_) => return Err(ClauseError::UnexpandedIteratedOr),
            }
        }
        let mut succedent = Vec::new();
        for f in &self.succedent {
            f.push_disjuncts(&mut succedent)?;
        }
        Ok(Clause::new(antecedent, succedent))
    }
}

/// Symbolic argument of a clause-set symbol: a numeral or `n + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arith {
    Num(u64),
    Param(i64),
}

impl Arith {
    pub fn eval(self, n: u64) -> Option<u64> {
        match self {
            Arith::Num(v) => Some(v),
            Arith::Param(offset) => u64::try_from(n as i128 + offset as i128).ok(),
        }
    }
}

impl fmt::Display for Arith {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arith::Num(v) => write!(f, "{v}"),
            Arith::Param(0) => f.write_str("n"),
            Arith::Param(o) if *o > 0 => write!(f, "n+{o}"),
            Arith::Param(o) => write!(f, "n{o}"),
        }
    }
}

/// Clause-set terms: leaves, ⊕ (union), ⊗ (pairwise merge) and clause-set
/// symbols `cl^{proof, config}(arg)` standing for another proof's term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClauseTerm {
    Leaf(Vec<Sequent>),
    Oplus(Box<ClauseTerm>, Box<ClauseTerm>),
    Otimes(Box<ClauseTerm>, Box<ClauseTerm>),
    ClSym { proof: String, config: String, arg: Arith },
}

impl ClauseTerm {
    pub fn leaf(clauses: impl IntoIterator<Item = Clause>) -> ClauseTerm {
        ClauseTerm::Leaf(clauses.into_iter().map(|c| Sequent::from_clause(&c)).collect())
    }

    pub fn oplus(l: ClauseTerm, r: ClauseTerm) -> ClauseTerm {
        ClauseTerm::Oplus(Box::new(l), Box::new(r))
    }

    pub fn otimes(l: ClauseTerm, r: ClauseTerm) -> ClauseTerm {
        ClauseTerm::Otimes(Box::new(l), Box::new(r))
    }

    pub fn has_symbols(&self) -> bool {
        match self {
            ClauseTerm::Leaf(_) => false,
            ClauseTerm::ClSym { .. } => true,
            ClauseTerm::Oplus(l, r) | ClauseTerm::Otimes(l, r) => l.has_symbols() || r.has_symbols(),
        }
    }

    /// `|Θ|`: the clause set a symbol-free term denotes, canonicalised.
    pub fn eval(&self) -> Result<BTreeSet<Clause>, ClauseError> {
        Ok(self.eval_raw()?.iter().map(Clause::canonicalize).collect())
    }

    // Raw evaluation keeps the leaves' variable names so ⊗ shares them.
    fn eval_raw(&self) -> Result<Vec<Clause>, ClauseError> {
        match self {
            ClauseTerm::Leaf(sequents) => {
                let mut out = Vec::new();
                for s in sequents {
                    push_unique(&mut out, s.to_clause()?);
                }
                Ok(out)
            }
            ClauseTerm::Oplus(l, r) => {
                let mut out = l.eval_raw()?;
                for c in r.eval_raw()? {
                    push_unique(&mut out, c);
                }
                Ok(out)
            }
            ClauseTerm::Otimes(l, r) => {
                let left = l.eval_raw()?;
                let right = r.eval_raw()?;
                let mut out = Vec::with_capacity(left.len() * right.len());
                for c in &left {
                    for d in &right {
                        push_unique(&mut out, c.merge(d));
                    }
                }
                Ok(out)
            }
            ClauseTerm::ClSym { proof, config, arg } => {
                Err(ClauseError::UnfoldedSymbol(format!("{proof},{config}}}({arg}")))
            }
        }
    }
}

fn push_unique(out: &mut Vec<Clause>, c: Clause) {
    if !out.contains(&c) {
        out.push(c);
    }
}

pub fn eval_clause_term(t: &ClauseTerm) -> Result<BTreeSet<Clause>, ClauseError> {
    t.eval()
}

impl fmt::Display for ClauseTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClauseTerm::Leaf(sequents) => {
                f.write_str("{")?;
                for (i, s) in sequents.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    let side =
                        |fs: &[Formula]| fs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
                    write!(f, "{} ⊢ {}", side(&s.antecedent), side(&s.succedent))?;
                }
                f.write_str("}")
            }
            ClauseTerm::Oplus(l, r) => write!(f, "({l} ⊕ {r})"),
            ClauseTerm::Otimes(l, r) => write!(f, "({l} ⊗ {r})"),
            ClauseTerm::ClSym { proof, config, arg } => write!(f, "cl^{{{proof},{config}({arg})}}({arg})"),
        }
    }
}
