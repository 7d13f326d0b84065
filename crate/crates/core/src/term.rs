//! Two-sorted term language: ω numerals, ι individuals, the defined
//! symbol `m(k, x̄, t)`, substitutions and syntactic unification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A ground term of the numeral sort: `value` applications of `s` to `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Numeral(pub u64);

impl Numeral {
    pub fn value(self) -> u64 {
        self.0
    }

    /// The `s(...s(0)...)` surface form.
    pub fn surface(self) -> String {
        let mut out = String::with_capacity(self.0 as usize * 3 + 1);
        for _ in 0..self.0 {
            out.push_str("s(");
        }
        out.push('0');
        for _ in 0..self.0 {
            out.push(')');
        }
        out
    }

    pub fn parse_surface(text: &str) -> Result<Numeral, TermError> {
        let text = text.trim();
        let mut rest = text;
        let mut depth = 0u64;
        while let Some(inner) = rest.strip_prefix("s(") {
            depth += 1;
            rest = inner;
        }
        let rest = rest.strip_prefix('0').ok_or_else(|| TermError::BadNumeral(text.to_string()))?;
        let closing = rest.bytes().take_while(|b| *b == b')').count() as u64;
        if closing != depth || rest.len() as u64 != depth {
            return Err(TermError::BadNumeral(text.to_string()));
        }
        Ok(Numeral(depth))
    }
}

impl fmt::Display for Numeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Func {
    F,
    S,
    Max,
}

impl Func {
    pub fn arity(self) -> usize {
        match self {
            Func::F | Func::S => 1,
            Func::Max => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::F => "f",
            Func::S => "s",
            Func::Max => "max",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        match name {
            "f" => Some(Func::F),
            "s" => Some(Func::S),
            "max" => Some(Func::Max),
            _ => None,
        }
    }
}

/// Terms of the individual sort.
///
/// `Indexed` is a schematic variable `x_i` whose index has been grounded; it
/// behaves as an ordinary first-order variable. `M` is the defined symbol
/// `m(k, x̄, t)`, which implicitly mentions `x_1 … x_k` of its family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Term {
    Var(Arc<str>),
    Indexed { base: Arc<str>, index: Numeral },
    Num(Numeral),
    App(Func, Vec<Term>),
    M { k: Numeral, family: Arc<str>, body: Box<Term> },
}

/// Key for substitution domains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variable {
    Plain(Arc<str>),
    Indexed(Arc<str>, u64),
}

impl Variable {
    pub fn plain(name: &str) -> Variable {
        Variable::Plain(Arc::from(name))
    }

    pub fn to_term(&self) -> Term {
        match self {
            Variable::Plain(name) => Term::Var(name.clone()),
            Variable::Indexed(base, index) => Term::Indexed { base: base.clone(), index: Numeral(*index) },
        }
    }

    pub fn is_plain(&self) -> bool {
        matches!(self, Variable::Plain(_))
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Plain(name) => write!(f, "{name}"),
            Variable::Indexed(base, index) => write!(f, "{base}_{index}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("term contains no m-term to unfold")]
    NoMTerm,
    #[error("malformed numeral `{0}`")]
    BadNumeral(String),
    #[error("{sym} expects {expected} arguments, got {got}")]
    Arity { sym: &'static str, expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no unifier")]
pub struct NoUnifier;

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Arc::from(name))
    }

    pub fn x(index: u64) -> Term {
        Term::indexed("x", index)
    }

    pub fn indexed(base: &str, index: u64) -> Term {
        Term::Indexed { base: Arc::from(base), index: Numeral(index) }
    }

    pub fn num(value: u64) -> Term {
        Term::Num(Numeral(value))
    }

    pub fn app(func: Func, args: Vec<Term>) -> Result<Term, TermError> {
        if args.len() != func.arity() {
            return Err(TermError::Arity { sym: func.name(), expected: func.arity(), got: args.len() });
        }
        Ok(Term::App(func, args))
    }

    pub fn f(arg: Term) -> Term {
        Term::App(Func::F, vec![arg])
    }

    pub fn s(arg: Term) -> Term {
        Term::App(Func::S, vec![arg])
    }

    pub fn max(left: Term, right: Term) -> Term {
        Term::App(Func::Max, vec![left, right])
    }

    /// `m(k, x̄, body)` over the schematic family `x`; `m(0, x̄, t)` is `t`.
    pub fn m(k: u64, body: Term) -> Term {
        Term::m_over("x", k, body)
    }

    pub fn m_over(family: &str, k: u64, body: Term) -> Term {
        if k == 0 {
            body
        } else {
            Term::M { k: Numeral(k), family: Arc::from(family), body: Box::new(body) }
        }
    }

    pub fn as_variable(&self) -> Option<Variable> {
        match self {
            Term::Var(name) => Some(Variable::Plain(name.clone())),
            Term::Indexed { base, index } => Some(Variable::Indexed(base.clone(), index.0)),
            _ => None,
        }
    }

    pub fn is_variable(&self) -> bool {
        matches!(self, Term::Var(_) | Term::Indexed { .. })
    }

    pub fn contains_m(&self) -> bool {
        match self {
            Term::M { .. } => true,
            Term::App(_, args) => args.iter().any(Term::contains_m),
            _ => false,
        }
    }

    /// Contains an ordinary (non-schematic) variable.
    pub fn has_plain_variable(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::App(_, args) => args.iter().any(Term::has_plain_variable),
            Term::M { body, .. } => body.has_plain_variable(),
            _ => false,
        }
    }

    /// All variables, including the `x_1 … x_k` an m-term mentions implicitly.
    pub fn variables(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    pub fn collect_variables(&self, out: &mut BTreeSet<Variable>) {
        match self {
            Term::Var(name) => {
                out.insert(Variable::Plain(name.clone()));
            }
            Term::Indexed { base, index } => {
                out.insert(Variable::Indexed(base.clone(), index.0));
            }
            Term::Num(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_variables(out)),
            Term::M { k, family, body } => {
                for i in 1..=k.0 {
                    out.insert(Variable::Indexed(family.clone(), i));
                }
                body.collect_variables(out);
            }
        }
    }

    pub fn occurs(&self, var: &Variable) -> bool {
        match (self, var) {
            (Term::Var(name), Variable::Plain(v)) => name == v,
            (Term::Indexed { base, index }, Variable::Indexed(b, i)) => base == b && index.0 == *i,
            (Term::App(_, args), _) => args.iter().any(|a| a.occurs(var)),
            (Term::M { k, family, body }, _) => {
                matches!(var, Variable::Indexed(b, i) if b == family && (1..=k.0).contains(i))
                    || body.occurs(var)
            }
            _ => false,
        }
    }

    /// Number of symbols.
    pub fn size(&self) -> usize {
        match self {
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Term::M { body, .. } => 1 + body.size(),
            _ => 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
            Term::M { body, .. } => 1 + body.depth(),
            _ => 1,
        }
    }

    /// One rewrite of the outermost-leftmost m-term by its defining rules.
    pub fn unfold_m(&self) -> Result<Term, TermError> {
        self.unfold_first().ok_or(TermError::NoMTerm)
    }

    fn unfold_first(&self) -> Option<Term> {
        match self {
            Term::M { k, family, body } => Some(if k.0 == 0 {
                (**body).clone()
            } else {
                // m(k+1, x̄, t) => m(k, x̄, max(s(x_{k+1}), t))
                let next =
                    Term::max(Term::s(Term::Indexed { base: family.clone(), index: *k }), (**body).clone());
                Term::M { k: Numeral(k.0 - 1), family: family.clone(), body: Box::new(next) }
            }),
            Term::App(func, args) => {
                for (i, arg) in args.iter().enumerate() {
                    if let Some(rewritten) = arg.unfold_first() {
                        let mut args = args.clone();
                        args[i] = rewritten;
                        return Some(Term::App(*func, args));
                    }
                }
                None
            }
            _ => None,
        }
    }

    /// The m-free normal form.
    pub fn unfold_all(&self) -> Term {
        match self {
            Term::M { k, family, body } => {
                let mut acc = body.unfold_all();
                for i in (1..=k.0).rev() {
                    acc = Term::max(Term::s(Term::Indexed { base: family.clone(), index: Numeral(i) }), acc);
                }
                acc
            }
            Term::App(func, args) => Term::App(*func, args.iter().map(Term::unfold_all).collect()),
            other => other.clone(),
        }
    }

    /// Sum of the `k` indices of all m-terms; strictly decreases under `unfold_m`.
    pub fn m_weight(&self) -> u64 {
        match self {
            Term::M { k, body, .. } => k.0 + 1 + body.m_weight(),
            Term::App(_, args) => args.iter().map(Term::m_weight).sum(),
            _ => 0,
        }
    }

    pub fn rename_plain(&self, rename: &impl Fn(&str) -> Arc<str>) -> Term {
        match self {
            Term::Var(name) => Term::Var(rename(name)),
            Term::App(func, args) => Term::App(*func, args.iter().map(|a| a.rename_plain(rename)).collect()),
            Term::M { k, family, body } => {
                Term::M { k: *k, family: family.clone(), body: Box::new(body.rename_plain(rename)) }
            }
            other => other.clone(),
        }
    }

    /// Writes the term, printing ordinary variables as `_` when `blind`.
    pub fn render_into(&self, out: &mut String, blind: bool) {
        match self {
            Term::Var(name) => {
                if blind {
                    out.push('_');
                } else {
                    out.push_str(name);
                }
            }
            Term::Indexed { base, index } => {
                out.push_str(base);
                out.push('_');
                out.push_str(&index.0.to_string());
            }
            Term::Num(n) => {
                out.push('n');
                out.push_str(&n.0.to_string());
            }
            Term::App(func, args) => {
                out.push_str(func.name());
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    a.render_into(out, blind);
                }
                out.push(')');
            }
            Term::M { k, family, body } => {
                out.push_str("m(");
                out.push_str(&k.0.to_string());
                out.push(',');
                out.push_str(family);
                out.push(',');
                body.render_into(out, blind);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.render_into(&mut out, false);
        f.write_str(&out)
    }
}

/// A finite map from variables to terms, applied simultaneously.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<(Variable, Term)>", into = "Vec<(Variable, Term)>")]
pub struct Substitution {
    bindings: BTreeMap<Variable, Term>,
}

impl From<Vec<(Variable, Term)>> for Substitution {
    fn from(pairs: Vec<(Variable, Term)>) -> Self {
        Substitution { bindings: pairs.into_iter().collect() }
    }
}

impl From<Substitution> for Vec<(Variable, Term)> {
    fn from(s: Substitution) -> Self {
        s.bindings.into_iter().collect()
    }
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(var: Variable, term: Term) -> Self {
        let mut s = Self::new();
        s.bindings.insert(var, term);
        s
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn get(&self, var: &Variable) -> Option<&Term> {
        self.bindings.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Variable, &Term)> {
        self.bindings.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &Variable> {
        self.bindings.keys()
    }

    /// Inserts without any normalisation. Callers building unifiers use
    /// [`Substitution::bind`].
    pub fn insert_raw(&mut self, var: Variable, term: Term) -> Option<Term> {
        self.bindings.insert(var, term)
    }

    pub fn remove(&mut self, var: &Variable) -> Option<Term> {
        self.bindings.remove(var)
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&Variable, &Term) -> bool) {
        self.bindings.retain(|v, t| keep(v, t));
    }

    /// Extends an idempotent substitution with `var ← term` (`term` already
    /// normalised under `self`), keeping the result idempotent.
    pub fn bind(&mut self, var: Variable, term: Term) {
        let single = Substitution::singleton(var.clone(), term.clone());
        for value in self.bindings.values_mut() {
            if value.occurs(&var) {
                *value = single.apply(value);
            }
        }
        self.bindings.insert(var, term);
    }

    /// No domain variable occurs in any binding.
    pub fn is_idempotent(&self) -> bool {
        self.bindings.values().all(|t| self.bindings.keys().all(|v| !t.occurs(v)))
    }

    pub fn apply(&self, term: &Term) -> Term {
        if self.bindings.is_empty() {
            return term.clone();
        }
        match term {
            Term::Var(_) | Term::Indexed { .. } => {
                let var = term.as_variable().expect("variable");
                self.bindings.get(&var).cloned().unwrap_or_else(|| term.clone())
            }
            Term::Num(_) => term.clone(),
            Term::App(func, args) => Term::App(*func, args.iter().map(|a| self.apply(a)).collect()),
            Term::M { k, family, body } => {
                let touches_implicit = self
                    .bindings
                    .keys()
                    .any(|v| matches!(v, Variable::Indexed(b, i) if b == family && (1..=k.0).contains(i)));
                if touches_implicit {
                    self.apply(&term.unfold_all())
                } else {
                    Term::M { k: *k, family: family.clone(), body: Box::new(self.apply(body)) }
                }
            }
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} <- {t}")?;
        }
        f.write_str("}")
    }
}

pub fn apply_subst(s: &Substitution, t: &Term) -> Term {
    s.apply(t)
}

/// Most general unifier of `a` and `b` (occurs check always on).
///
/// An m-term only unifies with an m-term of the same `k` and family, by
/// unifying the bodies; unfold first to compare against anything else.
pub fn unify(a: &Term, b: &Term) -> Result<Substitution, NoUnifier> {
    unify_pairs(std::iter::once((a.clone(), b.clone())))
}

pub fn unify_pairs(pairs: impl IntoIterator<Item = (Term, Term)>) -> Result<Substitution, NoUnifier> {
    let mut sigma = Substitution::new();
    extend_unifier(&mut sigma, pairs)?;
    Ok(sigma)
}

/// Refines an idempotent unifier so it additionally unifies `pairs`.
pub fn extend_unifier(
    sigma: &mut Substitution,
    pairs: impl IntoIterator<Item = (Term, Term)>,
) -> Result<(), NoUnifier> {
    let mut stack: Vec<(Term, Term)> = pairs.into_iter().collect();
    stack.reverse();
    while let Some((s, t)) = stack.pop() {
        let s = sigma.apply(&s);
        let t = sigma.apply(&t);
        if s == t {
            continue;
        }
        match (s.as_variable(), t.as_variable()) {
            (Some(vs), Some(vt)) => {
                // bind the ordinary variable when one side is schematic
                if !vs.is_plain() && vt.is_plain() {
                    sigma.bind(vt, s);
                } else {
                    sigma.bind(vs, t);
                }
                continue;
            }
            (Some(v), None) => {
                if t.occurs(&v) {
                    return Err(NoUnifier);
                }
                sigma.bind(v, t);
                continue;
            }
            (None, Some(v)) => {
                if s.occurs(&v) {
                    return Err(NoUnifier);
                }
                sigma.bind(v, s);
                continue;
            }
            (None, None) => {}
        }
        match (s, t) {
            (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => {
                stack.extend(xs.into_iter().zip(ys).rev());
            }
            (Term::M { k: k1, family: fam1, body: b1 }, Term::M { k: k2, family: fam2, body: b2 })
                if k1 == k2 && fam1 == fam2 =>
            {
                stack.push((*b1, *b2))
            }
            _ => return Err(NoUnifier),
        }
    }
    Ok(())
}

/// One-way matching: finds θ with `pattern θ = target`, treating the
/// variables of `target` as constants. Extends `theta` in place.
/// Whether `target` has the rigid skeleton of `pattern`, ignoring whether
/// repeated pattern variables are matched consistently. A cheap filter
/// before [`match_term`].
pub fn could_match(pattern: &Term, target: &Term) -> bool {
    match (pattern, target) {
        (Term::Var(_) | Term::Indexed { .. }, _) => true,
        (Term::Num(n), Term::Num(m)) => n == m,
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| could_match(x, y))
        }
        (Term::M { k, family, body }, Term::M { k: k2, family: f2, body: b2 }) => {
            k == k2 && family == f2 && could_match(body, b2)
        }
        _ => false,
    }
}

/// Symmetric version of [`could_match`]: a necessary condition for the
/// two terms to unify.
pub fn could_unify(s: &Term, t: &Term) -> bool {
    match (s, t) {
        (Term::Var(_) | Term::Indexed { .. }, _) | (_, Term::Var(_) | Term::Indexed { .. }) => true,
        (Term::Num(n), Term::Num(m)) => n == m,
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| could_unify(x, y))
        }
        (Term::M { k, family, body }, Term::M { k: k2, family: f2, body: b2 }) => {
            k == k2 && family == f2 && could_unify(body, b2)
        }
        _ => false,
    }
}

pub fn match_term(pattern: &Term, target: &Term, theta: &mut Substitution) -> bool {
    match pattern {
        Term::Var(_) | Term::Indexed { .. } => {
            let var = pattern.as_variable().expect("variable");
            match theta.get(&var) {
                Some(bound) => bound == target,
                None => {
                    theta.insert_raw(var, target.clone());
                    true
                }
            }
        }
        Term::Num(n) => matches!(target, Term::Num(m) if m == n),
        Term::App(f, xs) => match target {
            Term::App(g, ys) if f == g && xs.len() == ys.len() => {
                xs.iter().zip(ys).all(|(x, y)| match_term(x, y, theta))
            }
            _ => false,
        },
        Term::M { k, family, body } => match target {
            Term::M { k: k2, family: f2, body: b2 } if k == k2 && family == f2 => match_term(body, b2, theta),
            _ => false,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta() -> Term {
        Term::var("beta")
    }

    #[test]
    fn numeral_surface_round_trip() {
        for v in [0, 1, 2, 7] {
            let n = Numeral(v);
            assert_eq!(Numeral::parse_surface(&n.surface()).unwrap(), n);
        }
        assert_eq!(Numeral(2).surface(), "s(s(0))");
        assert!(Numeral::parse_surface("s(0").is_err());
        assert!(Numeral::parse_surface("s(1)").is_err());
    }

    #[test]
    fn apply_replaces_domain_variables() {
        let t0 = Term::var("t");
        let s = Substitution::singleton(Variable::plain("beta"), Term::s(Term::x(1)));
        assert_eq!(s.apply(&Term::max(beta(), t0.clone())), Term::max(Term::s(Term::x(1)), t0));
        let fx3 = Term::f(Term::x(3));
        assert_eq!(Substitution::new().apply(&fx3), fx3);
        let s = Substitution::singleton(Variable::plain("y"), Term::s(Term::x(1)));
        assert_eq!(s.apply(&Term::f(Term::var("y"))), Term::f(Term::s(Term::x(1))));
    }

    #[test]
    fn apply_is_simultaneous() {
        let mut s = Substitution::new();
        s.insert_raw(Variable::plain("a"), Term::var("b"));
        s.insert_raw(Variable::plain("b"), Term::var("a"));
        assert_eq!(
            s.apply(&Term::max(Term::var("a"), Term::var("b"))),
            Term::max(Term::var("b"), Term::var("a"))
        );
    }

    #[test]
    fn unify_lemma_substitutions() {
        let y = Term::var("y");
        let sigma = unify(&Term::f(y), &Term::f(Term::s(Term::x(1)))).unwrap();
        assert_eq!(sigma, Substitution::singleton(Variable::plain("y"), Term::s(Term::x(1))));

        let t0 = Term::var("t0");
        let delta = Term::var("delta");
        let sigma = unify(&Term::max(beta(), delta), &Term::max(Term::s(Term::x(2)), t0.clone())).unwrap();
        assert_eq!(sigma.get(&Variable::plain("beta")), Some(&Term::s(Term::x(2))));
        assert_eq!(sigma.get(&Variable::plain("delta")), Some(&t0));
        assert_eq!(sigma.len(), 2);
    }

    #[test]
    fn unify_failures() {
        let x = Term::var("x");
        assert_eq!(unify(&Term::f(x.clone()), &Term::s(x.clone())), Err(NoUnifier));
        assert_eq!(unify(&x, &Term::s(x.clone())), Err(NoUnifier));
        assert_eq!(unify(&Term::num(0), &Term::num(1)), Err(NoUnifier));
        // implicit x_1 inside m(1, x̄, v)
        assert_eq!(unify(&Term::x(1), &Term::m(1, Term::var("v"))), Err(NoUnifier));
        // m-term against its own unfolding is not unified syntactically
        let m = Term::m(1, Term::var("v"));
        assert_eq!(unify(&m, &m.unfold_all()), Err(NoUnifier));
    }

    #[test]
    fn unify_m_terms_structurally() {
        let lhs = Term::m(2, Term::var("y"));
        let rhs = Term::m(2, Term::max(Term::s(Term::x(3)), Term::var("z")));
        let sigma = unify(&lhs, &rhs).unwrap();
        assert_eq!(sigma.apply(&lhs), rhs);
        assert!(unify(&Term::m(2, Term::var("y")), &Term::m(3, Term::var("y"))).is_err());
    }

    #[test]
    fn unify_prefers_binding_plain_variables() {
        let sigma = unify(&Term::x(1), &Term::var("u")).unwrap();
        assert_eq!(sigma.get(&Variable::plain("u")), Some(&Term::x(1)));
    }

    #[test]
    fn unfold_m_steps() {
        let t0 = Term::var("t0");
        assert_eq!(
            Term::M { k: Numeral(0), family: Arc::from("x"), body: Box::new(t0.clone()) }.unfold_m().unwrap(),
            t0
        );
        let one = Term::m(1, t0.clone());
        let step = one.unfold_m().unwrap();
        assert_eq!(
            step,
            Term::M {
                k: Numeral(0),
                family: Arc::from("x"),
                body: Box::new(Term::max(Term::s(Term::x(1)), t0.clone()))
            }
        );
        assert_eq!(step.unfold_m().unwrap(), Term::max(Term::s(Term::x(1)), t0));
        assert_eq!(Term::f(Term::x(1)).unfold_m(), Err(TermError::NoMTerm));
    }

    #[test]
    fn unfold_all_association() {
        let m = Term::m(3, Term::s(Term::x(4)));
        let expected = Term::max(
            Term::s(Term::x(1)),
            Term::max(Term::s(Term::x(2)), Term::max(Term::s(Term::x(3)), Term::s(Term::x(4)))),
        );
        assert_eq!(m.unfold_all(), expected);
        let mut cur = m;
        while cur.contains_m() {
            let next = cur.unfold_m().unwrap();
            assert!(next.m_weight() < cur.m_weight());
            cur = next;
        }
        assert_eq!(cur, expected);
    }

    #[test]
    fn apply_unfolds_when_binding_implicit_variable() {
        let m = Term::m(2, Term::var("z"));
        let s = Substitution::singleton(Variable::Indexed(Arc::from("x"), 1), Term::num(0));
        assert_eq!(
            s.apply(&m),
            Term::max(Term::s(Term::num(0)), Term::max(Term::s(Term::x(2)), Term::var("z")))
        );
        let s = Substitution::singleton(Variable::Indexed(Arc::from("x"), 3), Term::num(0));
        assert_eq!(s.apply(&m), m);
    }

    #[test]
    fn matching_treats_target_variables_as_constants() {
        let mut theta = Substitution::new();
        assert!(match_term(
            &Term::max(Term::var("a"), Term::var("a")),
            &Term::max(Term::var("b"), Term::var("b")),
            &mut theta
        ));
        let mut theta = Substitution::new();
        assert!(!match_term(
            &Term::max(Term::var("a"), Term::var("a")),
            &Term::max(Term::var("b"), Term::var("c")),
            &mut theta
        ));
    }
}
