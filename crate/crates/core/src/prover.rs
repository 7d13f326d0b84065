//! Given-clause saturation with binary resolution and factoring, used as an
//! oracle against the constructive refutation.
//!
//! The given clause alternates between the lightest passive clause (by
//! size, then length, canonical text and age) and the one with the
//! shortest derivation from the inputs. By
//! default inferences are restricted to literals that are maximal under a
//! Knuth-Bendix ordering or selected, and new clauses are shortened by
//! subsumption resolution. `le` and `eq` are ordinary predicates.

use std::cmp::Reverse;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::clause::{Atom, Clause, ClauseSet};
use crate::refutation::{
    binary_resolvents_on, def10_conclusion, occ_table, RefStep, RefutationProof, StepKind,
};
use crate::term::{could_match, match_term, unify_pairs, Func, Substitution, Term};

mod kbo;

pub use kbo::{compare_atoms, compare_terms};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error("limits must be positive: {0}")]
    InvalidLimits(&'static str),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProverLimits {
    pub max_clauses: usize,
    pub max_seconds: f64,
    pub max_term_depth: Option<usize>,
    /// Also discard active clauses subsumed by a new given clause.
    pub backward_subsumption: bool,
}

impl Default for ProverLimits {
    fn default() -> Self {
        ProverLimits {
            max_clauses: 200_000,
            max_seconds: 30.0,
            max_term_depth: None,
            backward_subsumption: true,
        }
    }
}

impl ProverLimits {
    pub fn new(
        max_clauses: usize,
        max_seconds: f64,
        max_term_depth: Option<usize>,
    ) -> Result<Self, ProverError> {
        if max_clauses == 0 {
            return Err(ProverError::InvalidLimits("max_clauses"));
        }
        if max_seconds.is_nan() || max_seconds <= 0.0 {
            return Err(ProverError::InvalidLimits("max_seconds"));
        }
        if max_term_depth == Some(0) {
            return Err(ProverError::InvalidLimits("max_term_depth"));
        }
        Ok(ProverLimits { max_clauses, max_seconds, max_term_depth, ..ProverLimits::default() })
    }
}

#[derive(Clone, Debug)]
pub enum ProverStatus {
    /// The trace contains only the ancestors of the empty clause.
    Refuted(RefutationProof),
    Saturated,
    ResourceOut(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProverStats {
    pub generated: usize,
    pub kept: usize,
    pub subsumed: usize,
    pub given: usize,
    /// Tree-unfolded uses of each input in the refutation; empty otherwise.
    pub input_uses: BTreeMap<String, BigUint>,
}

#[derive(Clone, Debug)]
pub struct ProverResult {
    pub status: ProverStatus,
    pub stats: ProverStats,
}

impl ProverResult {
    pub fn is_refuted(&self) -> bool {
        matches!(self.status, ProverStatus::Refuted(_))
    }
}

/// All factors of `c`: for two distinct atoms on the same side, apply their
/// most general unifier. Returns the canonical factor and the unifier.
pub fn factor(c: &Clause) -> Vec<(Clause, Substitution)> {
    let mut out = Vec::new();
    for side in [&c.antecedent, &c.succedent] {
        for i in 0..side.len() {
            for j in i + 1..side.len() {
                let (a, b) = (&side[i], &side[j]);
                if a.pred != b.pred || a.args.len() != b.args.len() {
                    continue;
                }
                let Ok(sigma) = unify_pairs(a.args.iter().cloned().zip(b.args.iter().cloned())) else {
                    continue;
                };
                if sigma.is_empty() {
                    continue;
                }
                out.push((c.apply(&sigma).canonicalize(), sigma));
            }
        }
    }
    out
}

/// Which atoms of a clause may be resolved on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Selection {
    /// Every atom is eligible.
    None,
    /// The largest antecedent atom (first in canonical order on ties) is
    /// the only eligible one, and a clause with a non-empty antecedent
    /// never acts as the positive premise.
    LargestNegative,
    /// Ordered resolution: only atoms maximal under the Knuth-Bendix
    /// ordering are eligible, except that a clause with several maximal
    /// atoms and a non-empty antecedent has its largest antecedent atom
    /// selected instead.
    #[default]
    Ordered,
}

/// Search heuristics; they affect speed, not soundness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    pub selection: Selection,
    /// Every `pick_given_ratio`-th given clause is the passive one with the
    /// fewest inference steps above it (lightest among those) instead of
    /// the lightest overall; 0 disables these picks.
    pub pick_given_ratio: usize,
    /// Drop an atom from a new clause when resolving it against an active
    /// clause yields a subset of the new clause.
    pub subsumption_resolution: bool,
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy { selection: Selection::Ordered, pick_given_ratio: 5, subsumption_resolution: true }
    }
}

impl Strategy {
    /// Unrestricted resolution with pure weight-based selection.
    pub fn plain() -> Self {
        Strategy { selection: Selection::None, pick_given_ratio: 0, subsumption_resolution: false }
    }

    fn eligible(&self, c: &Clause) -> Eligible {
        let largest_negative = || {
            (0..c.antecedent.len())
                .rev()
                .max_by_key(|&i| c.antecedent[i].size())
                .map(|i| Eligible::only_antecedent(c, i))
        };
        match self.selection {
            Selection::None => Eligible::all(c),
            Selection::LargestNegative => largest_negative().unwrap_or_else(|| Eligible::all(c)),
            Selection::Ordered => {
                let atoms: Vec<&Atom> = c.atoms().collect();
                let maximal = kbo::maximal(&atoms);
                if maximal.len() > 1 {
                    if let Some(e) = largest_negative() {
                        return e;
                    }
                }
                let split = c.antecedent.len();
                let mut e =
                    Eligible { antecedent: vec![false; split], succedent: vec![false; c.succedent.len()] };
                for m in maximal {
                    if m < split {
                        e.antecedent[m] = true;
                    } else {
                        e.succedent[m - split] = true;
                    }
                }
                e
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Eligible {
    antecedent: Vec<bool>,
    succedent: Vec<bool>,
}

impl Eligible {
    fn all(c: &Clause) -> Self {
        Eligible { antecedent: vec![true; c.antecedent.len()], succedent: vec![true; c.succedent.len()] }
    }

    fn only_antecedent(c: &Clause, i: usize) -> Self {
        let mut antecedent = vec![false; c.antecedent.len()];
        antecedent[i] = true;
        Eligible { antecedent, succedent: vec![false; c.succedent.len()] }
    }
}

// how a kept clause was obtained; indices point into `Search::clauses`
#[derive(Clone, Debug)]
enum Origin {
    Input(String),
    Res { left: usize, right: usize, pivot: Atom, sigma: Substitution },
    Factor { child: usize, sigma: Substitution },
}

struct Kept {
    clause: Arc<Clause>,
    origin: Origin,
    eligible: Eligible,
    features: Features,
    // inference steps on the longest path up to an input
    generation: usize,
}

// Necessary conditions for subsumption. Matching only adds symbols, so
// every subsumer atom is dominated by the atom it lands on: the symbol at
// each shallow position survives, and per-atom symbol counts, size and
// depth cannot shrink. Length cannot shrink by the size condition.
#[derive(Clone, Copy)]
struct Features {
    mask: Bits,
    // the same bits without the side, for subsumption resolution
    loose: Bits,
    len: usize,
    // per side, the largest per-atom (#max, #s, #f, size, depth)
    antecedent: Profile,
    succedent: Profile,
}

type Profile = [u16; 5];

type Bits = [u64; 4];

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

// hashed (pred, path, symbol) facts for positions down to `SHALLOW`
fn fingerprint(atom: &Atom, side: u8, out: &mut Bits) {
    const SHALLOW: usize = 4;
    fn set(key: impl Hash, out: &mut Bits) {
        let mut h = DefaultHasher::new();
        key.hash(&mut h);
        let b = h.finish() % 256;
        out[(b / 64) as usize] |= 1 << (b % 64);
    }
    fn walk(t: &Term, key: (u8, &str, u64), depth: usize, out: &mut Bits) {
        let (side, pred, path) = key;
        match t {
            Term::Num(n) => {
                set((side, pred, path, 0u8, n.0), out);
                // numerals also count regardless of position
                set((side, pred, u64::MAX, 0u8, n.0), out);
            }
            Term::App(func, args) => {
                if depth < SHALLOW {
                    set((side, pred, path, 1u8, func.name()), out);
                }
                for (k, a) in args.iter().enumerate() {
                    walk(a, (side, pred, path * 3 + k as u64 + 1), depth + 1, out);
                }
            }
            Term::M { body, .. } => walk(body, key, depth, out),
            Term::Var(_) | Term::Indexed { .. } => {}
        }
    }
    set((side, &*atom.pred), out);
    for (k, a) in atom.args.iter().enumerate() {
        walk(a, (side, &atom.pred, k as u64 + 1), 0, out);
    }
}

fn profile(atom: &Atom) -> Profile {
    fn walk(t: &Term, p: &mut Profile) {
        if let Term::App(func, args) = t {
            match func {
                Func::Max => p[0] += 1,
                Func::S => p[1] += 1,
                Func::F => p[2] += 1,
            }
            args.iter().for_each(|a| walk(a, p));
        }
    }
    let mut p = [0; 5];
    atom.args.iter().for_each(|t| walk(t, &mut p));
    p[3] = atom.size() as u16;
    p[4] = atom.depth() as u16;
    p
}

fn dominated(a: &Profile, b: &Profile) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn join(a: &Profile, b: &Profile) -> Profile {
    std::array::from_fn(|i| a[i].max(b[i]))
}

impl Features {
    fn of(c: &Clause) -> Features {
        let (mut mask, mut loose) = ([0; 4], [0; 4]);
        let mut profiles = [[0; 5]; 2];
        for (side, atoms) in [(0u8, &c.antecedent), (1, &c.succedent)] {
            for atom in atoms {
                fingerprint(atom, side, &mut mask);
                fingerprint(atom, 2, &mut loose);
                profiles[side as usize] = join(&profiles[side as usize], &profile(atom));
            }
        }
        Features { mask, loose, len: c.len(), antecedent: profiles[0], succedent: profiles[1] }
    }

    fn may_subsume(&self, other: &Features) -> bool {
        subset(&self.mask, &other.mask)
            && self.len <= other.len
            && dominated(&self.antecedent, &other.antecedent)
            && dominated(&self.succedent, &other.succedent)
    }

    fn may_reduce(&self, other: &Features) -> bool {
        // the resolved atom changes sides, so only the joint profile counts
        subset(&self.loose, &other.loose)
            && self.len <= other.len
            && dominated(&join(&self.antecedent, &self.succedent), &join(&other.antecedent, &other.succedent))
    }
}

type Weight = Reverse<(usize, usize, String, usize)>;

struct Search {
    limits: ProverLimits,
    strategy: Strategy,
    clauses: Vec<Kept>,
    seen: HashSet<Arc<Clause>>,
    by_weight: BinaryHeap<Weight>,
    by_generation: BinaryHeap<Reverse<(usize, usize, usize)>>,
    picked: Vec<bool>,
    active: Vec<usize>,
    depth_cut: bool,
    stats: ProverStats,
}

impl Search {
    fn weight(&self, index: usize) -> Weight {
        let c = &self.clauses[index].clause;
        Reverse((c.size(), c.len(), c.to_string(), index))
    }

    fn forward_subsumed(&self, c: &Clause, features: &Features) -> bool {
        self.active.iter().any(|&a| {
            let k = &self.clauses[a];
            k.features.may_subsume(features) && k.clause.subsumes_unfolded(c)
        })
    }

    /// Records a new clause, shortened by subsumption resolution where
    /// possible; returns its index if it was kept.
    fn offer(&mut self, mut clause: Clause, mut origin: Origin) -> Option<usize> {
        self.stats.generated += 1;
        loop {
            if clause.is_tautology() {
                return None;
            }
            if let Some(cap) = self.limits.max_term_depth {
                if clause.depth() > cap {
                    self.depth_cut = true;
                    return None;
                }
            }
            if self.seen.contains(&clause) {
                return None;
            }
            let features = Features::of(&clause);
            if self.forward_subsumed(&clause, &features) {
                self.stats.subsumed += 1;
                return None;
            }
            if self.strategy.subsumption_resolution {
                if let Some((reducer, r)) = self.reduce(&clause, &features) {
                    // the unshortened clause stays in the trace but never
                    // takes part in the search
                    let full = self.push(clause, origin, features, false);
                    let (left, right) = if r.reducer_is_left { (reducer, full) } else { (full, reducer) };
                    origin = Origin::Res { left, right, pivot: r.pivot, sigma: r.sigma };
                    clause = r.conclusion;
                    continue;
                }
            }
            self.stats.kept += 1;
            return Some(self.push(clause, origin, features, true));
        }
    }

    fn push(&mut self, clause: Clause, origin: Origin, features: Features, searchable: bool) -> usize {
        let eligible = self.strategy.eligible(&clause);
        let generation = match &origin {
            Origin::Input(_) => 0,
            Origin::Res { left, right, .. } => {
                1 + self.clauses[*left].generation.max(self.clauses[*right].generation)
            }
            Origin::Factor { child, .. } => 1 + self.clauses[*child].generation,
        };
        let size = clause.size();
        let clause = Arc::new(clause);
        if searchable {
            self.seen.insert(clause.clone());
        }
        self.clauses.push(Kept { clause, origin, eligible, features, generation });
        self.picked.push(!searchable);
        let index = self.clauses.len() - 1;
        if searchable {
            self.by_weight.push(self.weight(index));
            self.by_generation.push(Reverse((generation, size, index)));
        }
        index
    }

    /// The first active clause that removes an atom of `d` by subsumption
    /// resolution, with the shortened clause.
    fn reduce(&self, d: &Clause, features: &Features) -> Option<(usize, Reduction)> {
        self.active.iter().find_map(|&a| {
            let k = &self.clauses[a];
            if !k.features.may_reduce(features) || k.clause.is_empty() {
                return None;
            }
            reduction(&k.clause, d).map(|r| (a, r))
        })
    }

    fn next_given(&mut self) -> Option<usize> {
        let shallow = self.strategy.pick_given_ratio > 0
            && (self.stats.given + 1).is_multiple_of(self.strategy.pick_given_ratio);
        loop {
            let index = if shallow { self.by_generation.pop()?.0 .2 } else { self.by_weight.pop()?.0 .3 };
            if !self.picked[index] {
                self.picked[index] = true;
                return Some(index);
            }
        }
    }

    fn inferences(&self, given: usize) -> Vec<(Clause, Origin)> {
        let g = &self.clauses[given].clause;
        let mut out: Vec<(Clause, Origin)> =
            factor(g).into_iter().map(|(c, sigma)| (c, Origin::Factor { child: given, sigma })).collect();
        let record = |left: usize, right: usize, found: &mut Vec<(Clause, Origin)>| {
            let (l, r) = (&self.clauses[left], &self.clauses[right]);
            if !l.eligible.succedent.contains(&true) || !r.eligible.antecedent.contains(&true) {
                return;
            }
            let left_ok = |i: usize| l.eligible.succedent[i];
            let right_ok = |i: usize| r.eligible.antecedent[i];
            for res in binary_resolvents_on(&l.clause, &r.clause, &left_ok, &right_ok) {
                found.push((res.conclusion, Origin::Res { left, right, pivot: res.pivot, sigma: res.sigma }));
            }
        };
        let partners: Vec<(Clause, Origin)> = self
            .active
            .par_iter()
            .flat_map_iter(|&a| {
                let mut found = Vec::new();
                record(given, a, &mut found);
                if a != given {
                    record(a, given, &mut found);
                }
                found
            })
            .collect();
        out.extend(partners);
        out
    }

    fn trace(&self, root: usize, inputs: &ClauseSet) -> RefutationProof {
        let mut needed = vec![false; self.clauses.len()];
        needed[root] = true;
        for i in (0..=root).rev() {
            if !needed[i] {
                continue;
            }
            match &self.clauses[i].origin {
                Origin::Input(_) => {}
                Origin::Res { left, right, .. } => {
                    needed[*left] = true;
                    needed[*right] = true;
                }
                Origin::Factor { child, .. } => needed[*child] = true,
            }
        }
        let mut renumber = HashMap::new();
        let mut nodes = Vec::new();
        for (i, kept) in self.clauses.iter().enumerate() {
            if !needed[i] {
                continue;
            }
            let kind = match &kept.origin {
                Origin::Input(id) => StepKind::Input { clause_id: id.clone() },
                Origin::Res { left, right, pivot, sigma } => StepKind::Res {
                    left: renumber[left],
                    right: renumber[right],
                    pivot: pivot.clone(),
                    sigma: sigma.clone(),
                },
                Origin::Factor { child, sigma } => {
                    StepKind::Factor { child: renumber[child], sigma: sigma.clone() }
                }
            };
            renumber.insert(i, nodes.len());
            nodes.push(RefStep { kind, conclusion: kept.clause.clone() });
        }
        RefutationProof { root: nodes.len() - 1, nodes, inputs: inputs.clone() }
    }
}

struct Reduction {
    conclusion: Clause,
    pivot: Atom,
    sigma: Substitution,
    reducer_is_left: bool,
}

/// Subsumption resolution of `d` by `c`: some atom `L` of `c` and an atom
/// `L'` of `d` on the opposite side admit a matcher θ with `Lθ = L'` that
/// maps the rest of `c` into the rest of `d`. Resolving then yields `d`
/// without `L'`. The step is recorded as an ordinary resolution whose σ is
/// θ (extended to the renamed premise), so the trace checker needs no
/// extra rule.
fn reduction(c: &Clause, d: &Clause) -> Option<Reduction> {
    // Matching is one-way, so whether θ exists does not depend on renaming
    // apart; the premises are renamed only once a match is known.
    for (i, l) in c.succedent.iter().enumerate() {
        for j in 0..d.antecedent.len() {
            if !skeleton_fits(l, &d.antecedent[j]) || c_into_d(c, d, (false, i), j).is_none() {
                continue;
            }
            let renamed = d.rename_apart_from(c);
            let sigma = c_into_d(c, &renamed, (false, i), j).filter(Substitution::is_idempotent)?;
            let pivot = renamed.antecedent[j].clone();
            return Some(Reduction {
                conclusion: def10_conclusion(c, &renamed, &sigma, &pivot),
                pivot,
                sigma,
                reducer_is_left: true,
            });
        }
    }
    for (i, l) in c.antecedent.iter().enumerate() {
        for j in 0..d.succedent.len() {
            if !skeleton_fits(l, &d.succedent[j]) || c_into_d(c, d, (true, i), j).is_none() {
                continue;
            }
            let renamed = c.rename_apart_from(d);
            let sigma = c_into_d(&renamed, d, (true, i), j).filter(Substitution::is_idempotent)?;
            let pivot = d.succedent[j].clone();
            return Some(Reduction {
                conclusion: def10_conclusion(d, &renamed, &sigma, &pivot),
                pivot,
                sigma,
                reducer_is_left: false,
            });
        }
    }
    None
}

// θ with `Lθ = L'` mapping the rest of `c` into the rest of `d`, where `L`
// is `c`'s atom at `(in_antecedent, i)` and `L'` is `d`'s atom at `j` on
// the other side.
fn c_into_d(c: &Clause, d: &Clause, (in_antecedent, i): (bool, usize), j: usize) -> Option<Substitution> {
    const NONE: usize = usize::MAX;
    let (pivot, target, skip) = if in_antecedent {
        (&c.antecedent[i], &d.succedent[j], (i, NONE, NONE, j))
    } else {
        (&c.succedent[i], &d.antecedent[j], (NONE, i, j, NONE))
    };
    let (skip_c_ante, skip_c_succ, skip_d_ante, skip_d_succ) = skip;
    let mut goals: Vec<Goal> = vec![(pivot, std::slice::from_ref(target), NONE)];
    goals.extend(without(&c.antecedent, skip_c_ante).map(|a| (a, d.antecedent.as_slice(), skip_d_ante)));
    goals.extend(without(&c.succedent, skip_c_succ).map(|a| (a, d.succedent.as_slice(), skip_d_succ)));
    match_all(goals)
}

fn without(atoms: &[Atom], skip: usize) -> impl Iterator<Item = &Atom> {
    atoms.iter().enumerate().filter(move |(k, _)| *k != skip).map(|(_, a)| a)
}

fn skeleton_fits(pattern: &Atom, target: &Atom) -> bool {
    pattern.pred == target.pred
        && pattern.args.len() == target.args.len()
        && pattern.args.iter().zip(&target.args).all(|(p, t)| could_match(p, t))
}

// an atom, the atoms it may be sent to, and a position among them to avoid
type Goal<'a> = (&'a Atom, &'a [Atom], usize);

// one matcher sending every goal atom onto one of its targets
fn match_all(mut goals: Vec<Goal>) -> Option<Substitution> {
    fn candidates<'a>(&(atom, targets, skip): &Goal<'a>) -> impl Iterator<Item = &'a Atom> {
        targets.iter().enumerate().filter(move |(k, t)| *k != skip && skeleton_fits(atom, t)).map(|(_, t)| t)
    }
    fn search(goals: &[Goal], theta: &Substitution) -> Option<Substitution> {
        let Some((goal, rest)) = goals.split_first() else {
            return Some(theta.clone());
        };
        candidates(goal).find_map(|target| {
            let mut trial = theta.clone();
            goal.0
                .args
                .iter()
                .zip(&target.args)
                .all(|(p, t)| match_term(p, t, &mut trial))
                .then(|| search(rest, &trial))
                .flatten()
        })
    }
    if !goals.iter().all(|g| candidates(g).next().is_some()) {
        return None;
    }
    // the pivot goal has a single target, so it stays first
    goals[1..].sort_by_key(|(a, _, _)| Reverse(a.size()));
    search(&goals, &Substitution::new())
}

/// Gives every clause an id (`input<k>` where none is set) and unfolds m-terms.
fn prepare_inputs(cs: &ClauseSet) -> ClauseSet {
    let mut out = ClauseSet::new(cs.parameter);
    for (k, c) in cs.iter().enumerate() {
        let id = c.id.clone().unwrap_or_else(|| format!("input{k}"));
        out.insert(c.unfold_all().with_id(id));
    }
    out
}

/// Saturates `cs` with the default [`Strategy`].
pub fn saturate(cs: &ClauseSet, limits: &ProverLimits) -> ProverResult {
    saturate_with(cs, limits, &Strategy::default())
}

/// Saturates `cs` until the empty clause appears, nothing new is left or a
/// limit is hit.
pub fn saturate_with(cs: &ClauseSet, limits: &ProverLimits, strategy: &Strategy) -> ProverResult {
    let start = Instant::now();
    let budget = Duration::from_secs_f64(limits.max_seconds);
    let inputs = prepare_inputs(cs);
    let mut search = Search {
        limits: limits.clone(),
        strategy: strategy.clone(),
        clauses: Vec::new(),
        seen: HashSet::new(),
        by_weight: BinaryHeap::new(),
        by_generation: BinaryHeap::new(),
        picked: Vec::new(),
        active: Vec::new(),
        depth_cut: false,
        stats: ProverStats::default(),
    };
    for c in inputs.iter() {
        let mut clause = c.clone();
        let id = clause.id.take().expect("ids assigned");
        search.offer(clause, Origin::Input(id));
    }

    let finish = |search: Search, status: ProverStatus| {
        let mut stats = search.stats;
        if let ProverStatus::Refuted(proof) = &status {
            stats.input_uses = occ_table(proof);
        }
        ProverResult { status, stats }
    };

    while let Some(given) = search.next_given() {
        if start.elapsed() > budget {
            return finish(
                search,
                ProverStatus::ResourceOut(format!("time limit of {}s", limits.max_seconds)),
            );
        }
        if search.clauses.len() > limits.max_clauses {
            return finish(
                search,
                ProverStatus::ResourceOut(format!("clause limit of {}", limits.max_clauses)),
            );
        }
        let given_clause = search.clauses[given].clause.clone();
        let given_features = search.clauses[given].features;
        if given_clause.is_empty() {
            let proof = search.trace(given, &inputs);
            return finish(search, ProverStatus::Refuted(proof));
        }
        // active may have grown since the clause was kept
        if search.forward_subsumed(&given_clause, &given_features) {
            search.stats.subsumed += 1;
            continue;
        }
        if limits.backward_subsumption {
            let before = search.active.len();
            let clauses = &search.clauses;
            search.active.retain(|&a| {
                let k = &clauses[a];
                !(given_features.may_subsume(&k.features) && given_clause.subsumes_unfolded(&k.clause))
            });
            search.stats.subsumed += before - search.active.len();
        }
        search.active.push(given);
        search.stats.given += 1;
        for (clause, origin) in search.inferences(given) {
            if let Some(index) = search.offer(clause, origin) {
                if search.clauses[index].clause.is_empty() {
                    let proof = search.trace(index, &inputs);
                    return finish(search, ProverStatus::Refuted(proof));
                }
            }
        }
    }
    if search.depth_cut {
        // clauses were dropped, so running dry proves nothing
        return finish(search, ProverStatus::ResourceOut("term depth cap reached".into()));
    }
    finish(search, ProverStatus::Saturated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refutation::verify_trace;
    use crate::schema::generate_c;
    use crate::term::{Numeral, Term, Variable};

    fn a(arg: Term) -> Atom {
        Atom::new("A", vec![arg]).unwrap()
    }

    #[test]
    fn factoring_example() {
        let c =
            Clause::new(vec![], vec![Atom::f_eq(Term::var("x"), 0), Atom::f_eq(Term::s(Term::var("y")), 0)]);
        let factors = factor(&c);
        assert_eq!(factors.len(), 1);
        let (f, sigma) = &factors[0];
        assert_eq!(f, &Clause::new(vec![], vec![Atom::f_eq(Term::s(Term::var("y")), 0)]).canonicalize());
        assert_eq!(sigma.get(&Variable::plain("x")), Some(&Term::s(Term::var("y"))));
    }

    #[test]
    fn small_instance_is_refuted() {
        let r = saturate(&generate_c(Numeral(0)), &ProverLimits::default());
        let ProverStatus::Refuted(proof) = &r.status else { panic!("{:?}", r.status) };
        assert!(proof.is_refutation());
        assert_eq!(verify_trace(proof), Ok(()));
        assert!(r.stats.input_uses["C5"] >= BigUint::from(1u32));
    }

    #[test]
    fn satisfiable_sets_saturate() {
        let one = ClauseSet::from_clauses([Clause::new(vec![], vec![a(Term::var("x"))])], None);
        assert!(matches!(saturate(&one, &ProverLimits::default()).status, ProverStatus::Saturated));
        let b = Atom::new("B", vec![Term::var("x")]).unwrap();
        let two = ClauseSet::from_clauses(
            [Clause::new(vec![], vec![a(Term::var("x"))]), Clause::new(vec![a(Term::var("x"))], vec![b])],
            None,
        );
        assert!(matches!(saturate(&two, &ProverLimits::default()).status, ProverStatus::Saturated));
    }

    fn p(pred: &str, arg: Term) -> Atom {
        Atom::new(pred, vec![arg]).unwrap()
    }

    #[test]
    fn reduction_drops_a_matched_antecedent_atom() {
        let x = Term::var("v0");
        let c = Clause::new(vec![p("B", x.clone())], vec![a(x.clone())]).canonicalize();
        let d = Clause::new(vec![a(Term::s(x.clone())), p("B", Term::s(x.clone()))], vec![p("C", x.clone())])
            .canonicalize();
        let r = reduction(&c, &d).expect("reducible");
        assert!(r.reducer_is_left);
        let expected = Clause::new(vec![p("B", Term::s(x.clone()))], vec![p("C", x)]).canonicalize();
        assert_eq!(r.conclusion, expected);
    }

    #[test]
    fn reduction_drops_a_matched_succedent_atom() {
        let (x, y) = (Term::var("v0"), Term::var("v1"));
        let c = Clause::new(vec![a(x)], vec![]);
        let d = Clause::new(vec![], vec![a(Term::s(y.clone())), p("B", y.clone())]).canonicalize();
        let r = reduction(&c, &d).expect("reducible");
        assert!(!r.reducer_is_left);
        assert_eq!(r.conclusion, Clause::new(vec![], vec![p("B", y)]).canonicalize());
    }

    #[test]
    fn reduction_needs_the_rest_to_fit() {
        let x = Term::var("v0");
        let c = Clause::new(vec![p("B", x.clone())], vec![a(x.clone())]);
        let d = Clause::new(vec![a(Term::s(x.clone()))], vec![p("C", x)]);
        assert!(reduction(&c, &d).is_none());
    }

    #[test]
    fn ordered_selection_keeps_one_codomain_literal() {
        let c5 = generate_c(Numeral(3))
            .iter()
            .find(|c| c.antecedent.is_empty() && c.succedent.len() == 4)
            .cloned()
            .unwrap();
        let e = Strategy::default().eligible(&c5);
        assert_eq!(e.succedent.iter().filter(|&&b| b).count(), 1);
    }

    #[test]
    fn every_instance_up_to_two_is_refuted_with_a_checkable_trace() {
        for n in 0..=2 {
            let r = saturate(&generate_c(Numeral(n)), &ProverLimits::default());
            let ProverStatus::Refuted(proof) = &r.status else { panic!("n={n}: {:?}", r.status) };
            assert_eq!(verify_trace(proof), Ok(()), "n={n}");
        }
    }

    #[test]
    fn limits_are_validated() {
        assert!(ProverLimits::new(0, 1.0, None).is_err());
        assert!(ProverLimits::new(10, 0.0, None).is_err());
        assert!(ProverLimits::new(10, 1.0, Some(0)).is_err());
        assert!(ProverLimits::new(10, 1.0, Some(3)).is_ok());
    }

    #[test]
    fn runs_are_deterministic() {
        let cs = generate_c(Numeral(1));
        let first = saturate(&cs, &ProverLimits::default());
        let second = saturate(&cs, &ProverLimits::default());
        assert_eq!(first.stats, second.stats);
    }
}
