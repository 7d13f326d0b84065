use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::OrderedPair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("{0} is not an element of A_{1}")]
    NotInA(OrderedPair, u64),
}

/// `(i, j) ⋖ₙ (l, k)` read literally: `j < n`, `l ≤ i`, `k ≤ j` and exactly
/// one of `i = l`, `j = k`.
pub fn lessdot(n: u64, a: OrderedPair, b: OrderedPair) -> Result<bool, OrderingError> {
    for p in [a, b] {
        if !p.in_a(n) {
            return Err(OrderingError::NotInA(p, n));
        }
    }
    let (i, j, l, k) = (a.i, a.j, b.i, b.j);
    Ok(j < n && l <= i && k <= j && ((i == l) != (j == k)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyStatus {
    pub holds: bool,
    pub counterexample: Option<String>,
}

impl PropertyStatus {
    fn from_counterexample(counterexample: Option<String>) -> Self {
        PropertyStatus { holds: counterexample.is_none(), counterexample }
    }
}

impl fmt::Display for PropertyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "holds"),
            Some(c) => write!(f, "fails ({c})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderingReport {
    pub n: u64,
    pub elements: usize,
    pub related_pairs: usize,
    pub anti_reflexivity: PropertyStatus,
    pub anti_symmetry: PropertyStatus,
    pub transitivity: PropertyStatus,
    /// Every non-empty chain has a greatest lower bound of the form `(i, n)`.
    pub glb: PropertyStatus,
    pub chains: usize,
    pub chains_with_glb: usize,
    pub chains_with_glb_at_n: usize,
}

impl fmt::Display for OrderingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ordering on A_{}: {} elements, {} related pairs",
            self.n, self.elements, self.related_pairs
        )?;
        writeln!(f, "anti-reflexivity: {}", self.anti_reflexivity)?;
        writeln!(f, "anti-symmetry: {}", self.anti_symmetry)?;
        writeln!(f, "transitivity: {}", self.transitivity)?;
        writeln!(f, "glb of every chain is some (i,{}): {}", self.n, self.glb)?;
        write!(
            f,
            "chains: {}, with a glb: {}, with a glb (i,{}): {}",
            self.chains, self.chains_with_glb, self.n, self.chains_with_glb_at_n
        )
    }
}

fn elements(n: u64) -> Vec<OrderedPair> {
    (0..=n).flat_map(|j| (0..=j).map(move |i| OrderedPair::new(i, j))).collect()
}

/// Exhaustive check of the order axioms and the glb claim over `A_n`.
pub fn check_ordering_properties(n: u64) -> OrderingReport {
    let elems = elements(n);
    let size = elems.len();
    let rel: Vec<Vec<bool>> = elems
        .iter()
        .map(|&a| elems.iter().map(|&b| lessdot(n, a, b).expect("members of A_n")).collect())
        .collect();
    let related_pairs = rel.iter().flatten().filter(|r| **r).count();

    let anti_reflexivity = PropertyStatus::from_counterexample(
        (0..size).find(|&a| rel[a][a]).map(|a| format!("{0} ⋖ {0}", elems[a])),
    );
    let anti_symmetry = PropertyStatus::from_counterexample(
        (0..size)
            .flat_map(|a| (0..size).map(move |b| (a, b)))
            .find(|&(a, b)| a != b && rel[a][b] && rel[b][a])
            .map(|(a, b)| format!("{} ⋖ {} and back", elems[a], elems[b])),
    );
    let transitivity = PropertyStatus::from_counterexample(
        (0..size)
            .flat_map(|a| (0..size).flat_map(move |b| (0..size).map(move |c| (a, b, c))))
            .find(|&(a, b, c)| rel[a][b] && rel[b][c] && !rel[a][c])
            .map(|(a, b, c)| {
                format!("{} ⋖ {} ⋖ {} but not {} ⋖ {}", elems[a], elems[b], elems[c], elems[a], elems[c])
            }),
    );

    let comparable = |a: usize, b: usize| rel[a][b] || rel[b][a];
    let mut chains = Vec::new();
    let mut current = Vec::new();
    collect_chains(0, size, &comparable, &mut current, &mut chains);

    let lower_bound = |g: usize, chain: &[usize]| chain.iter().all(|&c| g == c || rel[g][c]);
    let mut chains_with_glb = 0;
    let mut chains_with_glb_at_n = 0;
    let mut glb_failure = None;
    for chain in &chains {
        let bounds: Vec<usize> = (0..size).filter(|&g| lower_bound(g, chain)).collect();
        let greatest: Vec<usize> =
            bounds.iter().copied().filter(|&g| bounds.iter().all(|&h| h == g || rel[h][g])).collect();
        let glb = match greatest.as_slice() {
            [g] => Some(elems[*g]),
            _ => None,
        };
        if glb.is_some() {
            chains_with_glb += 1;
        }
        if glb.is_some_and(|g| g.j == n) {
            chains_with_glb_at_n += 1;
        } else if glb_failure.is_none() {
            let shown: Vec<String> = chain.iter().map(|&c| elems[c].to_string()).collect();
            glb_failure = Some(match glb {
                Some(g) => format!("chain {{{}}} has glb {g}", shown.join(", ")),
                None => format!("chain {{{}}} has no glb", shown.join(", ")),
            });
        }
    }

    OrderingReport {
        n,
        elements: size,
        related_pairs,
        anti_reflexivity,
        anti_symmetry,
        transitivity,
        glb: PropertyStatus::from_counterexample(glb_failure),
        chains: chains.len(),
        chains_with_glb,
        chains_with_glb_at_n,
    }
}

// non-empty sets of pairwise comparable elements, in increasing index order
fn collect_chains(
    start: usize,
    size: usize,
    comparable: &impl Fn(usize, usize) -> bool,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    for next in start..size {
        if current.iter().all(|&c| comparable(c, next)) {
            current.push(next);
            out.push(current.clone());
            collect_chains(next + 1, size, comparable, current, out);
            current.pop();
        }
    }
}
