//! Composable sequences of canonical relations modulo rewriting.
//!
//! A morphism is a chain `(f_1, …, f_r)` with `f_i` to the source of
//! `f_{i-1}`. Two sequences are identified when one is obtained from the
//! other by replacing a strongly transversal adjacent pair by its
//! composition, or by deleting a diagonal. In the linear setting strong
//! transversality is deficiency zero.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::relation::CanonicalRelation;
use crate::symplectic::SymplecticSpace;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WWSequence<F: Field> {
    target: SymplecticSpace<F>,
    source: SymplecticSpace<F>,
    entries: Vec<CanonicalRelation<F>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RewriteKind {
    /// Replace entries `position` and `position + 1` by their composition.
    ComposePair,
    /// Delete the diagonal at `position`.
    DropIdentity,
    /// Insert a diagonal so that it becomes entry `position`.
    InsertIdentity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RewriteStep {
    pub position: usize,
    pub kind: RewriteKind,
}

impl RewriteStep {
    pub fn new(position: usize, kind: RewriteKind) -> Self {
        RewriteStep { position, kind }
    }
}

impl<F: Field> WWSequence<F> {
    /// The empty sequence at `object`, its identity morphism.
    pub fn empty(object: &SymplecticSpace<F>) -> Self {
        WWSequence {
            target: object.clone(),
            source: object.clone(),
            entries: Vec::new(),
        }
    }

    /// A nonempty chain; use [`Self::empty`] for the empty one.
    pub fn new(entries: Vec<CanonicalRelation<F>>) -> Result<Self> {
        let (Some(first), Some(last)) = (entries.first(), entries.last()) else {
            return Err(Error::SpaceMismatch("an empty sequence needs an explicit object".to_string()));
        };
        for (i, pair) in entries.windows(2).enumerate() {
            if pair[0].source() != pair[1].target() {
                return Err(Error::SpaceMismatch(format!(
                    "entry {i} has a source different from the target of entry {}",
                    i + 1
                )));
            }
        }
        Ok(WWSequence {
            target: first.target().clone(),
            source: last.source().clone(),
            entries,
        })
    }

    pub fn target(&self) -> &SymplecticSpace<F> {
        &self.target
    }

    pub fn source(&self) -> &SymplecticSpace<F> {
        &self.source
    }

    pub fn entries(&self) -> &[CanonicalRelation<F>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Object between entries `i − 1` and `i`: the outer target at 0, the
    /// outer source at `len`.
    pub fn object_at(&self, i: usize) -> &SymplecticSpace<F> {
        if i == 0 {
            &self.target
        } else {
            self.entries[i - 1].source()
        }
    }

    /// Composition in the category: concatenation.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.source != other.target {
            return Err(Error::SpaceMismatch("sequences do not meet in a common object".to_string()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(WWSequence {
            target: self.target.clone(),
            source: other.source.clone(),
            entries,
        })
    }

    /// Image in the category of relations: the left fold of composition.
    pub fn rel_value(&self) -> CanonicalRelation<F> {
        let mut acc = CanonicalRelation::identity(&self.target);
        for e in &self.entries {
            acc = acc.compose(e).expect("entries are chain-composable");
        }
        acc
    }

    pub fn is_legal(&self, step: RewriteStep) -> bool {
        let i = step.position;
        match step.kind {
            RewriteKind::ComposePair => {
                i + 1 < self.len()
                    && self.entries[i]
                        .transversality(&self.entries[i + 1])
                        .expect("adjacent entries are composable")
                        .transversal
            }
            RewriteKind::DropIdentity => i < self.len() && self.entries[i].is_identity(),
            RewriteKind::InsertIdentity => i <= self.len(),
        }
    }

    pub fn apply_step(&self, step: RewriteStep) -> Result<Self> {
        if !self.is_legal(step) {
            return Err(Error::IllegalRewrite(format!("{:?} at position {}", step.kind, step.position)));
        }
        let i = step.position;
        let mut entries = self.entries.clone();
        match step.kind {
            RewriteKind::ComposePair => {
                let right = entries.remove(i + 1);
                entries[i] = entries[i].compose(&right)?;
            }
            RewriteKind::DropIdentity => {
                entries.remove(i);
            }
            RewriteKind::InsertIdentity => {
                entries.insert(i, CanonicalRelation::identity(self.object_at(i)));
            }
        }
        Ok(WWSequence {
            target: self.target.clone(),
            source: self.source.clone(),
            entries,
        })
    }

    /// Every legal step, drops first, then compositions, then insertions,
    /// each by position.
    pub fn legal_steps(&self, with_insertions: bool) -> Vec<RewriteStep> {
        let mut steps: Vec<RewriteStep> = (0..self.len())
            .map(|i| RewriteStep::new(i, RewriteKind::DropIdentity))
            .chain((0..self.len().saturating_sub(1)).map(|i| RewriteStep::new(i, RewriteKind::ComposePair)))
            .filter(|s| self.is_legal(*s))
            .collect();
        if with_insertions {
            steps.extend((0..=self.len()).map(|i| RewriteStep::new(i, RewriteKind::InsertIdentity)));
        }
        steps
    }
}

/// Deterministic reduction: drop the leftmost diagonal, otherwise compose
/// the leftmost transversal pair, until neither applies.
pub fn greedy_reduce<F: Field>(s: &WWSequence<F>) -> WWSequence<F> {
    greedy_reduce_traced(s).0
}

pub fn greedy_reduce_traced<F: Field>(s: &WWSequence<F>) -> (WWSequence<F>, Vec<RewriteStep>) {
    let mut current = s.clone();
    let mut trace = Vec::new();
    while let Some(step) = current.legal_steps(false).first().copied() {
        current = current.apply_step(step).expect("step was listed as legal");
        trace.push(step);
    }
    (current, trace)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LinkDirection {
    /// `sequence` is the result of applying `step` to the previous one.
    Forward,
    /// Applying `step` to `sequence` gives the previous one.
    Backward,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLink<F: Field> {
    pub step: RewriteStep,
    pub direction: LinkDirection,
    pub sequence: WWSequence<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence<F: Field> {
    /// Certified by a chain of generators from the first sequence to the
    /// second.
    Equivalent(Vec<ChainLink<F>>),
    /// No chain within the budget; not a proof of inequivalence.
    Unknown,
}

/// Forward distance from the root and the step that first reached a node.
type Parents<F> = HashMap<WWSequence<F>, (usize, Option<(WWSequence<F>, RewriteStep)>)>;

struct SearchSide<F: Field> {
    root: WWSequence<F>,
    parents: Parents<F>,
    frontier: Vec<WWSequence<F>>,
}

impl<F: Field> SearchSide<F> {
    fn new(root: &WWSequence<F>) -> Self {
        let mut parents = HashMap::new();
        parents.insert(root.clone(), (0, None));
        SearchSide {
            root: root.clone(),
            parents,
            frontier: vec![root.clone()],
        }
    }

    fn level(&self, node: &WWSequence<F>) -> Option<usize> {
        self.parents.get(node).map(|(l, _)| *l)
    }

    /// Grows the ball by one level; returns the new nodes in discovery order.
    fn expand(&mut self, level: usize) -> Vec<WWSequence<F>> {
        let mut next = Vec::new();
        for node in std::mem::take(&mut self.frontier) {
            for step in node.legal_steps(true) {
                let child = node.apply_step(step).expect("legal step");
                if self.parents.contains_key(&child) {
                    continue;
                }
                self.parents.insert(child.clone(), (level, Some((node.clone(), step))));
                next.push(child);
            }
        }
        self.frontier = next.clone();
        next
    }

    /// Forward path from the root: `(step, sequence after step)`.
    fn path_to(&self, node: &WWSequence<F>) -> Vec<(RewriteStep, WWSequence<F>)> {
        let mut path = Vec::new();
        let mut cur = node.clone();
        while let Some((_, Some((parent, step)))) = self.parents.get(&cur) {
            path.push((*step, cur.clone()));
            cur = parent.clone();
        }
        path.reverse();
        path
    }
}

/// Bounded search for a certificate `s1 → … → m ← … ← s2`, where each arrow
/// is a drop, a transversal composition or an identity insertion, with at
/// most `depth` arrows in total. Both forward balls grow level by level.
pub fn equivalent_bounded<F: Field>(s1: &WWSequence<F>, s2: &WWSequence<F>, depth: usize) -> Result<Equivalence<F>> {
    if s1.target != s2.target || s1.source != s2.source {
        return Err(Error::SpaceMismatch("sequences have different outer objects".to_string()));
    }
    if s1 == s2 {
        return Ok(Equivalence::Equivalent(Vec::new()));
    }
    let mut left = SearchSide::new(s1);
    let mut right = SearchSide::new(s2);
    for level in 1..=depth {
        if left.frontier.is_empty() && right.frontier.is_empty() {
            break;
        }
        for node in left.expand(level) {
            if right.level(&node).is_some_and(|r| level + r <= depth) {
                return Ok(Equivalence::Equivalent(build_chain(&left, &right, &node)));
            }
        }
        for node in right.expand(level) {
            if left.level(&node).is_some_and(|l| level + l <= depth) {
                return Ok(Equivalence::Equivalent(build_chain(&left, &right, &node)));
            }
        }
    }
    Ok(Equivalence::Unknown)
}

fn build_chain<F: Field>(left: &SearchSide<F>, right: &SearchSide<F>, meeting: &WWSequence<F>) -> Vec<ChainLink<F>> {
    let mut chain: Vec<ChainLink<F>> = left
        .path_to(meeting)
        .into_iter()
        .map(|(step, sequence)| ChainLink {
            step,
            direction: LinkDirection::Forward,
            sequence,
        })
        .collect();
    // right path s2 = b0 → b1 → … → meeting, walked backwards
    let right_path = right.path_to(meeting);
    let mut previous = vec![right.root.clone()];
    previous.extend(right_path.iter().map(|(_, seq)| seq.clone()));
    for (j, (step, _)) in right_path.iter().enumerate().rev() {
        chain.push(ChainLink {
            step: *step,
            direction: LinkDirection::Backward,
            sequence: previous[j].clone(),
        });
    }
    chain
}

/// Replays a certificate from `start`; true when every link is a legal
/// generator and the chain ends at `end`.
pub fn verify_chain<F: Field>(start: &WWSequence<F>, end: &WWSequence<F>, chain: &[ChainLink<F>]) -> bool {
    let mut current = start.clone();
    for link in chain {
        let ok = match link.direction {
            LinkDirection::Forward => current.apply_step(link.step).ok().as_ref() == Some(&link.sequence),
            LinkDirection::Backward => link.sequence.apply_step(link.step).ok().as_ref() == Some(&current),
        };
        if !ok {
            return false;
        }
        current = link.sequence.clone();
    }
    current == *end
}
