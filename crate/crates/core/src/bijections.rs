//! Tree bijections onto pattern-avoiding parking functions, the right-to-left
//! block filling for `{312, 321}`, and the Catalan-triangle relocation move.
//!
//! Trees are written as balanced parentheses: a vertex is `(` followed by its
//! child subtrees and `)`. The single-edge tree is `(())`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::dyck::{DyckPath, Step};
use crate::parking::{ParkingError, ParkingFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("tree has {edges} edges; at least {min} required")]
    TooFewEdges { edges: usize, min: usize },
    #[error("tree has a vertex with children but no leaf child")]
    NotLeafy,
    #[error("expected {expected} placement choices, found {found}")]
    PlacementCount { expected: usize, found: usize },
    #[error("placement {index} is {value}, must lie in 0..={max}")]
    PlacementOutOfRange { index: usize, value: usize, max: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("cannot parse tree: {0}")]
    Parse(String),
    #[error("produced an invalid parking function: {0}")]
    InvalidOutput(#[from] ParkingError),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RootedOrderedTree {
    pub children: Vec<RootedOrderedTree>,
}

impl RootedOrderedTree {
    pub fn leaf() -> Self {
        RootedOrderedTree::default()
    }

    pub fn with_children(children: Vec<RootedOrderedTree>) -> Self {
        RootedOrderedTree { children }
    }

    /// Root joined to `k` leaves.
    pub fn star(k: usize) -> Self {
        RootedOrderedTree::with_children(vec![RootedOrderedTree::leaf(); k])
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn edges(&self) -> usize {
        self.children.iter().map(|c| 1 + c.edges()).sum()
    }

    /// Every vertex that has children has at least one leaf child.
    pub fn is_leafy(&self) -> bool {
        self.is_leaf()
            || (self.children.iter().any(RootedOrderedTree::is_leaf)
                && self.children.iter().all(RootedOrderedTree::is_leafy))
    }

    /// Vertices in preorder.
    pub fn preorder(&self) -> Vec<&RootedOrderedTree> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(v.children.iter().rev());
        }
        out
    }

    /// Degrees (child counts) of the non-root vertices that have children, in preorder.
    pub fn placement_degrees(&self) -> Vec<usize> {
        self.preorder()
            .into_iter()
            .skip(1)
            .filter(|v| !v.is_leaf())
            .map(|v| v.children.len())
            .collect()
    }
}

impl fmt::Display for RootedOrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for c in &self.children {
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for RootedOrderedTree {
    type Err = BijectionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut stack: Vec<Vec<RootedOrderedTree>> = Vec::new();
        let mut root = None;
        for (i, ch) in s.chars().enumerate() {
            if root.is_some() {
                return Err(BijectionError::Parse(format!("trailing input at {i}")));
            }
            match ch {
                '(' => stack.push(Vec::new()),
                ')' => {
                    let children = stack
                        .pop()
                        .ok_or_else(|| BijectionError::Parse(format!("unmatched ')' at {i}")))?;
                    let node = RootedOrderedTree { children };
                    match stack.last_mut() {
                        Some(parent) => parent.push(node),
                        None => root = Some(node),
                    }
                }
                other => {
                    return Err(BijectionError::Parse(format!("unexpected {other:?} at {i}")))
                }
            }
        }
        root.ok_or_else(|| BijectionError::Parse("unbalanced or empty".into()))
    }
}

impl Serialize for RootedOrderedTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootedOrderedTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// `N^{deg v} E` for every vertex `v` in preorder, without the final `E`.
/// Equivalently `f(T) = N f(T_1) E f(T_2)` with `T_2` hanging off the rightmost root edge.
pub fn tree_to_dyck(tree: &RootedOrderedTree) -> DyckPath {
    let mut steps = Vec::with_capacity(2 * tree.edges() + 1);
    for v in tree.preorder() {
        steps.extend(std::iter::repeat_n(Step::N, v.children.len()));
        steps.push(Step::E);
    }
    steps.pop();
    DyckPath::new(steps).expect("preorder degree word is a Dyck path")
}

/// All rooted ordered trees with `edges` edges, ordered by the size of the first
/// subtree and then recursively.
pub fn enumerate_trees(edges: usize) -> Vec<RootedOrderedTree> {
    if edges == 0 {
        return vec![RootedOrderedTree::leaf()];
    }
    let mut out = Vec::new();
    for first_edges in 0..edges {
        let firsts = enumerate_trees(first_edges);
        let rests = enumerate_trees(edges - 1 - first_edges);
        for first in &firsts {
            for rest in &rests {
                let mut children = Vec::with_capacity(rest.children.len() + 1);
                children.push(first.clone());
                children.extend(rest.children.iter().cloned());
                out.push(RootedOrderedTree { children });
            }
        }
    }
    out
}

pub fn enumerate_leafy_trees(edges: usize) -> Vec<RootedOrderedTree> {
    enumerate_trees(edges)
        .into_iter()
        .filter(RootedOrderedTree::is_leafy)
        .collect()
}

/// The recursive map from leafy trees with `n + 1` edges to `{123,132,213}`-avoiding
/// parking functions of size `n`.
pub fn leafy_tree_to_pf(tree: &RootedOrderedTree) -> Result<ParkingFunction, BijectionError> {
    let edges = tree.edges();
    if edges < 2 {
        return Err(BijectionError::TooFewEdges { edges, min: 2 });
    }
    if !tree.is_leafy() {
        return Err(BijectionError::NotLeafy);
    }
    Ok(ParkingFunction::validate(leafy_blocks(tree))?)
}

fn leafy_blocks(tree: &RootedOrderedTree) -> Vec<Vec<usize>> {
    let m = tree.children.len();
    let internal: Vec<usize> = (0..m).filter(|&i| !tree.children[i].is_leaf()).collect();
    let l = internal.len();
    if l == 0 {
        return (1..m).rev().map(|v| vec![v]).collect();
    }
    let subs: Vec<Vec<Vec<usize>>> = internal
        .iter()
        .map(|&i| leafy_blocks(&tree.children[i]))
        .collect();
    let sizes: Vec<usize> = subs
        .iter()
        .map(|b| b.iter().map(Vec::len).sum())
        .collect();
    // tail[k] = Σ_{i>k} |t_i| (0-based k)
    let mut tail = vec![0usize; l];
    for k in (0..l.saturating_sub(1)).rev() {
        tail[k] = tail[k + 1] + sizes[k + 1];
    }
    let singles = m - l - 1;
    // Ascent k (1-based) of 12⊖…⊖12⊖1…1 holds singles + 2(l-k) + 1 and + 2.
    let ascent = |k0: usize| -> (usize, usize) {
        let lo = singles + 2 * (l - (k0 + 1)) + 1 + tail[k0];
        (lo, lo + 1)
    };
    let first_internal = internal[0] == 0;

    let mut out = Vec::new();
    for k0 in 0..l {
        let shift = 2 * (l - k0) + singles + tail[k0];
        for block in &subs[k0] {
            out.push(block.iter().map(|v| v + shift).collect());
        }
        let (lo, hi) = ascent(k0);
        if first_internal && k0 == l - 1 {
            out.push(vec![lo]);
        } else {
            out.push(vec![lo, hi]);
        }
    }
    let mut pending: Vec<usize> = Vec::with_capacity(singles + 1);
    if first_internal {
        pending.push(ascent(l - 1).1);
    }
    pending.extend((1..=singles).rev());
    let mut pending = pending.into_iter();
    for child in &tree.children[1..] {
        if child.is_leaf() {
            out.push(vec![pending.next().expect("one singleton per external edge")]);
        } else {
            out.push(Vec::new());
        }
    }
    out
}

/// A rooted ordered tree together with, for every non-root vertex with `d`
/// children (in preorder), the number of its child subtrees lying clockwise
/// after the edge from its parent, in `0..=d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NonCrossingTree {
    tree: RootedOrderedTree,
    placements: Vec<usize>,
}

impl NonCrossingTree {
    pub fn new(tree: RootedOrderedTree, placements: Vec<usize>) -> Result<Self, BijectionError> {
        let degrees = tree.placement_degrees();
        if degrees.len() != placements.len() {
            return Err(BijectionError::PlacementCount {
                expected: degrees.len(),
                found: placements.len(),
            });
        }
        for (index, (&value, &max)) in placements.iter().zip(&degrees).enumerate() {
            if value > max {
                return Err(BijectionError::PlacementOutOfRange { index, value, max });
            }
        }
        Ok(NonCrossingTree { tree, placements })
    }

    pub fn tree(&self) -> &RootedOrderedTree {
        &self.tree
    }

    pub fn placements(&self) -> &[usize] {
        &self.placements
    }
}

impl fmt::Display for NonCrossingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.placements.iter().map(|p| p.to_string()).collect();
        write!(f, "{}[{}]", self.tree, list.join(","))
    }
}

impl FromStr for NonCrossingTree {
    type Err = BijectionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (tree_text, rest) = s.split_once('[').unwrap_or((s, "]"));
        let inner = rest
            .strip_suffix(']')
            .ok_or_else(|| BijectionError::Parse("placement list must end with ']'".into()))?;
        let placements = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| BijectionError::Parse(format!("bad placement {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        NonCrossingTree::new(tree_text.parse()?, placements)
    }
}

/// Every non-crossing tree on `n + 1` circle points, as (tree, placements) pairs.
pub fn enumerate_noncrossing_trees(n: usize) -> Vec<NonCrossingTree> {
    let mut out = Vec::new();
    for tree in enumerate_trees(n) {
        let degrees = tree.placement_degrees();
        let mut choice = vec![0usize; degrees.len()];
        loop {
            out.push(NonCrossingTree {
                tree: tree.clone(),
                placements: choice.clone(),
            });
            // odometer, last position fastest
            let mut i = choice.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if choice[i] < degrees[i] {
                    choice[i] += 1;
                    break;
                }
                choice[i] = 0;
            }
            if choice.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    out
}

/// Left-to-right filling with a floating placeholder driven by the placements.
pub fn noncrossing_tree_to_pf(nct: &NonCrossingTree) -> Result<ParkingFunction, BijectionError> {
    let n = nct.tree.edges();
    if n == 0 {
        return Err(BijectionError::TooFewEdges { edges: 0, min: 1 });
    }
    const X: usize = 0;
    let order = nct.tree.preorder();
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut x_block = 0usize;
    let mut used = 0usize;
    let mut choices = nct.placements.iter();
    for (idx, v) in order[..n].iter().enumerate() {
        let j = v.children.len();
        if j == 0 {
            blocks.push(Vec::new());
            continue;
        }
        if idx == 0 {
            let mut b: Vec<usize> = (1..j).collect();
            b.push(X);
            blocks.push(b);
            x_block = 0;
            used = j - 1;
            continue;
        }
        let i = *choices.next().expect("one placement per internal vertex");
        let fresh: Vec<usize> = (used + 1..=used + j).collect();
        if i == 0 {
            blocks.push(fresh);
        } else {
            let v = used + i;
            replace_x(&mut blocks[x_block], v);
            let mut b: Vec<usize> = fresh.into_iter().filter(|&d| d != v).collect();
            b.push(X);
            x_block = blocks.len();
            blocks.push(b);
        }
        used += j;
    }
    replace_x(&mut blocks[x_block], n);
    for b in &mut blocks {
        b.sort_unstable();
    }
    Ok(ParkingFunction::validate(blocks)?)
}

fn replace_x(block: &mut [usize], value: usize) {
    let slot = block.iter_mut().find(|d| **d == 0).expect("placeholder present");
    *slot = value;
}

/// All `{312,321}`-avoiding parking functions on `path`, filled right to left.
pub fn fill_312_321(path: &DyckPath) -> Vec<ParkingFunction> {
    let n = path.semilength();
    if n == 0 {
        return Vec::new();
    }
    let cols = path.column_heights();
    let nonempty: Vec<usize> = (0..cols.len()).filter(|&i| cols[i] > 0).collect();
    let last = *nonempty.last().expect("non-empty path has a north run");
    let j = cols[last];
    let mut start = vec![Vec::new(); cols.len()];
    start[last] = std::iter::once(0).chain(n - j + 2..=n).collect();
    let mut partial = vec![(start, last)];
    let mut lowest = n - j + 2;
    for &col in nonempty.iter().rev().skip(1) {
        let j = cols[col];
        let fresh: Vec<usize> = (lowest - j..lowest).collect();
        let mut next = Vec::with_capacity(partial.len() * (j + 1));
        for (blocks, x_col) in partial {
            let mut keep = blocks.clone();
            keep[col] = fresh.clone();
            next.push((keep, x_col));
            for &v in &fresh {
                let mut moved = blocks.clone();
                replace_x(&mut moved[x_col], v);
                let mut b: Vec<usize> = vec![0];
                b.extend(fresh.iter().copied().filter(|&d| d != v));
                moved[col] = b;
                next.push((moved, col));
            }
        }
        partial = next;
        lowest -= j;
    }
    partial
        .into_iter()
        .map(|(mut blocks, x_col)| {
            replace_x(&mut blocks[x_col], 1);
            for b in &mut blocks {
                b.sort_unstable();
            }
            ParkingFunction::from_blocks_unchecked(blocks)
        })
        .collect()
}

/// Moves the `E^j N` segment ending at the north step labeled `k-1` to just before
/// the final east step, where `k` is the last letter of the reading permutation.
///
/// Requires a reading permutation `I_{k-1} ⊕ J_{n-k+1}` with `k >= 2` and an empty
/// final block.
pub fn catalan_triangle_step(pf: &ParkingFunction) -> Result<ParkingFunction, BijectionError> {
    let n = pf.size();
    let word = pf.reading_word();
    let k = word[n - 1];
    let expected: Vec<usize> = (1..k).chain((k..=n).rev()).collect();
    if k < 2 || word != expected {
        return Err(BijectionError::Precondition(format!(
            "reading permutation of {pf} is not I_(k-1) + J_(n-k+1) with k >= 2"
        )));
    }
    if !pf.blocks()[n - 1].is_empty() {
        return Err(BijectionError::Precondition(format!("final block of {pf} is not empty")));
    }
    // (step, label) with label 0 on east steps
    let mut steps: Vec<(Step, usize)> = Vec::with_capacity(2 * n);
    for block in pf.blocks() {
        steps.extend(block.iter().map(|&l| (Step::N, l)));
        steps.push((Step::E, 0));
    }
    let idx = steps
        .iter()
        .position(|&(s, l)| s == Step::N && l == k - 1)
        .expect("label k-1 is present");
    let j = steps[..idx].iter().rev().take_while(|(s, _)| *s == Step::E).count();
    steps.drain(idx - j..=idx);
    let at = steps.len() - 1;
    let moved = std::iter::once((Step::N, k - 1)).chain(std::iter::repeat_n((Step::E, 0), j));
    steps.splice(at..at, moved);
    let mut blocks = Vec::with_capacity(n);
    let mut current = Vec::new();
    for (s, l) in steps {
        match s {
            Step::N => current.push(l),
            Step::E => {
                current.sort_unstable();
                blocks.push(std::mem::take(&mut current));
            }
        }
    }
    Ok(ParkingFunction::validate(blocks)?)
}
