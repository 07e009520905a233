//! Rule-application traces and the per-leaf `(1 - Q)` power diagnostic.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::recursion::engine::{evaluate, MemoTable, Recurrence, Retention};
use crate::recursion::state::{expand, RecState, Rule, Step};

/// Power of `(1 - Q)` a rule contributes to the denominator.
pub fn rule_qpow(s: &RecState, rule: Rule) -> u32 {
    match rule {
        Rule::R1 => s.v.len().max(s.w.len()) as u32,
        Rule::R2 | Rule::R3 => 1,
        _ => 0,
    }
}

#[derive(Clone, Debug)]
pub struct TraceNode {
    pub state: RecState,
    pub rule: Rule,
    pub children: Vec<usize>,
    /// `(1 - Q)` power accumulated from the root through this node.
    pub cumulative_qpow: u32,
}

/// The full (unshared) rule tree below a state. Node 0 is the root.
#[derive(Clone, Debug)]
pub struct Trace {
    pub nodes: Vec<TraceNode>,
}

impl Trace {
    pub fn leaves(&self) -> impl Iterator<Item = &TraceNode> {
        self.nodes.iter().filter(|n| n.children.is_empty())
    }

    pub fn leaf_qpowers(&self) -> BTreeSet<u32> {
        self.leaves().map(|n| n.cumulative_qpow).collect()
    }
}

/// Expands the whole rule tree, failing once it exceeds `max_nodes` nodes.
pub fn trace_evaluate(root: &RecState, max_nodes: usize) -> Result<Trace> {
    let mut nodes: Vec<TraceNode> = Vec::new();
    let mut work: Vec<(RecState, Option<usize>, u32)> = alloc::vec![(root.clone(), None, 0)];
    while let Some((state, parent, above)) = work.pop() {
        if nodes.len() >= max_nodes {
            return Err(Error::Unsupported(alloc::format!("trace exceeds {max_nodes} nodes")));
        }
        let step = expand(&state)?;
        let cumulative_qpow = above + rule_qpow(&state, step.rule);
        let id = nodes.len();
        if let Some(p) = parent {
            nodes[p].children.push(id);
        }
        for child in step.children.iter().rev() {
            work.push((child.clone(), Some(id), cumulative_qpow));
        }
        nodes.push(TraceNode { state, rule: step.rule, children: Vec::new(), cumulative_qpow });
    }
    Ok(Trace { nodes })
}

/// The set of cumulative `(1 - Q)` powers over all root-to-leaf paths,
/// computed on the shared rule graph instead of the exponential tree.
pub fn leaf_qpowers(root: &RecState) -> Result<BTreeSet<u32>> {
    let mut memo = MemoTable::new(Retention::Roots);
    evaluate(&LeafPowers, root, &mut memo)
}

struct LeafPowers;

impl Recurrence for LeafPowers {
    type State = RecState;
    type Value = BTreeSet<u32>;

    fn expand(&self, s: &RecState) -> Result<Step<RecState>> {
        expand(s)
    }

    fn combine(&self, s: &RecState, rule: Rule, kids: &[&BTreeSet<u32>]) -> Result<BTreeSet<u32>> {
        let own = rule_qpow(s, rule);
        if kids.is_empty() {
            return Ok(BTreeSet::from([own]));
        }
        Ok(kids.iter().flat_map(|k| k.iter().map(|x| x + own)).collect())
    }

    fn depth_bound(&self, root: &RecState) -> usize {
        root.depth_bound()
    }
}
