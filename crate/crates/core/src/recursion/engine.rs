use core::hash::Hash;

use alloc::vec::Vec;
use hashbrown::hash_map::Entry;
use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::recursion::state::{Rule, Step};

/// A rule system evaluated by [`evaluate`].
pub trait Recurrence {
    type State: Clone + Eq + Hash;
    type Value: Clone;

    fn expand(&self, s: &Self::State) -> Result<Step<Self::State>>;

    /// Value of `s` given the values of its children, in [`Step`] order.
    fn combine(&self, s: &Self::State, rule: Rule, children: &[&Self::Value]) -> Result<Self::Value>;

    /// Rules whose value is exactly the single child's value.
    fn is_passthrough(&self, rule: Rule) -> bool {
        let _ = rule;
        false
    }

    fn depth_bound(&self, root: &Self::State) -> usize;
}

/// Which computed values a [`MemoTable`] keeps after an evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Retention {
    /// Every state visited.
    #[default]
    All,
    /// Only the states passed to [`evaluate`]; intermediates are freed as soon
    /// as their last parent has consumed them.
    Roots,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MemoStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
}

/// Pure-function cache from states to values.
#[derive(Clone, Debug)]
pub struct MemoTable<K, V> {
    entries: HashMap<K, V>,
    retention: Retention,
    hits: u64,
    misses: u64,
}

impl<K: Eq + Hash, V> Default for MemoTable<K, V> {
    fn default() -> Self {
        Self::new(Retention::All)
    }
}

impl<K: Eq + Hash, V> MemoTable<K, V> {
    pub fn new(retention: Retention) -> Self {
        MemoTable { entries: HashMap::new(), retention, hits: 0, misses: 0 }
    }

    pub fn retention(&self) -> Retention {
        self.retention
    }

    pub fn get(&self, k: &K) -> Option<&V> {
        self.entries.get(k)
    }

    pub fn contains(&self, k: &K) -> bool {
        self.entries.contains_key(k)
    }

    /// Last write wins; entries are values of a pure function, so a
    /// duplicate insert never changes the table's meaning.
    pub fn insert(&mut self, k: K, v: V) {
        self.entries.insert(k, v);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &V)> {
        self.entries.iter()
    }

    pub fn stats(&self) -> MemoStats {
        MemoStats { hits: self.hits, misses: self.misses, entries: self.entries.len() }
    }

    pub fn clear(&mut self) {
        self.entries.clear();
    }

    /// Moves every entry of `other` into `self`, summing the counters.
    pub fn merge(&mut self, other: MemoTable<K, V>) {
        self.hits += other.hits;
        self.misses += other.misses;
        self.entries.extend(other.entries);
    }
}

struct Node<S, V> {
    /// Owned by the discovery index until discovery ends.
    state: Option<S>,
    rule: Rule,
    kids: [usize; 2],
    nkids: u8,
    /// Parent edges not yet consumed.
    pending: u32,
    value: Option<V>,
    from_memo: bool,
    done: bool,
}

/// Evaluates `root` with an explicit work stack, memoizing into `memo`.
///
/// The reachable graph is discovered depth-first, then values are computed
/// in post-order. Depth is bounded by [`Recurrence::depth_bound`].
pub fn evaluate<R: Recurrence>(
    rec: &R,
    root: &R::State,
    memo: &mut MemoTable<R::State, R::Value>,
) -> Result<R::Value> {
    if let Some(v) = memo.get(root).cloned() {
        memo.hits += 1;
        return Ok(v);
    }
    let bound = rec.depth_bound(root);

    let mut nodes: Vec<Node<R::State, R::Value>> = Vec::new();
    let mut index: HashMap<R::State, usize> = HashMap::new();
    let mut order: Vec<usize> = Vec::new();

    let new_node = |nodes: &mut Vec<Node<R::State, R::Value>>, value: Option<R::Value>| {
        let from_memo = value.is_some();
        nodes.push(Node { state: None, rule: Rule::R1, kids: [0; 2], nkids: 0, pending: 0, value, from_memo, done: from_memo });
        nodes.len() - 1
    };

    memo.misses += 1;
    let root_id = new_node(&mut nodes, None);
    index.insert(root.clone(), root_id);

    // Frames: (node, expanded children so far, children list).
    let mut stack: Vec<(usize, usize, Vec<R::State>)> = Vec::new();
    let step = rec.expand(root)?;
    nodes[root_id].rule = step.rule;
    stack.push((root_id, 0, step.children.iter().cloned().collect()));

    while let Some(frame) = stack.last_mut() {
        let (id, cursor) = (frame.0, frame.1);
        if cursor == frame.2.len() {
            order.push(id);
            nodes[id].done = true;
            stack.pop();
            continue;
        }
        frame.1 += 1;
        let child = frame.2[cursor].clone();
        let child_id = match index.entry(child) {
            Entry::Occupied(e) => {
                let cid = *e.get();
                if !nodes[cid].done {
                    return Err(Error::InvariantViolation("rule graph has a cycle".into()));
                }
                memo.hits += 1;
                cid
            }
            Entry::Vacant(e) => {
                if let Some(v) = memo.get(e.key()).cloned() {
                    memo.hits += 1;
                    let cid = new_node(&mut nodes, Some(v));
                    e.insert(cid);
                    cid
                } else {
                    memo.misses += 1;
                    let step = rec.expand(e.key())?;
                    let cid = new_node(&mut nodes, None);
                    e.insert(cid);
                    if stack.len() >= bound {
                        return Err(Error::DepthExceeded(bound));
                    }
                    nodes[cid].rule = step.rule;
                    stack.push((cid, 0, step.children.iter().cloned().collect()));
                    cid
                }
            }
        };
        let parent = &mut nodes[id];
        parent.kids[parent.nkids as usize] = child_id;
        parent.nkids += 1;
        nodes[child_id].pending += 1;
    }
    for (state, id) in index {
        nodes[id].state = Some(state);
    }

    for id in order {
        let (rule, nkids, kids) = (nodes[id].rule, nodes[id].nkids as usize, nodes[id].kids);
        let value = if rec.is_passthrough(rule) && nkids == 1 {
            let k = kids[0];
            if nodes[k].pending == 1 && memo.retention == Retention::Roots {
                nodes[k].pending = 0;
                nodes[k].value.take().expect("child evaluated")
            } else {
                nodes[k].value.clone().expect("child evaluated")
            }
        } else {
            let vals: Vec<&R::Value> = kids[..nkids].iter().map(|&k| nodes[k].value.as_ref().expect("child evaluated")).collect();
            rec.combine(nodes[id].state.as_ref().expect("state kept until combined"), rule, &vals)?
        };
        nodes[id].value = Some(value);
        if memo.retention == Retention::Roots {
            nodes[id].state = None;
        }
        for &k in &kids[..nkids] {
            let child = &mut nodes[k];
            if child.pending == 0 {
                continue;
            }
            child.pending -= 1;
            if child.pending == 0 {
                retire(child, memo);
            }
        }
    }

    let value = nodes[root_id].value.take().expect("root evaluated");
    memo.insert(root.clone(), value.clone());
    Ok(value)
}

fn retire<S: Eq + Hash + Clone, V>(node: &mut Node<S, V>, memo: &mut MemoTable<S, V>) {
    let Some(v) = node.value.take() else { return };
    if memo.retention == Retention::All && !node.from_memo {
        if let Some(s) = node.state.take() {
            memo.insert(s, v);
        }
    }
}
