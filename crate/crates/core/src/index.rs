//! Reducer lookup: which stored vectors `g` satisfy `g ⊑ s`?
//!
//! Vectors are kept in a trie keyed coordinate by coordinate on their
//! values. A query descends only into children whose value is zero or has the
//! sign of `s` at that coordinate with no larger magnitude, so every leaf
//! reached is a conforming vector. This generalizes bucketing by sign
//! pattern: the sign pattern of a leaf is the sequence of signs on its path.

use crate::vectors::IntVector;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Node {
    /// `(value, child)`, in insertion order.
    children: Vec<(i64, u32)>,
    /// Smallest insertion id in this subtree.
    min_id: u32,
    /// Leaf payload: insertion id of the vector ending here.
    id: u32,
}

impl Node {
    fn new(min_id: u32) -> Self {
        Node {
            children: Vec::new(),
            min_id,
            id: NONE,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReducerIndex {
    n: usize,
    nodes: Vec<Node>,
    vectors: Vec<IntVector>,
}

impl ReducerIndex {
    pub fn new(n: usize) -> Self {
        ReducerIndex {
            n,
            nodes: vec![Node::new(NONE)],
            vectors: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Stored vectors in insertion order.
    pub fn vectors(&self) -> &[IntVector] {
        &self.vectors
    }

    pub fn get(&self, id: usize) -> &IntVector {
        &self.vectors[id]
    }

    /// Inserts `v` and returns its id. Duplicates are the caller's concern:
    /// a second copy of a vector is ignored by lookups.
    pub fn insert(&mut self, v: IntVector) -> usize {
        debug_assert_eq!(v.len(), self.n);
        let id = self.vectors.len() as u32;
        let mut node = 0usize;
        if self.nodes[0].min_id == NONE {
            self.nodes[0].min_id = id;
        }
        for &x in v.entries() {
            let next = self.nodes[node]
                .children
                .iter()
                .find(|(val, _)| *val == x)
                .map(|&(_, c)| c as usize);
            node = match next {
                Some(c) => c,
                None => {
                    let c = self.nodes.len();
                    self.nodes.push(Node::new(id));
                    self.nodes[node].children.push((x, c as u32));
                    c
                }
            };
        }
        if self.nodes[node].id == NONE {
            self.nodes[node].id = id;
        }
        self.vectors.push(v);
        id as usize
    }

    /// Some stored `g` with `g ⊑ s`.
    pub fn find_any(&self, s: &[i64]) -> Option<usize> {
        self.search(s, false)
    }

    /// The earliest inserted `g` with `g ⊑ s`.
    pub fn find_first(&self, s: &[i64]) -> Option<usize> {
        self.search(s, true)
    }

    /// Like [`find_any`](Self::find_any) but skipping `s` itself.
    pub fn find_proper(&self, s: &[i64]) -> Option<usize> {
        let mut best = None;
        self.walk(s, &mut |id| {
            if self.vectors[id].entries() != s {
                best = Some(id);
                true
            } else {
                false
            }
        });
        best
    }

    fn search(&self, s: &[i64], first: bool) -> Option<usize> {
        if self.vectors.is_empty() {
            return None;
        }
        debug_assert_eq!(s.len(), self.n);
        let mut best = NONE;
        let mut stack: Vec<(u32, u32)> = vec![(0, 0)];
        while let Some((node, depth)) = stack.pop() {
            let nd = &self.nodes[node as usize];
            if nd.min_id >= best {
                continue;
            }
            if depth as usize == self.n {
                best = nd.id;
                if !first {
                    break;
                }
                continue;
            }
            let sj = s[depth as usize];
            // Reversed so the oldest subtree is explored first.
            for &(x, c) in nd.children.iter().rev() {
                if allowed(x, sj) {
                    stack.push((c, depth + 1));
                }
            }
        }
        (best != NONE).then_some(best as usize)
    }

    fn walk(&self, s: &[i64], visit: &mut dyn FnMut(usize) -> bool) {
        if self.vectors.is_empty() {
            return;
        }
        let mut stack: Vec<(u32, u32)> = vec![(0, 0)];
        while let Some((node, depth)) = stack.pop() {
            let nd = &self.nodes[node as usize];
            if depth as usize == self.n {
                if visit(nd.id as usize) {
                    return;
                }
                continue;
            }
            let sj = s[depth as usize];
            for &(x, c) in &nd.children {
                if allowed(x, sj) {
                    stack.push((c, depth + 1));
                }
            }
        }
    }
}

#[inline]
fn allowed(x: i64, s: i64) -> bool {
    x == 0 || (x > 0 && s >= x) || (x < 0 && s <= x)
}
