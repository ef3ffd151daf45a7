//! Strongly connected components (Tarjan, iterative).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Partition of a node set into strongly connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccPartition<N> {
    components: Vec<BTreeSet<N>>,
    component_of: BTreeMap<N, usize>,
}

impl<N: Ord + Clone> SccPartition<N> {
    /// Components ordered by their least member.
    pub fn components(&self) -> &[BTreeSet<N>] {
        &self.components
    }

    pub fn component_of(&self, n: &N) -> Option<usize> {
        self.component_of.get(n).copied()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn same_component(&self, a: &N, b: &N) -> bool {
        matches!((self.component_of(a), self.component_of(b)), (Some(x), Some(y)) if x == y)
    }
}

/// Tarjan's algorithm over an index adjacency list. Components come out in
/// reverse topological order.
pub(crate) fn tarjan(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next = 0;
    // (node, position in its adjacency list)
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        frames.push((root, 0));
        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            if *pos == 0 && index[v] == UNSEEN {
                index[v] = next;
                low[v] = next;
                next += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                components.push(comp);
            }
        }
    }
    components
}

/// SCCs of the digraph `(nodes, edges)`. A node with no cycle through it is
/// its own singleton component.
pub fn strongly_connected_components<N>(
    nodes: &BTreeSet<N>,
    edges: &BTreeSet<(N, N)>,
) -> Result<SccPartition<N>>
where
    N: Ord + Clone + fmt::Display,
{
    let order: Vec<&N> = nodes.iter().collect();
    let position: BTreeMap<&N, usize> = order.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let mut adj = vec![Vec::new(); order.len()];
    for (a, b) in edges {
        let ia = *position.get(a).ok_or_else(|| Error::UnknownState(a.to_string()))?;
        let ib = *position.get(b).ok_or_else(|| Error::UnknownState(b.to_string()))?;
        adj[ia].push(ib);
    }
    let mut components: Vec<BTreeSet<N>> = tarjan(&adj)
        .into_iter()
        .map(|c| c.into_iter().map(|i| order[i].clone()).collect())
        .collect();
    components.sort_by(|a, b| a.first().cmp(&b.first()));
    let component_of = components
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |n| (n.clone(), i)))
        .collect();
    Ok(SccPartition { components, component_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;

    fn s(x: &str) -> String {
        String::from(x)
    }

    #[test]
    fn two_cycle_is_one_component() {
        let nodes = BTreeSet::from([s("(3,4)"), s("(5,4)")]);
        let edges = BTreeSet::from([(s("(3,4)"), s("(5,4)")), (s("(5,4)"), s("(3,4)"))]);
        let p = strongly_connected_components(&nodes, &edges).unwrap();
        assert_eq!(p.components(), core::slice::from_ref(&nodes));
    }

    #[test]
    fn isolated_nodes_are_singletons() {
        let nodes: BTreeSet<u32> = (0..5).collect();
        let p = strongly_connected_components(&nodes, &BTreeSet::new()).unwrap();
        assert_eq!(p.len(), 5);
        assert!(p.components().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn cycle_of_k() {
        let k = 7u32;
        let nodes: BTreeSet<u32> = (0..k).collect();
        let edges: BTreeSet<(u32, u32)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        let p = strongly_connected_components(&nodes, &edges).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.components()[0].len(), k as usize);
    }

    #[test]
    fn dangling_edge_is_an_error() {
        let nodes = BTreeSet::from([1u32]);
        let edges = BTreeSet::from([(1u32, 2u32)]);
        assert_eq!(
            strongly_connected_components(&nodes, &edges),
            Err(Error::UnknownState("2".into()))
        );
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        let n = 200_000usize;
        let adj: Vec<Vec<usize>> = (0..n).map(|i| if i + 1 < n { vec![i + 1] } else { vec![0] }).collect();
        let comps = tarjan(&adj);
        assert_eq!(comps.len(), 1);
    }
}
