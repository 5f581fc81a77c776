//! Directed-cycle queries on side-information graphs.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::problem::SideInfoGraph;

/// A set of vertices that is pairwise bidirected in its host graph.
///
/// Members are stored ascending. Singletons are always cliques.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clique {
    members: Vec<usize>,
}

impl Clique {
    pub fn new<I: IntoIterator<Item = usize>>(g: &SideInfoGraph, members: I) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if members.is_empty() {
            return Err(Error::Structure("empty clique".into()));
        }
        let members: Vec<usize> = members.into_iter().collect();
        if let Some(&v) = members.iter().find(|&&v| v >= g.k()) {
            return Err(Error::Structure(format!(
                "clique member x{} not in graph",
                v + 1
            )));
        }
        for (n, &a) in members.iter().enumerate() {
            for &b in &members[n + 1..] {
                if !g.is_bidirected(a, b) {
                    return Err(Error::Structure(format!(
                        "x{} and x{} are not joined both ways",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        Ok(Clique { members })
    }

    pub fn singleton(v: usize) -> Self {
        Clique { members: vec![v] }
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Clique { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn smallest(&self) -> usize {
        self.members[0]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

/// A simple directed cycle `v_1 -> v_2 -> ... -> v_k -> v_1`, `k >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectedCycle {
    vertices: Vec<usize>,
}

impl DirectedCycle {
    pub fn new(g: &SideInfoGraph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Structure(
                "a cycle needs at least two vertices".into(),
            ));
        }
        let distinct: BTreeSet<usize> = vertices.iter().copied().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::Structure("cycle repeats a vertex".into()));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.k()) {
            return Err(Error::Structure(format!(
                "cycle vertex x{} not in graph",
                v + 1
            )));
        }
        for (n, &a) in vertices.iter().enumerate() {
            let b = vertices[(n + 1) % vertices.len()];
            if !g.has_edge(a, b) {
                return Err(Error::Structure(format!(
                    "no edge x{} -> x{} for cycle",
                    a + 1,
                    b + 1
                )));
            }
        }
        Ok(DirectedCycle { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The same cycle rotated to start at its smallest vertex.
    pub fn canonical(&self) -> DirectedCycle {
        let start = self
            .vertices
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| v)
            .map(|(i, _)| i)
            .unwrap_or(0);
        let mut vertices = self.vertices.clone();
        vertices.rotate_left(start);
        DirectedCycle { vertices }
    }
}

/// Vertex-disjoint cycles plus the vertices left over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCover {
    pub cycles: Vec<DirectedCycle>,
    pub uncovered: Vec<usize>,
}

impl CycleCover {
    /// Symbols needed by the cover: `|cycle| - 1` per cycle, one per leftover.
    pub fn cost(&self) -> usize {
        self.cycles.iter().map(|c| c.len() - 1).sum::<usize>() + self.uncovered.len()
    }
}

/// Strongly connected components of the subgraph induced by `active`.
///
/// Returns the component id of every active vertex (`usize::MAX` for
/// inactive ones) and the size of each component.
pub(crate) fn strong_components(g: &SideInfoGraph, active: &[bool]) -> (Vec<usize>, Vec<usize>) {
    const UNSEEN: usize = usize::MAX;
    let k = g.k();
    let mut index = vec![UNSEEN; k];
    let mut low = vec![0; k];
    let mut on_stack = vec![false; k];
    let mut comp = vec![UNSEEN; k];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    let mut counter = 0;

    for root in 0..k {
        if !active[root] || index[root] != UNSEEN {
            continue;
        }
        // iterative Tarjan: frames hold (vertex, successors not yet explored)
        let mut frames: Vec<(usize, Vec<usize>)> = Vec::new();
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, g.out_neighbors(root).iter().rev().copied().collect()));

        while let Some((v, pending)) = frames.last_mut() {
            let v = *v;
            if let Some(w) = pending.pop() {
                if !active[w] {
                    continue;
                }
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, g.out_neighbors(w).iter().rev().copied().collect()));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some((parent, _)) = frames.last() {
                low[*parent] = low[*parent].min(low[v]);
            }
            if low[v] == index[v] {
                let id = sizes.len();
                let mut size = 0;
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = id;
                    size += 1;
                    if w == v {
                        break;
                    }
                }
                sizes.push(size);
            }
        }
    }
    (comp, sizes)
}

/// Vertices of `restrict` lying on a directed cycle of the subgraph it induces.
pub fn on_some_cycle(g: &SideInfoGraph, restrict: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut active = vec![false; g.k()];
    for &v in restrict {
        active[v] = true;
    }
    on_cycle_mask(g, &active)
        .into_iter()
        .enumerate()
        .filter(|(_, on)| *on)
        .map(|(v, _)| v)
        .collect()
}

/// Per-vertex cycle membership within the active subgraph. Without self-loops
/// a vertex is on a cycle iff its strong component has two or more vertices.
pub(crate) fn on_cycle_mask(g: &SideInfoGraph, active: &[bool]) -> Vec<bool> {
    let (comp, sizes) = strong_components(g, active);
    (0..g.k())
        .map(|v| active[v] && sizes[comp[v]] >= 2)
        .collect()
}

/// Tests whether two disjoint cliques are cycle-free: some `a` in `ci` and
/// `b` in `cj` such that neither lies on a cycle of the subgraph induced by
/// the rest of the graph together with `{a, b}`.
///
/// Returns the lexicographically first witness `(a, b)`.
pub fn cycle_free_pair(
    g: &SideInfoGraph,
    ci: &Clique,
    cj: &Clique,
) -> Result<Option<(usize, usize)>> {
    if ci.members().iter().any(|&v| cj.contains(v)) {
        return Err(Error::Argument("cliques overlap".into()));
    }
    let mut rest = vec![true; g.k()];
    for &v in ci.members().iter().chain(cj.members()) {
        rest[v] = false;
    }
    for &a in ci.members() {
        let mut alone = rest.clone();
        alone[a] = true;
        if on_cycle_mask(g, &alone)[a] {
            continue;
        }
        for &b in cj.members() {
            let mut active = alone.clone();
            active[b] = true;
            let on = on_cycle_mask(g, &active);
            if !on[a] && !on[b] {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// Shortest cycle through `start` using only `alive` vertices, found by BFS.
fn shortest_cycle_through(g: &SideInfoGraph, alive: &[bool], start: usize) -> Option<Vec<usize>> {
    let k = g.k();
    let mut parent = vec![usize::MAX; k];
    let mut seen = vec![false; k];
    let mut queue = VecDeque::new();
    seen[start] = true;
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        for &w in g.out_neighbors(u) {
            if !alive[w] {
                continue;
            }
            if w == start {
                let mut path = vec![u];
                let mut cur = u;
                while cur != start {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Greedy vertex-disjoint cycle cover: repeatedly remove a shortest cycle
/// (lowest start vertex on ties) until the remaining graph is acyclic.
pub fn greedy_cycle_cover(g: &SideInfoGraph) -> CycleCover {
    let k = g.k();
    let mut alive = vec![true; k];
    let mut cycles = Vec::new();
    loop {
        let best = (0..k)
            .filter(|&v| alive[v])
            .filter_map(|v| shortest_cycle_through(g, &alive, v))
            .min_by_key(|c| c.len());
        let Some(cycle) = best else { break };
        for &v in &cycle {
            alive[v] = false;
        }
        cycles.push(DirectedCycle { vertices: cycle });
    }
    CycleCover {
        cycles,
        uncovered: (0..k).filter(|&v| alive[v]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(k: usize) -> BTreeSet<usize> {
        (0..k).collect()
    }

    #[test]
    fn acyclic_chain_has_no_cycle_vertices() {
        let g = SideInfoGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(on_some_cycle(&g, &all(3)).is_empty());
    }

    #[test]
    fn restriction_breaks_cycles() {
        let g = SideInfoGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(on_some_cycle(&g, &all(3)), all(3));
        assert!(on_some_cycle(&g, &BTreeSet::from([0, 1])).is_empty());
    }

    #[test]
    fn clique_validation() {
        let g = SideInfoGraph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert!(Clique::new(&g, [0, 1]).is_ok());
        assert!(Clique::new(&g, [1, 2]).is_err());
        assert!(Clique::new(&g, [2]).is_ok());
        assert!(Clique::new(&g, []).is_err());
    }

    #[test]
    fn overlapping_cliques_rejected() {
        let g = SideInfoGraph::from_edges(3, [(0, 1), (1, 0)]).unwrap();
        let a = Clique::new(&g, [0, 1]).unwrap();
        assert!(matches!(
            cycle_free_pair(&g, &a, &Clique::singleton(1)),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn cycle_cover_simple_cases() {
        let g = SideInfoGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c = greedy_cycle_cover(&g);
        assert_eq!(c.cycles.len(), 1);
        assert_eq!(c.cycles[0].vertices(), &[0, 1, 2, 3]);
        assert!(c.uncovered.is_empty());
        assert_eq!(c.cost(), 3);

        let dag = SideInfoGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let c = greedy_cycle_cover(&dag);
        assert!(c.cycles.is_empty());
        assert_eq!(c.uncovered, vec![0, 1, 2]);
    }

    #[test]
    fn shortest_cycle_taken_first() {
        // a 2-cycle on {2,3} and a 4-cycle through everything
        let g = SideInfoGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 2)]).unwrap();
        let c = greedy_cycle_cover(&g);
        assert_eq!(c.cycles[0].vertices(), &[2, 3]);
        assert_eq!(c.uncovered, vec![0, 1]);
    }

    #[test]
    fn directed_cycle_validation() {
        let g = SideInfoGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(DirectedCycle::new(&g, vec![1, 2, 0]).is_ok());
        assert!(DirectedCycle::new(&g, vec![0, 2, 1]).is_err());
        assert!(DirectedCycle::new(&g, vec![0]).is_err());
        let c = DirectedCycle::new(&g, vec![2, 0, 1]).unwrap();
        assert_eq!(c.canonical().vertices(), &[0, 1, 2]);
    }
}
