//! Exact minrank over GF(2), the maximum-acyclic-induced-subgraph bound and
//! the reduction pipeline (stripping acyclic vertices, deleting edges between
//! cycle-free cliques, merging cliques into super-vertices).

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::cover::{algorithm1_cover, cover_code_length, CliqueCover};
use crate::cycles::{cycle_free_pair, on_cycle_mask, strong_components, Clique};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::problem::SideInfoGraph;

/// Size limits for the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest number of free fitting-matrix cells searched in one component.
    pub free_cell_budget: usize,
    /// Largest strongly connected component searched for the acyclic bound.
    pub mais_limit: usize,
    /// Largest message count for the exhaustive partition search.
    pub partition_limit: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            free_cell_budget: 24,
            mais_limit: 20,
            partition_limit: 12,
        }
    }
}

/// One recorded reduction step. Displays 1-based, e.g. `strip 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuditEntry {
    Strip(usize),
    Split(Vec<usize>),
    T2Delete {
        from: usize,
        to: usize,
        first: Vec<usize>,
        second: Vec<usize>,
    },
    Merge {
        name: String,
        members: Vec<usize>,
    },
}

fn join_1based(vs: &[usize]) -> String {
    vs.iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl AuditEntry {
    /// The same entry with every vertex renamed by `f`.
    pub fn map_vertices(&self, f: impl Fn(usize) -> usize) -> AuditEntry {
        let all = |vs: &[usize]| vs.iter().map(|&v| f(v)).collect::<Vec<_>>();
        match self {
            AuditEntry::Strip(v) => AuditEntry::Strip(f(*v)),
            AuditEntry::Split(vs) => AuditEntry::Split(all(vs)),
            AuditEntry::T2Delete {
                from,
                to,
                first,
                second,
            } => AuditEntry::T2Delete {
                from: f(*from),
                to: f(*to),
                first: all(first),
                second: all(second),
            },
            AuditEntry::Merge { name, members } => {
                let members = all(members);
                let prefix = &name[..1];
                AuditEntry::Merge {
                    name: format!("{prefix}{}", members.iter().min().map_or(0, |m| m + 1)),
                    members,
                }
            }
        }
    }
}

impl fmt::Display for AuditEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditEntry::Strip(v) => write!(f, "strip {}", v + 1),
            AuditEntry::Split(vs) => write!(f, "split {}", join_1based(vs)),
            AuditEntry::T2Delete {
                from,
                to,
                first,
                second,
            } => write!(
                f,
                "t2-delete {} {} (cliques {}|{})",
                from + 1,
                to + 1,
                join_1based(first),
                join_1based(second)
            ),
            AuditEntry::Merge { name, members } => {
                write!(f, "merge {} := {}", name, join_1based(members))
            }
        }
    }
}

/// Exact minrank together with a certificate and the bounds seen on the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinrankResult {
    pub value: usize,
    /// A fitting matrix of rank `value`.
    pub certificate: Gf2Matrix,
    /// `None` when a component was too large for the exhaustive bound.
    pub mais_lower: Option<usize>,
    pub cover_upper: usize,
    pub reductions: Vec<AuditEntry>,
}

fn mask_to_vector(k: usize, mask: u64) -> Gf2Vector {
    Gf2Vector::from_indices(k, (0..k).filter(|&j| mask >> j & 1 == 1))
}

fn masks_to_matrix(k: usize, rows: &[u64]) -> Gf2Matrix {
    Gf2Matrix::from_rows(k, rows.iter().map(|&m| mask_to_vector(k, m)).collect())
        .expect("rows have length k")
}

fn check_word_size(k: usize) -> Result<()> {
    if k > 64 {
        return Err(Error::Resource {
            what: "component size",
            size: k,
            limit: 64,
            hint: "exact search works on components of at most 64 vertices",
        });
    }
    Ok(())
}

/// Strongly connected components as sorted vertex lists, ordered by
/// smallest vertex.
pub(crate) fn strong_component_lists(g: &SideInfoGraph) -> Vec<Vec<usize>> {
    let (comp, sizes) = strong_components(g, &vec![true; g.k()]);
    let mut lists = vec![Vec::new(); sizes.len()];
    for v in 0..g.k() {
        lists[comp[v]].push(v);
    }
    lists.sort_by_key(|l| l[0]);
    lists
}

/// True iff the subgraph induced by `subset` (bit mask) has no cycle.
fn acyclic_mask(succ: &[u64], subset: u64) -> bool {
    let mut left = subset;
    // peel sinks until nothing is left or no sink exists
    loop {
        if left == 0 {
            return true;
        }
        let mut peeled = false;
        let mut rest = left;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if succ[v] & left == 0 {
                left &= !(1 << v);
                peeled = true;
            }
        }
        if !peeled {
            return false;
        }
    }
}

fn mais_component(g: &SideInfoGraph) -> usize {
    let n = g.k();
    let succ = g.masks();
    debug_assert!(n < 64);
    for size in (1..=n).rev() {
        // Gosper's hack over all subsets of this size
        let mut s: u64 = (1 << size) - 1;
        while s < 1 << n {
            if acyclic_mask(&succ, s) {
                return size;
            }
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    0
}

/// Size of a largest vertex set inducing an acyclic subgraph.
///
/// Computed per strongly connected component, since every cycle lies inside
/// one. Components above `cfg.mais_limit` vertices are refused.
pub fn mais(g: &SideInfoGraph, cfg: &SolverConfig) -> Result<usize> {
    let mut total = 0;
    for comp in strong_component_lists(g) {
        if comp.len() == 1 {
            total += 1;
            continue;
        }
        if comp.len() > cfg.mais_limit.min(63) {
            return Err(Error::Resource {
                what: "strongly connected component size",
                size: comp.len(),
                limit: cfg.mais_limit.min(63),
                hint: "raise --mais-limit",
            });
        }
        total += mais_component(&g.induced(&comp));
    }
    Ok(total)
}

/// Result of [`strip_acyclic`]: the graph induced on the surviving vertices
/// (reindexed in ascending order) and the removed vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stripped {
    pub graph: SideInfoGraph,
    pub kept: Vec<usize>,
    pub stripped: Vec<usize>,
}

impl Stripped {
    pub fn count(&self) -> usize {
        self.stripped.len()
    }
}

/// Removes every vertex lying on no directed cycle, repeating until none is
/// left. Each removed vertex adds exactly one to the minrank.
pub fn strip_acyclic(g: &SideInfoGraph) -> Stripped {
    let mut active = vec![true; g.k()];
    loop {
        let on = on_cycle_mask(g, &active);
        let mut changed = false;
        for v in 0..g.k() {
            if active[v] && !on[v] {
                active[v] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let kept: Vec<usize> = (0..g.k()).filter(|&v| active[v]).collect();
    let stripped = (0..g.k()).filter(|&v| !active[v]).collect();
    Stripped {
        graph: g.induced(&kept),
        kept,
        stripped,
    }
}

/// Canonical reduced row echelon form of a subspace of GF(2)^n, n <= 64:
/// rows sorted descending, each leading bit cleared from every other row.
fn rref_reduce(basis: &[u64], mut v: u64) -> u64 {
    for &b in basis {
        let lead = 63 - b.leading_zeros();
        if v >> lead & 1 == 1 {
            v ^= b;
        }
    }
    v
}

fn rref_insert(basis: &[u64], v: u64) -> Option<Vec<u64>> {
    let v = rref_reduce(basis, v);
    if v == 0 {
        return None;
    }
    let lead = 63 - v.leading_zeros();
    let mut out: Vec<u64> = basis
        .iter()
        .map(|&b| if b >> lead & 1 == 1 { b ^ v } else { b })
        .collect();
    out.push(v);
    out.sort_unstable_by(|a, b| b.cmp(a));
    Some(out)
}

/// Search over row spans: rows are chosen in order, row `i` from the coset
/// `e_i + span{e_j : j in N(i)}`. When the coset meets the current span the
/// row is taken inside it, since a smaller span never yields a larger final
/// rank. Otherwise every distinct extension of the span is tried.
struct SpanSearch {
    n: usize,
    succ: Vec<u64>,
    memo: HashMap<(usize, Vec<u64>), usize>,
}

impl SpanSearch {
    fn new(succ: Vec<u64>) -> Self {
        SpanSearch {
            n: succ.len(),
            succ,
            memo: HashMap::new(),
        }
    }

    /// Either `Ok(())` (row stays inside the span) or the distinct extended spans.
    fn moves(&self, i: usize, span: &[u64]) -> std::result::Result<(), Vec<Vec<u64>>> {
        let unit = 1u64 << i;
        let mut extended = span.to_vec();
        let mut free = Vec::new();
        let mut rest = self.succ[i];
        while rest != 0 {
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            if let Some(next) = rref_insert(&extended, 1 << j) {
                extended = next;
                free.push(1u64 << j);
            }
        }
        if rref_reduce(&extended, unit) == 0 {
            return Ok(());
        }
        let children = (0..1u64 << free.len())
            .map(|pick| {
                let v = free
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| pick >> b & 1 == 1)
                    .fold(unit, |acc, (_, &e)| acc ^ e);
                rref_insert(span, v).expect("row outside span")
            })
            .collect();
        Err(children)
    }

    fn solve(&mut self, i: usize, span: Vec<u64>) -> usize {
        if i == self.n {
            return span.len();
        }
        let key = (i, span);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let (i, span) = key;
        let value = match self.moves(i, &span) {
            Ok(()) => self.solve(i + 1, span.clone()),
            Err(children) => {
                let floor = span.len() + 1;
                let mut best = usize::MAX;
                for child in children {
                    best = best.min(self.solve(i + 1, child));
                    if best == floor {
                        break;
                    }
                }
                best
            }
        };
        self.memo.insert((i, span), value);
        value
    }

    /// Minimum rank and the row masks of a fitting matrix achieving it.
    fn run(mut self) -> (usize, Vec<u64>) {
        let value = self.solve(0, Vec::new());
        let mut span = Vec::new();
        for i in 0..self.n {
            if let Err(children) = self.moves(i, &span) {
                span = children
                    .into_iter()
                    .find(|c| self.solve(i + 1, c.clone()) == value)
                    .expect("an optimal child exists");
            }
        }
        let rows = (0..self.n)
            .map(|i| row_in_span(&span, i, self.succ[i]))
            .collect();
        (value, rows)
    }
}

/// Finds `w` supported on `nbrs` with `e_i + w` in the span; returns `e_i + w`.
fn row_in_span(span: &[u64], i: usize, nbrs: u64) -> u64 {
    // echelon rows carry a tag recording which neighbour units were used
    let mut rows: Vec<(u64, u64)> = Vec::new();
    let insert = |rows: &mut Vec<(u64, u64)>, mut v: u64, mut tag: u64| {
        for &(b, t) in rows.iter() {
            if v & (1 << b.trailing_zeros()) != 0 {
                v ^= b;
                tag ^= t;
            }
        }
        if v != 0 {
            rows.push((v, tag));
        }
        (v, tag)
    };
    for &b in span {
        insert(&mut rows, b, 0);
    }
    let mut rest = nbrs;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        insert(&mut rows, 1 << j, 1 << j);
    }
    let mut v = 1u64 << i;
    let mut tag = 0;
    for &(b, t) in &rows {
        if v & (1 << b.trailing_zeros()) != 0 {
            v ^= b;
            tag ^= t;
        }
    }
    debug_assert_eq!(v, 0, "row must be reachable");
    (1u64 << i) | tag
}

fn clique_certificate(k: usize, cover: &CliqueCover) -> Vec<u64> {
    let mut rows = vec![0u64; k];
    for c in cover.cliques() {
        let mask = c.members().iter().fold(0u64, |m, &v| m | 1 << v);
        for &v in c.members() {
            rows[v] = mask;
        }
    }
    rows
}

/// Exact minrank.
///
/// Acyclic vertices are stripped and the rest is split into strongly
/// connected components (minrank is additive over them, as the fitting matrix
/// is block triangular). Each component is solved by [`SpanSearch`] unless
/// its acyclic bound already meets its clique cover. Components with more
/// than `cfg.free_cell_budget` edges are refused.
pub fn minrank_exact(g: &SideInfoGraph, cfg: &SolverConfig) -> Result<MinrankResult> {
    let k = g.k();
    let cover_upper = cover_code_length(&algorithm1_cover(g));
    let stripped = strip_acyclic(g);
    let mut reductions: Vec<AuditEntry> = stripped
        .stripped
        .iter()
        .map(|&v| AuditEntry::Strip(v))
        .collect();

    let mut certificate = Gf2Matrix::identity(k);
    let mut value = stripped.count();
    let mut mais_lower = Some(stripped.count());

    let comps: Vec<Vec<usize>> = strong_component_lists(&stripped.graph)
        .into_iter()
        .map(|c| c.into_iter().map(|v| stripped.kept[v]).collect())
        .collect();
    if comps.len() > 1 {
        reductions.extend(comps.iter().cloned().map(AuditEntry::Split));
    }
    for comp in &comps {
        check_word_size(comp.len())?;
        let free = g.induced(comp).edge_count();
        if free > cfg.free_cell_budget {
            // cheap bounds may still settle the component
            let sub = g.induced(comp);
            let lower = (comp.len() <= cfg.mais_limit.min(63)).then(|| mais_component(&sub));
            let cover = algorithm1_cover(&sub);
            if lower != Some(cover.t()) {
                return Err(Error::Resource {
                    what: "free-cell count",
                    size: free,
                    limit: cfg.free_cell_budget,
                    hint: "reduce the instance first or raise --budget",
                });
            }
        }
    }

    for comp in &comps {
        let sub = g.induced(comp);
        let lower = (comp.len() <= cfg.mais_limit.min(63)).then(|| mais_component(&sub));
        mais_lower = mais_lower.zip(lower).map(|(a, b)| a + b);
        let cover = algorithm1_cover(&sub);
        let (v, rows) = if lower == Some(cover.t()) {
            (cover.t(), clique_certificate(comp.len(), &cover))
        } else {
            SpanSearch::new(sub.masks()).run()
        };
        value += v;
        for (local, &row) in rows.iter().enumerate() {
            let r = comp[local];
            for (lj, &c) in comp.iter().enumerate() {
                certificate.set(r, c, row >> lj & 1 == 1);
            }
        }
    }

    Ok(MinrankResult {
        value,
        certificate,
        mais_lower,
        cover_upper,
        reductions,
    })
}

/// Brute-force minrank: every assignment of the free cells (row-major, read
/// as a binary counter with the first cell most significant) is ranked in
/// parallel. Returns the minimum rank and the certificate with the smallest
/// counter among the minimizers. Intended as a test oracle.
pub fn minrank_enumerate(g: &SideInfoGraph, budget: usize) -> Result<(usize, Gf2Matrix)> {
    let k = g.k();
    check_word_size(k)?;
    let free = g.fitting_pattern().free_cells();
    let f = free.len();
    if f > budget || f >= 63 {
        return Err(Error::Resource {
            what: "free-cell count",
            size: f,
            limit: budget.min(62),
            hint: "raise --budget",
        });
    }
    let rows_for = |counter: u64| -> Vec<u64> {
        let mut rows: Vec<u64> = (0..k).map(|i| 1u64 << i).collect();
        for (t, &(i, j)) in free.iter().enumerate() {
            if counter >> (f - 1 - t) & 1 == 1 {
                rows[i] |= 1 << j;
            }
        }
        rows
    };
    let (rank, counter) = (0..1u64 << f)
        .into_par_iter()
        .map(|c| (mask_rank(rows_for(c)), c))
        .min()
        .expect("at least one assignment");
    Ok((rank, masks_to_matrix(k, &rows_for(counter))))
}

fn mask_rank(rows: Vec<u64>) -> usize {
    let mut by_top = [0u64; 64];
    let mut rank = 0;
    for mut v in rows {
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if by_top[top] == 0 {
                by_top[top] = v;
                rank += 1;
                break;
            }
            v ^= by_top[top];
        }
    }
    rank
}

/// Deletes every edge between clique pairs found cycle-free, testing pairs
/// in lexicographic order against the progressively pruned graph.
pub fn theorem2_reduce(g: &SideInfoGraph, cover: &CliqueCover) -> Result<SideInfoGraph> {
    Ok(theorem2_reduce_logged(g, cover)?.0)
}

/// As [`theorem2_reduce`], also returning one audit entry per deleted edge.
pub fn theorem2_reduce_logged(
    g: &SideInfoGraph,
    cover: &CliqueCover,
) -> Result<(SideInfoGraph, Vec<AuditEntry>)> {
    let cover = CliqueCover::new(g, cover.cliques().to_vec())?;
    let mut h = g.clone();
    let mut log = Vec::new();
    let cliques = cover.cliques();
    for (a, ca) in cliques.iter().enumerate() {
        for cb in &cliques[a + 1..] {
            if cycle_free_pair(&h, ca, cb)?.is_none() {
                continue;
            }
            for &u in ca.members() {
                for &v in cb.members() {
                    for (from, to) in [(u, v), (v, u)] {
                        if h.remove_edge(from, to) {
                            log.push(AuditEntry::T2Delete {
                                from,
                                to,
                                first: ca.members().to_vec(),
                                second: cb.members().to_vec(),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok((h, log))
}

/// A graph on super-vertices, each standing for a clique of the source graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGraph {
    pub graph: SideInfoGraph,
    /// Clique of source vertices behind each super-vertex.
    pub origin: Vec<Clique>,
}

impl ReducedGraph {
    /// Number of source vertices.
    pub fn source_k(&self) -> usize {
        self.origin.iter().map(Clique::len).sum()
    }

    /// `y<m>` for merged cliques (m the smallest member, 1-based), `x<v>` otherwise.
    pub fn name(&self, i: usize) -> String {
        let c = &self.origin[i];
        if c.len() >= 2 {
            format!("y{}", c.smallest() + 1)
        } else {
            format!("x{}", c.smallest() + 1)
        }
    }
}

/// Merges each clique into one super-vertex; `y_i -> y_j` exactly when every
/// edge from `C_i` to `C_j` is present.
pub fn construction1_reduce(g: &SideInfoGraph, cover: &CliqueCover) -> Result<ReducedGraph> {
    let cover = CliqueCover::new(g, cover.cliques().to_vec())?;
    let cliques = cover.cliques();
    let mut r = SideInfoGraph::new(cliques.len());
    for (a, ca) in cliques.iter().enumerate() {
        for (b, cb) in cliques.iter().enumerate() {
            if a != b
                && ca
                    .members()
                    .iter()
                    .all(|&u| cb.members().iter().all(|&v| g.has_edge(u, v)))
            {
                r.add_edge(a, b)?;
            }
        }
    }
    Ok(ReducedGraph {
        graph: r,
        origin: cliques.to_vec(),
    })
}

/// Output of [`reduce_pipeline`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub reduced: ReducedGraph,
    pub audit: Vec<AuditEntry>,
    pub stripped: Vec<usize>,
    /// True when no edge between distinct cliques survived edge deletion, in
    /// which case the reduced graph has the same minrank as the source.
    pub exact: bool,
}

/// Strip, split into weak components, cover each with [`algorithm1_cover`],
/// delete edges between cycle-free cliques and merge cliques.
///
/// Stripped vertices appear as isolated singleton super-vertices, so the
/// origins partition the source vertex set and the reduced minrank is an
/// upper bound on the source minrank.
pub fn reduce_pipeline(g: &SideInfoGraph) -> Result<Reduction> {
    let stripped = strip_acyclic(g);
    let mut audit: Vec<AuditEntry> = stripped
        .stripped
        .iter()
        .map(|&v| AuditEntry::Strip(v))
        .collect();

    let comps: Vec<Vec<usize>> = stripped
        .graph
        .weak_components()
        .into_iter()
        .map(|c| c.into_iter().map(|v| stripped.kept[v]).collect())
        .collect();
    if comps.len() > 1 {
        audit.extend(comps.iter().cloned().map(AuditEntry::Split));
    }

    let mut origin: Vec<Clique> = stripped
        .stripped
        .iter()
        .map(|&v| Clique::singleton(v))
        .collect();
    let mut super_edges: Vec<(usize, usize)> = Vec::new(); // by smallest source member
    let mut exact = true;
    for comp in &comps {
        let sub = g.induced(comp);
        let cover = algorithm1_cover(&sub);
        let (pruned, deletions) = theorem2_reduce_logged(&sub, &cover)?;
        audit.extend(deletions.iter().map(|e| e.map_vertices(|v| comp[v])));
        let leftover = pruned
            .edges()
            .any(|(u, v)| cover.clique_of(u) != cover.clique_of(v));
        exact &= !leftover;

        let local = construction1_reduce(&pruned, &cover)?;
        let lift = |c: &Clique| {
            Clique::from_sorted_unchecked(c.members().iter().map(|&v| comp[v]).collect())
        };
        for (a, b) in local.graph.edges() {
            super_edges.push((
                comp[local.origin[a].smallest()],
                comp[local.origin[b].smallest()],
            ));
        }
        origin.extend(local.origin.iter().map(lift));
    }

    origin.sort_by_key(Clique::smallest);
    let position = |v: usize| {
        origin
            .iter()
            .position(|c| c.smallest() == v)
            .expect("known super-vertex")
    };
    let mut graph = SideInfoGraph::new(origin.len());
    for (u, v) in super_edges {
        graph.add_edge(position(u), position(v))?;
    }
    let reduced = ReducedGraph { graph, origin };
    for i in 0..reduced.origin.len() {
        if reduced.origin[i].len() >= 2 {
            audit.push(AuditEntry::Merge {
                name: reduced.name(i),
                members: reduced.origin[i].members().to_vec(),
            });
        }
    }
    Ok(Reduction {
        reduced,
        audit,
        stripped: stripped.stripped,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn complete(k: usize) -> SideInfoGraph {
        let edges = (0..k).flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)));
        SideInfoGraph::from_edges(k, edges).unwrap()
    }

    fn cycle(k: usize) -> SideInfoGraph {
        SideInfoGraph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k))).unwrap()
    }

    fn seven_vertex() -> SideInfoGraph {
        SideInfoGraph::from_edges_1based(
            7,
            [
                (1, 2),
                (1, 3),
                (1, 5),
                (2, 4),
                (3, 7),
                (4, 1),
                (5, 3),
                (5, 4),
                (5, 6),
                (6, 7),
                (7, 6),
            ],
        )
        .unwrap()
    }

    fn check(g: &SideInfoGraph, r: &MinrankResult) {
        assert_eq!(r.certificate.rank(), r.value);
        assert!(g.fitting_pattern().fits(&r.certificate));
    }

    #[test]
    fn mais_small_cases() {
        assert_eq!(
            mais(
                &SideInfoGraph::from_edges(6, [(0, 1), (1, 2)]).unwrap(),
                &cfg()
            )
            .unwrap(),
            6
        );
        assert_eq!(mais(&complete(5), &cfg()).unwrap(), 1);
        assert_eq!(mais(&cycle(5), &cfg()).unwrap(), 4);
        let tight = SolverConfig {
            mais_limit: 3,
            ..cfg()
        };
        assert!(matches!(
            mais(&cycle(5), &tight),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn minrank_trivial_cases() {
        let r = minrank_exact(&complete(4), &cfg()).unwrap();
        assert_eq!(r.value, 1);
        check(&complete(4), &r);
        let empty = SideInfoGraph::new(4);
        let r = minrank_exact(&empty, &cfg()).unwrap();
        assert_eq!(r.value, 4);
        check(&empty, &r);
        // a directed k-cycle needs k - 1
        let r = minrank_exact(&cycle(6), &cfg()).unwrap();
        assert_eq!(r.value, 5);
        check(&cycle(6), &r);
    }

    #[test]
    fn seven_vertex_example() {
        let g = seven_vertex();
        let s = strip_acyclic(&g);
        assert_eq!(s.stripped, vec![2]);
        let r = minrank_exact(&g, &cfg()).unwrap();
        assert_eq!(r.value, 5);
        check(&g, &r);
        assert_eq!(minrank_exact(&s.graph, &cfg()).unwrap().value, 4);
        assert_eq!(minrank_enumerate(&g, 24).unwrap().0, 5);
    }

    #[test]
    fn strip_trivial_cases() {
        let dag = SideInfoGraph::from_edges(4, [(0, 1), (1, 2), (0, 3)]).unwrap();
        let s = strip_acyclic(&dag);
        assert_eq!(s.count(), 4);
        assert_eq!(s.graph.k(), 0);
        assert_eq!(strip_acyclic(&cycle(4)).count(), 0);
    }

    #[test]
    fn enumerate_agrees_on_small_graphs() {
        for g in [complete(3), cycle(4), seven_vertex()] {
            let (v, cert) = minrank_enumerate(&g, 24).unwrap();
            assert_eq!(v, minrank_exact(&g, &cfg()).unwrap().value);
            assert_eq!(cert.rank(), v);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let tight = SolverConfig {
            free_cell_budget: 3,
            ..cfg()
        };
        assert!(matches!(
            minrank_exact(&cycle(5), &tight),
            Err(Error::Resource {
                what: "free-cell count",
                ..
            })
        ));
        // settled by bounds alone
        assert_eq!(minrank_exact(&complete(4), &tight).unwrap().value, 1);
        assert!(minrank_enumerate(&cycle(5), 3).is_err());
    }

    #[test]
    fn construction1_cases() {
        let g = SideInfoGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let r = construction1_reduce(&g, &CliqueCover::singletons(3)).unwrap();
        assert_eq!(r.graph, g);

        let g = complete(4);
        let cover = CliqueCover::new(
            &g,
            vec![
                Clique::new(&g, [0, 1]).unwrap(),
                Clique::new(&g, [2, 3]).unwrap(),
            ],
        )
        .unwrap();
        let r = construction1_reduce(&g, &cover).unwrap();
        assert_eq!(r.graph, complete(2));
        assert_eq!(r.name(0), "y1");
        assert_eq!(r.name(1), "y3");
    }

    #[test]
    fn theorem2_no_edges_between_cliques() {
        let mut g = SideInfoGraph::new(4);
        for (i, j) in [(0, 1), (2, 3)] {
            g.add_edge(i, j).unwrap();
            g.add_edge(j, i).unwrap();
        }
        let cover = algorithm1_cover(&g);
        assert_eq!(theorem2_reduce(&g, &cover).unwrap(), g);
        assert!(theorem2_reduce(&g, &CliqueCover::singletons(3)).is_err());
    }

    #[test]
    fn pipeline_on_edgeless_graph() {
        let r = reduce_pipeline(&SideInfoGraph::new(4)).unwrap();
        assert_eq!(r.reduced.origin.len(), 4);
        assert_eq!(r.reduced.graph.edge_count(), 0);
        assert!(r.exact);
        assert_eq!(
            r.audit.iter().map(ToString::to_string).collect::<Vec<_>>(),
            vec!["strip 1", "strip 2", "strip 3", "strip 4"]
        );
    }

    #[test]
    fn audit_lines() {
        assert_eq!(AuditEntry::Strip(2).to_string(), "strip 3");
        assert_eq!(AuditEntry::Split(vec![0, 1, 3]).to_string(), "split 1 2 4");
        assert_eq!(
            AuditEntry::T2Delete {
                from: 0,
                to: 3,
                first: vec![0, 1, 2],
                second: vec![3, 4]
            }
            .to_string(),
            "t2-delete 1 4 (cliques 1 2 3|4 5)"
        );
        assert_eq!(
            AuditEntry::Merge {
                name: "y1".into(),
                members: vec![0, 1, 2]
            }
            .to_string(),
            "merge y1 := 1 2 3"
        );
    }
}
