//! Heuristic clique covers: Hadamard-product merging plus the LDG and ELDG
//! row/column merging baselines.

use std::cmp::Ordering;
use std::fmt;

use crate::cycles::Clique;
use crate::error::{Error, Result};
use crate::problem::{Cell, FittingPattern, SideInfoGraph};

/// A partition of the vertex set into cliques, ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueCover {
    cliques: Vec<Clique>,
}

impl CliqueCover {
    pub fn new(g: &SideInfoGraph, cliques: Vec<Clique>) -> Result<Self> {
        let k = g.k();
        let mut seen = vec![false; k];
        let mut checked = Vec::with_capacity(cliques.len());
        for c in cliques {
            let c = Clique::new(g, c.members().iter().copied())?;
            for &v in c.members() {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Structure(format!("x{} covered twice", v + 1)));
                }
            }
            checked.push(c);
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::Structure(format!("x{} not covered", v + 1)));
        }
        checked.sort_by_key(Clique::smallest);
        Ok(CliqueCover { cliques: checked })
    }

    pub fn singletons(k: usize) -> Self {
        CliqueCover {
            cliques: (0..k).map(Clique::singleton).collect(),
        }
    }

    /// Builds a cover from vertex groups already known to be cliques.
    pub(crate) fn from_groups(mut groups: Vec<Vec<usize>>) -> Self {
        for grp in &mut groups {
            grp.sort_unstable();
        }
        groups.sort_by_key(|grp| grp[0]);
        CliqueCover {
            cliques: groups
                .into_iter()
                .map(Clique::from_sorted_unchecked)
                .collect(),
        }
    }

    pub fn cliques(&self) -> &[Clique] {
        &self.cliques
    }

    pub fn t(&self) -> usize {
        self.cliques.len()
    }

    /// Number of covered vertices.
    pub fn k(&self) -> usize {
        self.cliques.iter().map(Clique::len).sum()
    }

    /// Index of the clique holding `v`.
    pub fn clique_of(&self, v: usize) -> Option<usize> {
        self.cliques.iter().position(|c| c.contains(v))
    }

    /// One line per clique: `clique: x1 x2 x3`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.cliques {
            out.push_str("clique:");
            for v in c.members() {
                out.push_str(&format!(" x{}", v + 1));
            }
            out.push('\n');
        }
        out
    }
}

/// One symbol per clique.
pub fn cover_code_length(c: &CliqueCover) -> usize {
    c.t()
}

/// Distance between fitting-matrix entries, rows or columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InterEntryDistance {
    Finite(usize),
    Infinite,
}

impl InterEntryDistance {
    pub fn is_finite(self) -> bool {
        matches!(self, InterEntryDistance::Finite(_))
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            InterEntryDistance::Finite(d) => Some(d),
            InterEntryDistance::Infinite => None,
        }
    }
}

impl std::ops::Add for InterEntryDistance {
    type Output = InterEntryDistance;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (InterEntryDistance::Finite(a), InterEntryDistance::Finite(b)) => {
                InterEntryDistance::Finite(a + b)
            }
            _ => InterEntryDistance::Infinite,
        }
    }
}

impl fmt::Display for InterEntryDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterEntryDistance::Finite(d) => write!(f, "{d}"),
            InterEntryDistance::Infinite => write!(f, "inf"),
        }
    }
}

pub fn entry_distance(a: Cell, b: Cell) -> InterEntryDistance {
    use Cell::*;
    match (a, b) {
        (Zero, One) | (One, Zero) => InterEntryDistance::Infinite,
        (x, y) if x == y => InterEntryDistance::Finite(0),
        _ => InterEntryDistance::Finite(1),
    }
}

fn line_distance(a: &[Cell], b: &[Cell]) -> InterEntryDistance {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| entry_distance(x, y))
        .fold(InterEntryDistance::Finite(0), |acc, d| acc + d)
}

pub fn row_distance(p: &FittingPattern, i: usize, j: usize) -> InterEntryDistance {
    line_distance(p.row(i), p.row(j))
}

pub fn column_distance(p: &FittingPattern, i: usize, j: usize) -> InterEntryDistance {
    line_distance(&p.column(i), &p.column(j))
}

fn meet(a: Cell, b: Cell) -> Cell {
    match (a, b) {
        (Cell::Free, x) | (x, Cell::Free) => x,
        (x, _) => x,
    }
}

/// Whether an LDG/ELDG merge joined rows or columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Orientation {
    Row,
    Column,
}

/// One merge step of LDG or ELDG. Groups are given by their members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeStep {
    pub orientation: Orientation,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub distance: usize,
}

struct Group {
    members: Vec<usize>,
    row: Vec<Cell>,
    col: Vec<Cell>,
}

fn greedy_line_merge(g: &SideInfoGraph, use_columns: bool) -> (CliqueCover, Vec<MergeStep>) {
    let p = g.fitting_pattern();
    let mut groups: Vec<Group> = (0..p.k())
        .map(|v| Group {
            members: vec![v],
            row: p.row(v).to_vec(),
            col: p.column(v),
        })
        .collect();
    let mut steps = Vec::new();
    loop {
        // (distance, orientation, a, b): tuple order encodes the tie rules
        let mut best: Option<(usize, Orientation, usize, usize)> = None;
        for a in 0..groups.len() {
            for b in a + 1..groups.len() {
                let mut candidates = vec![(
                    Orientation::Row,
                    line_distance(&groups[a].row, &groups[b].row),
                )];
                if use_columns {
                    candidates.push((
                        Orientation::Column,
                        line_distance(&groups[a].col, &groups[b].col),
                    ));
                }
                for (o, d) in candidates {
                    if let Some(d) = d.finite() {
                        let cand = (d, o, a, b);
                        if best.is_none_or(|cur| cand.cmp(&cur) == Ordering::Less) {
                            best = Some(cand);
                        }
                    }
                }
            }
        }
        let Some((distance, orientation, a, b)) = best else {
            break;
        };
        let second = groups.remove(b);
        let first = &mut groups[a];
        steps.push(MergeStep {
            orientation,
            first: first.members.clone(),
            second: second.members.clone(),
            distance,
        });
        first.members.extend(second.members);
        first.members.sort_unstable();
        for (x, y) in first.row.iter_mut().zip(&second.row) {
            *x = meet(*x, *y);
        }
        for (x, y) in first.col.iter_mut().zip(&second.col) {
            *x = meet(*x, *y);
        }
    }
    let cover = CliqueCover::from_groups(groups.into_iter().map(|grp| grp.members).collect());
    (cover, steps)
}

/// LDG: repeatedly merge the row pair at minimum finite distance.
pub fn ldg_cover(g: &SideInfoGraph) -> CliqueCover {
    greedy_line_merge(g, false).0
}

pub fn ldg_merges(g: &SideInfoGraph) -> Vec<MergeStep> {
    greedy_line_merge(g, false).1
}

/// ELDG: as LDG but column pairs compete with row pairs.
pub fn eldg_cover(g: &SideInfoGraph) -> CliqueCover {
    greedy_line_merge(g, true).0
}

pub fn eldg_merges(g: &SideInfoGraph) -> Vec<MergeStep> {
    greedy_line_merge(g, true).1
}

/// The pairs merged in one round of [`algorithm1_cover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeRound {
    pub merges: Vec<(Vec<usize>, Vec<usize>)>,
}

/// Hadamard-product clique cover.
///
/// Each round forms `B = A^T ∘ A` over the current groups, retires groups
/// with an all-zero `B` row, and pairs the rest greedily in ascending order
/// of `B`-row weight. Merged groups keep the AND of their rows and columns,
/// so two groups stay adjacent in `B` exactly when every cross pair is
/// bidirected.
pub fn algorithm1_cover(g: &SideInfoGraph) -> CliqueCover {
    algorithm1_trace(g).0
}

pub fn algorithm1_trace(g: &SideInfoGraph) -> (CliqueCover, Vec<MergeRound>) {
    let k = g.k();
    let mut a: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| g.has_edge(i, j)).collect())
        .collect();
    let mut groups: Vec<Vec<usize>> = (0..k).map(|v| vec![v]).collect();
    let mut done: Vec<Vec<usize>> = Vec::new();
    let mut rounds = Vec::new();

    loop {
        let n = groups.len();
        let b = |i: usize, j: usize| i != j && a[i][j] && a[j][i];
        let weight: Vec<usize> = (0..n)
            .map(|i| (0..n).filter(|&j| b(i, j)).count())
            .collect();
        if weight.iter().all(|&w| w == 0) {
            done.append(&mut groups);
            break;
        }
        let mut order: Vec<usize> = (0..n).filter(|&i| weight[i] > 0).collect();
        order.sort_by_key(|&i| (weight[i], i));
        let mut partner = vec![None; n];
        let mut merges = Vec::new();
        for &i in &order {
            if partner[i].is_some() {
                continue;
            }
            let choice = (0..n)
                .filter(|&j| b(i, j) && partner[j].is_none())
                .min_by_key(|&j| (weight[j], j));
            if let Some(j) = choice {
                partner[i] = Some(j);
                partner[j] = Some(i);
                merges.push((i, j));
            }
        }

        rounds.push(MergeRound {
            merges: merges
                .iter()
                .map(|&(i, j)| (groups[i].clone(), groups[j].clone()))
                .collect(),
        });

        // survivors: merged pairs (at the first row's slot) and unpaired
        // rows that still have undirected edges
        let mut next_groups = Vec::new();
        let mut next_index = Vec::new();
        let mut absorbed = vec![false; n];
        for &(_, j) in &merges {
            absorbed[j] = true;
        }
        for i in 0..n {
            if absorbed[i] {
                continue;
            }
            if weight[i] == 0 {
                done.push(std::mem::take(&mut groups[i]));
                continue;
            }
            let mut members = groups[i].clone();
            let mut rows = vec![i];
            if let Some(j) = partner[i] {
                members.extend(groups[j].iter().copied());
                rows.push(j);
            }
            members.sort_unstable();
            next_groups.push(members);
            next_index.push(rows);
        }
        let m = next_groups.len();
        let mut next_a = vec![vec![false; m]; m];
        for (x, rx) in next_index.iter().enumerate() {
            for (y, ry) in next_index.iter().enumerate() {
                if x != y {
                    next_a[x][y] = rx.iter().all(|&r| ry.iter().all(|&c| a[r][c]));
                }
            }
        }
        groups = next_groups;
        a = next_a;
    }
    (CliqueCover::from_groups(done), rounds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(k: usize) -> SideInfoGraph {
        let edges = (0..k).flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)));
        SideInfoGraph::from_edges(k, edges).unwrap()
    }

    fn members(c: &CliqueCover) -> Vec<Vec<usize>> {
        c.cliques().iter().map(|c| c.members().to_vec()).collect()
    }

    #[test]
    fn entry_distances() {
        use Cell::*;
        assert_eq!(entry_distance(Zero, Zero), InterEntryDistance::Finite(0));
        assert_eq!(entry_distance(Free, Free), InterEntryDistance::Finite(0));
        assert_eq!(entry_distance(One, Free), InterEntryDistance::Finite(1));
        assert_eq!(entry_distance(Zero, Free), InterEntryDistance::Finite(1));
        assert_eq!(entry_distance(Zero, One), InterEntryDistance::Infinite);
        assert!(InterEntryDistance::Finite(1000) < InterEntryDistance::Infinite);
    }

    #[test]
    fn no_undirected_edges_gives_singletons() {
        let g = SideInfoGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let (cover, rounds) = algorithm1_trace(&g);
        assert_eq!(cover.t(), 3);
        assert!(rounds.is_empty());
    }

    #[test]
    fn complete_four_merges_in_two_rounds() {
        let (cover, rounds) = algorithm1_trace(&complete(4));
        assert_eq!(members(&cover), vec![vec![0, 1, 2, 3]]);
        assert_eq!(rounds.len(), 2);
        assert_eq!(
            rounds[0].merges,
            vec![(vec![0], vec![1]), (vec![2], vec![3])]
        );
        assert_eq!(rounds[1].merges, vec![(vec![0, 1], vec![2, 3])]);
    }

    #[test]
    fn disjoint_cliques_recovered() {
        let mut g = SideInfoGraph::new(5);
        for (i, j) in [(0, 1), (2, 3), (2, 4), (3, 4)] {
            g.add_edge(i, j).unwrap();
            g.add_edge(j, i).unwrap();
        }
        g.add_edge(1, 2).unwrap();
        assert_eq!(
            members(&algorithm1_cover(&g)),
            vec![vec![0, 1], vec![2, 3, 4]]
        );
    }

    #[test]
    fn identical_rows_merge_first() {
        let g = complete(2);
        let steps = ldg_merges(&g);
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].distance, 2);
        assert_eq!(ldg_cover(&g).t(), 1);
        let g = SideInfoGraph::from_edges(3, [(0, 1), (1, 0), (0, 2)]).unwrap();
        assert_eq!(members(&ldg_cover(&g)), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn conflicts_never_merge() {
        let g = SideInfoGraph::from_edges(2, [(0, 1)]).unwrap();
        let p = g.fitting_pattern();
        assert_eq!(row_distance(&p, 0, 1), InterEntryDistance::Infinite);
        assert_eq!(ldg_cover(&g).t(), 2);
        assert_eq!(eldg_cover(&g).t(), 2);
    }

    #[test]
    fn symmetric_pattern_ldg_equals_eldg() {
        let g = complete(3);
        assert_eq!(ldg_cover(&g), eldg_cover(&g));
    }

    #[test]
    fn cover_validation_and_render() {
        let g = SideInfoGraph::from_edges(3, [(0, 1), (1, 0)]).unwrap();
        let c = CliqueCover::new(
            &g,
            vec![Clique::singleton(2), Clique::new(&g, [1, 0]).unwrap()],
        )
        .unwrap();
        assert_eq!(c.render(), "clique: x1 x2\nclique: x3\n");
        assert_eq!(cover_code_length(&c), 2);
        assert_eq!(c.clique_of(1), Some(0));
        assert!(CliqueCover::new(&g, vec![Clique::singleton(0)]).is_err());
        assert!(CliqueCover::new(
            &g,
            vec![
                Clique::singleton(0),
                Clique::singleton(0),
                Clique::singleton(1),
                Clique::singleton(2)
            ]
        )
        .is_err());
        assert_eq!(cover_code_length(&CliqueCover::singletons(5)), 5);
        assert_eq!(
            cover_code_length(
                &CliqueCover::new(&complete(5), vec![Clique::new(&complete(5), 0..5).unwrap()])
                    .unwrap()
            ),
            1
        );
    }
}
