//! Index-coding problem data: groupcast problems, side-information graphs,
//! adjacency and fitting matrices.
//!
//! Message and vertex indices are 0-based in this API. Message `x_k` of the
//! usual 1-based notation is index `k - 1`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};

/// Cap applied to path counts so that long power sums cannot overflow.
pub const PATH_COUNT_CAP: u64 = (1 << 31) - 1;

/// A receiver: an id, the messages it demands and the messages it holds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Receiver {
    pub id: usize,
    pub wants: BTreeSet<usize>,
    pub knows: BTreeSet<usize>,
}

impl Receiver {
    pub fn new<W, S>(id: usize, wants: W, knows: S) -> Self
    where
        W: IntoIterator<Item = usize>,
        S: IntoIterator<Item = usize>,
    {
        Receiver {
            id,
            wants: wants.into_iter().collect(),
            knows: knows.into_iter().collect(),
        }
    }
}

/// A groupcast index-coding problem over `k` messages.
///
/// Receivers are kept sorted by id; the demand index maps each message to the
/// ids of the receivers wanting it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupcastProblem {
    k: usize,
    receivers: Vec<Receiver>,
    demand: Vec<BTreeSet<usize>>,
}

impl GroupcastProblem {
    pub fn new(k: usize, mut receivers: Vec<Receiver>) -> Result<Self> {
        receivers.sort_by_key(|r| r.id);
        for pair in receivers.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::DuplicateReceiver {
                    line: 0,
                    id: pair[0].id,
                });
            }
        }
        let mut demand = vec![BTreeSet::new(); k];
        for r in &receivers {
            for &m in r.wants.iter().chain(&r.knows) {
                if m >= k {
                    return Err(Error::Structure(format!(
                        "receiver {} references x{} but there are {k} messages",
                        r.id,
                        m + 1
                    )));
                }
            }
            if let Some(&m) = r.wants.intersection(&r.knows).next() {
                return Err(Error::WantKnowOverlap {
                    id: r.id,
                    message: m + 1,
                });
            }
            for &m in &r.wants {
                demand[m].insert(r.id);
            }
        }
        Ok(GroupcastProblem {
            k,
            receivers,
            demand,
        })
    }

    /// The single-unicast problem of a side-information graph: receiver
    /// `v + 1` wants `v` and knows the out-neighbours of `v`.
    pub fn from_graph(g: &SideInfoGraph) -> Self {
        let receivers = (0..g.k())
            .map(|v| Receiver::new(v + 1, [v], g.out_neighbors(v).iter().copied()))
            .collect();
        GroupcastProblem::new(g.k(), receivers).expect("graph problems are well formed")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn receivers(&self) -> &[Receiver] {
        &self.receivers
    }

    /// Ids of the receivers wanting message `m`.
    pub fn demanders(&self, m: usize) -> &BTreeSet<usize> {
        &self.demand[m]
    }

    pub fn receiver(&self, id: usize) -> Option<&Receiver> {
        self.receivers
            .binary_search_by_key(&id, |r| r.id)
            .ok()
            .map(|i| &self.receivers[i])
    }

    /// Messages nobody wants.
    pub fn unwanted_messages(&self) -> Vec<usize> {
        (0..self.k).filter(|&m| self.demand[m].is_empty()).collect()
    }

    pub fn total_demand(&self) -> usize {
        self.receivers.iter().map(|r| r.wants.len()).sum()
    }

    pub fn is_single_unicast(&self) -> bool {
        self.receivers.iter().all(|r| r.wants.len() == 1)
            && self.demand.iter().all(|d| d.len() == 1)
    }

    /// Splits every receiver into one receiver per wanted message, each
    /// keeping the original side information. Already-split problems are
    /// returned unchanged; otherwise ids are renumbered 1.. in receiver order.
    pub fn split_want_sets(&self) -> GroupcastProblem {
        if self.receivers.iter().all(|r| r.wants.len() <= 1) {
            return self.clone();
        }
        let mut next = 1;
        let mut out = Vec::with_capacity(self.total_demand());
        for r in &self.receivers {
            for &w in &r.wants {
                out.push(Receiver::new(next, [w], r.knows.iter().copied()));
                next += 1;
            }
        }
        GroupcastProblem::new(self.k, out).expect("split preserves validity")
    }

    /// Side-information graph of a single-unicast problem.
    pub fn to_graph(&self) -> Result<SideInfoGraph> {
        for (m, d) in self.demand.iter().enumerate() {
            if d.len() != 1 {
                return Err(Error::NotSingleUnicast {
                    message: m + 1,
                    demanders: d.len(),
                });
            }
        }
        let mut g = SideInfoGraph::new(self.k);
        for r in &self.receivers {
            if r.wants.len() != 1 {
                return Err(Error::Structure(format!(
                    "receiver {} wants {} messages; split want-sets first",
                    r.id,
                    r.wants.len()
                )));
            }
            let v = *r.wants.first().expect("one want");
            for &j in &r.knows {
                g.add_edge(v, j)?;
            }
        }
        Ok(g)
    }
}

/// Directed side-information graph; edge `(i, j)` means the receiver
/// wanting `x_i` knows `x_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SideInfoGraph {
    succ: Vec<BTreeSet<usize>>,
}

impl SideInfoGraph {
    pub fn new(k: usize) -> Self {
        SideInfoGraph {
            succ: vec![BTreeSet::new(); k],
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(k: usize, edges: I) -> Result<Self> {
        let mut g = SideInfoGraph::new(k);
        for (i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Convenience constructor from 1-based edge pairs, matching the text formats.
    pub fn from_edges_1based<I: IntoIterator<Item = (usize, usize)>>(
        k: usize,
        edges: I,
    ) -> Result<Self> {
        let mut g = SideInfoGraph::new(k);
        for (i, j) in edges {
            if i == 0 || j == 0 {
                return Err(Error::Argument("1-based edge with a zero endpoint".into()));
            }
            g.add_edge(i - 1, j - 1)?;
        }
        Ok(g)
    }

    pub fn k(&self) -> usize {
        self.succ.len()
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        let k = self.k();
        if i >= k || j >= k {
            return Err(Error::Structure(format!(
                "edge ({}, {}) outside 1..={k}",
                i + 1,
                j + 1
            )));
        }
        if i == j {
            return Err(Error::Structure(format!("self-loop at x{}", i + 1)));
        }
        self.succ[i].insert(j);
        Ok(())
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) -> bool {
        self.succ[i].remove(&j)
    }

    /// Removes every edge into or out of `v`.
    pub fn isolate(&mut self, v: usize) {
        self.succ[v].clear();
        for s in &mut self.succ {
            s.remove(&v);
        }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.succ[i].contains(&j)
    }

    pub fn is_bidirected(&self, i: usize, j: usize) -> bool {
        self.has_edge(i, j) && self.has_edge(j, i)
    }

    pub fn out_neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.succ[v]
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(BTreeSet::len).sum()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&j| (i, j)))
    }

    /// Subgraph induced by `vertices`, reindexed in the order given.
    pub fn induced(&self, vertices: &[usize]) -> SideInfoGraph {
        let mut local = vec![usize::MAX; self.k()];
        for (new, &old) in vertices.iter().enumerate() {
            local[old] = new;
        }
        let mut g = SideInfoGraph::new(vertices.len());
        for (new, &old) in vertices.iter().enumerate() {
            for &j in &self.succ[old] {
                if local[j] != usize::MAX {
                    g.succ[new].insert(local[j]);
                }
            }
        }
        g
    }

    /// Weakly connected components, each sorted, ordered by smallest vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let k = self.k();
        let mut undirected = vec![Vec::new(); k];
        for (i, j) in self.edges() {
            undirected[i].push(j);
            undirected[j].push(i);
        }
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &u in &undirected[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        let k = self.k();
        let mut m = AdjacencyMatrix::zeros(k);
        for (i, j) in self.edges() {
            m.entries[i * k + j] = 1;
        }
        m
    }

    /// `sum_{i=0}^{n} A^i` with entries saturating at [`PATH_COUNT_CAP`].
    pub fn adjacency_power_sum(&self, n: usize) -> AdjacencyMatrix {
        let a = self.adjacency();
        let mut power = AdjacencyMatrix::identity(self.k());
        let mut sum = power.clone();
        for _ in 0..n {
            power = power.mul_saturating(&a);
            sum = sum.add_saturating(&power);
        }
        sum
    }

    /// `B = A^T ∘ A`: ones exactly at the bidirected pairs.
    pub fn hadamard_undirected(&self) -> Gf2Matrix {
        let k = self.k();
        let mut b = Gf2Matrix::zeros(k, k);
        for (i, j) in self.edges() {
            if self.has_edge(j, i) {
                b.set(i, j, true);
            }
        }
        b
    }

    pub fn fitting_pattern(&self) -> FittingPattern {
        let k = self.k();
        let mut cells = vec![Cell::Zero; k * k];
        for i in 0..k {
            cells[i * k + i] = Cell::One;
        }
        for (i, j) in self.edges() {
            cells[i * k + j] = Cell::Free;
        }
        FittingPattern { k, cells }
    }

    /// Out-neighbourhoods as bit masks; only valid for `k <= 64`.
    pub(crate) fn masks(&self) -> Vec<u64> {
        debug_assert!(self.k() <= 64);
        self.succ
            .iter()
            .map(|s| s.iter().fold(0u64, |m, &j| m | 1 << j))
            .collect()
    }
}

/// A square matrix of nonnegative path counts.
#[derive(Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    entries: Vec<u64>,
}

impl AdjacencyMatrix {
    pub fn zeros(n: usize) -> Self {
        AdjacencyMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "square matrix expected");
            m.entries[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    fn mul_saturating(&self, rhs: &AdjacencyMatrix) -> AdjacencyMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let cell = &mut out.entries[i * n + j];
                    *cell = cell
                        .saturating_add(a.saturating_mul(rhs.get(l, j)))
                        .min(PATH_COUNT_CAP);
                }
            }
        }
        out
    }

    fn add_saturating(&self, rhs: &AdjacencyMatrix) -> AdjacencyMatrix {
        AdjacencyMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.saturating_add(*b).min(PATH_COUNT_CAP))
                .collect(),
        }
    }
}

impl fmt::Debug for AdjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// One cell of a fitting pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Zero,
    One,
    /// Free to be 0 or 1; printed as `*`.
    Free,
}

impl Cell {
    pub fn symbol(self) -> char {
        match self {
            Cell::Zero => '0',
            Cell::One => '1',
            Cell::Free => '*',
        }
    }
}

/// The family of matrices fitting a side-information graph: ones on the
/// diagonal, free cells at edges, zeros elsewhere.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FittingPattern {
    k: usize,
    cells: Vec<Cell>,
}

impl FittingPattern {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cell(&self, i: usize, j: usize) -> Cell {
        self.cells[i * self.k + j]
    }

    pub fn row(&self, i: usize) -> &[Cell] {
        &self.cells[i * self.k..(i + 1) * self.k]
    }

    pub fn column(&self, j: usize) -> Vec<Cell> {
        (0..self.k).map(|i| self.cell(i, j)).collect()
    }

    /// Free cells in row-major order.
    pub fn free_cells(&self) -> Vec<(usize, usize)> {
        (0..self.k)
            .flat_map(|i| (0..self.k).map(move |j| (i, j)))
            .filter(|&(i, j)| self.cell(i, j) == Cell::Free)
            .collect()
    }

    /// The graph whose edges are the free cells.
    pub fn to_graph(&self) -> SideInfoGraph {
        SideInfoGraph::from_edges(self.k, self.free_cells()).expect("free cells are off-diagonal")
    }

    /// Binary matrix obtained by setting the free cell `free_cells()[b]` to
    /// bit `b` of `assignment`.
    pub fn instantiate(&self, assignment: &[bool]) -> Gf2Matrix {
        let free = self.free_cells();
        assert_eq!(free.len(), assignment.len(), "one bit per free cell");
        let mut m = Gf2Matrix::identity(self.k);
        for (&(i, j), &bit) in free.iter().zip(assignment) {
            m.set(i, j, bit);
        }
        m
    }

    /// True iff `m` agrees with every forced cell.
    pub fn fits(&self, m: &Gf2Matrix) -> bool {
        m.nrows() == self.k
            && m.ncols() == self.k
            && (0..self.k).all(|i| {
                (0..self.k).all(|j| match self.cell(i, j) {
                    Cell::Zero => !m.get(i, j),
                    Cell::One => m.get(i, j),
                    Cell::Free => true,
                })
            })
    }

    /// Parses a whitespace-separated square matrix of `0`, `1` and `*`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<Cell>> = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| match tok {
                    "0" => Ok(Cell::Zero),
                    "1" => Ok(Cell::One),
                    "*" => Ok(Cell::Free),
                    other => Err(Error::Syntax {
                        line: n + 1,
                        message: format!("unexpected cell `{other}`"),
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        let k = rows.len();
        let mut cells = Vec::with_capacity(k * k);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Dimension {
                    expected: k,
                    found: row.len(),
                });
            }
            for (j, &c) in row.iter().enumerate() {
                if (i == j) != (c == Cell::One) {
                    return Err(Error::Structure(format!(
                        "cell ({}, {}) must be {}",
                        i + 1,
                        j + 1,
                        if i == j { "1" } else { "0 or *" }
                    )));
                }
            }
            cells.extend_from_slice(row);
        }
        Ok(FittingPattern { k, cells })
    }
}

impl fmt::Display for FittingPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.k {
            let line: Vec<String> = self.row(i).iter().map(|c| c.symbol().to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FittingPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A GF(2) vector with ones at the given message indices.
pub fn message_set_vector(k: usize, messages: &BTreeSet<usize>) -> Gf2Vector {
    Gf2Vector::from_indices(k, messages.iter().copied())
}
