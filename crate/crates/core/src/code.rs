//! Scalar linear index codes over GF(2): construction from cycle covers of a
//! reduced graph, lifting back to source messages, and decodability checks.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::cycles::{CycleCover, DirectedCycle};
use crate::error::{Error, Result};
use crate::gf2::{EchelonBasis, Gf2Vector};
use crate::minrank::ReducedGraph;
use crate::problem::GroupcastProblem;

/// A list of coded symbols, each the XOR of the messages in its support.
#[derive(Clone, PartialEq, Eq)]
pub struct IndexCode {
    k: usize,
    symbols: Vec<Gf2Vector>,
}

impl IndexCode {
    pub fn new(k: usize, symbols: Vec<Gf2Vector>) -> Result<Self> {
        for s in &symbols {
            if s.len() != k {
                return Err(Error::Dimension {
                    expected: k,
                    found: s.len(),
                });
            }
            if s.is_zero() {
                return Err(Error::Structure("zero symbol in code".into()));
            }
        }
        Ok(IndexCode { k, symbols })
    }

    /// Each message sent uncoded.
    pub fn uncoded(k: usize) -> Self {
        IndexCode {
            k,
            symbols: (0..k).map(|m| Gf2Vector::unit(k, m)).collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn symbols(&self) -> &[Gf2Vector] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Positions of symbols equal to an earlier symbol.
    pub fn duplicates(&self) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        (0..self.symbols.len())
            .filter(|&i| !seen.insert(&self.symbols[i]))
            .collect()
    }

    /// Parses one symbol per line, e.g. `x1+x2+x3`. Blank lines and `#`
    /// comments are skipped.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let mut symbols = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut v = Gf2Vector::zeros(k);
            for term in body.split('+') {
                let term = term.trim();
                let index: usize = term
                    .strip_prefix('x')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| Error::Syntax {
                        line,
                        message: format!("expected a term like `x3`, found `{term}`"),
                    })?;
                if index == 0 || index > k {
                    return Err(Error::IndexOutOfRange {
                        line,
                        index,
                        max: k,
                    });
                }
                if v.get(index - 1) {
                    return Err(Error::Syntax {
                        line,
                        message: format!("x{index} repeated in one symbol"),
                    });
                }
                v.set(index - 1, true);
            }
            symbols.push(v);
        }
        IndexCode::new(k, symbols)
    }

    /// One symbol per line, terms ascending.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.symbols {
            out.push_str(&render_symbol(s));
            out.push('\n');
        }
        out
    }
}

pub fn render_symbol(s: &Gf2Vector) -> String {
    s.support()
        .iter()
        .map(|m| format!("x{}", m + 1))
        .collect::<Vec<_>>()
        .join("+")
}

impl fmt::Debug for IndexCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let syms: Vec<String> = self.symbols.iter().map(render_symbol).collect();
        write!(f, "IndexCode(k={}, [{}])", self.k, syms.join(", "))
    }
}

pub fn code_length(code: &IndexCode) -> usize {
    code.len()
}

/// A code plus notes about duplicate symbols dropped while lifting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltCode {
    pub code: IndexCode,
    pub warnings: Vec<String>,
}

/// Builds a code on the reduced graph from a cycle cover (`|C| - 1` symbols
/// per cycle, consecutive pairs in chain order, then one symbol per
/// uncovered vertex) and lifts it: each super-vertex becomes the XOR of its
/// origin clique.
pub fn build_code(r: &ReducedGraph, cycles: &CycleCover) -> Result<BuiltCode> {
    let t = r.graph.k();
    let k = r.source_k();
    let mut seen = vec![false; t];
    let mut mark = |v: usize| -> Result<()> {
        if v >= t {
            return Err(Error::Structure(format!(
                "cover vertex {} not in reduced graph",
                v + 1
            )));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::Structure(format!(
                "reduced vertex {} covered twice",
                v + 1
            )));
        }
        Ok(())
    };
    let mut chains: Vec<Vec<usize>> = Vec::new();
    for c in &cycles.cycles {
        for &v in c.vertices() {
            mark(v)?;
        }
        let c = DirectedCycle::new(&r.graph, c.vertices().to_vec())?.canonical();
        chains.push(c.vertices().to_vec());
    }
    let mut uncovered = cycles.uncovered.clone();
    uncovered.sort_unstable();
    for &v in &uncovered {
        mark(v)?;
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::Structure(format!(
            "reduced vertex {} not covered",
            v + 1
        )));
    }
    chains.sort_by_key(|c| c[0]);

    let lift = |vs: &[usize]| {
        Gf2Vector::from_indices(
            k,
            vs.iter()
                .flat_map(|&v| r.origin[v].members().iter().copied()),
        )
    };
    let mut symbols = Vec::new();
    for chain in &chains {
        for pair in chain.windows(2) {
            symbols.push(lift(pair));
        }
    }
    for &v in &uncovered {
        symbols.push(lift(&[v]));
    }

    let mut warnings = Vec::new();
    let mut kept = Vec::new();
    let mut distinct = BTreeSet::new();
    for s in symbols {
        if distinct.insert(s.clone()) {
            kept.push(s);
        } else {
            warnings.push(format!("duplicate symbol {} dropped", render_symbol(&s)));
        }
    }
    Ok(BuiltCode {
        code: IndexCode::new(k, kept)?,
        warnings,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub receiver: usize,
    /// 0-based message index.
    pub message: usize,
    pub decodable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodabilityReport {
    pub verdicts: Vec<Verdict>,
    pub overall: bool,
}

impl DecodabilityReport {
    /// `receiver=<id> message=x<m> decodable=<bool>` lines, then `overall=<bool>`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            out.push_str(&format!(
                "receiver={} message=x{} decodable={}\n",
                v.receiver,
                v.message + 1,
                v.decodable
            ));
        }
        out.push_str(&format!("overall={}\n", self.overall));
        out
    }
}

/// Receiver `R` decodes `x_w` iff `e_w` lies in the span of the code symbols
/// and the unit vectors of `R`'s side information. Known coordinates are
/// cleared from every symbol, which is the same test in fewer dimensions.
pub fn verify_decodable(code: &IndexCode, p: &GroupcastProblem) -> Result<DecodabilityReport> {
    if code.k() != p.k() {
        return Err(Error::Argument(format!(
            "code has {} messages, problem has {}",
            code.k(),
            p.k()
        )));
    }
    let k = p.k();
    let verdicts: Vec<Vec<Verdict>> = p
        .receivers()
        .par_iter()
        .map(|r| {
            let known = Gf2Vector::from_indices(k, r.knows.iter().copied());
            let mut basis = EchelonBasis::default();
            for s in code.symbols() {
                let mut s = s.clone();
                s.clear_masked(&known);
                basis.insert(s);
            }
            r.wants
                .iter()
                .map(|&w| Verdict {
                    receiver: r.id,
                    message: w,
                    decodable: basis.contains(&Gf2Vector::unit(k, w)),
                })
                .collect()
        })
        .collect();
    let verdicts: Vec<Verdict> = verdicts.into_iter().flatten().collect();
    let overall = verdicts.iter().all(|v| v.decodable);
    Ok(DecodabilityReport { verdicts, overall })
}
