//! Groupcast problems end to end: conversion to single unicast, the
//! reduction-based code construction, and the partition multicast baseline.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::code::{build_code, verify_decodable, DecodabilityReport, IndexCode};
use crate::cycles::greedy_cycle_cover;
use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;
use crate::minrank::{reduce_pipeline, Reduction, SolverConfig};
use crate::problem::{GroupcastProblem, Receiver, SideInfoGraph};

/// Single-unicast problem with receiver `k + 1` wanting `x_k` and knowing
/// the intersection of the side information of every receiver wanting
/// `x_k`. Messages nobody wants get no receiver.
pub fn theorem4_convert(p: &GroupcastProblem) -> GroupcastProblem {
    let receivers = (0..p.k())
        .filter(|&m| !p.demanders(m).is_empty())
        .map(|m| {
            let mut knows: Option<BTreeSet<usize>> = None;
            for &id in p.demanders(m) {
                let kj = &p.receiver(id).expect("demander exists").knows;
                knows = Some(match knows {
                    None => kj.clone(),
                    Some(acc) => acc.intersection(kj).copied().collect(),
                });
            }
            Receiver::new(m + 1, [m], knows.unwrap_or_default())
        })
        .collect();
    GroupcastProblem::new(p.k(), receivers).expect("conversion keeps indices valid")
}

/// Side-information graph of the converted problem on all `K` messages;
/// unwanted messages are isolated vertices.
pub fn converted_graph(p: &GroupcastProblem) -> SideInfoGraph {
    let conv = theorem4_convert(p);
    let mut g = SideInfoGraph::new(p.k());
    for r in conv.receivers() {
        let v = *r.wants.first().expect("one want");
        for &j in &r.knows {
            g.add_edge(v, j).expect("valid edge");
        }
    }
    g
}

/// Output of [`construction2`].
#[derive(Clone, Debug)]
pub struct Construction {
    pub code: IndexCode,
    pub report: DecodabilityReport,
    /// Reduction audit, 1-based in original message numbers.
    pub audit: Vec<String>,
    pub warnings: Vec<String>,
    /// True when the cycle-cover code failed and the clique code was used.
    pub fallback: bool,
    /// Reduction of the converted graph restricted to wanted messages.
    pub reduction: Reduction,
    /// Wanted messages; vertex `a` of the reduction is message `wanted[a]`.
    pub wanted: Vec<usize>,
}

/// Converts, reduces, covers the reduced graph with cycles, builds and lifts
/// the code and verifies it against the original problem. If verification
/// fails the clique code is used instead, and a failure of that is an error.
pub fn construction2(p: &GroupcastProblem) -> Result<Construction> {
    let k = p.k();
    let conv = theorem4_convert(p);
    let wanted: Vec<usize> = (0..k).filter(|&m| !p.demanders(m).is_empty()).collect();
    let mut local = vec![usize::MAX; k];
    for (a, &m) in wanted.iter().enumerate() {
        local[m] = a;
    }
    let mut g = SideInfoGraph::new(wanted.len());
    for r in conv.receivers() {
        let v = local[*r.wants.first().expect("one want")];
        for &j in &r.knows {
            if local[j] != usize::MAX {
                g.add_edge(v, local[j])?;
            }
        }
    }

    let reduction = reduce_pipeline(&g)?;
    let cycles = greedy_cycle_cover(&reduction.reduced.graph);
    let built = build_code(&reduction.reduced, &cycles)?;
    let globalize =
        |s: &Gf2Vector| Gf2Vector::from_indices(k, s.support().into_iter().map(|a| wanted[a]));
    let code = IndexCode::new(k, built.code.symbols().iter().map(globalize).collect())?;

    let audit: Vec<String> = reduction
        .audit
        .iter()
        .map(|e| e.map_vertices(|v| wanted[v]).to_string())
        .collect();
    let mut warnings: Vec<String> = built.warnings;

    let report = verify_decodable(&code, p)?;
    if report.overall {
        return Ok(Construction {
            code,
            report,
            audit,
            warnings,
            fallback: false,
            reduction,
            wanted,
        });
    }

    warnings.push("cycle-cover code failed verification; using the clique code".into());
    let fallback = IndexCode::new(
        k,
        reduction
            .reduced
            .origin
            .iter()
            .map(|c| Gf2Vector::from_indices(k, c.members().iter().map(|&a| wanted[a])))
            .collect(),
    )?;
    let report = verify_decodable(&fallback, p)?;
    if !report.overall {
        return Err(Error::Invariant("clique code failed verification".into()));
    }
    Ok(Construction {
        code: fallback,
        report,
        audit,
        warnings,
        fallback: true,
        reduction,
        wanted,
    })
}

/// Smallest prime power `>= n` (and at least 2).
pub fn smallest_prime_power_at_least(n: usize) -> usize {
    (n.max(2)..)
        .find(|&q| {
            let p = (2..=q).find(|d| q % d == 0).expect("q >= 2");
            let mut r = q;
            while r % p == 0 {
                r /= p;
            }
            r == 1
        })
        .expect("prime powers are unbounded")
}

/// A partition of the messages with per-part partial-clique costs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionPlan {
    pub parts: Vec<Vec<usize>>,
    /// `None` for parts holding no wanted message.
    pub kappa: Vec<Option<usize>>,
    pub total_length: usize,
    pub min_field_size: usize,
}

impl PartitionPlan {
    pub fn cost(&self, i: usize) -> usize {
        self.kappa[i].map_or(0, |k| k + 1)
    }

    /// Field needed by part `i`: an `[n, kappa + 1]` MDS code with
    /// `1 < kappa + 1 < n` needs `q >= n`; other parts work over GF(2).
    pub fn field_size(&self, i: usize) -> usize {
        part_field(self.parts[i].len(), self.cost(i))
    }
}

fn part_field(n: usize, cost: usize) -> usize {
    if 1 < cost && cost < n {
        smallest_prime_power_at_least(n)
    } else {
        2
    }
}

#[derive(Clone, Copy)]
struct PartCost {
    kappa: Option<usize>,
    cost: usize,
    field: usize,
}

fn part_costs(conv: &GroupcastProblem) -> Vec<PartCost> {
    let k = conv.k();
    let knows: Vec<Option<u64>> = (0..k)
        .map(|m| {
            conv.demanders(m)
                .first()
                .and_then(|&id| conv.receiver(id))
                .map(|r| r.knows.iter().fold(0u64, |acc, &j| acc | 1 << j))
        })
        .collect();
    (0..1u64 << k)
        .into_par_iter()
        .map(|part| {
            let size = part.count_ones() as usize;
            let min_known = (0..k)
                .filter(|&m| part >> m & 1 == 1)
                .filter_map(|m| knows[m].map(|kn| (kn & part).count_ones() as usize))
                .min();
            let kappa = min_known.map(|known| size - 1 - known);
            let cost = kappa.map_or(0, |k| k + 1);
            PartCost {
                kappa,
                cost,
                field: part_field(size, cost),
            }
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Score {
    total: usize,
    field: usize,
    parts: usize,
}

/// Depth-first search over restricted growth strings extending `blocks`
/// from element `next`. Visits partitions in lexicographic order and keeps
/// the first best.
fn search(
    costs: &[PartCost],
    k: usize,
    next: usize,
    blocks: &mut Vec<u64>,
    best: &mut Option<(Score, Vec<u64>)>,
) {
    if next == k {
        let score = Score {
            total: blocks.iter().map(|&b| costs[b as usize].cost).sum(),
            field: blocks
                .iter()
                .map(|&b| costs[b as usize].field)
                .max()
                .unwrap_or(2),
            parts: blocks.len(),
        };
        if best.as_ref().is_none_or(|(s, _)| score < *s) {
            *best = Some((score, blocks.clone()));
        }
        return;
    }
    for b in 0..blocks.len() {
        blocks[b] |= 1 << next;
        search(costs, k, next + 1, blocks, best);
        blocks[b] &= !(1 << next);
    }
    blocks.push(1 << next);
    search(costs, k, next + 1, blocks, best);
    blocks.pop();
}

/// All restricted growth strings of length `n`, in lexicographic order, as
/// block masks.
fn prefixes(n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for e in 0..n {
        let mut grown = Vec::new();
        for blocks in out {
            for b in 0..=blocks.len() {
                let mut nb: Vec<u64> = blocks.clone();
                if b == nb.len() {
                    nb.push(1 << e);
                } else {
                    nb[b] |= 1 << e;
                }
                grown.push(nb);
            }
        }
        out = grown;
    }
    out
}

/// Exhaustive partition multicast on the converted problem: minimizes the
/// summed partial-clique costs `kappa(P) + 1` over all set partitions. Ties
/// go to the smaller field, then to fewer parts, then to the
/// lexicographically first partition.
pub fn partition_multicast_length(
    p: &GroupcastProblem,
    cfg: &SolverConfig,
) -> Result<PartitionPlan> {
    let k = p.k();
    if k > cfg.partition_limit.min(30) {
        return Err(Error::Resource {
            what: "message count",
            size: k,
            limit: cfg.partition_limit.min(30),
            hint: "raise --pm-limit",
        });
    }
    let conv = theorem4_convert(p);
    let costs = part_costs(&conv);
    let split = k.min(5);
    let best = prefixes(split)
        .into_par_iter()
        .map(|mut blocks| {
            let mut best = None;
            search(&costs, k, split, &mut blocks, &mut best);
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .fold(None, |acc: Option<(Score, Vec<u64>)>, cand| match acc {
            Some(a) if a.0 <= cand.0 => Some(a),
            _ => Some(cand),
        });
    let blocks = best.map(|(_, b)| b).unwrap_or_default();
    let parts: Vec<Vec<usize>> = blocks
        .iter()
        .map(|&b| (0..k).filter(|&m| b >> m & 1 == 1).collect())
        .collect();
    let kappa: Vec<Option<usize>> = blocks.iter().map(|&b| costs[b as usize].kappa).collect();
    let mut plan = PartitionPlan {
        parts,
        kappa,
        total_length: 0,
        min_field_size: 2,
    };
    plan.total_length = (0..plan.parts.len()).map(|i| plan.cost(i)).sum();
    plan.min_field_size = (0..plan.parts.len())
        .map(|i| plan.field_size(i))
        .max()
        .unwrap_or(2);
    Ok(plan)
}

/// Lengths and field sizes of the two constructions.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub l_star: usize,
    pub field_star: usize,
    pub l_pm: usize,
    pub field_pm: usize,
    pub construction: Construction,
    pub plan: PartitionPlan,
}

impl Comparison {
    pub fn render_machine(&self) -> String {
        format!(
            "l_star={} field_star={} l_pm={} field_pm={}\n",
            self.l_star, self.field_star, self.l_pm, self.field_pm
        )
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{:<22}{:>8}{:>8}", "method", "length", "field").unwrap();
        writeln!(
            out,
            "{:<22}{:>8}{:>8}",
            "construction-ii",
            self.l_star,
            format!("F{}", self.field_star)
        )
        .unwrap();
        writeln!(
            out,
            "{:<22}{:>8}{:>8}",
            "partition-multicast",
            self.l_pm,
            format!("F{}", self.field_pm)
        )
        .unwrap();
        out
    }
}

pub fn compare_methods(p: &GroupcastProblem, cfg: &SolverConfig) -> Result<Comparison> {
    let construction = construction2(p)?;
    let plan = partition_multicast_length(p, cfg)?;
    Ok(Comparison {
        l_star: construction.code.len(),
        field_star: 2,
        l_pm: plan.total_length,
        field_pm: plan.min_field_size,
        construction,
        plan,
    })
}
