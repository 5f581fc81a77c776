//! Line-oriented instance files.
//!
//! ```text
//! # comments run to end of line
//! problem groupcast
//! messages 3
//! receiver 1 wants 1 knows 2 3
//! receiver 2 wants 2 3 knows
//! ```
//!
//! or, for a single-unicast problem given directly as a graph,
//!
//! ```text
//! problem unicast-graph
//! messages 3
//! edge 1 2
//! edge 2 1
//! ```
//!
//! Indices in files are 1-based. Serialization is canonical: receivers by
//! ascending id, edges in lexicographic order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::problem::{GroupcastProblem, Receiver, SideInfoGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Groupcast(GroupcastProblem),
    Graph(SideInfoGraph),
}

impl Instance {
    pub fn k(&self) -> usize {
        match self {
            Instance::Groupcast(p) => p.k(),
            Instance::Graph(g) => g.k(),
        }
    }

    /// The instance as a groupcast problem; graphs become their
    /// single-unicast problem.
    pub fn to_problem(&self) -> GroupcastProblem {
        match self {
            Instance::Groupcast(p) => p.clone(),
            Instance::Graph(g) => GroupcastProblem::from_graph(g),
        }
    }
}

/// A parsed instance plus any non-fatal diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub instance: Instance,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Groupcast,
    Graph,
}

fn parse_index(tok: &str, line: usize, max: usize) -> Result<usize> {
    let index: usize = tok.parse().map_err(|_| Error::Syntax {
        line,
        message: format!("expected a positive integer, found `{tok}`"),
    })?;
    if index == 0 || index > max {
        return Err(Error::IndexOutOfRange { line, index, max });
    }
    Ok(index - 1)
}

pub fn parse_instance(text: &str) -> Result<Parsed> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines.next().ok_or(Error::Syntax {
        line: 1,
        message: "empty instance".into(),
    })?;
    let kind = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["problem", "groupcast"] => Kind::Groupcast,
        ["problem", "unicast-graph"] => Kind::Graph,
        _ => {
            return Err(Error::Syntax {
                line,
                message: "expected `problem groupcast` or `problem unicast-graph`".into(),
            })
        }
    };

    let (line, messages) = lines.next().ok_or(Error::Syntax {
        line: line + 1,
        message: "missing `messages <K>` line".into(),
    })?;
    let k = match messages.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["messages", n] => n.parse::<usize>().ok().filter(|&n| n > 0),
        _ => None,
    }
    .ok_or(Error::Syntax {
        line,
        message: "expected `messages <K>` with K >= 1".into(),
    })?;

    let mut warnings = Vec::new();
    match kind {
        Kind::Graph => {
            let mut g = SideInfoGraph::new(k);
            for (line, body) in lines {
                let toks: Vec<&str> = body.split_whitespace().collect();
                let ["edge", i, j] = toks.as_slice() else {
                    return Err(Error::Syntax {
                        line,
                        message: "expected `edge <i> <j>`".into(),
                    });
                };
                let (i, j) = (parse_index(i, line, k)?, parse_index(j, line, k)?);
                if i == j {
                    return Err(Error::Syntax {
                        line,
                        message: format!("self-loop at x{}", i + 1),
                    });
                }
                g.add_edge(i, j)?;
            }
            Ok(Parsed {
                instance: Instance::Graph(g),
                warnings,
            })
        }
        Kind::Groupcast => {
            let mut receivers: Vec<Receiver> = Vec::new();
            let mut ids = BTreeSet::new();
            for (line, body) in lines {
                let receiver = parse_receiver(body, line, k)?;
                if !ids.insert(receiver.id) {
                    return Err(Error::DuplicateReceiver {
                        line,
                        id: receiver.id,
                    });
                }
                receivers.push(receiver);
            }
            if receivers.is_empty() {
                warnings.push(format!("no receivers; {k} isolated messages"));
            }
            let problem = GroupcastProblem::new(k, receivers)?;
            let unwanted = problem.unwanted_messages();
            if !problem.receivers().is_empty() && !unwanted.is_empty() {
                let names: Vec<String> = unwanted.iter().map(|m| format!("x{}", m + 1)).collect();
                warnings.push(format!(
                    "messages wanted by no receiver: {}",
                    names.join(" ")
                ));
            }
            Ok(Parsed {
                instance: Instance::Groupcast(problem),
                warnings,
            })
        }
    }
}

fn parse_receiver(body: &str, line: usize, k: usize) -> Result<Receiver> {
    let toks: Vec<&str> = body.split_whitespace().collect();
    let syntax = |message: &str| Error::Syntax {
        line,
        message: message.to_string(),
    };
    if toks.len() < 3 || toks[0] != "receiver" || toks[2] != "wants" {
        return Err(syntax("expected `receiver <id> wants <i>... knows <j>...`"));
    }
    let id: usize = toks[1]
        .parse()
        .map_err(|_| syntax("receiver id must be a nonnegative integer"))?;
    let mut wants = BTreeSet::new();
    let mut knows = BTreeSet::new();
    let mut in_knows = false;
    for tok in &toks[3..] {
        if *tok == "knows" {
            if in_knows {
                return Err(syntax("`knows` given twice"));
            }
            in_knows = true;
            continue;
        }
        let m = parse_index(tok, line, k)?;
        let set = if in_knows { &mut knows } else { &mut wants };
        if !set.insert(m) {
            return Err(syntax(&format!("x{} listed twice", m + 1)));
        }
    }
    if let Some(&m) = wants.intersection(&knows).next() {
        return Err(Error::WantKnowOverlap { id, message: m + 1 });
    }
    Ok(Receiver { id, wants, knows })
}

fn join_1based<'a, I: IntoIterator<Item = &'a usize>>(items: I) -> String {
    items
        .into_iter()
        .map(|m| (m + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn serialize_instance(instance: &Instance) -> String {
    let mut out = String::new();
    match instance {
        Instance::Groupcast(p) => {
            writeln!(out, "problem groupcast").unwrap();
            writeln!(out, "messages {}", p.k()).unwrap();
            for r in p.receivers() {
                let mut line = format!("receiver {} wants", r.id);
                if !r.wants.is_empty() {
                    line.push(' ');
                    line.push_str(&join_1based(&r.wants));
                }
                line.push_str(" knows");
                if !r.knows.is_empty() {
                    line.push(' ');
                    line.push_str(&join_1based(&r.knows));
                }
                writeln!(out, "{line}").unwrap();
            }
        }
        Instance::Graph(g) => {
            writeln!(out, "problem unicast-graph").unwrap();
            writeln!(out, "messages {}", g.k()).unwrap();
            for (i, j) in g.edges() {
                writeln!(out, "edge {} {}", i + 1, j + 1).unwrap();
            }
        }
    }
    out
}
