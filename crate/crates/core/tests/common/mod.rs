#![allow(dead_code)]

use std::path::PathBuf;

use index_coding::{
    minrank_exact, parse_instance, FittingPattern, GroupcastProblem, Instance, SideInfoGraph,
    SolverConfig,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn problem(name: &str) -> GroupcastProblem {
    parse_instance(&fixture(name))
        .expect(name)
        .instance
        .to_problem()
}

pub fn graph(name: &str) -> SideInfoGraph {
    match parse_instance(&fixture(name)).expect(name).instance {
        Instance::Graph(g) => g,
        Instance::Groupcast(_) => panic!("{name} is not a graph"),
    }
}

pub fn pattern15_graph() -> SideInfoGraph {
    FittingPattern::parse(&fixture("pattern15.fit"))
        .unwrap()
        .to_graph()
}

/// Budget wide enough for any graph on at most 8 vertices.
pub fn wide() -> SolverConfig {
    SolverConfig {
        free_cell_budget: 64,
        ..SolverConfig::default()
    }
}

pub fn exact(g: &SideInfoGraph) -> usize {
    minrank_exact(g, &wide()).expect("exact minrank").value
}

pub fn random_graph(rng: &mut ChaCha8Rng, k: usize, p: f64) -> SideInfoGraph {
    let mut g = SideInfoGraph::new(k);
    for i in 0..k {
        for j in 0..k {
            if i != j && rng.gen_bool(p) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}
