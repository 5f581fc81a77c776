mod common;

use std::collections::BTreeSet;

use common::*;
use index_coding::*;
use proptest::prelude::*;

/// Graphs on up to `max_k` vertices with the requested edge density.
fn graphs(max_k: usize) -> impl Strategy<Value = SideInfoGraph> {
    (1..=max_k, 0.1f64..0.9).prop_flat_map(|(k, p)| {
        proptest::collection::vec(proptest::bool::weighted(p), k * k).prop_map(move |bits| {
            let edges = (0..k)
                .flat_map(|i| (0..k).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && bits[i * k + j]);
            SideInfoGraph::from_edges(k, edges).unwrap()
        })
    })
}

/// Graphs small enough for brute-force enumeration.
fn small_graphs() -> impl Strategy<Value = SideInfoGraph> {
    graphs(5).prop_filter("at most 14 edges", |g| g.edge_count() <= 14)
}

fn problems() -> impl Strategy<Value = GroupcastProblem> {
    (1usize..=6).prop_flat_map(|k| {
        proptest::collection::vec((proptest::collection::vec(0..3u8, k), 0..k), 1..=5).prop_map(
            move |rows| {
                let receivers = rows
                    .into_iter()
                    .enumerate()
                    .map(|(n, (roles, forced))| {
                        // role 0: unrelated, 1: wanted, 2: known; `forced` is always wanted
                        let wants = (0..k).filter(|&m| m == forced || roles[m] == 1);
                        let knows = (0..k).filter(|&m| m != forced && roles[m] == 2);
                        Receiver::new(n + 1, wants, knows)
                    })
                    .collect();
                GroupcastProblem::new(k, receivers).unwrap()
            },
        )
    })
}

fn vectors(len: usize) -> impl Strategy<Value = Gf2Vector> {
    proptest::collection::vec(any::<bool>(), len)
        .prop_map(move |bits| Gf2Vector::from_indices(len, (0..len).filter(|&i| bits[i])))
}

fn matrices() -> impl Strategy<Value = Gf2Matrix> {
    (1usize..=8, 1usize..=70).prop_flat_map(|(r, c)| {
        proptest::collection::vec(vectors(c), r)
            .prop_map(move |rows| Gf2Matrix::from_rows(c, rows).unwrap())
    })
}

fn all_covers(g: &SideInfoGraph) -> Vec<CliqueCover> {
    vec![
        algorithm1_cover(g),
        ldg_cover(g),
        eldg_cover(g),
        CliqueCover::singletons(g.k()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant(m in matrices()) {
        let r = m.rank();
        prop_assert_eq!(r, m.transpose().rank());
        prop_assert!(r <= m.nrows().min(m.ncols()));
    }

    #[test]
    fn span_contains_sums(vs in proptest::collection::vec(vectors(67), 1..6), pick in any::<u8>()) {
        let mut basis = EchelonBasis::default();
        for v in &vs {
            basis.insert(v.clone());
        }
        let mut sum = Gf2Vector::zeros(67);
        for (i, v) in vs.iter().enumerate() {
            if pick >> i & 1 == 1 {
                for j in v.support() {
                    sum.flip(j);
                }
            }
        }
        prop_assert!(basis.contains(&sum));
        prop_assert!(in_span(&sum, &vs).unwrap());
        prop_assert_eq!(basis.len(), Gf2Matrix::from_rows(67, vs.clone()).unwrap().rank());
    }

    #[test]
    fn covers_are_clique_partitions(g in graphs(10)) {
        for cover in all_covers(&g) {
            let mut seen = BTreeSet::new();
            for c in cover.cliques() {
                for &u in c.members() {
                    prop_assert!(seen.insert(u));
                    for &v in c.members() {
                        prop_assert!(u == v || g.is_bidirected(u, v));
                    }
                }
            }
            prop_assert_eq!(seen.len(), g.k());
            prop_assert_eq!(cover_code_length(&cover), cover.t());
        }
    }

    #[test]
    fn minrank_lies_between_bounds(g in graphs(7)) {
        let m = exact(&g);
        prop_assert!(mais(&g, &wide()).unwrap() <= m);
        for cover in all_covers(&g) {
            prop_assert!(m <= cover_code_length(&cover));
        }
    }

    #[test]
    fn exact_matches_enumeration(g in small_graphs()) {
        let (brute, witness) = minrank_enumerate(&g, 14).unwrap();
        let r = minrank_exact(&g, &wide()).unwrap();
        prop_assert_eq!(r.value, brute);
        let pattern = g.fitting_pattern();
        prop_assert!(pattern.fits(&r.certificate));
        prop_assert_eq!(r.certificate.rank(), r.value);
        prop_assert!(pattern.fits(&witness));
        prop_assert_eq!(witness.rank(), brute);
    }

    #[test]
    fn edge_deletion_preserves_minrank(g in small_graphs()) {
        let (brute, _) = minrank_enumerate(&g, 14).unwrap();
        for cover in all_covers(&g) {
            let pruned = theorem2_reduce(&g, &cover).unwrap();
            prop_assert!(pruned.edges().all(|(u, v)| g.has_edge(u, v)));
            prop_assert_eq!(exact(&pruned), brute);
        }
    }

    #[test]
    fn cycle_free_verdict_is_symmetric(g in graphs(8)) {
        let cover = algorithm1_cover(&g);
        let cs = cover.cliques();
        for a in 0..cs.len() {
            for b in a + 1..cs.len() {
                let ab = cycle_free_pair(&g, &cs[a], &cs[b]).unwrap().is_some();
                let ba = cycle_free_pair(&g, &cs[b], &cs[a]).unwrap().is_some();
                prop_assert_eq!(ab, ba);
            }
        }
    }

    #[test]
    fn built_codes_decode(g in graphs(9)) {
        let r = reduce_pipeline(&g).unwrap();
        let cycles = greedy_cycle_cover(&r.reduced.graph);
        let built = build_code(&r.reduced, &cycles).unwrap();
        prop_assert_eq!(
            built.code.len() + built.warnings.len(),
            r.reduced.graph.k() - cycles.cycles.len()
        );
        let p = GroupcastProblem::from_graph(&g);
        prop_assert!(verify_decodable(&built.code, &p).unwrap().overall);
        prop_assert_eq!(r.reduced.source_k(), g.k());
    }

    #[test]
    fn extra_symbols_never_hurt(p in problems(), extra in vectors(6)) {
        let c = construction2(&p).unwrap();
        prop_assert!(c.report.overall);
        let mut symbols = c.code.symbols().to_vec();
        let extra = Gf2Vector::from_indices(p.k(), extra.support().into_iter().filter(|&i| i < p.k()));
        prop_assume!(!extra.is_zero());
        symbols.push(extra);
        let more = IndexCode::new(p.k(), symbols).unwrap();
        prop_assert!(verify_decodable(&more, &p).unwrap().overall);
    }

    #[test]
    fn conversion_is_sound(p in problems()) {
        let conv = theorem4_convert(&p);
        for r in conv.receivers() {
            prop_assert_eq!(r.wants.len(), 1);
            let m = *r.wants.iter().next().unwrap();
            prop_assert_eq!(r.id, m + 1);
            for &d in p.demanders(m) {
                prop_assert!(r.knows.is_subset(&p.receiver(d).unwrap().knows));
            }
        }
        // a code for the converted problem serves the original one
        let c = construction2(&conv).unwrap();
        let lifted = IndexCode::new(p.k(), c.code.symbols().to_vec()).unwrap();
        prop_assert!(verify_decodable(&lifted, &p).unwrap().overall);
    }

    #[test]
    fn partition_multicast_is_bounded(p in problems()) {
        let cfg = SolverConfig::default();
        let plan = partition_multicast_length(&p, &cfg).unwrap();
        let wanted: Vec<usize> = (0..p.k()).filter(|&m| !p.demanders(m).is_empty()).collect();
        prop_assert!(plan.total_length <= wanted.len());
        let demanded = converted_graph(&p).induced(&wanted);
        prop_assert!(plan.total_length >= mais(&demanded, &cfg).unwrap());
        let covered: usize = plan.parts.iter().map(Vec::len).sum();
        prop_assert_eq!(covered, p.k());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tri_partition_bounds(g in graphs(7), labels in proptest::collection::vec(0..3usize, 7)) {
        let k = g.k();
        let mut h = g.clone();
        for (a, b) in g.edges() {
            if labels[a] != 1 && labels[b] != 1 && labels[a] != labels[b] {
                h.remove_edge(a, b);
            }
        }
        let part = |q: usize| -> Vec<usize> { (0..k).filter(|&x| labels[x] == q).collect() };
        let m: Vec<usize> = (0..3).map(|q| exact(&h.induced(&part(q)))).collect();
        let whole = exact(&h);
        prop_assert!(m[0] + m[2] <= whole);
        prop_assert!(whole <= m[0] + m[1] + m[2]);
    }
}
