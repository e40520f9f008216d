use chainfeas::chains::ChainFamily;
use chainfeas::encode::{encode_embedding, EncodeLimits};
use chainfeas::fjump::{fj_search, FjConfig};
use chainfeas::graph::{chimera, Graph, GraphFamily, GraphSpec};
use chainfeas::instance::Instance;
use chainfeas::milp::{Activities, Assignment, ModelBuilder, Sense};
use chainfeas::screening::zero_phase_screen;
use chainfeas::solution::{Embedding, Solution};
use chainfeas::verify::{best_of_n, verify_embedding, Candidate};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=2 * n).prop_map(move |pairs| {
            let edges: std::collections::BTreeSet<_> =
                pairs.into_iter().filter(|(u, v)| u != v).map(|(u, v)| (u.min(v), u.max(v))).collect();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn arb_family() -> impl Strategy<Value = GraphFamily> {
    prop_oneof![
        (1usize..30, 0.0f64..=1.0).prop_map(|(n, p)| GraphFamily::ErdosRenyi { n, p }),
        (3usize..30).prop_flat_map(|n| (Just(n), 1..n).prop_map(|(n, m)| GraphFamily::BarabasiAlbert { n, m })),
        (5usize..30, 0.0f64..=1.0).prop_map(|(n, beta)| GraphFamily::WattsStrogatz { n, k: 4, beta }),
        (2usize..15, 2usize..4).prop_map(|(h, d)| GraphFamily::RandomRegular { n: 2 * h.max(d), d }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_are_pure(family in arb_family(), seed: u64) {
        let spec = GraphSpec::new(family.clone(), seed);
        let a = spec.generate().unwrap();
        let b = spec.generate().unwrap();
        prop_assert_eq!(a.edges(), b.edges());
        if let GraphFamily::RandomRegular { n, d } = family {
            prop_assert!((0..n).all(|v| a.degree(v) == d));
        }
    }

    #[test]
    fn chimera_shape(m in 1usize..4, n in 1usize..4, t in 1usize..5) {
        let g = chimera(m, n, t);
        prop_assert_eq!(g.n(), 2 * m * n * t);
        // a cell with neighbors on both sides along some axis is interior
        let expect = if m >= 3 || n >= 3 {
            t + 2
        } else if m == 2 || n == 2 {
            t + 1
        } else {
            t
        };
        prop_assert_eq!(g.max_degree(), expect);
    }

    #[test]
    fn top2_ignores_edge_order(g in arb_graph(12), seed: u64) {
        let mut edges = g.edges().to_vec();
        let k = (seed as usize) % (edges.len() + 1);
        edges.rotate_left(k);
        edges.reverse();
        let flipped: Vec<_> = edges.iter().map(|&(u, v)| (v, u)).collect();
        let h = Graph::from_edges(g.n(), flipped).unwrap();
        prop_assert_eq!(g.top2_info(), h.top2_info());
    }

    #[test]
    fn graph_json_round_trip(g in arb_graph(15)) {
        let back = Graph::load_edge_list(&g.dump_edge_list()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.n(), g.n());
    }

    #[test]
    fn screening_monotone_in_chain_limit(p in arb_graph(8), h in arb_graph(14), l in 1usize..4) {
        if !zero_phase_screen(&p, &h, l).is_infeasible() {
            prop_assert!(!zero_phase_screen(&p, &h, l + 1).is_infeasible());
        }
    }

    #[test]
    fn chain_invariants(h in arb_graph(10), l in 1usize..4) {
        let fam = ChainFamily::enumerate(&h, l).unwrap();
        let delta = h.max_degree();
        for v in 0..h.n() {
            prop_assert!(fam.index_of(&[v]).is_some());
        }
        let gamma = fam.gamma();
        for (c, ch) in fam.chains().iter().enumerate() {
            prop_assert!(h.is_connected_subset(&ch.vertices));
            prop_assert!(ch.size() >= 1 && ch.size() <= l);
            prop_assert!(ch.internal_edges + 1 >= ch.size());
            prop_assert!(ch.boundary.iter().all(|v| !ch.contains(*v)));
            let crossing: usize = ch
                .vertices
                .iter()
                .map(|&v| h.neighbors(v).iter().filter(|w| !ch.contains(**w)).count())
                .sum();
            let degree_sum: usize = ch.vertices.iter().map(|&v| h.degree(v)).sum();
            prop_assert_eq!(2 * ch.internal_edges + crossing, degree_sum);
            if delta >= 2 {
                prop_assert!(crossing <= ch.size() * (delta - 2) + 2);
            }
            prop_assert!(!gamma[c].contains(&c));
            for &d in &gamma[c] {
                prop_assert!(gamma[d].binary_search(&c).is_ok());
            }
        }
    }

    #[test]
    fn feasible_iff_zero_infeasibility(
        rows in proptest::collection::vec((proptest::collection::vec((0usize..6, -3i64..=3), 1..5), -3i64..4, any::<bool>()), 1..6),
        x in proptest::collection::vec(0i64..=1, 6),
    ) {
        let mut b = ModelBuilder::new();
        for j in 0..6 {
            b.add_binary(format!("x{j}"));
        }
        for (terms, rhs, eq) in rows {
            let mut terms: Vec<_> = terms.into_iter().filter(|t| t.1 != 0).collect();
            terms.sort();
            terms.dedup_by_key(|t| t.0);
            if terms.is_empty() {
                continue;
            }
            b.add_constraint(terms, if eq { Sense::Eq } else { Sense::LessEq }, rhs).unwrap();
        }
        let m = b.build();
        let x = Assignment(x);
        let ones = vec![1; m.num_constraints()];
        prop_assert_eq!(m.is_feasible(&x), m.weighted_infeasibility(&x, &ones) == 0);

        // shifting one variable keeps the activities equal to a recomputation
        let mut act = Activities::new(&m, &x);
        let mut y = x.clone();
        for j in 0..6 {
            let delta = 1 - 2 * y.0[j];
            y.0[j] += delta;
            act.shift(&m, j, delta);
            let fresh = Activities::new(&m, &y);
            prop_assert_eq!(act.as_slice(), fresh.as_slice());
        }

        let cfg = FjConfig { max_iterations: 500, seed: 3, ..Default::default() };
        let r1 = fj_search(&m, &x, &cfg);
        let r2 = fj_search(&m, &x, &cfg);
        prop_assert_eq!(&r1, &r2);
        prop_assert!(r1.weights.iter().all(|&w| w >= 1));
        if r1.is_feasible() {
            let satisfied = m.constraints().iter().all(|c| {
                let a: i64 = c.coeffs.iter().map(|&(j, k)| k * r1.assignment.0[j]).sum();
                match c.sense { Sense::LessEq => a <= c.rhs, Sense::Eq => a == c.rhs }
            });
            prop_assert!(satisfied);
        }
    }

    #[test]
    fn verifier_agrees_with_model(p in arb_graph(4), h in arb_graph(7), l in 1usize..3, picks in proptest::collection::vec(any::<u32>(), 4)) {
        let Some(s_min) = zero_phase_screen(&p, &h, l).s_min().map(<[usize]>::to_vec) else { return Ok(()); };
        let fam = ChainFamily::enumerate(&h, l).unwrap();
        let Ok(enc) = encode_embedding(&p, &h, &fam, &s_min, EncodeLimits::default()) else { return Ok(()); };
        prop_assert_eq!(s_min.len(), p.n());
        for (i, &s) in s_min.iter().enumerate() {
            for &c in enc.candidates(i) {
                let ch = fam.chain(c);
                prop_assert!(ch.size() >= s && ch.boundary.len() >= p.degree(i));
            }
        }
        // a random pick of one candidate per problem vertex
        let chains: Vec<Vec<usize>> = (0..p.n())
            .map(|i| {
                let cand = enc.candidates(i);
                fam.chain(cand[picks[i] as usize % cand.len()]).vertices.clone()
            })
            .collect();
        let emb = Embedding::from_chains(chains);
        let x = enc.encode_solution(&emb);
        prop_assert_eq!(verify_embedding(&p, &h, l, &emb).is_ok(), enc.model.is_feasible(&x));
    }

    #[test]
    fn selection_ignores_order_but_for_ties(colorings in proptest::collection::vec(proptest::collection::vec(0usize..3, 4), 1..6), nos in 0usize..4, rot in 0usize..10) {
        let inst = Instance::Mincoloring { graph: Graph::cycle(4) };
        let mut pool: Vec<Candidate> = colorings.into_iter().map(|c| Candidate::yes(Solution::Coloring(c), None)).collect();
        pool.extend((0..nos).map(|_| Candidate::no()));
        let a = best_of_n(&pool, &inst).unwrap();
        let k = rot % pool.len();
        pool.rotate_left(k);
        let b = best_of_n(&pool, &inst).unwrap();
        prop_assert_eq!(a.decision, b.decision);
        prop_assert_eq!(a.basis, b.basis);
        prop_assert_eq!(a.chosen.map(|c| c.objective), b.chosen.map(|c| c.objective));
    }
}
