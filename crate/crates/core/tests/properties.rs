use firefighter::exact::{solve_exact, solve_exact_with, ExactOptions};
use firefighter::fire::{fast_validity_check, simulate, FireState, Strategy};
use firefighter::generate::{gen_planted, gen_random};
use firefighter::graph::{
    bfs_distances, longest_induced_path_from, recognize, vertex_set, ClassTag, Graph, Instance, Vertex,
};
use firefighter::kernel::kernelize;
use firefighter::stars::{build_equiv_classes, class_count_bound, decompose_stars, solve_stars_with_guess};
use firefighter::threshold::{build_type_partition, instantiate_and_simulate, Symbol};
use proptest::prelude::*;
use proptest::strategy::Strategy as _;

fn graph_strategy(max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    (1..=max_n, 0.0..1.0f64, any::<u64>()).prop_map(|(n, p, seed)| gen_random(n, p, seed))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

/// Whether some vertex subset induces a graph isomorphic to `pattern`.
fn has_induced(g: &Graph, pattern: &Graph) -> bool {
    let (n, k) = (g.n(), pattern.n());
    let perms = permutations(k);
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|m| {
        let vs: Vec<Vertex> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
        perms.iter().any(|p| {
            (0..k).all(|a| (a + 1..k).all(|b| g.has_edge(vs[p[a]], vs[p[b]]) == pattern.has_edge(a, b)))
        })
    })
}

fn two_k2() -> Graph {
    Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()
}

fn recognize_by_obstructions(g: &Graph, tag: ClassTag) -> bool {
    let forbidden: Vec<Graph> = match tag {
        ClassTag::Cluster => vec![Graph::path(3)],
        ClassTag::Threshold => vec![Graph::path(4), Graph::cycle(4), two_k2()],
        ClassTag::StarForest => vec![Graph::complete(3), Graph::path(4), Graph::cycle(4)],
        ClassTag::Split => vec![Graph::cycle(4), Graph::cycle(5), two_k2()],
        _ => unreachable!(),
    };
    forbidden.iter().all(|f| !has_induced(g, f))
}

fn reachable_avoiding(g: &Graph, s: Vertex, blocked: &[Vertex]) -> usize {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !seen[w] && !blocked.contains(&w) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().filter(|&&b| b).count()
}

fn sequence_for(g: &Graph, s: Vertex, picks: &[usize]) -> Vec<Vertex> {
    let mut pool: Vec<Vertex> = g.vertices().filter(|&v| v != s).collect();
    let mut seq = Vec::new();
    for &p in picks {
        if pool.is_empty() {
            break;
        }
        seq.push(pool.remove(p % pool.len()));
    }
    seq
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn recognizers_match_forbidden_subgraphs(g in graph_strategy(8)) {
        for tag in [ClassTag::Cluster, ClassTag::Threshold, ClassTag::StarForest, ClassTag::Split] {
            prop_assert_eq!(recognize(&g, tag), recognize_by_obstructions(&g, tag), "{}", tag);
        }
    }

    #[test]
    fn bfs_layers_differ_by_at_most_one(g in graph_strategy(14), s in 0usize..14) {
        let s = s % g.n();
        let d = bfs_distances(&g, s, &g.empty_set());
        for (u, v) in g.edges() {
            match (d[u], d[v]) {
                (Some(a), Some(b)) => prop_assert!(a.abs_diff(b) <= 1),
                (a, b) => prop_assert!(a.is_none() && b.is_none()),
            }
        }
    }

    #[test]
    fn induced_path_shorter_than_n(g in graph_strategy(12), s in 0usize..12) {
        let s = s % g.n();
        prop_assert!(longest_induced_path_from(&g, s).unwrap() < g.n().max(1));
    }

    #[test]
    fn fast_check_agrees_with_simulation(g in graph_strategy(12), s in 0usize..12, picks in prop::collection::vec(any::<usize>(), 0..8)) {
        let s = s % g.n();
        let st = Strategy(sequence_for(&g, s, &picks));
        prop_assert_eq!(fast_validity_check(&g, s, &st), simulate(&g, s, &st).unwrap().valid);
    }

    #[test]
    fn burned_is_reachable_avoiding_defended(g in graph_strategy(12), s in 0usize..12, picks in prop::collection::vec(any::<usize>(), 0..6)) {
        let s = s % g.n();
        let seq = sequence_for(&g, s, &picks);
        let out = simulate(&g, s, &Strategy(seq.clone())).unwrap();
        if out.valid {
            prop_assert_eq!(g.n() - out.saved_count, reachable_avoiding(&g, s, &seq));
        }
    }

    #[test]
    fn dropping_last_defense_keeps_validity(g in graph_strategy(12), s in 0usize..12, picks in prop::collection::vec(any::<usize>(), 1..6)) {
        let s = s % g.n();
        let seq = sequence_for(&g, s, &picks);
        let full = simulate(&g, s, &Strategy(seq.clone())).unwrap();
        if full.valid && !seq.is_empty() {
            let shorter = simulate(&g, s, &Strategy(seq[..seq.len() - 1].to_vec())).unwrap();
            prop_assert!(shorter.valid);
            prop_assert!(shorter.saved_count <= full.saved_count);
        }
    }

    #[test]
    fn deleting_an_edge_never_hurts(g in graph_strategy(9), s in 0usize..9, e in any::<usize>()) {
        let s = s % g.n();
        let edges: Vec<_> = g.edges().collect();
        prop_assume!(!edges.is_empty());
        let (a, b) = edges[e % edges.len()];
        let h = Graph::from_edges(g.n(), edges.iter().copied().filter(|&x| x != (a, b))).unwrap();
        let opts = ExactOptions::unguarded();
        prop_assert!(solve_exact_with(&h, s, &opts).unwrap().best_saved >= solve_exact_with(&g, s, &opts).unwrap().best_saved);
    }

    #[test]
    fn instance_text_round_trip(g in graph_strategy(15), s in 0usize..15, k in 0usize..20, x in prop::collection::btree_set(0usize..15, 0..4)) {
        let s = s % g.n();
        let x: Vec<Vertex> = x.into_iter().filter(|&v| v < g.n()).collect();
        let inst = Instance::new(g, s).with_modulator(x, ClassTag::Split).with_demand(k);
        prop_assert_eq!(Instance::parse(&inst.to_text()).unwrap(), inst);
    }

    #[test]
    fn strategy_text_round_trip(seq in prop::collection::vec(0usize..100, 0..10)) {
        let st = Strategy(seq);
        prop_assert_eq!(st.to_one_based().parse::<Strategy>().unwrap(), st);
    }

    #[test]
    fn threshold_greedy_beats_other_members(seed in any::<u64>(), inner in 3usize..10, k in 1usize..3) {
        let inst = gen_planted(ClassTag::Threshold, inner, k, 0.4, seed).unwrap();
        let (g, s) = (&inst.graph, inst.source);
        let part = build_type_partition(g, inst.modulator.as_ref().unwrap()).unwrap();
        let Some(t) = part.type_of.iter().flatten().next().copied() else { return Ok(()) };
        let (_, greedy) = instantiate_and_simulate(g, s, &part, &[Symbol::Type(t)]).unwrap();
        for &v in &part.types[t].members {
            let alt = simulate(g, s, &Strategy(vec![v])).unwrap();
            prop_assert!(alt.saved_count <= greedy.saved_count);
        }
    }

    #[test]
    fn type_members_nested(seed in any::<u64>(), inner in 2usize..14, k in 1usize..4) {
        let inst = gen_planted(ClassTag::Threshold, inner, k, 0.5, seed).unwrap();
        let g = &inst.graph;
        let part = build_type_partition(g, inst.modulator.as_ref().unwrap()).unwrap();
        for t in &part.types {
            for w in t.members.windows(2) {
                let mut closed = g.neighbor_set(w[0]).clone();
                closed.insert(w[0]);
                closed.insert(w[1]);
                prop_assert!(g.neighbor_set(w[1]).is_subset(&closed));
            }
        }
    }

    #[test]
    fn star_classes_within_bound(seed in any::<u64>(), inner in 2usize..20, k in 1usize..4) {
        let inst = gen_planted(ClassTag::StarForest, inner, k, 0.3, seed).unwrap();
        let x = inst.modulator.clone().unwrap();
        let dec = decompose_stars(&inst.graph, &x).unwrap();
        let all: Vec<usize> = (0..dec.stars.len()).collect();
        for st in &dec.stars {
            let grouped: usize = st.border_by_y.values().map(Vec::len).sum();
            prop_assert_eq!(grouped, st.border.len());
        }
        let classes = build_equiv_classes(&dec, &all, dec.mask_of(&[inst.source]), 0, x.len());
        prop_assert!(classes.len() as f64 <= class_count_bound(x.len(), dec.ell.max(1)));
    }

    #[test]
    fn accepted_guess_is_consistent(seed in any::<u64>(), inner in 3usize..12, k in 1usize..3) {
        let inst = gen_planted(ClassTag::StarForest, inner, k, 0.4, seed).unwrap();
        let (g, s) = (&inst.graph, inst.source);
        let (r, guess) = solve_stars_with_guess(g, s, inst.modulator.as_ref().unwrap()).unwrap();
        let mut state = FireState::new(g, s);
        for &v in &r.best_strategy.0 {
            state.play(g, Some(v));
        }
        state.burn_out(g);
        for &(v, _) in &guess.x_d {
            prop_assert!(state.defended().contains(v));
        }
        for &v in &guess.x_s {
            prop_assert!(!state.is_burning(v));
        }
        for &v in &guess.x_b {
            prop_assert!(state.is_burning(v));
        }
    }

    #[test]
    fn kernel_size_bound(seed in any::<u64>(), inner in 1usize..30, k in 1usize..4, p in 0.0..1.0f64, demand in any::<usize>()) {
        let inst = gen_planted(ClassTag::Clique, inner, k, p, seed).unwrap();
        let l = k;
        let d = 1 + demand % (inner + l - 1).max(1);
        let out = kernelize(&inst.graph, inst.source, inst.modulator.as_ref().unwrap(), d).unwrap();
        prop_assert!(out.reduced.graph.n() <= l * l + 4 * l + 3 || !out.applied);
        prop_assert_eq!(out.reduced.check_class(), Some(true));
    }
}

#[test]
fn random_edge_counts_within_four_sigma() {
    let (n, p) = (30usize, 0.3);
    let pairs = (n * (n - 1) / 2) as f64;
    let (mean, sigma) = (p * pairs, (pairs * p * (1.0 - p)).sqrt());
    for seed in 0..100 {
        let m = gen_random(n, p, seed).m() as f64;
        assert!((m - mean).abs() <= 4.0 * sigma, "seed {seed}: m = {m}");
    }
}

#[test]
fn planted_instances_keep_their_class() {
    for seed in 0..100 {
        for tag in [ClassTag::Clique, ClassTag::Threshold, ClassTag::StarForest] {
            let inst = gen_planted(tag, 10, 2, 0.5, seed).unwrap();
            assert_eq!(inst.check_class(), Some(true));
            let x = inst.modulator.as_ref().unwrap();
            let rest = inst.graph.without(&vertex_set(inst.graph.n(), x.iter().copied())).0;
            assert!(recognize(&rest, tag));
        }
    }
}

#[test]
fn generators_are_deterministic() {
    assert_eq!(gen_random(20, 0.4, 7), gen_random(20, 0.4, 7));
    assert_eq!(
        gen_planted(ClassTag::Threshold, 12, 3, 0.3, 9).unwrap(),
        gen_planted(ClassTag::Threshold, 12, 3, 0.3, 9).unwrap()
    );
}

#[test]
fn exact_on_small_named_graphs() {
    // K4 from any vertex: one defense, then the rest burns.
    assert_eq!(solve_exact(&Graph::complete(4), 0, None).unwrap().best_saved, 1);
    // Path from an end: defending the neighbor saves everything else.
    assert_eq!(solve_exact(&Graph::path(6), 0, None).unwrap().best_saved, 5);
    // Star from a leaf: defend the center.
    assert_eq!(solve_exact(&Graph::star(5), 1, None).unwrap().best_saved, 5);
}
