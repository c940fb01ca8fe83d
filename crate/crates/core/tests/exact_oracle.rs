use firefighter::exact::{solve_exact, solve_plain};
use firefighter::fire::{fast_validity_check, simulate, Strategy};
use firefighter::generate::gen_random;
use firefighter::graph::Graph;

/// Pass-allowing brute force: every round either defends a free vertex or
/// does nothing, for up to `rounds` rounds.
fn best_with_passes(g: &Graph, s: usize, rounds: usize) -> usize {
    use firefighter::fire::FireState;
    fn rec(g: &Graph, st: &FireState, left: usize) -> usize {
        let mut done = st.clone();
        let mut best = g.n() - done.burn_out(g);
        if left == 0 || !st.is_active(g) {
            return best;
        }
        let mut pass = st.clone();
        pass.play(g, None);
        best = best.max(rec(g, &pass, left - 1));
        for v in g.vertices() {
            if st.is_free(v) {
                let mut nx = st.clone();
                nx.play(g, Some(v));
                best = best.max(rec(g, &nx, left - 1));
            }
        }
        best
    }
    rec(g, &FireState::new(g, s), rounds)
}

#[test]
fn frontier_search_matches_plain_enumeration() {
    for seed in 0..200u64 {
        let n = 4 + (seed % 9) as usize;
        let p = [0.2, 0.3, 0.45, 0.6][(seed % 4) as usize];
        let g = gen_random(n, p, seed);
        let s = (seed as usize * 7) % n;
        let fast = solve_exact(&g, s, None).unwrap();
        let plain = solve_plain(&g, s, None).unwrap();
        assert_eq!(fast.best_saved, plain.best_saved, "seed {seed}");
        assert_eq!(fast.best_strategy, plain.best_strategy, "seed {seed}");
        let out = simulate(&g, s, &fast.best_strategy).unwrap();
        assert!(out.valid);
        assert_eq!(out.saved_count, fast.best_saved);
    }
}

#[test]
fn passes_never_help() {
    for seed in 0..60u64 {
        let n = 4 + (seed % 5) as usize;
        let g = gen_random(n, 0.35, 1000 + seed);
        let s = 0;
        let best = solve_exact(&g, s, Some(n)).unwrap().best_saved;
        assert_eq!(best_with_passes(&g, s, n), best, "seed {seed}");
    }
}

#[test]
fn fast_check_agrees_smoke() {
    let g = gen_random(9, 0.3, 5);
    let st = Strategy(vec![3, 1, 7]);
    assert_eq!(fast_validity_check(&g, 0, &st), simulate(&g, 0, &st).unwrap().valid);
}

#[test]
fn threshold_matches_exact_quick() {
    use firefighter::generate::gen_planted;
    use firefighter::graph::ClassTag;
    use firefighter::threshold::solve_threshold;
    let t0 = std::time::Instant::now();
    for seed in 0..200u64 {
        let inner = 6 + (seed % 10) as usize;
        let k = 1 + (seed % 3) as usize;
        let inst = gen_planted(ClassTag::Threshold, inner, k, 0.4, seed).unwrap();
        let x = inst.modulator.clone().unwrap();
        let opts = firefighter::exact::ExactOptions { max_vertices: 30, ..Default::default() };
        let e = firefighter::exact::solve_exact_with(&inst.graph, inst.source, &opts).unwrap();
        let t = solve_threshold(&inst.graph, inst.source, &x).unwrap();
        assert_eq!(t.best_saved, e.best_saved, "seed {seed}");
    }
    eprintln!("threshold 200: {:?}", t0.elapsed());
}

#[test]
fn stars_matches_exact_quick() {
    use firefighter::generate::gen_planted;
    use firefighter::graph::ClassTag;
    use firefighter::stars::solve_stars;
    let t0 = std::time::Instant::now();
    let mut bad = 0;
    for seed in 0..200u64 {
        let inner = 5 + (seed % 10) as usize;
        let k = 1 + (seed % 2) as usize;
        let inst = gen_planted(ClassTag::StarForest, inner, k, 0.35, seed).unwrap();
        let x = inst.modulator.clone().unwrap();
        let opts = firefighter::exact::ExactOptions { max_vertices: 30, ..Default::default() };
        let e = firefighter::exact::solve_exact_with(&inst.graph, inst.source, &opts).unwrap();
        let t = solve_stars(&inst.graph, inst.source, &x).unwrap();
        if t.best_saved != e.best_saved {
            bad += 1;
            eprintln!("seed {seed}: stars {} exact {} {:?}\n{}", t.best_saved, e.best_saved, e.best_strategy, inst.to_text());
        }
    }
    eprintln!("stars 200: {:?}", t0.elapsed());
    assert_eq!(bad, 0);
}
