//! Seeded instance generators. All randomness comes from PCG-64 seeded with
//! the caller's seed, so corpora reproduce bit for bit across platforms.

use crate::error::{Error, Result};
use crate::graph::{connected_component_of, ClassTag, Graph, Instance, Vertex};
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;

pub fn rng_from_seed(seed: u64) -> Pcg64 {
    Pcg64::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gen_random(n: usize, p: f64, seed: u64) -> Graph {
    random_graph(n, p, &mut rng_from_seed(seed))
}

pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let p = p.clamp(0.0, 1.0);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

/// Random threshold graph from a creation sequence: each new vertex is
/// isolated or universal with equal probability.
pub fn random_threshold(n: usize, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        if rng.gen_bool(0.5) {
            for u in 0..v {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

/// Random star forest: stars of 1 to 5 vertices until `n` is used up. The
/// first vertex of each star is its center.
pub fn random_star_forest(n: usize, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::new(n);
    let mut next = 0;
    while next < n {
        let size = rng.gen_range(1..=(n - next).min(5));
        for leaf in next + 1..next + size {
            g.add_edge(next, leaf).expect("fresh pair");
        }
        next += size;
    }
    g
}

/// Planted modulator instance: a random member of `tag` on `inner_size`
/// vertices (ids `0..inner_size`) plus `k` modulator vertices (the next ids),
/// each joined to every other vertex with probability `p`. The source is the
/// first modulator vertex; it is joined to one vertex of every component it
/// cannot reach. With `k = 0` the source is vertex 0 and nothing is added.
pub fn gen_planted(tag: ClassTag, inner_size: usize, k: usize, p: f64, seed: u64) -> Result<Instance> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Precondition(format!("edge probability {p} outside [0, 1]")));
    }
    if inner_size + k == 0 {
        return Err(Error::Precondition("empty instance".into()));
    }
    let mut rng = rng_from_seed(seed);
    let inner = match tag {
        ClassTag::Clique => Graph::complete(inner_size),
        ClassTag::Threshold => random_threshold(inner_size, &mut rng),
        ClassTag::StarForest => random_star_forest(inner_size, &mut rng),
        other => {
            return Err(Error::Precondition(format!("no planted generator for {other}")));
        }
    };
    let n = inner_size + k;
    let mut g = Graph::new(n);
    for (u, v) in inner.edges() {
        g.add_edge(u, v)?;
    }
    for x in inner_size..n {
        for v in 0..n {
            if v != x && !g.has_edge(x, v) && (v < inner_size || v > x) && rng.gen_bool(p) {
                g.add_edge(x, v)?;
            }
        }
    }
    let modulator: Vec<Vertex> = (inner_size..n).collect();
    let source = if k > 0 { inner_size } else { 0 };
    if k > 0 {
        connect_to_source(&mut g, source);
    }
    Ok(Instance::new(g, source).with_modulator(modulator, tag))
}

fn connect_to_source(g: &mut Graph, s: Vertex) {
    let none = g.empty_set();
    loop {
        let reach = connected_component_of(g, s, &none);
        match g.vertices().find(|&v| !reach.contains(v)) {
            Some(v) => g.add_edge(s, v).expect("v is not adjacent to s"),
            None => break,
        }
    }
}
