//! Kernelization for a modulator `X` to a clique `C = G ∖ X`.
//!
//! Modulator vertices with few clique neighbors (`X_L`) pin down a small part
//! `J` of the clique; the rest of the clique is replaced by two small cliques
//! `K` and `L`, and the demand is remapped.

use crate::error::{Error, Result};
use crate::exact::{decide_saving_k_with, ExactOptions};
use crate::graph::{recognize, vertex_set, ClassTag, Graph, Instance, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelOutput {
    /// Kernel `H` with its source, modulator and demand `k′`.
    pub reduced: Instance,
    pub applied: bool,
    /// Normalized modulator size `l` (the source included).
    pub l: usize,
    /// Ids below refer to `reduced` when `applied`, else to the input.
    pub x_low: Vec<Vertex>,
    pub x_high: Vec<Vertex>,
    pub j: Vec<Vertex>,
    pub k_ids: Vec<Vertex>,
    pub l_ids: Vec<Vertex>,
    /// Input id to kernel id; `None` for deleted clique vertices.
    pub old_to_new: Vec<Option<Vertex>>,
}

/// Admissible demands for a clique of size `c` and modulator size `l`.
pub fn admissible_demands(c: usize, l: usize) -> std::ops::RangeInclusive<usize> {
    1..=(c + l).saturating_sub(1)
}

/// Maps the demand `k` to `k′` once the rules have been applied.
pub fn map_demand(k: usize, c: usize, l: usize, j: usize, kk: usize, ll: usize) -> usize {
    if k >= c {
        k - c + j + kk + ll
    } else if k > 2 * l {
        2 * l + 1
    } else {
        k
    }
}

pub fn kernelize(g: &Graph, s: Vertex, x: &[Vertex], k: usize) -> Result<KernelOutput> {
    let n = g.n();
    if s >= n {
        return Err(Error::VertexOutOfRange { vertex: s, n });
    }
    let mut xs: Vec<Vertex> = x.to_vec();
    if let Some(&v) = xs.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    if !xs.contains(&s) {
        xs.push(s);
    }
    xs.sort_unstable();
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition("repeated modulator vertex".into()));
    }
    let in_x = vertex_set(n, xs.iter().copied());
    let (rest, _) = g.without(&in_x);
    if !recognize(&rest, ClassTag::Clique) {
        return Err(Error::Precondition("G ∖ X is not a clique".into()));
    }
    let l = xs.len();
    let clique: Vec<Vertex> = g.vertices().filter(|&v| !in_x.contains(v)).collect();
    let c = clique.len();
    let range = admissible_demands(c, l);
    if !range.contains(&k) {
        return Err(Error::DemandOutOfRange {
            k,
            lo: *range.start(),
            hi: *range.end(),
        });
    }

    let clique_degree = |x: Vertex| g.neighbors(x).iter().filter(|&&w| !in_x.contains(w)).count();
    let (x_low, x_high): (Vec<Vertex>, Vec<Vertex>) = xs.iter().partition(|&&x| clique_degree(x) <= l + 1);
    let mut in_j = g.empty_set();
    for &x in &x_low {
        in_j.extend(g.neighbors(x).iter().copied().filter(|&w| !in_x.contains(w)));
    }
    let j: Vec<Vertex> = in_j.ones().collect();
    let rest_count = c - j.len();

    if rest_count <= 2 * l + 3 {
        return Ok(KernelOutput {
            reduced: Instance::new(g.clone(), s)
                .with_modulator(xs, ClassTag::Clique)
                .with_demand(k),
            applied: false,
            l,
            x_low,
            x_high,
            j,
            k_ids: Vec::new(),
            l_ids: Vec::new(),
            old_to_new: (0..n).map(Some).collect(),
        });
    }

    let keep: Vec<Vertex> = g.vertices().filter(|&v| in_x.contains(v) || in_j.contains(v)).collect();
    let (mut h, _) = g.induced_subgraph(&keep);
    let mut old_to_new = vec![None; n];
    for (i, &v) in keep.iter().enumerate() {
        old_to_new[v] = Some(i);
    }
    let map = |vs: &[Vertex]| -> Vec<Vertex> { vs.iter().map(|&v| old_to_new[v].unwrap()).collect() };
    let (x_low_h, x_high_h, j_h) = (map(&x_low), map(&x_high), map(&j));

    let k_ids: Vec<Vertex> = (0..l + 2).map(|_| h.add_vertex()).collect();
    add_clique(&mut h, &k_ids)?;
    for &a in &k_ids {
        for &b in x_high_h.iter().chain(&j_h) {
            h.add_edge(a, b)?;
        }
    }
    let l_ids: Vec<Vertex> = (0..(l + 1).min(rest_count)).map(|_| h.add_vertex()).collect();
    add_clique(&mut h, &l_ids)?;
    for &a in &l_ids {
        for &b in j_h.iter().chain(&k_ids) {
            h.add_edge(a, b)?;
        }
    }

    let k2 = map_demand(k, c, l, j.len(), k_ids.len(), l_ids.len());
    let xs_h = map(&xs);
    Ok(KernelOutput {
        reduced: Instance::new(h, old_to_new[s].unwrap())
            .with_modulator(xs_h, ClassTag::Clique)
            .with_demand(k2),
        applied: true,
        l,
        x_low: x_low_h,
        x_high: x_high_h,
        j: j_h,
        k_ids,
        l_ids,
        old_to_new,
    })
}

fn add_clique(g: &mut Graph, vs: &[Vertex]) -> Result<()> {
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            g.add_edge(a, b)?;
        }
    }
    Ok(())
}

/// Decides both instances exactly and reports whether the answers agree.
pub fn check_kernel_equivalence(original: &Instance, out: &KernelOutput) -> Result<bool> {
    let k = original
        .demand
        .ok_or_else(|| Error::Precondition("original instance has no demand".into()))?;
    let k2 = out.reduced.demand.expect("kernel output carries a demand");
    if !out.applied {
        return Ok(true);
    }
    let opts = ExactOptions {
        max_vertices: 64,
        ..ExactOptions::unguarded()
    };
    let a = decide_saving_k_with(&original.graph, original.source, k, &opts)?;
    let b = decide_saving_k_with(&out.reduced.graph, out.reduced.source, k2, &opts)?;
    Ok(a == b)
}
