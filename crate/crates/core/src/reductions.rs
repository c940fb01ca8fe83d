//! Gadget constructions from k-clique.
//!
//! All three gadgets share a delay grid `D`: layers of twins, consecutive
//! layers completely joined, the source joined to the first layer and the
//! last layer joined to the vertex copies. The grid buys the firefighter `k`
//! rounds (or `k - 1` for the split and stars variants) before the copies
//! catch fire; those rounds are spent on the copies of a clique.
//!
//! Layout of the produced graph: source, grid (layer by layer), vertex
//! copies, edge vertices, then the universal vertex `z` where present.

use crate::error::{Error, Result};
use crate::graph::{ClassTag, Graph, Instance, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    Diameter2,
    Split,
    StarsPpt,
}

impl GadgetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GadgetKind::Diameter2 => "diam2",
            GadgetKind::Split => "split",
            GadgetKind::StarsPpt => "stars-ppt",
        }
    }
}

impl std::str::FromStr for GadgetKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "diam2" => Ok(GadgetKind::Diameter2),
            "split" => Ok(GadgetKind::Split),
            "stars-ppt" => Ok(GadgetKind::StarsPpt),
            _ => Err(format!("unknown gadget {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub kind: GadgetKind,
    /// Gadget with source, modulator, class tag and demand `k′`.
    pub instance: Instance,
    /// Copy of each input vertex.
    pub vertex_ids: Vec<Vertex>,
    /// Edge vertex of each input edge `(u, v)`, `u < v`, sorted.
    pub edge_ids: Vec<((Vertex, Vertex), Vertex)>,
    /// Grid layers, first layer first.
    pub grid: Vec<Vec<Vertex>>,
    pub z: Option<Vertex>,
}

pub fn binomial2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Demands for which the gadget is meant to be used: `k ≥ 2`, at most `n`,
/// and fewer than `m` clique edges, so that an edge outside the clique is left
/// to defend in the last round. The stars variant also needs `k ≤ |X| + 1`.
pub fn admissible_k(kind: GadgetKind, g: &Graph, cover_size: usize) -> Vec<usize> {
    (2..=g.n())
        .filter(|&k| binomial2(k) < g.m())
        .filter(|&k| kind != GadgetKind::StarsPpt || k <= cover_size + 1)
        .collect()
}

fn sorted_edges(g: &Graph) -> Vec<(Vertex, Vertex)> {
    let mut e: Vec<(Vertex, Vertex)> = g.edges().map(|(u, v)| (u.min(v), u.max(v))).collect();
    e.sort_unstable();
    e
}

type Skeleton = (Graph, Vec<Vec<Vertex>>, Vec<Vertex>, Vec<((Vertex, Vertex), Vertex)>);

/// Source, grid with `layers × width` vertices, copies of the input vertices
/// joined to the last layer, and one vertex per input edge.
fn skeleton(g: &Graph, layers: usize, width: usize) -> Result<Skeleton> {
    let edges = sorted_edges(g);
    let mut h = Graph::new(1 + layers * width + g.n() + edges.len());
    let grid: Vec<Vec<Vertex>> = (0..layers)
        .map(|i| (0..width).map(|j| 1 + i * width + j).collect())
        .collect();
    let copy: Vec<Vertex> = (0..g.n()).map(|v| 1 + layers * width + v).collect();
    let edge_ids: Vec<((Vertex, Vertex), Vertex)> = edges
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, 1 + layers * width + g.n() + i))
        .collect();

    for &d in grid.first().map(Vec::as_slice).unwrap_or(&[]) {
        h.add_edge(0, d)?;
    }
    for pair in grid.windows(2) {
        for &a in &pair[0] {
            for &b in &pair[1] {
                h.add_edge(a, b)?;
            }
        }
    }
    let last: &[Vertex] = grid.last().map(Vec::as_slice).unwrap_or(&[0]);
    for &d in last {
        for &c in &copy {
            h.add_edge(d, c)?;
        }
    }
    for &((u, v), e) in &edge_ids {
        h.add_edge(e, copy[u])?;
        h.add_edge(e, copy[v])?;
    }
    Ok((h, grid, copy, edge_ids))
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Precondition(format!("gadgets need k ≥ 2, got {k}")));
    }
    Ok(())
}

fn modulator(grid: &[Vec<Vertex>], extra: &[Vertex]) -> Vec<Vertex> {
    let mut x: Vec<Vertex> = std::iter::once(0)
        .chain(grid.iter().flatten().copied())
        .chain(extra.iter().copied())
        .collect();
    x.sort_unstable();
    x
}

/// `k` grid layers of `k + 1` twins; `z` is joined to every vertex and edge
/// vertex and to the last grid layer, so it catches fire together with the
/// vertex copies. Demand `k + C(k,2) + 2`; modulator `{s} ∪ D`, leaving one
/// component of diameter two around `z`.
pub fn reduce_clique_to_diameter2(g: &Graph, k: usize) -> Result<ReductionOutput> {
    check_k(k)?;
    let (mut h, grid, vertex_ids, edge_ids) = skeleton(g, k, k + 1)?;
    let z = h.add_vertex();
    for &c in vertex_ids.iter().chain(edge_ids.iter().map(|(_, e)| e)) {
        h.add_edge(z, c)?;
    }
    for &d in &grid[k - 1] {
        h.add_edge(z, d)?;
    }
    let x = modulator(&grid, &[]);
    let instance = Instance::new(h, 0)
        .with_modulator(x, ClassTag::Diameter2Components)
        .with_demand(k + binomial2(k) + 2);
    Ok(ReductionOutput {
        kind: GadgetKind::Diameter2,
        instance,
        vertex_ids,
        edge_ids,
        grid,
        z: Some(z),
    })
}

/// `k − 1` grid layers of `k` twins, vertex copies made a clique, no `z`.
/// Demand `k + C(k,2) + 1`; modulator `{s} ∪ D`.
pub fn reduce_clique_to_split(g: &Graph, k: usize) -> Result<ReductionOutput> {
    check_k(k)?;
    let (mut h, grid, vertex_ids, edge_ids) = skeleton(g, k - 1, k)?;
    for (i, &a) in vertex_ids.iter().enumerate() {
        for &b in &vertex_ids[i + 1..] {
            if !h.has_edge(a, b) {
                h.add_edge(a, b)?;
            }
        }
    }
    let x = modulator(&grid, &[]);
    let instance = Instance::new(h, 0)
        .with_modulator(x, ClassTag::Split)
        .with_demand(k + binomial2(k) + 1);
    Ok(ReductionOutput {
        kind: GadgetKind::Split,
        instance,
        vertex_ids,
        edge_ids,
        grid,
        z: None,
    })
}

/// Like the split gadget but the copies keep the edges of `G` (no clique),
/// and the modulator `{s} ∪ D ∪ X` leaves a star forest because `X` covers
/// every edge. Demand `k + C(k,2) + 1`.
pub fn reduce_cliquevc_to_stars(g: &Graph, cover: &[Vertex], k: usize) -> Result<ReductionOutput> {
    check_k(k)?;
    let mut in_cover = g.empty_set();
    for &v in cover {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        in_cover.insert(v);
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| !in_cover.contains(u) && !in_cover.contains(v)) {
        return Err(Error::Precondition(format!(
            "cover misses edge {}-{}",
            u + 1,
            v + 1
        )));
    }
    let l = in_cover.count_ones(..);
    if k > l + 1 {
        return Err(Error::DemandOutOfRange { k, lo: 2, hi: l + 1 });
    }
    let (mut h, grid, vertex_ids, edge_ids) = skeleton(g, k - 1, k)?;
    for (u, v) in g.edges() {
        h.add_edge(vertex_ids[u], vertex_ids[v])?;
    }
    let cover_ids: Vec<Vertex> = in_cover.ones().map(|v| vertex_ids[v]).collect();
    let x = modulator(&grid, &cover_ids);
    let instance = Instance::new(h, 0)
        .with_modulator(x, ClassTag::StarForest)
        .with_demand(k + binomial2(k) + 1);
    Ok(ReductionOutput {
        kind: GadgetKind::StarsPpt,
        instance,
        vertex_ids,
        edge_ids,
        grid,
        z: None,
    })
}

/// Dispatches on the gadget kind; `cover` is only used by the stars variant.
pub fn reduce(kind: GadgetKind, g: &Graph, k: usize, cover: &[Vertex]) -> Result<ReductionOutput> {
    match kind {
        GadgetKind::Diameter2 => reduce_clique_to_diameter2(g, k),
        GadgetKind::Split => reduce_clique_to_split(g, k),
        GadgetKind::StarsPpt => reduce_cliquevc_to_stars(g, cover, k),
    }
}
