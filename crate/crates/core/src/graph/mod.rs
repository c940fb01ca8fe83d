//! Undirected simple graphs with dense `0..n` vertex ids.
//!
//! Every vertex keeps both a sorted neighbor list and a neighbor bitset; the
//! search code in this crate works almost exclusively on bitsets.

mod classes;
mod io;
mod traversal;

pub use classes::{
    find_obstruction, obstruction_patterns, recognize, threshold_partition, ClassTag, Pattern,
};
pub use io::Instance;
pub use traversal::{
    bfs_distances, connected_component_of, longest_induced_path_from,
    longest_induced_path_from_with_limit, LONGEST_PATH_DEFAULT_LIMIT,
};

use crate::error::{Error, Result};
use fixedbitset::FixedBitSet;

pub type Vertex = usize;
pub type VertexSet = FixedBitSet;

/// Builds a vertex set of capacity `n` from a list of members.
pub fn vertex_set(n: usize, members: impl IntoIterator<Item = Vertex>) -> VertexSet {
    let mut set = FixedBitSet::with_capacity(n);
    for v in members {
        set.insert(v);
    }
    set
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    nbrs: Vec<FixedBitSet>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            nbrs: vec![FixedBitSet::with_capacity(n); n],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.insert_unchecked(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.insert_unchecked(n - 1, 0);
        }
        g
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.insert_unchecked(0, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.nbrs[u].contains(v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.insert_unchecked(u, v);
        Ok(())
    }

    fn insert_unchecked(&mut self, u: Vertex, v: Vertex) {
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.nbrs[u].insert(v);
        self.nbrs[v].insert(u);
        self.m += 1;
    }

    /// Appends an isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> Vertex {
        let n = self.n() + 1;
        for set in &mut self.nbrs {
            set.grow(n);
        }
        self.adj.push(Vec::new());
        self.nbrs.push(FixedBitSet::with_capacity(n));
        n - 1
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn neighbor_set(&self, v: Vertex) -> &FixedBitSet {
        &self.nbrs[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.nbrs[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn empty_set(&self) -> VertexSet {
        FixedBitSet::with_capacity(self.n())
    }

    pub fn full_set(&self) -> VertexSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// Subgraph induced by `keep` (taken in the given order). Returns the graph
    /// and the map from new ids to old ids.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = new_id[w];
                if j != usize::MAX && i < j {
                    g.insert_unchecked(i, j);
                }
            }
        }
        (g, keep.to_vec())
    }

    /// `G ∖ removed`, with surviving vertices renumbered in increasing order.
    pub fn without(&self, removed: &VertexSet) -> (Graph, Vec<Vertex>) {
        let keep: Vec<Vertex> = self.vertices().filter(|&v| !removed.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    g.insert_unchecked(u, v);
                }
            }
        }
        g
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        set.ones().all(|v| {
            let mut others = set.clone();
            others.set(v, false);
            others.is_subset(&self.nbrs[v])
        })
    }

    /// Open neighborhood of a vertex set, excluding the set itself.
    pub fn neighborhood_of(&self, set: &VertexSet) -> VertexSet {
        let mut out = self.empty_set();
        for v in set.ones() {
            out.union_with(&self.nbrs[v]);
        }
        out.difference_with(set);
        out
    }

    /// Twin classes: vertices with identical open neighborhoods (false twins)
    /// or identical closed neighborhoods (true twins) share a class id. The
    /// id of a class is its smallest member.
    pub fn twin_classes(&self) -> Vec<Vertex> {
        let n = self.n();
        let mut class: Vec<Vertex> = (0..n).collect();
        for u in 0..n {
            if class[u] != u {
                continue;
            }
            for v in u + 1..n {
                if class[v] != v {
                    continue;
                }
                let twins = if self.has_edge(u, v) {
                    let mut a = self.nbrs[u].clone();
                    a.insert(u);
                    let mut b = self.nbrs[v].clone();
                    b.insert(v);
                    a == b
                } else {
                    self.nbrs[u] == self.nbrs[v]
                };
                if twins {
                    class[v] = u;
                }
            }
        }
        class
    }
}
