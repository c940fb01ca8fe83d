//! Graph-class recognition and forbidden induced subgraphs.

use super::{connected_component_of, Graph, Vertex, VertexSet};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassTag {
    Clique,
    Cluster,
    Threshold,
    StarForest,
    Split,
    Diameter2Components,
}

impl ClassTag {
    pub const ALL: [ClassTag; 6] = [
        ClassTag::Clique,
        ClassTag::Cluster,
        ClassTag::Threshold,
        ClassTag::StarForest,
        ClassTag::Split,
        ClassTag::Diameter2Components,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::Clique => "clique",
            ClassTag::Cluster => "cluster",
            ClassTag::Threshold => "threshold",
            ClassTag::StarForest => "star_forest",
            ClassTag::Split => "split",
            ClassTag::Diameter2Components => "diameter2_components",
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClassTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown class tag {s:?}"))
    }
}

pub fn recognize(g: &Graph, tag: ClassTag) -> bool {
    match tag {
        ClassTag::Clique => g.is_clique(&g.full_set()),
        ClassTag::Cluster => components(g).iter().all(|c| g.is_clique(c)),
        ClassTag::Threshold => threshold_partition(g).is_some(),
        ClassTag::StarForest => components(g).iter().all(|c| is_star(g, c)),
        ClassTag::Split => is_split(g),
        ClassTag::Diameter2Components => components(g).iter().all(|c| {
            c.ones().all(|v| {
                let d = super::bfs_distances(g, v, &g.empty_set());
                c.ones().all(|w| d[w].is_some_and(|x| x <= 2))
            })
        }),
    }
}

fn components(g: &Graph) -> Vec<VertexSet> {
    let mut seen = g.empty_set();
    let mut out = Vec::new();
    for v in g.vertices() {
        if !seen.contains(v) {
            let c = connected_component_of(g, v, &g.empty_set());
            seen.union_with(&c);
            out.push(c);
        }
    }
    out
}

fn is_star(g: &Graph, comp: &VertexSet) -> bool {
    let size = comp.count_ones(..);
    if size <= 2 {
        return true;
    }
    let edges: usize = comp.ones().map(|v| g.degree(v)).sum::<usize>() / 2;
    edges == size - 1 && comp.ones().any(|v| g.degree(v) == size - 1)
}

/// Hammer–Simeone degree-sequence test.
fn is_split(g: &Graph) -> bool {
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    deg.sort_unstable_by(|a, b| b.cmp(a));
    let m = deg
        .iter()
        .enumerate()
        .filter(|&(i, &d)| d >= i)
        .map(|(i, _)| i + 1)
        .max()
        .unwrap_or(0);
    let head: usize = deg[..m].iter().sum();
    let tail: usize = deg[m..].iter().sum();
    head == m * (m.saturating_sub(1)) + tail
}

/// Clique side of a threshold graph, found by peeling isolated and universal
/// vertices. `Some(in_clique)` iff `g` is threshold; peeled universal
/// vertices (and the last remaining vertex) land on the clique side.
pub fn threshold_partition(g: &Graph) -> Option<Vec<bool>> {
    let n = g.n();
    let mut alive = g.full_set();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut in_clique = vec![false; n];
    for remaining in (1..=n).rev() {
        let v = alive
            .ones()
            .find(|&v| deg[v] == 0 || deg[v] == remaining - 1)?;
        in_clique[v] = deg[v] == remaining - 1;
        alive.set(v, false);
        for &w in g.neighbors(v) {
            if alive.contains(w) {
                deg[w] -= 1;
            }
        }
    }
    Some(in_clique)
}

/// Small graphs used as forbidden induced subgraphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    P3,
    K3,
    P4,
    C4,
    TwoK2,
    C5,
}

impl Pattern {
    pub fn size(self) -> usize {
        match self {
            Pattern::P3 | Pattern::K3 => 3,
            Pattern::P4 | Pattern::C4 | Pattern::TwoK2 => 4,
            Pattern::C5 => 5,
        }
    }

    /// Whether the subgraph induced by `vs` (all distinct) is this pattern.
    fn matches(self, g: &Graph, vs: &[Vertex]) -> bool {
        if vs.len() != self.size() {
            return false;
        }
        let mut degs: Vec<usize> = vs
            .iter()
            .map(|&u| vs.iter().filter(|&&w| g.has_edge(u, w)).count())
            .collect();
        degs.sort_unstable();
        match self {
            Pattern::P3 => degs == [1, 1, 2],
            Pattern::K3 => degs == [2, 2, 2],
            Pattern::P4 => degs == [1, 1, 2, 2],
            Pattern::C4 => degs == [2, 2, 2, 2],
            Pattern::TwoK2 => degs == [1, 1, 1, 1],
            // Five vertices, all of degree two: a 5-cycle (a triangle plus an
            // edge would leave a degree-one vertex).
            Pattern::C5 => degs == [2, 2, 2, 2, 2],
        }
    }
}

/// Forbidden induced subgraphs for each class with a finite obstruction set,
/// smallest first.
pub fn obstruction_patterns(tag: ClassTag) -> Option<&'static [Pattern]> {
    match tag {
        ClassTag::Cluster => Some(&[Pattern::P3]),
        ClassTag::Threshold => Some(&[Pattern::P4, Pattern::C4, Pattern::TwoK2]),
        ClassTag::StarForest => Some(&[Pattern::K3, Pattern::P4, Pattern::C4]),
        ClassTag::Split => Some(&[Pattern::C4, Pattern::TwoK2, Pattern::C5]),
        ClassTag::Clique | ClassTag::Diameter2Components => None,
    }
}

/// First obstruction for `tag` among the vertices of `alive`: smallest pattern
/// size first, then the lexicographically first vertex subset.
///
/// # Panics
/// If `tag` has no finite obstruction set.
pub fn find_obstruction(g: &Graph, tag: ClassTag, alive: &VertexSet) -> Option<Vec<Vertex>> {
    let patterns = obstruction_patterns(tag).expect("class has no finite obstruction set");
    let verts: Vec<Vertex> = alive.ones().collect();
    let mut sizes: Vec<usize> = patterns.iter().map(|p| p.size()).collect();
    sizes.dedup();
    for size in sizes {
        let mut found = None;
        for_each_subset(g, &verts, size, &mut |sub| {
            if patterns.iter().any(|p| p.matches(g, sub)) {
                found = Some(sub.to_vec());
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Calls `f` on every `size`-subset of `items` in lexicographic order until it
/// returns `true`. Partial subsets containing a vertex with more than two
/// neighbors inside the subset are cut, since no pattern has such a vertex.
fn for_each_subset(
    g: &Graph,
    items: &[Vertex],
    size: usize,
    f: &mut impl FnMut(&[Vertex]) -> bool,
) {
    fn rec(
        g: &Graph,
        items: &[Vertex],
        start: usize,
        size: usize,
        cur: &mut Vec<Vertex>,
        f: &mut impl FnMut(&[Vertex]) -> bool,
    ) -> bool {
        if cur.len() == size {
            return f(cur);
        }
        let need = size - cur.len();
        if items.len() < start + need {
            return false;
        }
        for i in start..=items.len() - need {
            cur.push(items[i]);
            let ok = cur
                .iter()
                .all(|&u| cur.iter().filter(|&&w| g.has_edge(u, w)).count() <= 2);
            let stop = ok && rec(g, items, i + 1, size, cur, f);
            cur.pop();
            if stop {
                return true;
            }
        }
        false
    }
    let mut cur = Vec::with_capacity(size);
    rec(g, items, 0, size, &mut cur, f);
}
