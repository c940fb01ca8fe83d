use super::{Graph, Vertex, VertexSet};
use crate::error::{Error, Result};
use std::collections::VecDeque;

pub const LONGEST_PATH_DEFAULT_LIMIT: usize = 25;

/// Shortest-path distances from `src` in `G ∖ blocked`; `None` means
/// unreachable (and is also reported for blocked vertices).
pub fn bfs_distances(g: &Graph, src: Vertex, blocked: &VertexSet) -> Vec<Option<usize>> {
    debug_assert!(!blocked.contains(src));
    let mut dist = vec![None; g.n()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap();
        for &w in g.neighbors(u) {
            if dist[w].is_none() && !blocked.contains(w) {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// The component of `v` in `G ∖ removed`.
pub fn connected_component_of(g: &Graph, v: Vertex, removed: &VertexSet) -> VertexSet {
    debug_assert!(!removed.contains(v));
    let mut seen = g.empty_set();
    seen.insert(v);
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !seen.contains(w) && !removed.contains(w) {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    seen
}

/// Length (in edges) of a longest induced path starting at `src`, by
/// exhaustive search over induced extensions. Refuses graphs with more than
/// [`LONGEST_PATH_DEFAULT_LIMIT`] vertices.
pub fn longest_induced_path_from(g: &Graph, src: Vertex) -> Result<usize> {
    longest_induced_path_from_with_limit(g, src, LONGEST_PATH_DEFAULT_LIMIT)
}

pub fn longest_induced_path_from_with_limit(g: &Graph, src: Vertex, limit: usize) -> Result<usize> {
    if g.n() > limit {
        return Err(Error::TooLarge {
            what: "longest induced path",
            n: g.n(),
            limit,
        });
    }
    // `blocked` holds the path plus every neighbor of a non-final path vertex.
    let mut best = 0;
    let mut blocked = g.empty_set();
    blocked.insert(src);
    extend(g, src, 0, &blocked, &mut best);
    Ok(best)
}

fn extend(g: &Graph, last: Vertex, len: usize, blocked: &VertexSet, best: &mut usize) {
    *best = (*best).max(len);
    if *best == g.n() - 1 {
        return;
    }
    let mut next_blocked = blocked.clone();
    next_blocked.union_with(g.neighbor_set(last));
    for &w in g.neighbors(last) {
        if !blocked.contains(w) {
            extend(g, w, len + 1, &next_blocked, best);
        }
    }
}
