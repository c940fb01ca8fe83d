//! Modulators by bounded branching on forbidden induced subgraphs.
//!
//! Every obstruction has to lose at least one vertex, so branching over the at
//! most five vertices of the first obstruction found, to depth `k`, decides
//! whether a modulator of size `k` exists. Budgets are tried in increasing
//! order, so the returned modulator is also a minimum one.

use crate::error::{Error, Result};
use crate::graph::{find_obstruction, obstruction_patterns, recognize, vertex_set, ClassTag, Graph, Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulator {
    /// Sorted vertex ids.
    pub vertices: Vec<Vertex>,
    pub class_tag: ClassTag,
    pub budget: usize,
}

impl Modulator {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Smallest modulator of size at most `k` to one of the classes with a finite
/// obstruction set, or `None`. The clique tag is delegated to
/// [`find_clique_modulator`].
pub fn find_modulator(g: &Graph, tag: ClassTag, k: usize) -> Result<Option<Modulator>> {
    if tag == ClassTag::Clique {
        return Ok(find_clique_modulator(g, k));
    }
    if obstruction_patterns(tag).is_none() {
        return Err(Error::Precondition(format!("no modulator finder for {tag}")));
    }
    let mut removed = g.empty_set();
    for budget in 0..=k.min(g.n()) {
        if branch_obstruction(g, tag, budget, &mut removed) {
            return Ok(Some(Modulator {
                vertices: removed.ones().collect(),
                class_tag: tag,
                budget: k,
            }));
        }
    }
    Ok(None)
}

fn branch_obstruction(g: &Graph, tag: ClassTag, budget: usize, removed: &mut VertexSet) -> bool {
    let mut alive = g.full_set();
    alive.difference_with(removed);
    let Some(obs) = find_obstruction(g, tag, &alive) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for v in obs {
        removed.insert(v);
        if branch_obstruction(g, tag, budget - 1, removed) {
            return true;
        }
        removed.set(v, false);
    }
    false
}

/// Distance to clique: vertex cover of the complement, by two-way branching
/// on the first non-adjacent pair.
pub fn find_clique_modulator(g: &Graph, k: usize) -> Option<Modulator> {
    let mut removed = g.empty_set();
    (0..=k.min(g.n()))
        .find(|&budget| branch_pair(g, budget, &mut removed))
        .map(|_| Modulator {
            vertices: removed.ones().collect(),
            class_tag: ClassTag::Clique,
            budget: k,
        })
}

fn branch_pair(g: &Graph, budget: usize, removed: &mut VertexSet) -> bool {
    let pair = g.vertices().filter(|&u| !removed.contains(u)).find_map(|u| {
        (u + 1..g.n())
            .find(|&v| !removed.contains(v) && !g.has_edge(u, v))
            .map(|v| (u, v))
    });
    let Some((u, v)) = pair else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for w in [u, v] {
        removed.insert(w);
        if branch_pair(g, budget - 1, removed) {
            return true;
        }
        removed.set(w, false);
    }
    false
}

/// `|X| ≤ budget` and `G ∖ X` belongs to the class.
pub fn verify_modulator(g: &Graph, m: &Modulator) -> bool {
    if m.vertices.len() > m.budget || m.vertices.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let (rest, _) = g.without(&vertex_set(g.n(), m.vertices.iter().copied()));
    recognize(&rest, m.class_tag)
}
