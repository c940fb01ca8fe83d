//! FPT solver for a modulator `X` to threshold graphs.
//!
//! Vertices outside `X` are grouped into types by their neighborhood in `X`
//! and by the side (clique or independent) they take in `G ∖ X`. Within a type
//! neighborhoods are nested, and defending the member with the largest
//! neighborhood is never worse than defending another. A strategy therefore
//! reduces to a template: a sequence of modulator vertices and type names.

use crate::error::{Error, Result};
use crate::exact::SolveResult;
use crate::fire::{minimize, simulate, FireState, SimOutcome, Strategy};
use crate::graph::{threshold_partition, vertex_set, Graph, Vertex, VertexSet};
use rayon::prelude::*;
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdType {
    /// `N(v) ∩ X` shared by all members, sorted.
    pub neighborhood: Vec<Vertex>,
    pub clique_side: bool,
    /// Members in nesting order: degree in `G ∖ X` descending, then id.
    pub members: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypePartition {
    pub modulator: Vec<Vertex>,
    /// Nonempty types only.
    pub types: Vec<ThresholdType>,
    pub type_of: Vec<Option<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Modulator(Vertex),
    Type(usize),
}

pub type TemplateSequence = Vec<Symbol>;

pub fn build_type_partition(g: &Graph, x: &[Vertex]) -> Result<TypePartition> {
    check_modulator(g, x)?;
    let in_x = vertex_set(g.n(), x.iter().copied());
    let (rest, old_id) = g.without(&in_x);
    let side = threshold_partition(&rest)
        .ok_or_else(|| Error::Precondition("G ∖ X is not a threshold graph".into()))?;

    let mut keyed: Vec<((Vec<Vertex>, bool), Vertex, usize)> = old_id
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut y: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| in_x.contains(w)).collect();
            y.sort_unstable();
            ((y, side[i]), v, rest.degree(i))
        })
        .collect();
    // Clique side first, then by neighborhood; within a type by nesting order.
    keyed.sort_by(|a, b| {
        (!a.0 .1, &a.0 .0)
            .cmp(&(!b.0 .1, &b.0 .0))
            .then(b.2.cmp(&a.2))
            .then(a.1.cmp(&b.1))
    });

    let mut types: Vec<ThresholdType> = Vec::new();
    let mut type_of = vec![None; g.n()];
    for ((y, clique_side), v, _) in keyed {
        match types.last_mut() {
            Some(t) if t.neighborhood == y && t.clique_side == clique_side => t.members.push(v),
            _ => types.push(ThresholdType {
                neighborhood: y,
                clique_side,
                members: vec![v],
            }),
        }
        type_of[v] = Some(types.len() - 1);
    }
    let mut modulator = x.to_vec();
    modulator.sort_unstable();
    Ok(TypePartition {
        modulator,
        types,
        type_of,
    })
}

fn check_modulator(g: &Graph, x: &[Vertex]) -> Result<()> {
    let mut seen = g.empty_set();
    for &v in x {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        if seen.put(v) {
            return Err(Error::Precondition(format!("vertex {} repeated in modulator", v + 1)));
        }
    }
    Ok(())
}

/// The vertex a symbol stands for in `state`: modulator vertices literally
/// (if still free), types by their first free member in nesting order.
fn instantiate(g: &Graph, part: &TypePartition, state: &FireState, sym: Symbol) -> Option<Vertex> {
    match sym {
        Symbol::Modulator(x) => state.is_free(x).then_some(x),
        Symbol::Type(t) => {
            let members = &part.types.get(t)?.members;
            let v = members.iter().copied().find(|&v| state.is_free(v))?;
            debug_assert!(members.iter().filter(|&&w| state.is_free(w)).all(|w| {
                let mut closed = g.neighbor_set(v).clone();
                closed.insert(v);
                g.neighbor_set(*w).is_subset(&closed)
            }));
            Some(v)
        }
    }
}

/// Replays a template round by round and simulates the concrete sequence.
/// A symbol that cannot be instantiated (exhausted type, modulator vertex
/// already burned or defended) yields an invalid outcome.
pub fn instantiate_and_simulate(
    g: &Graph,
    s: Vertex,
    part: &TypePartition,
    tmpl: &[Symbol],
) -> Result<(Strategy, SimOutcome)> {
    let mut state = FireState::new(g, s);
    let mut seq = Vec::with_capacity(tmpl.len());
    for (i, &sym) in tmpl.iter().enumerate() {
        match instantiate(g, part, &state, sym) {
            Some(v) => {
                seq.push(v);
                state.play(g, Some(v));
            }
            None => {
                let strat = Strategy(seq);
                let mut out = simulate(g, s, &strat)?;
                out.valid = false;
                out.failed_at = Some(i);
                return Ok((strat, out));
            }
        }
    }
    let strat = Strategy(seq);
    let out = simulate(g, s, &strat)?;
    Ok((strat, out))
}

/// Candidate optimum: saved, then shorter, then lexicographically smaller.
#[derive(Clone, Debug)]
struct Incumbent {
    saved: usize,
    seq: Vec<Vertex>,
}

impl Incumbent {
    fn key_cmp(&self, other: &Incumbent) -> Ordering {
        other
            .saved
            .cmp(&self.saved)
            .then(self.seq.len().cmp(&other.seq.len()))
            .then(self.seq.cmp(&other.seq))
    }
}

struct TemplateSearch<'a> {
    g: &'a Graph,
    part: &'a TypePartition,
    alphabet: &'a [Symbol],
    max_len: usize,
    best: Incumbent,
    explored: u64,
}

impl TemplateSearch<'_> {
    fn visit(&mut self, state: &FireState, seq: &mut Vec<Vertex>) {
        self.explored += 1;
        let g = self.g;
        let here = Incumbent {
            saved: g.n() - state.final_burned_count(g),
            seq: seq.clone(),
        };
        if here.key_cmp(&self.best) == Ordering::Less {
            self.best = here;
        }
        if seq.len() == self.max_len || !state.is_active(g) {
            return;
        }
        let front = state.frontier(g);
        let upper = g.n() - state.burned_count() - front.count_ones(..).saturating_sub(1);
        if upper < self.best.saved || (upper == self.best.saved && seq.len() + 1 > self.best.seq.len()) {
            return;
        }
        let threatened = state.threatened(g);
        for &sym in self.alphabet {
            self.try_symbol(state, seq, sym, &threatened);
        }
    }

    fn try_symbol(
        &mut self,
        state: &FireState,
        seq: &mut Vec<Vertex>,
        sym: Symbol,
        threatened: &VertexSet,
    ) {
        let Some(v) = instantiate(self.g, self.part, state, sym) else {
            return;
        };
        // Defending a vertex the fire cannot reach changes nothing.
        if !threatened.contains(v) {
            return;
        }
        let mut next = state.clone();
        next.play(self.g, Some(v));
        seq.push(v);
        self.visit(&next, seq);
        seq.pop();
    }
}

/// Optimal strategy for `G` given a modulator `X` to threshold graphs. The
/// source is added to `X` if missing.
pub fn solve_threshold(g: &Graph, s: Vertex, x: &[Vertex]) -> Result<SolveResult> {
    if s >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: s, n: g.n() });
    }
    let mut xs = x.to_vec();
    if !xs.contains(&s) {
        xs.push(s);
    }
    let part = build_type_partition(g, &xs)?;
    let max_len = 2 * xs.len() + 2;

    let mut alphabet: Vec<Symbol> = part
        .modulator
        .iter()
        .filter(|&&v| v != s)
        .map(|&v| Symbol::Modulator(v))
        .collect();
    alphabet.extend((0..part.types.len()).map(Symbol::Type));

    let root = FireState::new(g, s);
    let empty = Incumbent {
        saved: g.n() - root.final_burned_count(g),
        seq: Vec::new(),
    };
    let threatened = root.threatened(g);

    let results: Vec<(Incumbent, u64)> = alphabet
        .par_iter()
        .map(|&sym| {
            let mut search = TemplateSearch {
                g,
                part: &part,
                alphabet: &alphabet,
                max_len,
                best: empty.clone(),
                explored: 0,
            };
            if max_len > 0 {
                search.try_symbol(&root, &mut Vec::new(), sym, &threatened);
            }
            (search.best, search.explored)
        })
        .collect();

    let explored = 1 + results.iter().map(|r| r.1).sum::<u64>();
    let best = results
        .into_iter()
        .map(|r| r.0)
        .fold(empty, |a, b| if b.key_cmp(&a) == Ordering::Less { b } else { a });
    let strategy = minimize(g, s, &Strategy(best.seq))?;
    Ok(SolveResult {
        best_strategy: strategy,
        best_saved: best.saved,
        explored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::solve_exact;

    #[test]
    fn partition_of_clique_behind_one_vertex() {
        // x = 3 adjacent to the triangle 0, 1, 2.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (3, 2)]).unwrap();
        let part = build_type_partition(&g, &[3]).unwrap();
        let sizes: Vec<usize> = part.types.iter().map(|t| t.members.len()).collect();
        // The last peeled vertex may sit on either side; all share N(v) ∩ X.
        assert_eq!(sizes.iter().sum::<usize>(), 3);
        assert!(part.types.iter().all(|t| t.neighborhood == vec![3]));
    }

    #[test]
    fn empty_modulator_partition() {
        let g = Graph::star(3);
        let part = build_type_partition(&g, &[]).unwrap();
        assert!(part.types.len() <= 2);
        assert!(part.types.iter().all(|t| t.neighborhood.is_empty()));
    }

    #[test]
    fn rejects_non_threshold() {
        assert!(build_type_partition(&Graph::cycle(4), &[]).is_err());
    }

    #[test]
    fn modulator_cut_vertex() {
        // s = 0 - x = 1 - triangle {2, 3, 4}.
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (2, 4)]).unwrap();
        let part = build_type_partition(&g, &[0, 1]).unwrap();
        let (seq, out) = instantiate_and_simulate(&g, 0, &part, &[Symbol::Modulator(1)]).unwrap();
        assert_eq!(seq.0, vec![1]);
        assert_eq!(out.saved_count, 4);
        let r = solve_threshold(&g, 0, &[1]).unwrap();
        assert_eq!(r.best_saved, 4);
    }

    #[test]
    fn exhausted_type_is_invalid() {
        let g = Graph::star(2);
        // s = 0 is the center; both leaves form one type.
        let part = build_type_partition(&g, &[0]).unwrap();
        let t = part.type_of[1].unwrap();
        let (_, out) = instantiate_and_simulate(&g, 0, &part, &[Symbol::Type(t)]).unwrap();
        assert!(out.valid);
        let (_, out) = instantiate_and_simulate(&g, 0, &part, &[Symbol::Type(t); 3]).unwrap();
        assert!(!out.valid);
    }

    #[test]
    fn star_behind_source() {
        // s = 0 adjacent to the center 1 of a star with leaves 2..5.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        let r = solve_threshold(&g, 0, &[0]).unwrap();
        assert_eq!(r.best_saved, 5);
        assert_eq!(r.best_strategy.0, vec![1]);
        assert_eq!(r.best_saved, solve_exact(&g, 0, None).unwrap().best_saved);
    }
}
