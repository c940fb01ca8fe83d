//! Exhaustive optimal solver.
//!
//! A valid strategy `S` burns exactly the vertices reachable from the source in
//! `G ∖ S`, so an optimal minimal strategy is determined by its burned set `R`:
//! `S` is the outer boundary `N(R)`, and `S` can be scheduled iff, with `d(v)`
//! the round in which `v` joins the fire front, `|{v ∈ S : d(v) ≤ t}| ≤ t` for
//! every `t`. The search grows `R` one BFS layer at a time and decides, for
//! each vertex of the new front, whether it is protected (deadline = current
//! round) or burns. Twins on the same front are interchangeable, so only the
//! number protected per twin class is branched on.
//!
//! [`solve_plain`] is the literal alternative: depth-first enumeration of
//! defense sequences, each evaluated by the fire process. It is kept as an
//! independent oracle.

use crate::error::{Error, Result};
use crate::fire::{FireState, Strategy};
use crate::graph::{longest_induced_path_from, Graph, Vertex, VertexSet};
use std::cmp::Ordering;

pub const EXACT_DEFAULT_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub best_strategy: Strategy,
    pub best_saved: usize,
    /// Search nodes (or sequences, for [`solve_plain`]) evaluated.
    pub explored: u64,
}

/// Maximum number of defended vertices considered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LengthBound {
    /// Longest induced path from the source (never cuts off an optimum).
    #[default]
    InducedPath,
    Fixed(usize),
    Unbounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactOptions {
    pub length_bound: LengthBound,
    pub max_vertices: usize,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            length_bound: LengthBound::InducedPath,
            max_vertices: EXACT_DEFAULT_LIMIT,
        }
    }
}

impl ExactOptions {
    /// No size guard and no length restriction; for generated gadgets.
    pub fn unguarded() -> Self {
        ExactOptions {
            length_bound: LengthBound::Unbounded,
            max_vertices: usize::MAX,
        }
    }
}

fn check_input(g: &Graph, s: Vertex, opts: &ExactOptions) -> Result<usize> {
    if s >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: s, n: g.n() });
    }
    if g.n() > opts.max_vertices {
        return Err(Error::TooLarge {
            what: "exact solver",
            n: g.n(),
            limit: opts.max_vertices,
        });
    }
    Ok(match opts.length_bound {
        LengthBound::InducedPath => longest_induced_path_from(g, s)?,
        LengthBound::Fixed(l) => l,
        LengthBound::Unbounded => g.n(),
    })
}

/// Optimal strategy: maximum saved, then shortest, then lexicographically
/// smallest. `length_bound` defaults to the longest induced path from `s`.
pub fn solve_exact(g: &Graph, s: Vertex, length_bound: Option<usize>) -> Result<SolveResult> {
    let opts = ExactOptions {
        length_bound: length_bound.map_or(LengthBound::InducedPath, LengthBound::Fixed),
        ..ExactOptions::default()
    };
    solve_exact_with(g, s, &opts)
}

pub fn solve_exact_with(g: &Graph, s: Vertex, opts: &ExactOptions) -> Result<SolveResult> {
    let max_len = check_input(g, s, opts)?;
    let mut search = FrontSearch::new(g, max_len, None);
    search.run(s);
    let best = search.best.expect("the empty strategy is always feasible");
    Ok(SolveResult {
        best_saved: g.n() - best.burned,
        best_strategy: Strategy(best.sequence),
        explored: search.explored,
    })
}

/// Whether some strategy saves at least `k` vertices.
pub fn decide_saving_k(g: &Graph, s: Vertex, k: usize) -> Result<bool> {
    decide_saving_k_with(g, s, k, &ExactOptions::default())
}

pub fn decide_saving_k_with(g: &Graph, s: Vertex, k: usize, opts: &ExactOptions) -> Result<bool> {
    Ok(witness_saving_k(g, s, k, opts)?.is_some())
}

/// A strategy saving at least `k` vertices, if one exists. The returned
/// strategy is not necessarily optimal.
pub fn witness_saving_k(
    g: &Graph,
    s: Vertex,
    k: usize,
    opts: &ExactOptions,
) -> Result<Option<Strategy>> {
    let max_len = check_input(g, s, opts)?;
    if k > g.n() - 1 {
        return Ok(None);
    }
    let mut search = FrontSearch::new(g, max_len, Some(k));
    search.run(s);
    Ok(search
        .best
        .filter(|b| g.n() - b.burned >= k)
        .map(|b| Strategy(b.sequence)))
}

struct Best {
    burned: usize,
    sequence: Vec<Vertex>,
}

struct FrontSearch<'a> {
    g: &'a Graph,
    twin: Vec<Vertex>,
    max_len: usize,
    /// Decision mode: stop as soon as this many vertices are saved.
    target: Option<usize>,
    best: Option<Best>,
    explored: u64,
    done: bool,
}

impl<'a> FrontSearch<'a> {
    fn new(g: &'a Graph, max_len: usize, target: Option<usize>) -> Self {
        FrontSearch {
            g,
            twin: g.twin_classes(),
            max_len,
            target,
            best: None,
            explored: 0,
            done: false,
        }
    }

    fn run(&mut self, s: Vertex) {
        let mut burned = self.g.empty_set();
        burned.insert(s);
        let layer = burned.clone();
        let mut protected = Vec::new();
        self.expand(&burned, 1, &layer, 0, &mut protected);
    }

    /// `layer` is the set that caught fire in round `t`; `protected` holds
    /// (vertex, deadline) pairs.
    fn expand(
        &mut self,
        burned: &VertexSet,
        burned_count: usize,
        layer: &VertexSet,
        t: usize,
        protected: &mut Vec<(Vertex, usize)>,
    ) {
        if self.done {
            return;
        }
        self.explored += 1;
        let g = self.g;
        let mut front = g.empty_set();
        for v in layer.ones() {
            front.union_with(g.neighbor_set(v));
        }
        front.difference_with(burned);
        for &(v, _) in protected.iter() {
            front.set(v, false);
        }
        let front_size = front.count_ones(..);
        if front_size == 0 {
            self.leaf(burned_count, protected);
            return;
        }
        let budget = (t + 1 - protected.len()).min(self.max_len - protected.len());
        let lower = burned_count + front_size.saturating_sub(budget);
        if self.pruned(lower, protected.len()) {
            return;
        }

        // Group the front by twin class; members sorted by id.
        let mut groups: Vec<Vec<Vertex>> = Vec::new();
        for v in front.ones() {
            let c = self.twin[v];
            match groups.iter_mut().find(|grp| self.twin[grp[0]] == c) {
                Some(grp) => grp.push(v),
                None => groups.push(vec![v]),
            }
        }
        let mut counts = vec![0usize; groups.len()];
        self.branch(&groups, 0, budget, &mut counts, burned, burned_count, &front, t, protected);
    }

    #[allow(clippy::too_many_arguments)]
    fn branch(
        &mut self,
        groups: &[Vec<Vertex>],
        idx: usize,
        budget: usize,
        counts: &mut Vec<usize>,
        burned: &VertexSet,
        burned_count: usize,
        front: &VertexSet,
        t: usize,
        protected: &mut Vec<(Vertex, usize)>,
    ) {
        if self.done {
            return;
        }
        if idx == groups.len() {
            let before = protected.len();
            let mut next = front.clone();
            for (grp, &c) in groups.iter().zip(counts.iter()) {
                for &v in &grp[..c] {
                    next.set(v, false);
                    protected.push((v, t + 1));
                }
            }
            let mut burned2 = burned.clone();
            burned2.union_with(&next);
            let added = next.count_ones(..);
            self.expand(&burned2, burned_count + added, &next, t + 1, protected);
            protected.truncate(before);
            return;
        }
        // Protect more first: good incumbents early.
        for c in (0..=budget.min(groups[idx].len())).rev() {
            counts[idx] = c;
            self.branch(groups, idx + 1, budget - c, counts, burned, burned_count, front, t, protected);
        }
        counts[idx] = 0;
    }

    fn pruned(&self, lower_burned: usize, len: usize) -> bool {
        if let Some(k) = self.target {
            return self.g.n() - lower_burned.min(self.g.n()) < k;
        }
        match &self.best {
            None => false,
            Some(b) => (lower_burned, len).cmp(&(b.burned, b.sequence.len())) == Ordering::Greater,
        }
    }

    fn leaf(&mut self, burned: usize, protected: &[(Vertex, usize)]) {
        let key = (burned, protected.len());
        let better = match &self.best {
            None => true,
            Some(b) => match key.cmp(&(b.burned, b.sequence.len())) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => {
                    if self.target.is_some() {
                        false
                    } else {
                        lexmin_schedule(protected) < b.sequence
                    }
                }
            },
        };
        if better {
            self.best = Some(Best {
                burned,
                sequence: lexmin_schedule(protected),
            });
        }
        if let Some(k) = self.target {
            if self.g.n() - burned >= k {
                self.done = true;
            }
        }
    }
}

/// Lexicographically smallest ordering of `items` in which every vertex sits
/// at a position (1-based) no later than its deadline. Assumes one exists.
pub fn lexmin_schedule(items: &[(Vertex, usize)]) -> Vec<Vertex> {
    let mut rest: Vec<(Vertex, usize)> = items.to_vec();
    rest.sort_unstable();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let pos = out.len() + 1;
        let pick = (0..rest.len())
            .find(|&i| rest[i].1 >= pos && feasible_without(&rest, i, pos))
            .expect("deadlines admit a schedule");
        out.push(rest.remove(pick).0);
    }
    out
}

/// Whether `rest` minus entry `skip` fits positions `pos+1, pos+2, ...`.
fn feasible_without(rest: &[(Vertex, usize)], skip: usize, pos: usize) -> bool {
    let mut deadlines: Vec<usize> = rest
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &(_, d))| d)
        .collect();
    deadlines.sort_unstable();
    deadlines.iter().enumerate().all(|(r, &d)| d > pos + r)
}

/// Compares two candidate optima under the solver tie-break.
fn better_than(saved: usize, seq: &[Vertex], best: &Option<(usize, Vec<Vertex>)>) -> bool {
    match best {
        None => true,
        Some((bs, bseq)) => match saved.cmp(bs) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => (seq.len(), seq) < (bseq.len(), bseq.as_slice()),
        },
    }
}

/// Calls `f` with every valid defense sequence of length at most `max_len`
/// (sequences are not extended once the fire has stopped) and the fire state
/// after it has burned out.
pub fn for_each_valid_sequence(
    g: &Graph,
    s: Vertex,
    max_len: usize,
    f: &mut impl FnMut(&[Vertex], &FireState),
) {
    fn rec(
        g: &Graph,
        state: &FireState,
        seq: &mut Vec<Vertex>,
        max_len: usize,
        f: &mut impl FnMut(&[Vertex], &FireState),
    ) {
        let mut done = state.clone();
        done.burn_out(g);
        f(seq, &done);
        if seq.len() == max_len || !state.is_active(g) {
            return;
        }
        for v in g.vertices() {
            if state.is_free(v) {
                let mut next = state.clone();
                next.play(g, Some(v));
                seq.push(v);
                rec(g, &next, seq, max_len, f);
                seq.pop();
            }
        }
    }
    let state = FireState::new(g, s);
    rec(g, &state, &mut Vec::new(), max_len, f);
}

/// Plain enumeration of defense sequences with prefix-validity pruning only.
pub fn solve_plain(g: &Graph, s: Vertex, length_bound: Option<usize>) -> Result<SolveResult> {
    let opts = ExactOptions {
        length_bound: length_bound.map_or(LengthBound::InducedPath, LengthBound::Fixed),
        ..ExactOptions::default()
    };
    let max_len = check_input(g, s, &opts)?;
    let mut best: Option<(usize, Vec<Vertex>)> = None;
    let mut explored = 0u64;
    for_each_valid_sequence(g, s, max_len, &mut |seq, state| {
        explored += 1;
        let saved = g.n() - state.burned_count();
        if better_than(saved, seq, &best) {
            best = Some((saved, seq.to_vec()));
        }
    });
    let (best_saved, seq) = best.expect("the empty sequence is enumerated");
    Ok(SolveResult {
        best_strategy: Strategy(seq),
        best_saved,
        explored,
    })
}
