//! The firefighting process.
//!
//! Round `i` (starting at 1): the firefighter defends one vertex that is not
//! burning, then the fire spreads from every burning vertex to all undefended
//! neighbors. The source burns at round 0. Defending after the fire has died
//! out is allowed and changes nothing.

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, Graph, Vertex, VertexSet};
use std::fmt;
use std::str::FromStr;

/// Ordered defense sequence; entry `i` (0-based) is defended in round `i + 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Strategy(pub Vec<Vertex>);

impl Strategy {
    pub fn new(seq: Vec<Vertex>) -> Self {
        Strategy(seq)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    /// Checks ids are in range, pairwise distinct and never the source.
    pub fn check_well_formed(&self, g: &Graph, source: Vertex) -> Result<()> {
        let mut seen = g.empty_set();
        for &v in &self.0 {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
            }
            if v == source {
                return Err(Error::InvalidStrategy(format!("defends the source {}", v + 1)));
            }
            if seen.put(v) {
                return Err(Error::InvalidStrategy(format!("vertex {} repeated", v + 1)));
            }
        }
        Ok(())
    }

    /// Comma-separated 1-based ids, e.g. `"2,5,7"`.
    pub fn to_one_based(&self) -> String {
        self.0
            .iter()
            .map(|v| (v + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Parses the 1-based, comma-separated form. Range checks against a graph are
/// left to [`Strategy::check_well_formed`].
impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Strategy::default());
        }
        s.split(',')
            .map(|tok| {
                let tok = tok.trim();
                match tok.parse::<usize>() {
                    Ok(0) => Err(Error::VertexOutOfRange { vertex: 0, n: 0 }),
                    Ok(v) => Ok(v - 1),
                    Err(_) => Err(Error::InvalidStrategy(format!("bad vertex id {tok:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Strategy)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_one_based())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimOutcome {
    pub burned: VertexSet,
    pub defended: VertexSet,
    pub saved_count: usize,
    /// Round in which each vertex caught fire; the source maps to 0.
    pub burn_time: Vec<Option<usize>>,
    pub valid: bool,
    /// 0-based index of the first strategy entry that was already burning.
    pub failed_at: Option<usize>,
}

impl SimOutcome {
    pub fn saved(&self) -> usize {
        self.saved_count
    }
}

/// Number of saved vertices in an outcome.
pub fn sav(outcome: &SimOutcome) -> usize {
    outcome.saved_count
}

/// Mutable fire state shared by the simulator and the search engines.
#[derive(Clone, Debug)]
pub struct FireState {
    burned: VertexSet,
    defended: VertexSet,
    /// Vertices that caught fire in the latest round (initially the source).
    fresh: VertexSet,
    burned_count: usize,
    round: usize,
}

impl FireState {
    pub fn new(g: &Graph, source: Vertex) -> Self {
        let mut burned = g.empty_set();
        burned.insert(source);
        FireState {
            fresh: burned.clone(),
            burned,
            defended: g.empty_set(),
            burned_count: 1,
            round: 0,
        }
    }

    #[inline]
    pub fn round(&self) -> usize {
        self.round
    }

    #[inline]
    pub fn burned(&self) -> &VertexSet {
        &self.burned
    }

    #[inline]
    pub fn defended(&self) -> &VertexSet {
        &self.defended
    }

    #[inline]
    pub fn burned_count(&self) -> usize {
        self.burned_count
    }

    #[inline]
    pub fn defended_count(&self) -> usize {
        self.defended.count_ones(..)
    }

    #[inline]
    pub fn is_burning(&self, v: Vertex) -> bool {
        self.burned.contains(v)
    }

    #[inline]
    pub fn is_free(&self, v: Vertex) -> bool {
        !self.burned.contains(v) && !self.defended.contains(v)
    }

    /// Vertices that burn in the next spread unless defended now.
    pub fn frontier(&self, g: &Graph) -> VertexSet {
        let mut f = g.empty_set();
        for b in self.fresh.ones() {
            f.union_with(g.neighbor_set(b));
        }
        f.difference_with(&self.burned);
        f.difference_with(&self.defended);
        f
    }

    pub fn is_active(&self, g: &Graph) -> bool {
        self.fresh
            .ones()
            .any(|b| g.neighbors(b).iter().any(|&w| self.is_free(w)))
    }

    /// Vertices the fire can still reach: free vertices connected to the fire
    /// through free vertices. Defending anything else changes nothing.
    pub fn threatened(&self, g: &Graph) -> VertexSet {
        let mut seen = self.frontier(g);
        let mut stack: Vec<Vertex> = seen.ones().collect();
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if self.is_free(w) && !seen.put(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Marks `v` defended. Caller guarantees `v` is free.
    pub fn defend(&mut self, v: Vertex) {
        debug_assert!(self.is_free(v));
        self.defended.insert(v);
    }

    /// Advances one round of spreading and returns the newly burned set.
    pub fn spread(&mut self, g: &Graph) -> &VertexSet {
        let next = self.frontier(g);
        self.burned.union_with(&next);
        self.burned_count += next.count_ones(..);
        self.fresh = next;
        self.round += 1;
        &self.fresh
    }

    /// Defend `v` (if given) and spread: one full round.
    pub fn play(&mut self, g: &Graph, v: Option<Vertex>) {
        if let Some(v) = v {
            self.defend(v);
        }
        self.spread(g);
    }

    /// Lets the fire burn out with no further defenses; returns the final
    /// number of burned vertices.
    pub fn burn_out(&mut self, g: &Graph) -> usize {
        while !self.fresh.is_clear() {
            self.spread(g);
        }
        self.burned_count
    }

    /// Final burned count if no more vertices are defended, without mutating.
    pub fn final_burned_count(&self, g: &Graph) -> usize {
        self.burned_count + self.threatened(g).count_ones(..)
    }
}

/// Runs the process for `strat` and lets the fire burn out afterwards.
///
/// Malformed strategies (out-of-range, repeated, or the source) are input
/// errors. A strategy that defends a burning vertex yields `valid == false`
/// together with the state at the moment of failure.
pub fn simulate(g: &Graph, source: Vertex, strat: &Strategy) -> Result<SimOutcome> {
    if source >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: source, n: g.n() });
    }
    strat.check_well_formed(g, source)?;
    let mut state = FireState::new(g, source);
    let mut burn_time = vec![None; g.n()];
    burn_time[source] = Some(0);
    let mut failed_at = None;

    let stamp = |state: &FireState, burn_time: &mut Vec<Option<usize>>| {
        for v in state.fresh.ones() {
            burn_time[v].get_or_insert(state.round);
        }
    };

    for (i, &v) in strat.0.iter().enumerate() {
        if state.is_burning(v) {
            failed_at = Some(i);
            break;
        }
        state.play(g, Some(v));
        stamp(&state, &mut burn_time);
    }
    if failed_at.is_none() {
        while !state.fresh.is_clear() {
            state.spread(g);
            stamp(&state, &mut burn_time);
        }
    }
    Ok(SimOutcome {
        saved_count: g.n() - state.burned_count,
        burned: state.burned,
        defended: state.defended,
        burn_time,
        valid: failed_at.is_none(),
        failed_at,
    })
}

/// Validity by distances: `v_i` is defendable at round `i` iff its distance
/// from the source in `G[(V ∖ S) ∪ {v_i}]` is at least `i`.
///
/// Assumes a well-formed strategy.
pub fn fast_validity_check(g: &Graph, source: Vertex, strat: &Strategy) -> bool {
    let mut in_s = g.empty_set();
    in_s.extend(strat.0.iter().copied());
    strat.0.iter().enumerate().all(|(i, &v)| {
        in_s.set(v, false);
        let d = bfs_distances(g, source, &in_s)[v];
        in_s.insert(v);
        d.is_none_or(|d| d > i)
    })
}

/// Drops defenses (latest first) while the strategy stays valid and saves as
/// many vertices, so every remaining defense matters.
pub fn minimize(g: &Graph, source: Vertex, strat: &Strategy) -> Result<Strategy> {
    let target = simulate(g, source, strat)?;
    if !target.valid {
        return Err(Error::InvalidStrategy("cannot minimize an invalid strategy".into()));
    }
    let mut cur = strat.clone();
    'outer: loop {
        for i in (0..cur.len()).rev() {
            let mut shorter = cur.clone();
            shorter.0.remove(i);
            let out = simulate(g, source, &shorter)?;
            if out.valid && out.saved_count >= target.saved_count {
                cur = shorter;
                continue 'outer;
            }
        }
        return Ok(cur);
    }
}
