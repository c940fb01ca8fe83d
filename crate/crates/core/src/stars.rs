//! FPT solver for a modulator `X` to star forests.
//!
//! The solver guesses which modulator vertices are defended (`X_d`), saved
//! (`X_s`) or burned (`X_b`, always holding the source). For each guess the
//! stars reachable from the fire are grouped into equivalence classes by how
//! they attach to the modulator, and defenses are drawn from small candidate
//! sets per class. Outcomes that contradict the guess are discarded.

use crate::error::{Error, Result};
use crate::exact::SolveResult;
use crate::fire::{minimize, FireState, Strategy};
use crate::graph::{bfs_distances, connected_component_of, recognize, vertex_set, ClassTag, Graph, Vertex, VertexSet};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Bitmask over modulator positions (`StarDecomposition::modulator` order).
pub type XMask = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Star {
    pub center: Vertex,
    pub leaves: Vec<Vertex>,
    /// Vertices with a neighbor in `X`, sorted.
    pub border: Vec<Vertex>,
    /// Border vertices grouped by their exact neighborhood `Y ⊆ X`.
    pub border_by_y: BTreeMap<XMask, Vec<Vertex>>,
    pub center_x: XMask,
    /// `N(S) ∩ X`.
    pub star_x: XMask,
}

impl Star {
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::once(self.center).chain(self.leaves.iter().copied())
    }

    pub fn size(&self) -> usize {
        1 + self.leaves.len()
    }

    /// `|S ∖ B(S)|`.
    pub fn interior(&self) -> usize {
        self.size() - self.border.len()
    }

    fn touches(&self, mask: XMask) -> bool {
        self.star_x & mask != 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarDecomposition {
    pub modulator: Vec<Vertex>,
    pub stars: Vec<Star>,
    pub star_of: Vec<Option<usize>>,
    /// Largest border.
    pub ell: usize,
    x_index: Vec<Option<usize>>,
}

impl StarDecomposition {
    pub fn mask_of(&self, xs: &[Vertex]) -> XMask {
        xs.iter()
            .filter_map(|&x| self.x_index[x])
            .fold(0, |m, i| m | (1 << i))
    }

    fn x_mask_of_vertex(&self, g: &Graph, v: Vertex) -> XMask {
        g.neighbors(v)
            .iter()
            .filter_map(|&w| self.x_index[w])
            .fold(0, |m, i| m | (1 << i))
    }
}

pub fn decompose_stars(g: &Graph, x: &[Vertex]) -> Result<StarDecomposition> {
    if x.len() >= 64 {
        return Err(Error::Precondition("modulator larger than 63 vertices".into()));
    }
    let mut x_index = vec![None; g.n()];
    for (i, &v) in x.iter().enumerate() {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        if x_index[v].replace(i).is_some() {
            return Err(Error::Precondition(format!("vertex {} repeated in modulator", v + 1)));
        }
    }
    let in_x = vertex_set(g.n(), x.iter().copied());
    let (rest, _) = g.without(&in_x);
    if !recognize(&rest, ClassTag::StarForest) {
        return Err(Error::Precondition("G ∖ X is not a star forest".into()));
    }

    let mut dec = StarDecomposition {
        modulator: x.to_vec(),
        stars: Vec::new(),
        star_of: vec![None; g.n()],
        ell: 0,
        x_index,
    };
    let mut seen = in_x.clone();
    for v in g.vertices() {
        if seen.contains(v) {
            continue;
        }
        let comp = connected_component_of(g, v, &in_x);
        seen.union_with(&comp);
        let verts: Vec<Vertex> = comp.ones().collect();
        let inner_degree = |u: Vertex| g.neighbors(u).iter().filter(|&&w| comp.contains(w)).count();
        let center = if verts.len() <= 2 {
            verts[0]
        } else {
            *verts.iter().find(|&&u| inner_degree(u) > 1).expect("a star with three vertices has a center")
        };
        let leaves: Vec<Vertex> = verts.iter().copied().filter(|&u| u != center).collect();
        let mut border_by_y: BTreeMap<XMask, Vec<Vertex>> = BTreeMap::new();
        let mut border = Vec::new();
        let mut star_x = 0;
        for &u in &verts {
            let y = dec.x_mask_of_vertex(g, u);
            if y != 0 {
                border.push(u);
                border_by_y.entry(y).or_default().push(u);
                star_x |= y;
            }
        }
        let idx = dec.stars.len();
        for &u in &verts {
            dec.star_of[u] = Some(idx);
        }
        dec.ell = dec.ell.max(border.len());
        dec.stars.push(Star {
            center,
            center_x: dec.x_mask_of_vertex(g, center),
            leaves,
            border,
            border_by_y,
            star_x,
        });
    }
    Ok(dec)
}

/// Defended (with their rounds), saved and burned parts of the modulator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModulatorGuess {
    pub x_d: Vec<(Vertex, usize)>,
    pub x_s: Vec<Vertex>,
    pub x_b: Vec<Vertex>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassKind {
    Regular,
    /// All classes whose common border exceeds `4k + 2`, merged.
    New,
    /// Vulnerable stars.
    Prime,
    /// Stars not touching `X_b` when `X_s` is nonempty.
    Star,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub center_x: XMask,
    pub star_x: XMask,
    pub border: usize,
    /// `Y ↦ |B_Y(S)|` for nonempty groups, sorted by `Y`.
    pub by_y: Vec<(XMask, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarEquivClass {
    pub kind: ClassKind,
    /// Shared signature; `None` for the merged class.
    pub signature: Option<Signature>,
    /// Star indices into the decomposition.
    pub members: Vec<usize>,
    /// Common border size (largest member border for the merged class).
    pub b_t: usize,
}

pub fn signature(star: &Star) -> Signature {
    Signature {
        center_x: star.center_x,
        star_x: star.star_x,
        border: star.border.len(),
        by_y: star.border_by_y.iter().map(|(&y, vs)| (y, vs.len())).collect(),
    }
}

/// Classes of the given stars. With `x_s_mask != 0` vulnerable stars and stars
/// avoiding `X_b` get their own classes; everything else is grouped by
/// signature, with large borders merged into one class.
pub fn build_equiv_classes(
    dec: &StarDecomposition,
    stars: &[usize],
    x_b_mask: XMask,
    x_s_mask: XMask,
    k: usize,
) -> Vec<StarEquivClass> {
    let cap = 4 * k + 2;
    let mut regular: BTreeMap<Signature, Vec<usize>> = BTreeMap::new();
    let mut merged = Vec::new();
    let mut prime = Vec::new();
    let mut starred = Vec::new();
    for &i in stars {
        let st = &dec.stars[i];
        if x_s_mask != 0 {
            let b = st.touches(x_b_mask);
            if b && st.touches(x_s_mask) {
                prime.push(i);
                continue;
            }
            if !b {
                starred.push(i);
                continue;
            }
        }
        if st.border.len() > cap {
            merged.push(i);
        } else {
            regular.entry(signature(st)).or_default().push(i);
        }
    }
    let mut out: Vec<StarEquivClass> = regular
        .into_iter()
        .map(|(sig, members)| StarEquivClass {
            kind: ClassKind::Regular,
            b_t: sig.border,
            signature: Some(sig),
            members,
        })
        .collect();
    let with = |kind, members: Vec<usize>| StarEquivClass {
        kind,
        signature: None,
        b_t: members.iter().map(|&i| dec.stars[i].border.len()).max().unwrap_or(0),
        members,
    };
    if !merged.is_empty() {
        out.push(with(ClassKind::New, merged));
    }
    if !prime.is_empty() {
        out.push(with(ClassKind::Prime, prime));
    }
    if !starred.is_empty() {
        out.push(with(ClassKind::Star, starred));
    }
    out
}

/// `2^{2k} · ℓ^{2^k}`, saturating.
pub fn class_count_bound(k: usize, ell: usize) -> f64 {
    2f64.powi(2 * k as i32) * (ell as f64).powf(2f64.powi(k as i32))
}

/// Vertices from which the defenses inside a class are drawn.
///
/// Besides borders and centers, every selected star also offers its leaves
/// without a modulator neighbor: defending one saves exactly that leaf, which
/// can be the best remaining move. `dist` holds distances from the source in
/// the fire component.
pub fn candidate_set(
    cls: &StarEquivClass,
    dec: &StarDecomposition,
    k: usize,
    dist: &[Option<usize>],
) -> Vec<Vertex> {
    let cap = 4 * k + 2;
    let by_interior = |members: &mut Vec<usize>| {
        members.sort_by(|&a, &b| {
            let (sa, sb) = (&dec.stars[a], &dec.stars[b]);
            sb.interior().cmp(&sa.interior()).then(sa.center.cmp(&sb.center))
        })
    };
    let whole = |i: usize, out: &mut Vec<Vertex>| {
        let st = &dec.stars[i];
        out.push(st.center);
        out.extend(st.leaves.iter().copied());
    };
    let mut out = Vec::new();
    match cls.kind {
        ClassKind::Regular => {
            let mut members = cls.members.clone();
            by_interior(&mut members);
            for &i in members.iter().take(cap) {
                whole(i, &mut out);
            }
        }
        ClassKind::New => {
            for d in 1..=cap {
                let mut at_d: Vec<usize> = cls
                    .members
                    .iter()
                    .copied()
                    .filter(|&i| dist[dec.stars[i].center] == Some(d))
                    .collect();
                by_interior(&mut at_d);
                for &i in at_d.iter().take(d) {
                    whole(i, &mut out);
                }
            }
        }
        ClassKind::Prime => {
            for &i in &cls.members {
                whole(i, &mut out);
            }
        }
        ClassKind::Star => {
            if let Some(&i) = cls.members.first() {
                out.push(dec.stars[i].center);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Stars with border vertices adjacent to both `X_b` and `X_s`.
pub fn vulnerable_stars(dec: &StarDecomposition, stars: &[usize], x_b_mask: XMask, x_s_mask: XMask) -> Vec<usize> {
    stars
        .iter()
        .copied()
        .filter(|&i| {
            let st = &dec.stars[i];
            st.touches(x_b_mask) && st.touches(x_s_mask)
        })
        .collect()
}

#[derive(Clone, Debug)]
struct Incumbent {
    saved: usize,
    seq: Vec<Vertex>,
    guess: Option<ModulatorGuess>,
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

struct GuessSearch<'a> {
    g: &'a Graph,
    twin: &'a [Vertex],
    allowed: VertexSet,
    x_d: Vec<Vertex>,
    x_s: Vec<Vertex>,
    x_b: Vec<Vertex>,
    vulnerable: Vec<Vec<Vertex>>,
    max_len: usize,
    best: Incumbent,
    explored: u64,
}

impl GuessSearch<'_> {
    fn consistent(&self, state: &FireState, seq: &[Vertex]) -> bool {
        let threatened = state.threatened(self.g);
        let burns = |v: Vertex| state.is_burning(v) || threatened.contains(v);
        self.x_d.iter().all(|&v| state.defended().contains(v))
            && self.x_s.iter().all(|&v| !burns(v))
            && self.x_b.iter().all(|&v| burns(v))
            && self.vulnerable.iter().all(|st| st.iter().any(|v| seq.contains(v)))
    }

    fn visit(&mut self, state: &FireState, seq: &mut Vec<Vertex>, last_off_front: Option<Vertex>) {
        self.explored += 1;
        let g = self.g;
        if self.x_d.iter().any(|&v| state.is_burning(v)) || self.x_s.iter().any(|&v| state.is_burning(v)) {
            return;
        }
        let pending = self.x_d.iter().filter(|&&v| !state.defended().contains(v)).count();
        if pending > self.max_len - seq.len() {
            return;
        }
        if pending == 0 && self.consistent(state, seq) {
            let here = Incumbent {
                saved: g.n() - state.final_burned_count(g),
                seq: seq.clone(),
                guess: None,
            };
            if here.key_cmp(&self.best) == Ordering::Less {
                self.best = here;
                self.best.guess = Some(self.guess_record(seq));
            }
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
        let choices: Vec<Vertex> = self
            .allowed
            .ones()
            .filter(|&v| state.is_free(v) && threatened.contains(v))
            .collect();
        for &v in &choices {
            // Interchangeable twins: only the smallest free one.
            if choices.iter().any(|&u| u < v && self.twin[u] == self.twin[v]) {
                continue;
            }
            // Adjacent defenses commute when the first was off the front.
            if last_off_front.is_some_and(|u| v < u) {
                continue;
            }
            let mut next = state.clone();
            next.play(g, Some(v));
            seq.push(v);
            self.visit(&next, seq, (!front.contains(v)).then_some(v));
            seq.pop();
        }
    }

    fn guess_record(&self, seq: &[Vertex]) -> ModulatorGuess {
        ModulatorGuess {
            x_d: self
                .x_d
                .iter()
                .map(|&v| (v, 1 + seq.iter().position(|&w| w == v).expect("defended")))
                .collect(),
            x_s: self.x_s.clone(),
            x_b: self.x_b.clone(),
        }
    }
}

/// Optimal strategy given a modulator to star forests, together with the
/// modulator guess it is consistent with.
pub fn solve_stars_with_guess(g: &Graph, s: Vertex, x: &[Vertex]) -> Result<(SolveResult, ModulatorGuess)> {
    if s >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: s, n: g.n() });
    }
    let mut xs = x.to_vec();
    if !xs.contains(&s) {
        xs.push(s);
    }
    xs.sort_unstable();
    let dec = decompose_stars(g, &xs)?;
    let k = xs.len();
    let max_len = 4 * k + 2;
    let twin = g.twin_classes();
    let others: Vec<Vertex> = xs.iter().copied().filter(|&v| v != s).collect();

    let root = FireState::new(g, s);
    let mut best = Incumbent {
        saved: g.n() - root.final_burned_count(g),
        seq: Vec::new(),
        guess: None,
    };
    let mut explored = 0u64;

    // Each non-source modulator vertex is defended (0), saved (1) or burned (2).
    let guesses = 3usize.pow(others.len() as u32);
    for code in 0..guesses {
        let (mut x_d, mut x_s, mut x_b) = (Vec::new(), Vec::new(), vec![s]);
        let mut c = code;
        for &v in &others {
            match c % 3 {
                0 => x_d.push(v),
                1 => x_s.push(v),
                _ => x_b.push(v),
            }
            c /= 3;
        }
        x_b.sort_unstable();
        let x_b_mask = dec.mask_of(&x_b);
        let x_s_mask = dec.mask_of(&x_s);

        let removed = vertex_set(g.n(), x_d.iter().copied());
        let comp = connected_component_of(g, s, &removed);
        if x_b.iter().any(|&v| !comp.contains(v)) {
            continue;
        }
        let in_comp: Vec<usize> = (0..dec.stars.len())
            .filter(|&i| comp.contains(dec.stars[i].center))
            .collect();
        let vulnerable = vulnerable_stars(&dec, &in_comp, x_b_mask, x_s_mask);
        if vulnerable.len() > max_len {
            continue;
        }
        let dist = bfs_distances(g, s, &removed);
        let mut allowed = vertex_set(g.n(), x_d.iter().copied());
        for cls in build_equiv_classes(&dec, &in_comp, x_b_mask, x_s_mask, k) {
            allowed.extend(candidate_set(&cls, &dec, k, &dist));
        }
        let vulnerable = vulnerable
            .iter()
            .map(|&i| dec.stars[i].vertices().collect())
            .collect();
        let mut search = GuessSearch {
            g,
            twin: &twin,
            allowed,
            x_d,
            x_s,
            x_b,
            vulnerable,
            max_len,
            best,
            explored: 0,
        };
        search.visit(&root, &mut Vec::new(), None);
        explored += search.explored;
        best = search.best;
    }

    let guess = best.guess.clone().unwrap_or_else(|| guess_from_outcome(g, s, &xs, &best.seq));
    let strategy = minimize(g, s, &Strategy(best.seq))?;
    Ok((
        SolveResult {
            best_strategy: strategy,
            best_saved: best.saved,
            explored,
        },
        guess,
    ))
}

pub fn solve_stars(g: &Graph, s: Vertex, x: &[Vertex]) -> Result<SolveResult> {
    solve_stars_with_guess(g, s, x).map(|r| r.0)
}

fn guess_from_outcome(g: &Graph, s: Vertex, xs: &[Vertex], seq: &[Vertex]) -> ModulatorGuess {
    let mut state = FireState::new(g, s);
    for &v in seq {
        state.play(g, Some(v));
    }
    state.burn_out(g);
    let mut guess = ModulatorGuess::default();
    for &v in xs {
        if let Some(p) = seq.iter().position(|&w| w == v) {
            guess.x_d.push((v, p + 1));
        } else if state.is_burning(v) {
            guess.x_b.push(v);
        } else {
            guess.x_s.push(v);
        }
    }
    guess
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::solve_exact;

    #[test]
    fn two_identical_stars() {
        // x = 0 adjacent to both centers 1 and 4; stars 1-{2,3}, 4-{5,6}.
        let g = Graph::from_edges(7, [(0, 1), (0, 4), (1, 2), (1, 3), (4, 5), (4, 6)]).unwrap();
        let dec = decompose_stars(&g, &[0]).unwrap();
        assert_eq!(dec.stars.len(), 2);
        assert_eq!(signature(&dec.stars[0]), signature(&dec.stars[1]));
        let classes = build_equiv_classes(&dec, &[0, 1], 1, 0, 1);
        assert_eq!(classes.len(), 1);
        let r = solve_stars(&g, 0, &[0]).unwrap();
        assert_eq!(r.best_saved, 4);
        assert_eq!(r.best_saved, solve_exact(&g, 0, None).unwrap().best_saved);
    }

    #[test]
    fn isolated_vertex_star() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let dec = decompose_stars(&g, &[0]).unwrap();
        let lone = dec.star_of[2].unwrap();
        assert_eq!(dec.stars[lone].center, 2);
        assert!(dec.stars[lone].leaves.is_empty());
    }

    #[test]
    fn border_sizes_split_classes() {
        // x = 0; star 1-{2} has both vertices on the border, star 3-{4} one.
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (3, 4)]).unwrap();
        let dec = decompose_stars(&g, &[0]).unwrap();
        let stars: Vec<usize> = (0..dec.stars.len()).collect();
        let classes = build_equiv_classes(&dec, &stars, 1, 0, 1);
        assert_eq!(classes.len(), 2);
        assert!(decompose_stars(&Graph::cycle(3), &[]).is_err());
    }

    #[test]
    fn vulnerability() {
        // x_b = 0, x_s = 1; star 2-{3}: 2 adjacent to 0, 3 adjacent to 1.
        let g = Graph::from_edges(6, [(0, 2), (2, 3), (1, 3), (0, 4), (4, 5)]).unwrap();
        let dec = decompose_stars(&g, &[0, 1]).unwrap();
        let all: Vec<usize> = (0..dec.stars.len()).collect();
        let (b, s) = (dec.mask_of(&[0]), dec.mask_of(&[1]));
        let v = vulnerable_stars(&dec, &all, b, s);
        assert_eq!(v, vec![dec.star_of[2].unwrap()]);
        // One vertex adjacent to both sides.
        let g = Graph::from_edges(3, [(0, 2), (1, 2)]).unwrap();
        let dec = decompose_stars(&g, &[0, 1]).unwrap();
        assert_eq!(vulnerable_stars(&dec, &[0], b, s), vec![0]);
    }

    #[test]
    fn star_class_has_single_candidate() {
        let g = Graph::from_edges(6, [(0, 2), (2, 3), (1, 4), (4, 5), (0, 1)]).unwrap();
        let dec = decompose_stars(&g, &[0, 1]).unwrap();
        let all: Vec<usize> = (0..dec.stars.len()).collect();
        let classes = build_equiv_classes(&dec, &all, dec.mask_of(&[0]), dec.mask_of(&[1]), 2);
        let star_cls = classes.iter().find(|c| c.kind == ClassKind::Star).unwrap();
        let dist = bfs_distances(&g, 0, &g.empty_set());
        assert_eq!(candidate_set(star_cls, &dec, 2, &dist).len(), 1);
    }
}
