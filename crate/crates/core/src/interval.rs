//! Interval graph recognition with certificates.
//!
//! Chordality comes from a maximum cardinality search. A chordal graph is
//! interval exactly when its maximal cliques can be ordered so that the
//! cliques through each vertex are consecutive; that order yields the model.
//! Failures are certified by a hole or by a vertex-minimal non-interval
//! induced subgraph.

use crate::graph::Graph;
use crate::model::{CircularArcModel, Extreme};
use crate::ones::consecutive_order;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntervalResult {
    /// A model with an uncovered segment; arc `v` represents vertex `v`.
    Model(CircularArcModel),
    /// A chordless cycle of length at least 4, in cycle order.
    Hole(Vec<usize>),
    /// A vertex-minimal chordal non-interval induced subgraph.
    Obstruction(Vec<usize>),
}

/// Visit order of a maximum cardinality search.
fn mcs(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !done[v]).max_by_key(|&v| (weight[v], std::cmp::Reverse(v))).expect("vertex left");
        done[v] = true;
        order.push(v);
        for w in g.neighbors(v) {
            if !done[w] {
                weight[w] += 1;
            }
        }
    }
    order
}

/// For a chordal graph, the maximal cliques; `None` if the graph has a hole.
pub fn chordal_cliques(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let n = g.n();
    let order = mcs(g);
    let mut rank = vec![0; n];
    order.iter().enumerate().for_each(|(i, &v)| rank[v] = i);
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n);
    for &v in &order {
        let earlier: Vec<usize> = g.neighbors(v).into_iter().filter(|&w| rank[w] < rank[v]).collect();
        if let Some(&u) = earlier.iter().max_by_key(|&&w| rank[w]) {
            if earlier.iter().any(|&w| w != u && !g.adjacent(u, w)) {
                return None;
            }
        }
        let mut c = earlier;
        c.push(v);
        c.sort_unstable();
        candidates.push(c);
    }
    let contains = |a: &Vec<usize>, b: &Vec<usize>| b.iter().all(|x| a.binary_search(x).is_ok());
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        let dominated = candidates
            .iter()
            .enumerate()
            .any(|(j, d)| j != i && contains(d, c) && (d.len() > c.len() || j < i));
        if !dominated {
            cliques.push(c.clone());
        }
    }
    cliques.sort();
    Some(cliques)
}

/// A chordless cycle of length at least 4, if any.
pub fn find_hole(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut best: Option<Vec<usize>> = None;
    for v in 0..n {
        let nv = g.neighbors(v);
        for (a, &u) in nv.iter().enumerate() {
            for &w in &nv[a + 1..] {
                if g.adjacent(u, w) {
                    continue;
                }
                // Shortest u-w path through vertices outside N[v].
                let blocked = |x: usize| x == v || (g.adjacent(v, x) && x != u && x != w);
                let mut prev = vec![usize::MAX; n];
                prev[u] = u;
                let mut queue = std::collections::VecDeque::from([u]);
                while let Some(x) = queue.pop_front() {
                    if x == w {
                        break;
                    }
                    for y in g.neighbors(x) {
                        if prev[y] == usize::MAX && !blocked(y) && !(x == u && y == w) {
                            prev[y] = x;
                            queue.push_back(y);
                        }
                    }
                }
                if prev[w] == usize::MAX {
                    continue;
                }
                let mut cycle = vec![v];
                let mut path = vec![w];
                let mut x = w;
                while x != u {
                    x = prev[x];
                    path.push(x);
                }
                path.reverse();
                cycle.extend(path);
                if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                    best = Some(cycle);
                    if best.as_ref().map(Vec::len) == Some(4) {
                        return best;
                    }
                }
            }
        }
    }
    best
}

/// Interval model from a clique order: each clique emits the beginnings of
/// the vertices it opens and then the endings of the vertices it closes.
fn model_from_clique_order(n: usize, cliques: &[Vec<usize>], order: &[usize]) -> CircularArcModel {
    let mut first = vec![usize::MAX; n];
    let mut last = vec![0; n];
    for (pos, &c) in order.iter().enumerate() {
        for &v in &cliques[c] {
            first[v] = first[v].min(pos);
            last[v] = pos;
        }
    }
    let mut extremes = Vec::with_capacity(2 * n);
    for pos in 0..order.len() {
        extremes.extend((0..n).filter(|&v| first[v] == pos).map(Extreme::s));
        extremes.extend((0..n).filter(|&v| last[v] == pos).map(Extreme::t));
    }
    CircularArcModel::new(extremes).expect("each vertex lies in some clique")
}

/// Model of the graph if it is an interval graph.
pub fn interval_model(g: &Graph) -> Option<CircularArcModel> {
    let cliques = chordal_cliques(g)?;
    // Cliques are the columns to order; each vertex's clique set must be a run.
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, c) in cliques.iter().enumerate() {
        c.iter().for_each(|&v| through[v].push(i));
    }
    let order = consecutive_order(cliques.len(), &through)?;
    Some(model_from_clique_order(g.n(), &cliques, &order))
}

pub fn is_interval(g: &Graph) -> bool {
    interval_model(g).is_some()
}

pub fn recognize_interval(g: &Graph) -> IntervalResult {
    if let Some(m) = interval_model(g) {
        return IntervalResult::Model(m);
    }
    if let Some(h) = find_hole(g) {
        return IntervalResult::Hole(h);
    }
    // Chordal but not interval: shrink to a vertex-minimal witness.
    let mut keep: Vec<usize> = (0..g.n()).collect();
    let mut i = 0;
    while i < keep.len() {
        let mut trial = keep.clone();
        trial.remove(i);
        if is_interval(&g.induced(&trial)) {
            i += 1;
        } else {
            keep = trial;
        }
    }
    IntervalResult::Obstruction(keep)
}
