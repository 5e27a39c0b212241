//! Oriented graphs, straight and round enumerations, and scopes.

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;
use crate::model::{CircularArcModel, Extreme};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientationError {
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge {0}-{1} oriented both ways")]
    BothWays(usize, usize),
    #[error("arcs {0} and {1} cover the circle")]
    CoveringPair(usize, usize),
    #[error("model is not proper")]
    NotProper,
    #[error("enumeration is not out-round")]
    NotOutRound,
    #[error("exhaustive search is limited to {SEARCH_LIMIT} vertices, got {0}")]
    TooLarge(usize),
}

/// A graph with every edge given one direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    out: Vec<Vec<bool>>,
}

impl OrientedGraph {
    pub fn new(n: usize) -> Self {
        OrientedGraph { out: vec![vec![false; n]; n] }
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self, OrientationError> {
        let mut d = OrientedGraph::new(n);
        for &(u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<(), OrientationError> {
        let n = self.n();
        if let Some(&x) = [u, v].iter().find(|&&x| x >= n) {
            return Err(OrientationError::OutOfRange(x));
        }
        if u == v {
            return Err(OrientationError::Loop(u));
        }
        if self.out[v][u] {
            return Err(OrientationError::BothWays(u, v));
        }
        self.out[u][v] = true;
        Ok(())
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u][v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].iter().filter(|&&b| b).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        (0..self.n()).filter(|&u| self.out[u][v]).count()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n()).flat_map(|u| (0..self.n()).filter(move |&v| self.out[u][v]).map(move |v| (u, v))).collect()
    }

    pub fn underlying(&self) -> Graph {
        Graph::from_edges(self.n(), &self.arcs())
    }

    pub fn induced(&self, vertices: &[usize]) -> OrientedGraph {
        OrientedGraph { out: vertices.iter().map(|&u| vertices.iter().map(|&v| self.out[u][v]).collect()).collect() }
    }
}

impl fmt::Display for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self.arcs().iter().map(|(u, v)| format!("{u}>{v}")).collect();
        write!(f, "{}", arcs.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnumerationKind {
    OutStraight,
    OutRound,
    Straight,
    Round,
    LocallyOutStraight,
    LocallyStraight,
}

impl EnumerationKind {
    fn circular(self) -> bool {
        !matches!(self, EnumerationKind::OutStraight | EnumerationKind::Straight)
    }

    fn needs_in_ranges(self) -> bool {
        matches!(self, EnumerationKind::Straight | EnumerationKind::Round | EnumerationKind::LocallyStraight)
    }
}

impl fmt::Display for EnumerationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnumerationKind::OutStraight => "out-straight",
            EnumerationKind::OutRound => "out-round",
            EnumerationKind::Straight => "straight",
            EnumerationKind::Round => "round",
            EnumerationKind::LocallyOutStraight => "locally-out-straight",
            EnumerationKind::LocallyStraight => "locally-straight",
        })
    }
}

/// A vertex ordering claimed to be an enumeration of some kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub order: Vec<usize>,
    pub kind: EnumerationKind,
}

fn is_permutation(order: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    order.len() == n && order.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

/// Whether the closed out-set (`forward`) or in-set of the vertex at index
/// `i` is the range of its degree next to it.
fn is_range(d: &OrientedGraph, order: &[usize], i: usize, forward: bool, circular: bool) -> bool {
    let n = order.len();
    let v = order[i];
    let deg = if forward { d.out_degree(v) } else { d.in_degree(v) };
    let fits = if forward { i + deg < n } else { deg <= i };
    if !circular && !fits {
        return false;
    }
    (1..=deg).all(|j| {
        if forward {
            d.has_arc(v, order[(i + j) % n])
        } else {
            d.has_arc(order[(i + n - j) % n], v)
        }
    })
}

fn ranges_hold(d: &OrientedGraph, order: &[usize], in_ranges: bool, circular: bool) -> bool {
    (0..order.len()).all(|i| is_range(d, order, i, true, circular) && (!in_ranges || is_range(d, order, i, false, circular)))
}

/// Indices into `order` of the scope of `v`, from its leftmost to its
/// rightmost neighbor; `None` when that range does not contain `v`.
pub fn scope(d: &OrientedGraph, order: &[usize], v: usize) -> Option<Vec<usize>> {
    let n = order.len();
    let i = order.iter().position(|&x| x == v)?;
    let back = (0..n).filter(|&j| j == i || d.has_arc(order[j], v)).map(|j| (i + n - j) % n).max().unwrap_or(0);
    let ahead = (0..n).filter(|&j| j == i || d.has_arc(v, order[j])).map(|j| (j + n - i) % n).max().unwrap_or(0);
    if back + ahead >= n {
        return None;
    }
    Some((0..=back + ahead).map(|k| (i + n - back + k) % n).collect())
}

/// Checks the claimed kind literally.
pub fn verify_enumeration(d: &OrientedGraph, e: &Enumeration) -> bool {
    if !is_permutation(&e.order, d.n()) {
        return false;
    }
    let kind = e.kind;
    if !ranges_hold(d, &e.order, kind.needs_in_ranges(), kind.circular()) {
        return false;
    }
    if !matches!(kind, EnumerationKind::LocallyOutStraight | EnumerationKind::LocallyStraight) {
        return true;
    }
    e.order.iter().all(|&v| match scope(d, &e.order, v) {
        None => false,
        Some(idx) => {
            let vertices: Vec<usize> = idx.iter().map(|&j| e.order[j]).collect();
            let sub = d.induced(&vertices);
            let local: Vec<usize> = (0..vertices.len()).collect();
            ranges_hold(&sub, &local, kind.needs_in_ranges(), false)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    OutRound,
    Round,
}

/// Orders vertices by beginning and orients `a -> b` when arc `a` contains
/// the beginning of `b`.
pub fn orient_from_model(model: &CircularArcModel, flavor: Flavor) -> Result<(OrientedGraph, Enumeration), OrientationError> {
    if flavor == Flavor::Round && !model.is_proper() {
        return Err(OrientationError::NotProper);
    }
    let n = model.n();
    let mut d = OrientedGraph::new(n);
    for a in 0..n {
        for b in 0..n {
            if a != b && model.crosses_s(a, b) {
                d.add_arc(a, b).map_err(|_| OrientationError::CoveringPair(b.min(a), b.max(a)))?;
            }
        }
    }
    let kind = match flavor {
        Flavor::OutRound => EnumerationKind::OutRound,
        Flavor::Round => EnumerationKind::Round,
    };
    Ok((d, Enumeration { order: model.arcs_by_beginning(), kind }))
}

/// Places beginnings in enumeration order and ends each arc just after the
/// beginning of its last out-neighbor.
pub fn model_from_enumeration(d: &OrientedGraph, e: &Enumeration) -> Result<CircularArcModel, OrientationError> {
    let probe = Enumeration { order: e.order.clone(), kind: EnumerationKind::OutRound };
    if !verify_enumeration(d, &probe) {
        return Err(OrientationError::NotOutRound);
    }
    let n = d.n();
    let mut gaps: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &v) in e.order.iter().enumerate() {
        let r = d.out_degree(v);
        gaps[(i + r) % n].push((r, v));
    }
    let mut order = Vec::with_capacity(2 * n);
    for (i, gap) in gaps.iter_mut().enumerate() {
        order.push(Extreme::s(e.order[i]));
        // Earlier beginnings end first.
        gap.sort_by(|a, b| b.cmp(a));
        order.extend(gap.iter().map(|&(_, v)| Extreme::t(v)));
    }
    Ok(CircularArcModel::new(order).expect("every arc placed once"))
}

/// Largest graph handled by [`find_enumeration`].
pub const SEARCH_LIMIT: usize = 7;

/// Tries every vertex order and every orientation whose out-sets are ranges
/// in it, returning the first that verifies as `kind`.
pub fn find_enumeration(g: &Graph, kind: EnumerationKind) -> Result<Option<(OrientedGraph, Enumeration)>, OrientationError> {
    let n = g.n();
    if n > SEARCH_LIMIT {
        return Err(OrientationError::TooLarge(n));
    }
    if n == 0 {
        return Ok(Some((OrientedGraph::new(0), Enumeration { order: Vec::new(), kind })));
    }
    let circular = kind.circular();
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        if let Some(found) = orientations_along(g, &order, kind) {
            return Ok(Some(found));
        }
        // Circular kinds are invariant under rotation: keep vertex 0 first.
        let tail = usize::from(circular);
        if !next_permutation(&mut order[tail..]) {
            return Ok(None);
        }
    }
}

fn orientations_along(g: &Graph, order: &[usize], kind: EnumerationKind) -> Option<(OrientedGraph, Enumeration)> {
    let n = order.len();
    let circular = kind.circular();
    // Longest run of neighbors right after each index.
    let max_run: Vec<usize> = (0..n)
        .map(|i| {
            let limit = if circular { n - 1 } else { n - 1 - i };
            (1..=limit).take_while(|&j| g.adjacent(order[i], order[(i + j) % n])).count()
        })
        .collect();
    let mut r = vec![0; n];
    search_runs(g, order, kind, &max_run, &mut r, 0)
}

fn search_runs(
    g: &Graph,
    order: &[usize],
    kind: EnumerationKind,
    max_run: &[usize],
    r: &mut Vec<usize>,
    i: usize,
) -> Option<(OrientedGraph, Enumeration)> {
    let n = order.len();
    if i == n {
        let mut d = OrientedGraph::new(n);
        for k in 0..n {
            for j in 1..=r[k] {
                d.add_arc(order[k], order[(k + j) % n]).ok()?;
            }
        }
        if d.underlying() != *g {
            return None;
        }
        let e = Enumeration { order: order.to_vec(), kind };
        return verify_enumeration(&d, &e).then_some((d, e));
    }
    for run in 0..=max_run[i] {
        // A wrapped target already reaching back to i would orient an edge both ways.
        let clash = (1..=run).map(|j| (i + j) % n).any(|k| k < i && r[k] >= i - k);
        if clash {
            continue;
        }
        r[i] = run;
        if let Some(found) = search_runs(g, order, kind, max_run, r, i + 1) {
            return Some(found);
        }
    }
    None
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named_graph, named_model, random_model, Constraint, Family};
    use crate::io::parse_model;
    use crate::model::intersection_graph;

    fn e(order: Vec<usize>, kind: EnumerationKind) -> Enumeration {
        Enumeration { order, kind }
    }

    #[test]
    fn path_is_out_straight() {
        let model = parse_model("3\ns0 s1 t0 s2 t1 t2\n").unwrap();
        let (d, en) = orient_from_model(&model, Flavor::OutRound).unwrap();
        assert!(verify_enumeration(&d, &en));
        assert!(verify_enumeration(&d, &e(en.order.clone(), EnumerationKind::OutStraight)));
        assert!(verify_enumeration(&d, &e(en.order.clone(), EnumerationKind::Straight)));
    }

    #[test]
    fn oriented_wheel_is_out_round_only() {
        // Hub 0 points at the rim 1..4; the rim is a directed cycle.
        let d = OrientedGraph::from_arcs(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 1), (3, 0), (4, 0)]).unwrap();
        let order = vec![0, 1, 2, 3, 4];
        assert!(verify_enumeration(&d, &e(order.clone(), EnumerationKind::OutRound)));
        assert!(!verify_enumeration(&d, &e(order.clone(), EnumerationKind::LocallyOutStraight)));
        assert_eq!(scope(&d, &order, 0).map(|s| s.len()), Some(5));
    }

    #[test]
    fn trivial_cases() {
        let empty = OrientedGraph::new(0);
        for kind in [EnumerationKind::Round, EnumerationKind::LocallyStraight, EnumerationKind::OutStraight] {
            assert!(verify_enumeration(&empty, &e(vec![], kind)));
        }
        let two = OrientedGraph::new(2);
        assert_eq!(scope(&two, &[0, 1], 1), Some(vec![1]));
        let one = OrientedGraph::new(1);
        let m = model_from_enumeration(&one, &e(vec![0], EnumerationKind::OutRound)).unwrap();
        assert_eq!(m.n(), 1);
        assert!(OrientedGraph::from_arcs(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn model_flavors() {
        let hole = named_model(Family::Hole(5)).unwrap();
        let (d, en) = orient_from_model(&hole, Flavor::OutRound).unwrap();
        assert!(verify_enumeration(&d, &e(en.order.clone(), EnumerationKind::LocallyOutStraight)));
        assert!(verify_enumeration(&d, &e(en.order, EnumerationKind::LocallyStraight)));

        let tent = named_model(Family::Tent).unwrap();
        let (d, en) = orient_from_model(&tent, Flavor::OutRound).unwrap();
        assert!(verify_enumeration(&d, &en));
        assert!(!verify_enumeration(&d, &e(en.order, EnumerationKind::LocallyOutStraight)));

        let cover = parse_model("2\ns0 t1 s1 t0\n").unwrap();
        assert_eq!(orient_from_model(&cover, Flavor::OutRound), Err(OrientationError::CoveringPair(0, 1)));
        let nested = parse_model("2\ns0 s1 t1 t0\n").unwrap();
        assert_eq!(orient_from_model(&nested, Flavor::Round), Err(OrientationError::NotProper));
    }

    #[test]
    fn four_cycle_round_trip() {
        let c4 = named_graph(Family::Hole(4)).unwrap();
        let (d, en) = find_enumeration(&c4, EnumerationKind::OutRound).unwrap().unwrap();
        let m = model_from_enumeration(&d, &en).unwrap();
        assert_eq!(intersection_graph(&m), c4);
    }

    #[test]
    fn round_trips_on_random_normal_models() {
        for seed in 0..500 {
            let m = random_model(1 + seed as usize % 14, seed, Constraint::Short);
            let (d, en) = orient_from_model(&m, Flavor::OutRound).unwrap();
            assert!(verify_enumeration(&d, &en), "{m}");
            let back = model_from_enumeration(&d, &en).unwrap();
            assert_eq!(intersection_graph(&back), intersection_graph(&m));
            assert_eq!(orient_from_model(&back, Flavor::OutRound).unwrap().0, d);
        }
    }

    #[test]
    fn claw_has_no_round_orientation() {
        let claw = named_graph(Family::K13).unwrap();
        assert!(find_enumeration(&claw, EnumerationKind::Round).unwrap().is_none());
        assert!(find_enumeration(&claw, EnumerationKind::OutRound).unwrap().is_some());
    }

    #[test]
    fn straight_implies_round() {
        for seed in 0..200 {
            let m = random_model(2 + seed as usize % 8, seed, Constraint::Proper);
            let Ok((d, en)) = orient_from_model(&m, Flavor::Round) else { continue };
            if verify_enumeration(&d, &e(en.order.clone(), EnumerationKind::Straight)) {
                assert!(verify_enumeration(&d, &e(en.order.clone(), EnumerationKind::Round)));
            }
            assert!(verify_enumeration(&d, &en), "{m}");
        }
    }
}
