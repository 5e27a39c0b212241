//! Combinatorial circular-arc models.
//!
//! A model is nothing more than the clockwise circular order of its 2n arc
//! extremes. Position `i` of the order starts segment `i`, which runs up to
//! position `i + 1 (mod 2n)`.

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtremeKind {
    Beginning,
    Ending,
}

impl ExtremeKind {
    pub fn flip(self) -> Self {
        match self {
            ExtremeKind::Beginning => ExtremeKind::Ending,
            ExtremeKind::Ending => ExtremeKind::Beginning,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Extreme {
    pub arc: usize,
    pub kind: ExtremeKind,
}

impl Extreme {
    pub fn s(arc: usize) -> Self {
        Extreme { arc, kind: ExtremeKind::Beginning }
    }

    pub fn t(arc: usize) -> Self {
        Extreme { arc, kind: ExtremeKind::Ending }
    }

    pub fn is_beginning(&self) -> bool {
        self.kind == ExtremeKind::Beginning
    }
}

impl fmt::Display for Extreme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ExtremeKind::Beginning => write!(f, "s{}", self.arc),
            ExtremeKind::Ending => write!(f, "t{}", self.arc),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("order has {found} extremes, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("arc {arc} out of range at position {position}")]
    OutOfRange { arc: usize, position: usize },
    #[error("duplicate extreme {extreme} at position {position}")]
    Duplicate { extreme: Extreme, position: usize },
    #[error("arc {arc} out of range")]
    NoSuchArc { arc: usize },
}

/// A circular sequence of 2n distinct extremes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircularArcModel {
    order: Vec<Extreme>,
    begin: Vec<usize>,
    end: Vec<usize>,
}

impl CircularArcModel {
    pub fn new(order: Vec<Extreme>) -> Result<Self, ModelError> {
        if order.len() % 2 != 0 {
            return Err(ModelError::Length { expected: order.len() + 1, found: order.len() });
        }
        let n = order.len() / 2;
        let mut begin = vec![usize::MAX; n];
        let mut end = vec![usize::MAX; n];
        for (position, e) in order.iter().enumerate() {
            if e.arc >= n {
                return Err(ModelError::OutOfRange { arc: e.arc, position });
            }
            let slot = match e.kind {
                ExtremeKind::Beginning => &mut begin[e.arc],
                ExtremeKind::Ending => &mut end[e.arc],
            };
            if *slot != usize::MAX {
                return Err(ModelError::Duplicate { extreme: *e, position });
            }
            *slot = position;
        }
        Ok(CircularArcModel { order, begin, end })
    }

    pub fn empty() -> Self {
        CircularArcModel { order: Vec::new(), begin: Vec::new(), end: Vec::new() }
    }

    /// Builds a model from clockwise point positions on a circle. Every
    /// position must be distinct; arcs run clockwise from `begins[i]` to `ends[i]`.
    pub fn from_positions<T: PartialOrd + Copy>(begins: &[T], ends: &[T]) -> Self {
        assert_eq!(begins.len(), ends.len());
        let mut points: Vec<(T, Extreme)> = Vec::with_capacity(2 * begins.len());
        for (i, (&b, &e)) in begins.iter().zip(ends).enumerate() {
            points.push((b, Extreme::s(i)));
            points.push((e, Extreme::t(i)));
        }
        points.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("comparable positions"));
        for w in points.windows(2) {
            assert!(w[0].0 < w[1].0, "coinciding extremes");
        }
        CircularArcModel::new(points.into_iter().map(|p| p.1).collect()).expect("valid by construction")
    }

    pub fn n(&self) -> usize {
        self.begin.len()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[Extreme] {
        &self.order
    }

    pub fn at(&self, position: usize) -> Extreme {
        self.order[position % self.order.len()]
    }

    pub fn s(&self, arc: usize) -> usize {
        self.begin[arc]
    }

    pub fn t(&self, arc: usize) -> usize {
        self.end[arc]
    }

    pub fn position(&self, e: Extreme) -> usize {
        match e.kind {
            ExtremeKind::Beginning => self.begin[e.arc],
            ExtremeKind::Ending => self.end[e.arc],
        }
    }

    /// Clockwise distance from position `from` to position `to`.
    pub fn dist(&self, from: usize, to: usize) -> usize {
        let m = self.order.len();
        (to + m - from) % m
    }

    /// Number of positions strictly inside the arc.
    pub fn inner_len(&self, arc: usize) -> usize {
        self.dist(self.begin[arc], self.end[arc]) - 1
    }

    /// Whether extreme position `p` lies strictly inside `arc`.
    pub fn contains_point(&self, arc: usize, p: usize) -> bool {
        let d = self.dist(self.begin[arc], p);
        d > 0 && d < self.dist(self.begin[arc], self.end[arc])
    }

    /// Whether segment `seg` (starting at position `seg`) is covered by `arc`.
    pub fn covers_segment(&self, arc: usize, seg: usize) -> bool {
        self.dist(self.begin[arc], seg) < self.dist(self.begin[arc], self.end[arc])
    }

    /// Whether `a` crosses the beginning of `b`.
    pub fn crosses_s(&self, a: usize, b: usize) -> bool {
        self.contains_point(a, self.begin[b])
    }

    pub fn intersects(&self, a: usize, b: usize) -> bool {
        a == b || self.crosses_s(a, b) || self.crosses_s(b, a)
    }

    /// Whether `inner` is contained in `outer` (both extremes inside, no wrap).
    pub fn contains_arc(&self, outer: usize, inner: usize) -> bool {
        if outer == inner {
            return false;
        }
        let b = self.begin[outer];
        let e = self.dist(b, self.end[outer]);
        let si = self.dist(b, self.begin[inner]);
        let ti = self.dist(b, self.end[inner]);
        si > 0 && si < ti && ti < e
    }

    pub fn covers_circle_pair(&self, a: usize, b: usize) -> bool {
        a != b && self.contains_point(a, self.end[b]) && self.contains_point(b, self.end[a])
    }

    pub fn is_proper(&self) -> bool {
        let n = self.n();
        (0..n).all(|a| (0..n).all(|b| !self.contains_arc(a, b)))
    }

    /// Applies an arc-id relabeling: arc `i` becomes `map[i]`.
    pub fn relabel(&self, map: &[usize]) -> CircularArcModel {
        let order = self.order.iter().map(|e| Extreme { arc: map[e.arc], kind: e.kind }).collect();
        CircularArcModel::new(order).expect("relabel must be a permutation")
    }

    /// The same circular order read from a different cut.
    pub fn rotated(&self, by: usize) -> CircularArcModel {
        if self.order.is_empty() {
            return self.clone();
        }
        let mut order = self.order.clone();
        order.rotate_left(by % self.order.len());
        CircularArcModel::new(order).expect("rotation keeps validity")
    }

    /// Swaps the kinds of both extremes of one arc.
    pub fn complement_arc(&self, arc: usize) -> CircularArcModel {
        let order = self
            .order
            .iter()
            .map(|e| if e.arc == arc { Extreme { arc, kind: e.kind.flip() } } else { *e })
            .collect();
        CircularArcModel::new(order).expect("complement keeps validity")
    }

    /// Arc ids in the order their beginnings appear from position 0.
    pub fn arcs_by_beginning(&self) -> Vec<usize> {
        self.order.iter().filter(|e| e.is_beginning()).map(|e| e.arc).collect()
    }
}

impl fmt::Display for CircularArcModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.order.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

pub fn intersection_graph(model: &CircularArcModel) -> Graph {
    let n = model.n();
    let mut g = Graph::new(n);
    // Sweep twice around the circle so arcs that wrap are active from the start.
    let mut active = vec![false; n];
    let len = model.len();
    for step in 0..2 * len {
        let e = model.at(step);
        match e.kind {
            ExtremeKind::Beginning => {
                if step >= len {
                    for (b, &on) in active.iter().enumerate() {
                        if on && b != e.arc {
                            g.add_edge(e.arc, b);
                        }
                    }
                }
                active[e.arc] = true;
            }
            ExtremeKind::Ending => active[e.arc] = false,
        }
    }
    g
}

/// Keeps the given arcs; returns the submodel and `map[new_id] = old_id`.
pub fn induced_submodel(model: &CircularArcModel, arcs: &[usize]) -> Result<(CircularArcModel, Vec<usize>), ModelError> {
    let mut new_id = vec![usize::MAX; model.n()];
    let mut map = Vec::new();
    let mut sorted = arcs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &a in &sorted {
        if a >= model.n() {
            return Err(ModelError::NoSuchArc { arc: a });
        }
        new_id[a] = map.len();
        map.push(a);
    }
    let order = model
        .order()
        .iter()
        .filter(|e| new_id[e.arc] != usize::MAX)
        .map(|e| Extreme { arc: new_id[e.arc], kind: e.kind })
        .collect();
    Ok((CircularArcModel::new(order)?, map))
}

pub fn complement_model(model: &CircularArcModel) -> CircularArcModel {
    let order = model.order().iter().map(|e| Extreme { arc: e.arc, kind: e.kind.flip() }).collect();
    CircularArcModel::new(order).expect("complement keeps validity")
}

/// Adds a twin of `a` with id `n`.
pub fn duplicate_arc(model: &CircularArcModel, a: usize) -> Result<CircularArcModel, ModelError> {
    if a >= model.n() {
        return Err(ModelError::NoSuchArc { arc: a });
    }
    let fresh = model.n();
    let mut order = Vec::with_capacity(model.len() + 2);
    for e in model.order() {
        order.push(*e);
        if e.arc == a {
            order.push(Extreme { arc: fresh, kind: e.kind });
        }
    }
    CircularArcModel::new(order)
}

pub fn reverse_model(model: &CircularArcModel) -> CircularArcModel {
    let order = model.order().iter().rev().map(|e| Extreme { arc: e.arc, kind: e.kind.flip() }).collect();
    CircularArcModel::new(order).expect("reverse keeps validity")
}

/// Rotation-and-relabeling equality.
pub fn equal_models(m1: &CircularArcModel, m2: &CircularArcModel) -> bool {
    if m1.n() != m2.n() {
        return false;
    }
    let len = m1.len();
    if len == 0 {
        return true;
    }
    let n = m1.n();
    let mut fwd = vec![usize::MAX; n];
    let mut bwd = vec![usize::MAX; n];
    'rot: for r in 0..len {
        fwd.iter_mut().for_each(|x| *x = usize::MAX);
        bwd.iter_mut().for_each(|x| *x = usize::MAX);
        for i in 0..len {
            let a = m1.order()[i];
            let b = m2.order()[(i + r) % len];
            if a.kind != b.kind {
                continue 'rot;
            }
            match (fwd[a.arc], bwd[b.arc]) {
                (usize::MAX, usize::MAX) => {
                    fwd[a.arc] = b.arc;
                    bwd[b.arc] = a.arc;
                }
                (x, y) if x == b.arc && y == a.arc => {}
                _ => continue 'rot,
            }
        }
        return true;
    }
    false
}

/// Arcs holding at least n-1 extremes of other arcs. Only meaningful for
/// proper models, where these are exactly the universal vertices.
pub fn universal_arcs(model: &CircularArcModel) -> Vec<usize> {
    let n = model.n();
    if n == 0 {
        return Vec::new();
    }
    (0..n).filter(|&a| model.inner_len(a) + 1 >= n).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremeRun {
    pub kind: ExtremeKind,
    /// First position of the run.
    pub start: usize,
    pub extremes: Vec<Extreme>,
}

/// Maximal runs of same-kind extremes; the first run starts at the first
/// kind change after position 0, so runs never straddle the cut twice.
pub fn extreme_sequences(model: &CircularArcModel) -> Vec<ExtremeRun> {
    let len = model.len();
    if len == 0 {
        return Vec::new();
    }
    let start = (0..len).find(|&i| model.at(i).kind != model.at(i + len - 1).kind).unwrap_or(0);
    let mut runs: Vec<ExtremeRun> = Vec::new();
    for k in 0..len {
        let p = (start + k) % len;
        let e = model.at(p);
        match runs.last_mut() {
            Some(run) if run.kind == e.kind => run.extremes.push(e),
            _ => runs.push(ExtremeRun { kind: e.kind, start: p, extremes: vec![e] }),
        }
    }
    runs
}

/// Twin classes by closed neighborhood; classes are listed by smallest member.
pub fn twin_classes(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if class_of[v] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[v] = id;
        let mut class = vec![v];
        for w in v + 1..n {
            if class_of[w] == usize::MAX && g.adjacent(v, w) && g.same_closed_neighborhood(v, w) {
                class_of[w] = id;
                class.push(w);
            }
        }
        classes.push(class);
    }
    classes
}

pub fn is_twin_consecutive(model: &CircularArcModel) -> bool {
    let g = intersection_graph(model);
    let len = model.len();
    twin_classes(&g).into_iter().filter(|c| c.len() > 1).all(|class| {
        let mut member = vec![false; model.n()];
        class.iter().for_each(|&a| member[a] = true);
        [ExtremeKind::Beginning, ExtremeKind::Ending].into_iter().all(|kind| {
            // Consecutive on the circle iff the member positions form exactly one run.
            let inside = |p: usize| {
                let e = model.at(p);
                e.kind == kind && member[e.arc]
            };
            let starts = (0..len).filter(|&p| inside(p) && !inside(p + len - 1)).count();
            starts == 1
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_model;

    fn m(text: &str) -> CircularArcModel {
        parse_model(text).unwrap()
    }

    #[test]
    fn disjoint_and_nested() {
        assert_eq!(intersection_graph(&m("2\ns0 t0 s1 t1")).edge_count(), 0);
        let g = intersection_graph(&m("2\ns0 s1 t1 t0"));
        assert!(g.adjacent(0, 1));
    }

    #[test]
    fn complement_of_disjoint_pair_covers() {
        let c = complement_model(&m("2\ns0 t0 s1 t1"));
        assert!(c.covers_circle_pair(0, 1));
        assert!(intersection_graph(&c).adjacent(0, 1));
    }

    #[test]
    fn duplicate_single_arc() {
        let d = duplicate_arc(&m("1\ns0 t0"), 0).unwrap();
        assert_eq!(d.to_string(), "s0 s1 t0 t1");
        assert!(intersection_graph(&d).adjacent(0, 1));
        assert!(is_twin_consecutive(&d));
    }

    #[test]
    fn universal_pair() {
        assert_eq!(universal_arcs(&m("2\ns0 s1 t0 t1")), vec![0, 1]);
        assert!(universal_arcs(&m("2\ns0 t0 s1 t1")).is_empty());
    }

    #[test]
    fn runs() {
        let r = extreme_sequences(&m("2\ns0 s1 t0 t1"));
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].extremes, vec![Extreme::s(0), Extreme::s(1)]);
        assert_eq!(extreme_sequences(&m("2\ns0 t0 s1 t1")).len(), 4);
        let wrap = m("2\nt1 s0 s1 t0");
        let runs = extreme_sequences(&wrap);
        assert_eq!(runs.len(), 2);
        assert_eq!(runs[1].extremes, vec![Extreme::t(0), Extreme::t(1)]);
    }

    #[test]
    fn equality_is_rotation_only() {
        let a = m("3\ns0 s1 t0 s2 t1 t2");
        assert!(equal_models(&a, &a.rotated(3)));
        assert!(equal_models(&a, &a.relabel(&[2, 0, 1])));
        assert!(equal_models(&reverse_model(&reverse_model(&a)), &a));
        assert!(!equal_models(&a, &m("2\ns0 t0 s1 t1")));
    }

    #[test]
    fn containment() {
        let a = m("2\ns0 s1 t1 t0");
        assert!(a.contains_arc(0, 1));
        assert!(!a.contains_arc(1, 0));
        assert!(!a.is_proper());
        // Two arcs covering the circle contain each other's ends but not each other.
        let b = m("2\ns0 t1 s1 t0");
        assert!(b.is_proper());
    }
}
