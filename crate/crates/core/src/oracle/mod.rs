//! Brute-force reference checkers. Everything here works directly on covered
//! segment sets and exhaustive search, and shares no logic with the fast
//! algorithms it is used to validate.

mod unit;

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::model::{CircularArcModel, Extreme, ExtremeKind};

pub use unit::{unit_realizable, validate_witness, Rational, UnitWitness, WitnessError};

type Bits = Vec<u64>;


fn set(b: &mut [u64], i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

/// For each arc, the set of segments it covers, found by walking the order.
pub fn segment_sets(model: &CircularArcModel) -> Vec<Bits> {
    let len = model.len();
    let words = len.div_ceil(64).max(1);
    let mut out = vec![vec![0u64; words]; model.n()];
    for (start, e) in model.order().iter().enumerate() {
        if !e.is_beginning() {
            continue;
        }
        let mut p = start;
        loop {
            set(&mut out[e.arc], p);
            p = (p + 1) % len;
            if model.order()[p] == Extreme::t(e.arc) {
                break;
            }
        }
    }
    out
}

fn full_mask(len: usize, words: usize) -> Bits {
    let mut m = vec![0u64; words];
    for i in 0..len {
        set(&mut m, i);
    }
    m
}

fn union_is_full(sets: &[&Bits], full: &Bits) -> bool {
    (0..full.len()).all(|w| sets.iter().fold(0u64, |acc, s| acc | s[w]) == full[w])
}

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn meets(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

/// First pair (lexicographic) of arcs whose union covers every segment.
pub fn find_two_cover(model: &CircularArcModel) -> Option<(usize, usize)> {
    let segs = segment_sets(model);
    let full = full_mask(model.len(), segs.first().map_or(1, |s| s.len()));
    let n = model.n();
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| union_is_full(&[&segs[a], &segs[b]], &full))
}

/// First triple (lexicographic) covering every segment with no covering pair inside it.
pub fn find_three_cover(model: &CircularArcModel) -> Option<(usize, usize, usize)> {
    let segs = segment_sets(model);
    let full = full_mask(model.len(), segs.first().map_or(1, |s| s.len()));
    let n = model.n();
    let pair = |a: usize, b: usize| union_is_full(&[&segs[a], &segs[b]], &full);
    for a in 0..n {
        for b in a + 1..n {
            if pair(a, b) {
                continue;
            }
            for c in b + 1..n {
                if union_is_full(&[&segs[a], &segs[b], &segs[c]], &full) && !pair(a, c) && !pair(b, c) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Adjacency computed from shared segments.
pub fn segment_graph(model: &CircularArcModel) -> Graph {
    let segs = segment_sets(model);
    let mut g = Graph::new(model.n());
    for a in 0..model.n() {
        for b in a + 1..model.n() {
            if meets(&segs[a], &segs[b]) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub proper: bool,
    pub normal: bool,
    pub helly: bool,
    pub interval_point: bool,
    pub two_cover: Option<(usize, usize)>,
    pub three_cover: Option<(usize, usize, usize)>,
}

impl ClassReport {
    pub fn nhca(&self) -> bool {
        self.normal && self.helly
    }

    pub fn phca(&self) -> bool {
        self.proper && self.helly
    }
}

pub fn classify(model: &CircularArcModel) -> ClassReport {
    let n = model.n();
    let segs = segment_sets(model);
    let words = segs.first().map_or(1, |s| s.len());
    let full = full_mask(model.len(), words);
    let proper = (0..n).all(|a| (0..n).all(|b| a == b || !subset(&segs[b], &segs[a])));
    let two_cover = find_two_cover(model);
    let three_cover = find_three_cover(model);
    let mut covered = vec![0u64; words];
    for s in &segs {
        covered.iter_mut().zip(s).for_each(|(c, x)| *c |= x);
    }
    let interval_point = n == 0 || covered != full;
    let g = segment_graph(model);
    let helly = maximal_cliques(&g).iter().all(|clique| {
        let mut common = full.clone();
        for &a in clique {
            common.iter_mut().zip(&segs[a]).for_each(|(c, x)| *c &= x);
        }
        common.iter().any(|&w| w != 0)
    });
    ClassReport { proper, normal: two_cover.is_none(), helly, interval_point, two_cover, three_cover }
}

/// Maximal cliques by Bron–Kerbosch with pivoting, each sorted, listed in
/// lexicographic order.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let words = n.div_ceil(64).max(1);
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut p = vec![0u64; words];
    for v in 0..n {
        set(&mut p, v);
    }
    let x = vec![0u64; words];
    let mut r = Vec::new();
    bron_kerbosch(g, &mut r, p, x, &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn members(b: &[u64]) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(w, &word)| {
        let mut bits = word;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(w * 64 + i)
        })
    })
}

fn bron_kerbosch(g: &Graph, r: &mut Vec<usize>, mut p: Bits, mut x: Bits, out: &mut Vec<Vec<usize>>) {
    if p.iter().all(|&w| w == 0) {
        if x.iter().all(|&w| w == 0) {
            out.push(r.clone());
        }
        return;
    }
    let pivot = members(&p)
        .chain(members(&x))
        .max_by_key(|&u| p.iter().zip(g.row(u)).map(|(a, b)| (a & b).count_ones()).sum::<u32>())
        .expect("p is nonempty");
    let candidates: Vec<usize> = members(&p).filter(|&v| !g.adjacent(pivot, v)).collect();
    for v in candidates {
        let row = g.row(v);
        let np = p.iter().zip(row).map(|(a, b)| a & b).collect();
        let nx = x.iter().zip(row).map(|(a, b)| a & b).collect();
        r.push(v);
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p[v / 64] &= !(1 << (v % 64));
        set(&mut x, v);
    }
}

/// An injective map `pattern vertex -> host vertex` realizing `pattern` as an
/// induced subgraph of `host`.
pub fn find_induced(host: &Graph, pattern: &Graph) -> Option<Vec<usize>> {
    let k = pattern.n();
    if k > host.n() {
        return None;
    }
    // Place high-degree pattern vertices first, then grow along edges.
    let mut order: Vec<usize> = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    while order.len() < k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = order.iter().filter(|&&u| pattern.adjacent(u, v)).count();
                (linked, pattern.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    let host_deg: Vec<usize> = (0..host.n()).map(|v| host.degree(v)).collect();
    let mut map = vec![usize::MAX; k];
    let mut used = vec![false; host.n()];
    if extend(host, pattern, &order, &host_deg, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    host: &Graph,
    pattern: &Graph,
    order: &[usize],
    host_deg: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let p = order[depth];
    let need = pattern.degree(p);
    for h in 0..host.n() {
        if used[h] || host_deg[h] < need {
            continue;
        }
        let consistent = order[..depth].iter().all(|&q| pattern.adjacent(p, q) == host.adjacent(h, map[q]));
        if !consistent {
            continue;
        }
        map[p] = h;
        used[h] = true;
        if extend(host, pattern, order, host_deg, depth + 1, map, used) {
            return true;
        }
        used[h] = false;
    }
    map[p] = usize::MAX;
    false
}

/// Isomorphism test; returns `map[v in a] = vertex in b`.
pub fn isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return None;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    find_induced(b, a)
}

/// Class filters accepted by [`enumerate_models`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelFilter {
    Any,
    Proper,
    Normal,
    Helly,
    Nhca,
    Phca,
    Nphca,
    Interval,
}

impl ModelFilter {
    pub fn accepts(self, r: &ClassReport) -> bool {
        match self {
            ModelFilter::Any => true,
            ModelFilter::Proper => r.proper,
            ModelFilter::Normal => r.normal,
            ModelFilter::Helly => r.helly,
            ModelFilter::Nhca => r.normal && r.helly,
            ModelFilter::Phca => r.proper && r.helly,
            ModelFilter::Nphca => r.proper && r.normal && r.helly,
            ModelFilter::Interval => r.interval_point,
        }
    }
}

impl std::str::FromStr for ModelFilter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "any" | "ca" => ModelFilter::Any,
            "proper" | "pca" => ModelFilter::Proper,
            "normal" | "nca" => ModelFilter::Normal,
            "helly" | "hca" => ModelFilter::Helly,
            "nhca" => ModelFilter::Nhca,
            "phca" => ModelFilter::Phca,
            "nphca" => ModelFilter::Nphca,
            "interval" | "ig" => ModelFilter::Interval,
            other => return Err(format!("unknown filter `{other}`")),
        })
    }
}

pub const ENUMERATION_LIMIT: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("enumeration is limited to {ENUMERATION_LIMIT} vertices, got {0}")]
    TooLarge(usize),
}

/// Calls `f` on every model with `n` arcs, once per circular order up to
/// rotation: the order always starts with `s0`.
pub fn for_each_model(n: usize, mut f: impl FnMut(&CircularArcModel)) {
    if n == 0 {
        f(&CircularArcModel::empty());
        return;
    }
    let mut rest: Vec<Extreme> = (1..n).map(Extreme::s).chain((0..n).map(Extreme::t)).collect();
    rest.sort();
    loop {
        let mut order = Vec::with_capacity(2 * n);
        order.push(Extreme::s(0));
        order.extend_from_slice(&rest);
        f(&CircularArcModel::new(order).expect("permutation of extremes"));
        if !next_permutation(&mut rest) {
            break;
        }
    }
}

/// Exhaustive ones-property check: an order of `lines` in which every set is
/// a run (circular runs when `circular`), found by trying every permutation.
pub fn ones_by_search(lines: usize, sets: &[Vec<usize>], circular: bool) -> Option<Vec<usize>> {
    let member: Vec<Vec<bool>> = sets
        .iter()
        .map(|r| {
            let mut m = vec![false; lines];
            r.iter().for_each(|&c| m[c] = true);
            m
        })
        .collect();
    let fits = |order: &[usize]| {
        member.iter().all(|m| {
            let inside = |i: usize| m[order[i]];
            let before = |i: usize| if i == 0 { circular && inside(lines - 1) } else { inside(i - 1) };
            (0..lines).filter(|&i| inside(i) && !before(i)).count() <= 1
        })
    };
    let mut order: Vec<usize> = (0..lines).collect();
    loop {
        if fits(&order) {
            return Some(order);
        }
        // Rotations are equivalent for circular runs, so line 0 stays first.
        let tail = usize::from(circular && lines > 0);
        if !next_permutation(&mut order[tail..]) {
            return None;
        }
    }
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Canonical string of a model up to rotation and arc relabeling: the least,
/// over all rotations, of the order with arcs renamed by first appearance.
pub fn canonical_form(model: &CircularArcModel) -> Vec<(ExtremeKind, usize)> {
    let len = model.len();
    let mut best: Option<Vec<(ExtremeKind, usize)>> = None;
    let mut name = vec![usize::MAX; model.n()];
    for r in 0..len {
        name.iter_mut().for_each(|x| *x = usize::MAX);
        let mut next = 0;
        let form: Vec<(ExtremeKind, usize)> = (0..len)
            .map(|i| {
                let e = model.order()[(r + i) % len];
                if name[e.arc] == usize::MAX {
                    name[e.arc] = next;
                    next += 1;
                }
                (e.kind, name[e.arc])
            })
            .collect();
        if best.as_ref().is_none_or(|b| form < *b) {
            best = Some(form);
        }
    }
    best.unwrap_or_default()
}

/// Every model, up to rotation and relabeling, whose intersection graph is
/// exactly `graph` and whose class report passes `filter`.
pub fn enumerate_models(graph: &Graph, filter: ModelFilter) -> Result<Vec<CircularArcModel>, EnumerationError> {
    let n = graph.n();
    if n > ENUMERATION_LIMIT {
        return Err(EnumerationError::TooLarge(n));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for_each_model(n, |m| {
        if segment_graph(m) != *graph {
            return;
        }
        if !filter.accepts(&classify(m)) {
            return;
        }
        if seen.insert(canonical_form(m)) {
            out.push(m.clone());
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_model;

    fn m(text: &str) -> CircularArcModel {
        parse_model(text).unwrap()
    }

    #[test]
    fn single_arc_report() {
        let r = classify(&m("1\ns0 t0"));
        assert!(r.proper && r.normal && r.helly && r.interval_point);
        assert_eq!(r.two_cover, None);
    }

    #[test]
    fn covering_pair() {
        let r = classify(&m("2\ns0 t1 s1 t0"));
        assert_eq!(r.two_cover, Some((0, 1)));
        assert!(!r.normal && r.proper && r.helly && !r.interval_point);
    }

    #[test]
    fn three_mutually_covering_arcs_are_not_helly() {
        let r = classify(&m("3\ns0 t2 s1 t0 s2 t1"));
        assert!(!r.helly && r.normal);
        assert_eq!(r.three_cover, Some((0, 1, 2)));
    }

    #[test]
    fn cliques_of_small_graphs() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(maximal_cliques(&c4), vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]);
        assert_eq!(maximal_cliques(&Graph::new(2)), vec![vec![0], vec![1]]);
        assert_eq!(maximal_cliques(&Graph::complete(4)), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn induced_search() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let k4 = Graph::complete(4);
        assert!(find_induced(&k4, &c4).is_none());
        let map = find_induced(&c4, &c4).unwrap();
        assert_eq!(c4.permuted(&map), c4);
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(find_induced(&c4, &p3).is_some());
    }

    #[test]
    fn model_counts() {
        let mut count = 0;
        for_each_model(3, |_| count += 1);
        assert_eq!(count, 120);
        assert_eq!(enumerate_models(&Graph::new(1), ModelFilter::Any).unwrap().len(), 1);
        assert!(enumerate_models(&Graph::new(6), ModelFilter::Any).is_err());
    }

    #[test]
    fn canonical_form_ignores_rotation_and_labels() {
        let a = m("3\ns0 s1 t0 s2 t1 t2");
        assert_eq!(canonical_form(&a), canonical_form(&a.rotated(2).relabel(&[1, 2, 0])));
    }
}
