//! Unit-length realizability of a fixed extreme order.
//!
//! With the circumference fixed to 1 and the first extreme at 0, a realization
//! with common arc length `u` is a solution of a difference-constraint system
//! whose weights are linear in `u`. Strict inequalities carry an infinitesimal
//! `eps`. Feasibility for a fixed `u` is a Bellman–Ford run with
//! lexicographic weights; every negative cycle found yields a half-line bound
//! on `u`, so a bisection on `u` closes in after finitely many cuts.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::model::CircularArcModel;

pub type Rational = Ratio<i128>;

/// Point positions (one per extreme, in model order), the circumference and
/// the common arc length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitWitness {
    pub positions: Vec<Rational>,
    pub circumference: Rational,
    pub arc_length: Rational,
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    #[serde(rename = "L")]
    l: String,
    u: String,
    positions: Vec<String>,
}

fn fmt_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_ratio(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| format!("bad rational `{s}`: {e}"))
}

impl Serialize for UnitWitness {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        WitnessJson {
            l: fmt_ratio(&self.circumference),
            u: fmt_ratio(&self.arc_length),
            positions: self.positions.iter().map(fmt_ratio).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for UnitWitness {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = WitnessJson::deserialize(de)?;
        let conv = |s: &str| parse_ratio(s).map_err(serde::de::Error::custom);
        Ok(UnitWitness {
            circumference: conv(&raw.l)?,
            arc_length: conv(&raw.u)?,
            positions: raw.positions.iter().map(|p| conv(p)).collect::<Result<_, _>>()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("witness has {found} positions, model has {expected} extremes")]
    Length { expected: usize, found: usize },
    #[error("circumference must be positive")]
    Circumference,
    #[error("arc length must lie strictly between 0 and the circumference")]
    ArcLength,
    #[error("position {0} lies outside [0, L)")]
    Range(usize),
    #[error("positions do not follow the model order")]
    Order,
    #[error("arc {arc} has length {found}, expected {expected}")]
    Unequal { arc: usize, found: String, expected: String },
}

/// Checks that the witness realizes the model order with equal arc lengths.
pub fn validate_witness(model: &CircularArcModel, w: &UnitWitness) -> Result<(), WitnessError> {
    let len = model.len();
    if w.positions.len() != len {
        return Err(WitnessError::Length { expected: len, found: w.positions.len() });
    }
    if !w.circumference.is_positive() {
        return Err(WitnessError::Circumference);
    }
    if len == 0 {
        return Ok(());
    }
    if !w.arc_length.is_positive() || w.arc_length >= w.circumference {
        return Err(WitnessError::ArcLength);
    }
    if let Some(i) = w.positions.iter().position(|p| p.is_negative() || *p >= w.circumference) {
        return Err(WitnessError::Range(i));
    }
    // Clockwise order: at most one descent around the circle, no ties.
    let mut descents = 0;
    for i in 0..len {
        match w.positions[i].cmp(&w.positions[(i + 1) % len]) {
            Ordering::Less => {}
            Ordering::Greater => descents += 1,
            Ordering::Equal if len > 1 => return Err(WitnessError::Order),
            Ordering::Equal => {}
        }
    }
    if descents > 1 || (len > 1 && descents == 0) {
        return Err(WitnessError::Order);
    }
    for arc in 0..model.n() {
        let s = w.positions[model.s(arc)];
        let t = w.positions[model.t(arc)];
        let mut d = t - s;
        if d.is_negative() {
            d += w.circumference;
        }
        if d != w.arc_length {
            return Err(WitnessError::Unequal { arc, found: d.to_string(), expected: w.arc_length.to_string() });
        }
    }
    Ok(())
}

/// Edge weight `a + b*u + e*eps`.
#[derive(Debug, Clone, Copy)]
struct Symbolic {
    a: i64,
    b: i64,
    e: i64,
}

/// A weight evaluated at a concrete `u`, still carrying the `eps` term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Lex {
    value: Rational,
    eps: i64,
}

impl Lex {
    fn zero() -> Self {
        Lex { value: Rational::zero(), eps: 0 }
    }
    fn add(self, o: Lex) -> Lex {
        Lex { value: self.value + o.value, eps: self.eps + o.eps }
    }
}

impl PartialOrd for Lex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Lex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value).then(self.eps.cmp(&other.eps))
    }
}

struct System {
    nodes: usize,
    edges: Vec<(usize, usize, Symbolic)>,
}

fn build_system(model: &CircularArcModel) -> System {
    let len = model.len();
    let mut edges = Vec::new();
    // p[k] < p[k+1]
    for k in 0..len - 1 {
        edges.push((k + 1, k, Symbolic { a: 0, b: 0, e: -1 }));
    }
    // p[len-1] < p[0] + 1
    edges.push((0, len - 1, Symbolic { a: 1, b: 0, e: -1 }));
    for arc in 0..model.n() {
        let i = model.s(arc);
        let j = model.t(arc);
        let wrap = i64::from(j < i);
        // p[j] - p[i] = u - wrap
        edges.push((i, j, Symbolic { a: -wrap, b: 1, e: 0 }));
        edges.push((j, i, Symbolic { a: wrap, b: -1, e: 0 }));
    }
    System { nodes: len, edges }
}

enum Outcome {
    Feasible(Vec<Lex>),
    NegativeCycle(Symbolic),
}

fn eval(w: Symbolic, u: Rational) -> Lex {
    Lex { value: Rational::from_integer(w.a as i128) + u * Rational::from_integer(w.b as i128), eps: w.e }
}

fn bellman_ford(sys: &System, u: Rational) -> Outcome {
    let n = sys.nodes;
    let weights: Vec<Lex> = sys.edges.iter().map(|&(_, _, w)| eval(w, u)).collect();
    let mut dist = vec![Lex::zero(); n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut last = None;
    for _ in 0..n {
        last = None;
        for (idx, &(from, to, _)) in sys.edges.iter().enumerate() {
            let cand = dist[from].add(weights[idx]);
            if cand < dist[to] {
                dist[to] = cand;
                pred[to] = Some(idx);
                last = Some(to);
            }
        }
        if last.is_none() {
            return Outcome::Feasible(dist);
        }
    }
    let mut v = last.expect("relaxation in the final round");
    for _ in 0..n {
        v = sys.edges[pred[v].expect("predecessor on cycle")].0;
    }
    let start = v;
    let mut total = Symbolic { a: 0, b: 0, e: 0 };
    loop {
        let idx = pred[v].expect("predecessor on cycle");
        let w = sys.edges[idx].2;
        total = Symbolic { a: total.a + w.a, b: total.b + w.b, e: total.e + w.e };
        v = sys.edges[idx].0;
        if v == start {
            break;
        }
    }
    Outcome::NegativeCycle(total)
}

/// Picks a concrete `eps` for lexicographic potentials and returns positions.
fn concretize(sys: &System, dist: &[Lex], u: Rational) -> Vec<Rational> {
    let mut eps = Rational::one();
    for &(from, to, w) in &sys.edges {
        let w = eval(w, u);
        // Need dist[to] <= dist[from] + w at the chosen eps.
        let slack = dist[from].value + w.value - dist[to].value;
        let rate = dist[to].eps - dist[from].eps - w.eps;
        if rate > 0 {
            let bound = slack / Rational::from_integer(rate as i128);
            if bound < eps {
                eps = bound;
            }
        }
    }
    eps /= Rational::from_integer(2);
    let raw: Vec<Rational> = dist.iter().map(|d| d.value + eps * Rational::from_integer(d.eps as i128)).collect();
    let base = raw[0];
    raw.into_iter().map(|p| p - base).collect()
}

/// Decides whether the model order is realizable with all arcs of equal
/// length; returns a witness with circumference 1 when it is.
pub fn unit_realizable(model: &CircularArcModel) -> Option<UnitWitness> {
    if model.n() == 0 {
        return Some(UnitWitness { positions: Vec::new(), circumference: Rational::one(), arc_length: Rational::zero() });
    }
    let sys = build_system(model);
    // Open interval (lo, hi) of lengths not yet excluded.
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    loop {
        if lo >= hi {
            return None;
        }
        let u = (lo + hi) / Rational::from_integer(2);
        match bellman_ford(&sys, u) {
            Outcome::Feasible(dist) => {
                let positions = concretize(&sys, &dist, u);
                let w = UnitWitness { positions, circumference: Rational::one(), arc_length: u };
                debug_assert_eq!(validate_witness(model, &w), Ok(()));
                return Some(w);
            }
            Outcome::NegativeCycle(c) => {
                // The cycle forbids every u with a + b*u <= 0 (its eps part is never positive).
                debug_assert!(c.e <= 0);
                if c.b == 0 {
                    return None;
                }
                let root = Rational::new(-(c.a as i128), c.b as i128);
                if c.b > 0 {
                    if root > lo {
                        lo = root;
                    }
                } else if root < hi {
                    hi = root;
                }
            }
        }
    }
}

impl fmt::Display for UnitWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_model;

    #[test]
    fn single_arc() {
        let m = parse_model("1\ns0 t0").unwrap();
        let w = unit_realizable(&m).unwrap();
        assert_eq!(validate_witness(&m, &w), Ok(()));
    }

    #[test]
    fn nested_arcs_are_not_unit() {
        assert!(unit_realizable(&parse_model("2\ns0 s1 t1 t0").unwrap()).is_none());
    }

    #[test]
    fn covering_pair_is_unit() {
        let m = parse_model("2\ns0 t1 s1 t0").unwrap();
        let w = unit_realizable(&m).unwrap();
        assert!(w.arc_length > Rational::new(1, 2));
        assert_eq!(validate_witness(&m, &w), Ok(()));
    }

    #[test]
    fn json_round_trip() {
        let m = parse_model("2\ns0 t0 s1 t1").unwrap();
        let w = unit_realizable(&m).unwrap();
        let text = serde_json::to_string(&w).unwrap();
        assert!(text.contains("\"L\":\"1/1\""));
        let back: UnitWitness = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let m = parse_model("2\ns0 t0 s1 t1").unwrap();
        let mut w = unit_realizable(&m).unwrap();
        w.positions.swap(0, 1);
        assert!(validate_witness(&m, &w).is_err());
    }
}
