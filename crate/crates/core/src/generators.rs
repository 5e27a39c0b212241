//! Named graph families, fixture models and random models.

use std::fmt;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;
use crate::model::{intersection_graph, CircularArcModel, Extreme};
use crate::oracle::{Rational, UnitWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Ci { n: usize, k: usize },
    Wheel(usize),
    RisingSun(usize),
    Sun3,
    Umbrella,
    Tent,
    K13,
    Hole(usize),
    Path(usize),
    Complete(usize),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Ci { n, k } => write!(f, "CI({n},{k})"),
            Family::Wheel(n) => write!(f, "W{n}"),
            Family::RisingSun(n) => write!(f, "R{n}"),
            Family::Sun3 => write!(f, "S3"),
            Family::Umbrella => write!(f, "U"),
            Family::Tent => write!(f, "Tent"),
            Family::K13 => write!(f, "K13"),
            Family::Hole(n) => write!(f, "C{n}"),
            Family::Path(n) => write!(f, "P{n}"),
            Family::Complete(n) => write!(f, "K{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("CI({n},{k}) needs gcd(n,k) = 1 and n > 2k")]
    BadCi { n: usize, k: usize },
    #[error("{family} needs parameter at least {min}")]
    TooSmall { family: &'static str, min: usize },
    #[error("{0} has no fixture model")]
    NoFixture(Family),
}

impl Family {
    pub fn validate(&self) -> Result<(), FamilyError> {
        let min = |family, v: usize, min| if v < min { Err(FamilyError::TooSmall { family, min }) } else { Ok(()) };
        match *self {
            Family::Ci { n, k } => {
                if k == 0 || n <= 2 * k || n.gcd(&k) != 1 {
                    return Err(FamilyError::BadCi { n, k });
                }
                Ok(())
            }
            Family::Wheel(n) => min("wheel", n, 4),
            Family::RisingSun(n) => min("rising sun", n, 4),
            Family::Hole(n) => min("hole", n, 4),
            Family::Path(n) => min("path", n, 1),
            Family::Complete(n) => min("complete graph", n, 1),
            Family::Sun3 | Family::Umbrella | Family::Tent | Family::K13 => Ok(()),
        }
    }
}

pub fn ci_model(n: usize, k: usize) -> Result<CircularArcModel, FamilyError> {
    Family::Ci { n, k }.validate()?;
    // For even k the B arcs move two units clockwise: otherwise each B_i
    // starts where some A_j ends and lies inside another A_j.
    let len = 4 * n;
    let shift = if k % 2 == 0 { 2 } else { 0 };
    let mut begins = vec![0usize; 2 * n];
    let mut ends = vec![0usize; 2 * n];
    for i in 0..n {
        begins[i] = (4 * k * i) % len;
        ends[i] = (4 * k * (i + 1) + 1) % len;
        begins[n + i] = (4 * k * i + 2 * k + 1 + shift) % len;
        ends[n + i] = (4 * k * (i + 1) + 2 * k + shift) % len;
    }
    Ok(CircularArcModel::from_positions(&begins, &ends))
}

pub fn named_graph(family: Family) -> Result<Graph, FamilyError> {
    family.validate()?;
    let g = match family {
        Family::Ci { n, k } => intersection_graph(&ci_model(n, k)?),
        Family::Hole(n) => Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()),
        Family::Path(n) => Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()),
        Family::Complete(n) => Graph::complete(n),
        Family::K13 => Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]),
        Family::Wheel(n) => {
            let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            edges.extend((0..n).map(|i| (i, n)));
            Graph::from_edges(n + 1, &edges)
        }
        Family::Sun3 => Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (4, 1), (4, 2), (5, 2), (5, 0)]),
        Family::Tent => named_graph(Family::Sun3)?.complement(),
        Family::Umbrella => {
            // Path 0..4 under the apex 5, handle 6 hanging from the middle of the path.
            let mut edges: Vec<_> = (1..5).map(|i| (i - 1, i)).collect();
            edges.extend((0..5).map(|i| (i, 5)));
            edges.push((2, 6));
            Graph::from_edges(7, &edges)
        }
        Family::RisingSun(n) => {
            let (first, last) = (0, n - 1);
            let mut edges: Vec<_> = (1..n - 2).map(|i| (i, i + 1)).collect();
            edges.push((first, last));
            for v in 1..n - 1 {
                edges.push((first, v));
                edges.push((last, v));
            }
            edges.extend([(n, first), (n, 1), (n + 1, n - 2), (n + 1, last), (n + 2, last), (n + 2, first)]);
            Graph::from_edges(n + 3, &edges)
        }
    };
    Ok(g)
}

/// Lays out `points` clique points on the circle; arc `i` covers the cyclic
/// range of points `ranges[i].0 ..= ranges[i].1`.
pub fn model_from_points(points: usize, ranges: &[(usize, usize)]) -> CircularArcModel {
    let mut order = Vec::with_capacity(2 * ranges.len());
    for p in 0..points {
        order.extend(ranges.iter().enumerate().filter(|(_, r)| r.0 == p).map(|(a, _)| Extreme::s(a)));
        order.extend(ranges.iter().enumerate().filter(|(_, r)| r.1 == p).map(|(a, _)| Extreme::t(a)));
    }
    CircularArcModel::new(order).expect("every arc gets one beginning and one ending")
}

pub fn named_model(family: Family) -> Result<CircularArcModel, FamilyError> {
    family.validate()?;
    let m = match family {
        Family::Ci { n, k } => ci_model(n, k)?,
        Family::Hole(n) => model_from_points(n, &(0..n).map(|i| ((i + n - 1) % n, i)).collect::<Vec<_>>()),
        Family::Path(n) => {
            let pts = n.saturating_sub(1).max(1);
            model_from_points(pts, &(0..n).map(|i| (i.saturating_sub(1), i.min(pts - 1))).collect::<Vec<_>>())
        }
        Family::Complete(n) => model_from_points(1, &vec![(0, 0); n]),
        Family::K13 => model_from_points(3, &[(0, 2), (0, 0), (1, 1), (2, 2)]),
        Family::Wheel(n) => {
            let mut ranges: Vec<_> = (0..n).map(|i| ((i + n - 1) % n, i)).collect();
            ranges.push((1, 0));
            model_from_points(n, &ranges)
        }
        Family::Sun3 => model_from_points(4, &[(0, 2), (3, 1), (1, 3), (0, 0), (3, 3), (2, 2)]),
        Family::Umbrella => model_from_points(5, &[(0, 0), (0, 1), (1, 3), (3, 4), (4, 4), (3, 1), (2, 2)]),
        Family::RisingSun(n) => {
            let mut ranges = vec![(0, 0); n + 3];
            ranges[0] = (n - 1, n - 3);
            ranges[n - 1] = (1, n - 1);
            ranges[1] = (0, 1);
            for (i, r) in ranges.iter_mut().enumerate().take(n - 2).skip(2) {
                *r = (i - 1, i);
            }
            ranges[n - 2] = (n - 3, n - 2);
            ranges[n] = (0, 0);
            ranges[n + 1] = (n - 2, n - 2);
            ranges[n + 2] = (n - 1, n - 1);
            model_from_points(n, &ranges)
        }
        Family::Tent => {
            // Three outer arcs cover the circle pairwise overlapping; each pendant
            // sits where only its neighbor is present.
            let order = [
                Extreme::s(3),
                Extreme::t(5),
                Extreme::s(2),
                Extreme::t(2),
                Extreme::s(4),
                Extreme::t(3),
                Extreme::s(0),
                Extreme::t(0),
                Extreme::s(5),
                Extreme::t(4),
                Extreme::s(1),
                Extreme::t(1),
            ];
            CircularArcModel::new(order.to_vec()).expect("fixture order")
        }
    };
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    Any,
    Proper,
    /// Arcs shorter than half the circle, so no two of them cover it.
    Short,
}

pub fn random_model(n: usize, seed: u64, constraint: Constraint) -> CircularArcModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match constraint {
        Constraint::Any => {
            let mut order: Vec<Extreme> = (0..n).flat_map(|a| [Extreme::s(a), Extreme::t(a)]).collect();
            order.shuffle(&mut rng);
            CircularArcModel::new(order).expect("shuffled extremes")
        }
        Constraint::Proper => random_proper(n, &mut rng),
        Constraint::Short => random_short(n, &mut rng),
    }
}

/// Beginnings and endings are laid out by a random kind string. Lifting the
/// circle to the line, arc `i` (in beginning order) takes ending `i + c` for one
/// shift `c`; beginnings and endings then increase together, which rules out
/// containment. Only shifts giving every arc a length in (0, 2n) are usable.
fn random_proper(n: usize, rng: &mut ChaCha8Rng) -> CircularArcModel {
    if n == 0 {
        return CircularArcModel::empty();
    }
    let len = 2 * n;
    loop {
        let mut is_begin: Vec<bool> = (0..len).map(|i| i < n).collect();
        is_begin.shuffle(rng);
        let b: Vec<usize> = (0..len).filter(|&p| is_begin[p]).collect();
        let e: Vec<usize> = (0..len).filter(|&p| !is_begin[p]).collect();
        let lifted_end = |j: usize| e[j % n] + len * (j / n);
        let shifts: Vec<usize> = (0..2 * n)
            .filter(|&c| {
                (0..n).all(|i| {
                    let end = lifted_end(i + c);
                    end > b[i] && end < b[i] + len
                })
            })
            .collect();
        let Some(&c) = shifts.get(rng.gen_range(0..shifts.len().max(1))) else {
            continue;
        };
        let mut label: Vec<usize> = (0..n).collect();
        label.shuffle(rng);
        let mut order = vec![Extreme::s(0); len];
        for i in 0..n {
            order[b[i]] = Extreme::s(label[i]);
            order[lifted_end(i + c) % len] = Extreme::t(label[i]);
        }
        return CircularArcModel::new(order).expect("every position assigned once");
    }
}

fn random_short(n: usize, rng: &mut ChaCha8Rng) -> CircularArcModel {
    let grid = 8 * n.max(1);
    loop {
        let begins: Vec<usize> = (0..n).map(|_| rng.gen_range(0..grid)).collect();
        let ends: Vec<usize> = begins.iter().map(|&b| (b + rng.gen_range(1..grid / 2)) % grid).collect();
        let mut all: Vec<usize> = begins.iter().chain(&ends).copied().collect();
        all.sort_unstable();
        all.dedup();
        if all.len() == 2 * n {
            return CircularArcModel::from_positions(&begins, &ends);
        }
    }
}

/// A random model realized with equal arc lengths, with its witness.
pub fn random_unit_model(n: usize, seed: u64) -> (CircularArcModel, UnitWitness) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = (4 * n as i128).max(4);
    let mut cells: Vec<i128> = (0..grid).collect();
    cells.shuffle(&mut rng);
    let begins: Vec<Rational> = cells[..n].iter().map(|&c| Rational::new(c, grid)).collect();
    // Half-cell offset keeps endings off the beginning grid.
    let u = Rational::new(2 * rng.gen_range(0..grid) + 1, 2 * grid);
    let ends: Vec<Rational> = begins
        .iter()
        .map(|&b| {
            let t = b + u;
            if t >= Rational::from_integer(1) {
                t - Rational::from_integer(1)
            } else {
                t
            }
        })
        .collect();
    let model = CircularArcModel::from_positions(&begins, &ends);
    let positions = model
        .order()
        .iter()
        .map(|e| if e.is_beginning() { begins[e.arc] } else { ends[e.arc] })
        .collect();
    (model, UnitWitness { positions, circumference: Rational::from_integer(1), arc_length: u })
}
