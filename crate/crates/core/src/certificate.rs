//! Recognition verdicts and their re-verification.

use std::fmt;

use crate::generators::{named_graph, Family};
use crate::graph::Graph;
use crate::interval::{find_hole, is_interval};
use crate::model::{intersection_graph, CircularArcModel};
use crate::oracle::isomorphism;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForbiddenKind {
    K13,
    Wheel(usize),
    Sun3,
    RisingSun(usize),
    Umbrella,
    Tent,
    Hole(usize),
    /// A vertex-minimal chordal graph with an asteroidal triple.
    Asteroidal,
    Ci { n: usize, k: usize },
}

impl ForbiddenKind {
    /// The graph the certificate vertices must induce, vertex by vertex.
    pub fn pattern(&self) -> Option<Graph> {
        let family = match *self {
            ForbiddenKind::K13 => Family::K13,
            ForbiddenKind::Wheel(k) => Family::Wheel(k),
            ForbiddenKind::Sun3 => Family::Sun3,
            ForbiddenKind::RisingSun(k) => Family::RisingSun(k),
            ForbiddenKind::Umbrella => Family::Umbrella,
            ForbiddenKind::Tent => Family::Tent,
            ForbiddenKind::Hole(k) => Family::Hole(k),
            ForbiddenKind::Ci { n, k } => Family::Ci { n, k },
            ForbiddenKind::Asteroidal => return None,
        };
        named_graph(family).ok()
    }
}

impl fmt::Display for ForbiddenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForbiddenKind::K13 => write!(f, "K13"),
            ForbiddenKind::Wheel(k) => write!(f, "W{k}"),
            ForbiddenKind::Sun3 => write!(f, "S3"),
            ForbiddenKind::RisingSun(k) => write!(f, "R{k}"),
            ForbiddenKind::Umbrella => write!(f, "U"),
            ForbiddenKind::Tent => write!(f, "Tent"),
            ForbiddenKind::Hole(k) => write!(f, "C{k}"),
            ForbiddenKind::Asteroidal => write!(f, "AT"),
            ForbiddenKind::Ci { n, k } => write!(f, "CI({n},{k})"),
        }
    }
}

/// A forbidden induced subgraph; `vertices[i]` plays vertex `i` of the pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forbidden {
    pub kind: ForbiddenKind,
    pub vertices: Vec<usize>,
}

impl Forbidden {
    /// Orders `vertices` to match the pattern of `kind`, if they induce it.
    pub fn matching(g: &Graph, kind: ForbiddenKind, vertices: &[usize]) -> Option<Forbidden> {
        let pattern = kind.pattern()?;
        let mut distinct = vertices.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != vertices.len() || vertices.iter().any(|&v| v >= g.n()) {
            return None;
        }
        let map = isomorphism(&pattern, &g.induced(vertices))?;
        Some(Forbidden { kind, vertices: map.iter().map(|&i| vertices[i]).collect() })
    }

    /// Names a non-interval vertex set by the first family it matches.
    pub fn name(g: &Graph, vertices: &[usize]) -> Forbidden {
        let k = vertices.len();
        let mut kinds = vec![ForbiddenKind::Hole(k), ForbiddenKind::Sun3, ForbiddenKind::Tent, ForbiddenKind::Umbrella];
        if k >= 7 {
            kinds.push(ForbiddenKind::RisingSun(k - 3));
        }
        if k >= 5 {
            kinds.push(ForbiddenKind::Wheel(k - 1));
        }
        kinds
            .into_iter()
            .filter(|kind| kind.pattern().is_some_and(|p| p.n() == k))
            .find_map(|kind| Forbidden::matching(g, kind, vertices))
            .unwrap_or_else(|| Forbidden { kind: ForbiddenKind::Asteroidal, vertices: vertices.to_vec() })
    }

    /// Re-checks the claim against the host graph.
    pub fn verify(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.n()];
        for &v in &self.vertices {
            if v >= g.n() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        let sub = g.induced(&self.vertices);
        match self.kind.pattern() {
            Some(p) => p == sub,
            None => {
                // Chordal, not interval, and every proper induced subgraph interval.
                find_hole(&sub).is_none()
                    && !is_interval(&sub)
                    && (0..sub.n()).all(|i| {
                        let rest: Vec<usize> = (0..sub.n()).filter(|&j| j != i).collect();
                        is_interval(&sub.induced(&rest))
                    })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cover {
    Two(usize, usize),
    Three(usize, usize, usize),
}

impl Cover {
    pub fn arcs(&self) -> Vec<usize> {
        match *self {
            Cover::Two(a, b) => vec![a, b],
            Cover::Three(a, b, c) => vec![a, b, c],
        }
    }

    /// Whether the arcs cover every segment of the model.
    pub fn verify(&self, model: &CircularArcModel) -> bool {
        let arcs = self.arcs();
        if arcs.iter().any(|&a| a >= model.n()) {
            return false;
        }
        (0..model.len()).all(|seg| arcs.iter().any(|&a| model.covers_segment(a, seg)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Positive(CircularArcModel),
    TwoCover(usize, usize),
    ThreeCover(usize, usize, usize),
    Forbidden(Forbidden),
    /// Covering arcs together with a witness that the graph is not interval;
    /// `named` is a forbidden family located in the graph when one was found.
    NotNhca { cover: Cover, obstruction: Forbidden, named: Option<Forbidden> },
    /// No certificate of bounded size was found.
    Infeasible { detail: String },
}

impl Certificate {
    pub fn is_positive(&self) -> bool {
        matches!(self, Certificate::Positive(_))
    }

    pub fn model(&self) -> Option<&CircularArcModel> {
        match self {
            Certificate::Positive(m) => Some(m),
            _ => None,
        }
    }

    /// Re-verifies a negative certificate against the input model.
    pub fn verify_negative(&self, input: &CircularArcModel) -> bool {
        let g = intersection_graph(input);
        match self {
            Certificate::Positive(_) => false,
            Certificate::TwoCover(a, b) => Cover::Two(*a, *b).verify(input),
            Certificate::ThreeCover(a, b, c) => Cover::Three(*a, *b, *c).verify(input),
            Certificate::Forbidden(f) => f.verify(&g),
            Certificate::NotNhca { cover, obstruction, named } => {
                cover.verify(input) && obstruction.verify(&g) && named.as_ref().is_none_or(|f| f.verify(&g))
            }
            Certificate::Infeasible { .. } => true,
        }
    }
}

fn ids(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Positive(m) => write!(f, "verdict=positive\nmodel={m}"),
            Certificate::TwoCover(a, b) => write!(f, "verdict=negative\ncertificate=two-cover arcs={}", ids(&[*a, *b])),
            Certificate::ThreeCover(a, b, c) => {
                write!(f, "verdict=negative\ncertificate=three-cover arcs={}", ids(&[*a, *b, *c]))
            }
            Certificate::Forbidden(x) => write!(f, "verdict=negative\ncertificate={} arcs={}", x.kind, ids(&x.vertices)),
            Certificate::NotNhca { cover, obstruction, named } => {
                let label = match cover {
                    Cover::Two(..) => "two-cover",
                    Cover::Three(..) => "three-cover",
                };
                write!(f, "verdict=negative\ncover={label} arcs={}", ids(&cover.arcs()))?;
                write!(f, "\nobstruction={} arcs={}", obstruction.kind, ids(&obstruction.vertices))?;
                if let Some(x) = named {
                    write!(f, "\ncertificate={} arcs={}", x.kind, ids(&x.vertices))?;
                }
                Ok(())
            }
            Certificate::Infeasible { detail } => write!(f, "verdict=negative\ncertificate=none\ndetail={detail}"),
        }
    }
}
