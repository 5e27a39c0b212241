//! NHCA authentication and recognition.

use crate::certificate::{Certificate, Cover, Forbidden, ForbiddenKind};
use crate::graph::Graph;
use crate::interval::{recognize_interval, IntervalResult};
use crate::model::{intersection_graph, CircularArcModel, ExtremeKind};
use crate::oracle::find_induced;

/// `next[a]` is the arc crossing `t(a)` whose ending is reached last from `t(a)`.
pub type NextMap = Vec<Option<usize>>;

/// Two sweeps around the circle tracking the arc that reaches farthest.
pub fn compute_next(model: &CircularArcModel) -> NextMap {
    let len = model.len();
    let mut next = vec![None; model.n()];
    // Farthest-reaching arc seen so far, with its absolute ending position.
    let mut far: Option<(usize, usize)> = None;
    for pos in 0..2 * len {
        let e = model.at(pos);
        match e.kind {
            ExtremeKind::Beginning => {
                let end = pos + model.dist(model.s(e.arc), model.t(e.arc));
                if far.is_none_or(|(_, f)| f <= pos || end > f) {
                    far = Some((e.arc, end));
                }
            }
            ExtremeKind::Ending if pos >= len => {
                next[e.arc] = far.filter(|&(a, f)| a != e.arc && f > pos).map(|(a, _)| a);
            }
            ExtremeKind::Ending => {}
        }
    }
    next
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Authentication {
    Ok,
    TwoCover(usize, usize),
    ThreeCover(usize, usize, usize),
}

/// Checks that no two and no three arcs cover the circle.
pub fn authenticate_nhca(model: &CircularArcModel) -> Authentication {
    let next = compute_next(model);
    authenticate_with(model, &next)
}

/// Whether the chain `arcs`, each crossing the ending of the previous one,
/// wraps past the beginning of the first.
fn chain_wraps(model: &CircularArcModel, arcs: &[usize]) -> bool {
    let mut reach = model.dist(model.s(arcs[0]), model.t(arcs[0]));
    for w in arcs.windows(2) {
        reach += model.dist(model.t(w[0]), model.t(w[1]));
    }
    reach > model.len()
}

pub(crate) fn authenticate_with(model: &CircularArcModel, next: &NextMap) -> Authentication {
    // All pairs first, so a model with a covering pair never reports a triple.
    for a in model.arcs_by_beginning() {
        if let Some(b) = next[a] {
            if chain_wraps(model, &[a, b]) {
                return Authentication::TwoCover(a, b);
            }
        }
    }
    for a in model.arcs_by_beginning() {
        if let Some(b) = next[a] {
            if let Some(c) = next[b] {
                if c != a && chain_wraps(model, &[a, b, c]) {
                    return Authentication::ThreeCover(a, b, c);
                }
            }
        }
    }
    Authentication::Ok
}

/// Largest graph searched for named forbidden subgraphs.
pub const NAMED_SEARCH_LIMIT: usize = 16;

/// The smallest named NHCA obstruction induced in `g`, if any.
pub fn find_named_forbidden(g: &Graph) -> Option<Forbidden> {
    let n = g.n();
    if n > NAMED_SEARCH_LIMIT {
        return None;
    }
    let mut kinds = vec![ForbiddenKind::Wheel(4), ForbiddenKind::Sun3, ForbiddenKind::Tent];
    kinds.extend((5..n).map(ForbiddenKind::Wheel));
    kinds.push(ForbiddenKind::Umbrella);
    kinds.extend((4..).take_while(|k| k + 3 <= n).map(ForbiddenKind::RisingSun));
    kinds.sort_by_key(|k| k.pattern().map_or(usize::MAX, |p| p.n()));
    kinds.into_iter().find_map(|kind| {
        let pattern = kind.pattern()?;
        if pattern.n() > n {
            return None;
        }
        find_induced(g, &pattern).map(|vertices| Forbidden { kind, vertices })
    })
}

/// Returns the model itself, an equivalent interval model, or a combined
/// negative certificate.
pub fn recognize_nhca(model: &CircularArcModel) -> Certificate {
    let cover = match authenticate_nhca(model) {
        Authentication::Ok => return Certificate::Positive(model.clone()),
        Authentication::TwoCover(a, b) => Cover::Two(a, b),
        Authentication::ThreeCover(a, b, c) => Cover::Three(a, b, c),
    };
    let g = intersection_graph(model);
    let obstruction = match recognize_interval(&g) {
        IntervalResult::Model(m) => return Certificate::Positive(m),
        IntervalResult::Hole(h) => Forbidden { kind: ForbiddenKind::Hole(h.len()), vertices: h },
        IntervalResult::Obstruction(v) => Forbidden::name(&g, &v),
    };
    let named = find_named_forbidden(&g);
    Certificate::NotNhca { cover, obstruction, named }
}

/// Whether the closed neighborhood of every arc leaves part of the circle uncovered.
pub fn check_local_interval(model: &CircularArcModel) -> bool {
    let g = intersection_graph(model);
    (0..model.n()).all(|a| {
        let mut hood = g.neighbors(a);
        hood.push(a);
        (0..model.len()).any(|seg| hood.iter().all(|&b| !model.covers_segment(b, seg)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named_model, Family};
    use crate::io::parse_model;
    use crate::oracle::classify;

    fn m(s: &str) -> CircularArcModel {
        let n = s.split_whitespace().count() / 2;
        parse_model(&format!("{n}\n{s}\n")).unwrap()
    }

    /// NEXT straight from its definition.
    fn next_by_definition(model: &CircularArcModel) -> NextMap {
        (0..model.n())
            .map(|a| {
                let t = model.t(a);
                (0..model.n())
                    .filter(|&b| b != a && model.contains_point(b, t))
                    .max_by_key(|&b| model.dist(t, model.t(b)))
            })
            .collect()
    }

    #[test]
    fn next_small_cases() {
        assert_eq!(compute_next(&m("s0 t0 s1 t1")), vec![None, None]);
        assert_eq!(compute_next(&m("s0 s1 t0 t1")), vec![Some(1), None]);
    }

    #[test]
    fn next_on_ci_chains_long_arcs() {
        let model = crate::generators::ci_model(3, 1).unwrap();
        assert_eq!(compute_next(&model), next_by_definition(&model));
        for i in 0..3 {
            assert_eq!(compute_next(&model)[i], Some((i + 1) % 3));
        }
    }

    #[test]
    fn next_matches_definition_on_random_models() {
        for seed in 0..300 {
            let model = crate::generators::random_model(1 + seed as usize % 12, seed, crate::generators::Constraint::Any);
            assert_eq!(compute_next(&model), next_by_definition(&model), "{model}");
        }
    }

    #[test]
    fn authentication_verdicts() {
        assert_eq!(authenticate_nhca(&named_model(Family::Hole(6)).unwrap()), Authentication::Ok);
        assert_eq!(authenticate_nhca(&m("s0 t1 s1 t0")), Authentication::TwoCover(0, 1));
        let tent = named_model(Family::Tent).unwrap();
        let Authentication::ThreeCover(a, b, c) = authenticate_nhca(&tent) else { panic!("tent is not HCA") };
        assert!(Cover::Three(a, b, c).verify(&tent));
    }

    #[test]
    fn wheel_is_rejected_with_a_wheel() {
        let model = named_model(Family::Wheel(4)).unwrap();
        let cert = recognize_nhca(&model);
        assert!(cert.verify_negative(&model));
        let Certificate::NotNhca { named: Some(f), .. } = cert else { panic!("expected a named obstruction") };
        assert_eq!(f.kind, ForbiddenKind::Wheel(4));
        assert!(!check_local_interval(&model));
    }

    #[test]
    fn covered_interval_graph_gets_a_new_model() {
        // Two covering arcs over a path: the graph is interval, the model is not normal.
        let model = m("s0 s2 t2 t1 s1 t0");
        assert!(!classify(&model).normal);
        let Certificate::Positive(out) = recognize_nhca(&model) else { panic!("interval graph rejected") };
        assert!(classify(&out).interval_point);
        assert_eq!(intersection_graph(&out), intersection_graph(&model));
    }

    #[test]
    fn local_interval_trivia() {
        assert!(check_local_interval(&m("s0 t0")));
        assert!(check_local_interval(&named_model(Family::Hole(5)).unwrap()));
    }
}
