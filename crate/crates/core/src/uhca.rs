//! UHCA recognition from PHCA or UCA models, and CI(n,k) search.

use num_integer::Integer;
use thiserror::Error;

use crate::certificate::{Certificate, Forbidden, ForbiddenKind};
use crate::generators::{named_graph, Family};
use crate::graph::Graph;
use crate::model::{intersection_graph, CircularArcModel, Extreme};
use crate::oracle::{classify, find_induced, find_two_cover, unit_realizable, validate_witness, UnitWitness, WitnessError};
use crate::phca::{phca_from_pca, PhcaError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `n > 2k`: the graphs that are PCA but not UCA.
    AboveTwoK,
    /// `n > 3k`: the graphs that are PHCA but not UHCA.
    AboveThreeK,
}

impl Regime {
    fn admits(self, n: usize, k: usize) -> bool {
        match self {
            Regime::AboveTwoK => n > 2 * k,
            Regime::AboveThreeK => n > 3 * k,
        }
    }
}

/// Largest host searched for CI(n,k) witnesses by default.
pub const CI_SEARCH_LIMIT: usize = 16;

/// The smallest induced CI(n,k), by 2n and then k, with 2n at most `max_vertices`.
/// The mapping lists host vertices in the order A_0..A_{n-1}, B_0..B_{n-1}.
pub fn find_ci(graph: &Graph, max_vertices: usize, regime: Regime) -> Option<(usize, usize, Vec<usize>)> {
    let bound = max_vertices.min(graph.n());
    (3..=bound / 2).find_map(|n| {
        (1..n)
            .filter(|&k| regime.admits(n, k) && n.gcd(&k) == 1)
            .find_map(|k| {
                let pattern = named_graph(Family::Ci { n, k }).ok()?;
                find_induced(graph, &pattern).map(|map| (n, k, map))
            })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UhcaOutcome {
    Positive { model: CircularArcModel, witness: UnitWitness },
    Negative(Certificate),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UhcaError {
    #[error("model is not a PHCA model")]
    NotPhca,
    #[error("witness does not realize the model: {0}")]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Phca(#[from] PhcaError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn with_witness(model: CircularArcModel) -> Result<UhcaOutcome, UhcaError> {
    match unit_realizable(&model) {
        Some(witness) => Ok(UhcaOutcome::Positive { model, witness }),
        None => Err(UhcaError::Internal(format!("no unit realization of {model}"))),
    }
}

/// Keeps the extreme order and looks for equal arc lengths; failures come
/// with a CI(n,k), n > 3k, when one is found within the search bound.
pub fn uhca_from_phca(model: &CircularArcModel) -> Result<UhcaOutcome, UhcaError> {
    let report = classify(model);
    if !(report.proper && report.helly) {
        return Err(UhcaError::NotPhca);
    }
    if let Some(witness) = unit_realizable(model) {
        return Ok(UhcaOutcome::Positive { model: model.clone(), witness });
    }
    let g = intersection_graph(model);
    let cert = match find_ci(&g, CI_SEARCH_LIMIT, Regime::AboveThreeK) {
        Some((n, k, vertices)) => Certificate::Forbidden(Forbidden { kind: ForbiddenKind::Ci { n, k }, vertices }),
        None => Certificate::Infeasible {
            detail: format!(
                "no equal-length realization of this order; no induced CI(n,k) with n>3k on at most {} vertices",
                CI_SEARCH_LIMIT.min(g.n())
            ),
        },
    };
    Ok(UhcaOutcome::Negative(cert))
}

/// The staircase `s0 .. s(n-1) t0 .. t(n-1)`: a unit interval model of K_n.
pub fn staircase(n: usize) -> CircularArcModel {
    let order = (0..n).map(Extreme::s).chain((0..n).map(Extreme::t)).collect();
    CircularArcModel::new(order).expect("each arc once")
}

/// Turns a unit model into an equivalent UHCA model or a `W4` / `S3`.
pub fn uhca_from_uca(model: &CircularArcModel, witness: &UnitWitness) -> Result<UhcaOutcome, UhcaError> {
    validate_witness(model, witness)?;
    if find_two_cover(model).is_some() {
        return with_witness(staircase(model.n()));
    }
    match phca_from_pca(model)? {
        Certificate::Positive(out) => with_witness(out),
        cert => Ok(UhcaOutcome::Negative(cert)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{ci_model, named_model, random_unit_model};

    #[test]
    fn holes_are_uhca() {
        let hole = named_model(Family::Hole(6)).unwrap();
        let UhcaOutcome::Positive { model, witness } = uhca_from_phca(&hole).unwrap() else { panic!("hole rejected") };
        assert!(validate_witness(&model, &witness).is_ok());
    }

    #[test]
    fn ci_4_1_is_not_uhca() {
        let model = ci_model(4, 1).unwrap();
        let UhcaOutcome::Negative(Certificate::Forbidden(f)) = uhca_from_phca(&model).unwrap() else { panic!("accepted") };
        assert_eq!(f.kind, ForbiddenKind::Ci { n: 4, k: 1 });
        assert!(f.verify(&intersection_graph(&model)));
    }

    #[test]
    fn single_arc() {
        let m = staircase(1);
        assert!(matches!(uhca_from_phca(&m).unwrap(), UhcaOutcome::Positive { .. }));
    }

    #[test]
    fn ci_search() {
        let sun = named_graph(Family::Sun3).unwrap();
        assert_eq!(find_ci(&sun, 14, Regime::AboveTwoK).map(|x| (x.0, x.1)), Some((3, 1)));
        assert_eq!(find_ci(&named_graph(Family::Hole(7)).unwrap(), 14, Regime::AboveTwoK), None);
        let g = named_graph(Family::Ci { n: 5, k: 2 }).unwrap();
        assert_eq!(find_ci(&g, 10, Regime::AboveTwoK).map(|x| (x.0, x.1)), Some((5, 2)));
    }

    #[test]
    fn unit_models() {
        // Two arcs covering the circle with equal lengths: K_2.
        let k2 = staircase(2);
        let covering = crate::io::parse_model("2\ns0 t1 s1 t0\n").unwrap();
        let w = unit_realizable(&covering).unwrap();
        let UhcaOutcome::Positive { model, .. } = uhca_from_uca(&covering, &w).unwrap() else { panic!("K2 rejected") };
        assert_eq!(model, k2);
        for seed in 0..50 {
            let (m, w) = random_unit_model(3 + seed as usize % 8, seed);
            match uhca_from_uca(&m, &w).unwrap() {
                UhcaOutcome::Positive { model, witness } => {
                    assert!(validate_witness(&model, &witness).is_ok());
                    assert_eq!(intersection_graph(&model), intersection_graph(&m));
                }
                UhcaOutcome::Negative(c) => assert!(c.verify_negative(&m)),
            }
        }
    }
}
