//! PCA normalization and PHCA recognition from NHCA or PCA models.

use thiserror::Error;

use crate::certificate::{Certificate, Forbidden, ForbiddenKind};
use crate::model::{
    duplicate_arc, induced_submodel, intersection_graph, reverse_model, universal_arcs, CircularArcModel, Extreme,
    ExtremeKind,
};
use crate::nhca::{authenticate_nhca, Authentication};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhcaError {
    #[error("model is not proper")]
    NotProper,
    #[error("model is not NHCA: {0:?}")]
    NotNhca(Authentication),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A model with all but `k` universal arcs removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UkView {
    pub reduced: CircularArcModel,
    /// Original ids of the removed universal arcs, ascending.
    pub removed_universal: Vec<usize>,
    /// Id, in `reduced`, of the universal arc kept when `k = 1`.
    pub kept_universal: Option<usize>,
    /// `to_original[i]` is the original id of arc `i` of `reduced`.
    pub to_original: Vec<usize>,
}

impl UkView {
    /// Lifts a model over the reduced ids back to the original ids, adding a
    /// twin of `twin_of` (a reduced id) for every removed universal arc.
    pub fn restore(&self, reduced: &CircularArcModel, twin_of: usize) -> CircularArcModel {
        let base = reduced.n();
        let mut m = reduced.clone();
        for _ in &self.removed_universal {
            m = duplicate_arc(&m, twin_of).expect("arc exists");
        }
        let map: Vec<usize> = self.to_original.iter().chain(&self.removed_universal).copied().collect();
        debug_assert_eq!(map.len(), base + self.removed_universal.len());
        m.relabel(&map)
    }

    /// The reduced model relabeled to original ids, without restoring anything.
    pub fn lift(&self, arcs: &[usize]) -> Vec<usize> {
        arcs.iter().map(|&a| self.to_original[a]).collect()
    }
}

/// Removes universal arcs until at most `k` remain, highest ids first.
pub fn u_k(model: &CircularArcModel, k: usize) -> UkView {
    let universal = universal_arcs(model);
    let removed_universal: Vec<usize> = universal.iter().skip(k).copied().collect();
    let keep: Vec<usize> = (0..model.n()).filter(|a| !removed_universal.contains(a)).collect();
    let (reduced, to_original) = induced_submodel(model, &keep).expect("ids in range");
    let kept_universal = match k {
        1 => universal.first().map(|u| to_original.iter().position(|a| a == u).expect("kept")),
        _ => None,
    };
    UkView { reduced, removed_universal, kept_universal, to_original }
}

/// Keeps one universal arc and re-duplicates it, giving an equivalent
/// normal model with the same arc ids.
pub fn normalize_pca(model: &CircularArcModel) -> Result<CircularArcModel, PhcaError> {
    if !model.is_proper() {
        return Err(PhcaError::NotProper);
    }
    let view = u_k(model, 1);
    Ok(match view.kept_universal {
        Some(k) => view.restore(&view.reduced, k),
        None => model.clone(),
    })
}

/// Orders every run of endings as the corresponding beginnings are met,
/// arcs crossing a fixed beginning first.
fn sort_t_sequences(model: &CircularArcModel) -> CircularArcModel {
    let len = model.len();
    if len == 0 {
        return model.clone();
    }
    let start = model.s(model.at(0).arc);
    let mut marked = vec![false; model.n()];
    for k in 0..len {
        let e = model.at(start + k);
        marked[e.arc] = e.is_beginning();
    }
    // Run index of every ending position.
    let mut run_of = vec![usize::MAX; len];
    let mut runs = 0;
    let first = (0..len).find(|&p| model.at(p).is_beginning()).expect("some beginning");
    for k in 1..=len {
        let p = (first + k) % len;
        if !model.at(p).is_beginning() {
            if model.at(p + len - 1).is_beginning() {
                runs += 1;
            }
            run_of[p] = runs - 1;
        }
    }
    let mut parts: Vec<[Vec<usize>; 2]> = vec![[Vec::new(), Vec::new()]; runs];
    for k in 0..len {
        let e = model.at(start + k);
        if e.is_beginning() {
            let run = run_of[model.t(e.arc)];
            parts[run][usize::from(!marked[e.arc])].push(e.arc);
        }
    }
    let mut sorted: Vec<std::vec::IntoIter<usize>> =
        parts.into_iter().map(|[a, b]| a.into_iter().chain(b).collect::<Vec<_>>().into_iter()).collect();
    // Refill from `first` so that a run wrapping past position 0 stays in order.
    let mut order = model.order().to_vec();
    for k in 0..len {
        let p = (first + k) % len;
        if model.at(p).kind == ExtremeKind::Ending {
            order[p] = Extreme::t(sorted[run_of[p]].next().expect("same run sizes"));
        }
    }
    CircularArcModel::new(order).expect("runs are permuted in place")
}

/// Sorts t-sequences and then s-sequences of an NHCA model.
pub fn sort_extreme_sequences(model: &CircularArcModel) -> Result<CircularArcModel, PhcaError> {
    match authenticate_nhca(model) {
        Authentication::Ok => {}
        other => return Err(PhcaError::NotNhca(other)),
    }
    let t_sorted = sort_t_sequences(model);
    Ok(reverse_model(&sort_t_sequences(&reverse_model(&t_sorted))))
}

/// The `K13` formed by a containment `inner ⊂ outer` and the arcs ending
/// first after `s(outer)` and beginning last before `t(outer)`.
fn claw(model: &CircularArcModel, outer: usize, inner: usize) -> Option<[usize; 4]> {
    let len = model.len();
    let (s, t) = (model.s(outer), model.t(outer));
    let l = (1..len).map(|k| model.at(s + k)).find(|e| !e.is_beginning())?.arc;
    let r = (1..len).map(|k| model.at(t + len - k)).find(|e| e.is_beginning())?.arc;
    Some([outer, inner, l, r])
}

/// Sorts the extreme sequences; the result is PHCA unless a containment
/// survives, which yields an induced claw.
pub fn phca_from_nhca(model: &CircularArcModel) -> Result<Certificate, PhcaError> {
    let sorted = sort_extreme_sequences(model)?;
    let by_begin = sorted.arcs_by_beginning();
    let n = by_begin.len();
    let consecutive = (0..n).map(|i| (by_begin[i], by_begin[(i + 1) % n]));
    let all = (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
    let Some((outer, inner)) = consecutive.chain(all).find(|&(a, b)| sorted.contains_arc(a, b)) else {
        return Ok(Certificate::Positive(sorted));
    };
    let g = intersection_graph(model);
    claw(&sorted, outer, inner)
        .and_then(|arcs| Forbidden::matching(&g, ForbiddenKind::K13, &arcs))
        .map(Certificate::Forbidden)
        .ok_or_else(|| PhcaError::Internal(format!("containment {outer} ⊃ {inner} gave no claw")))
}

/// In a proper model, the arc whose beginning is nearest counterclockwise from `t(a)`.
fn pca_next(model: &CircularArcModel, a: usize) -> Option<usize> {
    let len = model.len();
    let b = (1..len).map(|k| model.at(model.t(a) + len - k)).find(|e| e.is_beginning())?.arc;
    (b != a).then_some(b)
}

fn three_cover_pca(model: &CircularArcModel) -> Option<[usize; 3]> {
    let len = model.len();
    model.arcs_by_beginning().into_iter().find_map(|a| {
        let b = pca_next(model, a)?;
        let c = pca_next(model, b)?;
        let reach = model.dist(model.s(a), model.t(a))
            + model.dist(model.t(a), model.t(b))
            + model.dist(model.t(b), model.t(c));
        (c != a && reach > len).then_some([a, b, c])
    })
}

/// Six arcs inducing `S3` or five inducing `W4`, from a covering triple
/// without universal arcs. Arc ids are those of `model`.
fn sun_or_wheel(model: &CircularArcModel, a: [usize; 3]) -> Option<(ForbiddenKind, Vec<usize>)> {
    let len = model.len();
    let mut b = [0; 3];
    for i in 0..3 {
        b[i] = (1..len).map(|k| model.at(model.t(a[i]) + k)).find(|e| e.is_beginning())?.arc;
    }
    let pair = [(0, 1), (1, 2), (0, 2)].into_iter().find(|&(i, j)| model.intersects(b[i], b[j]));
    Some(match pair {
        None => (ForbiddenKind::Sun3, vec![a[0], a[1], a[2], b[0], b[1], b[2]]),
        Some((i, j)) => (ForbiddenKind::Wheel(4), vec![a[0], a[1], a[2], b[i], b[j]]),
    })
}

/// Recognizes PHCA graphs from a proper model, returning an equivalent
/// PHCA model or an induced `W4` or `S3`.
pub fn phca_from_pca(model: &CircularArcModel) -> Result<Certificate, PhcaError> {
    if !model.is_proper() {
        return Err(PhcaError::NotProper);
    }
    let view = u_k(model, 1);
    let m = &view.reduced;
    let Some(triple) = three_cover_pca(m) else {
        return Ok(Certificate::Positive(match view.kept_universal {
            Some(k) => view.restore(m, k),
            None => model.clone(),
        }));
    };
    let internal = |what: &str| PhcaError::Internal(format!("{what} for cover {triple:?} of {m}"));
    let g = intersection_graph(model);
    let certify = |a: [usize; 3]| -> Result<Certificate, PhcaError> {
        let (kind, arcs) = sun_or_wheel(m, a).ok_or_else(|| internal("no arc after a cover ending"))?;
        Forbidden::matching(&g, kind, &view.lift(&arcs))
            .map(Certificate::Forbidden)
            .ok_or_else(|| internal("certificate does not induce its kind"))
    };
    let Some(u) = view.kept_universal.filter(|u| triple.contains(u)) else {
        return certify(triple);
    };
    // Rotate so that a1 is universal; the chain order gives s(a2) in a1.
    let rot = triple.iter().position(|&x| x == u).expect("present");
    let [a1, a2, a3] = [triple[rot], triple[(rot + 1) % 3], triple[(rot + 2) % 3]];
    let inside: Vec<Extreme> = (1..=m.inner_len(a1)).map(|k| m.at(m.s(a1) + k)).collect();
    let at = |e: Extreme| inside.iter().position(|&x| x == e);
    let t3 = at(Extreme::t(a3)).ok_or_else(|| internal("t(a3) outside a1"))?;
    let s2 = at(Extreme::s(a2)).ok_or_else(|| internal("s(a2) outside a1"))?;
    // A beginning before t(a3): the pair (R, a3) and the cover (R, a2, a3).
    if let Some(e) = inside[..t3].iter().find(|e| e.is_beginning()) {
        return certify([e.arc, a2, a3]);
    }
    // An ending after s(a2): the pair (a2, L) and the cover (L, a2, a3).
    if let Some(e) = inside[s2 + 1..].iter().find(|e| !e.is_beginning()) {
        return certify([e.arc, a2, a3]);
    }
    let first_s = inside.iter().position(|e| e.is_beginning());
    let last_t = inside.iter().rposition(|e| !e.is_beginning());
    match (first_s, last_t) {
        (Some(i), Some(j)) if i < j => {
            let (r, l) = (inside[i].arc, inside[j].arc);
            if m.intersects(l, a2) {
                certify([a2, l, r])
            } else if m.intersects(r, a3) {
                certify([l, r, a3])
            } else {
                Forbidden::matching(&g, ForbiddenKind::Wheel(4), &view.lift(&[a1, a2, a3, l, r]))
                    .map(Certificate::Forbidden)
                    .ok_or_else(|| internal("universal wheel does not induce W4"))
            }
        }
        // Endings all precede beginnings inside a1: the rest is interval.
        _ => Ok(Certificate::Positive(view.restore(&m.complement_arc(a1), a1))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{ci_model, named_model, random_model, Constraint, Family};
    use crate::io::parse_model;
    use crate::model::{equal_models, is_twin_consecutive};
    use crate::oracle::classify;

    fn m(s: &str) -> CircularArcModel {
        let n = s.split_whitespace().count() / 2;
        parse_model(&format!("{n}\n{s}\n")).unwrap()
    }

    #[test]
    fn normalizing_two_covering_arcs() {
        let out = normalize_pca(&m("s0 t1 s1 t0")).unwrap();
        let r = classify(&out);
        assert!(r.normal && r.proper);
        assert_eq!(intersection_graph(&out), intersection_graph(&m("s0 t1 s1 t0")));
    }

    #[test]
    fn normalizing_keeps_normal_models() {
        let hole = named_model(Family::Hole(5)).unwrap();
        assert!(equal_models(&normalize_pca(&hole).unwrap(), &hole));
        assert_eq!(normalize_pca(&named_model(Family::K13).unwrap()), Err(PhcaError::NotProper));
    }

    #[test]
    fn normalizing_random_proper_models() {
        for seed in 0..300 {
            let model = random_model(2 + seed as usize % 15, seed, Constraint::Proper);
            let out = normalize_pca(&model).unwrap();
            let r = classify(&out);
            assert!(r.proper && r.normal && is_twin_consecutive(&out), "{model} -> {out}");
            assert_eq!(intersection_graph(&out), intersection_graph(&model));
        }
    }

    #[test]
    fn u_k_views() {
        let k3 = m("s0 s1 s2 t0 t1 t2");
        let v = u_k(&k3, 1);
        assert_eq!(v.reduced.n(), 1);
        assert_eq!(v.removed_universal, vec![1, 2]);
        assert_eq!(u_k(&k3, 0).reduced.n(), 0);
        let hole = named_model(Family::Hole(5)).unwrap();
        assert_eq!(u_k(&hole, 1).reduced, hole);
    }

    #[test]
    fn sorting_twins() {
        let model = m("s0 s1 t1 t0 s2 t2");
        let sorted = sort_extreme_sequences(&model).unwrap();
        assert_eq!(intersection_graph(&sorted), intersection_graph(&model));
        assert!(sorted.is_proper());
    }

    #[test]
    fn claw_is_certified() {
        let model = named_model(Family::K13).unwrap();
        let cert = phca_from_nhca(&model).unwrap();
        assert!(matches!(&cert, Certificate::Forbidden(f) if f.kind == ForbiddenKind::K13));
        assert!(cert.verify_negative(&model));
    }

    #[test]
    fn hole_and_ci_are_phca() {
        let hole = named_model(Family::Hole(5)).unwrap();
        assert!(phca_from_nhca(&hole).unwrap().is_positive());
        assert!(phca_from_pca(&ci_model(4, 1).unwrap()).unwrap().is_positive());
    }

    #[test]
    fn small_ci_is_rejected() {
        for (n, k) in [(5, 2), (7, 3)] {
            let model = ci_model(n, k).unwrap();
            let cert = phca_from_pca(&model).unwrap();
            assert!(!cert.is_positive() && cert.verify_negative(&model), "CI({n},{k})");
        }
    }

    #[test]
    fn three_universal_arcs_become_an_interval_model() {
        // Three proper arcs covering the circle pairwise overlapping: K3, not Helly.
        let model = m("s0 t2 s1 t0 s2 t1");
        assert!(!classify(&model).helly);
        let Certificate::Positive(out) = phca_from_pca(&model).unwrap() else { panic!("K3 rejected") };
        assert!(classify(&out).interval_point);
        assert_eq!(intersection_graph(&out), intersection_graph(&model));
    }
}
