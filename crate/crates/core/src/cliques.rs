//! Clique segments, clique matrices and their ones properties.

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;
use crate::model::{CircularArcModel, ExtremeKind};
use crate::nhca::{authenticate_nhca, Authentication};
use crate::ones::{circular_order, consecutive_order};
use crate::oracle::maximal_cliques;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliqueError {
    #[error("model is not NHCA: {0:?}")]
    NotNhca(Authentication),
}

/// Segments opened by a beginning and closed by an ending, each with the
/// arcs covering it; in an NHCA model these are the maximal cliques.
pub fn clique_segments(model: &CircularArcModel) -> Result<Vec<(usize, Vec<usize>)>, CliqueError> {
    match authenticate_nhca(model) {
        Authentication::Ok => {}
        other => return Err(CliqueError::NotNhca(other)),
    }
    Ok((0..model.len())
        .filter(|&p| model.at(p).kind == ExtremeKind::Beginning && model.at(p + 1).kind == ExtremeKind::Ending)
        .map(|p| (p, (0..model.n()).filter(|&a| model.covers_segment(a, p)).collect()))
        .collect())
}

/// A 0-1 matrix whose rows are cliques and whose columns are vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueMatrix {
    columns: usize,
    rows: Vec<Vec<usize>>,
}

impl CliqueMatrix {
    /// Rows given by their sets of one-columns.
    pub fn from_rows(columns: usize, rows: Vec<Vec<usize>>) -> Self {
        let rows = rows
            .into_iter()
            .map(|mut r| {
                r.sort_unstable();
                r.dedup();
                assert!(r.iter().all(|&c| c < columns), "column out of range");
                r
            })
            .collect();
        CliqueMatrix { columns, rows }
    }

    pub fn from_bits(bits: &[&[u8]]) -> Self {
        let columns = bits.first().map_or(0, |r| r.len());
        let rows = bits.iter().map(|r| (0..columns).filter(|&c| r[c] == 1).collect()).collect();
        CliqueMatrix { columns, rows }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.columns
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn get(&self, row: usize, column: usize) -> bool {
        self.rows[row].binary_search(&column).is_ok()
    }

    pub fn transpose(&self) -> CliqueMatrix {
        let mut rows = vec![Vec::new(); self.columns];
        for (i, r) in self.rows.iter().enumerate() {
            r.iter().for_each(|&c| rows[c].push(i));
        }
        CliqueMatrix { columns: self.rows.len(), rows }
    }
}

impl fmt::Display for CliqueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows.len() {
            let line: String = (0..self.columns).map(|c| if self.get(i, c) { '1' } else { '0' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Rows are the maximal cliques in lexicographic order.
pub fn clique_matrix(graph: &Graph) -> CliqueMatrix {
    CliqueMatrix::from_rows(graph.n(), maximal_cliques(graph))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Rows,
    Columns,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Consecutive,
    Circular,
}

/// For `Rows`, a column order making every row a run; for `Columns`, a row
/// order making every column a run. Runs may wrap in `Circular` mode.
pub fn ones_property(matrix: &CliqueMatrix, axis: Axis, mode: Mode) -> Option<Vec<usize>> {
    let m = match axis {
        Axis::Rows => matrix.clone(),
        Axis::Columns => matrix.transpose(),
    };
    match mode {
        Mode::Consecutive => consecutive_order(m.columns, &m.rows),
        Mode::Circular => circular_order(m.columns, &m.rows),
    }
}

/// Circular ones for both rows and columns of the clique matrix.
pub fn phca_via_matrix(graph: &Graph) -> bool {
    let q = clique_matrix(graph);
    ones_property(&q, Axis::Rows, Mode::Circular).is_some() && ones_property(&q, Axis::Columns, Mode::Circular).is_some()
}

/// Reference clique matrices of `K13`, `W4`, `W5` and `S3`.
pub fn non_phca_matrices() -> Vec<(&'static str, CliqueMatrix)> {
    vec![
        ("K13", CliqueMatrix::from_bits(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[1, 0, 0, 1]])),
        ("W4", CliqueMatrix::from_bits(&[&[1, 1, 0, 0, 1], &[1, 1, 1, 0, 0], &[1, 0, 1, 1, 0], &[1, 0, 0, 1, 1]])),
        (
            "W5",
            CliqueMatrix::from_bits(&[
                &[1, 1, 0, 0, 0, 1],
                &[1, 1, 1, 0, 0, 0],
                &[1, 0, 1, 1, 0, 0],
                &[1, 0, 0, 1, 1, 0],
                &[1, 0, 0, 0, 1, 1],
            ]),
        ),
        (
            "S3",
            CliqueMatrix::from_bits(&[&[1, 0, 1, 0, 1, 0], &[1, 1, 0, 0, 0, 1], &[1, 1, 1, 0, 0, 0], &[0, 1, 1, 1, 0, 0]]),
        ),
    ]
}
