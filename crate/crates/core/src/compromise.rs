//! Compromise selection: lexicographic min-max regret over payoff columns.
//!
//! Each actor's regret in a profile is the distance from its best payoff
//! over all profiles. The selected profile minimizes the largest regret;
//! ties are broken by the second-largest, and so on down to the smallest.

use std::cmp::Ordering;

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Row index, counted from the largest-residual row, at which a single
/// profile remained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecisionLevel {
    Unique(usize),
    TiedThroughAllLevels,
}

/// Outcome of [`compromise_select`].
#[derive(Debug, Clone, PartialEq)]
pub struct Selection<T> {
    /// Each column of the residual matrix sorted ascending, so the last row
    /// holds every profile's largest residual.
    pub sorted_residuals: Matrix<T>,
    pub min_max_residual: T,
    pub decision_level: DecisionLevel,
    /// Surviving column indices, ascending. More than one only when fully tied.
    pub selected: Vec<usize>,
}

impl<T> Selection<T> {
    /// The canonical pick: the first survivor in column order.
    pub fn chosen(&self) -> usize {
        self.selected[0]
    }
}

/// Everything derived from a payoff matrix on the way to the compromise.
#[derive(Debug, Clone, PartialEq)]
pub struct CompromiseResult<T> {
    pub perfect_vector: Vec<T>,
    pub residuals: Matrix<T>,
    pub selection: Selection<T>,
    /// Column of the payoff matrix for [`Selection::chosen`].
    pub selected_payoffs: Vec<T>,
}

fn cmp<T: PartialOrd>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// Per-actor maximum payoff over all profiles.
pub fn perfect_vector<T: Scalar>(gamma: &Matrix<T>) -> Vec<T> {
    (0..gamma.rows())
        .map(|r| {
            gamma
                .row(r)
                .iter()
                .copied()
                .max_by(cmp)
                .expect("matrix has at least one column")
        })
        .collect()
}

/// `perfect[r] - gamma[r][q]` for every entry.
pub fn residual_matrix<T: Scalar>(gamma: &Matrix<T>, perfect: &[T]) -> Matrix<T> {
    assert_eq!(perfect.len(), gamma.rows(), "one perfect value per row");
    let mut beta = gamma.clone();
    for (r, &best) in perfect.iter().enumerate() {
        for q in 0..gamma.cols() {
            beta.set(r, q, best - gamma.get(r, q));
        }
    }
    beta
}

/// Sorts each residual column ascending, then keeps the columns with the
/// smallest largest residual, then the smallest second-largest among those,
/// and so on until one remains or the rows run out.
pub fn compromise_select<T: Scalar>(beta: &Matrix<T>) -> Selection<T> {
    let columns: Vec<Vec<T>> = (0..beta.cols())
        .map(|q| {
            let mut col = beta.column(q);
            col.sort_by(cmp);
            col
        })
        .collect();
    let sorted_residuals = Matrix::from_columns(&columns).expect("columns share the row count");
    let rows = beta.rows();

    let mut survivors: Vec<usize> = (0..beta.cols()).collect();
    let mut decision_level = DecisionLevel::TiedThroughAllLevels;
    let mut min_max_residual = None;
    for level in 0..rows {
        let row = rows - 1 - level;
        let least = survivors
            .iter()
            .map(|&q| columns[q][row])
            .min_by(cmp)
            .expect("at least one survivor");
        survivors.retain(|&q| cmp(&columns[q][row], &least) == Ordering::Equal);
        if level == 0 {
            min_max_residual = Some(least);
        }
        if survivors.len() == 1 {
            decision_level = DecisionLevel::Unique(level);
            break;
        }
    }

    Selection {
        sorted_residuals,
        min_max_residual: min_max_residual.expect("matrix has at least one row"),
        decision_level,
        selected: survivors,
    }
}

/// Perfect vector, residuals and selection for a payoff matrix.
pub fn compromise<T: Scalar>(gamma: &Matrix<T>) -> CompromiseResult<T> {
    let perfect_vector = perfect_vector(gamma);
    let residuals = residual_matrix(gamma, &perfect_vector);
    let selection = compromise_select(&residuals);
    let selected_payoffs = gamma.column(selection.chosen());
    CompromiseResult {
        perfect_vector,
        residuals,
        selection,
        selected_payoffs,
    }
}
