use hubnet_core::compromise::{compromise, compromise_select, DecisionLevel};
use hubnet_core::matrix::Matrix;
use hubnet_core::{Money, Rational};
use proptest::prelude::*;

/// Lexicographic minimax: sort each column descending, take the smallest vectors.
fn oracle(beta: &[Vec<i64>]) -> (Vec<usize>, DecisionLevel) {
    let cols = beta[0].len();
    let keys: Vec<Vec<i64>> = (0..cols)
        .map(|q| {
            let mut c: Vec<i64> = beta.iter().map(|r| r[q]).collect();
            c.sort_unstable_by(|a, b| b.cmp(a));
            c
        })
        .collect();
    let best = keys.iter().min().unwrap();
    let selected: Vec<usize> = (0..cols).filter(|&q| &keys[q] == best).collect();
    if selected.len() > 1 {
        return (selected, DecisionLevel::TiedThroughAllLevels);
    }
    let level = (0..best.len())
        .find(|&i| keys.iter().filter(|k| k[..=i] == best[..=i]).count() == 1)
        .unwrap();
    (selected, DecisionLevel::Unique(level))
}

fn money_matrix(rows: &[Vec<i64>]) -> Matrix<Money> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| Money::from_int(x)).collect())
            .collect(),
    )
    .unwrap()
}

fn matrix_strategy(max: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=7)
        .prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(0..=max, c), r))
}

#[test]
fn all_zero_matrix_is_tied_everywhere() {
    let sel = compromise_select(&money_matrix(&[vec![0, 0], vec![0, 0]]));
    assert_eq!(sel.selected, vec![0, 1]);
    assert_eq!(sel.decision_level, DecisionLevel::TiedThroughAllLevels);
    assert_eq!(sel.chosen(), 0);
}

#[test]
fn second_level_breaks_a_first_level_tie() {
    // Both columns have largest residual 5; the second column's other residual is smaller.
    let sel = compromise_select(&money_matrix(&[vec![5, 1], vec![3, 5]]));
    assert_eq!(sel.selected, vec![1]);
    assert_eq!(sel.decision_level, DecisionLevel::Unique(1));
    assert_eq!(sel.min_max_residual, Money::from_int(5));
}

#[test]
fn exhaustive_small_grid() {
    // Every 2x2 and 2x3 matrix over {0..3}.
    for cols in 2..=3u32 {
        for code in 0..4u32.pow(2 * cols) {
            let mut c = code;
            let rows: Vec<Vec<i64>> = (0..2)
                .map(|_| {
                    (0..cols)
                        .map(|_| {
                            let v = c % 4;
                            c /= 4;
                            v as i64
                        })
                        .collect()
                })
                .collect();
            let sel = compromise_select(&money_matrix(&rows));
            assert_eq!(
                (sel.selected, sel.decision_level),
                oracle(&rows),
                "{rows:?}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn selection_matches_lexicographic_oracle(beta in matrix_strategy(6)) {
        let sel = compromise_select(&money_matrix(&beta));
        prop_assert_eq!((sel.selected.clone(), sel.decision_level), oracle(&beta));
        let max = beta.iter().map(|r| r[sel.chosen()]).max().unwrap();
        prop_assert_eq!(sel.min_max_residual, Money::from_int(max));
    }

    #[test]
    fn no_column_beats_the_selection(beta in matrix_strategy(20)) {
        let sel = compromise_select(&money_matrix(&beta));
        let desc = |q: usize| {
            let mut c: Vec<i64> = beta.iter().map(|r| r[q]).collect();
            c.sort_unstable_by(|a, b| b.cmp(a));
            c
        };
        let chosen = desc(sel.chosen());
        for q in 0..beta[0].len() {
            prop_assert!(desc(q) >= chosen);
        }
    }

    #[test]
    fn positive_scaling_keeps_the_selection(
        gamma in matrix_strategy(50),
        num in 1i64..=20,
        den in 1i64..=20,
    ) {
        let lambda = Rational::new(num, den);
        let exact = Matrix::from_rows(
            gamma.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect(),
        ).unwrap();
        let a = compromise(&exact);
        let b = compromise(&exact.map(|x| x * lambda));
        prop_assert_eq!(&a.selection.selected, &b.selection.selected);
        prop_assert_eq!(a.selection.decision_level, b.selection.decision_level);
        prop_assert_eq!(a.selection.min_max_residual * lambda, b.selection.min_max_residual);
        prop_assert_eq!(a.residuals.map(|x| x * lambda), b.residuals);
    }

    #[test]
    fn constant_shift_keeps_residuals_bitwise(gamma in matrix_strategy(50), shift in -1000i64..=1000) {
        let m = money_matrix(&gamma);
        let a = compromise(&m);
        let b = compromise(&m.map(|x| x + Money::from_int(shift)));
        prop_assert_eq!(&a.residuals, &b.residuals);
        prop_assert_eq!(a.selection, b.selection);
    }

    #[test]
    fn column_permutation_permutes_the_selection(
        gamma in matrix_strategy(10),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let cols = gamma[0].len();
        let mut perm: Vec<usize> = (0..cols).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        // column q of the permuted matrix is column perm[q] of the original
        let permuted: Vec<Vec<i64>> = gamma.iter().map(|r| perm.iter().map(|&p| r[p]).collect()).collect();
        let a = compromise(&money_matrix(&gamma));
        let b = compromise(&money_matrix(&permuted));
        let mut mapped: Vec<usize> = b.selection.selected.iter().map(|&q| perm[q]).collect();
        mapped.sort_unstable();
        prop_assert_eq!(mapped, a.selection.selected);
        prop_assert_eq!(a.selection.decision_level, b.selection.decision_level);
    }

    #[test]
    fn residuals_are_nonnegative_with_a_zero_per_row(gamma in matrix_strategy(50)) {
        let r = compromise(&money_matrix(&gamma));
        for row in r.residuals.to_rows() {
            prop_assert!(row.iter().all(|&x| x >= Money::ZERO));
            prop_assert!(row.contains(&Money::ZERO));
        }
        prop_assert_eq!(r.selected_payoffs, money_matrix(&gamma).column(r.selection.chosen()));
    }
}
