//! Property tests for the matrix type, the elimination engine, and the
//! brute-force oracles.

use gauss_jordan::analysis::{adjugate_inverse, cofactor_det, gen_random_integer, residual_norm};
use gauss_jordan::{
    depivot, invert, DenseMatrix, EliminationMode, EliminationState, PivotStrategy,
    DEFAULT_ZERO_THRESHOLD,
};
use itertools::Itertools;
use proptest::prelude::*;

const T: f64 = DEFAULT_ZERO_THRESHOLD;

fn float_matrix(max_n: usize) -> impl Strategy<Value = DenseMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(-1.0f64..1.0, n * n)
            .prop_map(move |data| DenseMatrix::from_vec(n, data).unwrap())
    })
}

fn float_matrix_triple(max_n: usize) -> impl Strategy<Value = [DenseMatrix; 3]> {
    (1..=max_n).prop_flat_map(|n| {
        let single = move || {
            proptest::collection::vec(-1.0f64..1.0, n * n)
                .prop_map(move |data| DenseMatrix::from_vec(n, data).unwrap())
        };
        [single(), single(), single()]
    })
}

/// Random integer matrix (entries in [-5, 5], n in 2..=6) filtered to be
/// nonsingular per the cofactor oracle; the oracle determinant rides along.
fn nonsingular_integer_matrix() -> impl Strategy<Value = (DenseMatrix, f64)> {
    (2usize..=6, any::<u64>()).prop_filter_map("oracle determinant must be nonzero", |(n, seed)| {
        let a = gen_random_integer(n, seed, 5).unwrap();
        let d = cofactor_det(&a).unwrap();
        (d.abs() >= 1.0).then_some((a, d))
    })
}

fn permutation_matrix(perm: &[usize]) -> DenseMatrix {
    let n = perm.len();
    let mut data = vec![0.0; n * n];
    for (i, &j) in perm.iter().enumerate() {
        data[i * n + j] = 1.0;
    }
    DenseMatrix::from_vec(n, data).unwrap()
}

/// Sign by counting inversions; independent of the engine's bookkeeping.
fn permutation_sign(perm: &[usize]) -> f64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

proptest! {
    // -- matrix-core --

    #[test]
    fn identity_law_is_exact(a in float_matrix(8)) {
        let id = DenseMatrix::identity(a.n()).unwrap();
        prop_assert_eq!(a.multiply(&id).unwrap().max_abs_diff(&a).unwrap(), 0.0);
        prop_assert_eq!(id.multiply(&a).unwrap().max_abs_diff(&a).unwrap(), 0.0);
    }

    #[test]
    fn multiplication_is_associative_within_tolerance([a, b, c] in float_matrix_triple(8)) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right).unwrap() <= 1e-12);
    }

    #[test]
    fn from_rows_round_trips_bits(
        n in 1usize..=6,
        data in proptest::collection::vec(-1e308f64..1e308, 36),
    ) {
        let rows: Vec<Vec<f64>> = data[..n * n].chunks(n).map(<[f64]>::to_vec).collect();
        let m = DenseMatrix::from_rows(&rows).unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(m.get(i, j).to_bits(), rows[i][j].to_bits());
            }
        }
    }

    // -- gj-engine against the oracles --

    #[test]
    fn inverse_and_determinant_match_oracles((a, det_oracle) in nonsingular_integer_matrix()) {
        for strategy in PivotStrategy::ALL {
            match invert(&a, strategy, T, EliminationMode::Compact) {
                Ok(res) => {
                    let residual = residual_norm(&a, &res.inverse).unwrap();
                    prop_assert!(residual <= 1e-10, "{strategy}: residual {residual}");
                    let det_err = (res.determinant - det_oracle).abs();
                    prop_assert!(
                        det_err <= 1e-9 * det_oracle.abs().max(1.0),
                        "{strategy}: det {} vs oracle {det_oracle}",
                        res.determinant
                    );
                }
                // only the no-search strategy may fail on a nonsingular input
                Err(_) => prop_assert_eq!(strategy, PivotStrategy::None),
            }
        }
    }

    #[test]
    fn inversion_is_an_involution((a, _) in nonsingular_integer_matrix()) {
        let inv = invert(&a, PivotStrategy::Full, T, EliminationMode::Compact)
            .unwrap()
            .inverse;
        let back = invert(&inv, PivotStrategy::Full, T, EliminationMode::Compact)
            .unwrap()
            .inverse;
        prop_assert!(back.max_abs_diff(&a).unwrap() <= 1e-8);
    }

    #[test]
    fn strategies_agree_when_they_succeed((a, _) in nonsingular_integer_matrix()) {
        let results: Vec<_> = PivotStrategy::ALL
            .iter()
            .filter_map(|&s| invert(&a, s, T, EliminationMode::Compact).ok())
            .collect();
        for pair in results.windows(2) {
            let diff = pair[0].inverse.max_abs_diff(&pair[1].inverse).unwrap();
            prop_assert!(diff <= 1e-8, "inverses differ by {diff}");
            let (d0, d1) = (pair[0].determinant, pair[1].determinant);
            prop_assert!((d0 - d1).abs() <= 1e-9 * d0.abs().max(1.0));
        }
    }

    #[test]
    fn modes_visit_same_pivots_and_agree((a, _) in nonsingular_integer_matrix()) {
        for strategy in [PivotStrategy::PartialRow, PivotStrategy::Full] {
            let mut ex = EliminationState::new(&a, EliminationMode::Explicit);
            let mut co = EliminationState::new(&a, EliminationMode::Compact);
            while !ex.is_complete() {
                let ce = ex.select_pivot(strategy, T).unwrap();
                let cc = co.select_pivot(strategy, T).unwrap();
                prop_assert_eq!(ce, cc, "pivot choices diverged");
                ex.apply_pivot(&ce);
                co.apply_pivot(&cc);
                ex.eliminate_step().unwrap();
                co.eliminate_step().unwrap();
            }
            let inv_ex = depivot(ex.inverse_candidate(), ex.log());
            let inv_co = depivot(co.inverse_candidate(), co.log());
            prop_assert!(inv_ex.max_abs_diff(&inv_co).unwrap() <= 1e-12);
        }
    }

    // -- oracle cross-checks --

    #[test]
    fn engine_agrees_with_adjugate_oracle_3x3(seed in any::<u64>()) {
        let a = gen_random_integer(3, seed, 2).unwrap();
        let det = cofactor_det(&a).unwrap();
        prop_assume!(det.abs() >= 1.0);
        let oracle = adjugate_inverse(&a).unwrap();
        let res = invert(&a, PivotStrategy::Full, T, EliminationMode::Compact).unwrap();
        prop_assert!(res.inverse.max_abs_diff(&oracle).unwrap() <= 1e-9);
        prop_assert!((res.determinant - det).abs() <= 1e-9 * det.abs().max(1.0));
    }

    #[test]
    fn cofactor_det_is_multiplicative_4x4(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = gen_random_integer(4, s1, 5).unwrap();
        let b = gen_random_integer(4, s2, 5).unwrap();
        let da = cofactor_det(&a).unwrap();
        let db = cofactor_det(&b).unwrap();
        let dab = cofactor_det(&a.multiply(&b).unwrap()).unwrap();
        prop_assert!((dab - da * db).abs() <= 1e-6 * (da * db).abs().max(1.0));
    }
}

// -- deterministic properties --

#[test]
fn permutation_determinant_is_sign_and_inverse_is_transpose() {
    for n in 1..=4 {
        for perm in (0..n).permutations(n) {
            let p = permutation_matrix(&perm);
            let sign = permutation_sign(&perm);
            for strategy in [PivotStrategy::PartialRow, PivotStrategy::Full] {
                let res = invert(&p, strategy, T, EliminationMode::Compact).unwrap();
                assert_eq!(res.determinant, sign, "perm {perm:?} under {strategy}");
                assert_eq!(
                    res.inverse.max_abs_diff(&p.transpose()).unwrap(),
                    0.0,
                    "perm {perm:?} under {strategy}"
                );
            }
        }
    }
}

#[test]
fn depivot_is_required_once_swaps_happen() {
    let inputs = [
        DenseMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap(),
        DenseMatrix::from_rows(&[
            [0.0, 2.0, 1.0, 3.0],
            [4.0, -1.0, 0.5, 1.0],
            [-2.0, 3.0, 3.0, -5.0],
            [1.0, 1.0, -4.0, 2.0],
        ])
        .unwrap(),
    ];
    for a in &inputs {
        let mut st = EliminationState::new(a, EliminationMode::Compact);
        while !st.is_complete() {
            let c = st.select_pivot(PivotStrategy::Full, T).unwrap();
            st.apply_pivot(&c);
            st.eliminate_step().unwrap();
        }
        assert!(!st.log().is_empty(), "input was chosen to force swaps");
        let raw = residual_norm(a, st.inverse_candidate()).unwrap();
        assert!(raw > 1e-6, "raw candidate looked like an inverse: {raw}");
        let fixed = depivot(st.inverse_candidate(), st.log());
        assert!(residual_norm(a, &fixed).unwrap() <= 1e-10);
    }
}

#[test]
fn zero_pivot_does_not_imply_singular() {
    let p = DenseMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
    assert!(invert(&p, PivotStrategy::None, T, EliminationMode::Compact).is_err());
    assert!(invert(&p, PivotStrategy::PartialRow, T, EliminationMode::Compact).is_ok());
    assert!(invert(&p, PivotStrategy::Full, T, EliminationMode::Compact).is_ok());
}
