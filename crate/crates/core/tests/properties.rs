use almost_rainbow::verifier::{quadruple_count, verify_fast_with, verify_naive_with, VerifyOptions};
use almost_rainbow::{build_matrix, sigma_power, verify_fast, verify_naive, Color, ColorGrid, InterpretationConfig};
use proptest::prelude::*;

fn grid_strategy(max_n: usize) -> impl Strategy<Value = ColorGrid> {
    (2..=max_n, 2..=max_n).prop_flat_map(|(rows, cols)| {
        let colors = rows.max(cols) as Color;
        prop::collection::vec(1..=colors, rows * cols).prop_map(move |cells| ColorGrid::new(rows, cols, cells))
    })
}

fn square_with_perms(max_n: usize) -> impl Strategy<Value = (ColorGrid, Vec<usize>, Vec<usize>, Vec<Color>)> {
    (2..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(1..=n as Color, n * n),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            Just((1..=n as Color).collect::<Vec<_>>()).prop_shuffle(),
        )
            .prop_map(move |(cells, rp, cp, relabel)| (ColorGrid::new(n, n, cells), rp, cp, relabel))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn fast_matches_naive(grid in grid_strategy(12), cap in 0usize..50) {
        let opts = VerifyOptions { max_stored: cap };
        let naive = verify_naive_with(&grid, &opts);
        let fast = verify_fast_with(&grid, &opts);
        prop_assert_eq!(naive.to_json(), fast.to_json());
        prop_assert_eq!(naive.checked, quadruple_count(grid.rows(), grid.cols()));
    }

    #[test]
    fn violation_count_is_invariant((grid, rp, cp, relabel) in square_with_perms(10)) {
        let base = verify_fast(&grid).violation_count;
        prop_assert_eq!(verify_fast(&grid.permute_rows(&rp)).violation_count, base);
        prop_assert_eq!(verify_fast(&grid.permute_cols(&cp)).violation_count, base);
        let relabeled = grid.map_colors(|c| relabel[c as usize - 1]);
        prop_assert_eq!(verify_fast(&relabeled).violation_count, base);
    }

    #[test]
    fn duplicated_row_forces_violations(grid in grid_strategy(10), a in 0usize..10, b in 0usize..10) {
        let n = grid.rows();
        let (a, b) = (a % n, b % n);
        prop_assume!(a != b);
        let mut g = grid.clone();
        for c in 0..g.cols() {
            g.set(b, c, grid.get(a, c));
        }
        let report = verify_naive_with(&g, &VerifyOptions { max_stored: usize::MAX });
        let (lo, hi) = (a.min(b) + 1, a.max(b) + 1);
        let on_pair = report.violations.iter().filter(|v| v.i == lo && v.j == hi).count() as u64;
        let cols = g.cols() as u64;
        prop_assert_eq!(on_pair, cols * (cols - 1) / 2);
    }

    #[test]
    fn sigma_power_is_a_group_action(n in 3usize..60, r in -200i64..200, r2 in -200i64..200, c in 1i64..60) {
        let cfg = InterpretationConfig::default();
        let c = (c - 1) % (n as i64 - 1) + 1;
        prop_assert_eq!(sigma_power(0, c, n, &cfg), c as Color);
        let inner = sigma_power(r2, c, n, &cfg) as i64;
        prop_assert_eq!(sigma_power(r, inner, n, &cfg), sigma_power(r + r2, c, n, &cfg));
        // Direct modular arithmetic.
        let m = n as i64 - 1;
        let direct = ((r + c) % m + m) % m;
        let expect = if direct == 0 { m } else { direct };
        prop_assert_eq!(sigma_power(r, c, n, &cfg) as i64, expect);
    }
}

#[test]
fn generated_matrices_fast_equals_naive() {
    let cfg = InterpretationConfig::default();
    for n in (6..=40).step_by(2) {
        let Ok(m) = build_matrix(n, &cfg) else { continue };
        assert_eq!(verify_naive(m.grid()).to_json(), verify_fast(m.grid()).to_json(), "n={n}");
    }
}
