use std::collections::BTreeMap;

use almost_rainbow::search::{min_colors_exhaustive, SearchParams, SearchStatus};
use almost_rainbow::verify_naive;

fn min_colors(rows: usize, cols: usize, q: u8, symmetry_breaking: bool) -> u32 {
    let mut p = SearchParams::new(rows, cols, q, (rows * cols) as u32);
    p.symmetry_breaking = symmetry_breaking;
    let r = min_colors_exhaustive(&p).unwrap();
    assert_eq!(r.status, SearchStatus::Exact, "{rows}x{cols} q={q}");
    let w = r.witness.as_ref().unwrap();
    assert!(w.colors_used() as u32 <= r.min_colors.unwrap());
    if q == 3 {
        assert!(verify_naive(w).passes(), "witness for {rows}x{cols} must re-verify");
    }
    r.min_colors.unwrap()
}

#[test]
fn monotone_in_both_parts() {
    let mut table = BTreeMap::new();
    for rows in 2..=4 {
        for cols in 2..=4 {
            if rows * cols <= 12 {
                table.insert((rows, cols), min_colors(rows, cols, 3, true));
            }
        }
    }
    for (&(r, c), &v) in &table {
        assert!(v >= 3, "a 4-cycle exists so at least q colors are needed");
        if let Some(&bigger) = table.get(&(r + 1, c)) {
            assert!(bigger >= v, "({r},{c})={v} but ({},{c})={bigger}", r + 1);
        }
        if let Some(&bigger) = table.get(&(r, c + 1)) {
            assert!(bigger >= v, "({r},{c})={v} but ({r},{})={bigger}", c + 1);
        }
        // Transposing a witness gives a witness.
        if let Some(&t) = table.get(&(c, r)) {
            assert_eq!(t, v);
        }
    }
}

#[test]
fn symmetry_breaking_preserves_minimum() {
    for (rows, cols) in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)] {
        for q in [3, 4] {
            assert_eq!(min_colors(rows, cols, q, true), min_colors(rows, cols, q, false), "{rows}x{cols} q={q}");
        }
    }
}

#[test]
fn rainbow_witnesses_have_four_colors_per_cycle() {
    let r = min_colors_exhaustive(&SearchParams::new(3, 3, 4, 9)).unwrap();
    let w = r.witness.unwrap();
    for r1 in 0..3 {
        for r2 in r1 + 1..3 {
            for c1 in 0..3 {
                for c2 in c1 + 1..3 {
                    let d = almost_rainbow::classify_quadruple(w.get(r1, c1), w.get(r1, c2), w.get(r2, c1), w.get(r2, c2));
                    assert_eq!(d, 4);
                }
            }
        }
    }
}

#[test]
fn witness_is_deterministic() {
    let a = min_colors_exhaustive(&SearchParams::new(3, 3, 3, 9)).unwrap();
    let b = min_colors_exhaustive(&SearchParams::new(3, 3, 3, 9)).unwrap();
    assert_eq!(a, b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
