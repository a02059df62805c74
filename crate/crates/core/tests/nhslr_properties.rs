use pda_forge::{
    axb_integer_matrix, construct_axb, optimize_closed_form, optimize_exhaustive, verify_nhslr,
    AxbSpec, Modulus, ModulusChoice, Nhslr,
};
use proptest::prelude::*;

fn z(v: u64) -> Modulus {
    Modulus::new(v).unwrap()
}

/// Every `m` with `n <= 3` and `m_i <= 4`.
fn grid() -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for n in 1..=3u32 {
        for idx in 0..4u32.pow(n) {
            out.push((0..n).map(|e| (idx / 4u32.pow(e) % 4 + 1) as u64).collect());
        }
    }
    out
}

/// Brute-force reading of the two conditions.
#[allow(clippy::needless_range_loop)]
fn naive_pass(d: &[Vec<u64>], v: u64) -> bool {
    let g = d.len();
    let b = d[0].len();
    for row in d {
        for j in 0..b {
            for k in j + 1..b {
                if row[j] == row[k] {
                    return false;
                }
            }
        }
    }
    for j in 0..b {
        for i in 0..g {
            for k in i + 1..g {
                if d[i][j] == d[k][j] {
                    return false;
                }
            }
        }
    }
    for i in 0..g {
        for k in i + 1..g {
            for j in 0..b {
                let h = (0..v)
                    .find(|r| (2 * r) % v == (d[i][j] + d[k][j]) % v)
                    .unwrap();
                if d[i].contains(&h) || d[k].contains(&h) {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn construction_verifies_over_grid() {
    for m in grid() {
        let spec = AxbSpec::new(m.clone(), ModulusChoice::Auto).unwrap();
        let base = spec.modulus().unwrap().get();
        for v in [base, base + 2, base + 4] {
            let spec = AxbSpec::new(m.clone(), ModulusChoice::Explicit(v)).unwrap();
            let d = construct_axb(&spec).unwrap();
            assert!(verify_nhslr(&d).pass, "m={m:?} v={v}");
            assert!(naive_pass(&d.to_rows(), v), "m={m:?} v={v}");
        }
    }
}

#[test]
fn unreduced_matrix_bounds() {
    for m in grid() {
        let spec = AxbSpec::new(m.clone(), ModulusChoice::Auto).unwrap();
        let v = spec.modulus().unwrap().get() as i64;
        let d = axb_integer_matrix(&spec).unwrap();
        let (g, b) = (d.len(), d[0].len());
        for row in &d {
            for j in 0..b {
                for k in j + 1..b {
                    let diff = (row[j] - row[k]).abs();
                    assert!(diff > 0 && diff < v, "row bound, m={m:?}");
                }
            }
        }
        for j in 0..b {
            for i in 0..g {
                for k in i + 1..g {
                    let diff = (d[i][j] - d[k][j]).abs();
                    assert!(diff > 0 && diff < 2 * v, "column bound, m={m:?}");
                    assert_eq!(diff % 2, 0, "column parity, m={m:?}");
                    let h = (d[i][j] + d[k][j]) / 2;
                    for r in [i, k] {
                        for &x in &d[r] {
                            let gap = (x - h).abs();
                            assert!(gap > 0 && gap < v, "half-sum bound, m={m:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn all_two_by_one_matrices_over_z7() {
    for a in 0..7 {
        for b in 0..7 {
            let d = Nhslr::from_rows(z(7), vec![vec![a], vec![b]]).unwrap();
            let pass = verify_nhslr(&d).pass;
            assert_eq!(pass, naive_pass(&d.to_rows(), 7));
            assert_eq!(pass, a != b);
        }
    }
}

#[test]
fn shifted_z7_rectangle_agrees_with_naive() {
    let rows = [vec![1, 2, 3, 4], vec![2, 1, 4, 6], vec![4, 5, 2, 1]];
    for shift in 0..7 {
        let shifted: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|x| (x + shift) % 7).collect())
            .collect();
        let d = Nhslr::from_rows(z(7), shifted.clone()).unwrap();
        let r = verify_nhslr(&d);
        assert!(r.latin_ok);
        assert_eq!(r.pass, naive_pass(&shifted, 7));
    }
}

#[test]
fn exhaustive_dominates_closed_form() {
    for v in (3..=200).step_by(2) {
        for n in 1..=4 {
            let Ok(closed) = optimize_closed_form(z(v), n) else {
                continue;
            };
            let best = optimize_exhaustive(z(v), n).unwrap();
            assert!(best.objective() >= closed.objective(), "v={v} n={n}");
            assert!(best.union_size().unwrap() <= v);
            assert!(best.m().windows(2).all(|w| w[0] <= w[1]));
        }
    }
    // odd perfect powers
    for (q, n) in [(3u64, 1u32), (3, 2), (5, 2), (3, 3), (7, 2), (5, 3), (3, 4)] {
        let v = q.pow(n);
        let closed = optimize_closed_form(z(v), n).unwrap();
        let best = optimize_exhaustive(z(v), n).unwrap();
        assert_eq!(best.objective(), closed.objective(), "v={v} n={n}");
    }
}

fn random_matrix() -> impl Strategy<Value = (u64, Vec<Vec<u64>>)> {
    (1u64..=7, 1usize..=4, 1usize..=5).prop_flat_map(|(h, g, b)| {
        let v = 2 * h + 1;
        (
            Just(v),
            prop::collection::vec(prop::collection::vec(0..v, b), g),
        )
    })
}

proptest! {
    #[test]
    fn verifier_matches_naive((v, rows) in random_matrix()) {
        let d = Nhslr::from_rows(z(v), rows.clone()).unwrap();
        prop_assert_eq!(verify_nhslr(&d).pass, naive_pass(&rows, v));
    }

    #[test]
    fn column_permutation_invariance(
        idx in 0usize..84,
        keys in prop::collection::vec(any::<u32>(), 64),
    ) {
        let m = &grid()[idx];
        let spec = AxbSpec::new(m.clone(), ModulusChoice::Auto).unwrap();
        let d = construct_axb(&spec).unwrap();
        let mut perm: Vec<usize> = (0..d.cols()).collect();
        perm.sort_by_key(|&j| keys[j % keys.len()].wrapping_add(j as u32));
        let p = d.permute_columns(&perm).unwrap();
        prop_assert!(verify_nhslr(&p).pass);
    }
}
