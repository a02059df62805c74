#![allow(dead_code)]

use pda_forge::{
    conjugate, construct_axb, mn_pda, pda_from_nhslr, AxbSpec, Cell, Modulus, ModulusChoice, Nhslr,
    Pda,
};

pub fn z(v: u64) -> Modulus {
    Modulus::new(v).unwrap()
}

/// The 4 x 4 array with two stars per column.
pub fn golden() -> Pda {
    let s = Cell::Star;
    let y = Cell::Symbol;
    Pda::new(
        4,
        4,
        2,
        4,
        vec![
            vec![s, s, y(1), y(4)],
            vec![y(1), s, s, y(2)],
            vec![y(3), y(2), s, s],
            vec![s, y(4), y(3), s],
        ],
    )
    .unwrap()
}

pub fn z7_rectangle() -> Nhslr {
    Nhslr::from_rows(
        z(7),
        vec![vec![1, 2, 3, 4], vec![2, 1, 4, 6], vec![4, 5, 2, 1]],
    )
    .unwrap()
}

/// Every `m` with `n <= 3` and `m_i <= 4`.
pub fn m_grid() -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for n in 1..=3u32 {
        for idx in 0..4u32.pow(n) {
            out.push((0..n).map(|e| (idx / 4u32.pow(e) % 4 + 1) as u64).collect());
        }
    }
    out
}

/// `(spec, NHSLR)` for every grid point and every odd `v <= 35` it admits.
pub fn desk_nhslrs() -> Vec<(AxbSpec, Nhslr)> {
    let mut out = Vec::new();
    for m in m_grid() {
        let bound: u64 = m.iter().map(|x| x + 1).product();
        let mut v = if bound.is_multiple_of(2) {
            bound + 1
        } else {
            bound.max(3)
        };
        while v <= 35 {
            let spec = AxbSpec::new(m.clone(), ModulusChoice::Explicit(v)).unwrap();
            let d = construct_axb(&spec).unwrap();
            out.push((spec, d));
            v += 2;
        }
    }
    out
}

/// Verified PDAs: golden arrays, a sample of Construction-1 outputs, MN
/// arrays with `K <= 8` and conjugates.
pub fn corpus() -> Vec<(String, Pda)> {
    let mut out = vec![("golden".to_string(), golden())];
    let ex = pda_from_nhslr(&z7_rectangle()).unwrap();
    out.push(("z7".into(), ex.clone()));
    out.push(("z7 conjugate".into(), conjugate(&ex).unwrap()));
    for (i, (spec, d)) in desk_nhslrs().into_iter().enumerate() {
        // every seventh grid point keeps the suite quick
        if i % 7 == 0 {
            let p = pda_from_nhslr(&d).unwrap();
            out.push((format!("axb {:?} v={}", spec.m(), d.modulus()), p));
        }
    }
    for k in 2..=8 {
        for t in 1..k {
            let p = mn_pda(k, t).unwrap();
            out.push((format!("mn {k},{t}"), p.clone()));
            out.push((format!("mn {k},{t} conjugate"), conjugate(&p).unwrap()));
        }
    }
    out
}
