//! Non-half-sum Latin rectangles.
//!
//! A `g x b` array over `Z_v` is a `(v, g, b)` NHSLR when it is Latin (no
//! residue twice in a row or a column) and, for every pair of rows, each
//! entry of their half-sum vector avoids both rows.
//!
//! The `A X B` family is built here: rows of `A` run over `{-1, 1}^n`,
//! columns of `B` over `[m_1] x ... x [m_n]`, and `X = diag(x_i)` with
//! `x_i = (m_1 + 1) ... (m_{i-1} + 1)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{malformed, param, Error, Result};
use crate::params::SchemeParams;
use crate::roots::{checked_pow, floor_root_minus_one};
use crate::znum::{Modulus, Residue};

/// Refuse to materialise matrices beyond this many cells.
pub const MAX_CELLS: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nhslr {
    modulus: Modulus,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl Nhslr {
    /// Build from canonical entries; every row must have the same length and
    /// every entry must lie in `[0, v)`.
    pub fn from_rows(modulus: Modulus, rows: Vec<Vec<u64>>) -> Result<Self> {
        let cols = check_shape(&rows)?;
        let v = modulus.get();
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                if x >= v {
                    return Err(malformed(
                        "NHSLR",
                        format!(
                            "entry ({}, {}) = {x} is not a residue mod {v}",
                            i + 1,
                            j + 1
                        ),
                    ));
                }
                entries.push(x);
            }
        }
        Ok(Nhslr {
            modulus,
            rows: n_rows,
            cols,
            entries,
        })
    }

    /// Build from arbitrary integers, reducing each one mod `v`.
    pub fn from_integer_rows(modulus: Modulus, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = check_shape(rows)?;
        let entries = rows.iter().flatten().map(|&x| modulus.reduce(x)).collect();
        Ok(Nhslr {
            modulus,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// `g`, the number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// `b`, the number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn residue(&self, i: usize, j: usize) -> Residue {
        self.modulus.residue(self.get(i, j) as i64)
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Reorder columns so that new column `j` is old column `perm[j]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.cols];
        if perm.len() != self.cols
            || perm
                .iter()
                .any(|&p| p >= self.cols || std::mem::replace(&mut seen[p], true))
        {
            return Err(param("column permutation has wrong length or repeats"));
        }
        let rows = (0..self.rows)
            .map(|i| perm.iter().map(|&p| self.get(i, p)).collect())
            .collect();
        Self::from_rows(self.modulus, rows)
    }
}

fn check_shape<T>(rows: &[Vec<T>]) -> Result<usize> {
    let Some(first) = rows.first() else {
        return Err(malformed("NHSLR", "no rows"));
    };
    let cols = first.len();
    if cols == 0 {
        return Err(malformed("NHSLR", "empty rows"));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(malformed(
            "NHSLR",
            format!(
                "row {} has {} entries, expected {cols}",
                i + 1,
                rows[i].len()
            ),
        ));
    }
    Ok(cols)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Line {
    Row,
    Column,
}

/// A residue repeated inside one row or one column. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LatinViolation {
    pub line: Line,
    pub index: usize,
    pub value: u64,
    pub first: usize,
    pub second: usize,
}

/// The half-sum of column `column` of rows `rows.0 < rows.1` reappears at
/// `(found_in_row, found_at_column)`. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct HalfSumViolation {
    pub rows: (usize, usize),
    pub column: usize,
    pub half_sum: u64,
    pub found_in_row: usize,
    pub found_at_column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NhslrReport {
    pub pass: bool,
    pub latin_ok: bool,
    pub half_sum_ok: bool,
    pub latin_violations: Vec<LatinViolation>,
    pub half_sum_violations: Vec<HalfSumViolation>,
}

/// Check both NHSLR conditions and collect every witness.
pub fn verify_nhslr(d: &Nhslr) -> NhslrReport {
    let v = d.modulus.get() as usize;
    let (g, b) = (d.rows, d.cols);
    let mut latin = Vec::new();

    // first position of each residue per row
    let mut pos = vec![usize::MAX; g * v];
    for i in 0..g {
        let slot = &mut pos[i * v..(i + 1) * v];
        for j in 0..b {
            let x = d.get(i, j) as usize;
            if slot[x] == usize::MAX {
                slot[x] = j;
            } else {
                latin.push(LatinViolation {
                    line: Line::Row,
                    index: i + 1,
                    value: x as u64,
                    first: slot[x] + 1,
                    second: j + 1,
                });
            }
        }
    }
    let mut col_seen = vec![usize::MAX; v];
    for j in 0..b {
        for i in 0..g {
            let x = d.get(i, j) as usize;
            if col_seen[x] == usize::MAX {
                col_seen[x] = i;
            } else {
                latin.push(LatinViolation {
                    line: Line::Column,
                    index: j + 1,
                    value: x as u64,
                    first: col_seen[x] + 1,
                    second: i + 1,
                });
            }
        }
        for i in 0..g {
            col_seen[d.get(i, j) as usize] = usize::MAX;
        }
    }
    latin.sort();

    let mut half = Vec::new();
    for i in 0..g {
        for i2 in i + 1..g {
            for j in 0..b {
                let h = d.modulus.half_sum_raw(d.get(i, j), d.get(i2, j));
                for r in [i, i2] {
                    let at = pos[r * v + h as usize];
                    if at != usize::MAX {
                        half.push(HalfSumViolation {
                            rows: (i + 1, i2 + 1),
                            column: j + 1,
                            half_sum: h,
                            found_in_row: r + 1,
                            found_at_column: at + 1,
                        });
                    }
                }
            }
        }
    }

    let latin_ok = latin.is_empty();
    let half_sum_ok = half.is_empty();
    NhslrReport {
        pass: latin_ok && half_sum_ok,
        latin_ok,
        half_sum_ok,
        latin_violations: latin,
        half_sum_violations: half,
    }
}

/// How the modulus of an `A X B` construction is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusChoice {
    /// Smallest odd `v >= prod(m_i + 1)`.
    Auto,
    Explicit(u64),
}

/// Parameters of the `A X B` construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxbSpec {
    m: Vec<u64>,
    modulus: ModulusChoice,
}

impl AxbSpec {
    pub fn new(m: Vec<u64>, modulus: ModulusChoice) -> Result<Self> {
        if m.is_empty() {
            return Err(param("dimension n must be at least 1"));
        }
        if m.len() > 24 {
            return Err(param(format!("dimension n = {} is too large", m.len())));
        }
        if let Some(i) = m.iter().position(|&x| x == 0) {
            return Err(param(format!("m_{} must be positive", i + 1)));
        }
        let spec = AxbSpec { m, modulus };
        let bound = spec.union_size()?;
        if let ModulusChoice::Explicit(v) = modulus {
            if v % 2 == 0 {
                return Err(param(format!("modulus v = {v} must be odd")));
            }
            if v < bound {
                return Err(param(format!(
                    "modulus v = {v} is below prod(m_i + 1) = {bound}"
                )));
            }
        }
        Ok(spec)
    }

    pub fn m(&self) -> &[u64] {
        &self.m
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn modulus_choice(&self) -> ModulusChoice {
        self.modulus
    }

    /// `prod(m_i + 1)`, the size of each row's union with its half-sums.
    pub fn union_size(&self) -> Result<u64> {
        self.m.iter().try_fold(1u64, |acc, &x| {
            acc.checked_mul(x + 1)
                .ok_or_else(|| param("prod(m_i + 1) overflows"))
        })
    }

    /// `prod(m_i)`, the column count `b` and the optimizer's objective.
    pub fn objective(&self) -> u64 {
        self.m.iter().product()
    }

    pub fn rows(&self) -> usize {
        1usize << self.m.len()
    }

    pub fn modulus(&self) -> Result<Modulus> {
        let v = match self.modulus {
            ModulusChoice::Explicit(v) => v,
            ModulusChoice::Auto => {
                let u = self.union_size()?;
                if u % 2 == 0 {
                    u + 1
                } else {
                    u.max(3)
                }
            }
        };
        Modulus::new(v)
    }

    /// `x_i = prod_{j < i} (m_j + 1)`.
    pub fn weights(&self) -> Vec<i64> {
        let mut x = Vec::with_capacity(self.m.len());
        let mut acc = 1i64;
        for &mi in &self.m {
            x.push(acc);
            acc *= mi as i64 + 1;
        }
        x
    }
}

/// `prod(m_i + 1)` for a spec.
pub fn union_size(spec: &AxbSpec) -> u64 {
    spec.union_size().expect("validated at construction")
}

/// Row `r` of `A`: a binary counter with bit value 0 as -1, first
/// coordinate most significant.
pub fn sign_row(n: usize, r: usize) -> Vec<i64> {
    (0..n)
        .map(|e| if (r >> (n - 1 - e)) & 1 == 1 { 1 } else { -1 })
        .collect()
}

/// Columns of `B` in lexicographic order over `[m_1] x ... x [m_n]`.
pub fn coefficient_columns(m: &[u64]) -> Vec<Vec<i64>> {
    let mut cols = vec![Vec::new()];
    for &mi in m {
        cols = cols
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (1..=mi as i64).map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    cols
}

/// `A X B` over the integers, before reduction.
pub fn axb_integer_matrix(spec: &AxbSpec) -> Result<Vec<Vec<i64>>> {
    let g = spec.rows() as u64;
    let b = spec.objective();
    if g.saturating_mul(b) > MAX_CELLS {
        return Err(param(format!("{g} x {b} matrix exceeds the size limit")));
    }
    let x = spec.weights();
    let cols = coefficient_columns(&spec.m);
    let n = spec.n();
    Ok((0..spec.rows())
        .map(|r| {
            let a = sign_row(n, r);
            cols.iter()
                .map(|c| (0..n).map(|e| a[e] * x[e] * c[e]).sum())
                .collect()
        })
        .collect())
}

/// `D = A X B mod v`.
pub fn construct_axb(spec: &AxbSpec) -> Result<Nhslr> {
    let v = spec.modulus()?;
    let ints = axb_integer_matrix(spec)?;
    Nhslr::from_integer_rows(v, &ints)
}

/// Uniform parts `m_i = floor(v^(1/n) - 1)`.
pub fn optimize_closed_form(v: Modulus, n: u32) -> Result<AxbSpec> {
    if n == 0 {
        return Err(param("n must be positive"));
    }
    let m = floor_root_minus_one(v.get(), n);
    if m < 1 {
        return Err(Error::Infeasible(format!(
            "floor({}^(1/{n}) - 1) < 1",
            v.get()
        )));
    }
    AxbSpec::new(vec![m; n as usize], ModulusChoice::Explicit(v.get()))
}

/// Exact maximiser of `prod(m_i)` subject to `prod(m_i + 1) <= v`.
///
/// Tuples are searched in non-decreasing order; the lexicographically
/// smallest maximiser wins ties.
pub fn optimize_exhaustive(v: Modulus, n: u32) -> Result<AxbSpec> {
    if n == 0 {
        return Err(param("n must be positive"));
    }
    let v_raw = v.get();
    if checked_pow(2, n).is_none_or(|p| p > v_raw) {
        return Err(Error::Infeasible(format!("2^{n} exceeds v = {v_raw}")));
    }

    struct Search {
        v: u64,
        n: usize,
        cur: Vec<u64>,
        best: Option<(u64, Vec<u64>)>,
    }

    impl Search {
        fn go(&mut self, min_m: u64, span: u64, obj: u64) {
            let left = (self.n - self.cur.len()) as u32;
            if left == 0 {
                if self.best.as_ref().is_none_or(|(f, _)| obj > *f) {
                    self.best = Some((obj, self.cur.clone()));
                }
                return;
            }
            let mut m = min_m;
            loop {
                // all remaining parts are at least m
                let need = checked_pow(m + 1, left).and_then(|p| p.checked_mul(span));
                if need.is_none_or(|p| p > self.v) {
                    break;
                }
                self.cur.push(m);
                self.go(m, span * (m + 1), obj * m);
                self.cur.pop();
                m += 1;
            }
        }
    }

    let mut s = Search {
        v: v_raw,
        n: n as usize,
        cur: Vec::with_capacity(n as usize),
        best: None,
    };
    s.go(1, 1, 1);
    let (_, m) = s.best.expect("2^n <= v guarantees a feasible tuple");
    AxbSpec::new(m, ModulusChoice::Explicit(v_raw))
}

/// Scheme parameters realised by a verified NHSLR through the cyclic
/// Latin-square construction.
pub fn scheme_params(d: &Nhslr) -> Result<SchemeParams> {
    if !verify_nhslr(d).pass {
        return Err(Error::NotVerified("NHSLR"));
    }
    let v = d.modulus.get();
    let (g, b) = (d.rows as u64, d.cols as u64);
    Ok(SchemeParams::new(
        v,
        v * g,
        (v - b) * g,
        b * v,
        BTreeMap::from([(g, b * v)]),
    ))
}
