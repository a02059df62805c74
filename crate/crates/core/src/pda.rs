//! Placement delivery arrays.
//!
//! An `F x K` array of stars and symbols from `[S]` is a `(K, F, Z, S)` PDA
//! when
//!
//! * C1: every column holds exactly `Z` stars,
//! * C2: every symbol of `[S]` occurs at least once,
//! * C3: two cells carrying the same symbol lie in distinct rows and columns
//!   and the two cells at their crossing positions are stars.
//!
//! Rows are packets and columns are users. Symbols are 1-based.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{malformed, param, Error, Result};
use crate::nhslr::{verify_nhslr, Nhslr, MAX_CELLS};
use crate::params::SchemeParams;
use crate::znum::Modulus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    Star,
    Symbol(u32),
}

impl Cell {
    pub fn is_star(self) -> bool {
        matches!(self, Cell::Star)
    }

    pub fn symbol(self) -> Option<u32> {
        match self {
            Cell::Star => None,
            Cell::Symbol(s) => Some(s),
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Star => f.write_str("*"),
            Cell::Symbol(s) => write!(f, "{s}"),
        }
    }
}

/// A residue/column pair `(c, j)` naming a symbol of a PDA built from an
/// NHSLR; `j` is the 1-based column of the NHSLR.
pub type PairLabel = (u64, u64);

/// `(c, j) -> (j - 1) v + c + 1`, a bijection onto `[b v]`.
pub fn encode_pair(c: u64, j: u64, v: u64) -> u64 {
    debug_assert!(c < v && j >= 1);
    (j - 1) * v + c + 1
}

pub fn decode_pair(s: u64, v: u64) -> PairLabel {
    debug_assert!(s >= 1);
    ((s - 1) % v, (s - 1) / v + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pda {
    users: usize,
    packets: usize,
    stars_per_column: usize,
    symbols: usize,
    cells: Vec<Cell>,
    pair_labels: Option<Vec<Option<PairLabel>>>,
}

impl Pda {
    /// Wrap a grid with its declared `(K, F, Z, S)`. Only the shape is
    /// checked here; the PDA conditions are left to [`verify_pda`].
    pub fn new(k: usize, f: usize, z: usize, s: usize, rows: Vec<Vec<Cell>>) -> Result<Self> {
        if rows.len() != f {
            return Err(malformed(
                "PDA",
                format!("declared F = {f} but grid has {} rows", rows.len()),
            ));
        }
        if k == 0 || f == 0 {
            return Err(malformed("PDA", "K and F must be positive"));
        }
        let mut cells = Vec::with_capacity(f * k);
        for (j, row) in rows.into_iter().enumerate() {
            if row.len() != k {
                return Err(malformed(
                    "PDA",
                    format!("row {} has {} cells, declared K = {k}", j + 1, row.len()),
                ));
            }
            cells.extend(row);
        }
        Ok(Pda {
            users: k,
            packets: f,
            stars_per_column: z,
            symbols: s,
            cells,
            pair_labels: None,
        })
    }

    /// Attach per-cell provenance labels (row-major, `None` on stars).
    pub fn with_pair_labels(mut self, labels: Vec<Vec<Option<PairLabel>>>) -> Result<Self> {
        if labels.len() != self.packets || labels.iter().any(|r| r.len() != self.users) {
            return Err(malformed(
                "PDA",
                "pair_labels shape does not match the grid",
            ));
        }
        self.pair_labels = Some(labels.into_iter().flatten().collect());
        Ok(self)
    }

    /// `K`.
    pub fn users(&self) -> usize {
        self.users
    }

    /// `F`.
    pub fn packets(&self) -> usize {
        self.packets
    }

    /// Declared `Z`.
    pub fn stars_per_column(&self) -> usize {
        self.stars_per_column
    }

    /// Declared `S`.
    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn declared(&self) -> (usize, usize, usize, usize) {
        (
            self.users,
            self.packets,
            self.stars_per_column,
            self.symbols,
        )
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Cell {
        self.cells[row * self.users + col]
    }

    pub fn set(&mut self, row: usize, col: usize, cell: Cell) {
        self.cells[row * self.users + col] = cell;
        if let Some(labels) = &mut self.pair_labels {
            labels[row * self.users + col] = None;
        }
    }

    pub fn row(&self, row: usize) -> &[Cell] {
        &self.cells[row * self.users..(row + 1) * self.users]
    }

    pub fn to_rows(&self) -> Vec<Vec<Cell>> {
        (0..self.packets).map(|j| self.row(j).to_vec()).collect()
    }

    pub fn pair_label(&self, row: usize, col: usize) -> Option<PairLabel> {
        self.pair_labels.as_ref()?[row * self.users + col]
    }

    pub fn pair_label_rows(&self) -> Option<Vec<Vec<Option<PairLabel>>>> {
        let labels = self.pair_labels.as_ref()?;
        Some(labels.chunks(self.users).map(<[_]>::to_vec).collect())
    }

    /// Cells `(row, column)` of each symbol `1..=S`, row-major order.
    /// Symbols outside `[S]` are ignored.
    pub fn symbol_positions(&self) -> Vec<Vec<(usize, usize)>> {
        let mut pos = vec![Vec::new(); self.symbols];
        for (idx, cell) in self.cells.iter().enumerate() {
            if let Cell::Symbol(s) = *cell {
                if s >= 1 && (s as usize) <= self.symbols {
                    pos[s as usize - 1].push((idx / self.users, idx % self.users));
                }
            }
        }
        pos
    }

    /// Renumber symbols by first appearance in row-major order. Two PDAs are
    /// equal up to symbol relabelling iff their canonical forms are equal.
    pub fn canonical_relabel(&self) -> Pda {
        let mut map: HashMap<u32, u32> = HashMap::new();
        let cells = self
            .cells
            .iter()
            .map(|c| match *c {
                Cell::Star => Cell::Star,
                Cell::Symbol(s) => {
                    let next = map.len() as u32 + 1;
                    Cell::Symbol(*map.entry(s).or_insert(next))
                }
            })
            .collect();
        Pda {
            cells,
            pair_labels: None,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarCountViolation {
    pub column: usize,
    pub stars: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellRef {
    pub row: usize,
    pub column: usize,
    pub symbol: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum C3Failure {
    SameRow,
    SameColumn,
    CrossNotStar { row: usize, column: usize },
}

/// Two occurrences of `symbol` that break C3. Positions are 1-based
/// `(row, column)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct C3Violation {
    pub symbol: u32,
    pub first: (usize, usize),
    pub second: (usize, usize),
    #[serde(flatten)]
    pub failure: C3Failure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PdaReport {
    pub pass: bool,
    pub c1_ok: bool,
    pub c2_ok: bool,
    pub c3_ok: bool,
    pub star_count_violations: Vec<StarCountViolation>,
    pub missing_symbols: Vec<u32>,
    pub out_of_alphabet: Vec<CellRef>,
    pub c3_violations: Vec<C3Violation>,
    /// Occurrence count of each symbol `1..=S`.
    pub occurrences: Vec<u64>,
}

/// Check C1-C3 against the declared parameters.
///
/// Symbols outside `[S]` count as a C2 (alphabet) failure and still take
/// part in the C3 scan.
pub fn verify_pda(p: &Pda) -> PdaReport {
    let (k, f) = (p.users, p.packets);

    let mut star_count_violations = Vec::new();
    for col in 0..k {
        let stars = (0..f).filter(|&r| p.get(r, col).is_star()).count();
        if stars != p.stars_per_column {
            star_count_violations.push(StarCountViolation {
                column: col + 1,
                stars,
                expected: p.stars_per_column,
            });
        }
    }

    let mut groups: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    let mut out_of_alphabet = Vec::new();
    for r in 0..f {
        for c in 0..k {
            if let Cell::Symbol(s) = p.get(r, c) {
                groups.entry(s).or_default().push((r, c));
                if s == 0 || s as usize > p.symbols {
                    out_of_alphabet.push(CellRef {
                        row: r + 1,
                        column: c + 1,
                        symbol: s,
                    });
                }
            }
        }
    }
    let occurrences: Vec<u64> = (1..=p.symbols as u32)
        .map(|s| groups.get(&s).map_or(0, |g| g.len() as u64))
        .collect();
    let missing_symbols: Vec<u32> = occurrences
        .iter()
        .enumerate()
        .filter(|(_, &n)| n == 0)
        .map(|(i, _)| i as u32 + 1)
        .collect();

    let mut c3_violations = Vec::new();
    for (&s, cells) in &groups {
        for (a, &(r1, c1)) in cells.iter().enumerate() {
            for &(r2, c2) in &cells[a + 1..] {
                let mut push = |failure| {
                    c3_violations.push(C3Violation {
                        symbol: s,
                        first: (r1 + 1, c1 + 1),
                        second: (r2 + 1, c2 + 1),
                        failure,
                    })
                };
                if r1 == r2 {
                    push(C3Failure::SameRow);
                } else if c1 == c2 {
                    push(C3Failure::SameColumn);
                } else {
                    for (r, c) in [(r1, c2), (r2, c1)] {
                        if !p.get(r, c).is_star() {
                            push(C3Failure::CrossNotStar {
                                row: r + 1,
                                column: c + 1,
                            });
                        }
                    }
                }
            }
        }
    }

    let c1_ok = star_count_violations.is_empty();
    let c2_ok = missing_symbols.is_empty() && out_of_alphabet.is_empty();
    let c3_ok = c3_violations.is_empty();
    PdaReport {
        pass: c1_ok && c2_ok && c3_ok,
        c1_ok,
        c2_ok,
        c3_ok,
        star_count_violations,
        missing_symbols,
        out_of_alphabet,
        c3_violations,
        occurrences,
    }
}

fn require_verified(p: &Pda) -> Result<PdaReport> {
    let report = verify_pda(p);
    if report.pass {
        Ok(report)
    } else {
        Err(Error::NotVerified("PDA"))
    }
}

/// The `vg x v` PDA of a verified `(v, g, b)` NHSLR.
///
/// Row `f` in `[0, vg)`, column `k` in `[0, v)`: the cell holds the pair
/// `(<f + k>_v, j)` when `<k - f>_v` is the `j`-th entry of NHSLR row
/// `floor(f / v)`, and a star otherwise. Pairs are numbered by
/// [`encode_pair`]; the labels are kept alongside.
pub fn pda_from_nhslr(d: &Nhslr) -> Result<Pda> {
    if !verify_nhslr(d).pass {
        return Err(Error::NotVerified("NHSLR"));
    }
    let v = d.modulus().get();
    let vu = v as usize;
    let (g, b) = (d.rows(), d.cols());
    if (vu as u64) * (vu as u64) * g as u64 > MAX_CELLS {
        return Err(param("PDA would exceed the size limit"));
    }

    let f_total = vu * g;
    let mut cells = Vec::with_capacity(f_total * vu);
    let mut labels = Vec::with_capacity(f_total * vu);
    let mut col_of = vec![usize::MAX; vu];
    for i in 0..g {
        col_of.fill(usize::MAX);
        for j in 0..b {
            col_of[d.get(i, j) as usize] = j;
        }
        for f in i * vu..(i + 1) * vu {
            for k in 0..vu {
                let orbit = (k + vu - f % vu) % vu;
                match col_of[orbit] {
                    usize::MAX => {
                        cells.push(Cell::Star);
                        labels.push(None);
                    }
                    j => {
                        let c = ((f + k) % vu) as u64;
                        let jj = j as u64 + 1;
                        cells.push(Cell::Symbol(encode_pair(c, jj, v) as u32));
                        labels.push(Some((c, jj)));
                    }
                }
            }
        }
    }
    Ok(Pda {
        users: vu,
        packets: f_total,
        stars_per_column: (vu - b) * g,
        symbols: b * vu,
        cells,
        pair_labels: Some(labels),
    })
}

/// Exchange the roles of rows and symbols: a `(K, F, Z, S)` PDA becomes a
/// `(K, S, S - (F - Z), F)` PDA.
///
/// Conjugate row `s` holds, in column `k`, the (renumbered) source row at
/// which symbol `s` sits in column `k`, or a star if `s` is absent there.
/// Source rows without any symbol are skipped when renumbering.
pub fn conjugate(p: &Pda) -> Result<Pda> {
    require_verified(p)?;
    let (k, f, z, s) = p.declared();
    if z == 0 || z >= f {
        return Err(param(format!(
            "conjugate needs 0 < Z < F, got Z = {z}, F = {f}"
        )));
    }
    let mut rank = vec![0u32; f];
    let mut next = 0u32;
    for (row, r) in rank.iter_mut().enumerate() {
        if p.row(row).iter().any(|c| !c.is_star()) {
            next += 1;
            *r = next;
        }
    }
    let mut cells = vec![Cell::Star; s * k];
    for (sym, positions) in p.symbol_positions().iter().enumerate() {
        for &(row, col) in positions {
            cells[sym * k + col] = Cell::Symbol(rank[row]);
        }
    }
    Ok(Pda {
        users: k,
        packets: s,
        stars_per_column: s - (f - z),
        symbols: next as usize,
        cells,
        pair_labels: None,
    })
}

fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for t in i + 1..k {
            cur[t] = cur[t - 1] + 1;
        }
    }
}

/// The MN PDA: rows are the `t`-subsets of `[K]` and `(T, k)` is a star iff
/// `k` is in `T`, otherwise the symbol of the `(t+1)`-subset `T + {k}`.
/// Subsets are numbered in lexicographic order.
pub fn mn_pda(k: usize, t: usize) -> Result<Pda> {
    if t < 1 || t >= k {
        return Err(param(format!(
            "MN PDA needs 1 <= t < K, got K = {k}, t = {t}"
        )));
    }
    let f = binomial(k, t).filter(|&f| f.saturating_mul(k as u64) <= MAX_CELLS);
    let s = binomial(k, t + 1).filter(|&s| s <= MAX_CELLS);
    let (Some(f), Some(s)) = (f, s) else {
        return Err(param(format!("MN PDA for K = {k}, t = {t} is too large")));
    };
    let symbol_of: HashMap<Vec<usize>, u32> = combinations(k, t + 1)
        .into_iter()
        .enumerate()
        .map(|(i, c)| (c, i as u32 + 1))
        .collect();
    let rows = combinations(k, t)
        .into_iter()
        .map(|subset| {
            (0..k)
                .map(|user| {
                    if subset.contains(&user) {
                        Cell::Star
                    } else {
                        let mut bigger = subset.clone();
                        let at = bigger.partition_point(|&x| x < user);
                        bigger.insert(at, user);
                        Cell::Symbol(symbol_of[&bigger])
                    }
                })
                .collect()
        })
        .collect();
    let z = binomial(k - 1, t - 1).expect("smaller than F");
    Pda::new(k, f as usize, z as usize, s as usize, rows)
}

/// Modulus for an even user count: one virtual user is added.
pub fn pad_even_k(k: u64) -> Result<Modulus> {
    if k < 2 || k % 2 == 1 {
        return Err(param(format!("padding applies to even K >= 2, got {k}")));
    }
    Modulus::new(k + 1)
}

/// Exact scheme parameters of a verified PDA.
pub fn params(p: &Pda) -> Result<SchemeParams> {
    let report = require_verified(p)?;
    let mut profile = BTreeMap::new();
    for &n in &report.occurrences {
        *profile.entry(n).or_insert(0) += 1;
    }
    let (k, f, z, s) = p.declared();
    Ok(SchemeParams::new(
        k as u64, f as u64, z as u64, s as u64, profile,
    ))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::Rational;

    pub(crate) fn golden() -> Pda {
        let x = Cell::Star;
        let s = Cell::Symbol;
        Pda::new(
            4,
            4,
            2,
            4,
            vec![
                vec![x, x, s(1), s(4)],
                vec![s(1), x, x, s(2)],
                vec![s(3), s(2), x, x],
                vec![x, s(4), s(3), x],
            ],
        )
        .unwrap()
    }

    pub(crate) fn z7_rectangle() -> Nhslr {
        Nhslr::from_rows(
            Modulus::new(7).unwrap(),
            vec![vec![1, 2, 3, 4], vec![2, 1, 4, 6], vec![4, 5, 2, 1]],
        )
        .unwrap()
    }

    #[test]
    fn golden_array_verifies() {
        let r = verify_pda(&golden());
        assert!(r.pass, "{r:?}");
        assert_eq!(r.occurrences, vec![2, 2, 2, 2]);
    }

    #[test]
    fn all_star_grid_verifies() {
        let p = Pda::new(3, 2, 2, 0, vec![vec![Cell::Star; 3]; 2]).unwrap();
        assert!(verify_pda(&p).pass);
    }

    #[test]
    fn mutated_golden_array_fails_c1_and_c3() {
        let mut p = golden();
        p.set(0, 0, Cell::Symbol(2));
        let r = verify_pda(&p);
        assert!(!r.pass && !r.c1_ok && !r.c3_ok && r.c2_ok);
        assert_eq!(
            r.star_count_violations,
            vec![StarCountViolation {
                column: 1,
                stars: 1,
                expected: 2
            }]
        );
        assert!(r.c3_violations.contains(&C3Violation {
            symbol: 2,
            first: (1, 1),
            second: (3, 2),
            failure: C3Failure::CrossNotStar { row: 3, column: 1 },
        }));
    }

    #[test]
    fn symbol_outside_alphabet_is_reported() {
        let mut p = golden();
        p.set(0, 0, Cell::Symbol(9));
        let r = verify_pda(&p);
        assert!(!r.c2_ok);
        assert_eq!(
            r.out_of_alphabet,
            vec![CellRef {
                row: 1,
                column: 1,
                symbol: 9
            }]
        );
    }

    #[test]
    fn same_row_and_column_repeats() {
        let s = Cell::Symbol;
        let p = Pda::new(2, 2, 0, 1, vec![vec![s(1), s(1)], vec![s(1), Cell::Star]]).unwrap();
        let r = verify_pda(&p);
        let kinds: Vec<_> = r.c3_violations.iter().map(|v| v.failure.clone()).collect();
        assert!(kinds.contains(&C3Failure::SameRow));
        assert!(kinds.contains(&C3Failure::SameColumn));
    }

    #[test]
    fn shape_errors() {
        assert!(Pda::new(2, 3, 0, 0, vec![vec![Cell::Star; 2]; 2]).is_err());
        assert!(Pda::new(2, 1, 0, 0, vec![vec![Cell::Star; 3]]).is_err());
    }

    #[test]
    fn pair_encoding_is_a_bijection() {
        for v in (3..=35).step_by(2) {
            for b in 1..=16u64 {
                let mut seen = vec![false; (b * v) as usize + 1];
                for j in 1..=b {
                    for c in 0..v {
                        let s = encode_pair(c, j, v);
                        assert!((1..=b * v).contains(&s));
                        assert!(!std::mem::replace(&mut seen[s as usize], true));
                        assert_eq!(decode_pair(s, v), (c, j));
                    }
                }
            }
        }
    }

    #[test]
    fn z7_pda() {
        let p = pda_from_nhslr(&z7_rectangle()).unwrap();
        assert_eq!(p.declared(), (7, 21, 9, 28));
        let r = verify_pda(&p);
        assert!(r.pass);
        assert!(r.occurrences.iter().all(|&n| n == 3));
        let prm = params(&p).unwrap();
        assert_eq!(prm.memory_ratio, Rational::new(3, 7));
        assert_eq!(prm.load, Rational::new(4, 3));
        assert_eq!(prm.uniform_gain(), Some(3));
        // orbit 1 in the first square: (0, 1) carries (<0 + 1>, column 1)
        assert_eq!(p.pair_label(0, 1), Some((1, 1)));
        assert_eq!(p.get(0, 0), Cell::Star);
    }

    #[test]
    fn diagonal_pda_from_single_cell() {
        let d = Nhslr::from_rows(Modulus::new(3).unwrap(), vec![vec![0]]).unwrap();
        let p = pda_from_nhslr(&d).unwrap();
        assert_eq!(p.declared(), (3, 3, 2, 3));
        for f in 0..3 {
            for k in 0..3 {
                let want = if f == k {
                    Cell::Symbol(encode_pair(((f + k) % 3) as u64, 1, 3) as u32)
                } else {
                    Cell::Star
                };
                assert_eq!(p.get(f, k), want);
            }
        }
        assert!(verify_pda(&p).pass);
    }

    #[test]
    fn unverified_nhslr_is_refused() {
        let d = Nhslr::from_rows(Modulus::new(7).unwrap(), vec![vec![1], vec![1]]).unwrap();
        assert!(matches!(pda_from_nhslr(&d), Err(Error::NotVerified(_))));
    }

    #[test]
    fn conjugates() {
        let c = conjugate(&golden()).unwrap();
        assert_eq!(c.declared(), (4, 4, 2, 4));
        assert!(verify_pda(&c).pass);

        let p = pda_from_nhslr(&z7_rectangle()).unwrap();
        let c = conjugate(&p).unwrap();
        assert_eq!(c.declared(), (7, 28, 16, 21));
        assert!(verify_pda(&c).pass);
        let cc = conjugate(&c).unwrap();
        assert_eq!(cc.declared(), (7, 21, 9, 28));
        assert!(verify_pda(&cc).pass);
    }

    #[test]
    fn degenerate_conjugate_is_refused() {
        let p = Pda::new(3, 2, 2, 0, vec![vec![Cell::Star; 3]; 2]).unwrap();
        assert!(conjugate(&p).is_err());
    }

    #[test]
    fn mn_examples() {
        let p = mn_pda(4, 2).unwrap();
        assert_eq!(p.declared(), (4, 6, 3, 4));
        let prm = params(&p).unwrap();
        assert_eq!(prm.load, Rational::new(2, 3));
        assert_eq!(prm.memory_ratio, Rational::new(1, 2));

        let p = mn_pda(2, 1).unwrap();
        assert_eq!(p.declared(), (2, 2, 1, 1));
        assert!(verify_pda(&p).pass);

        let p = mn_pda(6, 2).unwrap();
        let r = verify_pda(&p);
        assert!(r.pass && r.occurrences.iter().all(|&n| n == 3));

        assert!(mn_pda(4, 0).is_err());
        assert!(mn_pda(4, 4).is_err());
    }

    #[test]
    fn even_padding() {
        assert_eq!(pad_even_k(32).unwrap().get(), 33);
        assert_eq!(pad_even_k(2).unwrap().get(), 3);
        assert_eq!(pad_even_k(128).unwrap().get(), 129);
        assert!(pad_even_k(7).is_err());
        assert!(pad_even_k(0).is_err());
    }

    #[test]
    fn params_examples() {
        let prm = params(&golden()).unwrap();
        assert_eq!(prm.memory_ratio, Rational::new(1, 2));
        assert_eq!(prm.load, Rational::from_integer(1));
        let mut bad = golden();
        bad.set(0, 0, Cell::Symbol(2));
        assert!(params(&bad).is_err());
    }

    #[test]
    fn canonical_relabel_is_stable() {
        let p = golden();
        let swapped = {
            let mut q = p.clone();
            for r in 0..4 {
                for c in 0..4 {
                    if let Cell::Symbol(s) = p.get(r, c) {
                        q.set(r, c, Cell::Symbol(5 - s));
                    }
                }
            }
            q
        };
        assert_ne!(p, swapped);
        assert_eq!(p.canonical_relabel(), swapped.canonical_relabel());
    }
}
