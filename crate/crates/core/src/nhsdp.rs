//! Non-half-sum disjoint packings and their cyclic-shift conversion into
//! NHSLRs.

use serde::Serialize;

use crate::error::{malformed, Error, Result};
use crate::nhslr::Nhslr;
use crate::znum::Modulus;

/// `z` pairwise-disjoint `g`-subsets of `Z_v`. Each block is stored sorted
/// ascending; block order is kept as given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nhsdp {
    modulus: Modulus,
    block_size: usize,
    blocks: Vec<Vec<u64>>,
}

impl Nhsdp {
    pub fn new(modulus: Modulus, blocks: Vec<Vec<u64>>) -> Result<Self> {
        let Some(first) = blocks.first() else {
            return Err(malformed("NHSDP", "no blocks"));
        };
        let g = first.len();
        if g == 0 {
            return Err(malformed("NHSDP", "empty block"));
        }
        let mut sorted = Vec::with_capacity(blocks.len());
        for (k, mut block) in blocks.into_iter().enumerate() {
            if block.len() != g {
                return Err(malformed(
                    "NHSDP",
                    format!("block {} has {} entries, expected {g}", k + 1, block.len()),
                ));
            }
            if let Some(x) = block.iter().find(|&&x| x >= modulus.get()) {
                return Err(malformed(
                    "NHSDP",
                    format!("block {} holds {x}, not a residue mod {modulus}", k + 1),
                ));
            }
            block.sort_unstable();
            if block.windows(2).any(|w| w[0] == w[1]) {
                return Err(malformed(
                    "NHSDP",
                    format!("block {} repeats a residue", k + 1),
                ));
            }
            sorted.push(block);
        }
        Ok(Nhsdp {
            modulus,
            block_size: g,
            blocks: sorted,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// `g`.
    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn blocks(&self) -> &[Vec<u64>] {
        &self.blocks
    }
}

/// Two blocks share `value`. Block indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct OverlapViolation {
    pub blocks: (usize, usize),
    pub value: u64,
}

/// The half-sum of `pair` (drawn from block `block`) lies in `found_in_block`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PackingHalfSumViolation {
    pub block: usize,
    pub pair: (u64, u64),
    pub half_sum: u64,
    pub found_in_block: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NhsdpReport {
    pub pass: bool,
    pub disjoint_ok: bool,
    pub half_sum_ok: bool,
    pub overlaps: Vec<OverlapViolation>,
    pub half_sum_violations: Vec<PackingHalfSumViolation>,
}

pub fn verify_nhsdp(p: &Nhsdp) -> NhsdpReport {
    let v = p.modulus.get() as usize;
    // owners[x] lists every block containing x
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); v];
    for (k, block) in p.blocks.iter().enumerate() {
        for &x in block {
            owners[x as usize].push(k);
        }
    }

    let mut overlaps = Vec::new();
    for (x, own) in owners.iter().enumerate() {
        for (a, &ka) in own.iter().enumerate() {
            for &kb in &own[a + 1..] {
                overlaps.push(OverlapViolation {
                    blocks: (ka + 1, kb + 1),
                    value: x as u64,
                });
            }
        }
    }
    overlaps.sort();

    let mut half = Vec::new();
    for (k, block) in p.blocks.iter().enumerate() {
        for (a, &x) in block.iter().enumerate() {
            for &y in &block[a + 1..] {
                let h = p.modulus.half_sum_raw(x, y);
                for &owner in &owners[h as usize] {
                    half.push(PackingHalfSumViolation {
                        block: k + 1,
                        pair: (x, y),
                        half_sum: h,
                        found_in_block: owner + 1,
                    });
                }
            }
        }
    }

    let disjoint_ok = overlaps.is_empty();
    let half_sum_ok = half.is_empty();
    NhsdpReport {
        pass: disjoint_ok && half_sum_ok,
        disjoint_ok,
        half_sum_ok,
        overlaps,
        half_sum_violations: half,
    }
}

/// Expand every block into its `g` cyclic shifts and concatenate the
/// resulting columns into a `g x gz` NHSLR.
///
/// Shift `k` of block `(d_0, ..., d_{g-1})` is the column whose entry `i` is
/// `d_{(i + k) mod g}`. Reordering blocks only permutes columns.
pub fn nhsdp_to_nhslr(p: &Nhsdp) -> Result<Nhslr> {
    if !verify_nhsdp(p).pass {
        return Err(Error::NotVerified("NHSDP"));
    }
    let g = p.block_size;
    let rows = (0..g)
        .map(|i| {
            p.blocks
                .iter()
                .flat_map(|block| (0..g).map(move |k| block[(i + k) % g]))
                .collect()
        })
        .collect();
    Nhslr::from_rows(p.modulus, rows)
}

/// Every verified NHSDP over `Z_v` with `z` blocks of size `g`, blocks in
/// lexicographic order. Exponential; intended for small exhaustive checks.
pub fn enumerate_nhsdps(v: Modulus, g: usize, z: usize) -> Vec<Nhsdp> {
    let n = v.get() as usize;
    if g == 0 || z == 0 || g * z > n {
        return Vec::new();
    }
    // candidate blocks that satisfy the half-sum condition on their own
    let mut candidates = Vec::new();
    let mut cur = Vec::with_capacity(g);
    subsets(n, g, 0, &mut cur, &mut |s| {
        let own_ok = s.iter().enumerate().all(|(a, &x)| {
            s[a + 1..]
                .iter()
                .all(|&y| !s.contains(&v.half_sum_raw(x, y)))
        });
        if own_ok {
            candidates.push(s.to_vec());
        }
    });

    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(z);
    pick_blocks(v, &candidates, z, 0, &mut chosen, &mut out);
    out
}

fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<u64>, f: &mut dyn FnMut(&[u64])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for x in start..n {
        cur.push(x as u64);
        subsets(n, k, x + 1, cur, f);
        cur.pop();
    }
}

fn pick_blocks(
    v: Modulus,
    candidates: &[Vec<u64>],
    z: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Nhsdp>,
) {
    if chosen.len() == z {
        let blocks = chosen.iter().map(|&c| candidates[c].clone()).collect();
        let p = Nhsdp::new(v, blocks).expect("candidates are well formed");
        if verify_nhsdp(&p).pass {
            out.push(p);
        }
        return;
    }
    for c in start..candidates.len() {
        let disjoint = chosen
            .iter()
            .all(|&o| candidates[o].iter().all(|x| !candidates[c].contains(x)));
        if disjoint {
            chosen.push(c);
            pick_blocks(v, candidates, z, c + 1, chosen, out);
            chosen.pop();
        }
    }
}
