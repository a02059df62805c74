//! Integer-guarded n-th roots.
//!
//! Floors of `v^(1/n)` decide every closed-form parameter, and a float
//! estimate near a perfect power is easily off by one, so every estimate is
//! corrected with exact integer powers.

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Largest `q` with `q^n <= v`.
pub fn floor_nth_root(v: u64, n: u32) -> u64 {
    assert!(n >= 1, "root degree must be positive");
    if n == 1 || v < 2 {
        return v;
    }
    let fits = |q: u64| checked_pow(q, n).is_some_and(|p| p <= v);
    let mut q = (v as f64).powf(1.0 / n as f64).floor() as u64;
    while q > 0 && !fits(q) {
        q -= 1;
    }
    while fits(q + 1) {
        q += 1;
    }
    q
}

/// `floor(v^(1/n) - 1)`: the uniform part size of the closed-form optimizer.
pub fn floor_root_minus_one(v: u64, n: u32) -> u64 {
    floor_nth_root(v, n).saturating_sub(1)
}

/// `floor((v^(1/n) - 1) / 2)`.
pub fn floor_half_root_minus_one(v: u64, n: u32) -> u64 {
    floor_root_minus_one(v, n) / 2
}
