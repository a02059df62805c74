//! Closed-form parameters of coded caching schemes, the published
//! comparison tables and tradeoff series.
//!
//! Every calculator is generic over [`Scalar`]: with [`BigRational`] the
//! memory ratio and load are exact, with `f64` they are plotting values.
//! User counts and subpacketizations are always exact integers.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{param, Error, Result};
use crate::nhslr::AxbSpec;
use crate::roots::{checked_pow, floor_half_root_minus_one, floor_root_minus_one};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    /// Uniform `A X B` construction with closed-form `m`.
    Ours,
    /// `A X B` construction with explicit `m`.
    OursAxb,
    Mn,
    Wcwl,
    Wclc,
    Xxgl,
    Cwwc,
    Zcw,
    Ast,
    Ytcc,
    Cksm1,
    Cksm2,
    Wccls,
    Ask1,
    Ask2,
    Mr,
}

impl Scheme {
    pub const ALL: [Scheme; 16] = [
        Scheme::Ours,
        Scheme::OursAxb,
        Scheme::Mn,
        Scheme::Wcwl,
        Scheme::Wclc,
        Scheme::Xxgl,
        Scheme::Cwwc,
        Scheme::Zcw,
        Scheme::Ast,
        Scheme::Ytcc,
        Scheme::Cksm1,
        Scheme::Cksm2,
        Scheme::Wccls,
        Scheme::Ask1,
        Scheme::Ask2,
        Scheme::Mr,
    ];

    /// Display name used in tables.
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Ours | Scheme::OursAxb => "NHSLR",
            Scheme::Mn => "MN",
            Scheme::Wcwl => "WCWL",
            Scheme::Wclc => "WCLC",
            Scheme::Xxgl => "XXGL",
            Scheme::Cwwc => "CWWC",
            Scheme::Zcw => "ZCW",
            Scheme::Ast => "AST",
            Scheme::Ytcc => "YTCC",
            Scheme::Cksm1 => "CKSM 1",
            Scheme::Cksm2 => "CKSM 2",
            Scheme::Wccls => "WCCLS",
            Scheme::Ask1 => "ASK 1",
            Scheme::Ask2 => "ASK 2",
            Scheme::Mr => "MR",
        }
    }

    /// Identifier used in request strings such as `mn:85,2`.
    pub fn key(self) -> &'static str {
        match self {
            Scheme::Ours => "ours",
            Scheme::OursAxb => "ours-axb",
            Scheme::Mn => "mn",
            Scheme::Wcwl => "wcwl",
            Scheme::Wclc => "wclc",
            Scheme::Xxgl => "xxgl",
            Scheme::Cwwc => "cwwc",
            Scheme::Zcw => "zcw",
            Scheme::Ast => "ast",
            Scheme::Ytcc => "ytcc",
            Scheme::Cksm1 => "cksm1",
            Scheme::Cksm2 => "cksm2",
            Scheme::Wccls => "wccls",
            Scheme::Ask1 => "ask1",
            Scheme::Ask2 => "ask2",
            Scheme::Mr => "mr",
        }
    }

    pub fn param_names(self) -> &'static str {
        match self {
            Scheme::Ours | Scheme::Cwwc => "(v,n)",
            Scheme::OursAxb => "(v;m)",
            Scheme::Mn | Scheme::Wcwl | Scheme::Mr => "(K,t)",
            Scheme::Wclc => "(k,t,z,m)",
            Scheme::Xxgl => "(K)",
            Scheme::Zcw => "(m,w)",
            Scheme::Ast => "(r,k)",
            Scheme::Ytcc => "(H,a,b,r)",
            Scheme::Cksm1 | Scheme::Cksm2 => "(q,k,m,t)",
            Scheme::Wccls => "(q,m,w)",
            Scheme::Ask1 | Scheme::Ask2 => "(q)",
        }
    }

    fn arity(self) -> Option<usize> {
        match self {
            Scheme::OursAxb => None,
            Scheme::Xxgl | Scheme::Ask1 | Scheme::Ask2 => Some(1),
            Scheme::Ours | Scheme::Cwwc | Scheme::Mn | Scheme::Wcwl | Scheme::Mr => Some(2),
            Scheme::Zcw | Scheme::Ast => Some(2),
            Scheme::Wccls => Some(3),
            Scheme::Wclc | Scheme::Ytcc | Scheme::Cksm1 | Scheme::Cksm2 => Some(4),
        }
    }

    pub fn from_key(key: &str) -> Option<Scheme> {
        Scheme::ALL.into_iter().find(|s| s.key() == key)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One scheme instance: `(K, M/N, R, F)` and the parameters that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemePoint<T> {
    pub scheme: Scheme,
    pub parameters: Vec<u64>,
    pub users: BigUint,
    pub memory_ratio: T,
    pub load: T,
    pub subpacketization: BigUint,
}

impl<T: Scalar> SchemePoint<T> {
    /// Parameter label such as `(v,n)=(33,3)`.
    pub fn label(&self) -> String {
        let values = match self.scheme {
            Scheme::OursAxb => {
                let (v, m) = self.parameters.split_first().expect("v is always present");
                format!("{v};{}", join(m))
            }
            _ => join(&self.parameters),
        };
        format!("{}=({values})", self.scheme.param_names())
    }

    pub fn to_float(&self) -> SchemePoint<f64> {
        SchemePoint {
            scheme: self.scheme,
            parameters: self.parameters.clone(),
            users: self.users.clone(),
            memory_ratio: self.memory_ratio.to_f64(),
            load: self.load.to_f64(),
            subpacketization: self.subpacketization.clone(),
        }
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

const MAX_EXPONENT: u64 = 1 << 16;

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn pow(base: u64, e: u64) -> Result<BigUint> {
    if e > MAX_EXPONENT {
        return Err(param(format!("exponent {e} is too large")));
    }
    Ok(num_traits::pow(big(base), e as usize))
}

/// `C(n, k)`, exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * big(n - i) / big(i + 1);
    }
    acc
}

/// Gaussian binomial `[n k]_q`.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> Result<BigUint> {
    if k > n {
        return Ok(BigUint::zero());
    }
    if q < 2 {
        return Err(param("Gaussian binomial needs q >= 2"));
    }
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= pow(q, n - i)? - &one;
        den *= pow(q, i + 1)? - &one;
    }
    Ok(num / den)
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..)
        .take_while(|d: &u64| d.saturating_mul(*d) <= q)
        .find(|d| q.is_multiple_of(*d))
        .unwrap_or(q);
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    r == 1
}

fn require(cond: bool, scheme: Scheme, constraint: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(param(format!("{} requires {constraint}", scheme.name())))
    }
}

fn point<T: Scalar>(
    scheme: Scheme,
    parameters: Vec<u64>,
    users: BigUint,
    memory_ratio: T,
    load: T,
    subpacketization: BigUint,
) -> SchemePoint<T> {
    SchemePoint {
        scheme,
        parameters,
        users,
        memory_ratio,
        load,
        subpacketization,
    }
}

/// `(1 - a/b)` as a scalar, for `a <= b`.
fn one_minus<T: Scalar>(a: &BigUint, b: &BigUint) -> T {
    T::ratio(&(b - a), b)
}

/// The uniform construction: `m_i = floor(v^(1/n)) - 1`, `b = m^n`,
/// `K = v`, `F = 2^n v`, `M/N = 1 - b/v`, `R = b / 2^n`.
pub fn ours<T: Scalar>(v: u64, n: u32) -> Result<SchemePoint<T>> {
    let s = Scheme::Ours;
    require(v >= 3 && v % 2 == 1, s, "odd v >= 3")?;
    require(n >= 1, s, "n >= 1")?;
    let m = floor_root_minus_one(v, n);
    if m < 1 {
        return Err(Error::Infeasible(format!(
            "floor(v^(1/n)) - 1 = 0 for v = {v}, n = {n}"
        )));
    }
    let b = big(checked_pow(m, n).expect("m^n <= v"));
    let g = pow(2, n as u64)?;
    Ok(point(
        s,
        vec![v, n as u64],
        big(v),
        one_minus(&b, &big(v)),
        T::ratio(&b, &g),
        g * big(v),
    ))
}

/// The general construction for an explicit `m`: `g = 2^n`, `b = prod m_i`,
/// `K = v`, `F = g v`, `M/N = 1 - b/v`, `R = b / g`.
pub fn ours_axb<T: Scalar>(spec: &AxbSpec) -> Result<SchemePoint<T>> {
    let v = spec.modulus()?.get();
    let b: BigUint = spec.m().iter().map(|&m| big(m)).product();
    let g = pow(2, spec.n() as u64)?;
    let mut parameters = vec![v];
    parameters.extend_from_slice(spec.m());
    Ok(point(
        Scheme::OursAxb,
        parameters,
        big(v),
        one_minus(&b, &big(v)),
        T::ratio(&b, &g),
        g * big(v),
    ))
}

pub fn mn<T: Scalar>(k: u64, t: u64) -> Result<SchemePoint<T>> {
    require(1 <= t && t < k, Scheme::Mn, "1 <= t < K")?;
    Ok(point(
        Scheme::Mn,
        vec![k, t],
        big(k),
        T::ratio(&big(t), &big(k)),
        T::ratio(&big(k - t), &big(t + 1)),
        binomial(k, t),
    ))
}

/// Three cases, tried in order: `(K - t + 1) | K` or `K - t = 1`; then
/// `K mod (K - t + 1) = K - t`; otherwise.
pub fn wcwl<T: Scalar>(k: u64, t: u64) -> Result<SchemePoint<T>> {
    require(1 <= t && t < k, Scheme::Wcwl, "1 <= t < K")?;
    let d = k - t + 1;
    let h = k / d;
    let (num, den, f) = if k.is_multiple_of(d) || k - t == 1 {
        (big(k - t) * big(k - t + 1), big(2 * k), big(k))
    } else if k % d == k - t {
        (big(k - t), big(2 * h + 1), big(2 * h + 1) * big(k))
    } else {
        (big(k - t), big(2 * h), big(2 * h) * big(k))
    };
    Ok(point(
        Scheme::Wcwl,
        vec![k, t],
        big(k),
        T::ratio(&big(t), &big(k)),
        T::ratio(&num, &den),
        f,
    ))
}

pub fn wclc<T: Scalar>(k: u64, t: u64, z: u64, m: u64) -> Result<SchemePoint<T>> {
    let s = Scheme::Wclc;
    require(1 <= t && t < k, s, "1 <= t < k")?;
    require(1 <= z && z <= m, s, "1 <= z <= m")?;
    let a = (k - 1) / (k - t);
    let kz = pow(k, z)?;
    let ktz = pow(k - t, z)?;
    Ok(point(
        s,
        vec![k, t, z, m],
        binomial(m, z) * &kz,
        one_minus(&ktz, &kz),
        T::ratio(&ktz, &pow(a, z)?),
        pow(a, z)? * pow(k, m - 1)?,
    ))
}

pub fn xxgl<T: Scalar>(k: u64) -> Result<SchemePoint<T>> {
    require(k >= 2, Scheme::Xxgl, "K >= 2")?;
    Ok(point(
        Scheme::Xxgl,
        vec![k],
        big(k),
        T::ratio(&big(k - 2), &big(k)),
        T::ratio(&big(k - 1), &big(k)),
        big(k),
    ))
}

/// `K = F = v` with `h = floor((v^(1/n) - 1) / 2)`: `M/N = 1 - 2^n h^n / v`,
/// `R = h^n`.
pub fn cwwc<T: Scalar>(v: u64, n: u32) -> Result<SchemePoint<T>> {
    let s = Scheme::Cwwc;
    require(v >= 3 && v % 2 == 1, s, "q^n odd (odd v >= 3)")?;
    require(n >= 1, s, "n >= 1")?;
    let h = floor_half_root_minus_one(v, n);
    if h < 1 {
        return Err(Error::Infeasible(format!(
            "floor((v^(1/n) - 1) / 2) = 0 for v = {v}, n = {n}"
        )));
    }
    let hn = pow(h, n as u64)?;
    let used = pow(2, n as u64)? * &hn;
    Ok(point(
        s,
        vec![v, n as u64],
        big(v),
        one_minus(&used, &big(v)),
        T::from_big(&hn),
        big(v),
    ))
}

pub fn zcw<T: Scalar>(m: u64, w: u64) -> Result<SchemePoint<T>> {
    let s = Scheme::Zcw;
    require(w < m, s, "w < m")?;
    let sigma: BigUint = (0..=w).map(|i| binomial(m, i)).sum();
    let c = binomial(m, w);
    Ok(point(
        s,
        vec![m, w],
        pow(2, m)?,
        one_minus(&c, &sigma),
        T::ratio(&(&c * pow(2, m - w)?), &sigma),
        sigma,
    ))
}

pub fn ast<T: Scalar>(r: u64, k: u64) -> Result<SchemePoint<T>> {
    let s = Scheme::Ast;
    require(r >= 1 && k >= 1, s, "r, k >= 1")?;
    let two_r = pow(2, r)?;
    let users = &two_r * big(k);
    // 1 - (r+1)/2^r + r/(2^r k) = (2^r k - (r+1) k + r) / (2^r k)
    let num = &users + big(r) - big(r + 1) * big(k);
    Ok(point(
        s,
        vec![r, k],
        users.clone(),
        T::ratio(&num, &users),
        T::ratio(&(big(k) * big(r + 1) - big(r)), &two_r),
        users,
    ))
}

pub fn ytcc<T: Scalar>(h: u64, a: u64, b: u64, r: u64) -> Result<SchemePoint<T>> {
    let s = Scheme::Ytcc;
    require(r < a && a < h, s, "r < a < H")?;
    require(r < b && b < h, s, "r < b < H")?;
    require(a + b <= h + r, s, "a + b <= H + r")?;
    let f = binomial(h, b);
    let kept = binomial(a, r) * binomial(h - a, b - r);
    let span = a + b - 2 * r;
    let factor = binomial(h - span, a - r).min(binomial(span, a - r));
    Ok(point(
        s,
        vec![h, a, b, r],
        binomial(h, a),
        one_minus(&kept, &f),
        T::ratio(&(binomial(h, span) * factor), &f),
        f,
    ))
}

fn q_int(k: u64, q: u64) -> Result<BigUint> {
    gaussian_binomial(k, 1, q)
}

fn to_scalar<T: Scalar>(x: &BigRational) -> T {
    let num = x.numer().to_biguint().expect("non-negative");
    let den = x.denom().to_biguint().expect("positive");
    T::ratio(&num, &den)
}

fn exact_integer(x: BigRational, what: &str) -> Result<BigUint> {
    if !x.is_integer() {
        return Err(Error::Infeasible(format!("{what} is not an integer: {x}")));
    }
    Ok(x.to_integer().to_biguint().expect("non-negative"))
}

fn factorial(n: u64) -> BigUint {
    (1..=n).map(big).product()
}

fn rat(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn cksm1<T: Scalar>(q: u64, k: u64, m: u64, t: u64) -> Result<SchemePoint<T>> {
    let s = Scheme::Cksm1;
    require(is_prime_power(q), s, "q a prime power")?;
    require(
        m >= 1 && t >= 1 && m + t <= k,
        s,
        "m, t >= 1 and m + t <= k",
    )?;
    let prod = |count: u64, top: u64| -> Result<BigUint> {
        (0..count).map(|i| q_int(top - i, q)).product()
    };
    let users = rat(pow(q, t * (t - 1) / 2)? * prod(t, k)?) / rat(factorial(t));
    let f = rat(pow(q, m * (m - 1) / 2)? * prod(m, k)?) / rat(factorial(m));
    let kept = rat(pow(q, m * t)? * prod(m, k - t)?) / rat(prod(m, k)?);
    let load = rat(factorial(m) * pow(q, m * t)? * pow(q, t * (t - 1) / 2)? * prod(t, k - m)?)
        / rat(factorial(m + t));
    Ok(point(
        s,
        vec![q, k, m, t],
        exact_integer(users, "CKSM 1 user count")?,
        to_scalar(&(BigRational::one() - kept)),
        to_scalar(&load),
        exact_integer(f, "CKSM 1 subpacketization")?,
    ))
}

pub fn cksm2<T: Scalar>(q: u64, k: u64, m: u64, t: u64) -> Result<SchemePoint<T>> {
    let s = Scheme::Cksm2;
    require(q >= 2, s, "q >= 2")?;
    require(
        m >= 1 && t >= 1 && m + t <= k,
        s,
        "m, t >= 1 and m + t <= k",
    )?;
    let f = gaussian_binomial(k, m + t, q)?;
    Ok(point(
        s,
        vec![q, k, m, t],
        gaussian_binomial(k, t, q)?,
        one_minus(&gaussian_binomial(k - t, m, q)?, &f),
        T::ratio(&gaussian_binomial(k, m, q)?, &f),
        f,
    ))
}

pub fn wccls<T: Scalar>(q: u64, m: u64, w: u64) -> Result<SchemePoint<T>> {
    let s = Scheme::Wccls;
    require(q >= 2, s, "q >= 2")?;
    require(1 <= w && w <= m, s, "1 <= w <= m")?;
    let qm = pow(q, m)?;
    let sent = binomial(m, w) * pow(q - 1, w)?;
    Ok(point(
        s,
        vec![q, m, w],
        qm.clone(),
        one_minus(&sent, &qm),
        T::ratio(&sent, &pow(q, m - w)?),
        qm,
    ))
}

pub fn ask1<T: Scalar>(q: u64) -> Result<SchemePoint<T>> {
    require(is_prime_power(q), Scheme::Ask1, "q a prime power")?;
    let k = big(q * q + q + 1);
    Ok(point(
        Scheme::Ask1,
        vec![q],
        k.clone(),
        T::ratio(&big(q * q), &k),
        T::one(),
        k,
    ))
}

pub fn ask2<T: Scalar>(q: u64) -> Result<SchemePoint<T>> {
    require(q >= 2, Scheme::Ask2, "q >= 2")?;
    Ok(point(
        Scheme::Ask2,
        vec![q],
        big(q * q),
        T::ratio(&big(q - 1), &big(q)),
        T::ratio(&big(q), &big(q + 1)),
        big(q * q + q),
    ))
}

pub fn mr<T: Scalar>(k: u64, t: u64) -> Result<SchemePoint<T>> {
    require(1 <= t && t < k, Scheme::Mr, "1 <= t < K")?;
    let d = k - t + 1;
    let den = 2 + t / d + (t - 1) / d;
    let sent = (big(k) * big(k - t)).div_ceil(&big(den));
    Ok(point(
        Scheme::Mr,
        vec![k, t],
        big(k),
        T::ratio(&big(t), &big(k)),
        T::ratio(&sent, &big(k)),
        big(k),
    ))
}

/// A scheme and its parameters, written `key:p1,p2,...`; `ours-axb` takes
/// `v` followed by the `m` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeRequest {
    pub scheme: Scheme,
    pub params: Vec<u64>,
}

impl SchemeRequest {
    pub fn new(scheme: Scheme, params: &[u64]) -> Self {
        SchemeRequest {
            scheme,
            params: params.to_vec(),
        }
    }

    pub fn evaluate<T: Scalar>(&self) -> Result<SchemePoint<T>> {
        let p = &self.params;
        match self.scheme.arity() {
            Some(n) if p.len() != n => {
                return Err(param(format!(
                    "{} takes {n} parameters {}, got {}",
                    self.scheme.key(),
                    self.scheme.param_names(),
                    p.len()
                )))
            }
            None if p.len() < 2 => {
                return Err(param("ours-axb takes v followed by m_1, ..., m_n"));
            }
            _ => {}
        }
        let small = |x: u64| u32::try_from(x).map_err(|_| param(format!("{x} is too large")));
        match self.scheme {
            Scheme::Ours => ours(p[0], small(p[1])?),
            Scheme::OursAxb => {
                let spec =
                    AxbSpec::new(p[1..].to_vec(), crate::nhslr::ModulusChoice::Explicit(p[0]))?;
                ours_axb(&spec)
            }
            Scheme::Mn => mn(p[0], p[1]),
            Scheme::Wcwl => wcwl(p[0], p[1]),
            Scheme::Wclc => wclc(p[0], p[1], p[2], p[3]),
            Scheme::Xxgl => xxgl(p[0]),
            Scheme::Cwwc => cwwc(p[0], small(p[1])?),
            Scheme::Zcw => zcw(p[0], p[1]),
            Scheme::Ast => ast(p[0], p[1]),
            Scheme::Ytcc => ytcc(p[0], p[1], p[2], p[3]),
            Scheme::Cksm1 => cksm1(p[0], p[1], p[2], p[3]),
            Scheme::Cksm2 => cksm2(p[0], p[1], p[2], p[3]),
            Scheme::Wccls => wccls(p[0], p[1], p[2]),
            Scheme::Ask1 => ask1(p[0]),
            Scheme::Ask2 => ask2(p[0]),
            Scheme::Mr => mr(p[0], p[1]),
        }
    }
}

impl FromStr for SchemeRequest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (key, rest) = s
            .split_once(':')
            .ok_or_else(|| param(format!("expected key:p1,p2,..., got {s:?}")))?;
        let scheme =
            Scheme::from_key(key.trim()).ok_or_else(|| param(format!("unknown scheme {key:?}")))?;
        let params = rest
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u64>()
                    .map_err(|_| param(format!("bad parameter {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SchemeRequest { scheme, params })
    }
}

impl fmt::Display for SchemeRequest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.scheme.key(), join(&self.params))
    }
}

/// Evaluate every request; the first failure is reported with its
/// 1-based position.
pub fn table<T: Scalar>(requests: &[SchemeRequest]) -> Result<Vec<SchemePoint<T>>> {
    requests
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.evaluate()
                .map_err(|e| param(format!("row {} ({r}): {e}", i + 1)))
        })
        .collect()
}

pub const TABLE_HEADER: [&str; 8] = [
    "K",
    "M/N",
    "M/N_exact",
    "Scheme",
    "Parameters",
    "Load",
    "Load_exact",
    "Subpacketization",
];

/// Table CSV: decimals rounded to four places next to exact values.
pub fn table_csv<T: Scalar>(points: &[SchemePoint<T>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TABLE_HEADER)?;
    for p in points {
        w.write_record([
            p.users.to_string(),
            format!("{:.4}", p.memory_ratio.to_f64()),
            p.memory_ratio.exact_string(),
            p.scheme.name().to_string(),
            p.label(),
            format!("{:.4}", p.load.to_f64()),
            p.load.exact_string(),
            p.subpacketization.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceTable {
    Table2,
    Table3,
}

impl FromStr for ReferenceTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table2" => Ok(ReferenceTable::Table2),
            "table3" => Ok(ReferenceTable::Table3),
            _ => Err(param(format!(
                "unknown table {s:?}; expected table2 or table3"
            ))),
        }
    }
}

/// A published row: the request and the printed `K, M/N, R, F` cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintedRow {
    pub request: SchemeRequest,
    pub users: &'static str,
    pub memory_ratio: &'static str,
    pub load: &'static str,
    pub subpacketization: &'static str,
}

fn row(scheme: Scheme, params: &[u64], cells: [&'static str; 4]) -> PrintedRow {
    PrintedRow {
        request: SchemeRequest::new(scheme, params),
        users: cells[0],
        memory_ratio: cells[1],
        load: cells[2],
        subpacketization: cells[3],
    }
}

/// Rows in printed order.
pub fn reference_rows(t: ReferenceTable) -> Vec<PrintedRow> {
    use Scheme::*;
    match t {
        ReferenceTable::Table2 => vec![
            row(Zcw, &[5, 2], ["32", "0.6875", "1.25", "32"]),
            row(Ours, &[33, 3], ["33", "0.7576", "1", "264"]),
            row(Zcw, &[7, 2], ["128", "0.836", "2.625", "128"]),
            row(Ours, &[129, 4], ["129", "0.876", "1", "2064"]),
            row(Zcw, &[8, 2], ["256", "0.8906", "2.41", "256"]),
            row(Ours, &[257, 5], ["257", "0.8755", "1", "8224"]),
            row(Zcw, &[9, 3], ["512", "0.8359", "5.25", "512"]),
            row(Ours, &[513, 4], ["513", "0.8421", "5.0625", "8208"]),
            row(Zcw, &[9, 2], ["512", "0.9297", "2.04", "512"]),
            row(Ours, &[513, 5], ["513", "0.9376", "1", "16416"]),
            row(Ast, &[2, 13], ["52", "0.28846", "9.25", "52"]),
            row(Ours, &[49, 2], ["49", "0.26531", "9", "196"]),
            row(Ast, &[2, 333], ["1332", "0.2515", "249.25", "1332"]),
            row(Ours, &[1331, 3], ["1331", "0.2487", "125", "10648"]),
            row(Ast, &[2, 548], ["2192", "0.2509", "410.5", "2192"]),
            row(Ours, &[2199, 3], ["2199", "0.2142", "216", "17592"]),
            row(Ast, &[3, 300], ["2400", "0.50125", "149.625", "2400"]),
            row(Ours, &[2401, 4], ["2401", "0.460", "81", "38416"]),
            row(Cwwc, &[341, 3], ["341", "0.8123", "8", "341"]),
            row(Ours, &[341, 4], ["341", "0.7625", "5.0625", "5456"]),
            row(Cwwc, &[713, 3], ["713", "0.697", "27", "713"]),
            row(Ours, &[713, 4], ["713", "0.641", "16", "11408"]),
            row(Cwwc, &[1111, 4], ["1111", "0.7696", "16", "1111"]),
            row(Ours, &[1111, 5], ["1111", "0.7813", "7.5938", "35552"]),
        ],
        ReferenceTable::Table3 => vec![
            row(Ytcc, &[22, 1, 8, 0], ["22", "0.364", "1.556", "319770"]),
            row(Ours, &[25, 2], ["25", "0.36", "4", "100"]),
            row(Ytcc, &[17, 2, 7, 1], ["136", "0.485", "7", "19448"]),
            row(Cksm2, &[2, 7, 6, 1], ["127", "0.496", "9.143", "3.56E+09"]),
            row(Ours, &[125, 3], ["125", "0.488", "8", "1000"]),
            row(Ytcc, &[26, 2, 5, 0], ["325", "0.354", "10", "65780"]),
            row(Ours, &[343, 3], ["343", "0.370", "27", "2744"]),
            row(
                Ytcc,
                &[22, 2, 12, 0],
                ["231", "0.805", "0.4945055", "646646"],
            ),
            row(Cksm2, &[2, 8, 4, 1], ["255", "0.8784", "2.0667", "97155"]),
            row(Ours, &[243, 5], ["243", "0.8683", "1", "7776"]),
            row(Cksm2, &[2, 9, 5, 1], ["511", "0.8767", "4.2", "788035"]),
            row(Ours, &[511, 4], ["511", "0.8415", "5.0625", "8176"]),
            row(Cksm1, &[4, 4, 3, 1], ["85", "0.247", "16", "95200"]),
            row(Ours, &[85, 2], ["85", "0.247", "16", "340"]),
            row(Cksm1, &[5, 4, 3, 1], ["156", "0.1987", "31.25", "604500"]),
            row(Ours, &[151, 2], ["151", "0.1987", "30.25", "604"]),
            row(Cksm1, &[5, 4, 3, 1], ["156", "0.1987", "31.25", "604500"]),
            row(Ours, &[169, 2], ["169", "0.1479", "36", "676"]),
            row(
                Cksm1,
                &[2, 8, 5, 1],
                ["255", "0.12157", "37.333", "8.10E+09"],
            ),
            row(Ours, &[225, 2], ["225", "0.1289", "49", "900"]),
            row(Cksm1, &[3, 6, 5, 1], ["364", "0.332", "40.5", "4.51E+10"]),
            row(Ours, &[343, 3], ["343", "0.370", "27", "2744"]),
        ],
    }
}

/// Tolerance for printed plain decimals.
pub const DECIMAL_TOLERANCE: f64 = 5e-4;

/// Does a printed cell agree with an exact value?
///
/// Integers must match exactly, plain decimals within
/// [`DECIMAL_TOLERANCE`], scientific notation within half a unit of the
/// last printed mantissa digit.
pub fn cell_matches(printed: &str, exact: &BigRational) -> bool {
    let value = ToPrimitive::to_f64(exact).unwrap_or(f64::NAN);
    if let Some((mantissa, exp)) = printed.split_once(['E', 'e']) {
        let (Ok(m), Ok(e)) = (mantissa.parse::<f64>(), exp.parse::<i32>()) else {
            return false;
        };
        let digits = mantissa.split_once('.').map_or(0, |(_, d)| d.len()) as i32;
        let tol = 0.5 * 10f64.powi(e - digits);
        (value - m * 10f64.powi(e)).abs() <= tol
    } else if printed.contains('.') {
        printed
            .parse::<f64>()
            .is_ok_and(|p| (value - p).abs() <= DECIMAL_TOLERANCE)
    } else {
        printed
            .parse::<BigInt>()
            .is_ok_and(|p| exact == &BigRational::from_integer(p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellMismatch {
    pub column: &'static str,
    pub printed: &'static str,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowCheck {
    pub row: PrintedRow,
    pub point: SchemePoint<BigRational>,
    pub mismatches: Vec<CellMismatch>,
}

impl RowCheck {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn check_row(row: &PrintedRow) -> Result<RowCheck> {
    let point: SchemePoint<BigRational> = row.request.evaluate()?;
    let int = |x: &BigUint| rat(x.clone());
    let cells = [
        ("K", row.users, int(&point.users)),
        ("M/N", row.memory_ratio, point.memory_ratio.clone()),
        ("Load", row.load, point.load.clone()),
        (
            "Subpacketization",
            row.subpacketization,
            int(&point.subpacketization),
        ),
    ];
    let mismatches = cells
        .into_iter()
        .filter(|(_, printed, exact)| !cell_matches(printed, exact))
        .map(|(column, printed, exact)| CellMismatch {
            column,
            printed,
            computed: format!("{} ({:.6})", exact.exact_string(), Scalar::to_f64(&exact)),
        })
        .collect();
    Ok(RowCheck {
        row: row.clone(),
        point,
        mismatches,
    })
}

pub fn check_table(t: ReferenceTable) -> Result<Vec<RowCheck>> {
    reference_rows(t).iter().map(check_row).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Subpacketization,
    Load,
}

/// A tradeoff plot: schemes swept at a fixed user count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FigureSpec {
    pub users: u64,
    pub metric: Metric,
    pub schemes: &'static [Scheme],
}

/// Figures 4 to 9 in document order: `K = 75`, `343`, `85`, each first with
/// subpacketization and then with load on the vertical axis.
pub fn figure(number: u32) -> Result<FigureSpec> {
    const LINEAR: &[Scheme] = &[Scheme::Ours, Scheme::Cwwc, Scheme::Wcwl];
    const EXPONENTIAL: &[Scheme] = &[Scheme::Ours, Scheme::Mn, Scheme::Wclc];
    let (users, schemes) = match number {
        4 | 5 => (75, LINEAR),
        6 | 7 => (343, LINEAR),
        8 | 9 => (85, EXPONENTIAL),
        _ => {
            return Err(param(format!(
                "figure {number} has no data series; use 4 to 9"
            )))
        }
    };
    let metric = if number.is_multiple_of(2) {
        Metric::Subpacketization
    } else {
        Metric::Load
    };
    Ok(FigureSpec {
        users,
        metric,
        schemes,
    })
}

/// Every feasible instance of `scheme` with exactly `k` users, in parameter
/// order.
///
/// `ours` and `cwwc` sweep `n`; `mn`, `wcwl` and `mr` sweep `t`; `wclc`
/// takes `z = 1`, every factorisation `K = m k` with `k >= 2` and every `t`.
pub fn sweep<T: Scalar>(scheme: Scheme, k: u64) -> Result<Vec<SchemePoint<T>>> {
    let mut out = Vec::new();
    match scheme {
        Scheme::Ours | Scheme::Cwwc => {
            for n in 1..64 {
                let p = if scheme == Scheme::Ours {
                    ours(k, n)
                } else {
                    cwwc(k, n)
                };
                match p {
                    Ok(p) => out.push(p),
                    Err(Error::Infeasible(_)) => break,
                    Err(e) => return Err(e),
                }
            }
        }
        Scheme::Mn | Scheme::Wcwl | Scheme::Mr => {
            for t in 1..k {
                out.push(SchemeRequest::new(scheme, &[k, t]).evaluate()?);
            }
        }
        Scheme::Wclc => {
            for m in (1..=k).filter(|m| k.is_multiple_of(*m)) {
                let kk = k / m;
                for t in 1..kk {
                    out.push(wclc(kk, t, 1, m)?);
                }
            }
        }
        _ => return Err(param(format!("no user-count sweep for {}", scheme.name()))),
    }
    Ok(out)
}

/// Series CSV with columns `memory_ratio,value,scheme`.
pub fn figure_csv(spec: &FigureSpec) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["memory_ratio", "value", "scheme"])?;
    for &scheme in spec.schemes {
        for p in sweep::<f64>(scheme, spec.users)? {
            let value = match spec.metric {
                Metric::Load => p.load,
                Metric::Subpacketization => p.subpacketization.to_f64().unwrap_or(f64::INFINITY),
            };
            w.write_record([
                format!("{}", p.memory_ratio),
                format!("{value}"),
                scheme.name().to_string(),
            ])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
