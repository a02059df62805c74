//! Byte-level execution of the caching scheme a PDA defines.
//!
//! Placement: user `k` caches packet `j` of every file iff cell `(j, k)` is
//! a star. Delivery: one XOR multicast per symbol `s`, the XOR over all
//! cells `(j, k)` holding `s` of packet `j` of the file user `k` requested.
//! Decoding: a user strips the packets it has cached out of each message.
//!
//! The low-level operations accept any well-shaped PDA so that invalid
//! arrays can be executed; [`simulate`] is the verified entry point.

use std::collections::HashMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::pda::{verify_pda, Cell, Pda};
use crate::Rational;

/// Identifier of the packet content generator: ChaCha8 seeded through
/// `SeedableRng::seed_from_u64`, bytes drawn file by file, packet by packet.
pub const GENERATOR_ID: &str = "chacha8-u64seed-v1";
pub const DEFAULT_PACKET_BYTES: usize = 64;
pub const DEFAULT_EXHAUSTIVE_BUDGET: u128 = 1_000_000;
const MAX_LIBRARY_BYTES: usize = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileLibrary {
    files: usize,
    packets: usize,
    packet_bytes: usize,
    seed: u64,
    data: Vec<u8>,
}

impl FileLibrary {
    pub fn generate(files: usize, packets: usize, packet_bytes: usize, seed: u64) -> Result<Self> {
        if files == 0 || packets == 0 || packet_bytes == 0 {
            return Err(param("N, F and packet size must all be positive"));
        }
        let len = files
            .checked_mul(packets)
            .and_then(|x| x.checked_mul(packet_bytes))
            .filter(|&x| x <= MAX_LIBRARY_BYTES)
            .ok_or_else(|| param("file library exceeds the size limit"))?;
        let mut data = vec![0u8; len];
        ChaCha8Rng::seed_from_u64(seed).fill_bytes(&mut data);
        Ok(FileLibrary {
            files,
            packets,
            packet_bytes,
            seed,
            data,
        })
    }

    /// `N`.
    pub fn files(&self) -> usize {
        self.files
    }

    /// `F`.
    pub fn packets(&self) -> usize {
        self.packets
    }

    pub fn packet_bytes(&self) -> usize {
        self.packet_bytes
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Packet `j` of file `n`, both 0-based.
    pub fn packet(&self, n: usize, j: usize) -> &[u8] {
        let start = (n * self.packets + j) * self.packet_bytes;
        &self.data[start..start + self.packet_bytes]
    }

    pub fn file(&self, n: usize) -> &[u8] {
        let size = self.packets * self.packet_bytes;
        &self.data[n * size..(n + 1) * size]
    }
}

/// Requested file per user, 0-based internally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DemandVector(Vec<usize>);

impl DemandVector {
    pub fn new(d: Vec<usize>, files: usize) -> Result<Self> {
        if let Some(&bad) = d.iter().find(|&&n| n >= files) {
            return Err(param(format!(
                "demand for file {} but N = {files}",
                bad + 1
            )));
        }
        Ok(DemandVector(d))
    }

    /// From the 1-based file numbers used at the JSON boundary.
    pub fn from_one_based(d: &[u64], files: usize) -> Result<Self> {
        if d.contains(&0) {
            return Err(param("file numbers are 1-based"));
        }
        Self::new(d.iter().map(|&n| n as usize - 1).collect(), files)
    }

    pub fn one_based(&self) -> Vec<u64> {
        self.0.iter().map(|&n| n as u64 + 1).collect()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Per-user caches keyed by `(file, packet)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheContents {
    users: Vec<HashMap<(usize, usize), Vec<u8>>>,
}

impl CacheContents {
    pub fn users(&self) -> usize {
        self.users.len()
    }

    pub fn packet_count(&self, user: usize) -> usize {
        self.users[user].len()
    }

    pub fn get(&self, user: usize, file: usize, packet: usize) -> Option<&[u8]> {
        self.users[user].get(&(file, packet)).map(Vec::as_slice)
    }

    pub fn remove(&mut self, user: usize, file: usize, packet: usize) -> Option<Vec<u8>> {
        self.users[user].remove(&(file, packet))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Message {
    pub symbol: u32,
    pub payload: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeliveryTranscript {
    pub messages: Vec<Message>,
    pub measured_load: Rational,
}

fn check_dims(p: &Pda, lib: &FileLibrary) -> Result<()> {
    if lib.packets() != p.packets() {
        return Err(param(format!(
            "library has F = {} packets per file, PDA has F = {}",
            lib.packets(),
            p.packets()
        )));
    }
    Ok(())
}

fn check_demand(p: &Pda, lib: &FileLibrary, d: &DemandVector) -> Result<()> {
    if d.len() != p.users() {
        return Err(param(format!(
            "demand has {} entries, K = {}",
            d.len(),
            p.users()
        )));
    }
    if d.as_slice().iter().any(|&n| n >= lib.files()) {
        return Err(param("demand names a file outside the library"));
    }
    Ok(())
}

pub fn place(p: &Pda, lib: &FileLibrary) -> Result<CacheContents> {
    check_dims(p, lib)?;
    let users = (0..p.users())
        .map(|k| {
            let mut cache = HashMap::new();
            for j in (0..p.packets()).filter(|&j| p.get(j, k).is_star()) {
                for n in 0..lib.files() {
                    cache.insert((n, j), lib.packet(n, j).to_vec());
                }
            }
            cache
        })
        .collect();
    Ok(CacheContents { users })
}

fn xor_into(acc: &mut [u8], x: &[u8]) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a ^= b;
    }
}

/// One message per symbol `1..=S`, in symbol order.
pub fn deliver(p: &Pda, lib: &FileLibrary, d: &DemandVector) -> Result<DeliveryTranscript> {
    check_dims(p, lib)?;
    check_demand(p, lib, d)?;
    let messages = p
        .symbol_positions()
        .into_iter()
        .enumerate()
        .map(|(s, cells)| {
            let mut payload = vec![0u8; lib.packet_bytes()];
            for (j, k) in cells {
                xor_into(&mut payload, lib.packet(d.as_slice()[k], j));
            }
            Message {
                symbol: s as u32 + 1,
                payload,
            }
        })
        .collect::<Vec<_>>();
    let measured_load = Rational::new(messages.len() as u64, p.packets() as u64);
    Ok(DeliveryTranscript {
        messages,
        measured_load,
    })
}

/// What one user reassembled: its requested file, plus how many packets it
/// could not strip out of the messages it used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    pub file: Vec<u8>,
    pub uncancelled: usize,
}

/// Rebuild every user's requested file from its cache and the transcript.
///
/// A packet a user would need to cancel but has not cached stays in the
/// XOR as interference, so an invalid PDA shows up as a wrong file rather
/// than an error. A star cell missing from the cache, a missing message or
/// a payload of the wrong length is a structural error.
pub fn reconstruct(
    p: &Pda,
    caches: &CacheContents,
    transcript: &DeliveryTranscript,
    d: &DemandVector,
) -> Result<Vec<Reconstruction>> {
    if caches.users() != p.users() || d.len() != p.users() {
        return Err(Error::Structural(
            "cache or demand count differs from K".into(),
        ));
    }
    let by_symbol: HashMap<u32, &Message> =
        transcript.messages.iter().map(|m| (m.symbol, m)).collect();
    let bytes = transcript.messages.first().map(|m| m.payload.len());
    let mut groups: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for j in 0..p.packets() {
        for k in 0..p.users() {
            if let Cell::Symbol(s) = p.get(j, k) {
                groups.entry(s).or_default().push((j, k));
            }
        }
    }

    (0..p.users())
        .map(|k| {
            let want = d.as_slice()[k];
            let mut file = Vec::new();
            let mut uncancelled = 0;
            for j in 0..p.packets() {
                match p.get(j, k) {
                    Cell::Star => {
                        let packet = caches.get(k, want, j).ok_or_else(|| {
                            Error::Structural(format!(
                                "user {} lacks cached packet {} of file {}",
                                k + 1,
                                j + 1,
                                want + 1
                            ))
                        })?;
                        file.extend_from_slice(packet);
                    }
                    Cell::Symbol(s) => {
                        let msg = by_symbol.get(&s).ok_or_else(|| {
                            Error::Structural(format!("no message for symbol {s}"))
                        })?;
                        if Some(msg.payload.len()) != bytes {
                            return Err(Error::Structural(format!(
                                "message {s} has a mismatched payload length"
                            )));
                        }
                        let mut packet = msg.payload.clone();
                        for &(j2, k2) in &groups[&s] {
                            if (j2, k2) == (j, k) {
                                continue;
                            }
                            match caches.get(k, d.as_slice()[k2], j2) {
                                Some(other) if other.len() == packet.len() => {
                                    xor_into(&mut packet, other)
                                }
                                Some(_) => {
                                    return Err(Error::Structural(
                                        "cached packet has a mismatched length".into(),
                                    ))
                                }
                                None => uncancelled += 1,
                            }
                        }
                        file.extend_from_slice(&packet);
                    }
                }
            }
            Ok(Reconstruction { file, uncancelled })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UserOutcome {
    /// 1-based user index.
    pub user: usize,
    pub recovered: bool,
    pub uncancelled: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeReport {
    pub all_recovered: bool,
    pub users: Vec<UserOutcome>,
}

/// Decode every user and compare byte-for-byte with the library.
pub fn decode(
    p: &Pda,
    caches: &CacheContents,
    transcript: &DeliveryTranscript,
    d: &DemandVector,
    lib: &FileLibrary,
) -> Result<DecodeReport> {
    let rec = reconstruct(p, caches, transcript, d)?;
    let users: Vec<UserOutcome> = rec
        .iter()
        .enumerate()
        .map(|(k, r)| UserOutcome {
            user: k + 1,
            recovered: r.file == lib.file(d.as_slice()[k]),
            uncancelled: r.uncancelled,
        })
        .collect();
    Ok(DecodeReport {
        all_recovered: users.iter().all(|u| u.recovered),
        users,
    })
}

/// Which demand vectors to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DemandMode {
    /// Every vector of `[N]^K_real`.
    Exhaustive,
    Sampled {
        count: usize,
        seed: u64,
    },
    /// Explicit vectors over the real users, 0-based.
    Explicit(Vec<Vec<usize>>),
}

/// Demand vectors of length `k_total`; the first `k_real` users follow
/// `mode`, the remaining virtual users request file 0.
pub fn demand_vectors(
    mode: &DemandMode,
    files: usize,
    k_real: usize,
    k_total: usize,
    budget: u128,
) -> Result<Vec<DemandVector>> {
    if k_real > k_total || k_real == 0 {
        return Err(param(format!(
            "real users must be in 1..={k_total}, got {k_real}"
        )));
    }
    if files == 0 {
        return Err(param("N must be positive"));
    }
    let pad = |mut d: Vec<usize>| {
        d.resize(k_total, 0);
        DemandVector::new(d, files)
    };
    match mode {
        DemandMode::Exhaustive => {
            let needed = (files as u128)
                .checked_pow(k_real as u32)
                .unwrap_or(u128::MAX);
            if needed > budget {
                return Err(Error::BudgetExceeded { needed, budget });
            }
            let mut out = Vec::with_capacity(needed as usize);
            let mut cur = vec![0usize; k_real];
            loop {
                out.push(pad(cur.clone())?);
                let Some(i) = (0..k_real).rev().find(|&i| cur[i] + 1 < files) else {
                    return Ok(out);
                };
                cur[i] += 1;
                cur[i + 1..].fill(0);
            }
        }
        DemandMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (0..*count)
                .map(|_| pad((0..k_real).map(|_| rng.gen_range(0..files)).collect()))
                .collect()
        }
        DemandMode::Explicit(list) => list
            .iter()
            .map(|d| {
                if d.len() != k_real {
                    return Err(param(format!(
                        "demand vector has {} entries, expected {k_real}",
                        d.len()
                    )));
                }
                pad(d.clone())
            })
            .collect(),
    }
}

/// Largest measured load over the demand set. Every delivery emits `S`
/// messages, so anything other than `S/F` is reported as an error.
pub fn worst_case_load(
    p: &Pda,
    lib: &FileLibrary,
    mode: &DemandMode,
    budget: u128,
) -> Result<Rational> {
    let demands = demand_vectors(mode, lib.files(), p.users(), p.users(), budget)?;
    let expected = Rational::new(p.symbols() as u64, p.packets() as u64);
    let loads = demands
        .par_iter()
        .map(|d| deliver(p, lib, d).map(|t| t.measured_load))
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = loads.iter().find(|&&l| l != expected) {
        return Err(Error::Structural(format!(
            "measured load {bad} differs from S/F = {expected}"
        )));
    }
    Ok(loads.into_iter().max().unwrap_or(Rational::from_integer(0)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationConfig {
    pub files: usize,
    pub packet_bytes: usize,
    pub seed: u64,
    pub demands: DemandMode,
    /// Users that are not virtual padding; `None` means all `K`.
    pub real_users: Option<usize>,
    pub budget: u128,
    pub keep_transcripts: bool,
}

impl SimulationConfig {
    pub fn new(files: usize) -> Self {
        SimulationConfig {
            files,
            packet_bytes: DEFAULT_PACKET_BYTES,
            seed: 1,
            demands: DemandMode::Sampled { count: 20, seed: 1 },
            real_users: None,
            budget: DEFAULT_EXHAUSTIVE_BUDGET,
            keep_transcripts: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub demand: DemandVector,
    pub messages: usize,
    pub measured_load: Rational,
    /// Decode status of the real users only.
    pub all_recovered: bool,
    pub failed_users: Vec<usize>,
    pub transcript: Option<DeliveryTranscript>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationSummary {
    pub users: usize,
    pub real_users: usize,
    pub files: usize,
    pub packets: usize,
    pub packet_bytes: usize,
    pub seed: u64,
    pub cached_packets_per_user: Vec<usize>,
    pub load: Rational,
    pub worst_case_load: Rational,
    pub all_recovered: bool,
    pub runs: Vec<RunOutcome>,
}

/// Verify `p`, then place, deliver and decode for every configured demand.
/// Runs are independent and executed in parallel; output order follows the
/// demand order.
pub fn simulate(p: &Pda, cfg: &SimulationConfig) -> Result<SimulationSummary> {
    if !verify_pda(p).pass {
        return Err(Error::NotVerified("PDA"));
    }
    let k = p.users();
    let real = cfg.real_users.unwrap_or(k);
    let lib = FileLibrary::generate(cfg.files, p.packets(), cfg.packet_bytes, cfg.seed)?;
    let demands = demand_vectors(&cfg.demands, cfg.files, real, k, cfg.budget)?;
    let caches = place(p, &lib)?;
    let load = Rational::new(p.symbols() as u64, p.packets() as u64);

    let runs = demands
        .into_par_iter()
        .map(|d| {
            let t = deliver(p, &lib, &d)?;
            let report = decode(p, &caches, &t, &d, &lib)?;
            let failed_users: Vec<usize> = report
                .users
                .iter()
                .filter(|u| u.user <= real && !u.recovered)
                .map(|u| u.user)
                .collect();
            Ok(RunOutcome {
                demand: d,
                messages: t.messages.len(),
                measured_load: t.measured_load,
                all_recovered: failed_users.is_empty(),
                failed_users,
                transcript: cfg.keep_transcripts.then_some(t),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    if let Some(r) = runs.iter().find(|r| r.measured_load != load) {
        return Err(Error::Structural(format!(
            "measured load {} differs from S/F = {load}",
            r.measured_load
        )));
    }
    Ok(SimulationSummary {
        users: k,
        real_users: real,
        files: cfg.files,
        packets: p.packets(),
        packet_bytes: cfg.packet_bytes,
        seed: cfg.seed,
        cached_packets_per_user: (0..k).map(|u| caches.packet_count(u)).collect(),
        worst_case_load: runs.iter().map(|r| r.measured_load).max().unwrap_or(load),
        load,
        all_recovered: runs.iter().all(|r| r.all_recovered),
        runs,
    })
}
