mod common;

use common::{corpus, z7_rectangle, golden};
use pda_forge::sim::{
    decode, deliver, demand_vectors, place, reconstruct, simulate, worst_case_load, DemandMode,
    FileLibrary, SimulationConfig,
};
use pda_forge::{pda_from_nhslr, Cell, Rational};

#[test]
fn every_corpus_array_decodes() {
    for (name, p) in corpus() {
        let expected = Rational::new(p.symbols() as u64, p.packets() as u64);
        for seed in 1..=3 {
            let mut cfg = SimulationConfig::new(p.users());
            cfg.packet_bytes = 8;
            cfg.seed = seed;
            cfg.demands = DemandMode::Sampled { count: 20, seed };
            let sum = simulate(&p, &cfg).unwrap();
            assert!(sum.all_recovered, "{name} seed {seed}");
            assert_eq!(sum.runs.len(), 20);
            let budget = cfg.files * p.stars_per_column();
            assert!(
                sum.cached_packets_per_user.iter().all(|&c| c == budget),
                "{name}"
            );
            assert!(
                sum.runs.iter().all(|r| r.measured_load == expected),
                "{name}"
            );
            assert_eq!(sum.load, expected);
        }
    }
}

#[test]
fn decoded_packets_re_encode_the_transcript() {
    for p in [golden(), pda_from_nhslr(&z7_rectangle()).unwrap()] {
        let bytes = 16;
        let lib = FileLibrary::generate(p.users(), p.packets(), bytes, 5).unwrap();
        let caches = place(&p, &lib).unwrap();
        let mode = DemandMode::Sampled { count: 10, seed: 9 };
        for d in demand_vectors(&mode, lib.files(), p.users(), p.users(), 1 << 20).unwrap() {
            let t = deliver(&p, &lib, &d).unwrap();
            let rec = reconstruct(&p, &caches, &t, &d).unwrap();
            assert!(rec.iter().all(|r| r.uncancelled == 0));
            let positions = p.symbol_positions();
            for m in &t.messages {
                let mut x = vec![0u8; bytes];
                for &(row, col) in &positions[m.symbol as usize - 1] {
                    let chunk = &rec[col].file[row * bytes..(row + 1) * bytes];
                    x.iter_mut().zip(chunk).for_each(|(a, b)| *a ^= b);
                }
                assert_eq!(x, m.payload);
            }
        }
    }
}

#[test]
fn exhaustive_worst_case_is_s_over_f() {
    let p = golden();
    let lib = FileLibrary::generate(3, 4, 4, 1).unwrap();
    let w = worst_case_load(&p, &lib, &DemandMode::Exhaustive, 1 << 20).unwrap();
    assert_eq!(w, Rational::new(1, 1));
}

#[test]
fn mutated_array_fails_byte_exact_recovery() {
    let mut p = golden();
    p.set(1, 0, Cell::Symbol(4));
    let lib = FileLibrary::generate(4, 4, 16, 1).unwrap();
    let caches = place(&p, &lib).unwrap();
    let mode = DemandMode::Explicit(vec![vec![0, 1, 2, 3]]);
    let d = &demand_vectors(&mode, 4, 4, 4, 1).unwrap()[0];
    let t = deliver(&p, &lib, d).unwrap();
    let r = decode(&p, &caches, &t, d, &lib).unwrap();
    assert!(!r.all_recovered);
    // and the fail-closed entry point refuses it outright
    assert!(simulate(&p, &SimulationConfig::new(4)).is_err());
}

#[test]
fn simulation_is_deterministic() {
    let p = pda_from_nhslr(&z7_rectangle()).unwrap();
    let mut cfg = SimulationConfig::new(7);
    cfg.keep_transcripts = true;
    let a = simulate(&p, &cfg).unwrap();
    let b = simulate(&p, &cfg).unwrap();
    assert_eq!(a, b);
}
