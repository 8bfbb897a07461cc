//! Replays the checked-in fuzz corpus, plus seeded mutations of every seed,
//! through the fuzz entry points on the stable toolchain.

use std::path::PathBuf;

use egeo_cli::fuzz_entry::TARGETS;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn env_or<T: std::str::FromStr>(key: &str, default: T) -> T {
    std::env::var(key).ok().and_then(|v| v.parse().ok()).unwrap_or(default)
}

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    out.sort();
    out
}

const INTERESTING: &[&[u8]] = &[b"0", b"-1", b"1e308", b"NaN", b"inf", b",", b";", b"x", b"[", b"]", b"\0", b"9999999999"];

fn mutate(rng: &mut ChaCha8Rng, seed: &[u8]) -> Vec<u8> {
    let mut v = seed.to_vec();
    for _ in 0..rng.random_range(1..=4) {
        let at = if v.is_empty() { 0 } else { rng.random_range(0..v.len()) };
        match rng.random_range(0..5) {
            0 if !v.is_empty() => v[at] = rng.random(),
            1 if !v.is_empty() => {
                v.remove(at);
            }
            2 => v.truncate(at),
            3 => {
                let token = INTERESTING[rng.random_range(0..INTERESTING.len())];
                v.splice(at..at, token.iter().copied());
            }
            _ if !v.is_empty() => {
                let end = rng.random_range(at..v.len());
                let chunk = v[at..=end].to_vec();
                v.splice(at..at, chunk);
            }
            _ => v.push(rng.random()),
        }
    }
    v
}

#[test]
fn every_target_has_seeds() {
    for (name, _) in TARGETS {
        assert!(!seeds(name).is_empty(), "{name} has no corpus");
    }
}

#[test]
fn corpus_and_mutations_never_panic() {
    // EGEO_FUZZ_SEED and EGEO_FUZZ_MUTATIONS widen the search for longer soaks
    let mut rng = ChaCha8Rng::seed_from_u64(env_or("EGEO_FUZZ_SEED", 0x5eed));
    let per_seed = env_or("EGEO_FUZZ_MUTATIONS", 200usize);
    for (name, entry) in TARGETS {
        for (file, data) in seeds(name) {
            let run = |bytes: &[u8]| {
                if std::panic::catch_unwind(|| entry(bytes)).is_err() {
                    panic!("{name}/{file}: panicked on {:?}", String::from_utf8_lossy(bytes));
                }
            };
            run(&data);
            // large seeds get fewer mutations
            let budget = if data.len() > 4096 { per_seed / 10 } else { per_seed };
            for _ in 0..budget {
                run(&mutate(&mut rng, &data));
            }
        }
    }
}
