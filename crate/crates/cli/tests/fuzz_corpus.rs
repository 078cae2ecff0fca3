// Replays the checked-in fuzz corpus and random mutations of it through the fuzz
// target bodies, so the targets are exercised on stable without cargo-fuzz.

use std::fs;
use std::path::Path;

use gauge_curves_cli::fuzzing;
use proptest::prelude::*;

type Target = fn(&[u8]);

const TARGETS: [(&str, Target); 4] = [
    ("job_spec", fuzzing::job_spec),
    ("csv_table", fuzzing::csv_table),
    ("overrides", fuzzing::overrides),
    ("polygon_vertices", fuzzing::polygon_vertices),
];

fn corpus(name: &str) -> Vec<Vec<u8>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(name);
    let mut seeds: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read(e.unwrap().path()).unwrap())
        .collect();
    seeds.sort();
    seeds
}

#[test]
fn every_target_has_seeds_and_replays_them() {
    for (name, target) in TARGETS {
        let seeds = corpus(name);
        assert!(!seeds.is_empty(), "no seeds for {name}");
        for s in &seeds {
            target(s);
        }
    }
}

fn mutate(seed: &[u8], edits: &[(usize, u8, u8)]) -> Vec<u8> {
    let mut out = seed.to_vec();
    for &(pos, byte, op) in edits {
        let i = if out.is_empty() { 0 } else { pos % (out.len() + 1) };
        match op % 3 {
            0 if i < out.len() => out[i] = byte,
            1 => out.insert(i.min(out.len()), byte),
            _ if i < out.len() => {
                out.remove(i);
            }
            _ => out.push(byte),
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn mutated_seeds_do_not_panic(
        which in 0usize..4,
        pick in any::<usize>(),
        edits in proptest::collection::vec((any::<usize>(), any::<u8>(), any::<u8>()), 0..8),
    ) {
        let (name, target) = TARGETS[which];
        let seeds = corpus(name);
        target(&mutate(&seeds[pick % seeds.len()], &edits));
    }

    #[test]
    fn arbitrary_bytes_do_not_panic(which in 0usize..4, data in proptest::collection::vec(any::<u8>(), 0..256)) {
        (TARGETS[which].1)(&data);
    }

    #[test]
    fn printable_text_does_not_panic(which in 0usize..3, text in "[ -~\n]{0,200}") {
        (TARGETS[which].1)(text.as_bytes());
    }
}
