//! Replays the fuzz corpus through the parsers and throws random
//! mutations of the bundled instance at them.

use std::fs;
use std::path::Path;

use atomcert_core::algebra::Rat;
use atomcert_core::instance::{parse_instance, VERRA_INSTANCE};
use proptest::prelude::*;

fn corpus(target: &str) -> Vec<Vec<u8>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut files: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {}", dir.display(), e))
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files.iter().map(|p| fs::read(p).unwrap()).collect()
}

#[test]
fn instance_seeds() {
    let seeds = corpus("instance_parse");
    assert!(!seeds.is_empty());
    let ok = seeds
        .iter()
        .filter_map(|s| std::str::from_utf8(s).ok())
        .filter(|s| parse_instance(s).is_ok())
        .count();
    // Bundled instance plus the two loadable negative fixtures.
    assert_eq!(ok, 3);
}

#[test]
fn rat_seeds_round_trip() {
    for seed in corpus("rat_parse") {
        let s = String::from_utf8(seed).unwrap();
        if let Ok(r) = s.parse::<Rat>() {
            assert_eq!(r.to_string().parse::<Rat>().unwrap(), r, "{:?}", s);
        }
    }
    assert_eq!("6055/144".parse::<Rat>().unwrap(), Rat::new(6055, 144));
    assert!("1/0".parse::<Rat>().is_err());
}

proptest! {
    #[test]
    fn mutated_instances_never_panic(pos in 0usize..VERRA_INSTANCE.len(), cut in 0usize..40, insert in "[ -~\n]{0,12}") {
        let bytes = VERRA_INSTANCE.as_bytes();
        let end = (pos + cut).min(bytes.len());
        let mut text = bytes[..pos].to_vec();
        text.extend_from_slice(insert.as_bytes());
        text.extend_from_slice(&bytes[end..]);
        if let Ok(s) = String::from_utf8(text) {
            let _ = parse_instance(&s);
        }
    }

    #[test]
    fn arbitrary_rationals_never_panic(s in "[-+0-9/ a]{0,24}") {
        if let Ok(r) = s.parse::<Rat>() {
            prop_assert_eq!(r.to_string().parse::<Rat>().unwrap(), r);
        }
    }
}
