//! Pinned CSV output for the fixture scenarios.
//!
//! Regenerate with `WORKDIST_UPDATE_GOLDEN=1 cargo test --test golden`.

use std::path::PathBuf;

use workdist::cli::{config_hash, parse_config, run, Command};

pub const CASES: &[(&str, &[Command])] = &[
    ("flagship", &[Command::SchemeA, Command::Pointer, Command::Moments]),
    ("cqed_coherent", &[Command::CqedSchemeA, Command::CqedHusimi, Command::CqedAngular]),
    ("cqed_incoherent", &[Command::CqedHusimi, Command::CqedAngular]),
];

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn lf(s: &str) -> String {
    s.replace("\r\n", "\n")
}

#[test]
fn fixtures_match_golden_csvs() {
    let update = std::env::var_os("WORKDIST_UPDATE_GOLDEN").is_some();
    for (fixture, commands) in CASES {
        let bytes = std::fs::read(root().join("fixtures").join(format!("{fixture}.json"))).unwrap();
        let config = parse_config(&bytes).unwrap();
        let hash = config_hash(&bytes);
        let dir = root().join("golden").join(fixture);
        for &command in *commands {
            let files = run(command, &config, &hash, false).unwrap();
            for f in files {
                let path = dir.join(&f.name);
                if update {
                    std::fs::create_dir_all(&dir).unwrap();
                    std::fs::write(&path, &f.contents).unwrap();
                    continue;
                }
                let expected = std::fs::read_to_string(&path)
                    .unwrap_or_else(|e| panic!("{}: {e}; regenerate goldens", path.display()));
                assert!(lf(&expected) == f.contents, "{} differs from golden output", path.display());
            }
        }
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let bytes = std::fs::read(root().join("fixtures/flagship.json")).unwrap();
    let config = parse_config(&bytes).unwrap();
    let hash = config_hash(&bytes);
    let a = run(Command::SchemeA, &config, &hash, true).unwrap();
    let b = run(Command::SchemeA, &config, &hash, true).unwrap();
    assert_eq!(a, b);
}

#[test]
fn fixtures_round_trip_through_serialization() {
    for (fixture, _) in CASES {
        let bytes = std::fs::read(root().join("fixtures").join(format!("{fixture}.json"))).unwrap();
        let config = parse_config(&bytes).unwrap();
        assert_eq!(parse_config(config.to_json_pretty().as_bytes()).unwrap(), config, "{fixture}");
    }
}
