//! Keeps the checked-in fixture corpus identical to the programmatic
//! definitions in `fixtures::fixture_documents`.

use std::fs;
use std::path::PathBuf;

use dtk_harness::fixtures::{fixture_documents, write_fixture_files};

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn fixture_directory_is_in_sync() {
    let dir = fixtures_dir();
    let expected = fixture_documents();
    for (name, value) in &expected {
        let path = dir.join(name);
        let text = fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing fixture {name}: {e}; run the regenerate test"));
        let on_disk: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(&on_disk, value, "fixture {name} drifted from its definition");
    }
    let mut listed: Vec<String> = fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".json"))
        .collect();
    listed.sort();
    let mut names: Vec<String> = expected.iter().map(|(n, _)| n.clone()).collect();
    names.sort();
    assert_eq!(listed, names, "stray or missing fixture files");
}

#[test]
#[ignore = "writes the fixture corpus into fixtures/; run after editing the definitions"]
fn regenerate_fixture_directory() {
    write_fixture_files(&fixtures_dir()).unwrap();
}
