use std::path::PathBuf;

use coprime::corpus::{load_spec, spec_files, standard_corpus};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn checked_in_corpus_matches_the_standard_list() {
    let files = spec_files(&corpus_dir()).unwrap();
    let expected = standard_corpus();
    assert_eq!(files.len(), expected.len());
    for (name, spec) in expected {
        let loaded = load_spec(&corpus_dir().join(&name)).unwrap();
        assert_eq!(loaded, spec, "{name}");
    }
}
