use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use fuse_core::diag::{Rule, Severity};
use fuse_core::store::{self, LoadOptions, Manifest, ParallelSet, MANIFEST_FILE};
use fuse_core::{synth, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SETS: &[&str] = &["nominate", "raise", "harmonise", "divergence", "buy", "propose"];

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn copy_fixture(name: &str, to: &Path) {
    for entry in fs::read_dir(fixture(name)).unwrap() {
        let entry = entry.unwrap();
        fs::copy(entry.path(), to.join(entry.file_name())).unwrap();
    }
}

fn load(manifest: &Path, set: &str) -> store::Loaded {
    store::load_set(manifest, set, LoadOptions::default()).unwrap()
}

#[test]
fn fixtures_save_byte_identically() {
    for name in SETS {
        let loaded = load(&fixture(name).join(MANIFEST_FILE), name);
        let out = tempfile::tempdir().unwrap();
        let written = store::save_set(&loaded.set, out.path()).unwrap();
        assert_eq!(written.len(), 6);
        for path in written {
            let file = path.file_name().unwrap();
            assert_eq!(
                fs::read_to_string(&path).unwrap(),
                fs::read_to_string(fixture(name).join(file)).unwrap(),
                "{name}/{}",
                file.to_string_lossy()
            );
        }
    }
}

#[test]
fn random_sets_survive_save_and_load() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..25 {
        let set = synth::random_set(&mut rng, &format!("s{i}"), 5);
        let dir = tempfile::tempdir().unwrap();
        store::save_set(&set, dir.path()).unwrap();
        let back = load(&dir.path().join(MANIFEST_FILE), &set.name);
        assert_eq!(back.set.files(), set.files());
        assert_eq!(back.set.registry(), set.registry());
    }
}

#[test]
fn save_in_place_keeps_the_manifest() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixture("divergence", dir.path());
    let manifest = dir.path().join(MANIFEST_FILE);
    fs::write(
        &manifest,
        format!("# hand-written\n{}", fs::read_to_string(&manifest).unwrap()),
    )
    .unwrap();
    let loaded = load(&manifest, "divergence");
    let written = store::save_in_place(&loaded.set).unwrap();
    assert_eq!(written.len(), 5);
    assert!(fs::read_to_string(&manifest).unwrap().starts_with("# hand-written"));
    let leftovers: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with(".fuse-"))
        .collect();
    assert!(leftovers.is_empty());
}

#[test]
fn failed_save_writes_nothing() {
    let loaded = load(&fixture("nominate").join(MANIFEST_FILE), "nominate");
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("en-de.aln")).unwrap();
    assert!(matches!(
        store::save_set(&loaded.set, dir.path()),
        Err(Error::Io { .. })
    ));
    let names: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(names, vec!["en-de.aln"]);
}

#[test]
fn sets_share_stores() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixture("buy", dir.path());
    fs::write(dir.path().join("alt.aln"), "").unwrap();
    let manifest = dir.path().join(MANIFEST_FILE);
    let mut text = fs::read_to_string(&manifest).unwrap();
    text.push_str("SET alt A=en:en.ftb:en.paa B=de:de.ftb:de.paa ALIGN=alt.aln\n");
    fs::write(&manifest, text).unwrap();
    let all = store::load_all(&manifest, LoadOptions::default()).unwrap();
    assert_eq!(all.len(), 2);
    assert!(Arc::ptr_eq(all[0].set.shared_store_a(), all[1].set.shared_store_a()));
    assert!(Arc::ptr_eq(all[0].set.shared_store_b(), all[1].set.shared_store_b()));
    assert_eq!(all[1].set.alignment().iter().count(), 0);
}

fn raise_without_exclusion(dir: &Path) -> PathBuf {
    copy_fixture("raise", dir);
    let paa = dir.join("en.paa");
    let text = fs::read_to_string(&paa)
        .unwrap()
        .replace("nodes=n525 excl=n517", "nodes=n525 excl=-");
    fs::write(paa, text).unwrap();
    dir.join(MANIFEST_FILE)
}

#[test]
fn strict_load_fails_on_recursion() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = raise_without_exclusion(dir.path());
    let lenient = load(&manifest, "raise");
    assert_eq!(lenient.diagnostics.len(), 1);
    assert_eq!(lenient.diagnostics[0].rule, Rule::Recursion);
    let strict = store::load_set(
        &manifest,
        "raise",
        LoadOptions {
            strict: true,
            ..Default::default()
        },
    );
    match strict {
        Err(Error::Strict { diagnostics }) => assert_eq!(diagnostics.len(), 1),
        other => panic!("{other:?}"),
    }
    let mut opts = LoadOptions {
        strict: true,
        ..Default::default()
    };
    opts.config.recursion = Severity::Warning;
    let relaxed = store::load_set(&manifest, "raise", opts).unwrap();
    assert_eq!(relaxed.diagnostics[0].severity, Severity::Warning);
}

fn with_alignment(fixture_name: &str, aln: &str) -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    copy_fixture(fixture_name, dir.path());
    fs::write(dir.path().join("en-de.aln"), aln).unwrap();
    let m = dir.path().join(MANIFEST_FILE);
    (dir, m)
}

#[test]
fn alignment_problems() {
    let dup = "#PAIR example/buy.al:1 en de\nPALIGN P1 P1 tags=-\nPALIGN P1 P1 tags=-\n#END\n";
    let (_d, m) = with_alignment("buy", dup);
    let rules: Vec<Rule> = load(&m, "buy").diagnostics.iter().map(|d| d.rule).collect();
    assert_eq!(rules, vec![Rule::DupAlign]);

    let stray = "#PAIR example/buy.al:9 en de\nPALIGN P1 P1 tags=-\n#END\n";
    let (_d, m) = with_alignment("buy", stray);
    let rules: Vec<Rule> = load(&m, "buy").diagnostics.iter().map(|d| d.rule).collect();
    assert_eq!(rules, vec![Rule::PairNotRegistered]);

    let tag = "#PAIR example/buy.al:1 en de\nPALIGN P1 P1 tags=nope\n#END\n";
    let (_d, m) = with_alignment("buy", tag);
    let rules: Vec<Rule> = load(&m, "buy").diagnostics.iter().map(|d| d.rule).collect();
    assert_eq!(rules, vec![Rule::UnknownTag]);

    let dangling = "#PAIR example/buy.al:1 en de\nPALIGN P1 P2 tags=-\n#END\n";
    let (_d, m) = with_alignment("buy", dangling);
    assert!(store::load_set(&m, "buy", LoadOptions::default()).is_err());
}

#[test]
fn declared_vocabulary_is_accepted() {
    let (dir, m) = with_alignment("buy", "#PAIR example/buy.al:1 en de\nPALIGN P1 P1 tags=loose\n#END\n");
    let text = fs::read_to_string(&m).unwrap();
    fs::write(&m, format!("VOCAB align += loose\n{text}")).unwrap();
    assert!(load(&m, "buy").diagnostics.is_empty());
    drop(dir);
}

#[test]
fn load_errors() {
    let m = fixture("nominate").join(MANIFEST_FILE);
    assert!(matches!(
        store::load_set(&m, "nope", LoadOptions::default()),
        Err(Error::UnknownSet(_))
    ));
    assert!(matches!(
        store::load_set(Path::new("/nonexistent/manifest.fuse"), "x", LoadOptions::default()),
        Err(Error::Io { .. })
    ));
    let dir = tempfile::tempdir().unwrap();
    copy_fixture("nominate", dir.path());
    fs::write(dir.path().join("de.paa"), "#SENT de-en/ep-00-02-15.al:999:de\n#END\n").unwrap();
    let err = store::load_set(&dir.path().join(MANIFEST_FILE), "nominate", LoadOptions::default()).unwrap_err();
    assert!(err.to_string().contains("de.paa"), "{err}");
}

#[test]
fn manifest_round_trip() {
    let text = "VOCAB binding += ext\nSET a A=en:en.ftb:en.paa B=de:de.ftb:de.paa ALIGN=en-de.aln\n";
    assert_eq!(Manifest::parse(text).unwrap().write(), text);
    assert!(Manifest::parse(&format!("{text}SET a A=en:x:y B=de:x:y ALIGN=z\n")).is_err());
}

#[test]
fn mirror_of_a_fixture_validates_identically() {
    for name in SETS {
        let set: ParallelSet = load(&fixture(name).join(MANIFEST_FILE), name).set;
        let rev = set.reversed();
        assert_eq!(rev.registry().len(), set.registry().len());
        assert_eq!(
            rev.diagnostics(fuse_core::Exec::Sequential).len(),
            set.diagnostics(fuse_core::Exec::Sequential).len()
        );
        assert_eq!(rev.reversed().files(), set.files());
    }
}

#[test]
fn ingest_then_load() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    fs::write(&a, "the laws\nmust be harmonised\n").unwrap();
    fs::write(&b, "die Gesetze\nmüssen harmonisiert werden\n").unwrap();
    let set = store::ingest_pairs(&a, &b, "ep-00.al", "en", "de", 7)
        .unwrap()
        .into_set("main")
        .unwrap();
    let out = dir.path().join("out");
    store::save_set(&set, &out).unwrap();
    let back = load(&out.join(MANIFEST_FILE), "main");
    assert_eq!(back.set.registry().len(), 2);
    assert_eq!(back.set.store_b().trees()[1].tokens().len(), 3);
    assert_eq!(back.set.store_a().trees()[1].origin().sentence_number, 8);
}
