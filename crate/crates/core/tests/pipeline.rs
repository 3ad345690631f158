use amalgam_core::harness::{verify, Config, Context, GraphSource, Verdict};

#[test]
fn full_run_passes_and_reruns_identically_from_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = Config { cache_dir: Some(dir.path().to_path_buf()), ..Config::default() };
    let mut ctx = Context::new(cfg.clone()).unwrap();
    let first = verify(&mut ctx).unwrap();
    print!("{}", first.to_text());
    assert_eq!(first.timing.graph_source, Some(GraphSource::Built));
    for c in &first.claims {
        assert_ne!(c.verdict, Verdict::Fail, "{}: {:?}", c.id, c.checks.iter().filter(|k| !k.passed).collect::<Vec<_>>());
    }
    assert!(first.passed());

    let mut ctx = Context::new(cfg).unwrap();
    let second = verify(&mut ctx).unwrap();
    assert_eq!(second.timing.graph_source, Some(GraphSource::Cache));
    assert_eq!(first.without_timing().to_json(), second.without_timing().to_json());
}
