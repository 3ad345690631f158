use std::path::Path;
use std::process::{Command, Output};

fn amalgam(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amalgam")).env("AMALGAM_CACHE_DIR", cache).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn field_table_lists_63_powers() {
    let dir = tempfile::tempdir().unwrap();
    let o = amalgam(dir.path(), &["field-table"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 63);
    assert!(text.starts_with(" 0 0b000001\n 1 0b000010\n"));
}

#[test]
fn reducible_or_unparsable_modulus_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(amalgam(dir.path(), &["--modulus", "0b1000001", "build"]).status.code(), Some(2));
    assert_eq!(amalgam(dir.path(), &["--modulus", "0b12", "build"]).status.code(), Some(2));
    assert_eq!(amalgam(dir.path(), &["verify", "--claims", "no.such.claim"]).status.code(), Some(2));
}

#[test]
fn claim_filter_runs_only_the_relations() {
    let dir = tempfile::tempdir().unwrap();
    let o = amalgam(dir.path(), &["--json", "verify", "--claims", "relations"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ids: Vec<&str> = v["claims"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["relations.commutators", "relations.sigma", "relations.powers", "relations.consequences"]);
    assert_eq!(v["overall"], "pass");
    assert!(v["timing"]["graph_source"].is_null());
    assert_eq!(std::fs::read_dir(dir.path()).map(|d| d.count()).unwrap_or(0), 0, "no graph built");
}

#[test]
fn build_export_arcs_and_cache_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let o = amalgam(&cache, &["build"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("59584 vertices (25536 + 34048), 102144 edges, Built"));
    assert!(stdout(&amalgam(&cache, &["build"])).contains("Cache"));

    let o = amalgam(&cache, &["arcs", "--side", "2", "--s", "5", "--group", "K"]);
    assert_eq!(stdout(&o).trim(), "orbits: 1, size 108");
    let o = amalgam(&cache, &["arcs", "--side", "1", "--s", "6", "--group", "H"]);
    assert_eq!(stdout(&o).trim(), "orbits: 2, sizes 144 144");
    let o = amalgam(&cache, &["arcs", "--group", "H", "--side", "2"]);
    let csv = stdout(&o);
    assert_eq!(csv.lines().next(), Some("side,vertex,s,group,arcs,orbits,sizes"));
    assert_eq!(csv.lines().count(), 10);

    let edges = dir.path().join("out/edges.txt");
    assert!(amalgam(&cache, &["export", "--format", "edge-list", "--out", edges.to_str().unwrap()]).status.success());
    let text = std::fs::read_to_string(&edges).unwrap();
    assert_eq!(text.lines().count(), 102_144);
    let g6 = dir.path().join("g.g6");
    assert!(amalgam(&cache, &["export", "--format", "graph6", "--out", g6.to_str().unwrap()]).status.success());
    let bytes = std::fs::read(&g6).unwrap();
    let n: u64 = 59_584;
    assert_eq!(&bytes[..4], &[126, 63 + 14, 63 + 35, 63]);
    assert_eq!(bytes.len() as u64, 4 + (n * (n - 1) / 2).div_ceil(6) + 1);

    let file = std::fs::read_dir(&cache).unwrap().next().unwrap().unwrap().path();
    let mut raw = std::fs::read(&file).unwrap();
    raw[8] ^= 0xff;
    std::fs::write(&file, &raw).unwrap();
    let o = amalgam(&cache, &["arcs", "--side", "2", "--s", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cache mismatch"));
    assert!(amalgam(&cache, &["--no-cache", "arcs", "--side", "2", "--s", "1", "--group", "K"]).status.success());
}
