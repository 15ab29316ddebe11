use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn mckay3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mckay3")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn partition_of_type_i() {
    let o = mckay3(&["partition", "--preset", "I"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.starts_with("p=4\n"), "{s}");
    assert!(s.contains("certified minimal: true"));
}

#[test]
fn cyclic_graph() {
    let o = mckay3(&["graph", "--preset", "A1", "--param", "j=5"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.starts_with("graph mckay {"));
    assert_eq!(s.lines().filter(|l| l.contains("[label=")).count(), 5);
    assert_eq!(s.lines().filter(|l| l.contains(" -- ")).count(), 5);
}

#[test]
fn e8_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = mckay3(&["series", "--preset", "E8sl2", "--closed", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let s = fs::read_to_string(out.join("series.txt")).unwrap();
    assert!(s.contains("D(t) = (1-t^12)*(1-t^20)"), "{s}");
    assert_eq!(s.lines().filter(|l| l.starts_with("N_")).count(), 9);
    assert!(s.contains("N_0(t) = t^30 + 1"));
    assert!(!out.join("expand.csv").exists());
}

#[test]
fn expansion_formats() {
    let o = mckay3(&["series", "--preset", "E", "--format", "csv", "--level", "4"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.starts_with("m,n,chi0,"));
    assert_eq!(s.lines().count(), 1 + 15);
    let o = mckay3(&["series", "--preset", "H", "--format", "json", "--level", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["expansion"]["values"]["0,0"][0], 1);
    assert_eq!(v["closed"]["rank"], 3);
}

#[test]
fn json_character_table() {
    let o = mckay3(&["chartab", "--preset", "E6", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 7);
    assert_eq!(v["degrees"], serde_json::json!([1, 1, 1, 2, 2, 2, 3]));
}

#[test]
fn invalid_input_exits_with_one() {
    assert_eq!(code(&mckay3(&["partition", "--preset", "Q"])), 1);
    assert_eq!(code(&mckay3(&["graph", "--preset", "A2", "--param", "j1=1", "--param", "j2=3"])), 1);
    assert_eq!(code(&mckay3(&["series", "--preset", "E6", "--level", "65"])), 1);
    assert_eq!(code(&mckay3(&["graph", "--preset", "E6", "--format", "csv"])), 1);
    assert_eq!(code(&mckay3(&["graph"])), 1);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn generator_files() {
    let dir = tempfile::tempdir().unwrap();
    let cyclic = write(dir.path(), "c5.json", r#"[[["z5", 0], [0, "z5^4"]]]"#);
    let o = mckay3(&["enumerate", "--gens", &cyclic]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("order 5\n"));

    let exact = write(
        dir.path(),
        "c3.json",
        r#"[[[{"n": 3, "c": [[1, "1"]]}, {"n": 1, "c": []}], [{"n": 1, "c": []}, {"n": 3, "c": [[2, "1"]]}]]]"#,
    );
    let o = mckay3(&["molien", "--gens", &exact]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let det = write(dir.path(), "det.json", r#"[[["z4", 0], [0, 1]]]"#);
    assert_eq!(code(&mckay3(&["enumerate", "--gens", &det])), 1);
    let bad = write(dir.path(), "bad.json", r#"{"not": "a list"}"#);
    assert_eq!(code(&mckay3(&["enumerate", "--gens", &bad])), 1);
}

#[test]
fn warm_cache_gives_identical_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = mckay3(&[
            "series",
            "--preset",
            "BDa",
            "--param",
            "q=2",
            "--param",
            "n=3",
            "--cache",
            cache.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
    }
    let entries: Vec<_> =
        fs::read_dir(&cache).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0].len(), 64 + 5);
    for f in ["series.txt", "expand.csv"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn verify_detects_a_corrupted_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let o = mckay3(&["verify", "--preset", "C", "--param", "m=2", "--cache", c]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("ok  multiplicities direct = recursive = closed form"));

    let file = fs::read_dir(&cache).unwrap().next().unwrap().unwrap().path();
    let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    v["series"]["numerators"][0] = serde_json::json!([[0, 0, "2"]]);
    fs::write(&file, serde_json::to_string(&v).unwrap()).unwrap();
    let o = mckay3(&["series", "--preset", "C", "--param", "m=2", "--cache", c, "--verify"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("stage verify"));
}

#[test]
fn catalog_lists_all_types() {
    let o = mckay3(&["catalog", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = v.as_array().unwrap();
    assert_eq!(entries.iter().filter(|e| e["group"] == "SL2").count(), 5);
    assert_eq!(entries.iter().filter(|e| e["group"] == "SL3").count(), 12);
}
