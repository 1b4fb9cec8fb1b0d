use chowlab::cli::{load_poset, run_with};
use chowlab::engine::{augmented_chow, chow, AugmentedMethod, ChowMethod};
use chowlab::IntPolynomial;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(std::iter::once("chowlab").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("chowlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn exit_code_table() {
    let table: &[(&[&str], i32)] = &[
        (&["chow", "--poset", "boolean:3"], 0),
        (&["chow", "--poset", "uniform:2,4", "--method", "ncd"], 0),
        (&["chow", "--poset", "maxrank:3,3", "--method", "closed-form"], 0),
        (&["chow", "--poset", "boolean:3", "--method", "magic"], 1),
        (&["chow", "--poset", "uniform:5,4"], 1),
        (&["chow", "--poset", "no/such/file.json"], 1),
        (&["augchow", "--poset", "chain:3", "--method", "augment-then-chow"], 0),
        (&["seq", "eulerian", "5"], 0),
        (&["seq", "Dnk", "4", "2"], 0),
        (&["seq", "Ank", "4", "5"], 1),
        (&["certify", "real-rooted", "--poly", "1+t^2"], 2),
        (&["certify", "real-rooted", "--poly", "[1,4,1]"], 0),
        (&["certify", "real-rooted", "--poly", "0"], 1),
        (&["certify", "real-rooted", "--poly", "1 + + t"], 1),
        (&["certify", "interlace", "--f", "1+t", "--g", "1+4t+t^2"], 0),
        (&["certify", "interlace", "--f", "1+4t+t^2", "--g", "1+t"], 1),
        (&["certify", "interlace", "--f", "2+t", "--g", "1+t"], 0),
        (&["certify", "interlace", "--f", "1+t", "--g", "2+t"], 2),
        (&["certify", "interlace", "--f", "1+t^2", "--g", "1+t"], 1),
        (&["certify", "combination", "--f", "1+t", "--g", "1+4t+t^2", "--lambda", "1", "--mu", "-1"], 0),
        (&["verify", "--identity", "G-dual", "--poset", "uniform:2,4"], 0),
        (&["verify", "--identity", "all", "--poset", "maxrank:2,3,2"], 0),
        (&["verify", "--identity", "lemma-truncation", "--poset", "boolean:2"], 1),
        (&["verify", "--identity", "nonsense", "--poset", "boolean:3"], 1),
        (&["oracle", "eulerian", "4"], 0),
        (&["oracle", "eulerian", "12"], 1),
        (&["oracle", "mobius", "--poset", "uniform:2,3"], 0),
        (&["oracle", "chow", "--poset", "boolean:3"], 0),
        (&["bench", "--family", "uniform", "--max-n", "4"], 0),
        (&["poset", "build", "boolean:2"], 0),
        (&["poset", "random", "--levels", "2,3", "--density", "3/10"], 1),
        (&["--seed", "7", "poset", "random", "--levels", "2,3", "--density", "3/10"], 0),
        (&["--seed", "7", "poset", "random", "--levels", "2,3", "--density", "3/2"], 1),
        (&["--help"], 0),
        (&[], 1),
    ];
    for (args, expected) in table {
        let (code, _, err) = call(args);
        assert_eq!(code, *expected, "{args:?}: {err}");
        if code == 1 && !args.is_empty() {
            assert!(!err.trim().is_empty(), "{args:?} should explain itself");
        }
    }
}

#[test]
fn text_outputs() {
    assert_eq!(call(&["chow", "--poset", "boolean:3"]).1, "1 + 4t + t^2\n");
    assert_eq!(call(&["chow", "--poset", "maxrank:3,3"]).1, "1 + 4t + t^2\n");
    assert_eq!(call(&["chow", "--poset", "uniform:2,4", "--augmented"]).1, "1 + 5t + t^2\n");
    assert_eq!(call(&["seq", "derangement", "4"]).1, "t + 7t^2 + t^3\n");
    assert_eq!(call(&["oracle", "mobius", "--poset", "uniform:2,3"]).1, "2\n");
    let (_, out, _) = call(&["certify", "interlace", "--f", "1+t", "--g", "1+4t+t^2"]);
    assert!(out.contains("pattern: β2 <= α1 <= β1"), "{out}");
    let (_, out, _) = call(&["poset", "validate", "boolean:3"]);
    assert!(out.contains("elements: 8") && out.contains("levels: [3, 3]"), "{out}");
}

#[test]
fn error_messages_name_the_violation() {
    let bad = temp_file("two_minimal.json", r#"{"elements":3,"rank":[0,0,1],"covers":[[0,2],[1,2]]}"#);
    let (code, _, err) = call(&["chow", "--poset", &bad]);
    assert_eq!(code, 1);
    assert!(err.contains("not bounded"), "{err}");
    let bad = temp_file("skip.json", r#"{"elements":3,"rank":[0,1,2],"covers":[[0,1],[1,2],[0,2]]}"#);
    let (_, _, err) = call(&["poset", "validate", &bad]);
    assert!(err.contains("not graded"), "{err}");
}

#[test]
fn json_round_trip_for_builtin_specs() {
    let specs = ["boolean:1", "boolean:4", "uniform:1,3", "uniform:3,5", "maxrank:", "maxrank:2,1,3", "chain:0", "chain:5"];
    for spec in specs {
        let p = load_poset(spec, 1 << 16).unwrap();
        for (method, expected) in [
            ("definition", chow(&p, ChowMethod::Definition).unwrap()),
            ("truncation", chow(&p, ChowMethod::Truncation).unwrap()),
        ] {
            let (code, out, _) = call(&["--json", "chow", "--poset", spec, "--method", method]);
            assert_eq!(code, 0);
            let v: serde_json::Value = serde_json::from_str(&out).unwrap();
            let parsed: IntPolynomial = serde_json::from_value(v["coefficients"].clone()).unwrap();
            assert_eq!(parsed, expected, "{spec} {method}");
            assert_eq!(v["text"], expected.to_string());
        }
        let (_, out, _) = call(&["--json", "augchow", "--poset", spec]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let parsed: IntPolynomial = serde_json::from_value(v["coefficients"].clone()).unwrap();
        assert_eq!(parsed, augmented_chow(&p, AugmentedMethod::SumDefinition).unwrap(), "{spec}");
    }
}

#[test]
fn poset_files_round_trip_through_the_cli() {
    let (_, json, _) = call(&["poset", "build", "uniform:2,4"]);
    let path = temp_file("u24.json", &json);
    assert_eq!(call(&["chow", "--poset", &path]).1, "1 + t\n");
    let (_, truncated, _) = call(&["poset", "convert", &path, "--op", "dual", "--op", "truncate"]);
    let path2 = temp_file("u24_dual_trunc.json", &truncated);
    // H_P = G_{τ(P*)}
    assert_eq!(call(&["augchow", "--poset", &path2]).1, "1 + t\n");
    let (code, out, _) = call(&["--json", "poset", "validate", &path2]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rank"], 1);
}

#[test]
fn random_posets_are_seed_deterministic() {
    let args = ["--seed", "42", "poset", "random", "--levels", "3,4,3", "--density", "6/10"];
    let a = call(&args).1;
    assert_eq!(a, call(&args).1);
    let other = call(&["--seed", "43", "poset", "random", "--levels", "3,4,3", "--density", "6/10"]).1;
    assert_ne!(a, other);
}

#[test]
fn certificates_print_as_json() {
    let (code, out, _) = call(&["--json", "certify", "real-rooted", "--poly", "1+3t+3t^2+t^3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["real_root_count"], 1);
    let (_, out, _) = call(&["--json", "verify", "--identity", "H-equals-G-sigma", "--poset", "boolean:4"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["pass"], true);
    assert_eq!(v[0]["identity"], "H-equals-G-sigma");
}

#[test]
fn bench_csv_rows() {
    let (code, out, _) = call(&["bench", "--family", "boolean", "--max-n", "8"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 8 * 4);
    assert!(rows.iter().all(|r| r.split(',').count() == 6));
    let (_, out, _) = call(&["bench", "--family", "maxrank", "--max-n", "5"]);
    assert!(!out.contains("closed-form"));
    assert_eq!(out.lines().count(), 1 + 5 * 3);
}
