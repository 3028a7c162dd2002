use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn schubert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubert"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(validator: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{doc}");
}

#[test]
fn product_dump_for_a2() {
    let out = schubert(&["product", "--type", "A2", "--degrees", "2,1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\t1 2 1\n");

    let out = schubert(&["product", "--type", "A2", "--degrees", "3,0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "");
}

#[test]
fn product_json_matches_schema_and_text() {
    let validator = schema("product.schema.json");
    for (ty, deg) in [("A2", "1,1"), ("B3", "2,1,1"), ("E6", "1,1,0,2,1,1"), ("G2", "0,0")] {
        let out = schubert(&["product", "--type", ty, "--degrees", deg, "--json"]);
        assert!(out.status.success());
        let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_valid(&validator, &doc);
        let text = stdout(&schubert(&["product", "--type", ty, "--degrees", deg]));
        let from_json: String = doc["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| format!("{}\t{}\n", t["coefficient"], t["word"].as_str().unwrap()))
            .collect();
        assert_eq!(text, from_json);
    }
}

#[test]
fn backends_print_the_same_expansion() {
    let args = ["product", "--type", "F4", "--degrees", "3,2,2,3"];
    let big = stdout(&schubert(&args));
    for backend in ["u64", "u128"] {
        let mut with = args.to_vec();
        with.extend(["--backend", backend]);
        assert_eq!(stdout(&schubert(&with)), big);
    }
}

#[test]
fn bound_and_search_json_match_schemas() {
    let bound = schema("bound_report.schema.json");
    for ty in ["A3", "G2", "B3", "F4"] {
        let out = schubert(&["bound", "--type", ty, "--threads", "2"]);
        assert!(out.status.success(), "{ty}");
        let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_valid(&bound, &doc);
        assert_eq!(
            doc["bound"].as_u64().unwrap() + doc["max_mf_degree"].as_u64().unwrap(),
            doc["dim_flag"].as_u64().unwrap()
        );
    }
    let search = schema("mfsearch.schema.json");
    let out = schubert(&["mfsearch", "--type", "D4", "--json"]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_valid(&search, &doc);
    assert_eq!(doc["max_mf_degree"], 9);
}

#[test]
fn search_text_output() {
    let out = schubert(&["mfsearch", "--type", "A2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "type: A2\nN: 3\nwitness: 2,1\nword: 1 2 1\nexhaustive: true\n"
    );
}

#[test]
fn output_is_independent_of_thread_count() {
    for args in [
        vec!["mfsearch", "--type", "F4"],
        vec!["mfsearch", "--type", "D4", "--no-symmetry"],
        vec!["mfsearch", "--type", "B4", "--engine", "sparse"],
        vec!["product", "--type", "E6", "--degrees", "3,2,2,2,2,2"],
    ] {
        let outputs: Vec<String> = ["1", "3"]
            .iter()
            .map(|t| {
                let mut a = args.clone();
                if a[0] == "mfsearch" {
                    a.extend(["--threads", t]);
                }
                stdout(&schubert(&a))
            })
            .collect();
        assert_eq!(outputs[0], outputs[1], "{args:?}");
    }
}

#[test]
fn custom_cartan_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.cartan");
    std::fs::write(&path, "# G2 by hand\n2\n2 -3\n-1 2\n").unwrap();
    let out = schubert(&["roots", "--type", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("positive roots: 6"), "{text}");
    assert!(text.contains("poincare: 1 2 2 2 2 2 1"), "{text}");

    let a1a1 = dir.path().join("a1a1.cartan");
    std::fs::write(&a1a1, "2\n2 0\n0 2\n").unwrap();
    let out = schubert(&["bound", "--type", a1a1.to_str().unwrap()]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["label"], "custom");
    assert_eq!(doc["reference"]["kind"], "none");
    assert_eq!(doc["bound"], 0);
}

#[test]
fn roots_summary() {
    let text = stdout(&schubert(&["roots", "--type", "E8"]));
    assert!(text.contains("rank: 8\n"));
    assert!(text.contains("dim(G/B): 120\n"));
    assert!(text.contains("weyl group order: 696729600\n"));
    assert!(text.contains("highest root: (2,3,4,6,5,4,3,2)\n"));
    assert!(text.contains("1 --- 3 --- 4 --- 5 --- 6 --- 7 --- 8\n            |\n            2"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| schubert(args).status.code().unwrap();
    assert_eq!(code(&["selftest", "--types", "A2,G2"]), 0);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["roots", "--type", "Q7"]), 2);
    assert_eq!(code(&["product", "--type", "A2", "--degrees", "1,x"]), 2);
    assert_eq!(code(&["product", "--type", "A2", "--degrees", "1,1,1"]), 2);
    assert_eq!(code(&["mfsearch", "--type", "A2", "--threads", "0"]), 2);
    assert_eq!(code(&["selftest", "--max-rank", "6"]), 2);
    assert_eq!(code(&["mfsearch", "--type", "A2", "--backend", "float"]), 2);
    assert_eq!(code(&["mfsearch", "--type", "A2", "--engine", "dense"]), 2);
    assert_eq!(
        code(&["mfsearch", "--type", "E6", "--engine", "indexed", "--element-limit", "100"]),
        1
    );
    assert_eq!(code(&["mfsearch", "--type", "A2", "--resume", "/nonexistent/ckpt"]), 2);
    let out = schubert(&["mfsearch", "--type", "F4", "--support-budget", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("exhaustive: false"));
}

#[test]
fn usage_errors_name_the_flag() {
    let out = schubert(&["product", "--type", "A3", "--degrees", "1,2"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("--degrees"), "{err}");
}

#[test]
fn interrupted_search_resumes_from_its_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let full_ckpt = dir.path().join("full.ckpt");
    let part_ckpt = dir.path().join("part.ckpt");
    let resumed_ckpt = dir.path().join("resumed.ckpt");
    let full = schubert(&["mfsearch", "--type", "D4", "--checkpoint", full_ckpt.to_str().unwrap()]);
    let part = schubert(&[
        "mfsearch",
        "--type",
        "D4",
        "--checkpoint",
        part_ckpt.to_str().unwrap(),
        "--stop-after",
        "20",
    ]);
    assert_eq!(part.status.code(), Some(1));
    assert!(String::from_utf8(part.stderr).unwrap().contains("SearchError"));
    let resumed = schubert(&[
        "mfsearch",
        "--type",
        "D4",
        "--resume",
        part_ckpt.to_str().unwrap(),
        "--checkpoint",
        resumed_ckpt.to_str().unwrap(),
    ]);
    assert!(resumed.status.success());
    assert_eq!(stdout(&full), stdout(&resumed));
    assert_eq!(
        std::fs::read(&full_ckpt).unwrap(),
        std::fs::read(&resumed_ckpt).unwrap()
    );

    let wrong = schubert(&["mfsearch", "--type", "B4", "--resume", part_ckpt.to_str().unwrap()]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn engines_print_the_same_answer() {
    for ty in ["B4", "F4"] {
        let outputs: Vec<String> = ["sparse", "indexed", "auto"]
            .iter()
            .map(|e| stdout(&schubert(&["mfsearch", "--type", ty, "--engine", e])))
            .collect();
        assert_eq!(outputs[0], outputs[1], "{ty}");
        assert_eq!(outputs[0], outputs[2], "{ty}");
    }
}
