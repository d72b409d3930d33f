use serde_json::Value;
use std::path::Path;
use std::process::Command;
use tempfile::TempDir;

fn smw(dir: &Path, args: &[&str]) -> (bool, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_smw"))
        .current_dir(dir)
        .env_remove("SMW_SESSION")
        .env_remove("SMW_WINDOW")
        .env_remove("SMW_MODULUS")
        .args(args)
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&text).unwrap_or(Value::Null);
    (out.status.success(), json, text)
}

fn session(preset: &str) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("model.json"), format!("{{\"preset\":\"{preset}\"}}")).unwrap();
    let (ok, _, text) = smw(dir.path(), &["model", "define", "model.json"]);
    assert!(ok, "{text}");
    dir
}

fn labels(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn tube_mutation_command() {
    let d = session("tube 3");
    let (ok, out, _) = smw(d.path(), &["mutate", "tubeU", "--at", "s1,s2", "--dir", "right"]);
    assert!(ok);
    assert_eq!(labels(&out["members"]), ["s1", "s2", "[s2;s1;s3][1]"]);
    assert_eq!(out["verdicts"]["collection"]["status"], "holds");
    assert_eq!(out["triangles"][0]["source"], "[s2;s1]");
    assert_eq!(out["triangles"][0]["target"], "s3[1]");
    let (ok, list, _) = smw(d.path(), &["collection", "list"]);
    assert!(ok);
    let names: Vec<&str> = list["collections"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["tubeU", "tubeU.R[s1,s2]"]);
}

#[test]
fn loop_theorem_table() {
    let d = session("ky-counterexample");
    let (ok, out, _) = smw(d.path(), &["theorem1", "loopU", "--at", "s1"]);
    assert!(ok);
    let rows = out["conditions"].as_array().unwrap();
    assert_eq!(rows[3]["condition"], "(iv)");
    assert_eq!(rows[3]["status"], "fails");
    assert_eq!(out["consistent"], true);
}

#[test]
fn zero_iterations_echo_the_collection() {
    let d = session("orbit a5 2");
    let (ok, out, _) = smw(d.path(), &["iterate", "a5U", "--at", "s1,s2", "-n", "0"]);
    assert!(ok);
    assert_eq!(out["steps"].as_array().unwrap().len(), 1);
    assert_eq!(labels(&out["steps"][0]), ["s1", "s2", "x1", "x2", "x3"]);
}

#[test]
fn errors_are_json_with_nonzero_exit() {
    let d = session("a_2");
    let (ok, out, _) = smw(d.path(), &["mutate", "missing", "--at", "s1"]);
    assert!(!ok);
    assert_eq!(out["error"]["code"], "UnknownCollection");
    let (ok, out, _) = smw(d.path(), &["mutate", "a2U", "--at", "[s1;s2]"]);
    assert!(!ok);
    assert_eq!(out["error"]["code"], "NotSubset");
    let (ok, out, _) = smw(d.path(), &["mutate", "a2U", "--at", "q7"]);
    assert!(!ok);
    assert_eq!(out["error"]["code"], "UnknownLabel");
    let (ok, out, _) = smw(d.path(), &["model", "define", "model.json"]);
    assert!(!ok);
    assert_eq!(out["error"]["code"], "SessionExists");
    let e = tempfile::tempdir().unwrap();
    let (ok, out, _) = smw(e.path(), &["collection", "list"]);
    assert!(!ok);
    assert_eq!(out["error"]["code"], "NoSession");
}

#[test]
fn identical_commands_give_identical_output() {
    let run = || {
        let d = session("tube 3");
        let mut all = String::new();
        for args in [
            vec!["mutate", "tubeU", "--at", "s1,s2"],
            vec!["tilt", "tubeU", "--at", "s1", "--dir", "left"],
            vec!["theorem1", "tubeU", "--at", "s1,s2"],
            vec!["reduce", "tubeU", "--at", "s1,s2"],
            vec!["collection", "list"],
        ] {
            all += &smw(d.path(), &args).2;
        }
        all + &std::fs::read_to_string(d.path().join("smw-session.json")).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn exported_collection_reimports_equal() {
    let a = session("orbit a5 2");
    let (_, exported, text) = smw(a.path(), &["collection", "export", "a5U"]);
    let b = session("orbit a5 2");
    let (ok, _, _) = smw(b.path(), &["collection", "remove", "a5U"]);
    assert!(ok);
    let mut renamed = exported.clone();
    renamed["name"] = "again".into();
    std::fs::write(b.path().join("c.json"), renamed.to_string()).unwrap();
    let (ok, _, _) = smw(b.path(), &["collection", "import", "c.json"]);
    assert!(ok);
    let (_, back, _) = smw(b.path(), &["collection", "export", "again"]);
    assert_eq!(back["members"], exported["members"]);
    assert_eq!(back["w"], exported["w"]);
    std::fs::write(b.path().join("same.json"), text).unwrap();
    let (ok, out, _) = smw(b.path(), &["collection", "import", "same.json"]);
    assert!(!ok, "tombstoned names stay reserved");
    assert_eq!(out["error"]["code"], "NameTaken");
}

#[test]
fn environment_overrides_window_and_modulus() {
    let d = tempfile::tempdir().unwrap();
    std::fs::write(d.path().join("m.json"), "{\"preset\":\"a_2\"}").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_smw"))
        .current_dir(d.path())
        .env("SMW_WINDOW", "-1,1")
        .env("SMW_MODULUS", "7")
        .args(["model", "define", "m.json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let (_, cat, _) = smw(d.path(), &["model", "show"]);
    assert_eq!(cat["window"], serde_json::json!([-1, 1]));
    assert_eq!(cat["p"], 7);
    assert_eq!(cat["indecs"].as_array().unwrap().len(), 9);
}

#[test]
fn exports_write_svg_and_dot() {
    let d = session("a_2");
    std::fs::write(d.path().join("z.json"), r#"{"s1":[-1,1,1,1],"s2":[1,1,1,1]}"#).unwrap();
    let (ok, out, _) = smw(d.path(), &["stability", "a2U", "--charge", "z.json", "--svg", "z.svg"]);
    assert!(ok);
    assert_eq!(out["objects"].as_array().unwrap().len(), 3);
    let svg = std::fs::read_to_string(d.path().join("z.svg")).unwrap();
    assert_eq!(svg.matches("<circle").count(), 3);
    let (ok, g, _) = smw(d.path(), &["graph", "explore", "a2U", "--depth", "1", "--dot", "g.dot"]);
    assert!(ok);
    assert_eq!(g["edges"].as_array().unwrap().len(), 8);
    assert!(std::fs::read_to_string(d.path().join("g.dot")).unwrap().starts_with("digraph"));
    let (ok, it, _) = smw(d.path(), &["iterate", "a2U", "--at", "s1", "-n", "4", "--dot", "t.dot"]);
    assert!(ok);
    assert_eq!(it["steps"].as_array().unwrap().len(), 5);
    assert!(d.path().join("t.dot").exists());
    let (ok, adj, _) = smw(d.path(), &["adjacency", "a2U"]);
    assert!(ok);
    assert_eq!(adj["bisilting"], "holds");
}
