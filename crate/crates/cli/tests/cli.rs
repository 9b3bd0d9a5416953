use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qtk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtk")).args(args).output().expect("qtk runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn verify_mink_passes() {
    let out = qtk(&["verify", "--suite", "mink", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["summary"]["status"], "pass");
    assert_eq!(v["summary"]["fail"], 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["module"] == "qmink" && c["anchor"].is_string()));
}

#[test]
fn verify_hopf_order_one() {
    let out = qtk(&["verify", "--suite", "hopf", "--order", "1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn corrupted_fixture_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let fx = dir.path().join("fx.json");
    fs::write(&fx, r#"{"a": [["r","r","r","r^-1"],["r^-1","r","r","r^-1"],["r","r^-1","r^-1","r"],["r","r^-1","r^-1","r"]]}"#).unwrap();
    let out = qtk(&["verify", "--suite", "all", "--fixtures", fx.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    let bad: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert_eq!(bad.len(), 1);
    assert!(bad[0]["witness"].as_str().unwrap().contains("a(1,1)"));
}

#[test]
fn strict_turns_discrepancies_into_failure() {
    assert_eq!(code(&qtk(&["verify", "--suite", "mink"])), 0);
    assert_eq!(code(&qtk(&["verify", "--suite", "mink", "--strict"])), 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&qtk(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&qtk(&["verify", "--order", "0"])), 2);
    assert_eq!(code(&qtk(&["verify", "--degree", "1"])), 2);
    assert_eq!(code(&qtk(&["verify", "--gauge", "symmetric-footnote"])), 2);
    assert_eq!(code(&qtk(&["verify", "--bogus"])), 2);
    assert_eq!(code(&qtk(&["tables", "--what", "zz"])), 2);
    assert_eq!(code(&qtk(&["tables", "--what", "a", "--param", "q"])), 2);
    assert_eq!(code(&qtk(&["tables", "--what", "a", "--format", "xml"])), 2);
    assert_eq!(code(&qtk(&["twist", "--family", "quantum-double"])), 2);
    assert_eq!(code(&qtk(&["twist", "--family", "jordanian", "--spins", "1/3"])), 2);
    assert_eq!(code(&qtk(&["twist", "--family", "jordanian", "--emit", "all"])), 2);
}

#[test]
fn unwritable_output_exits_two() {
    let out = qtk(&["tables", "--what", "a", "--out", "/nonexistent-dir/x/a.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn output_is_atomic_and_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("r1.json");
    let p2 = dir.path().join("r2.json");
    for p in [&p1, &p2] {
        assert_eq!(code(&qtk(&["verify", "--suite", "mink,rep", "--out", p.to_str().unwrap()])), 0);
    }
    assert_eq!(fs::read(&p1).unwrap(), fs::read(&p2).unwrap());
    let names: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 2, "no temp files left behind: {names:?}");
}

#[test]
fn timings_go_to_side_channel() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.json");
    let out = qtk(&["verify", "--suite", "mink", "--timings", t.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let tv: Value = serde_json::from_str(&fs::read_to_string(&t).unwrap()).unwrap();
    assert!(tv.as_array().unwrap().iter().all(|x| x["seconds"].is_number()));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("seconds"));
}

#[test]
fn a_table_matches_printed_matrix() {
    let v = json(&qtk(&["tables", "--what", "a"]));
    let rows: Vec<Vec<&str>> =
        v["data"].as_array().unwrap().iter().map(|r| r.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()).collect();
    let (m, p) = ("r^-1", "r");
    assert_eq!(rows, vec![vec![m, p, p, m], vec![m, p, p, m], vec![p, m, m, p], vec![p, m, m, p]]);
}

#[test]
fn relations_at_r_one_are_trivial() {
    let v = json(&qtk(&["tables", "--what", "relations", "--param", "r=1"]));
    let rows = v["data"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["factor"] == "1"));
}

#[test]
fn clifford_table_has_sixteen_entries() {
    let v = json(&qtk(&["tables", "--what", "clifford"]));
    let d = v["data"].as_array().unwrap();
    assert_eq!(d.len(), 16);
    let get = |m: u64, n: u64| d.iter().find(|e| e["mu"] == m && e["nu"] == n).unwrap()["anticommutator"].clone();
    assert_eq!(get(1, 3), "r");
    assert_eq!(get(2, 4), "-r^-1");
}

#[test]
fn markdown_tables() {
    let out = qtk(&["tables", "--what", "gamma", "--format", "markdown"]);
    assert_eq!(code(&out), 0);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("# Table `gamma`"));
    assert_eq!(s.matches("## gamma").count(), 4);
}

#[test]
fn twist_artifacts() {
    let v = json(&qtk(&["twist", "--family", "abelian-cartan"]));
    assert_eq!(v["status"], "pass");
    let m = v["matrix"].as_array().unwrap();
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.as_array().unwrap().iter().enumerate() {
            let s = x.as_str().unwrap();
            if i == j {
                assert!(s.starts_with('r') || s == "1", "{s}");
            } else {
                assert_eq!(s, "0");
            }
        }
    }
    let v = json(&qtk(&["twist", "--family", "jordanian", "--spins", "1/2", "--param", "xi=0", "--emit", "matrix"]));
    let ident: Vec<Vec<&str>> = (0..4).map(|i| (0..4).map(|j| if i == j { "1" } else { "0" }).collect()).collect();
    assert_eq!(v, serde_json::json!(ident));
    let v = json(&qtk(&["twist", "--family", "jordanian", "--spins", "1/2,1"]));
    assert_eq!(v["matrix"].as_array().unwrap().len(), 6);
    assert!(v["r_matrix"].is_null());
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("qtk.conf");
    fs::write(&cfg, "# defaults\nwhat = relations\nparam.r = 1\nformat = json\n").unwrap();
    let c = cfg.to_str().unwrap();
    let v = json(&qtk(&["tables", "--config", c]));
    assert!(v["data"].as_array().unwrap().iter().all(|r| r["factor"] == "1"));
    let v = json(&qtk(&["tables", "--config", c, "--param", "r=2"]));
    assert_eq!(v["data"][0]["factor"], "4");
    let v = json(&qtk(&["tables", "--config", c, "--what", "a"]));
    assert_eq!(v["what"], "a");
    fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(code(&qtk(&["tables", "--config", c, "--what", "a"])), 2);
    assert_eq!(code(&qtk(&["tables", "--config", Path::new("/nonexistent.conf").to_str().unwrap(), "--what", "a"])), 2);
}

#[test]
fn symmetric_gauge_mink() {
    let out = qtk(&["verify", "--suite", "mink", "--gauge", "symmetric-footnote"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["anchor"] == "gauge choice"));
    let v = json(&qtk(&["tables", "--what", "a", "--gauge", "symmetric-footnote"]));
    assert_eq!(v["gauge"], "symmetric-footnote");
}

/// Keys and enum values of a report stay within the published schema.
#[test]
fn report_follows_published_schema() {
    let schema: Value = serde_json::from_str(&fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report-schema.json")).unwrap()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let fx = dir.path().join("fx.json");
    fs::write(&fx, r#"{"a": [["r","r","r","r^-1"],["r^-1","r","r","r^-1"],["r","r^-1","r^-1","r"],["r","r^-1","r^-1","r"]]}"#).unwrap();
    let report = json(&qtk(&["verify", "--suite", "mink,rep", "--fixtures", fx.to_str().unwrap()]));

    fn conforms(v: &Value, s: &Value, path: &str) {
        if let Some(allowed) = s["enum"].as_array() {
            assert!(allowed.contains(v), "{path}: {v} not in {allowed:?}");
        }
        if let Some(obj) = v.as_object() {
            let props = s["properties"].as_object().unwrap();
            for k in s["required"].as_array().unwrap() {
                assert!(obj.contains_key(k.as_str().unwrap()), "{path}: missing {k}");
            }
            for (k, x) in obj {
                let sub = props.get(k).unwrap_or_else(|| panic!("{path}: unexpected key {k}"));
                conforms(x, sub, &format!("{path}.{k}"));
            }
        }
        if let (Some(arr), Some(items)) = (v.as_array(), s.get("items")) {
            for x in arr {
                conforms(x, items, &format!("{path}[]"));
            }
        }
    }
    conforms(&report, &schema, "$");
    assert!(report["checks"].as_array().unwrap().iter().any(|c| c["status"] == "fail"));
}
