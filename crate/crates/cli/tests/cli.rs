use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn dtile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtile")).args(args).output().expect("dtile runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn families(report: &Value) -> Vec<String> {
    let mut out: Vec<String> = report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["outcome"]["outcome"] == "realized")
        .filter_map(|e| e["outcome"]["family"].as_str().map(str::to_string))
        .collect();
    out.sort();
    out.dedup();
    out
}

#[test]
fn classify_five_and_seven() {
    let dir = TempDir::new().unwrap();
    let p5 = dir.path().join("m5.json");
    let o = dtile(&["classify", "--m", "5", "--c-max", "8", "--out", p5.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r5 = read_json(&p5);
    assert_eq!(families(&r5), ["earth_map", "football", "prism", "snub_fusion"]);
    let text = std::fs::read_to_string(&p5).unwrap();
    assert!(text.contains("\"nonexistent\""));

    let p7 = dir.path().join("m7.json");
    assert_eq!(code(&dtile(&["classify", "--m", "7", "--out", p7.to_str().unwrap()])), 0);
    assert_eq!(families(&read_json(&p7)), ["prism"]);
}

#[test]
fn classify_rejects_square() {
    assert_eq!(code(&dtile(&["classify", "--m", "4"])), 2);
    assert_eq!(code(&dtile(&["classify", "--m", "65"])), 2);
}

#[test]
fn generate_prism_and_verify() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("prism6.json");
    assert_eq!(code(&dtile(&["generate", "prism", "--m", "6", "--out", p.to_str().unwrap()])), 0);
    assert_eq!(read_json(&p)["faces"].as_array().unwrap().len(), 8);

    let p5 = dir.path().join("prism5.json");
    assert_eq!(code(&dtile(&["generate", "prism", "--m", "5", "--realize", "--out", p5.to_str().unwrap()])), 0);
    let o = dtile(&["verify", "--in", p5.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["geometric"]["overlaps"].as_array().unwrap().len(), 0);
}

#[test]
fn generate_rejects_bad_parameters() {
    assert_eq!(code(&dtile(&["generate", "prism"])), 2);
    assert_eq!(code(&dtile(&["generate", "prism", "--m", "2"])), 2);
    assert_eq!(code(&dtile(&["generate", "earthmap", "--c", "1"])), 2);
    assert_eq!(code(&dtile(&["generate", "prism", "--m", "5", "--r", "0.1"])), 2);
    assert_eq!(code(&dtile(&["generate", "snub4"])), 2);
}

#[test]
fn generate_football_exports() {
    let dir = TempDir::new().unwrap();
    let (obj, svg, json) = (dir.path().join("f.obj"), dir.path().join("f.svg"), dir.path().join("f.json"));
    let o = dtile(&[
        "generate",
        "football",
        "--realize",
        "--obj",
        obj.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
        "--out",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let obj = std::fs::read_to_string(obj).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 72);
    assert!(std::fs::read_to_string(svg).unwrap().contains("<svg"));
    assert_eq!(code(&dtile(&["verify", "--in", json.to_str().unwrap()])), 0);
}

#[test]
fn generate_earth_map_notes_face_count() {
    let o = dtile(&["generate", "earthmap", "--c", "2"]);
    assert_eq!(code(&o), 0);
    let file: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(file["faces"].as_array().unwrap().len(), 17);
    assert!(String::from_utf8_lossy(&o.stderr).contains("note:"));
}

#[test]
fn verify_reports_bad_labels_and_parse_errors() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("prism5.json");
    assert_eq!(code(&dtile(&["generate", "prism", "--m", "5", "--out", p.to_str().unwrap()])), 0);
    let mut v = read_json(&p);
    let faces = v["faces"].as_array_mut().unwrap();
    let rhombus = faces.iter_mut().find(|f| f["kind"] == "rhombus").unwrap();
    let labels = rhombus["labels"].as_array_mut().unwrap();
    labels[0] = if labels[0] == "beta" { "gamma".into() } else { "beta".into() };
    let flipped = dir.path().join("flipped.json");
    std::fs::write(&flipped, serde_json::to_string(&v).unwrap()).unwrap();
    let o = dtile(&["verify", "--in", flipped.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("BadLabels"));

    let text = std::fs::read_to_string(&p).unwrap();
    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    assert_eq!(code(&dtile(&["verify", "--in", truncated.to_str().unwrap()])), 2);
    assert_eq!(code(&dtile(&["verify", "--in", dir.path().join("missing.json").to_str().unwrap()])), 2);
}

#[test]
fn verify_honours_tolerance() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("snub.json");
    assert_eq!(code(&dtile(&["generate", "snub2", "--realize", "--out", p.to_str().unwrap()])), 0);
    assert_eq!(code(&dtile(&["verify", "--in", p.to_str().unwrap(), "--tol", "1e-6"])), 0);
    assert_eq!(code(&dtile(&["verify", "--in", p.to_str().unwrap(), "--tol", "1e-30"])), 1);
}

#[test]
fn matchings_lists_classes() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("m.json");
    assert_eq!(code(&dtile(&["matchings", "--out", p.to_str().unwrap()])), 0);
    let v = read_json(&p);
    assert_eq!(v["classes"], 3);
    let ms = v["matchings"].as_array().unwrap();
    assert_eq!(ms.len() as u64, v["count"].as_u64().unwrap());
    assert!(ms.iter().all(|m| (1..=3).contains(&m["variant"].as_u64().unwrap()) && m["edges"].as_array().unwrap().len() == 10));
    let sizes: u64 = v["class_sizes"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum();
    assert_eq!(sizes, v["count"].as_u64().unwrap());
}
