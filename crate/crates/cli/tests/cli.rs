use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use ggr_core::change::restriction_triple;
use ggr_core::exactla::ScalarField;
use ggr_core::gring::{concentrated_ring, matrix_ring};
use ggr_core::gset::{regular_gset, Side};
use ggr_core::io::Writer;
use ggr_core::structure::cyclic_group;
use serde_json::{json, Value};

const Q: ScalarField = ScalarField::Rationals;

fn ggr(args: &[&str]) -> (i32, Value) {
    let Output { status, stdout, .. } = Command::new(env!("CARGO_BIN_EXE_ggr")).args(args).output().unwrap();
    let report = serde_json::from_slice(&stdout).unwrap_or(Value::Null);
    (status.code().unwrap(), report)
}

fn fixtures(dir: &Path) -> PathBuf {
    let fm3 = Arc::new(matrix_ring(Q, 3).unwrap());
    let c2 = Arc::new(cyclic_group(2).unwrap());
    let conc = Arc::new(concentrated_ring(Q, c2.clone()));
    let fm2 = Arc::new(matrix_ring(Q, 2).unwrap());
    let x = regular_gset(fm2.groupoid().clone(), Side::Right);
    let mut w = Writer::new();
    w.ring(&fm3, Some("fm3"));
    w.ring(&conc, Some("conc"));
    w.ring(&fm2, Some("fm2"));
    w.gset(&x, Some("regular"));
    w.triple(&restriction_triple(&fm2, &fm2.groupoid().objects_subgroupoid()).unwrap(), Some("diag"));
    w.triple(&restriction_triple(&conc, &c2.objects_subgroupoid()).unwrap(), Some("conc_triple"));
    let path = dir.join("fixtures.json");
    std::fs::write(&path, w.render()).unwrap();
    path
}

fn r(path: &Path, id: &str) -> String {
    format!("{}#{id}", path.display())
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = fixtures(dir.path());
    let (code, rep) = ggr(&["validate", good.to_str().unwrap()]);
    assert_eq!(code, 0, "{rep}");
    assert_eq!(rep["verdict"], json!(true));

    // a loop with inverses that is not associative
    let magma = json!([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]);
    let broken = dir.path().join("broken.json");
    let doc = json!({"schema_version": 1, "objects": [
        {"id": "g", "kind": "groupoid", "size": 5, "product": magma, "labels": ["e", "a", "b", "c", "d"]}
    ]});
    std::fs::write(&broken, doc.to_string()).unwrap();
    let (code, rep) = ggr(&["validate", broken.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(rep["axiom"], json!("associativity"));
    assert_eq!(rep["witness"].as_array().unwrap().len(), 3);
    assert_eq!(rep["object"], json!("g"));

    let dangling = dir.path().join("dangling.json");
    let doc = json!({"schema_version": 1, "objects": [
        {"id": "x", "kind": "gset", "groupoid": "missing", "side": "right", "size": 1, "action": [[0]]}
    ]});
    std::fs::write(&dangling, doc.to_string()).unwrap();
    let (code, rep) = ggr(&["validate", dangling.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(rep["error"].as_str().unwrap().contains("dangling"), "{rep}");
}

#[test]
fn checks_report_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let f = fixtures(dir.path());
    let (code, rep) = ggr(&["check", "strongly-graded", &r(&f, "fm3")]);
    assert_eq!((code, &rep["verdict"]), (0, &json!(true)));
    let (code, rep) = ggr(&["check", "strongly-graded", &r(&f, "conc")]);
    assert_eq!(code, 1);
    assert_eq!(rep["witness"]["index"], json!(1));

    let (code, _) = ggr(&["check", "equiv-rest", &r(&f, "diag")]);
    assert_eq!(code, 0);
    let (code, rep) = ggr(&["check", "equiv-rest", &r(&f, "conc_triple")]);
    assert_eq!(code, 1);
    assert_eq!(rep["witness"]["condition"], json!("generator"));

    let (code, rep) = ggr(&["check", "menini-nastasescu", &r(&f, "fm3"), "--unit-objects", "0", "--degrees", "0,3,6"]);
    assert_eq!(code, 0, "{rep}");
    assert_eq!(rep["details"]["end_strongly_graded"], json!(true));

    let (code, rep) = ggr(&["check", "restrict-identities", &r(&f, "conc")]);
    assert_eq!(code, 1);
    assert_eq!(rep["details"]["all_agree"], json!(true));

    let (code, _) = ggr(&["check", "no-such-check", &r(&f, "fm3")]);
    assert_eq!(code, 2);
}

#[test]
fn compute_writes_objects() {
    let dir = tempfile::tempdir().unwrap();
    let f = fixtures(dir.path());
    let out = dir.path().join("rhat.json");
    let (code, rep) = ggr(&["compute", "rhat", &r(&f, "fm2"), &r(&f, "regular"), "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{rep}");
    assert_eq!(rep["kind"], json!("bimodule"));
    let (code, rep) = ggr(&["check", "morita", &r(&out, "result")]);
    assert_eq!(code, 0, "{rep}");
    let (code, rep) = ggr(&["check", "morita-criteria", &r(&out, "result")]);
    assert_eq!(code, 0, "{rep}");

    let (code, _) = ggr(&["compute", "ind", &r(&f, "fm2"), "-o", out.to_str().unwrap()]);
    assert_eq!(code, 2);
}
