//! End-to-end acceptance: the suite runs clean and fast, its
//! certificates re-verify, and any single-byte payload mutation of a
//! z-vector or eps-coefficient is rejected.

use assert_cmd::Command;
use std::time::Instant;

fn symfact() -> Command {
    Command::cargo_bin("symfact").unwrap()
}

#[test]
fn criterion_8_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("certs");

    let started = Instant::now();
    symfact()
        .args(["suite", "--out"])
        .arg(&out)
        .assert()
        .success();
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 600, "suite took {elapsed:?}");

    let mut count = 0;
    let mut mutated = 0;
    for entry in std::fs::read_dir(&out).unwrap() {
        let path = entry.unwrap().path();
        count += 1;
        symfact().arg("verify").arg(&path).assert().success();

        // single-character payload mutations of a z-vector coefficient
        // or an eps-coefficient must be rejected with exit code 1
        let text = std::fs::read_to_string(&path).unwrap();
        let json: serde_json::Value = serde_json::from_str(&text).unwrap();
        let target = match json["kind"].as_str().unwrap() {
            "different" | "hecke" => {
                let z = if json["kind"] == "different" {
                    &json["payload"]["z_ab"]
                } else {
                    &json["payload"]["different"]["z_ab"]
                };
                z[0]["terms"][0]["coef"]["num"].as_str().map(str::to_string)
            }
            "hensel" => json["payload"]["f1t_eps"][0].as_str().map(str::to_string),
            _ => None,
        };
        if let Some(old) = target {
            let bumped = if old.starts_with('-') {
                old.replacen('-', "", 1)
            } else {
                format!("-{old}")
            };
            let needle = format!("\"{old}\"");
            let replacement = format!("\"{bumped}\"");
            let corrupted = text.replacen(&needle, &replacement, 1);
            assert_ne!(corrupted, text);
            let bad = dir.path().join("corrupted.json");
            std::fs::write(&bad, corrupted).unwrap();
            symfact().arg("verify").arg(&bad).assert().code(1);
            mutated += 1;
        }
    }
    assert!(count >= 5, "expected at least 5 certificates, got {count}");
    assert!(mutated >= 3, "expected mutation checks on z/eps payloads");
    println!("ACCEPTANCE 8 (suite + verify end-to-end): PASS");
}

#[test]
fn out_of_range_shape_exits_2() {
    symfact()
        .args(["different", "--n1", "4", "--n2", "4"])
        .assert()
        .code(2);
}

#[test]
fn malformed_json_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    symfact().arg("verify").arg(&bad).assert().code(2);
}

#[test]
fn wrong_schema_version_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    std::fs::write(
        &cert,
        r#"{"schema_version": 99, "kind": "different", "tool_version": "0",
           "seed": 0, "timing_ms": 0, "payload": null}"#,
    )
    .unwrap();
    symfact().arg("verify").arg(&cert).assert().code(2);
}

#[test]
fn basis_and_json_flag() {
    let out = symfact()
        .args(["basis", "--n1", "2", "--n2", "2", "--json"])
        .assert()
        .success();
    let stdout = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["rank"], 6);
}

#[test]
fn suite_rejects_out_of_range_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"suites": ["different"], "shapes": [[4, 4]], "trials": 1, "seed": 1}"#,
    )
    .unwrap();
    symfact()
        .args(["suite", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("c"))
        .assert()
        .code(2);
}

#[test]
fn deterministic_certificates_modulo_timing() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        symfact()
            .args(["different", "--n1", "2", "--n2", "2", "--seed", "5", "--out"])
            .arg(out)
            .assert()
            .success();
    }
    let strip = |p: &std::path::Path| {
        let mut v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(p.join("different-2-2.json")).unwrap())
                .unwrap();
        v["timing_ms"] = 0.into();
        v
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn trace_relation_instance_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    std::fs::write(
        &inst,
        r#"{
          "conductor": 0,
          "rho_frob": {"rows": 2, "cols": 2, "entries":
            [[{"num":"3","den":"1"}],[{"num":"0","den":"1"}],
             [{"num":"0","den":"1"}],[{"num":"7","den":"1"}]]},
          "rho_tau": {"rows": 2, "cols": 2, "entries":
            [[{"num":"1","den":"1"}],[{"num":"0","den":"1"}],
             [{"num":"0","den":"1"}],[{"num":"2","den":"1"}]]},
          "f1": [[{"num":"-3","den":"1"}],[{"num":"1","den":"1"}]],
          "f2": [[{"num":"-7","den":"1"}],[{"num":"1","den":"1"}]],
          "alpha_char": [{"num":"2","den":"1"}],
          "q": [{"num":"5","den":"1"}]
        }"#,
    )
    .unwrap();
    let out = symfact()
        .args(["trace-relation", "--json", "--instance"])
        .arg(&inst)
        .assert()
        .success();
    let stdout = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["residual_zero"], true);

    // identity sigma on a zero-residual instance gives a zero TW residual
    let sigma = dir.path().join("sigma.json");
    std::fs::write(
        &sigma,
        r#"{"rows": 2, "cols": 2, "entries":
          [[{"num":"1","den":"1"}],[{"num":"0","den":"1"}],
           [{"num":"0","den":"1"}],[{"num":"1","den":"1"}]]}"#,
    )
    .unwrap();
    let out = symfact()
        .args(["tw-residual", "--json", "--instance"])
        .arg(&inst)
        .arg("--sigma")
        .arg(&sigma)
        .assert()
        .success();
    let stdout = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["zero"], true);
}

#[test]
fn adequacy_demo_and_gens() {
    let out = symfact()
        .args(["adequacy", "--demo", "tensor-counterexample", "--json"])
        .assert()
        .success();
    let stdout = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["payload"]["span_all"], 16);
    assert_eq!(v["payload"]["rss_contained_in_antidiagonal_zero"], true);

    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("gens.json");
    std::fs::write(
        &gens,
        r#"[
          {"rows": 2, "cols": 2, "entries":
            [[{"num":"0","den":"1"}],[{"num":"1","den":"1"}],
             [{"num":"1","den":"1"}],[{"num":"0","den":"1"}]]},
          {"rows": 2, "cols": 2, "entries":
            [[{"num":"1","den":"1"}],[{"num":"0","den":"1"}],
             [{"num":"0","den":"1"}],[{"num":"-1","den":"1"}]]}
        ]"#,
    )
    .unwrap();
    let out = symfact()
        .args(["adequacy", "--field", "Q", "--json", "--gens"])
        .arg(&gens)
        .assert()
        .success();
    let stdout = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["order"], 8);
    assert_eq!(v["weak_adequacy"], true);
}
