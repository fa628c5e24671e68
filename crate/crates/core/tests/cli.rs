use std::process::Command;

use rational_rmatrix::cli::EmitRecord;

fn rmatrix(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rmatrix"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn expansion(args: &[&str]) -> Vec<EmitRecord> {
    let (code, out, err) = rmatrix(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn emit_eleven_vertex() {
    let (code, out, _) = rmatrix(&["emit", "--family", "eleven-vertex", "--N", "2", "--hbar", "1", "--z", "1"]);
    assert_eq!(code, 0);
    let rec = EmitRecord::from_json(out.trim()).unwrap();
    // row of E_22 ⊗ E_22 basis vector out, column of E_11 ⊗ E_11 in
    assert_eq!(rec.entries[3][0], "-6");
    assert_eq!((rec.n, rec.slots), (2, 2));
    assert_eq!(rec.to_json(), out.trim());
}

#[test]
fn emit_yang_diagonal() {
    let (code, out, _) = rmatrix(&["emit", "--family", "yang", "--N", "3", "--hbar", "1/2", "--z", "1/3"]);
    assert_eq!(code, 0);
    let rec = EmitRecord::from_json(out.trim()).unwrap();
    for a in 0..3 {
        assert_eq!(rec.entries[4 * a][4 * a], "5");
    }
}

#[test]
fn emit_is_byte_identical() {
    let args = ["emit", "--family", "semi-dynamical", "--N", "3", "--hbar", "2/3", "--z1", "1", "--z2", "-1/2", "--q", "1,3/2,-4"];
    assert_eq!(rmatrix(&args), rmatrix(&args));
}

#[test]
fn emit_errors() {
    assert_eq!(rmatrix(&["emit", "--family", "nope", "--N", "2"]).0, 2);
    assert_eq!(rmatrix(&["emit", "--family", "dynamical", "--N", "2", "--hbar", "1", "--z", "1"]).0, 2);
    assert_eq!(rmatrix(&["emit", "--family", "six-vertex", "--N", "3", "--hbar", "1", "--z", "1"]).0, 2);
    let (code, _, err) = rmatrix(&["emit", "--family", "dynamical", "--N", "2", "--hbar", "1", "--z", "1", "--q", "1,1"]);
    assert_eq!(code, 1);
    assert!(err.contains("not pairwise distinct"), "{err}");
}

#[test]
fn check_exit_codes() {
    let (code, out, _) = rmatrix(&["check", "--suite", "all", "--N", "2..3", "--trials", "10", "--seed", "42"]);
    assert_eq!(code, 0);
    let last: serde_json::Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert_eq!(last["summary"]["all_passed"], true);
    let first: serde_json::Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert!(first["anchor"].as_str().is_some_and(|a| !a.is_empty()));

    assert_eq!(rmatrix(&["check", "--suite", "coincidence", "--N", "2..6", "--trials", "10"]).0, 0);
    assert_eq!(rmatrix(&["check", "--suite", "qybe", "--N", "0"]).0, 2);
    assert_eq!(rmatrix(&["check", "--suite", "no-such-check"]).0, 2);
    assert_eq!(rmatrix(&["check", "--suite", "cybe-as-printed", "--N", "2", "--trials", "3"]).0, 1);
}

#[test]
fn expand_hbar() {
    let recs = expansion(&["expand", "--family", "explicit-appendix", "--N", "2", "--var", "hbar", "--order", "1", "--z", "1"]);
    assert_eq!(recs.first().unwrap().degree, Some(-1));
    assert_eq!(recs.last().unwrap().degree, Some(1));
    let id = rational_rmatrix::TensorOperator::identity(2, 2);
    assert_eq!(recs[0].operator().unwrap(), id);
}

#[test]
fn expand_z() {
    let recs = expansion(&["expand", "--family", "classical-explicit", "--N", "2", "--var", "z", "--order", "0"]);
    assert_eq!(recs[0].operator().unwrap(), rational_rmatrix::zoo::permutation(2));
}

#[test]
fn expand_epsilon() {
    let recs = expansion(&["expand", "--family", "eleven-vertex", "--N", "2", "--var", "epsilon", "--order", "0", "--hbar", "1/3", "--z", "-2"]);
    let (_, out, _) = rmatrix(&["emit", "--family", "yang", "--N", "2", "--hbar", "1/3", "--z", "-2"]);
    let yang = EmitRecord::from_json(out.trim()).unwrap();
    assert_eq!(recs[1].degree, Some(0));
    assert_eq!(recs[1].entries, yang.entries);
}

#[test]
fn expand_with_empty_degree_range() {
    let recs = expansion(&["expand", "--family", "yang", "--N", "2", "--var", "z", "--order", "-2", "--hbar", "1"]);
    assert!(recs.is_empty());
}
