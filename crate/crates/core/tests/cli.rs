use std::process::Command;

use convkit::cli::{main_with, open};
use convkit::error::Error;
use convkit::linalg::scalar::{format_scalar, parse_scalar, ratio};
use convkit::scenarios::{counterexample, kappa_action_setup};
use convkit::workspace::{builtin, builtin_names, Workspace};
use proptest::prelude::*;

fn convkit(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_convkit")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn temp_file(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("convkit-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn counterexample_command_prints_the_golden_line() {
    let (code, out) = convkit(&["counterexample"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), "order ℓ∘r: 0, order r∘ℓ: w — composites differ");
}

#[test]
fn output_is_deterministic() {
    for args in [&["compose", "builtin:counterexample"][..], &["verify", "--json", "builtin:kappa"], &["export", "builtin:kappa"]] {
        assert_eq!(convkit(args), convkit(args), "{args:?}");
    }
}

#[test]
fn builtins_round_trip_through_json() {
    for name in builtin_names() {
        let ws = builtin(name).unwrap();
        let again = Workspace::parse(&ws.to_json()).unwrap();
        assert_eq!(again.document(), ws.document(), "{name}");
        assert_eq!(again.to_json(), ws.to_json());
        let path = temp_file(&format!("{name}.json"), &ws.to_json());
        assert_eq!(open(&path).unwrap().document(), ws.document());
    }
}

#[test]
fn workspace_setups_match_the_compiled_scenarios() {
    let ce = counterexample().unwrap();
    let s = builtin("counterexample").unwrap().action_setup("phi", "psi").unwrap();
    let k = builtin("kappa").unwrap().action_setup("phi", "psi").unwrap();
    for (a, b) in [(&s, &ce.setup), (&k, &kappa_action_setup().unwrap())] {
        assert_eq!(a.phi, b.phi);
        assert_eq!(a.psi, b.psi);
        assert_eq!(a.hom_c_a.space(), b.hom_c_a.space());
        assert_eq!(a.composite_difference().unwrap(), b.composite_difference().unwrap());
    }
}

#[test]
fn verify_passes_on_builtins() {
    for name in builtin_names() {
        let src = format!("builtin:{name}");
        assert_eq!(main_with(["convkit", "verify", "--all", "--max-arity", "4", src.as_str()]), 0, "{name}");
    }
}

#[test]
fn failures_set_the_exit_code() {
    let (code, out) = convkit(&["equalizer", "builtin:kappa", "--max-weight", "4"]);
    assert_eq!(code, 1);
    assert!(out.contains("first failure: composites agree after precomposition"));
    let (code, _) = convkit(&["mc", "builtin:kappa", "--map", "nowhere"]);
    assert_eq!(code, 2);
}

const NO_MC: &str = r#"{
  "spaces": { "X": [["x", 0]], "W": [["w", 1]] },
  "operads": { "As": { "kind": "associative", "bound": 2 } },
  "cooperads": { "Ac": { "kind": "coassociative", "bound": 2, "graded": true } },
  "twisting": { "zero": { "kind": "zero", "cooperad": "Ac", "operad": "As" } },
  "algebras": { "A": { "kind": "associative", "operad": "As", "space": "W" } },
  "coalgebras": { "C": { "kind": "table", "cooperad": "Ac", "space": "X" } },
  "maps": { "g": { "source": "C", "target": "A", "degree": 1, "entries": [["w", "x", "1/2"]] } }
}"#;

#[test]
fn roundtrip_without_maurer_cartan_elements_passes_vacuously() {
    let path = temp_file("no-mc.json", NO_MC);
    let (code, out) = convkit(&["mc-roundtrip", &path]);
    assert_eq!(code, 0);
    assert!(out.contains("vacuous pass"));
}

#[test]
fn load_errors_locate_the_problem() {
    match Workspace::parse("{\n  \"spaces\": {\n    \"X\": [[\"x\", 0]],\n  }\n}") {
        Err(Error::ParseAt { line, .. }) => assert_eq!(line, 4),
        other => panic!("{other:?}"),
    }
    let dangling = NO_MC.replace(r#""cooperad": "Ac", "space": "X""#, r#""cooperad": "Missing", "space": "X""#);
    assert_eq!(Workspace::parse(&dangling).unwrap_err(), Error::Reference("Missing".into()));
    let twice = NO_MC.replace(r#""g": {"#, r#""A": {"#);
    assert!(matches!(Workspace::parse(&twice), Err(Error::Invalid(m)) if m.contains("defined twice")));
    let bad_scalar = NO_MC.replace("1/2", "1/0");
    assert!(Workspace::parse(&bad_scalar).is_err());
}

proptest! {
    #[test]
    fn scalars_survive_text(p in -1000i64..1000, q in 1i64..1000) {
        let x = ratio(p, q);
        prop_assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x);
    }
}

#[test]
fn decomposition_battery_runs_on_seeded_and_workspace_coalgebras() {
    let (code, out) = convkit(&["decomposition", "--max-arity", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("seed "));
    let (code, _) = convkit(&["decomposition", "builtin:kappa"]);
    assert_eq!(code, 0);
}
