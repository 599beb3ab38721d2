use std::path::PathBuf;

use symfan_cli::app::{run, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
use symfan_cli::scf::{parse_scf, print_scf, to_datum};

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name).to_string_lossy().into_owned()
}

fn symfan(args: &[&str]) -> (i32, String) {
    run(std::iter::once("symfan").chain(args.iter().copied()))
}

fn examples() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "scf"))
        .collect();
    files.sort();
    files
}

#[test]
fn examples_round_trip() {
    let files = examples();
    assert!(files.len() >= 10);
    for f in files {
        let text = std::fs::read_to_string(&f).unwrap();
        let doc = parse_scf(&text).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
        assert_eq!(print_scf(&doc), text, "{}", f.display());
        to_datum(&doc).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
    }
}

#[test]
fn verify_b2() {
    let (code, out) = symfan(&["verify", "--type", "B2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("2 entries, match"), "{out}");
}

#[test]
fn enumerate_f4_is_empty() {
    let (code, out) = symfan(&["enumerate", "--type", "F4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("0 entries"), "{out}");
}

#[test]
fn check_verdicts() {
    let (code, out) = symfan(&["check", &example("g2.scf")]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("smooth (Levi type A1, 1 indexing)"), "{out}");

    let (code, out) = symfan(&["check", &example("b2_bad.scf")]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("condition (ii) fails"), "{out}");

    let (code, out) = symfan(&["check", &example("b2_bad_iii.scf")]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("condition (iii) fails"), "{out}");

    let (code, out) = symfan(&["check", &example("bc2_exceptional.scf")]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("exceptional obstruction"), "{out}");
}

#[test]
fn completeness_and_picard() {
    let (code, out) = symfan(&["complete", &example("g2.scf")]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "complete\n"));
    let (code, out) = symfan(&["complete", &example("e6_incomplete.scf")]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.starts_with("not complete"), "{out}");
    let (code, out) = symfan(&["picard", &example("d5_two_orbit.scf")]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "picard rank 1\n"));
    let (code, out) = symfan(&["picard", &example("p1xp1.scf")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("picard rank 2"), "{out}");
}

#[test]
fn ample_two_orbit() {
    let f = example("a2_two_orbit.scf");
    let (code, out) = symfan(&["ample", &f, "--coeff", "D1=1", "--coeff", "D2=1", "--coeff", "E1=0"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("= -1 < 1 ="), "{out}");
    assert!(out.ends_with("ample\n"));
    let (code, out) = symfan(&["ample", &f, "--coeff", "D1=0", "--coeff", "D2=0", "--coeff", "E1=0"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.ends_with("not ample\n"), "{out}");
    let (code, out) = symfan(&["ample", &f, "--coeff", "D1=1", "--coeff", "D2=1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("E1"), "{out}");
}

#[test]
fn usage_errors() {
    assert_eq!(symfan(&["verify", "--type", "Q7"]).0, EXIT_USAGE);
    assert_eq!(symfan(&["enumerate", "--type", "D3"]).0, EXIT_USAGE);
    assert_eq!(symfan(&["check", "/nonexistent/file.scf"]).0, EXIT_USAGE);
    assert_eq!(symfan(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(symfan(&["verify"]).0, EXIT_USAGE);
    assert_eq!(symfan(&["--help"]).0, EXIT_OK);
}

#[test]
fn parse_errors_exit_with_usage() {
    let dir = std::env::temp_dir().join(format!("symfan-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.scf");
    std::fs::write(&f, "rootsystem A3\nlattice root\ncone\n  ray vec 1/2 1/3\nend\n").unwrap();
    let (code, out) = symfan(&["check", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("line 4"), "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn catalog_scf_output_parses() {
    let (code, out) = symfan(&["catalog", "--type", "D4", "--scf"]);
    assert_eq!(code, EXIT_OK);
    let docs: Vec<&str> = out.split("\n#").collect();
    assert_eq!(docs.len(), 3);
    for (i, d) in docs.iter().enumerate() {
        let text = if i == 0 { d.to_string() } else { format!("#{d}") };
        let doc = parse_scf(&text).unwrap();
        let (_, cones) = to_datum(&doc).unwrap();
        assert_eq!(cones.len(), 2);
    }
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["catalog", "--type", "A3"],
        vec!["enumerate", "--type", "D4"],
        vec!["verify", "--type", "C3"],
    ] {
        assert_eq!(symfan(&args), symfan(&args));
    }
    let f = example("a3_two_orbit.scf");
    assert_eq!(symfan(&["check", &f]), symfan(&["check", &f]));
}
