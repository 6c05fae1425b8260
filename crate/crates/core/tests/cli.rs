use std::sync::Arc;

use ainfkit::cli::{self, ChangeOfRingsOutput, PotentialOutput, TelescopeOutput, TensorCheckOutput, VerifyOutput};
use ainfkit::graded_ainf::{verify_ainf, AInfStructure, BimoduleData, FunctorData, DEFAULT_BOUND};
use ainfkit::hochschild::{change_of_rings, telescope_filtration_report, BarComplex, BarReport, TelescopeData, DEFAULT_LENGTH_BOUND};
use ainfkit::qh_spec::{self, GenerationReport, QhReport, QuantumPresentation, ShQuotient, SpectrumDescriptor};
use ainfkit::toric_lg::{critical_points, family_polytope, jacobian_rank, superpotential, CriticalReport, Family, JacobianData};
use serde::de::DeserializeOwned;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn read(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(args.iter().copied(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json<T: DeserializeOwned>(args: &[&str], expected_code: i32) -> T {
    let (code, out, err) = run(args);
    assert_eq!(code, expected_code, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"))
}

#[test]
fn ainf_verify_round_trip() {
    let path = fixture("dual_numbers.json");
    let got: VerifyOutput = run_json(&["ainf", "verify", &path, "--bound", "4"], 0);
    let a = AInfStructure::from_json_str(&read("dual_numbers.json")).unwrap();
    assert_eq!(got, VerifyOutput { kind: "ainf".into(), ok: true, reports: vec![verify_ainf(&a, 4).unwrap()] });
}

#[test]
fn ainf_verify_detects_each_input_kind() {
    for (file, kind) in [
        ("dual_numbers_diagonal.json", "bimodule"),
        ("dual_numbers_identity_morphism.json", "bimodule_morphism"),
        ("diag_into_m2.json", "functor"),
    ] {
        let got: VerifyOutput = run_json(&["ainf", "verify", &fixture(file), "--bound", "4"], 0);
        assert_eq!(got.kind, kind);
        assert!(got.ok && got.reports.iter().all(|r| r.ok && r.bound == 4));
    }
}

#[test]
fn broken_structure_exits_one_with_violations() {
    let got: VerifyOutput = run_json(&["ainf", "verify", &fixture("broken.json")], 1);
    assert!(!got.ok);
    assert_eq!(got.reports[0].bound, DEFAULT_BOUND);
    assert!(!got.reports[0].violations.is_empty());
}

#[test]
fn malformed_input_exits_two() {
    for args in [
        vec!["ainf", "verify", "tests/fixtures/does-not-exist.json"],
        vec!["ainf", "verify", &fixture("malformed.json")],
        vec!["telescope", &fixture("telescope_not_chain_map.json")],
        vec!["hh", "ranks", &fixture("dual_numbers.json")],
        vec!["qh", "presentation", "--family", "bundle", "-m", "3", "-k", "2"],
        vec!["qh", "sh", "--family", "projective", "-m", "2"],
    ] {
        let (code, out, err) = run(&args);
        assert_eq!(code, cli::EXIT_INPUT, "{args:?}");
        assert!(out.is_empty() && err.starts_with("error:"), "{args:?}: {err}");
    }
}

#[test]
fn bad_flags_exit_sixty_four() {
    for args in [
        vec!["frobnicate"],
        vec!["ainf", "verify", "x.json", "--bound", "0"],
        vec!["--format", "yaml", "qh", "spectrum", "--family", "projective", "-m", "1"],
        vec!["qh", "spectrum", "--family", "projective"],
        vec!["qh", "spectrum", "--family", "projective", "-m", "2", "-k", "1"],
        vec!["toric", "crit", "--family", "projective", "-m", "1", "--t", "1/100"],
        vec!["toric", "crit", "--family", "projective", "-m", "1", "--t", "one"],
        vec!["toric", "potential"],
    ] {
        assert_eq!(run(&args).0, cli::EXIT_USAGE, "{args:?}");
    }
}

#[test]
fn hh_ranks_round_trip() {
    let got: BarReport = run_json(&["hh", "ranks", &fixture("dual_numbers_diagonal.json"), "--bound", "3"], 0);
    let m = Arc::new(BimoduleData::from_json_str(&read("dual_numbers_diagonal.json")).unwrap());
    assert_eq!(got, BarComplex::new(m.clone(), 3).unwrap().report().unwrap());
    let default: BarReport = run_json(&["hh", "ranks", &fixture("dual_numbers_diagonal.json")], 0);
    assert_eq!(default.length_bound, DEFAULT_LENGTH_BOUND);
}

#[test]
fn hh_change_of_rings_round_trip() {
    let got: ChangeOfRingsOutput =
        run_json(&["hh", "change-of-rings", &fixture("diag_into_m2.json"), &fixture("m2_diagonal.json"), "--bound", "2"], 0);
    let phi = FunctorData::from_json_str(&read("diag_into_m2.json")).unwrap();
    let n = Arc::new(BimoduleData::from_json_str(&read("m2_diagonal.json")).unwrap());
    let ch = change_of_rings(&phi, n, 2).unwrap();
    let expected = ChangeOfRingsOutput {
        length_bound: 2,
        pulled_back_dim: ch.pulled_back.dim(),
        residual_entries: 0,
        chain_map: true,
        source: ch.source.report().unwrap(),
        target: ch.target.report().unwrap(),
    };
    assert_eq!(got, expected);
}

#[test]
fn hh_tensor_check_round_trip() {
    let got: TensorCheckOutput = run_json(
        &["hh", "tensor-check", &fixture("upper_triangular_yoneda_left.json"), &fixture("upper_triangular_yoneda_right.json"), "--bound", "3"],
        0,
    );
    assert!(got.intertwines && got.ranks_agree && got.residual_entries == 0);
    assert_eq!(got.bar_ranks, got.tensor_ranks);
    assert_eq!(got.length_bound, 3);
}

#[test]
fn telescope_round_trip() {
    let got: TelescopeOutput = run_json(&["telescope", &fixture("telescope.json")], 0);
    let t = TelescopeData::from_json_str(&read("telescope.json")).unwrap();
    assert_eq!(got.filtration, telescope_filtration_report(&t).unwrap());
    assert!(got.ok && got.square_zero);
    assert_eq!((got.stages, got.telescope_dim), (2, 9));
}

#[test]
fn toric_potential_round_trip() {
    let by_file: PotentialOutput = run_json(&["toric", "potential", &fixture("projective_plane.json")], 0);
    let by_family: PotentialOutput = run_json(&["toric", "potential", "--family", "projective", "-m", "2"], 0);
    let w = superpotential(&family_polytope(Family::Projective { m: 2 }).unwrap());
    assert_eq!(by_family.terms, w.terms());
    assert_eq!(by_family.superpotential, w.to_string());
    assert_eq!(by_file.terms, by_family.terms);
    assert!(by_family.has_interior && by_family.delzant.passed);
}

#[test]
fn toric_crit_closed_form() {
    let got: CriticalReport = run_json(&["toric", "crit", "--family", "projective", "-m", "1"], 0);
    let w = superpotential(&family_polytope(Family::Projective { m: 1 }).unwrap());
    assert_eq!(got, CriticalReport::build(&w, critical_points(&w, None).unwrap()));
    assert_eq!(got.points.len(), 2);
    let mut xs: Vec<f64> = got.points.iter().map(|p| p.coordinates[0].coefficient.approx[0]).collect();
    xs.sort_by(f64::total_cmp);
    assert_eq!(xs, vec![-1.0, 1.0]);
    assert!(got.points.iter().all(|p| p.coordinates[0].exponent == ainfkit::novikov::Exponent::new(1, 2)));
}

#[test]
fn toric_jac_round_trip() {
    let got: JacobianData = run_json(&["toric", "jac", "--family", "bundle", "-m", "3", "-k", "1", "--t", "2", "--t", "5/3"], 0);
    let w = superpotential(&family_polytope(Family::NegativeLineBundle { m: 3, k: 1 }).unwrap());
    assert_eq!(got, jacobian_rank(&w, &["2".parse().unwrap(), "5/3".parse().unwrap()]).unwrap());
    assert_eq!(got.rank, 3);
}

#[test]
fn qh_subcommands_round_trip() {
    let fam = Family::NegativeLineBundle { m: 4, k: 2 };
    let args = ["--family", "bundle", "-m", "4", "-k", "2"];
    let with = |sub: &'static str| -> Vec<&'static str> { [&["qh", sub][..], &args[..]].concat() };
    let p = qh_spec::presentation(fam).unwrap();
    let op = qh_spec::c1_operator(&p);

    let got: QuantumPresentation = run_json(&with("presentation"), 0);
    assert_eq!(got, p);
    let got: SpectrumDescriptor = run_json(&with("spectrum"), 0);
    assert_eq!(got, qh_spec::spectrum(&op));
    let got: ShQuotient = run_json(&with("sh"), 0);
    assert_eq!(got, qh_spec::sh_quotient(&p, &op).unwrap());

    let pipe = qh_spec::run_pipeline(fam, &qh_spec::default_specializations()).unwrap();
    let got: QhReport = run_json(&with("compare"), 0);
    assert_eq!(got, pipe.report());
    let got: GenerationReport = run_json(&with("generation"), 0);
    assert_eq!(got, pipe.generation);
}

#[test]
fn qh_compare_bundle_three_one() {
    let got: QhReport = run_json(&["qh", "compare", "--family", "bundle", "-m", "3", "-k", "1"], 0);
    assert_eq!(got.sh_rank, Some(3));
    assert!(got.spectrum_match);
    assert_eq!(QhReport::from_json_str(&got.to_json_string()).unwrap(), got);
}

#[test]
fn qh_compare_projective() {
    let got: QhReport = run_json(&["qh", "compare", "--family", "projective", "-m", "2"], 0);
    assert_eq!((got.qh_rank, got.sh_rank, got.jacobian_rank), (3, None, 3));
    assert!(got.spectrum_match);
}

#[test]
fn identical_inputs_give_identical_bytes() {
    for args in [
        vec!["toric", "crit", &fixture("projective_plane.json"), "--t", "1/1000", "--seed", "7"],
        vec!["qh", "compare", "--family", "bundle", "-m", "5", "-k", "2"],
        vec!["hh", "ranks", &fixture("dual_numbers_diagonal.json"), "--bound", "3"],
    ] {
        let (c1, a, _) = run(&args);
        let (c2, b, _) = run(&args);
        assert_eq!((c1, &a), (c2, &b), "{args:?}");
    }
}

#[test]
fn numeric_branch_needs_seed_and_reports_points() {
    let path = fixture("projective_plane.json");
    let got: CriticalReport = run_json(&["toric", "crit", &path, "--t", "1/1000", "--seed", "7"], 0);
    assert_eq!(got.points.len(), 3);
    let (code, _, err) = run(&["toric", "crit", &path, "--t", "1/1000"]);
    assert_eq!(code, cli::EXIT_USAGE);
    assert!(err.contains("--seed"));
}

#[test]
fn text_format_is_line_oriented() {
    let (code, out, _) = run(&["--format", "text", "qh", "compare", "--family", "bundle", "-m", "3", "-k", "1"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "sh_rank: 3"));
    assert!(out.lines().any(|l| l == "spectrum_match: true"));
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["ainf", "hh", "telescope", "toric", "qh"] {
        assert!(out.contains(sub));
    }
}
