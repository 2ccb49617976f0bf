//! End-to-end command tests through the captured-output entry point.

use grassmat_cli::{run_command, RunOutput};

fn run(args: &[&str]) -> RunOutput {
    let argv = std::iter::once("grassmat").chain(args.iter().copied());
    run_command(argv)
}

#[test]
fn embed_ct_generator_matches_displayed_matrix() {
    let out = run(&["embed", "--m", "2", "--rep", "ct", "--element", "v1"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "n=2 ring=sqfree 2\nz1 ; 0\n0 ; -z1\n");
    let out = run(&["embed", "--m", "2", "--rep", "ct", "--element", "v2"]);
    assert_eq!(out.stdout, "n=2 ring=sqfree 2\n0 ; z2\nz2 ; 0\n");
}

#[test]
fn embed_output_is_a_parsable_matrix_file() {
    let out = run(&["embed", "--m", "3", "--rep", "ct", "--element", "1 - 2/3*v1*v2 + v3"]);
    assert_eq!(out.code, 0);
    let parsed = grassmat_cli::parse::parse_matrix(&out.stdout).unwrap();
    match parsed {
        grassmat_cli::parse::ParsedMatrix::SqFree(m) => assert_eq!(m.n(), 4),
        other => panic!("expected sqfree matrix, got {other:?}"),
    }
}

#[test]
fn bounds_output_and_exit() {
    let out = run(&["bounds", "--m", "3"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "min_t_commutative=2\nmin_t_over_K=5\nct_size=4\nregular_size=8\n"
    );
    // m = 1 is outside the stated bounds.
    let out = run(&["bounds", "--m", "1"]);
    assert_eq!(out.code, 1);
}

#[test]
fn verify_ch_prints_certificates_and_succeeds() {
    let out = run(&[
        "verify", "ch", "--m", "3", "--n", "2", "--trials", "5", "--seed", "7",
    ]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    let cert_lines: Vec<&str> = out
        .stdout
        .lines()
        .filter(|l| l.starts_with("trial="))
        .collect();
    assert_eq!(cert_lines.len(), 5);
    for line in cert_lines {
        assert!(line.contains("degree=8"), "line: {line}");
        assert!(line.ends_with("residual=0"), "line: {line}");
    }
}

#[test]
fn verify_ct_reports_the_non_ct_witness() {
    let out = run(&["verify", "ct", "--rep", "e3demo"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("NOT constant trace"));
    assert!(out.stdout.contains("witness = v1*v2*v3"));
    assert!(out.stdout.contains("trace = 6*x*y*z"));

    let out = run(&["verify", "ct", "--rep", "ct", "--m", "3"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("constant trace"));
}

#[test]
fn verify_standard_holds_and_counterexample_exits() {
    let holds = run(&[
        "verify", "standard", "--m", "2", "--degree", "4", "--trials", "10", "--seed", "1",
    ]);
    assert_eq!(holds.code, 0);
    assert!(holds.stdout.contains("holds on 10 samples"));

    let refuted = run(&[
        "verify", "standard", "--m", "3", "--degree", "3", "--trials", "25", "--seed", "1",
    ]);
    assert_eq!(refuted.code, 1);
    assert!(refuted.stdout.contains("counterexample"));
}

#[test]
fn verify_hom_across_reps() {
    for rep in ["ct", "regular", "e3demo"] {
        let mut args = vec!["verify", "hom", "--rep", rep, "--trials", "10"];
        if rep != "e3demo" {
            args.extend(["--m", "3"]);
        }
        let out = run(&args);
        assert_eq!(out.code, 0, "rep {rep}: {}", out.stderr);
        assert!(out.stdout.contains("holds on 10 random pairs"));
    }
    let out = run(&["verify", "hom", "--rep", "quaternion", "--trials", "10"]);
    assert_eq!(out.code, 0);
}

#[test]
fn remark35_confirms_impossibility_with_exit_1() {
    let out = run(&["remark35"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("A^2 = 2*v1*v2*v3"));
    assert!(out.stdout.contains("verdict: unsolvable"));
    assert!(out.stdout.contains("coefficient of v1*v2*v3: 2 = 0"));
}

#[test]
fn charpoly_on_matrix_files() {
    let dir = std::env::temp_dir();
    let grass = dir.join("grassmat_cli_test_grassmann.txt");
    std::fs::write(&grass, "n=1 ring=grassmann 2\n1 + v1\n").unwrap();
    let out = run(&["charpoly", "--matrix", grass.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("degree=2"));
    assert!(out.stdout.contains("coeffs=[1, -2, 1]"));
    assert!(out.stdout.contains("residual=0"));

    let rat = dir.join("grassmat_cli_test_rational.txt");
    std::fs::write(&rat, "n=2 ring=rational\n0 ; 1\n-1 ; 0\n").unwrap();
    let out = run(&["charpoly", "--matrix", rat.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "degree=2\ncoeffs=[1, 0, 1]\n");

    // A square-free matrix with non-scalar power traces is a negative
    // verdict, not a usage error.
    let sq = dir.join("grassmat_cli_test_sqfree.txt");
    std::fs::write(&sq, "n=1 ring=sqfree 1\nz1\n").unwrap();
    let out = run(&["charpoly", "--matrix", sq.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("non-constant trace"));
}

#[test]
fn mul_applies_anticommutation() {
    let out = run(&["mul", "--m", "2", "--element", "v2", "--element", "v1"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "-v1*v2\n");
    let out = run(&["mul", "--m", "2", "--ring", "sqfree", "--element", "z1", "--element", "z1"]);
    assert_eq!(out.stdout, "0\n");
}

#[test]
fn skew_commands() {
    let out = run(&["skew", "mu", "--m", "2", "--element", "0", "--element", "1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("(1)*z"));
    let out = run(&["skew", "iso", "--m", "2", "--element", "v1", "--element", "1 + v2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.ends_with("->  v1 + v3 + v2*v3\n"));
    let out = run(&["skew", "demo43", "--trials", "5", "--seed", "2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("trace = (a + b + c)"));
    assert!(out.stdout.contains("(a)*z ; 0 ; (c)"));
}

#[test]
fn quaternion_embedding_layout() {
    let out = run(&["embed", "--rep", "quaternion", "--element", "1 + 2*v1 + 3*v2 + 4*v3"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "n=4 ring=rational\n1 ; 2 ; 3 ; 4\n-2 ; 1 ; -4 ; 3\n-3 ; 4 ; 1 ; -2\n-4 ; -3 ; 2 ; 1\n"
    );
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["embed", "--m", "2", "--rep", "ct", "--element", "v3"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("generator index out of range"));

    let out = run(&["mul", "--m", "2", "--element", "v1"]);
    assert_eq!(out.code, 2);

    let out = run(&["frobnicate"]);
    assert_eq!(out.code, 2);

    let out = run(&["embed", "--m", "2", "--rep", "ct"]);
    assert_eq!(out.code, 2);
}

#[test]
fn help_exits_0() {
    let out = run(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("Usage"));
}

#[test]
fn identical_argv_and_seed_give_identical_bytes() {
    let args = [
        "verify", "ch", "--m", "2", "--n", "2", "--trials", "3", "--seed", "42",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a, b);
    let json_args = [
        "verify", "standard", "--m", "2", "--degree", "4", "--trials", "5", "--seed", "9",
        "--json",
    ];
    assert_eq!(run(&json_args), run(&json_args));
}

#[test]
fn json_matrix_shape() {
    let out = run(&["embed", "--m", "2", "--rep", "ct", "--element", "v1*v2", "--json"]);
    assert_eq!(out.code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc["n"], 2);
    assert_eq!(doc["ring"], "sqfree 2");
    assert_eq!(doc["entries"][0][1][0]["monomial"], serde_json::json!([1, 2]));
    assert_eq!(doc["entries"][0][1][0]["coeff"], "1");
    assert_eq!(doc["entries"][1][0][0]["coeff"], "-1");
    assert_eq!(doc["entries"][0][0], serde_json::json!([]));
}

#[test]
fn print_parse_round_trip_on_random_elements() {
    use grassmat::ring::Ring;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5150);
    for _ in 0..50 {
        let ring = grassmat::grassmann::GrassmannRing::new(3).unwrap();
        let g = ring.sample(&mut rng, 9);
        let printed = g.to_string();
        assert_eq!(grassmat_cli::parse::parse_grassmann(&printed, 3).unwrap(), g);

        let sring = grassmat::quotient::SquareFreeRing::new(3).unwrap();
        let p = sring.sample(&mut rng, 9);
        assert_eq!(
            grassmat_cli::parse::parse_sqfree(&sring.render(&p), 3).unwrap(),
            p
        );

        let field = grassmat::ring::RationalField;
        let c = field.sample(&mut rng, 1_000_000);
        assert_eq!(
            grassmat_cli::parse::parse_rational(&c.to_string()).unwrap(),
            c
        );
    }
}
