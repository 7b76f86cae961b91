//! The release gate: eight checks, one printed verdict line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! `ACCEPTANCE <id> <name>: PASS|FAIL` lines. Tolerances live in the
//! constants below; everything else is exact.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;
use tricolor::{
    gen_edge_subgraph, gen_stacked_triangulation, gen_wheel, is_3_colorable, oracle_3color,
    parse_dimacs, verify, Graph, OracleAnswer, ProofStatement, Seed, SetId, Verdict, VertexId,
    VerifyResult,
};

/// Wall-clock budget for solving the worked example.
const GOLDEN_EXAMPLE_BUDGET_MS: f64 = 1000.0;
/// Fitted steps-per-k ceiling for odd wheels.
const WHEEL_SLOPE_LIMIT: f64 = 1.1;
/// Allowed runtime growth factor when the triangulation size doubles.
const RUNTIME_GROWTH_LIMIT: f64 = 16.0;
/// Wall-clock budget for one solve run on the largest triangulation.
const LARGE_SOLVE_BUDGET_S: f64 = 5.0;
/// Floor for the measured baseline, so the growth ratio cannot blow up on
/// timer jitter at sub-microsecond runtimes.
const BASELINE_FLOOR_MS: f64 = 0.001;

fn report(id: u32, name: &str, body: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("ACCEPTANCE {id} {name}: PASS"),
        Err(panic) => {
            println!("ACCEPTANCE {id} {name}: FAIL");
            resume_unwind(panic);
        }
    }
}

/// The fixed thousand-instance corpus; kept textually in sync with the
/// library's pipeline suite, and pinned by `corpus_is_stable` there.
fn corpus() -> Vec<Graph> {
    (0..1000)
        .map(|i| {
            let step = (i / 3) as u32;
            match i % 3 {
                0 => gen_wheel(3 + step % 10).unwrap(),
                1 => gen_stacked_triangulation(4 + step % 17, Seed(1000 + i as u64)).unwrap(),
                _ => {
                    let base =
                        gen_stacked_triangulation(4 + step % 17, Seed(2000 + i as u64)).unwrap();
                    let keep = [0.5, 0.7, 0.9][(step % 3) as usize];
                    gen_edge_subgraph(&base, keep, Seed(3000 + i as u64)).unwrap()
                }
            }
        })
        .collect()
}

fn assert_proper(g: &Graph, coloring: &BTreeMap<VertexId, SetId>) {
    assert_eq!(coloring.len(), g.vertex_count() as usize);
    for &(u, v) in g.edges() {
        assert_ne!(coloring[&u], coloring[&v], "edge ({u}, {v}) is monochromatic");
    }
}

fn worked_example() -> Graph {
    Graph::new(
        19,
        [
            (1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (3, 5), (4, 5), (4, 6),
            (5, 6), (6, 7), (4, 7), (4, 18), (7, 18), (2, 19), (4, 19), (18, 19),
        ],
    )
    .unwrap()
}

fn mycielski() -> Graph {
    Graph::new(
        11,
        [
            (1, 2), (2, 3), (3, 4), (4, 5), (1, 5),
            (6, 2), (6, 5), (7, 1), (7, 3), (8, 2), (8, 4), (9, 3), (9, 5), (10, 4), (10, 1),
            (11, 6), (11, 7), (11, 8), (11, 9), (11, 10),
        ],
    )
    .unwrap()
}

#[test]
fn golden_worked_example() {
    report(1, "golden-worked-example", || {
        let g = worked_example();
        let started = Instant::now();
        let verdict = is_3_colorable(&g);
        let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
        let Verdict::No { certificate, root, .. } = verdict else {
            panic!("worked example must be refuted")
        };
        assert_eq!((root.a, root.b, root.c), (1, 2, 3));
        let inclusions: Vec<(VertexId, SetId)> = certificate
            .steps
            .iter()
            .map(|s| (s.included_vertex().unwrap(), s.target_set().unwrap()))
            .collect();
        let mut sorted = inclusions.clone();
        sorted.sort_unstable();
        assert_eq!(
            sorted,
            [(4, SetId::C), (5, SetId::B), (6, SetId::A), (18, SetId::A)],
            "depurated inclusions must be exactly 6→A, 5→B, 18→A, 4→C"
        );
        assert_eq!(
            certificate.contradiction,
            ProofStatement::Rho2Contradiction { x: 19, a: 18, b: 2, c: 4 },
            "contradiction at 19 citing one member of each set"
        );
        assert_eq!(verify(&g, &certificate.render_machine()), VerifyResult::Valid);
        assert!(
            elapsed_ms < GOLDEN_EXAMPLE_BUDGET_MS,
            "took {elapsed_ms:.3} ms, budget {GOLDEN_EXAMPLE_BUDGET_MS} ms"
        );
    });
}

#[test]
fn soundness_fuzz_corpus() {
    report(2, "soundness-fuzz-1000", || {
        let mut violations = 0usize;
        for (i, g) in corpus().iter().enumerate() {
            match is_3_colorable(g) {
                Verdict::No { certificate, .. } => {
                    if oracle_3color(g).unwrap() != OracleAnswer::NotColorable {
                        eprintln!("instance {i}: NO but oracle colors it");
                        violations += 1;
                    }
                    if verify(g, &certificate.render_machine()) != VerifyResult::Valid {
                        eprintln!("instance {i}: certificate rejected");
                        violations += 1;
                    }
                }
                Verdict::Yes { coloring, .. } => assert_proper(g, &coloring),
                Verdict::Undetermined { .. } => {}
            }
        }
        assert_eq!(violations, 0);
    });
}

/// Yields every single-token mutation of a machine certificate: numeric
/// tokens are incremented, set tokens are rotated A→B→C→A.
fn single_token_mutations(text: &str) -> Vec<String> {
    let lines: Vec<Vec<String>> =
        text.lines().map(|l| l.split(' ').map(str::to_owned).collect()).collect();
    let mut out = Vec::new();
    for (li, tokens) in lines.iter().enumerate() {
        for (ti, token) in tokens.iter().enumerate() {
            let replacement = if let Ok(v) = token.parse::<u64>() {
                (v + 1).to_string()
            } else {
                match token.as_str() {
                    "A" => "B".to_owned(),
                    "B" => "C".to_owned(),
                    "C" => "A".to_owned(),
                    _ => continue, // record tags stay as they are
                }
            };
            let mut mutated = lines.clone();
            mutated[li][ti] = replacement;
            out.push(
                mutated.into_iter().map(|t| t.join(" ")).collect::<Vec<_>>().join("\n"),
            );
        }
    }
    out
}

#[test]
fn certificate_tamper_suite() {
    report(3, "certificate-tamper-suite", || {
        let refuted: Vec<(Graph, String)> = corpus()
            .into_iter()
            .filter_map(|g| match is_3_colorable(&g) {
                Verdict::No { certificate, .. } => {
                    let text = certificate.render_machine();
                    Some((g, text))
                }
                _ => None,
            })
            .take(50)
            .collect();
        assert_eq!(refuted.len(), 50, "corpus must supply fifty refuted instances");
        let mut mutations = 0usize;
        let mut survivors = 0usize;
        for (g, text) in &refuted {
            for mutated in single_token_mutations(text) {
                mutations += 1;
                if verify(g, &mutated) == VerifyResult::Valid {
                    // A mutation may land on another valid proof — sound
                    // if and only if the graph really is not colorable.
                    survivors += 1;
                    assert_eq!(
                        oracle_3color(g).unwrap(),
                        OracleAnswer::NotColorable,
                        "a mutated certificate validated against a colorable graph"
                    );
                }
            }
        }
        assert!(mutations >= 50 * 8, "suite too small: {mutations} mutations");
        eprintln!("tamper suite: {mutations} mutations, {survivors} still-valid (all sound)");
    });
}

fn refutation_steps(g: &Graph) -> usize {
    match is_3_colorable(g) {
        Verdict::No { certificate, .. } => certificate.steps.len(),
        _ => panic!("instance must be refuted"),
    }
}

#[test]
fn proof_size_linearity() {
    report(4, "proof-size-linearity", || {
        for n in [50u32, 100, 200, 400] {
            let g = gen_stacked_triangulation(n, Seed(4000 + n as u64)).unwrap();
            let steps = refutation_steps(&g);
            assert!(steps <= (n as usize) - 3, "n={n}: {steps} steps");
        }
        let ks: Vec<u32> = (5..=51).step_by(2).collect();
        let mut points = Vec::new();
        for &k in &ks {
            let steps = refutation_steps(&gen_wheel(k).unwrap());
            assert!(steps <= k as usize, "wheel k={k}: {steps} steps");
            points.push((k as f64, steps as f64));
        }
        let count = points.len() as f64;
        let mean_k = points.iter().map(|p| p.0).sum::<f64>() / count;
        let mean_s = points.iter().map(|p| p.1).sum::<f64>() / count;
        let slope = points.iter().map(|p| (p.0 - mean_k) * (p.1 - mean_s)).sum::<f64>()
            / points.iter().map(|p| (p.0 - mean_k).powi(2)).sum::<f64>();
        assert!(
            slope <= WHEEL_SLOPE_LIMIT,
            "steps grow with slope {slope:.3} > {WHEEL_SLOPE_LIMIT}"
        );
    });
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tricolor"))
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "`tricolor {}` failed: {}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout).lines().map(str::to_owned).collect()
}

fn stable_stdout(out: &Output) -> Vec<String> {
    stdout_lines(out).into_iter().filter(|l| !l.starts_with("TIME_MS")).collect()
}

fn reported_time_ms(out: &Output) -> f64 {
    stdout_lines(out)
        .iter()
        .find_map(|l| l.strip_prefix("TIME_MS ").map(|v| v.parse().unwrap()))
        .expect("solve reports TIME_MS")
}

fn write_graph(dir: &Path, name: &str, g: &Graph) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, format!("{}\n", g.to_dimacs())).unwrap();
    path
}

/// Median of five timed solve runs, by the solver's own TIME_MS report.
fn median_solve_ms(input: &Path) -> f64 {
    let mut samples: Vec<f64> = (0..5)
        .map(|_| reported_time_ms(&run_ok(&["solve", input.to_str().unwrap()])))
        .collect();
    samples.sort_by(f64::total_cmp);
    samples[2]
}

#[test]
fn runtime_growth_sanity() {
    report(5, "runtime-growth-sanity", || {
        let dir = tempfile::tempdir().unwrap();
        let halved = gen_stacked_triangulation(250, Seed(250)).unwrap();
        let doubled = gen_stacked_triangulation(500, Seed(500)).unwrap();
        let halved_path = write_graph(dir.path(), "s250.col", &halved);
        let doubled_path = write_graph(dir.path(), "s500.col", &doubled);

        let wall = Instant::now();
        let out = run_ok(&["solve", doubled_path.to_str().unwrap()]);
        let wall_s = wall.elapsed().as_secs_f64();
        assert_eq!(stdout_lines(&out)[0], "RESULT NO");
        assert!(
            wall_s < LARGE_SOLVE_BUDGET_S,
            "n=500 solve took {wall_s:.2} s, budget {LARGE_SOLVE_BUDGET_S} s"
        );

        let base = median_solve_ms(&halved_path).max(BASELINE_FLOOR_MS);
        let big = median_solve_ms(&doubled_path);
        let ratio = big / base;
        assert!(
            ratio < RUNTIME_GROWTH_LIMIT,
            "time grew {ratio:.2}x from n=250 ({base:.3} ms) to n=500 ({big:.3} ms)"
        );
    });
}

#[test]
fn known_answer_battery() {
    report(6, "known-answer-battery", || {
        let k4 = gen_wheel(3).unwrap();
        let k3 = Graph::new(3, [(1, 2), (1, 3), (2, 3)]).unwrap();
        let chorded_square =
            Graph::new(4, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)]).unwrap();
        let fanned_hexagon = Graph::new(
            6,
            [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6), (1, 3), (1, 4), (1, 5)],
        )
        .unwrap();

        for (name, g) in [("K4", &k4), ("W5", &gen_wheel(5).unwrap()), ("W7", &gen_wheel(7).unwrap())] {
            let Verdict::No { certificate, .. } = is_3_colorable(g) else {
                panic!("{name} must be NO")
            };
            assert_eq!(verify(g, &certificate.render_machine()), VerifyResult::Valid, "{name}");
            assert_eq!(oracle_3color(g).unwrap(), OracleAnswer::NotColorable, "{name}");
        }
        for (name, g) in [
            ("W6", &gen_wheel(6).unwrap()),
            ("K3", &k3),
            ("chorded-square", &chorded_square),
            ("fanned-hexagon", &fanned_hexagon),
        ] {
            let Verdict::Yes { coloring, .. } = is_3_colorable(g) else {
                panic!("{name} must be YES")
            };
            assert_proper(g, &coloring);
            assert!(oracle_3color(g).unwrap().is_colorable(), "{name}");
        }

        // The incompleteness mode, demonstrated and contained: triangle-free
        // yet 4-chromatic stays undetermined, and only the compatibility
        // flag collapses that into a YES.
        let myc = mycielski();
        assert!(matches!(is_3_colorable(&myc), Verdict::Undetermined { .. }));
        assert_eq!(oracle_3color(&myc).unwrap(), OracleAnswer::NotColorable);
        let dir = tempfile::tempdir().unwrap();
        let myc_path = write_graph(dir.path(), "myc.col", &myc);
        let plain = run_ok(&["solve", myc_path.to_str().unwrap()]);
        assert_eq!(stdout_lines(&plain)[0], "RESULT UNDETERMINED");
        let compat = run_ok(&["solve", myc_path.to_str().unwrap(), "--paper-compat"]);
        assert_eq!(stdout_lines(&compat)[0], "RESULT YES");
    });
}

#[test]
fn deterministic_output() {
    report(7, "deterministic-output", || {
        let battery: Vec<(&str, Graph)> = vec![
            ("k4", gen_wheel(3).unwrap()),
            ("w5", gen_wheel(5).unwrap()),
            ("w6", gen_wheel(6).unwrap()),
            ("w7", gen_wheel(7).unwrap()),
            ("k3", Graph::new(3, [(1, 2), (1, 3), (2, 3)]).unwrap()),
            ("square", Graph::new(4, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)]).unwrap()),
            ("myc", mycielski()),
        ];
        let dir = tempfile::tempdir().unwrap();
        for (name, g) in &battery {
            let input = write_graph(dir.path(), &format!("{name}.col"), g);
            let first_cert = dir.path().join(format!("{name}.a.cert"));
            let second_cert = dir.path().join(format!("{name}.b.cert"));
            let first = run_ok(&[
                "solve", input.to_str().unwrap(), "--proof", first_cert.to_str().unwrap(),
            ]);
            let second = run_ok(&[
                "solve", input.to_str().unwrap(), "--proof", second_cert.to_str().unwrap(),
            ]);
            assert_eq!(stable_stdout(&first), stable_stdout(&second), "{name} stdout drifted");
            assert_eq!(
                first_cert.exists(),
                second_cert.exists(),
                "{name} certificate presence drifted"
            );
            if first_cert.exists() {
                assert_eq!(
                    std::fs::read(&first_cert).unwrap(),
                    std::fs::read(&second_cert).unwrap(),
                    "{name} certificate bytes drifted"
                );
            }
        }
    });
}

#[test]
fn dimacs_round_trip_corpus() {
    report(8, "dimacs-round-trip", || {
        for (i, g) in corpus().iter().enumerate() {
            let (parsed, _) = parse_dimacs(&g.to_dimacs()).unwrap();
            assert_eq!(&parsed, g, "instance {i}");
        }
    });
}
