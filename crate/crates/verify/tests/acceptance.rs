//! Acceptance criteria, one line each. Runs without the test harness so the
//! lines are always printed; the process fails if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use brinv_verify::{run_suite, SuiteOptions, SuiteReport};

struct Outcome {
    pass: bool,
    detail: String,
}

fn suite(name: &str, opts: SuiteOptions) -> SuiteReport {
    run_suite(name, &opts).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn clean(r: &SuiteReport, checks: &[&str]) -> bool {
    r.budget_exceeded.is_none() && r.failures_of("error") == 0 && checks.iter().all(|c| r.failures_of(c) == 0)
}

fn describe(r: &SuiteReport) -> String {
    let mut s = format!("{}: {} cases, {} failures, {} ms", r.suite, r.cases, r.failure_count, r.elapsed_ms);
    if let Some(f) = r.failures.first() {
        s.push_str(&format!("; first failure [{}]", f.check));
    }
    if let Some(b) = &r.budget_exceeded {
        s.push_str(&format!("; budget: {b}"));
    }
    s
}

fn within(r: &SuiteReport, limit: Duration) -> bool {
    Duration::from_millis(r.elapsed_ms) < limit
}

fn main() -> ExitCode {
    let start = Instant::now();
    let default = SuiteOptions::default;
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();

    let ob = suite("openbook_regression", default());
    let c1 = ["7", "8", "13"].iter().all(|n| {
        ["glb", "oracle", "glb_is_root", "no_square", "edges_present"]
            .iter()
            .all(|c| ob.failures_of(&format!("open_book_{n}_{c}")) == 0)
    }) && ob.failures_of("golden_bytes") == 0
        && clean(&ob, &[]);
    results.push((
        1,
        "open-book glb involves 7 / 8 / 13, exhaustive oracle finds only the root",
        Outcome {
            pass: c1 && within(&ob, Duration::from_secs(10)),
            detail: format!(
                "involves {} / {} / {}; {}",
                ob.stat("open_book_7_involves"),
                ob.stat("open_book_8_involves"),
                ob.stat("open_book_13_involves"),
                describe(&ob)
            ),
        },
    ));
    let c2 = [
        "open_book_7_gamma",
        "open_book_7_isolated",
        "open_book_7_shape",
        "open_book_7_choice",
        "open_book_7_star",
    ]
    .iter()
    .all(|c| ob.failures_of(c) == 0);
    results.push((
        2,
        "open-book graph: 7 edges, one isolated vertex, middle edge {2,5} chosen",
        Outcome {
            pass: c2 && clean(&ob, &[]),
            detail: describe(&ob),
        },
    ));
    let c3 = ["staircase_length", "staircase_glueable", "staircase_local_max", "staircase_choice"]
        .iter()
        .all(|c| ob.failures_of(c) == 0);
    results.push((
        3,
        "staircase calculus: length 2, glueable {1,2} and {5,6}, all but 4 locally maximal",
        Outcome {
            pass: c3 && clean(&ob, &[]),
            detail: describe(&ob),
        },
    ));

    let s2 = |max| SuiteOptions {
        s: Some(2),
        max_size: Some(max),
        ..default()
    };
    let tec2a = suite("tec2a", s2(7));
    let tec2 = suite("tec2", s2(7));
    results.push((
        4,
        "s=2, |Y| <= 7 exhaustive: adjacent edges differ in colour; hypotheses give a square with glb in C_4",
        Outcome {
            pass: tec2a.pass && tec2.pass,
            detail: format!(
                "{}; {}; {} adjacent pairs, {} hypotheses met",
                describe(&tec2a),
                describe(&tec2),
                tec2a.stat("adjacent_pairs"),
                tec2.stat("hypothesis_met")
            ),
        },
    ));

    let graphs = suite(
        "graphs",
        SuiteOptions {
            s: Some(3),
            ..default()
        },
    );
    results.push((
        5,
        "s=3 star-components are edge/square/open book/cube; non-book glbs on the component and in C_8",
        Outcome {
            pass: graphs.pass,
            detail: format!(
                "{}; cubes {}, open books {}, squares {}",
                describe(&graphs),
                graphs.stat("shape_cube"),
                graphs.stat("shape_open-book"),
                graphs.stat("shape_square")
            ),
        },
    ));

    let chains = |s: u8| SuiteOptions {
        samples: Some(10_000),
        max_size: Some(if s == 3 { 9 } else { 8 }),
        ..default()
    };
    let p2 = suite("pushing_2v", chains(2));
    let p3 = suite("pushing_3v", chains(3));
    let cert = ["above_bottom", "bound", "bound_value", "order_reversal", "parts_disjoint"];
    results.push((
        6,
        "10,000 chains per s: A_t <= M, involves within max(4t,2) / max(8t,2), order reversal, disjoint N_i",
        Outcome {
            pass: clean(&p2, &cert) && clean(&p3, &cert) && p2.cases == 10_000 && p3.cases == 10_000,
            detail: format!("{}; {}", describe(&p2), describe(&p3)),
        },
    ));

    let conn = suite(
        "connectivity_scan",
        SuiteOptions {
            s: Some(2),
            ..default()
        },
    );
    results.push((
        7,
        "beta_0(K_Y) = 1 for every s=2 pattern with |Y| = 4; beta_0 = 4 for |Y| = 2",
        Outcome {
            pass: clean(&conn, &["beta0_size4", "beta0_size2", "boundary_squares_to_zero"])
                && conn.stat("size4_patterns") > 0
                && within(&conn, Duration::from_secs(300)),
            detail: format!(
                "{}; {} patterns of size 4, {} slice vertices",
                describe(&conn),
                conn.stat("size4_patterns"),
                conn.stat("size4_vertices")
            ),
        },
    ));
    results.push((
        8,
        "nu_0(0) = 4, mu_4(0) = 8, alpha(1) = 18, recurrence for r <= 8, t <= 4",
        Outcome {
            pass: clean(&conn, &["nu_0_0", "mu_4_0", "alpha_1", "recurrence"]),
            detail: describe(&conn),
        },
    ));

    let group = suite("group_axioms", default());
    let canonical = suite("fragment_canonical", default());
    let size_law_everywhere = [&ob, &tec2a, &tec2, &graphs, &p2, &p3, &conn, &group, &canonical]
        .iter()
        .all(|r| r.failures_of("size_law") == 0);
    results.push((
        9,
        "size law, alpha-commutation to depth 3, group axioms on 1,000 triples, stabilizers for |Y| <= 4",
        Outcome {
            pass: group.pass && canonical.pass && size_law_everywhere,
            detail: format!("{}; {}", describe(&group), describe(&canonical)),
        },
    ));

    let glb = suite("glb_laws", default());
    let lub = suite("lub_minimality", default());
    results.push((
        10,
        "greedy glb = interval maximum, lub = minimal upper bound (|Y| <= 6 for s=2, <= 5 for s=3)",
        Outcome {
            pass: glb.pass && lub.pass,
            detail: format!("{}; {}", describe(&glb), describe(&lub)),
        },
    ));

    let mut all = true;
    for (n, what, o) in &results {
        all &= o.pass;
        println!(
            "criterion {n:>2}: {} | {what} | {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria pass ({:.1} s)",
        results.iter().filter(|r| r.2.pass).count(),
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
