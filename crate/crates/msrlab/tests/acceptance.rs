//! Acceptance suite: one test per release criterion, each printing a
//! single CRITERION line so the gate is auditable from test output.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use msrlab::bounds::{check_trace, refute_rank, tree_size, RefuteBudget, RefuteOutcome};
use msrlab::cert::{load_corpus, verify_corpus, Certificate};
use msrlab::exec::ExecMode;
use msrlab::graph::Graph;

/// The corpus rows carrying a prose lower-bound argument, with the rank
/// each argument refutes (one below the claimed msr).
const ARGUED_REFUTATIONS: &[(&str, usize)] = &[
    ("G706", 4),
    ("G710", 4),
    ("G946", 3),
    ("G998", 3),
    ("G1006", 3),
    ("G1065", 3),
    ("G1069", 3),
    ("G1084", 3),
    ("G1091", 3),
    ("G1092", 3),
    ("G1097", 3),
    ("G1101", 3),
    ("G1145", 3),
    ("G1154", 3),
    ("G1222", 2),
    ("G1224", 2),
    ("G1228", 2),
    ("G1231", 2),
    ("G1233", 2),
];

fn corpus_graphs(certs: &[Certificate]) -> BTreeMap<String, Graph> {
    certs
        .iter()
        .map(|c| (c.label.clone(), c.graph()))
        .collect()
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus() -> Vec<Certificate> {
    load_corpus(&corpus_dir()).expect("corpus loads")
}

/// Criterion 1: every corpus certificate verifies, except that a failure is
/// tolerated exactly when it is traced to a discrepancy in the stated A
/// (surfaced in the cross-check with the exact entries). Under 5 seconds.
#[test]
fn criterion_1_corpus_verification() {
    let started = Instant::now();
    let certs = corpus();
    let reports = verify_corpus(&certs, ExecMode::default());
    let elapsed = started.elapsed();

    let mut unexplained = Vec::new();
    let mut explained = Vec::new();
    for report in &reports {
        // rank and PSD must hold unconditionally; B is authoritative.
        assert!(report.rank_ok, "{}: rank check failed", report.label);
        assert!(report.psd_ok, "{}: psd self-check failed", report.label);
        if !report.verdict.passed() {
            if report.a_crosscheck.mismatches().is_empty() {
                unexplained.push(report.label.clone());
            } else {
                explained.push(report.label.clone());
            }
        }
    }
    assert!(
        unexplained.is_empty(),
        "failures not traced to a stated-A discrepancy: {unexplained:?}"
    );
    // The certificates whose stated A disagrees with gram(B) about the
    // pattern itself (asymmetric or zero-crossing entries) are fixed data.
    assert_eq!(
        explained,
        ["G710", "G817", "G1195", "G1210", "G1228"],
        "stated-A pattern discrepancies changed"
    );
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "corpus verification took {elapsed:?}"
    );
    println!(
        "CRITERION 1 PASS: {} certificates verified in {elapsed:?}; {} fail only against their stated A: {explained:?}",
        reports.len(),
        explained.len(),
    );
}

/// Criterion 2: computed tree sizes against the stated ones, with every
/// mismatch reported as an erratum. The transcribed statements were
/// cross-checked against the printed matrices, so more than two mismatches
/// indicate the statements themselves under-count, not a transcription slip.
#[test]
fn criterion_2_tree_sizes() {
    let started = Instant::now();
    let certs = corpus();

    // Transcription spot checks: the stated values as shipped.
    let stated: BTreeMap<&str, usize> = certs
        .iter()
        .filter_map(|c| c.claimed_tree_size.map(|t| (c.label.as_str(), t)))
        .collect();
    for (label, expect) in [
        ("G706", 5),
        ("G946", 3),
        ("G998", 3),
        ("G1154", 4),
        ("G1211", 3),
        ("G1230", 3),
    ] {
        assert_eq!(stated.get(label), Some(&expect), "stated tree size of {label}");
    }

    let mut errata = Vec::new();
    let mut stated_count = 0usize;
    for cert in &certs {
        let Some(claimed) = cert.claimed_tree_size else {
            continue;
        };
        stated_count += 1;
        let g = cert.graph();
        let computed = tree_size(&g).expect("within gate");
        if computed != claimed {
            errata.push((cert.label.clone(), claimed, computed));
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "tree sizes took {elapsed:?}");

    for (label, claimed, computed) in &errata {
        println!(
            "erratum: {label} states tree size {claimed} but the pattern contains an induced tree on {computed} vertices"
        );
    }
    if errata.len() > 2 {
        println!(
            "CRITERION 2 FAIL: {} of {stated_count} stated tree sizes disagree with exhaustive enumeration",
            errata.len()
        );
    }
    assert!(
        errata.len() <= 2,
        "{} of {} stated tree sizes disagree with exhaustive enumeration (every one an under-count on an argued row); \
         the statements, not the transcription, are off: {:?}",
        errata.len(),
        stated_count,
        errata,
    );
    println!(
        "CRITERION 2 PASS: {stated_count} stated tree sizes checked in {elapsed:?}; {} errata",
        errata.len()
    );
}

/// Criterion 3: the engine reproduces every prose lower-bound argument,
/// each trace replays independently, and each refutation is fast.
#[test]
fn criterion_3_refutation_reproduction() {
    let certs = corpus();
    let graphs = corpus_graphs(&certs);

    let argued: Vec<&str> = certs
        .iter()
        .filter(|c| c.argued_lower_bound)
        .map(|c| c.label.as_str())
        .collect();
    let expected: Vec<&str> = ARGUED_REFUTATIONS.iter().map(|(l, _)| *l).collect();
    assert_eq!(argued, expected, "set of argued corpus rows");

    let mut slowest = Duration::ZERO;
    for (label, k) in ARGUED_REFUTATIONS {
        let g = &graphs[*label];
        let started = Instant::now();
        let outcome = refute_rank(g, *k, &RefuteBudget::default()).expect("preconditions hold");
        let elapsed = started.elapsed();
        slowest = slowest.max(elapsed);
        match outcome {
            RefuteOutcome::Refuted(trace) => {
                assert!(check_trace(g, &trace), "{label}: trace fails replay");
                assert_eq!(trace.hypothesis_k, *k);
            }
            RefuteOutcome::Unknown => panic!("{label}: rank {k} not refuted within default budget"),
        }
        assert!(
            elapsed.as_secs_f64() < 1.0,
            "{label}: refutation took {elapsed:?}"
        );
    }
    println!(
        "CRITERION 3 PASS: {} argued refutations reproduced and replayed; slowest {slowest:?}",
        ARGUED_REFUTATIONS.len()
    );
}

/// Criterion 4: at the claimed rank itself the engine must answer Unknown
/// for every corpus graph, since a verified certificate of that rank exists.
#[test]
fn criterion_4_soundness_guard() {
    let started = Instant::now();
    let certs = corpus();
    let mut failures = Vec::new();
    for cert in &certs {
        let g = cert.graph();
        match refute_rank(&g, cert.claimed_msr, &RefuteBudget::default()) {
            Ok(RefuteOutcome::Unknown) => {}
            Ok(RefuteOutcome::Refuted(_)) => failures.push(cert.label.clone()),
            Err(e) => panic!("{}: {e}", cert.label),
        }
    }
    let elapsed = started.elapsed();
    assert!(
        failures.is_empty(),
        "claimed ranks wrongly refuted: {failures:?}"
    );
    println!(
        "CRITERION 4 PASS: {} graphs answer Unknown at their certified rank in {elapsed:?}",
        certs.len()
    );
}

/// The shipped seed list: search configurations under which the search is
/// known to reproduce an upper-bound certificate at the claimed rank.
/// The per-restart shuffle matters: a few corpus representations are
/// non-generic and the fixed degree order can funnel every restart into
/// the same dead end.
const PINNED_SEARCHES: &[(&str, usize, u64)] = &[
    ("K7", 1, 0),
    ("G1211", 2, 0),
    ("G1000", 3, 0),
    ("G817", 4, 0),
    ("G706", 5, 0),
];

/// Criterion 6: the pinned searches all succeed and their certificates
/// verify, within a minute overall.
#[test]
fn criterion_6_search_reproduction() {
    use msrlab::cert::verify_certificate;
    use msrlab::search::{search_representation, SearchConfig, SearchOutcome, VertexOrder};

    let started = Instant::now();
    let certs = corpus();
    let graphs = corpus_graphs(&certs);
    for (label, k, seed) in PINNED_SEARCHES {
        let g = match *label {
            "K7" => Graph::complete(7).expect("complete"),
            other => graphs[other].clone(),
        };
        let cfg = SearchConfig {
            seed: *seed,
            vertex_order: VertexOrder::ShuffledPerRestart,
            ..SearchConfig::default()
        };
        let outcome =
            search_representation(&g, *k, &cfg, ExecMode::default()).expect("preconditions hold");
        let cert = match outcome {
            SearchOutcome::Found(cert) => cert,
            SearchOutcome::NotFound => panic!("{label}: no rank-{k} representation found"),
        };
        assert_eq!(cert.claimed_msr, *k, "{label}");
        assert!(
            verify_certificate(&cert).verdict.passed(),
            "{label}: emitted certificate fails verification"
        );
        assert_eq!(cert.graph(), g, "{label}: wrong pattern");
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "searches took {elapsed:?}");
    println!(
        "CRITERION 6 PASS: {} pinned searches reproduced in {elapsed:?}",
        PINNED_SEARCHES.len()
    );
}

/// Criterion 5: the batch report closes every row whose source carries a
/// lower-bound argument (a prose refutation, or a stated tree size whose
/// bound meets the claim), and an open lower bound is always flagged,
/// never passed off as agreement.
#[test]
fn criterion_5_lower_bound_closure() {
    use msrlab::bounds::LowerSource;
    use msrlab::engine::{batch_report, MsrStatus};

    let started = Instant::now();
    let certs = corpus();
    let report = batch_report(&certs, &RefuteBudget::default(), ExecMode::default())
        .expect("corpus rows are connected and within gates");
    assert_eq!(report.rows.len(), certs.len());

    let mut closed = 0usize;
    let mut open = Vec::new();
    for (row, cert) in report.rows.iter().zip(&certs) {
        assert_eq!(row.label, cert.label);
        let ts_meets_claim = cert
            .claimed_tree_size
            .is_some_and(|t| t > cert.claimed_msr);
        let sourced = cert.argued_lower_bound || ts_meets_claim;
        match row.status {
            MsrStatus::Determined(v) => {
                assert_eq!(v, row.claimed_msr, "{}", row.label);
                assert!(row.agrees_with_claim, "{}", row.label);
                assert!(row.note.is_none(), "{}", row.label);
                closed += 1;
            }
            MsrStatus::Interval(lo, hi) => {
                assert!(
                    !sourced,
                    "{}: row with a stated lower-bound source left open at {lo}..{hi}",
                    row.label
                );
                assert!(!row.agrees_with_claim, "{}: open row marked agreed", row.label);
                assert_eq!(row.note.as_deref(), Some("lower bound open"), "{}", row.label);
                open.push(row.label.clone());
            }
        }
        if cert.argued_lower_bound {
            assert_eq!(
                row.source,
                LowerSource::Refutation,
                "{}: argued row's bound should come from a refutation",
                row.label
            );
        }
    }
    assert_eq!(open, report.appendix.open_lower_bounds);
    let elapsed = started.elapsed();
    println!(
        "CRITERION 5 PASS: {closed} of {} rows determined at the claimed value in {elapsed:?}; open rows: {open:?}",
        report.rows.len(),
    );
}

/// Criterion 7: randomized invariant suites at a fixed seed (1000 cases
/// each), plus the exhaustive graph6 round-trip on up to six vertices.
#[test]
fn criterion_7_property_suites() {
    use msrlab::graph::{parse_graph6, to_graph6};
    use msrlab::rat::{rat, rat_int, Rat, RationalMatrix};
    use proptest::prelude::*;
    use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

    let started = Instant::now();
    let config = Config {
        cases: 1000,
        // The seed is pinned below; no regression files needed.
        failure_persistence: None,
        ..Config::default()
    };
    let runner = |tag: u8| {
        TestRunner::new_with_rng(
            config.clone(),
            TestRng::from_seed(RngAlgorithm::ChaCha, &[tag; 32]),
        )
    };
    let entry = || (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d));

    // rank(gram(B)) = rank(B), and gram(B) is positive semidefinite.
    let any_b = (1usize..=4, 1usize..=6).prop_flat_map(move |(r, c)| {
        prop::collection::vec(entry(), r * c)
            .prop_map(move |data| RationalMatrix::new(r, c, data).expect("sized"))
    });
    runner(1)
        .run(&any_b, |b| {
            let gram = b.gram();
            prop_assert_eq!(gram.rank(), b.rank());
            prop_assert!(gram.is_psd().expect("gram is square"));
            Ok(())
        })
        .expect("gram rank and psd invariants");

    // The iterative psd decision agrees with the principal-minor oracle
    // on symmetric 3x3 matrices, mixing generic and Gram-built cases so
    // both answers occur.
    fn minors_nonneg(m: &RationalMatrix) -> bool {
        let zero = rat_int(0);
        let minor2 = |i: usize, j: usize| {
            m.get(i, i) * m.get(j, j) - m.get(i, j) * m.get(j, i)
        };
        let det3: Rat = m.get(0, 0) * &minor2(1, 2)
            - m.get(0, 1) * &(m.get(1, 0) * m.get(2, 2) - m.get(1, 2) * m.get(2, 0))
            + m.get(0, 2) * &(m.get(1, 0) * m.get(2, 1) - m.get(1, 1) * m.get(2, 0));
        (0..3).all(|i| *m.get(i, i) >= zero)
            && minor2(0, 1) >= zero
            && minor2(0, 2) >= zero
            && minor2(1, 2) >= zero
            && det3 >= zero
    }
    let generic_sym = prop::collection::vec(entry(), 6).prop_map(|e| {
        RationalMatrix::from_rows(vec![
            vec![e[0].clone(), e[1].clone(), e[2].clone()],
            vec![e[1].clone(), e[3].clone(), e[4].clone()],
            vec![e[2].clone(), e[4].clone(), e[5].clone()],
        ])
        .expect("shaped")
    });
    let gram_sym = (1usize..=3).prop_flat_map(move |r| {
        prop::collection::vec(entry(), r * 3)
            .prop_map(move |data| RationalMatrix::new(r, 3, data).expect("sized").gram())
    });
    let sym3 = prop_oneof![generic_sym, gram_sym];
    runner(2)
        .run(&sym3, |m| {
            prop_assert_eq!(m.is_psd().expect("square"), minors_nonneg(&m));
            Ok(())
        })
        .expect("psd agrees with the principal-minor oracle");

    // graph6 round-trip, exhaustive over every labeled graph on 1..=6
    // vertices (33_867 graphs, a superset of the connected ones).
    let mut roundtripped = 0usize;
    for n in 1..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::new(n, &edges, None).expect("valid");
            let back = parse_graph6(&to_graph6(&g)).expect("parses back");
            assert_eq!(back, g, "graph6 round-trip, n={n} mask={mask}");
            roundtripped += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "property suites took {elapsed:?}");
    println!(
        "CRITERION 7 PASS: 1000-case invariant suites and {roundtripped} exhaustive graph6 round-trips in {elapsed:?}"
    );
}

/// Criterion 8: known families. Complete graphs determine to 1; paths
/// determine to n-1 with the lower half independently refuted, the upper
/// half searched, and the subset-dimension program reaching n-1 unaided.
#[test]
fn criterion_8_known_families() {
    use msrlab::bounds::subset_dim_bound;
    use msrlab::cert::verify_certificate;
    use msrlab::engine::{determine_msr, MsrStatus};
    use msrlab::search::{search_representation, SearchConfig, SearchOutcome};

    let started = Instant::now();
    let budget = RefuteBudget::default();
    let cfg = SearchConfig::default();
    for n in 2..=7usize {
        let complete = Graph::complete(n).expect("complete");
        let result = determine_msr(&complete, &[], &budget, &cfg, ExecMode::default())
            .expect("engine runs");
        assert_eq!(result.status, MsrStatus::Determined(1), "K{n}");

        let path = Graph::path(n).expect("path");
        let result =
            determine_msr(&path, &[], &budget, &cfg, ExecMode::default()).expect("engine runs");
        assert_eq!(result.status, MsrStatus::Determined(n - 1), "P{n}");

        match refute_rank(&path, n - 2, &budget).expect("preconditions hold") {
            RefuteOutcome::Refuted(trace) => {
                assert!(check_trace(&path, &trace), "P{n}: trace fails replay");
            }
            RefuteOutcome::Unknown => panic!("P{n}: rank {} not refuted", n - 2),
        }
        match search_representation(&path, n - 1, &cfg, ExecMode::default())
            .expect("preconditions hold")
        {
            SearchOutcome::Found(cert) => {
                assert!(
                    verify_certificate(&cert).verdict.passed(),
                    "P{n}: searched certificate fails verification"
                );
            }
            SearchOutcome::NotFound => panic!("P{n}: no rank-{} representation found", n - 1),
        }
        let (dp, chain) = subset_dim_bound(&path).expect("within gate");
        assert_eq!(dp, n - 1, "P{n}: dimension program");
        assert_eq!(chain.replay(&path), Some(n - 1), "P{n}: chain replay");
    }
    let elapsed = started.elapsed();
    println!(
        "CRITERION 8 PASS: complete graphs and paths on 2..=7 vertices determined in {elapsed:?}, \
         lower halves refuted and replayed, upper halves searched and verified"
    );
}
