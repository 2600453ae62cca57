//! Acceptance run: one PASS or FAIL line per criterion, nonzero exit on any failure.

use std::cell::OnceCell;
use std::time::{Duration, Instant};

use loopchord::verify::{
    check_circle_identity, check_independence, check_path_weights, check_published_values,
    check_q_recursion, check_square_factor, check_tadpole_weights, verify_igc, verify_kernel,
    verify_primitivity, PrimitiveWeights,
};
use loopchord::weight::weight_factor;
use loopchord::{
    emit_report, enumerate_diagrams, eval_many, four_term_relations, one_term_relations, run_suite,
    BasisCache, CheckReport, Convention, Format, LaurentPoly, SuiteConfig, SuiteReport, Workspace,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn from_reports(reports: &[CheckReport]) -> Outcome {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| {
            format!(
                "{} {:?} {}",
                r.id,
                r.status,
                r.witnesses.first().cloned().unwrap_or_default()
            )
        })
        .collect();
    if failed.is_empty() {
        let ids: Vec<&str> = reports.iter().map(|r| r.id.as_str()).collect();
        outcome(true, ids.join(", "))
    } else {
        outcome(false, failed.join("; "))
    }
}

fn enumeration_counts() -> Outcome {
    let counts: Vec<usize> = (1..=6)
        .map(|n| enumerate_diagrams(n).map_or(0, |d| d.len()))
        .collect();
    outcome(
        counts == [1, 2, 5, 18, 105, 902],
        format!("counts {counts:?}"),
    )
}

fn quotient_dimensions(ws: &Workspace) -> Outcome {
    let dims: Vec<usize> = (2..=6)
        .map(|n| ws.basis(n, true).map_or(usize::MAX, |b| b.quotient_dim()))
        .collect();
    outcome(dims == [1, 1, 3, 4, 9], format!("dimensions {dims:?}"))
}

fn weight_vanishes_on_relations() -> Outcome {
    let mut checked = 0;
    for n in 1..=5 {
        let diagrams = enumerate_diagrams(n).unwrap();
        let values = eval_many(&diagrams, Convention::Standard);
        let table: std::collections::HashMap<_, _> = diagrams.iter().zip(&values).collect();
        let rels = four_term_relations(n, 8)
            .unwrap()
            .into_iter()
            .chain(one_term_relations(n, 8).unwrap());
        for rel in rels {
            let w = rel
                .terms()
                .iter()
                .fold(LaurentPoly::zero(), |acc, (d, q)| &acc + &table[d].scale(q));
            if !w.is_zero() {
                return outcome(false, format!("W({rel}) = {w}"));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} generators"))
}

fn factor_divides_weights() -> Outcome {
    let f = weight_factor();
    let mut checked = 0;
    for n in 1..=5 {
        let diagrams = enumerate_diagrams(n).unwrap();
        for (d, w) in diagrams
            .iter()
            .zip(eval_many(&diagrams, Convention::Standard))
        {
            if !(w.is_polynomial() && f.divides(&w)) {
                return outcome(false, format!("W({d}) = {w}"));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} diagrams"))
}

fn determinism() -> Outcome {
    let cfg = SuiteConfig {
        igc: 6,
        weight_axioms: 4,
        lemmas: 8,
        kernel: 5,
        primitivity: 4,
    };
    let render = |threads: usize, cache: &std::path::Path| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let ws = Workspace::new(8, Some(BasisCache::new(cache)));
            emit_report(
                &SuiteReport::new(run_suite(&ws, cfg)).without_timing(),
                Format::Json,
            )
        })
    };
    let warm = tempfile::tempdir().unwrap();
    let reference = render(1, warm.path());
    for threads in [1, 4, 16] {
        let cold = tempfile::tempdir().unwrap();
        if render(threads, cold.path()) != reference {
            return outcome(false, format!("{threads} threads, cold cache"));
        }
        if render(threads, warm.path()) != reference {
            return outcome(false, format!("{threads} threads, warm cache"));
        }
    }
    outcome(
        true,
        format!(
            "{} bytes identical across 1/4/16 threads, cold and warm cache",
            reference.len()
        ),
    )
}

fn main() {
    let ws = Workspace::default();
    let cell = OnceCell::new();
    let weights = || cell.get_or_init(|| PrimitiveWeights::compute(8).expect("primitive weights"));

    type Criterion<'a> = (&'a str, Duration, Box<dyn FnOnce() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        (
            "enumeration counts 1, 2, 5, 18, 105, 902 for n=1..6",
            Duration::from_secs(10),
            Box::new(enumeration_counts),
        ),
        (
            "quotient dimensions 1, 1, 3, 4, 9 for n=2..6",
            Duration::from_secs(120),
            Box::new(|| quotient_dimensions(&ws)),
        ),
        (
            "W vanishes on every 4T and 1T generator, n<=5",
            Duration::from_secs(300),
            Box::new(weight_vanishes_on_relations),
        ),
        (
            "IGC for cycle rank <= 1, n=3..6",
            Duration::from_secs(600),
            Box::new(|| {
                from_reports(
                    &(3..=6)
                        .map(|n| verify_igc(&ws, n, Some(1)))
                        .collect::<Vec<_>>(),
                )
            }),
        ),
        (
            "IGC for all graphs, n<=6",
            Duration::from_secs(600),
            Box::new(|| {
                from_reports(
                    &(1..=6)
                        .map(|n| verify_igc(&ws, n, None))
                        .collect::<Vec<_>>(),
                )
            }),
        ),
        (
            "graph kernel trivial with 1T, n<=5",
            Duration::from_secs(300),
            Box::new(|| from_reports(&[verify_kernel(&ws, 5)])),
        ),
        (
            "W(p_n) = -y(x+y)^(n-1), n=2..8",
            Duration::from_secs(30),
            Box::new(|| from_reports(&[check_path_weights(weights())])),
        ),
        (
            "W(p_{n,k}) = (x+y)^(n-k) W(p_{k,k}), 4<=k<n<=8",
            Duration::from_secs(60),
            Box::new(|| from_reports(&[check_tadpole_weights(weights())])),
        ),
        (
            "published W(p_{4,4}), W(p_{5,5}), W(p_{6,6})",
            Duration::from_secs(60),
            Box::new(|| from_reports(&[check_published_values(weights())])),
        ),
        (
            "circle identity at n=7, 8",
            Duration::from_secs(60),
            Box::new(|| from_reports(&[check_circle_identity(weights())])),
        ),
        (
            "Q_n recursion, Q_n(-y,y) values, c_n positive and monotone to n=10",
            Duration::from_secs(60),
            Box::new(|| from_reports(&[check_q_recursion(weights())])),
        ),
        (
            "(x+y)^2 does not divide W(p_{n,n}), n=4..8",
            Duration::from_secs(60),
            Box::new(|| from_reports(&[check_square_factor(weights())])),
        ),
        (
            "independence rank n-2 for n=4..8, 1 for n=2,3",
            Duration::from_secs(60),
            Box::new(|| from_reports(&[check_independence(weights())])),
        ),
        (
            "primitive defect zero for p_n, p_{n,k}, n<=4",
            Duration::from_secs(60),
            Box::new(|| from_reports(&[verify_primitivity(&ws, 4)])),
        ),
        (
            "y(x+y) divides W(D) for every diagram of degree 1..5",
            Duration::from_secs(300),
            Box::new(factor_divides_weights),
        ),
        (
            "reports identical across 1/4/16 workers and cold/warm cache",
            Duration::from_secs(600),
            Box::new(determinism),
        ),
    ];

    let mut failures = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if elapsed > budget {
            result = outcome(false, format!("{} (over budget {budget:?})", result.detail));
        }
        if !result.ok {
            failures += 1;
        }
        let status = if result.ok { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {:>2}: {name} [{:.2?}] {}",
            i + 1,
            elapsed,
            result.detail
        );
    }
    println!("{} of 16 criteria passed", 16 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
