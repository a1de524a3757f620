use std::process::ExitCode;
use std::time::{Duration, Instant};

use qsym_core::linalg::{build_b_direct, build_b_recursive};
use qsym_core::scalars::QPoly;
use qsym_core::theorems::{rank_at_rho, run_suite, Bounds, CaseStatus, Suite, VerificationReport};

const PRINTED_B4: [[&str; 8]; 8] = [
    ["1", "1", "1", "1", "1", "1", "1", "1"],
    ["0", "q-1", "0", "q-1", "0", "q-1", "0", "q-1"],
    ["0", "0", "q-1", "q-1", "0", "0", "q-1", "q-1"],
    ["0", "0", "-q", "(q-1)^2", "0", "0", "-q", "(q-1)^2"],
    ["0", "0", "0", "0", "q-1", "q-1", "q-1", "q-1"],
    ["0", "0", "0", "0", "0", "(q-1)^2", "0", "(q-1)^2"],
    ["0", "0", "0", "0", "-q", "-q", "(q-1)^2", "(q-1)^2"],
    ["0", "0", "0", "0", "0", "-q(q-1)", "-q(q-1)", "(q-1)^3"],
];

fn printed_entry(s: &str) -> QPoly {
    let coeffs: &[i64] = match s {
        "0" => &[],
        "1" => &[1],
        "q-1" => &[-1, 1],
        "-q" => &[0, -1],
        "(q-1)^2" => &[1, -2, 1],
        "-q(q-1)" => &[0, 1, -1],
        "(q-1)^3" => &[-1, 3, -3, 1],
        other => panic!("unexpected printed entry {other}"),
    };
    QPoly::from_ints(coeffs)
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_reports(reports: &[VerificationReport]) -> Outcome {
    let ok = reports.iter().all(VerificationReport::passed);
    let cases: usize = reports.iter().map(|r| r.cases.len()).sum();
    let mut detail = format!("{cases} cases");
    for r in reports {
        for f in r.failures() {
            detail.push_str(&format!("; {} {}: {}", r.suite, f.case, f.detail));
        }
    }
    Outcome { ok, detail }
}

fn b4() -> Outcome {
    let q = QPoly::q();
    let expected: Vec<Vec<QPoly>> = PRINTED_B4.iter().map(|r| r.iter().map(|s| printed_entry(s)).collect()).collect();
    let direct = build_b_direct(4, &q).expect("n = 4 is valid");
    let recursive = build_b_recursive(4, &q);
    let mut equal = 0;
    for i in 0..8 {
        for j in 0..8 {
            if *direct.get(i, j) == expected[i][j] && *recursive.get(i, j) == expected[i][j] {
                equal += 1;
            }
        }
    }
    Outcome { ok: equal == 64, detail: format!("{equal}/64 entries equal in both constructions") }
}

fn dimension() -> Outcome {
    let report = run_suite(Suite::Dimension, Bounds { max_n: 9, max_p: 4 });
    let ranks: Vec<usize> = (1..=9).map(|n| rank_at_rho(n, 1).expect("valid n")).collect();
    let mut out = from_reports(&[report]);
    out.ok &= ranks == [1, 1, 2, 3, 5, 8, 13, 21, 34];
    out.detail = format!("{}; p=1 ranks {ranks:?}", out.detail);
    out
}

fn kernel_discrepancies() -> Outcome {
    let report = run_suite(Suite::Kernel, Bounds { max_n: 9, max_p: 4 });
    let discrepancies: Vec<&str> = report
        .cases
        .iter()
        .filter(|c| c.status == CaseStatus::Discrepancy)
        .map(|c| c.case.as_str())
        .collect();
    let expected: Vec<String> = (1..=4).map(|p| format!("p={p} n={} dim ker", p + 1)).collect();
    let mut out = from_reports(std::slice::from_ref(&report));
    out.ok &= discrepancies == expected;
    out.detail = format!("{}; discrepancies at {}", out.detail, discrepancies.join(", "));
    out
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("B_4 reproduction", Box::new(b4)),
        ("dimension theorem, n<=9, p<=4", Box::new(dimension)),
        (
            "vanishing at rho_p and nonzero at q=2, n<=8, p<=3",
            Box::new(|| from_reports(&[run_suite(Suite::Vanishing, Bounds { max_n: 8, max_p: 3 })])),
        ),
        (
            "symbolic [p+1]_(-q) factorization, n<=7, p<=3",
            Box::new(|| from_reports(&[run_suite(Suite::Symbolic, Bounds { max_n: 7, max_p: 3 })])),
        ),
        (
            "basis genericity at 2 and 1/2, deficiency at rho_p, n<=8",
            Box::new(|| from_reports(&[run_suite(Suite::Basis, Bounds { max_n: 8, max_p: 4 })])),
        ),
        (
            "equality-pattern and enriched q-monomial expansions agree, n<=7",
            Box::new(|| from_reports(&[run_suite(Suite::Expansion, Bounds { max_n: 7, max_p: 1 })])),
        ),
        (
            "P-partition oracle grounding",
            Box::new(|| from_reports(&[run_suite(Suite::Gamma, Bounds { max_n: 4, max_p: 1 })])),
        ),
        (
            "product rule n+m<=6 and coproduct n<=4",
            Box::new(|| {
                from_reports(&[
                    run_suite(Suite::Product, Bounds { max_n: 6, max_p: 3 }),
                    run_suite(Suite::Coproduct, Bounds { max_n: 4, max_p: 1 }),
                ])
            }),
        ),
        (
            "counting recurrence n<=16, p<=5 and lacunar counts",
            Box::new(|| from_reports(&[run_suite(Suite::Counts, Bounds { max_n: 16, max_p: 5 })])),
        ),
        (
            "binomial lemma n<=15",
            Box::new(|| from_reports(&[run_suite(Suite::Binom, Bounds { max_n: 15, max_p: 1 })])),
        ),
        ("kernel recurrence with documented n=p+1 discrepancy", Box::new(kernel_discrepancies)),
    ];

    let mut all_ok = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed: Duration = start.elapsed();
        all_ok &= outcome.ok;
        println!(
            "{} {:>2} {name} [{:.2}s] {}",
            if outcome.ok { "PASS" } else { "FAIL" },
            k + 1,
            elapsed.as_secs_f64(),
            outcome.detail
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
