//! One check per acceptance criterion, each printed as a PASS/FAIL line
//! with its runtime against the budget.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::test_runner::{Config, TestRunner};
use qfib::golden;
use qfib::harness::{
    det_table, lookup, sweep, Context, GridSpec, Params, Sides, Status, SweepOptions,
};
use qfib::matrix::{det_cofactor, fibonomial_charpoly, hoggatt, verify_hoggatt_eigvec};
use qfib::qcomb::{binom_product, fibonomial};
use qfib::quad::{alpha_pow, QuadElem};
use qfib::sequences::{fib, gf_truncated, qfib, transform_t, TruncatedSeries};
use qfib::{Poly, Var};

fn p(s: &str) -> Poly {
    s.parse().unwrap()
}

fn product(factors: &[&str]) -> Poly {
    Poly::product(&factors.iter().map(|f| p(f)).collect::<Vec<_>>())
}

fn range(lo: i64, hi: i64) -> Option<std::ops::RangeInclusive<i64>> {
    Some(lo..=hi)
}

/// Sweeps one entry and asserts that every cell passes, or is fitted with
/// correction +1 when `allow_unit_fit` is set. Returns the number of cells.
fn sweep_passes(id: &str, spec: GridSpec, allow_unit_fit: bool) -> usize {
    let e = lookup(id).unwrap();
    let grid = e.grid(&spec);
    assert!(!grid.is_empty(), "{id}: empty grid");
    let opts = SweepOptions {
        fit: allow_unit_fit,
        workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        timing: true,
    };
    let report = sweep("acceptance", &[(e, grid)], opts);
    for c in &report.cells {
        let ok = match c.status {
            Status::Pass => true,
            Status::Fitted => allow_unit_fit && c.correction.as_deref() == Some("+1"),
            Status::Fail => false,
        };
        assert!(ok, "{id} {}: {:?}", c.params, c);
    }
    report.cells.len()
}

fn sides(id: &str, pairs: &[(&str, i64)]) -> Sides {
    lookup(id)
        .unwrap()
        .sides(&Context::new(), &Params::new(pairs.iter().copied()))
        .unwrap()
}

fn at_one(poly: &Poly) -> Poly {
    poly.subst_int(Var::X, 1)
        .unwrap()
        .subst_int(Var::S, 1)
        .unwrap()
}

fn criterion_1() {
    let expected = [
        vec![1],
        vec![1, 1],
        vec![1, 1, 1],
        vec![1, 2, 2, 1],
        vec![1, 3, 6, 3, 1],
        vec![1, 5, 15, 15, 5, 1],
    ];
    for (n, row) in expected.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            let f = fibonomial(n as i64, k as i64).unwrap();
            assert_eq!(at_one(&f), Poly::constant(*v), "row {n} col {k}");
        }
    }
    let f1 = "x^4 + 3*s*x^2 + s^2";
    let matrix: [&[&[&str]]; 6] = [
        &[&["1"]],
        &[&["1"], &["1"]],
        &[&["1"], &["x"], &["1"]],
        &[&["1"], &["s + x^2"], &["s + x^2"], &["1"]],
        &[
            &["1"],
            &["x", "2*s + x^2"],
            &["s + x^2", "2*s + x^2"],
            &["x", "2*s + x^2"],
            &["1"],
        ],
        &[
            &["1"],
            &[f1],
            &["2*s + x^2", f1],
            &["2*s + x^2", f1],
            &[f1],
            &["1"],
        ],
    ];
    for (n, row) in matrix.iter().enumerate() {
        for k in 0..6 {
            let expected = row.get(k).map_or(Poly::zero(), |fs| product(fs));
            let f = fibonomial(n as i64, k as i64).unwrap();
            assert_eq!(f, expected, "row {n} col {k}");
        }
    }
}

fn criterion_2() {
    let n = sweep_passes(
        "squares_classical",
        GridSpec {
            n: range(3, 30),
            ..Default::default()
        },
        false,
    );
    assert_eq!(n, 28);
    let e = lookup("power_rec_classical").unwrap();
    let grid: Vec<Params> = (1..=4)
        .flat_map(|k| (k + 2..=12).map(move |n| Params::new([("n", n), ("k", k)])))
        .collect();
    let report = sweep("acceptance", &[(e, grid)], SweepOptions::default());
    assert_eq!(report.summary.pass, report.cells.len());
    assert_eq!(report.cells.len(), 10 + 9 + 8 + 7);
}

fn criterion_3() {
    for id in ["euler_cassini", "basis_decomp"] {
        let spec = GridSpec {
            n: range(-4, 8),
            k: range(1, 6),
            ..Default::default()
        };
        assert_eq!(sweep_passes(id, spec, false), 78);
    }
}

fn criterion_4() {
    let spec = GridSpec {
        n: range(-3, 8),
        k: range(2, 3),
        ..Default::default()
    };
    assert_eq!(sweep_passes("conj1_f", spec.clone(), false), 24);
    assert_eq!(sweep_passes("conj1_fibo", spec, false), 24);
    let ctx = Context::new();
    let (f, fibo) = (lookup("conj1_f").unwrap(), lookup("conj1_fibo").unwrap());
    for k in 2..=3 {
        for n in -3..=8 {
            let prm = Params::new([("n", n), ("k", k)]);
            let lhs = f.sides(&ctx, &prm).unwrap().lhs;
            assert_eq!(transform_t(&lhs, n), fibo.sides(&ctx, &prm).unwrap().lhs);
        }
    }
}

fn criterion_5() {
    let d = GridSpec::default;
    sweep_passes(
        "threeterm_ell",
        GridSpec {
            n: range(3, 8),
            ell: range(1, 4),
            ..d()
        },
        false,
    );
    let spec = GridSpec {
        big_n: range(-3, 6),
        m: range(0, 3),
        ell: range(1, 3),
        ..d()
    };
    assert_eq!(sweep_passes("gen_cassini", spec, false), 120);
    let spec = GridSpec {
        n: range(3, 7),
        k: range(1, 2),
        ell: range(1, 3),
        ..d()
    };
    assert_eq!(sweep_passes("conj2", spec, false), 30);
    sweep_passes(
        "conj2_k2",
        GridSpec {
            n: range(4, 7),
            ell: range(1, 3),
            ..d()
        },
        false,
    );
}

fn criterion_6() {
    let d = GridSpec::default;
    assert_eq!(
        sweep_passes(
            "q_cassini",
            GridSpec {
                n: range(1, 12),
                ..d()
            },
            false
        ),
        12
    );
    assert_eq!(
        sweep_passes(
            "det_sq_q",
            GridSpec {
                n: range(2, 8),
                ..d()
            },
            false
        ),
        7
    );
    assert_eq!(
        sweep_passes(
            "cassini_classical",
            GridSpec {
                n: range(1, 10),
                ..d()
            },
            false
        ),
        10
    );
    for n in 1..=10 {
        let s = sides("det_power_classical", &[("n", n), ("k", 2)]);
        assert!(s.residual().is_zero());
        let two = Poly::constant(if n % 2 == 0 { 2 } else { -2 });
        assert_eq!(at_one(&s.lhs), two, "n={n}");
    }
}

fn criterion_7() {
    let table = det_table(&Context::new(), 4).unwrap();
    for (i, d) in table.iter().enumerate() {
        let k = i + 1;
        let golden = golden::det_table_entry(k).unwrap();
        assert_eq!(d.to_string(), golden, "k={k}");
        assert_eq!(d.content(), binom_product(k as i64), "k={k}");
    }
    let contents: Vec<BigInt> = table.iter().map(Poly::content).collect();
    assert_eq!(contents, [1, 2, 9, 96].map(BigInt::from));
}

fn criterion_8() {
    let d = GridSpec::default;
    for k in 1..=2 {
        let spec = GridSpec {
            n: range(k, 6),
            k: range(k, k),
            ..d()
        };
        sweep_passes("conj3", spec, true);
        let spec = GridSpec {
            n: range(k, 5),
            k: range(k, k),
            ell: range(1, 2),
            ..d()
        };
        sweep_passes("conj4", spec, true);
    }
    assert_eq!(
        sweep_passes(
            "conj4_k1",
            GridSpec {
                n: range(1, 6),
                ell: range(1, 3),
                ..d()
            },
            false
        ),
        18
    );
    assert_eq!(
        sweep_passes(
            "conj4_k2",
            GridSpec {
                n: range(2, 5),
                ell: range(1, 2),
                ..d()
            },
            false
        ),
        8
    );
    let q_one = |s: Sides| Sides {
        lhs: s.lhs.subst_q_one(),
        rhs: s.rhs.subst_q_one(),
    };
    for k in 1..=2 {
        for n in k..=6 {
            let q = q_one(sides("conj3", &[("n", n), ("k", k)]));
            assert_eq!(q, sides("det_power_classical", &[("n", n), ("k", k)]));
        }
        for l in 1..=2 {
            for n in k..=5 {
                let q = q_one(sides("conj4", &[("n", n), ("k", k), ("ell", l)]));
                assert_eq!(
                    q,
                    sides("det_classical_ell", &[("n", n), ("k", k), ("ell", l)])
                );
            }
        }
    }
}

fn criterion_9() {
    for n in 1..=5 {
        assert_eq!(
            hoggatt(n).charpoly().unwrap(),
            fibonomial_charpoly(n as i64).unwrap(),
            "n={n}"
        );
    }
    for n in 1..=4 {
        for j in 1..=n {
            assert!(verify_hoggatt_eigvec(n, j), "n={n} j={j}");
        }
    }
}

fn criterion_10() {
    let spec = GridSpec {
        k: range(1, 4),
        order_s: Some(8),
        order_q: Some(12),
        ..Default::default()
    };
    assert_eq!(sweep_passes("gf_limit", spec, false), 4);
    let gf = gf_truncated(8, 12);
    for n in 16..=22 {
        let f = qfib(n).subst_int(Var::X, 1).unwrap();
        assert_eq!(TruncatedSeries::new(&f, 8, 12), gf, "n={n}");
    }
}

fn config(cases: u32) -> Config {
    Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    }
}

fn criterion_11() {
    let mut runner = TestRunner::new(config(1000));
    let triples = (common::laurent(), common::laurent(), common::laurent());
    runner
        .run(&triples, |(a, b, c)| {
            assert_eq!(&a + &b, &b + &a);
            assert_eq!(&a * &b, &b * &a);
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&(&a + &b) - &b, a);
            assert_eq!(a.to_string().parse::<Poly>().unwrap(), a);
            Ok(())
        })
        .unwrap();
    let mut runner = TestRunner::new(config(200));
    runner
        .run(&common::small_matrix(), |m| {
            assert_eq!(m.det().unwrap(), det_cofactor(&m).unwrap());
            Ok(())
        })
        .unwrap();
    for n in -6..=12 {
        assert_eq!(
            alpha_pow(n),
            QuadElem::new(&Poly::s() * &fib(n - 1), fib(n)),
            "n={n}"
        );
    }
}

struct Criterion {
    number: u32,
    title: &'static str,
    budget: Duration,
    check: fn(),
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        title: "fibonomial triangle and polynomial matrix",
        budget: Duration::from_secs(1),
        check: criterion_1,
    },
    Criterion {
        number: 2,
        title: "classical power recurrences",
        budget: Duration::from_secs(5),
        check: criterion_2,
    },
    Criterion {
        number: 3,
        title: "q-Euler-Cassini and basis decomposition",
        budget: Duration::from_secs(10),
        check: criterion_3,
    },
    Criterion {
        number: 4,
        title: "q-power recurrence and its transform",
        budget: Duration::from_secs(60),
        check: criterion_4,
    },
    Criterion {
        number: 5,
        title: "strided recurrences and generalized Cassini",
        budget: Duration::from_secs(120),
        check: criterion_5,
    },
    Criterion {
        number: 6,
        title: "Cassini determinants",
        budget: Duration::from_secs(10),
        check: criterion_6,
    },
    Criterion {
        number: 7,
        title: "determinant table",
        budget: Duration::from_secs(300),
        check: criterion_7,
    },
    Criterion {
        number: 8,
        title: "determinant conjectures and q = 1 specializations",
        budget: Duration::from_secs(600),
        check: criterion_8,
    },
    Criterion {
        number: 9,
        title: "Hoggatt matrix spectrum",
        budget: Duration::from_secs(30),
        check: criterion_9,
    },
    Criterion {
        number: 10,
        title: "generating function limit",
        budget: Duration::from_secs(10),
        check: criterion_10,
    },
    Criterion {
        number: 11,
        title: "property suites",
        budget: Duration::from_secs(600),
        check: criterion_11,
    },
];

fn run(c: &Criterion) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(c.check));
    let elapsed = start.elapsed();
    let within = elapsed <= c.budget;
    let pass = outcome.is_ok() && within;
    println!(
        "criterion {:>2}: {} - {} ({:.2}s, budget {}s{})",
        c.number,
        if pass { "PASS" } else { "FAIL" },
        c.title,
        elapsed.as_secs_f64(),
        c.budget.as_secs(),
        if within { "" } else { ", over budget" },
    );
    pass
}

/// The k = 5 determinant, run only with `--ignored` or `--include-ignored`.
fn det_table_fifth_entry() -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(|| {
        let table = det_table(&Context::new(), 5).unwrap();
        assert_eq!(table[4].to_string(), golden::det_table_entry(5).unwrap());
        assert_eq!(table[4].content(), BigInt::from(2500));
    });
    let elapsed = start.elapsed();
    let pass = outcome.is_ok() && elapsed <= Duration::from_secs(600);
    println!(
        "det_table k=5: {} ({:.1}s, budget 600s)",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    pass
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        return;
    }
    let slow = args
        .iter()
        .any(|a| a == "--ignored" || a == "--include-ignored");
    let mut failed: Vec<String> = CRITERIA
        .iter()
        .filter(|c| !run(c))
        .map(|c| c.number.to_string())
        .collect();
    if slow && !det_table_fifth_entry() {
        failed.push("det_table k=5".into());
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: failed criteria {}", failed.join(", "));
        std::process::exit(1);
    }
}
