mod args;

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::Parser;
use qfib::golden;
use qfib::harness::{
    catalog, det_table, lookup, sweep, Context, GridSpec, IdentityEntry, Params, Status,
    SweepOptions, VerificationReport,
};
use qfib::matrix::hoggatt;
use qfib::qcomb::{
    fac, fac_classical, fibonomial, fibonomial_ell, qbinom, qfibonomial, qfibonomial_ell,
    Coefficient,
};
use qfib::sequences::{fib, gf_truncated, lucas, qfib_neg_closed, qfib_shift};
use qfib::{Poly, Var};

use args::{Cli, CoeffArgs, CoeffKind, Command, EvalArgs, EvalKind, Format, TableKind, VerifyArgs};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

const MAX_DET_K: i64 = 4;
const MAX_DET_K_SLOW: i64 = 5;
const MAX_TRIANGLE_ROWS: i64 = 12;
const MAX_HOGGATT: usize = 6;

/// An error carrying the process exit code.
struct Failure {
    code: u8,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

fn over_budget(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_BUDGET,
        msg: msg.into(),
    }
}

/// Output text plus the exit code it should end with.
struct Outcome {
    text: String,
    code: u8,
}

impl From<String> for Outcome {
    fn from(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => eval(&a).map(Outcome::from),
        Command::Coeff(a) => coeff(&a).map(Outcome::from),
        Command::Verify(a) => verify(&a),
        Command::Tables(a) => tables(&a.table),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn eval(a: &EvalArgs) -> Result<String, Failure> {
    let n = || a.n.ok_or_else(|| usage("this sequence needs an index n"));
    let p = match a.kind {
        EvalKind::Fib => fib(n()?),
        EvalKind::Lucas => lucas(n()?),
        EvalKind::Qfib => qfib_shift(n()?, a.shift),
        EvalKind::QfibNegClosed => {
            let n = n()?;
            if n < 1 {
                return Err(usage("qfib-neg-closed needs n >= 1"));
            }
            qfib_neg_closed(n)
        }
        EvalKind::Gf => {
            if a.order_s < 1 || a.order_q < 1 {
                return Err(usage("series orders must be positive"));
            }
            gf_truncated(a.order_s, a.order_q).as_poly().clone()
        }
    };
    Ok(format!("{p}\n"))
}

/// Parses `x=1,s=1` into variable assignments.
fn parse_point(s: &str) -> Result<Vec<(Var, i64)>, Failure> {
    s.split(',')
        .map(|part| {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| usage(format!("expected var=value, got {part:?}")))?;
            let var = name
                .trim()
                .chars()
                .next()
                .filter(|_| name.trim().len() == 1)
                .and_then(Var::from_name)
                .ok_or_else(|| usage(format!("unknown variable {name:?}")))?;
            let value = value
                .trim()
                .parse()
                .map_err(|_| usage(format!("invalid value {value:?}")))?;
            Ok((var, value))
        })
        .collect()
}

fn substitute(p: &Poly, at: &[(Var, i64)]) -> Result<Poly, Failure> {
    at.iter().try_fold(p.clone(), |acc, (v, value)| {
        acc.subst_int(*v, *value).map_err(|e| usage(e.to_string()))
    })
}

fn coeff(a: &CoeffArgs) -> Result<String, Failure> {
    let (names, arity): (&str, usize) = match a.kind {
        CoeffKind::Qbinom | CoeffKind::Fibonomial => ("N K", 2),
        CoeffKind::Qfibonomial => ("K J", 2),
        CoeffKind::FibonomialEll => ("K J ELL", 3),
        CoeffKind::QfibonomialEll => ("M J ELL", 3),
        CoeffKind::Fac => ("N SHIFT ELL", 3),
        CoeffKind::FacClassical => ("N ELL", 2),
    };
    if a.params.len() != arity {
        return Err(usage(format!("expected parameters {names}")));
    }
    let v = &a.params;
    let need = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(usage(msg)) };
    let value = match a.kind {
        CoeffKind::Qbinom => Coefficient::Poly(qbinom(v[0], v[1])),
        CoeffKind::Fibonomial => {
            need(v[0] >= 0, "N must be nonnegative")?;
            Coefficient::Poly(fibonomial(v[0], v[1]).map_err(|e| usage(e.to_string()))?)
        }
        CoeffKind::FibonomialEll => {
            need(v[0] >= 0 && v[2] >= 1, "need K >= 0 and ELL >= 1")?;
            Coefficient::Poly(fibonomial_ell(v[0], v[1], v[2]).map_err(|e| usage(e.to_string()))?)
        }
        CoeffKind::Qfibonomial => {
            need(0 <= v[1] && v[1] <= v[0], "need 0 <= J <= K")?;
            qfibonomial(v[0], v[1])
        }
        CoeffKind::QfibonomialEll => {
            need(
                0 <= v[1] && v[1] <= v[0] && v[2] >= 1,
                "need 0 <= J <= M and ELL >= 1",
            )?;
            qfibonomial_ell(v[0], v[1], v[2])
        }
        CoeffKind::Fac => {
            need(v[0] >= 0 && v[2] >= 1, "need N >= 0 and ELL >= 1")?;
            Coefficient::Poly(fac(v[0], v[1], v[2]))
        }
        CoeffKind::FacClassical => {
            need(v[0] >= 0 && v[1] >= 1, "need N >= 0 and ELL >= 1")?;
            Coefficient::Poly(fac_classical(v[0], v[1]))
        }
    };
    let text = match &a.at {
        None => value.to_string(),
        Some(at) => {
            let at = parse_point(at)?;
            match value {
                Coefficient::Poly(p) => substitute(&p, &at)?.to_string(),
                Coefficient::Pair { num, den } => {
                    let (num, den) = (substitute(&num, &at)?, substitute(&den, &at)?);
                    match num.exact_div(&den) {
                        Ok(q) => q.to_string(),
                        Err(_) => Coefficient::Pair { num, den }.to_string(),
                    }
                }
            }
        }
    };
    Ok(format!("{text}\n"))
}

fn selected_entries(ids: &[String]) -> Result<Vec<&'static IdentityEntry>, Failure> {
    if ids.iter().any(|id| id == "all") {
        return Ok(catalog().iter().collect());
    }
    ids.iter()
        .map(|id| lookup(id).map_err(|e| usage(e.to_string())))
        .collect()
}

fn verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    let entries = selected_entries(&a.ids)?;
    let spec = GridSpec {
        n: a.n.clone(),
        k: a.k.clone(),
        ell: a.ell.clone(),
        m: a.m.clone(),
        big_n: a.big_n.clone(),
        order_s: a.order_s,
        order_q: a.order_q,
        max_k: a.max_k,
        max_ell: a.max_ell,
    };
    let jobs: Vec<(&IdentityEntry, Vec<Params>)> =
        entries.iter().map(|e| (*e, e.grid(&spec))).collect();
    let opts = SweepOptions {
        fit: a.fit,
        workers: a.jobs as usize,
        timing: !a.no_timing,
    };
    let command = std::iter::once("verify".to_string())
        .chain(std::env::args().skip(2))
        .collect::<Vec<_>>()
        .join(" ");
    let report = sweep(&command, &jobs, opts);
    let text = match a.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(&report, !a.no_timing),
    };
    let code = verify_exit_code(&report, a.fit_ok);
    match &a.out {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome {
                text: render_summary(&report),
                code,
            })
        }
        None => Ok(Outcome { text, code }),
    }
}

fn verify_exit_code(r: &VerificationReport, fit_ok: bool) -> u8 {
    if r.summary.fail == 0 && (fit_ok || r.summary.fitted == 0) {
        0
    } else {
        EXIT_FAIL
    }
}

fn render_summary(r: &VerificationReport) -> String {
    format!(
        "pass {} fail {} fitted {}\n",
        r.summary.pass, r.summary.fail, r.summary.fitted
    )
}

fn render_text(r: &VerificationReport, timing: bool) -> String {
    let mut out = String::new();
    for c in &r.cells {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Fitted => "fitted",
        };
        let _ = write!(out, "{:<20} {:<22} {}", c.id, c.params.to_string(), status);
        if let Some(corr) = &c.correction {
            let _ = write!(out, " correction {corr}");
        }
        if let Some(err) = &c.error {
            let _ = write!(out, " error: {err}");
        }
        if let Some(res) = &c.residual {
            let _ = write!(out, " residual {res}");
        }
        if timing {
            let _ = write!(out, " ({} ms)", c.ms);
        }
        out.push('\n');
    }
    out.push_str(&render_summary(r));
    out
}

fn tables(t: &TableKind) -> Result<Outcome, Failure> {
    match t {
        TableKind::DetTable { max_k, slow } => {
            let limit = if *slow { MAX_DET_K_SLOW } else { MAX_DET_K };
            if *max_k > limit {
                return Err(over_budget(format!(
                    "det-table is limited to k <= {MAX_DET_K} (k <= {MAX_DET_K_SLOW} with --slow)"
                )));
            }
            if *max_k < 1 {
                return Err(usage("--max-k must be at least 1"));
            }
            let table = det_table(&Context::new(), *max_k).map_err(|e| usage(e.to_string()))?;
            let mut out = Outcome::from(String::new());
            for (i, d) in table.iter().enumerate() {
                let text = d.to_string();
                if let Some(g) = golden::det_table_entry(i + 1) {
                    if g != text {
                        eprintln!("golden mismatch at k={}: expected {g}", i + 1);
                        out.code = EXIT_FAIL;
                    }
                }
                out.text.push_str(&text);
                out.text.push('\n');
            }
            Ok(out)
        }
        TableKind::FibonomialTriangle { rows, at } => {
            if *rows > MAX_TRIANGLE_ROWS {
                return Err(over_budget(format!(
                    "fibonomial-triangle is limited to {MAX_TRIANGLE_ROWS} rows"
                )));
            }
            if *rows < 0 {
                return Err(usage("--rows must be nonnegative"));
            }
            let at = at.as_deref().map(parse_point).transpose()?;
            let mut out = Outcome::from(String::new());
            for n in 0..=*rows {
                let row: Vec<Poly> = (0..=n)
                    .map(|k| fibonomial(n, k).expect("fibonomial coefficients are polynomials"))
                    .collect();
                let texts: Vec<String> = match &at {
                    Some(at) => row
                        .iter()
                        .map(|p| substitute(p, at).map(|p| p.to_string()))
                        .collect::<Result<_, _>>()?,
                    None => row.iter().map(Poly::to_string).collect(),
                };
                if at.is_none() {
                    if let Some(g) = golden::fibonomial_row(n as usize) {
                        if g != texts {
                            eprintln!("golden mismatch in row {n}");
                            out.code = EXIT_FAIL;
                        }
                    }
                }
                let sep = if at.is_some() { " " } else { " | " };
                out.text.push_str(&texts.join(sep));
                out.text.push('\n');
            }
            Ok(out)
        }
        TableKind::HoggattCharpoly { n } => {
            if *n > MAX_HOGGATT {
                return Err(over_budget(format!(
                    "hoggatt-charpoly is limited to n <= {MAX_HOGGATT}"
                )));
            }
            if *n < 1 {
                return Err(usage("n must be at least 1"));
            }
            let p = hoggatt(*n).charpoly().map_err(|e| usage(e.to_string()))?;
            Ok(Outcome::from(format!("{p}\n")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points() {
        assert_eq!(
            parse_point("x=1,s=-2").ok().unwrap(),
            vec![(Var::X, 1), (Var::S, -2)]
        );
        assert!(parse_point("y=1").is_err());
        assert!(parse_point("x1").is_err());
        assert!(parse_point("xs=1").is_err());
    }

    #[test]
    fn exit_codes_follow_the_summary() {
        use qfib::harness::Summary;
        let report = |pass, fail, fitted| VerificationReport {
            version: 1,
            command: String::new(),
            cells: Vec::new(),
            summary: Summary { pass, fail, fitted },
        };
        assert_eq!(verify_exit_code(&report(3, 0, 0), false), 0);
        assert_eq!(verify_exit_code(&report(3, 1, 0), true), EXIT_FAIL);
        assert_eq!(verify_exit_code(&report(3, 0, 1), false), EXIT_FAIL);
        assert_eq!(verify_exit_code(&report(3, 0, 1), true), 0);
    }
}
