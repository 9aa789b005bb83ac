use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{fit_monomial_correction, Context, IdentityEntry, Params};

pub const REPORT_VERSION: u32 = 1;

/// Residuals longer than this are cut in the report.
const RESIDUAL_LIMIT: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Fitted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub id: String,
    pub params: Params,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub ms: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub fitted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: u32,
    pub command: String,
    pub cells: Vec<Cell>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0 && self.summary.fitted == 0
    }

    pub fn cells_for<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a Cell> {
        self.cells.iter().filter(move |c| c.id == id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    /// Try the fitter on every failing cell, not only for entries that ask for it.
    pub fit: bool,
    pub workers: usize,
    /// Record elapsed milliseconds; when off every cell reports 0.
    pub timing: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            fit: false,
            workers: 1,
            timing: true,
        }
    }
}

/// Evaluates every `(entry, params)` cell and collects the results in input order.
pub fn sweep(
    command: &str,
    jobs: &[(&IdentityEntry, Vec<Params>)],
    opts: SweepOptions,
) -> VerificationReport {
    let cells: Vec<(&IdentityEntry, &Params)> = jobs
        .iter()
        .flat_map(|(e, grid)| grid.iter().map(move |p| (*e, p)))
        .collect();
    let ctx = Context::new();
    let run = || -> Vec<Cell> {
        cells
            .par_iter()
            .map(|(e, p)| run_cell(&ctx, e, p, opts))
            .collect()
    };
    let cells = match rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
    {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    let mut summary = Summary::default();
    for c in &cells {
        match c.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Fitted => summary.fitted += 1,
        }
    }
    VerificationReport {
        version: REPORT_VERSION,
        command: command.to_string(),
        cells,
        summary,
    }
}

fn run_cell(ctx: &Context, entry: &IdentityEntry, p: &Params, opts: SweepOptions) -> Cell {
    let start = Instant::now();
    let mut cell = Cell {
        id: entry.id.to_string(),
        params: p.clone(),
        status: Status::Fail,
        residual: None,
        correction: None,
        error: None,
        ms: 0,
    };
    match entry.sides(ctx, p) {
        Err(e) => cell.error = Some(e.to_string()),
        Ok(sides) => {
            let residual = sides.residual();
            if residual.is_zero() {
                cell.status = Status::Pass;
            } else {
                let fitted = (opts.fit || entry.fit_default)
                    .then(|| fit_monomial_correction(&sides.lhs, &sides.rhs).ok())
                    .flatten();
                match fitted {
                    Some(c) => {
                        cell.status = Status::Fitted;
                        cell.correction = Some(c.to_string());
                    }
                    None => cell.residual = Some(truncate(residual.to_string())),
                }
            }
        }
    }
    if opts.timing {
        cell.ms = start.elapsed().as_millis() as u64;
    }
    cell
}

fn truncate(mut s: String) -> String {
    if s.len() > RESIDUAL_LIMIT {
        let mut cut = RESIDUAL_LIMIT;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        s.truncate(cut);
        s.push_str(" ...");
    }
    s
}
