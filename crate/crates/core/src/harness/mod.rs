//! The identity catalog and the machinery to sweep it over parameter grids.

mod builders;
mod fit;
mod sweep;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::HarnessError;
use crate::poly::Poly;
use crate::sequences::SeqCache;

pub use builders::{
    conj1_f_terms, conj1_fibo_terms, conj2_k2_terms, conj2_terms, det_table, CONJ3_ALT_PREFACTOR,
    CONJ3_PREFACTOR, CONJ4_K1_PREFACTOR, CONJ4_K2_PREFACTOR, CONJ4_PREFACTOR,
};
pub use fit::{fit_monomial_correction, integral, Exponent, PrefactorTemplate, SignedMonomial};
pub use sweep::{sweep, Cell, Status, Summary, SweepOptions, VerificationReport, REPORT_VERSION};

/// Named integer parameters of one identity instance.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params(BTreeMap<String, i64>);

impl Params {
    pub fn new<'a>(pairs: impl IntoIterator<Item = (&'a str, i64)>) -> Self {
        Params(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn get(&self, name: &str) -> Result<i64, HarnessError> {
        self.0
            .get(name)
            .copied()
            .ok_or_else(|| HarnessError::BadParams {
                id: String::new(),
                msg: format!("missing parameter {name}"),
            })
    }

    pub(crate) fn get_or_zero(&self, name: &str) -> i64 {
        self.0.get(name).copied().unwrap_or(0)
    }

    pub fn set(&mut self, name: &str, value: i64) {
        self.0.insert(name.to_string(), value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Shared sequence tables for the builders.
#[derive(Default)]
pub struct Context {
    pub cache: SeqCache,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    /// f(n, x, q^shift·s)
    pub fn f(&self, n: i64, shift: i64) -> Poly {
        self.cache.qfib_shift(n, shift)
    }

    /// F_n(x, s)
    pub fn big_f(&self, n: i64) -> Poly {
        self.cache.fib(n)
    }
}

/// The two sides of one identity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sides {
    pub lhs: Poly,
    pub rhs: Poly,
}

impl Sides {
    pub fn residual(&self) -> Poly {
        &self.lhs - &self.rhs
    }
}

type Builder = fn(&Context, &Params) -> Result<Sides, HarnessError>;

/// One identity of the catalog.
pub struct IdentityEntry {
    pub id: &'static str,
    /// Parameter names in grid order.
    pub params: &'static [&'static str],
    pub summary: &'static str,
    /// Whether the sweep tries the fitter on failing cells without being asked.
    pub fit_default: bool,
    pub prefactor_template: Option<&'static PrefactorTemplate>,
    builder: Builder,
    /// Lower bounds on parameters outside of which the identity is not stated.
    minimums: &'static [(&'static str, i64)],
    defaults: &'static [(&'static str, i64, i64)],
    /// Extra constraint applied to the default grid only.
    default_filter: Option<fn(&Params) -> bool>,
}

impl fmt::Debug for IdentityEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityEntry")
            .field("id", &self.id)
            .finish()
    }
}

impl IdentityEntry {
    pub fn check(&self, p: &Params) -> Result<(), HarnessError> {
        let bad = |msg: String| HarnessError::BadParams {
            id: self.id.to_string(),
            msg,
        };
        for name in self.params {
            if !p.0.contains_key(*name) {
                return Err(bad(format!("missing parameter {name}")));
            }
        }
        if let Some(extra) = p.0.keys().find(|k| !self.params.contains(&k.as_str())) {
            return Err(bad(format!("unexpected parameter {extra}")));
        }
        for (name, min) in self.minimums {
            let v = p.get_or_zero(name);
            if v < *min {
                return Err(bad(format!("{name} must be at least {min}, got {v}")));
            }
        }
        Ok(())
    }

    pub fn sides(&self, ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
        self.check(p)?;
        (self.builder)(ctx, p)
    }

    pub fn residual(&self, ctx: &Context, p: &Params) -> Result<Poly, HarnessError> {
        Ok(self.sides(ctx, p)?.residual())
    }

    fn in_domain(&self, p: &Params) -> bool {
        self.minimums
            .iter()
            .all(|(name, min)| p.get_or_zero(name) >= *min)
    }

    /// The grid used when no ranges are given.
    pub fn default_grid(&self) -> Vec<Params> {
        self.grid(&GridSpec::default())
    }

    /// Cartesian product of the parameter ranges, in parameter order.
    ///
    /// Ranges missing from `spec` fall back to the entry defaults, and only
    /// cells inside the entry's domain are kept.
    pub fn grid(&self, spec: &GridSpec) -> Vec<Params> {
        let mut uses_defaults_only = true;
        let ranges: Vec<(&str, RangeInclusive<i64>)> = self
            .params
            .iter()
            .map(|name| {
                let (_, lo, hi) = self
                    .defaults
                    .iter()
                    .find(|(d, _, _)| d == name)
                    .copied()
                    .unwrap_or((name, 0, 0));
                let range = match spec.range_for(self.id, name) {
                    Some(r) => {
                        uses_defaults_only = false;
                        r
                    }
                    None => lo..=hi,
                };
                let range = match spec.cap_for(name) {
                    Some(cap) => *range.start()..=(*range.end()).min(cap),
                    None => range,
                };
                (*name, range)
            })
            .collect();
        let mut cells = vec![Params::default()];
        for (name, range) in ranges {
            cells = cells
                .into_iter()
                .flat_map(|c| {
                    range.clone().map(move |v| {
                        let mut c = c.clone();
                        c.set(name, v);
                        c
                    })
                })
                .collect();
        }
        cells.retain(|c| self.in_domain(c));
        if uses_defaults_only {
            if let Some(filter) = self.default_filter {
                cells.retain(filter);
            }
        }
        cells
    }
}

/// Parameter ranges requested for a sweep; unset ranges use entry defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GridSpec {
    pub n: Option<RangeInclusive<i64>>,
    pub k: Option<RangeInclusive<i64>>,
    pub ell: Option<RangeInclusive<i64>>,
    pub m: Option<RangeInclusive<i64>>,
    /// The index N of the generalized Cassini determinant.
    pub big_n: Option<RangeInclusive<i64>>,
    /// Series truncation orders in s and q.
    pub order_s: Option<i64>,
    pub order_q: Option<i64>,
    pub max_k: Option<i64>,
    pub max_ell: Option<i64>,
}

impl GridSpec {
    fn range_for(&self, id: &str, name: &str) -> Option<RangeInclusive<i64>> {
        match (id, name) {
            ("gf_limit", "N") => self.order_s.map(|v| v..=v),
            ("gf_limit", "M") => self.order_q.map(|v| v..=v),
            (_, "N") => self.big_n.clone(),
            (_, "n") => self.n.clone(),
            (_, "k") => self.k.clone(),
            (_, "ell") => self.ell.clone(),
            (_, "m") => self.m.clone(),
            _ => None,
        }
    }

    fn cap_for(&self, name: &str) -> Option<i64> {
        match name {
            "k" => self.max_k,
            "ell" => self.max_ell,
            _ => None,
        }
    }
}

macro_rules! entry {
    (@or $default:expr) => { $default };
    (@or $default:expr, $value:expr) => { $value };
    (
        $id:literal, $builder:path, [$($p:literal),*], $summary:literal,
        min: [$(($mn:literal, $mv:expr)),*],
        defaults: [$(($dn:literal, $lo:expr, $hi:expr)),*]
        $(, filter: $filter:expr)?
        $(, template: $template:expr)?
        $(, fit: $fit:expr)?
    ) => {
        IdentityEntry {
            id: $id,
            params: &[$($p),*],
            summary: $summary,
            fit_default: entry!(@or false $(, $fit)?),
            prefactor_template: entry!(@or None $(, Some($template))?),
            builder: $builder,
            minimums: &[$(($mn, $mv)),*],
            defaults: &[$(($dn, $lo, $hi)),*],
            default_filter: entry!(@or None $(, Some($filter))?),
        }
    };
}

static CATALOG: [IdentityEntry; 21] = [
    entry!("power_rec_classical", builders::power_rec_classical, ["n", "k"],
        "recurrence of the k-th powers of Fibonacci polynomials",
        min: [("k", 1)], defaults: [("n", 3, 12), ("k", 1, 4)],
        filter: |p| p.get_or_zero("n") >= p.get_or_zero("k") + 2),
    entry!("squares_classical", builders::squares_classical, ["n"],
        "F_n^2 - 2F_{n-1}^2 - 2F_{n-2}^2 + F_{n-3}^2 = 0 for Fibonacci numbers",
        min: [], defaults: [("n", 3, 30)]),
    entry!("conj1_f", builders::conj1_f, ["n", "k"],
        "q-analog of the power recurrence, denominators cleared",
        min: [("k", 1)], defaults: [("n", -3, 8), ("k", 2, 3)]),
    entry!("conj1_fibo", builders::conj1_fibo, ["n", "k"],
        "transformed q-power recurrence in f(n-j, x, s)^k, denominators cleared",
        min: [("k", 1)], defaults: [("n", -3, 8), ("k", 2, 3)]),
    entry!("euler_cassini", builders::euler_cassini, ["n", "k"],
        "q-Euler-Cassini formula",
        min: [], defaults: [("n", -4, 8), ("k", 1, 6)]),
    entry!("basis_decomp", builders::basis_decomp, ["n", "k"],
        "f(n-k, x, q^k s) in the basis f(n, x, s), f(n-1, x, qs)",
        min: [], defaults: [("n", -4, 8), ("k", 1, 6)]),
    entry!("conj2", builders::conj2, ["n", "k", "ell"],
        "ell-strided q-power recurrence, denominators cleared",
        min: [("k", 1), ("ell", 1)], defaults: [("n", 3, 7), ("k", 1, 2), ("ell", 1, 3)]),
    entry!("threeterm_ell", builders::threeterm_ell, ["n", "ell"],
        "three-term recurrence of f(ell n, x, s), cleared by f(ell, x, q^ell s)",
        min: [("ell", 1)], defaults: [("n", 3, 8), ("ell", 1, 4)]),
    entry!("threeterm_classical", builders::threeterm_classical, ["n", "ell"],
        "F_{ell n} - L_ell F_{ell(n-1)} + (-s)^ell F_{ell(n-2)} = 0",
        min: [("ell", 1)], defaults: [("n", 3, 8), ("ell", 1, 4)]),
    entry!("gen_cassini", builders::gen_cassini, ["N", "m", "ell"],
        "generalized q-Cassini 2x2 determinant",
        min: [("m", 0), ("ell", 1)], defaults: [("N", -3, 6), ("m", 0, 3), ("ell", 1, 3)]),
    entry!("gf_limit", builders::gf_limit, ["k", "N", "M"],
        "limit of the q-Euler-Cassini formula for the series F(s), modulo (s^N, q^M)",
        min: [("k", 1), ("N", 1), ("M", 1)], defaults: [("k", 1, 4), ("N", 8, 8), ("M", 12, 12)]),
    entry!("conj2_k2", builders::conj2_k2, ["n", "ell"],
        "explicit k = 2 strided recurrence, denominators cleared",
        min: [("ell", 1)], defaults: [("n", 4, 7), ("ell", 1, 3)]),
    entry!("cassini_classical", builders::cassini_classical, ["n"],
        "Cassini identity det = (-1)^{n-1} s^{n-1}",
        min: [], defaults: [("n", 1, 10)]),
    entry!("det_power_classical", builders::det_power_classical, ["n", "k"],
        "det(F_{n+i-j}^k) in product form",
        min: [("k", 1)], defaults: [("n", 1, 10), ("k", 1, 3)]),
    entry!("q_cassini", builders::q_cassini, ["n"],
        "q-Cassini determinant d(n, s)",
        min: [], defaults: [("n", 1, 12)]),
    entry!("det_sq_q", builders::det_sq_q, ["n"],
        "3x3 determinant of squares of q-Fibonacci polynomials",
        min: [], defaults: [("n", 2, 8)]),
    entry!("conj3", builders::conj3, ["n", "k"],
        "det(f(n+i-j, x, q^j s)^k) in product form",
        min: [("k", 1)], defaults: [("n", 1, 6), ("k", 1, 2)],
        filter: |p| p.get_or_zero("n") >= p.get_or_zero("k"),
        template: &CONJ3_PREFACTOR, fit: true),
    entry!("conj4", builders::conj4, ["n", "k", "ell"],
        "det(f(ell(n+i-j), x, q^{ell j} s)^k) in product form",
        min: [("k", 1), ("ell", 1)], defaults: [("n", 1, 5), ("k", 1, 2), ("ell", 1, 2)],
        filter: |p| p.get_or_zero("n") >= p.get_or_zero("k"),
        template: &CONJ4_PREFACTOR, fit: true),
    entry!("conj4_k1", builders::conj4_k1, ["n", "ell"],
        "strided q-Cassini 2x2 determinant",
        min: [("ell", 1)], defaults: [("n", 1, 6), ("ell", 1, 3)],
        template: &CONJ4_K1_PREFACTOR),
    entry!("conj4_k2", builders::conj4_k2, ["n", "ell"],
        "strided 3x3 determinant of squares",
        min: [("ell", 1)], defaults: [("n", 2, 5), ("ell", 1, 2)],
        template: &CONJ4_K2_PREFACTOR),
    entry!("det_classical_ell", builders::det_classical_ell, ["n", "k", "ell"],
        "det(F_{ell(n+i-j)}^k) in product form",
        min: [("k", 1), ("ell", 1)], defaults: [("n", 1, 5), ("k", 1, 2), ("ell", 1, 2)],
        filter: |p| p.get_or_zero("n") >= p.get_or_zero("k")),
];

pub fn catalog() -> &'static [IdentityEntry] {
    &CATALOG
}

pub fn lookup(id: &str) -> Result<&'static IdentityEntry, HarnessError> {
    CATALOG
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| HarnessError::UnknownIdentity(id.to_string()))
}

/// Residual of one catalog instance; zero certifies the instance.
pub fn residual(id: &str, p: &Params) -> Result<Poly, HarnessError> {
    lookup(id)?.residual(&Context::new(), p)
}
