//! Fibonacci, Lucas and q-Fibonacci polynomials over all integer
//! indices, plus the truncated generating function of f(n, 1, s) as n → ∞.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::poly::{Monomial, Poly, Var};
use crate::qcomb::qbinom;

/// Which recurrence a table follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Fib,
    Lucas,
    QFib,
}

impl Kind {
    fn initial(self) -> (Poly, Poly) {
        match self {
            Kind::Fib | Kind::QFib => (Poly::zero(), Poly::one()),
            Kind::Lucas => (Poly::constant(2), Poly::x()),
        }
    }

    /// Coefficient of the `n − 2` term when computing index `n`.
    fn lag_coeff(self, n: i64) -> Monomial {
        match self {
            Kind::Fib | Kind::Lucas => Monomial::var(Var::S),
            Kind::QFib => Monomial::new(0, 1, (n - 2) as i32, 0),
        }
    }

    /// value(n) from value(n−1), value(n−2).
    fn forward(self, n: i64, prev: &Poly, prev2: &Poly) -> Poly {
        &(prev * &Poly::x()) + &prev2.mul_monomial(&self.lag_coeff(n))
    }

    /// value(n−2) from value(n), value(n−1).
    fn backward(self, n: i64, cur: &Poly, prev: &Poly) -> Poly {
        let diff = cur - &(prev * &Poly::x());
        diff.mul_monomial(&self.lag_coeff(n).inverse())
    }

    /// Values for indices `lo..=hi`, which must contain 0 and 1.
    fn run(self, lo: i64, hi: i64) -> (Vec<Poly>, Vec<Poly>) {
        let (v0, v1) = self.initial();
        let mut nonneg = vec![v0.clone(), v1.clone()];
        for n in 2..=hi {
            let k = n as usize;
            let next = self.forward(n, &nonneg[k - 1], &nonneg[k - 2]);
            nonneg.push(next);
        }
        // neg[i] holds index −(i + 1)
        let mut neg: Vec<Poly> = Vec::new();
        let (mut cur, mut prev) = (v1, v0);
        let mut n = 1;
        while n - 2 >= lo {
            let back = self.backward(n, &cur, &prev);
            neg.push(back.clone());
            cur = prev;
            prev = back;
            n -= 1;
        }
        (nonneg, neg)
    }

    fn compute(self, n: i64) -> Poly {
        let (nonneg, neg) = self.run(n.min(0), n.max(1));
        lookup(&nonneg, &neg, n).unwrap().clone()
    }
}

fn lookup<'a>(nonneg: &'a [Poly], neg: &'a [Poly], n: i64) -> Option<&'a Poly> {
    if n >= 0 {
        nonneg.get(n as usize)
    } else {
        neg.get((-n - 1) as usize)
    }
}

/// F_n(x, s): F₀ = 0, F₁ = 1, F_n = x·F_{n−1} + s·F_{n−2}, run backward for n < 0.
pub fn fib(n: i64) -> Poly {
    Kind::Fib.compute(n)
}

/// L_n(x, s): L₀ = 2, L₁ = x, same recurrence as F_n.
pub fn lucas(n: i64) -> Poly {
    Kind::Lucas.compute(n)
}

/// f(n, x, s): f(0) = 0, f(1) = 1, f(n) = x·f(n−1) + q^{n−2}·s·f(n−2).
///
/// Negative indices come from the same recurrence solved for f(n−2).
pub fn qfib(n: i64) -> Poly {
    Kind::QFib.compute(n)
}

/// f(n, x, q^shift·s).
pub fn qfib_shift(n: i64, shift: i64) -> Poly {
    qfib(n).subst_s_scale(shift as i32)
}

/// f(n, x, s) from the sum of q-binomials times q^{k²} x^{n−1−2k} s^k.
pub fn qfib_explicit(n: i64) -> Poly {
    assert!(n >= 0, "qfib_explicit needs n >= 0");
    let mut out = Poly::zero();
    let mut k = 0;
    while 2 * k < n {
        let mono = Monomial::new((n - 1 - 2 * k) as i32, k as i32, (k * k) as i32, 0);
        out += qbinom(n - 1 - k, k).mul_monomial(&mono);
        k += 1;
    }
    out
}

/// f(−n, x, s) = (−1)^{n−1} q^{C(n+1, 2)} f(n, x, q^{−n}s) / s^n.
pub fn qfib_neg_closed(n: i64) -> Poly {
    assert!(n >= 1, "qfib_neg_closed needs n >= 1");
    let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
    let mono = Monomial::new(0, -(n as i32), (n * (n + 1) / 2) as i32, 0);
    qfib_shift(n, -n).mul_term(&mono, &sign.into())
}

/// `q -> 1/q`, then `s -> q^{n−1} s`.
///
/// Sends f(m, x, q^a s) to f(m, x, q^{n−m−a} s), which is what turns an
/// identity in f(n, x, s), f(n−1, x, s), ... into one in f(n, x, s),
/// f(n−1, x, qs), f(n−2, x, q²s), ...
pub fn transform_t(p: &Poly, n: i64) -> Poly {
    p.subst_q_invert().subst_s_scale((n - 1) as i32)
}

struct Table {
    nonneg: Vec<Poly>,
    neg: Vec<Poly>,
}

/// Thread-safe memo tables for the three sequences.
///
/// Lookups behave exactly like [`fib`], [`lucas`] and [`qfib`]; the cache
/// only saves recomputation. Shifted values are derived by substitution
/// and not cached.
pub struct SeqCache {
    tables: HashMap<Kind, RwLock<Table>>,
}

impl Default for SeqCache {
    fn default() -> Self {
        Self::new()
    }
}

impl SeqCache {
    pub fn new() -> Self {
        let tables = [Kind::Fib, Kind::Lucas, Kind::QFib]
            .into_iter()
            .map(|k| {
                let (a, b) = k.initial();
                (
                    k,
                    RwLock::new(Table {
                        nonneg: vec![a, b],
                        neg: Vec::new(),
                    }),
                )
            })
            .collect();
        SeqCache { tables }
    }

    fn get(&self, kind: Kind, n: i64) -> Poly {
        let lock = &self.tables[&kind];
        {
            let t = lock.read().unwrap();
            if let Some(p) = lookup(&t.nonneg, &t.neg, n) {
                return p.clone();
            }
        }
        let mut t = lock.write().unwrap();
        if lookup(&t.nonneg, &t.neg, n).is_none() {
            let lo = n.min(-(t.neg.len() as i64));
            let hi = n.max(t.nonneg.len() as i64 - 1);
            let (nonneg, neg) = kind.run(lo, hi);
            t.nonneg = nonneg;
            t.neg = neg;
        }
        lookup(&t.nonneg, &t.neg, n).unwrap().clone()
    }

    pub fn fib(&self, n: i64) -> Poly {
        self.get(Kind::Fib, n)
    }

    pub fn lucas(&self, n: i64) -> Poly {
        self.get(Kind::Lucas, n)
    }

    pub fn qfib(&self, n: i64) -> Poly {
        self.get(Kind::QFib, n)
    }

    pub fn qfib_shift(&self, n: i64, shift: i64) -> Poly {
        self.qfib(n).subst_s_scale(shift as i32)
    }
}

/// A power series in s and q kept modulo (s^N, q^M).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order_s: i32,
    order_q: i32,
    poly: Poly,
}

impl TruncatedSeries {
    /// Truncates `p`, which must only involve nonnegative powers of s and q.
    pub fn new(p: &Poly, order_s: i32, order_q: i32) -> Self {
        assert!(order_s >= 1 && order_q >= 1);
        let poly = Poly::from_terms(
            p.terms()
                .filter(|(m, _)| m.exp(Var::S) < order_s && m.exp(Var::Q) < order_q)
                .map(|(m, c)| {
                    assert!(
                        m.exp(Var::S) >= 0 && m.exp(Var::Q) >= 0,
                        "series terms need nonnegative s and q exponents"
                    );
                    (*m, c.clone())
                }),
        );
        TruncatedSeries {
            order_s,
            order_q,
            poly,
        }
    }

    pub fn order_s(&self) -> i32 {
        self.order_s
    }

    pub fn order_q(&self) -> i32 {
        self.order_q
    }

    pub fn as_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// The coefficient of s^k, a polynomial in q.
    pub fn coefficient(&self, k: i32) -> Poly {
        Poly::from_terms(
            self.poly
                .terms()
                .filter(|(m, _)| m.exp(Var::S) == k)
                .map(|(m, c)| (m.with_exp(Var::S, 0), c.clone())),
        )
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        Self::new(&(&self.poly * p), self.order_s, self.order_q)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&(&self.poly + &other.poly), self.order_s, self.order_q)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&(&self.poly - &other.poly), self.order_s, self.order_q)
    }

    /// F(q^a s) from F(s).
    pub fn subst_s_scale(&self, a: i32) -> Self {
        Self::new(&self.poly.subst_s_scale(a), self.order_s, self.order_q)
    }
}

/// Σ_{k<N} q^{k²} / ((1−q)(1−q²)⋯(1−q^k)) · s^k modulo q^M.
pub fn gf_truncated(order_s: i32, order_q: i32) -> TruncatedSeries {
    assert!(order_s >= 1 && order_q >= 1);
    let m = order_q;
    let trunc_q = |p: &Poly| TruncatedSeries::new(p, 1, m).poly;
    // 1/((q;q)_k) mod q^M, built one geometric factor at a time
    let mut inverse = Poly::one();
    let mut total = Poly::zero();
    for k in 0..order_s {
        if k > 0 {
            let geometric = Poly::from_terms(
                (0..)
                    .map(|t| t * k)
                    .take_while(|&e| e < m)
                    .map(|e| (Monomial::var_pow(Var::Q, e), 1.into())),
            );
            inverse = trunc_q(&(&inverse * &geometric));
        }
        let k2 = k as i64 * k as i64;
        if k2 >= m as i64 {
            continue;
        }
        let coeff = trunc_q(&inverse.mul_monomial(&Monomial::var_pow(Var::Q, k2 as i32)));
        total += coeff.mul_monomial(&Monomial::var_pow(Var::S, k));
    }
    TruncatedSeries::new(&total, order_s, order_q)
}
