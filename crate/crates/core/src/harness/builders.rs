//! Residual builders, one per catalog entry.
//!
//! Each builder returns both sides of its identity. Sum identities put every
//! term on the left and zero on the right; determinant identities keep the
//! determinant on the left and the closed form on the right.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::fit::{integral, ratio, signed_mono, Exponent, PrefactorTemplate};
use super::{Context, Params, Sides};
use crate::error::HarnessError;
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, Var};
use crate::qcomb::{
    binom_product, fibo_conj1_factors, fibonomial, qfibonomial_ell_factors, qfibonomial_factors,
    FactorRatio, QFactor,
};
use crate::sequences::gf_truncated;

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn binom3(n: i64) -> i64 {
    n * (n - 1) * (n - 2) / 6
}

/// j(j−1)(2j−1)/6, the q-exponent attached to the j-th term of the q-recurrence.
fn pyramid(j: i64) -> i64 {
    j * (j - 1) * (2 * j - 1) / 6
}

/// One term of a sum identity: `coeff · ratio · body` with `ratio` symbolic.
pub(crate) struct RatTerm {
    pub coeff: Poly,
    pub ratio: FactorRatio,
    pub body: Poly,
}

/// Multiplies every term by the least common multiple of the denominators,
/// taken as a multiset of factors, and returns the cleared terms.
pub(crate) fn clear_denominators(ctx: &Context, terms: &[RatTerm]) -> Vec<Poly> {
    let mut lcm: BTreeMap<QFactor, usize> = BTreeMap::new();
    for t in terms {
        for (f, c) in multiplicities(t.ratio.denominator()) {
            let e = lcm.entry(f).or_default();
            *e = (*e).max(c);
        }
    }
    terms
        .iter()
        .map(|t| {
            let own = multiplicities(t.ratio.denominator());
            let mut product = &t.coeff * &t.body;
            for f in t.ratio.numerator() {
                product = &product * &f.eval(&ctx.cache);
            }
            for (f, c) in &lcm {
                let missing = c - own.get(f).copied().unwrap_or(0);
                if missing > 0 {
                    product = &product * &f.eval(&ctx.cache).pow(missing as u32);
                }
            }
            product
        })
        .collect()
}

fn multiplicities(fs: &[QFactor]) -> BTreeMap<QFactor, usize> {
    let mut m = BTreeMap::new();
    for f in fs {
        *m.entry(*f).or_default() += 1;
    }
    m
}

fn sum_sides(terms: Vec<Poly>) -> Sides {
    Sides {
        lhs: terms.into_iter().sum(),
        rhs: Poly::zero(),
    }
}

fn det(m: PolyMatrix) -> Result<Poly, HarnessError> {
    Ok(m.det()?)
}

fn q_exp(what: &str, r: Exponent) -> Result<i64, HarnessError> {
    integral(what, r).map(i64::from)
}

fn prefactor(t: &PrefactorTemplate, p: &Params) -> Result<Poly, HarnessError> {
    Ok(t.evaluate(p)?.to_poly())
}

fn f_power(ctx: &Context, n: i64, shift: i64, k: i64) -> Poly {
    ctx.f(n, shift).pow(k as u32)
}

pub(crate) fn power_rec_classical(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    let (n, k) = (p.get("n")?, p.get("k")?);
    let mut terms = Vec::new();
    for j in 0..=k + 1 {
        let c = &signed_mono(binom2(j + 1), 0, binom2(j), 0) * &fibonomial(k + 1, j)?;
        terms.push(&c * &ctx.big_f(n - j).pow(k as u32));
    }
    Ok(sum_sides(terms))
}

pub(crate) fn squares_classical(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    let n = p.get("n")?;
    let at_one = |m: i64| -> Result<Poly, HarnessError> {
        let f = ctx.big_f(m).subst_int(Var::X, 1)?.subst_int(Var::S, 1)?;
        Ok(f.pow(2))
    };
    let lhs = &(&at_one(n)? - &at_one(n - 1)?.scale(&BigInt::from(2)))
        - &(&at_one(n - 2)?.scale(&BigInt::from(2)) - &at_one(n - 3)?);
    Ok(Sides {
        lhs,
        rhs: Poly::zero(),
    })
}

/// The cleared terms of the q-analog of the power recurrence, j = 0, …, k+1.
pub fn conj1_f_terms(ctx: &Context, n: i64, k: i64) -> Vec<Poly> {
    let terms: Vec<RatTerm> = (0..=k + 1)
        .map(|j| RatTerm {
            coeff: signed_mono(binom2(j + 1), pyramid(j), binom2(j), 0),
            ratio: qfibonomial_factors(k + 1, j),
            body: f_power(ctx, n - j, j, k),
        })
        .collect();
    clear_denominators(ctx, &terms)
}

/// The cleared terms of the transformed recurrence, j = 0, …, k+1.
pub fn conj1_fibo_terms(ctx: &Context, n: i64, k: i64) -> Vec<Poly> {
    let terms: Vec<RatTerm> = (0..=k + 1)
        .map(|j| RatTerm {
            coeff: signed_mono(
                binom2(j + 1),
                (n - 1) * binom2(j) - pyramid(j),
                binom2(j),
                0,
            ),
            ratio: fibo_conj1_factors(k + 1, j, n),
            body: f_power(ctx, n - j, 0, k),
        })
        .collect();
    clear_denominators(ctx, &terms)
}

pub(crate) fn conj1_f(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    Ok(sum_sides(conj1_f_terms(ctx, p.get("n")?, p.get("k")?)))
}

pub(crate) fn conj1_fibo(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    Ok(sum_sides(conj1_fibo_terms(ctx, p.get("n")?, p.get("k")?)))
}

fn euler_v(k: i64) -> Poly {
    signed_mono(k, binom2(k), k - 1, 0)
}

pub(crate) fn euler_cassini(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    let (n, k) = (p.get("n")?, p.get("k")?);
    let lhs = &(&ctx.f(k - 1, 1) * &ctx.f(n + k, 0)) - &(&ctx.f(k, 0) * &ctx.f(n + k - 1, 1));
    let rhs = &euler_v(k) * &ctx.f(n, k);
    Ok(Sides { lhs, rhs })
}

pub(crate) fn basis_decomp(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    let (n, k) = (p.get("n")?, p.get("k")?);
    let lhs = &euler_v(k) * &ctx.f(n - k, k);
    let rhs = &(&ctx.f(k - 1, 1) * &ctx.f(n, 0)) - &(&ctx.f(k, 0) * &ctx.f(n - 1, 1));
    Ok(Sides { lhs, rhs })
}

/// The cleared terms of the ℓ-strided q-recurrence, j = 0, …, k+1.
pub fn conj2_terms(ctx: &Context, n: i64, k: i64, ell: i64) -> Result<Vec<Poly>, HarnessError> {
    let mut terms = Vec::new();
    for j in 0..=k + 1 {
        let power = ell * binom2(j);
        let q = q_exp("q", ratio((4 * j + 1) * ell - 3, 6) * power)?;
        terms.push(RatTerm {
            coeff: signed_mono(j + power, q, power, 0),
            ratio: qfibonomial_ell_factors(k + 1, j, ell),
            body: f_power(ctx, ell * (n - j), ell * j, k),
        });
    }
    Ok(clear_denominators(ctx, &terms))
}

pub(crate) fn conj2(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    let terms = conj2_terms(ctx, p.get("n")?, p.get("k")?, p.get("ell")?)?;
    Ok(sum_sides(terms))
}

pub(crate) fn threeterm_ell(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    let (n, l) = (p.get("n")?, p.get("ell")?);
    let terms = [
        RatTerm {
            coeff: Poly::one(),
            ratio: FactorRatio::one(),
            body: ctx.f(l * n, 0),
        },
        RatTerm {
            coeff: Poly::constant(-1),
            ratio: FactorRatio::new([(2 * l, 0)], [(l, l)]),
            body: ctx.f(l * (n - 1), l),
        },
        RatTerm {
            coeff: signed_mono(l, l * (3 * l - 1) / 2, l, 0),
            ratio: FactorRatio::new([(l, 0)], [(l, l)]),
            body: ctx.f(l * (n - 2), 2 * l),
        },
    ];
    Ok(sum_sides(clear_denominators(ctx, &terms)))
}

pub(crate) fn threeterm_classical(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    let (n, l) = (p.get("n")?, p.get("ell")?);
    let lhs = &(&ctx.big_f(l * n) - &(&ctx.cache.lucas(l) * &ctx.big_f(l * (n - 1))))
        + &(&signed_mono(l, 0, l, 0) * &ctx.big_f(l * (n - 2)));
    Ok(Sides {
        lhs,
        rhs: Poly::zero(),
    })
}

pub(crate) fn gen_cassini(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    let (big_n, m, l) = (p.get("N")?, p.get("m")?, p.get("ell")?);
    let lhs = det(PolyMatrix::from_rows(vec![
        vec![ctx.f(big_n + (m + 1) * l, 0), ctx.f((m + 1) * l, 0)],
        vec![ctx.f(big_n + m * l, l), ctx.f(m * l, l)],
    ])?)?;
    let q = q_exp("q", ratio(m * l * ((m + 2) * l - 1), 2))?;
    let rhs = &(&signed_mono(m * l - 1, q, m * l, 0) * &ctx.f(l, 0)) * &ctx.f(big_n, (m + 1) * l);
    Ok(Sides { lhs, rhs })
}

pub(crate) fn gf_limit(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    let (k, order_s, order_q) = (p.get("k")?, p.get("N")?, p.get("M")?);
    let (order_s, order_q) = (order_s as i32, order_q as i32);
    let gf = gf_truncated(order_s, order_q);
    let at_x1 = |n: i64, shift: i64| -> Result<Poly, HarnessError> {
        Ok(ctx.f(n, shift).subst_int(Var::X, 1)?)
    };
    let lhs = gf
        .mul_poly(&at_x1(k - 1, 1)?)
        .sub(&gf.subst_s_scale(1).mul_poly(&at_x1(k, 0)?));
    let rhs = gf.subst_s_scale(k as i32).mul_poly(&euler_v(k));
    Ok(Sides {
        lhs: lhs.as_poly().clone(),
        rhs: rhs.as_poly().clone(),
    })
}

/// The cleared terms of the explicit k = 2 strided recurrence.
pub fn conj2_k2_terms(ctx: &Context, n: i64, l: i64) -> Vec<Poly> {
    let sq = |m: i64, shift: i64| f_power(ctx, m, shift, 2);
    let terms = [
        RatTerm {
            coeff: Poly::one(),
            ratio: FactorRatio::one(),
            body: sq(l * n, 0),
        },
        RatTerm {
            coeff: Poly::constant(-1),
            ratio: FactorRatio::new([(3 * l, 0), (2 * l, 0)], [(l, l), (2 * l, l)]),
            body: sq(l * n - l, l),
        },
        RatTerm {
            coeff: signed_mono(l, l * (3 * l - 1) / 2, l, 0),
            ratio: FactorRatio::new([(3 * l, 0), (l, 0)], [(l, l), (l, 2 * l)]),
            body: sq(l * n - 2 * l, 2 * l),
        },
        RatTerm {
            coeff: signed_mono(l - 1, l * (13 * l - 3) / 2, 3 * l, 0),
            ratio: FactorRatio::new([(l, 0), (2 * l, 0)], [(l, 2 * l), (2 * l, l)]),
            body: sq(l * n - 3 * l, 3 * l),
        },
    ];
    clear_denominators(ctx, &terms)
}

pub(crate) fn conj2_k2(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    Ok(sum_sides(conj2_k2_terms(ctx, p.get("n")?, p.get("ell")?)))
}

pub(crate) fn cassini_classical(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    let n = p.get("n")?;
    let lhs = det(PolyMatrix::from_rows(vec![
        vec![ctx.big_f(n), ctx.big_f(n - 1)],
        vec![ctx.big_f(n + 1), ctx.big_f(n)],
    ])?)?;
    Ok(Sides {
        lhs,
        rhs: signed_mono(n - 1, 0, n - 1, 0),
    })
}

/// (k+1)×(k+1) matrix with entries `entry(n + i − j, j)`.
fn toeplitz_like(k: i64, entry: impl Fn(i64, i64) -> Poly) -> PolyMatrix {
    let size = (k + 1) as usize;
    PolyMatrix::from_fn(size, size, |i, j| entry(i as i64 - j as i64, j as i64))
}

pub(crate) fn det_power_classical(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    classical_strided(ctx, p.get("n")?, p.get("k")?, 1)
}

pub(crate) fn det_classical_ell(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    classical_strided(ctx, p.get("n")?, p.get("k")?, p.get("ell")?)
}

fn classical_strided(ctx: &Context, n: i64, k: i64, l: i64) -> Result<Sides, HarnessError> {
    let lhs = det(toeplitz_like(k, |d, _| {
        ctx.big_f(l * (n + d)).pow(k as u32)
    }))?;
    let e = binom2(k + 1) * (n - k) + 2 * binom3(k + 1);
    let mut rhs = signed_mono(l * binom2(k + 1) * (n - k), 0, l * e, 0).scale(&binom_product(k));
    for j in 0..k {
        let fac = Poly::product(&(1..=k - j).map(|i| ctx.big_f(i * l)).collect::<Vec<_>>());
        rhs = &rhs * &fac.pow(2);
    }
    Ok(Sides { lhs, rhs })
}

pub(crate) fn q_cassini(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    let n = p.get("n")?;
    let lhs = det(PolyMatrix::from_rows(vec![
        vec![ctx.f(n, 0), ctx.f(n - 1, 1)],
        vec![ctx.f(n + 1, 0), ctx.f(n, 1)],
    ])?)?;
    Ok(Sides {
        lhs,
        rhs: signed_mono(n - 1, binom2(n), n - 1, 0),
    })
}

pub(crate) fn det_sq_q(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    let n = p.get("n")?;
    let lhs = det(toeplitz_like(2, |d, j| f_power(ctx, n + d, j, 2)))?;
    let q = q_exp("q", ratio((n + 1) * (3 * n - 4), 2))?;
    let rhs = signed_mono(n, q, 3 * n - 4, 2).scale(&BigInt::from(2));
    Ok(Sides { lhs, rhs })
}

fn fac_q(ctx: &Context, n: i64, shift: i64, l: i64) -> Poly {
    Poly::product(&(1..=n).map(|i| ctx.f(i * l, shift)).collect::<Vec<_>>())
}

/// det(f(ℓ(n+i−j), x, q^{ℓj}s)^k) against its product form.
fn q_strided(
    ctx: &Context,
    p: &Params,
    template: &PrefactorTemplate,
    n: i64,
    k: i64,
    l: i64,
) -> Result<Sides, HarnessError> {
    let lhs = det(toeplitz_like(k, |d, j| f_power(ctx, l * (n + d), l * j, k)))?;
    let mut rhs = prefactor(template, p)?.scale(&binom_product(k));
    for j in 0..k {
        rhs = &rhs * &fac_q(ctx, k - j, l * j, l);
        rhs = &rhs * &fac_q(ctx, k - j, l * (n + j), l);
    }
    Ok(Sides { lhs, rhs })
}

pub(crate) fn conj3(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    let (n, k) = (p.get("n")?, p.get("k")?);
    q_strided(ctx, p, &CONJ3_PREFACTOR, n, k, 1)
}

pub(crate) fn conj4(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    let (n, k, l) = (p.get("n")?, p.get("k")?, p.get("ell")?);
    q_strided(ctx, p, &CONJ4_PREFACTOR, n, k, l)
}

pub(crate) fn conj4_k1(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    let (n, l) = (p.get("n")?, p.get("ell")?);
    let lhs = det(PolyMatrix::from_rows(vec![
        vec![ctx.f(n * l, 0), ctx.f((n - 1) * l, l)],
        vec![ctx.f((n + 1) * l, 0), ctx.f(n * l, l)],
    ])?)?;
    let rhs = &(&prefactor(&CONJ4_K1_PREFACTOR, p)? * &ctx.f(l, 0)) * &ctx.f(l, n * l);
    Ok(Sides { lhs, rhs })
}

pub(crate) fn conj4_k2(ctx: &Context, p: &Params) -> Result<Sides, HarnessError> {
    let (n, l) = (p.get("n")?, p.get("ell")?);
    let lhs = det(toeplitz_like(2, |d, j| f_power(ctx, l * (n + d), l * j, 2)))?;
    let factors = [
        ctx.f(2 * l, 0),
        ctx.f(2 * l, n * l),
        ctx.f(l, 0),
        ctx.f(l, l),
        ctx.f(l, n * l),
        ctx.f(l, (n + 1) * l),
    ];
    let rhs =
        &prefactor(&CONJ4_K2_PREFACTOR, p)?.scale(&BigInt::from(2)) * &Poly::product(&factors);
    Ok(Sides { lhs, rhs })
}

/// det(f(k+i−j, x, q^j s)^k) for k = 1, …, max_k.
pub fn det_table(ctx: &Context, max_k: i64) -> Result<Vec<Poly>, HarnessError> {
    (1..=max_k)
        .map(|k| det(toeplitz_like(k, |d, j| f_power(ctx, k + d, j, k))))
        .collect()
}

fn int(v: i64) -> Exponent {
    Exponent::from_integer(v)
}

fn p_nk(p: &Params) -> (i64, i64) {
    (p.get_or_zero("n"), p.get_or_zero("k"))
}

fn conj3_power(p: &Params) -> i64 {
    let (n, k) = p_nk(p);
    2 * binom3(k + 1) + binom2(k + 1) * (n - k)
}

/// (−1)^{C(k+1,2)(n−k)} (q^{(n+k−1)/2} s)^{2C(k+1,3) + C(k+1,2)(n−k)}.
pub const CONJ3_PREFACTOR: PrefactorTemplate = PrefactorTemplate {
    sign: |p| {
        let (n, k) = p_nk(p);
        int(binom2(k + 1) * (n - k))
    },
    q: |p| {
        let (n, k) = p_nk(p);
        ratio(n + k - 1, 2) * conj3_power(p)
    },
    s: |p| int(conj3_power(p)),
    x: super::fit::zero_exp,
};

/// The alternative sign reading (−1)^{C(n−k,2)}.
pub const CONJ3_ALT_PREFACTOR: PrefactorTemplate = PrefactorTemplate {
    sign: |p| {
        let (n, k) = p_nk(p);
        int(binom2(n - k))
    },
    ..CONJ3_PREFACTOR
};

fn conj4_power(p: &Params) -> i64 {
    p.get_or_zero("ell") * conj3_power(p)
}

/// (−1)^{ℓC(k+1,2)(n−k)} (q^{(ℓ(n+k)−1)/2} s)^{ℓ(C(k+1,2)(n−k) + 2C(k+1,3))}.
pub const CONJ4_PREFACTOR: PrefactorTemplate = PrefactorTemplate {
    sign: |p| {
        let (n, k) = p_nk(p);
        int(p.get_or_zero("ell") * binom2(k + 1) * (n - k))
    },
    q: |p| {
        let (n, k) = p_nk(p);
        ratio(p.get_or_zero("ell") * (n + k) - 1, 2) * conj4_power(p)
    },
    s: |p| int(conj4_power(p)),
    x: super::fit::zero_exp,
};

/// (−1)^{(n−1)ℓ} (q^{(ℓ(n+1)−1)/2} s)^{(n−1)ℓ}.
pub const CONJ4_K1_PREFACTOR: PrefactorTemplate = PrefactorTemplate {
    sign: |p| int((p.get_or_zero("n") - 1) * p.get_or_zero("ell")),
    q: |p| {
        let (n, l) = (p.get_or_zero("n"), p.get_or_zero("ell"));
        ratio(l * (n + 1) - 1, 2) * ((n - 1) * l)
    },
    s: |p| int((p.get_or_zero("n") - 1) * p.get_or_zero("ell")),
    x: super::fit::zero_exp,
};

/// (−1)^{nℓ} (q^{(ℓ(n+2)−1)/2} s)^{ℓ(3n−4)}.
pub const CONJ4_K2_PREFACTOR: PrefactorTemplate = PrefactorTemplate {
    sign: |p| int(p.get_or_zero("n") * p.get_or_zero("ell")),
    q: |p| {
        let (n, l) = (p.get_or_zero("n"), p.get_or_zero("ell"));
        ratio(l * (n + 2) - 1, 2) * (l * (3 * n - 4))
    },
    s: |p| int(p.get_or_zero("ell") * (3 * p.get_or_zero("n") - 4)),
    x: super::fit::zero_exp,
};
