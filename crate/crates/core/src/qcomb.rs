//! q-binomials, fibonomial coefficients and Fibonacci factorial products.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::PolyError;
use crate::poly::{Monomial, Poly, Var};
use crate::sequences::{fib, qfib, SeqCache};

/// Gaussian binomial [n, k]_q by the Pascal-type rule
/// [n, k] = [n−1, k−1] + q^k [n−1, k]. Zero outside 0 ≤ k ≤ n.
pub fn qbinom(n: i64, k: i64) -> Poly {
    if n < 0 || k < 0 || k > n {
        return Poly::zero();
    }
    let k = k.min(n - k) as usize;
    // row[j] = [m, j] for the current m
    let mut row = vec![Poly::one()];
    for m in 1..=n as usize {
        let width = (k + 1).min(m + 1);
        let mut next = Vec::with_capacity(width);
        for j in 0..width {
            let left = if j > 0 { row.get(j - 1) } else { None };
            let up = row
                .get(j)
                .map(|p| p.mul_monomial(&Monomial::var_pow(Var::Q, j as i32)));
            let val = match (left, up) {
                (Some(a), Some(b)) => a + &b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b,
                (None, None) => Poly::zero(),
            };
            next.push(val);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// Π_{j<n}(1 − q^j z) − Σ_k (−1)^k q^{C(k,2)} [n, k] z^k.
pub fn qbinom_theorem_residual(n: i64) -> Poly {
    let lhs = (0..n).fold(Poly::one(), |acc, j| {
        let factor = &Poly::one() - &Poly::from(Monomial::new(0, 0, j as i32, 1));
        &acc * &factor
    });
    let rhs: Poly = (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let mono = Monomial::new(0, 0, (k * (k - 1) / 2) as i32, k as i32);
            qbinom(n, k).mul_term(&mono, &BigInt::from(sign))
        })
        .sum();
    &lhs - &rhs
}

/// Integer binomial coefficient, zero outside 0 ≤ k ≤ n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Π_{j=0}^{k} C(k, j).
pub fn binom_product(k: i64) -> BigInt {
    (0..=k).map(|j| binomial(k, j)).product()
}

/// ⟨n, k⟩(x, s) = F_n F_{n−1}⋯F_{n−k+1} / (F_1 F_2⋯F_k).
pub fn fibonomial(n: i64, k: i64) -> Result<Poly, PolyError> {
    fibonomial_ell(n, k, 1)
}

/// ⟨k, j⟩(ℓ, x, s) = Π_{i<j} F_{(k−i)ℓ} / Π_{i=1}^{j} F_{iℓ}.
pub fn fibonomial_ell(k: i64, j: i64, ell: i64) -> Result<Poly, PolyError> {
    assert!(k >= 0 && ell >= 1, "fibonomial needs k >= 0 and ell >= 1");
    if j < 0 || j > k {
        return Ok(Poly::zero());
    }
    let num = Poly::product(&(0..j).map(|i| fib((k - i) * ell)).collect::<Vec<_>>());
    let den = Poly::product(&(1..=j).map(|i| fib(i * ell)).collect::<Vec<_>>());
    num.exact_div(&den)
}

/// The factor f(index, x, q^shift·s).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QFactor {
    pub index: i64,
    pub shift: i64,
}

impl QFactor {
    /// f(1, ·) = 1 is dropped (`None`); f(2, ·) = x does not depend on the shift.
    pub fn new(index: i64, shift: i64) -> Option<QFactor> {
        assert!(index >= 1, "ratio factors need a positive index");
        match index {
            1 => None,
            2 => Some(QFactor { index, shift: 0 }),
            _ => Some(QFactor { index, shift }),
        }
    }

    pub fn eval(&self, cache: &SeqCache) -> Poly {
        cache.qfib_shift(self.index, self.shift)
    }
}

impl fmt::Display for QFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shift {
            0 => write!(f, "f({},x,s)", self.index),
            1 => write!(f, "f({},x,q*s)", self.index),
            k => write!(f, "f({},x,q^{}*s)", self.index, k),
        }
    }
}

/// A product of q-Fibonacci factors divided by another, kept symbolic.
///
/// Both sides are sorted multisets with common factors cancelled, so two
/// ratios with the same value in lowest terms compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FactorRatio {
    num: Vec<QFactor>,
    den: Vec<QFactor>,
}

impl FactorRatio {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new<I, J>(num: I, den: J) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
        J: IntoIterator<Item = (i64, i64)>,
    {
        let num = num
            .into_iter()
            .filter_map(|(i, a)| QFactor::new(i, a))
            .collect();
        let den = den
            .into_iter()
            .filter_map(|(i, a)| QFactor::new(i, a))
            .collect();
        Self::from_factors(num, den)
    }

    fn from_factors(mut num: Vec<QFactor>, mut den: Vec<QFactor>) -> Self {
        num.sort_unstable();
        den.sort_unstable();
        let (mut i, mut j) = (0, 0);
        let (mut n_out, mut d_out) = (Vec::new(), Vec::new());
        while i < num.len() && j < den.len() {
            match num[i].cmp(&den[j]) {
                std::cmp::Ordering::Less => {
                    n_out.push(num[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    d_out.push(den[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        n_out.extend_from_slice(&num[i..]);
        d_out.extend_from_slice(&den[j..]);
        FactorRatio {
            num: n_out,
            den: d_out,
        }
    }

    pub fn numerator(&self) -> &[QFactor] {
        &self.num
    }

    pub fn denominator(&self) -> &[QFactor] {
        &self.den
    }

    pub fn mul(&self, other: &FactorRatio) -> FactorRatio {
        let num = self.num.iter().chain(&other.num).copied().collect();
        let den = self.den.iter().chain(&other.den).copied().collect();
        Self::from_factors(num, den)
    }

    /// Applies the `q -> 1/q, s -> q^{n−1}s` substitution factor by factor:
    /// f(i, x, q^a s) becomes f(i, x, q^{n−i−a} s).
    pub fn transform(&self, n: i64) -> FactorRatio {
        let map = |f: &QFactor| (f.index, n - f.index - f.shift);
        FactorRatio::new(self.num.iter().map(map), self.den.iter().map(map))
    }

    pub fn to_pair(&self, cache: &SeqCache) -> (Poly, Poly) {
        let num = self
            .num
            .iter()
            .fold(Poly::one(), |acc, f| &acc * &f.eval(cache));
        let den = self
            .den
            .iter()
            .fold(Poly::one(), |acc, f| &acc * &f.eval(cache));
        (num, den)
    }

    /// The polynomial value if the division is exact, else the pair.
    pub fn reduce(&self, cache: &SeqCache) -> Coefficient {
        let (num, den) = self.to_pair(cache);
        match num.exact_div(&den) {
            Ok(p) => Coefficient::Poly(p),
            Err(_) => Coefficient::Pair { num, den },
        }
    }
}

impl fmt::Display for FactorRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |v: &[QFactor]| {
            if v.is_empty() {
                "1".to_string()
            } else {
                v.iter()
                    .map(|f| f.to_string())
                    .collect::<Vec<_>>()
                    .join("*")
            }
        };
        write!(f, "{} / {}", side(&self.num), side(&self.den))
    }
}

/// A coefficient that may fail to be a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Poly(Poly),
    Pair { num: Poly, den: Poly },
}

impl Coefficient {
    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            Coefficient::Poly(p) => Some(p),
            Coefficient::Pair { .. } => None,
        }
    }

    /// Numerator and denominator (denominator 1 for a polynomial).
    pub fn into_pair(self) -> (Poly, Poly) {
        match self {
            Coefficient::Poly(p) => (p, Poly::one()),
            Coefficient::Pair { num, den } => (num, den),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Poly(p) => write!(f, "{}", p),
            Coefficient::Pair { num, den } => write!(f, "({}) / ({})", num, den),
        }
    }
}

/// ⟨k, j⟩(x, s, q) = Π_{i≤k} f(i,x,s) / (Π_{i≤j} f(i,x,q^{j−i}s) · Π_{i≤k−j} f(i,x,q^j s)).
pub fn qfibonomial_factors(k: i64, j: i64) -> FactorRatio {
    qfibonomial_ell_factors(k, j, 1)
}

/// The stride-ℓ version: every index i becomes ℓi and every shift is scaled by ℓ.
pub fn qfibonomial_ell_factors(m: i64, j: i64, ell: i64) -> FactorRatio {
    assert!(
        0 <= j && j <= m && ell >= 1,
        "need 0 <= j <= m and ell >= 1"
    );
    FactorRatio::new(
        (1..=m).map(|i| (ell * i, 0)),
        (1..=j)
            .map(|i| (ell * i, ell * (j - i)))
            .chain((1..=m - j).map(|i| (ell * i, ell * j))),
    )
}

/// The coefficient obtained from ⟨top, j⟩(x, s, q) by q → 1/q, s → q^{n−1}s:
/// Π_{i≤top} f(i,x,q^{n−i}s) / (Π_{i≤j} f(i,x,q^{n−j}s) · Π_{i≤top−j} f(i,x,q^{n−i−j}s)).
pub fn fibo_conj1_factors(top: i64, j: i64, n: i64) -> FactorRatio {
    assert!(0 <= j && j <= top);
    FactorRatio::new(
        (1..=top).map(|i| (i, n - i)),
        (1..=j)
            .map(|i| (i, n - j))
            .chain((1..=top - j).map(|i| (i, n - i - j))),
    )
}

pub fn qfibonomial(k: i64, j: i64) -> Coefficient {
    qfibonomial_factors(k, j).reduce(&SeqCache::new())
}

pub fn qfibonomial_ell(m: i64, j: i64, ell: i64) -> Coefficient {
    qfibonomial_ell_factors(m, j, ell).reduce(&SeqCache::new())
}

pub fn fibo_conj1(top: i64, j: i64, n: i64) -> Coefficient {
    fibo_conj1_factors(top, j, n).reduce(&SeqCache::new())
}

/// fac(n, q^m s, ℓ) = f(ℓ, x, q^m s) f(2ℓ, x, q^m s) ⋯ f(nℓ, x, q^m s).
pub fn fac(n: i64, shift: i64, ell: i64) -> Poly {
    Poly::product(
        &(1..=n)
            .map(|i| qfib(i * ell).subst_s_scale(shift as i32))
            .collect::<Vec<_>>(),
    )
}

/// Fac(n, s, ℓ) = F_ℓ F_{2ℓ} ⋯ F_{nℓ}.
pub fn fac_classical(n: i64, ell: i64) -> Poly {
    Poly::product(&(1..=n).map(|i| fib(i * ell)).collect::<Vec<_>>())
}

/// The fibonomial variants that have a symbol of their own.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FibonomialSpec {
    /// ⟨n, k⟩(x, s)
    Classical { n: i64, k: i64 },
    /// ⟨k, j⟩(x, s, q)
    QConj1 { k: i64, j: i64 },
    /// ⟨top, j⟩(x, q^{n−1}s, 1/q)
    FiboConj1 { top: i64, j: i64, n: i64 },
    /// ⟨k, j⟩(ℓ, x, s)
    ClassicalEll { k: i64, j: i64, ell: i64 },
    /// ⟨m, j⟩(ℓ, x, s, q)
    QEll { m: i64, j: i64, ell: i64 },
}

impl FibonomialSpec {
    pub fn evaluate(&self) -> Result<Coefficient, PolyError> {
        Ok(match *self {
            FibonomialSpec::Classical { n, k } => Coefficient::Poly(fibonomial(n, k)?),
            FibonomialSpec::ClassicalEll { k, j, ell } => {
                Coefficient::Poly(fibonomial_ell(k, j, ell)?)
            }
            FibonomialSpec::QConj1 { k, j } => qfibonomial(k, j),
            FibonomialSpec::FiboConj1 { top, j, n } => fibo_conj1(top, j, n),
            FibonomialSpec::QEll { m, j, ell } => qfibonomial_ell(m, j, ell),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    /// Quotient-formula oracle for [n, k]_q.
    fn qbinom_by_quotient(n: i64, k: i64) -> Poly {
        let one_minus_q_pow =
            |e: i64| &Poly::one() - &Poly::from(Monomial::var_pow(Var::Q, e as i32));
        let num = (0..k).fold(Poly::one(), |acc, i| &acc * &one_minus_q_pow(n - i));
        let den = (1..=k).fold(Poly::one(), |acc, i| &acc * &one_minus_q_pow(i));
        num.exact_div(&den).unwrap()
    }

    #[test]
    fn q_binomials() {
        assert_eq!(qbinom(4, 2), p("1 + q + 2*q^2 + q^3 + q^4"));
        assert_eq!(qbinom(7, 0), Poly::one());
        assert_eq!(qbinom(3, 5), Poly::zero());
        assert_eq!(qbinom(3, -1), Poly::zero());
        for n in 0..=9 {
            for k in 0..=n {
                assert_eq!(qbinom(n, k), qbinom_by_quotient(n, k), "[{n},{k}]");
            }
        }
    }

    #[test]
    fn q_binomial_theorem() {
        for n in 0..=8 {
            assert!(qbinom_theorem_residual(n).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn integer_binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binom_product(0), BigInt::from(1));
        assert_eq!(binom_product(2), BigInt::from(2));
        assert_eq!(binom_product(3), BigInt::from(9));
        assert_eq!(binom_product(4), BigInt::from(96));
        assert_eq!(binom_product(5), BigInt::from(2500));
    }

    #[test]
    fn fibonomials() {
        assert_eq!(fibonomial(4, 1).unwrap(), p("2*s*x + x^3"));
        assert_eq!(fibonomial(4, 2).unwrap(), p("2*s^2 + 3*s*x^2 + x^4"));
        let row5 = &p("2*s + x^2") * &p("s^2 + 3*s*x^2 + x^4");
        assert_eq!(fibonomial(5, 2).unwrap(), row5);
        assert_eq!(fibonomial_ell(2, 1, 2).unwrap(), p("x^2 + 2*s"));
        assert_eq!(fibonomial_ell(3, 3, 2).unwrap(), Poly::one());
    }

    #[test]
    fn q_fibonomials() {
        assert_eq!(qfibonomial(4, 0), Coefficient::Poly(Poly::one()));
        // ⟨2,1⟩ = f(1)f(2) / (f(1,s) f(1,qs)) = x
        assert_eq!(qfibonomial(2, 1), Coefficient::Poly(Poly::x()));
        // ⟨3,1⟩ = f(3,s)/f(2,qs) ... times f(2)/f(1): (x^2 + qs)
        assert_eq!(qfibonomial(3, 1), Coefficient::Poly(p("x^2 + q*s")));
        assert_eq!(qfibonomial_ell(5, 2, 1), qfibonomial(5, 2));
        for k in 0..=6 {
            for j in 0..=k {
                let c = qfibonomial(k, j);
                let (num, den) = c.into_pair();
                let classical = fibonomial(k, j).unwrap();
                assert_eq!(
                    &num.subst_q_one(),
                    &(&classical * &den.subst_q_one()),
                    "<{k},{j}> at q = 1"
                );
            }
        }
    }

    #[test]
    fn fibo_is_transformed_q_fibonomial() {
        for top in 1..=4 {
            for j in 0..=top {
                for n in 1..=5 {
                    assert_eq!(
                        fibo_conj1_factors(top, j, n),
                        qfibonomial_factors(top, j).transform(n)
                    );
                }
            }
        }
    }

    #[test]
    fn factorial_products() {
        assert_eq!(fac_classical(3, 1), p("x^3 + s*x"));
        assert_eq!(fac(0, 4, 2), Poly::one());
        assert_eq!(fac(2, 0, 1), Poly::x());
        assert_eq!(fac(3, 0, 1), p("x^3 + q*s*x"));
        assert_eq!(fac(3, 1, 1), p("x^3 + q^2*s*x"));
        assert_eq!(fac(2, 0, 2), p("x^4 + q*s*x^2 + q^2*s*x^2"));
    }

    #[test]
    fn ratio_cancellation() {
        let r = FactorRatio::new([(3, 0), (4, 1)], [(4, 1), (2, 5)]);
        assert_eq!(r.numerator(), &[QFactor { index: 3, shift: 0 }]);
        assert_eq!(r.denominator(), &[QFactor { index: 2, shift: 0 }]);
        assert_eq!(r.to_string(), "f(3,x,s) / f(2,x,s)");
    }
}
