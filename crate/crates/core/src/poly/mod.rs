//! Sparse Laurent polynomials with integer coefficients in x, s, q, z.

mod monomial;
mod text;

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use crate::error::PolyError;
pub use monomial::{Monomial, Var};

/// A Laurent polynomial: a finite map from monomials to nonzero integers.
///
/// Terms are kept sorted in descending monomial order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

/// A rational point at which to evaluate a polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub x: BigRational,
    pub s: BigRational,
    pub q: BigRational,
    pub z: BigRational,
}

impl Point {
    pub fn integers(x: i64, s: i64, q: i64, z: i64) -> Self {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        Point {
            x: r(x),
            s: r(s),
            q: r(q),
            z: r(z),
        }
    }

    fn get(&self, v: Var) -> &BigRational {
        match v {
            Var::X => &self.x,
            Var::S => &self.s,
            Var::Q => &self.q,
            Var::Z => &self.z,
        }
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), 1)
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn s() -> Self {
        Self::var(Var::S)
    }

    pub fn q() -> Self {
        Self::var(Var::Q)
    }

    pub fn z() -> Self {
        Self::var(Var::Z)
    }

    /// `c * m`.
    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        Poly { terms }
    }

    fn from_btree(map: BTreeMap<Monomial, BigInt>) -> Self {
        Poly {
            terms: map
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn trailing_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    /// The single term of a monomial polynomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((m, c)),
            _ => None,
        }
    }

    /// The integer value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// The gcd of the coefficients, zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) != 0)
    }

    /// Smallest and largest exponent of `v`; `None` for the zero polynomial.
    pub fn exponent_range(&self, v: Var) -> Option<(i32, i32)> {
        let mut it = self.terms.iter().map(|(m, _)| m.exp(v));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// `c * m * self`; multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        if e == 0 {
            return Poly::one();
        }
        if let Some((m, c)) = self.as_monomial() {
            return Poly::term(m.pow(e as i32), num_traits::pow(c.clone(), e as usize));
        }
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = &base * &base;
        }
        result
    }

    /// Product of an iterator of polynomials; the empty product is 1.
    pub fn product<'a, I: IntoIterator<Item = &'a Poly>>(it: I) -> Poly {
        it.into_iter().fold(Poly::one(), |acc, p| &acc * p)
    }

    /// Exact quotient `self / divisor`.
    ///
    /// A variable is treated as invertible only if one of the operands
    /// already carries a negative exponent in it; otherwise the quotient must
    /// be polynomial in that variable. So `(x^2 + s) / x` fails while
    /// `(x + s*x^-1) / x` succeeds.
    ///
    /// Ordered long division. A quotient term outside the per-variable
    /// exponent box forced by degree additivity means no exact quotient
    /// exists, which also bounds the number of steps.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly, PolyError> {
        self.divide(divisor, false)
    }

    /// Exact quotient in the full Laurent ring, where every monomial is a
    /// unit; `(x^2 + s) / x = x + s*x^-1`.
    pub fn exact_div_laurent(&self, divisor: &Poly) -> Result<Poly, PolyError> {
        self.divide(divisor, true)
    }

    fn divide(&self, divisor: &Poly, laurent: bool) -> Result<Poly, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let not_divisible = || PolyError::NotDivisible {
            dividend: truncate_text(&self.to_string()),
            divisor: truncate_text(&divisor.to_string()),
        };
        let mut lo = [0i32; 4];
        let mut hi = [0i32; 4];
        for v in Var::ALL {
            let (alo, ahi) = self.exponent_range(v).unwrap();
            let (blo, bhi) = divisor.exponent_range(v).unwrap();
            lo[v.index()] = if !laurent && alo >= 0 && blo >= 0 {
                (alo - blo).max(0)
            } else {
                alo - blo
            };
            hi[v.index()] = ahi - bhi;
            if hi[v.index()] < lo[v.index()] {
                return Err(not_divisible());
            }
        }

        let in_box = |m: &Monomial| {
            Var::ALL.iter().all(|v| {
                let e = m.exp(*v);
                e >= lo[v.index()] && e <= hi[v.index()]
            })
        };

        if let Some((m, c)) = divisor.as_monomial() {
            let inv = m.inverse();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (t, a) in &self.terms {
                if !in_box(&t.mul(&inv)) || !(a % c).is_zero() {
                    return Err(not_divisible());
                }
                terms.push((t.mul(&inv), a / c));
            }
            return Ok(Poly { terms });
        }

        let (lead_m, lead_c) = divisor.leading_term().unwrap();
        let mut rem: BTreeMap<Monomial, BigInt> =
            self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        let mut quotient = Vec::new();
        while let Some((rm, rc)) = rem.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            let qm = rm.div(lead_m);
            if !in_box(&qm) || !(&rc % lead_c).is_zero() {
                return Err(not_divisible());
            }
            let qc = &rc / lead_c;
            for (dm, dc) in &divisor.terms {
                let key = dm.mul(&qm);
                let prod = dc * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= prod;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-prod);
                    }
                }
            }
            quotient.push((qm, qc));
        }
        // quotient terms were produced in strictly descending order
        Ok(Poly { terms: quotient })
    }

    /// Applies a monomial map term by term and re-canonicalizes.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> Poly {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// `s -> q^m s`: each q-exponent grows by `m` times the s-exponent.
    pub fn subst_s_scale(&self, m: i32) -> Poly {
        if m == 0 {
            return self.clone();
        }
        self.map_monomials(|t| t.with_exp(Var::Q, t.exp(Var::Q) + m * t.exp(Var::S)))
    }

    /// `q -> 1/q`.
    pub fn subst_q_invert(&self) -> Poly {
        self.map_monomials(|t| t.with_exp(Var::Q, -t.exp(Var::Q)))
    }

    /// `q -> 1`.
    pub fn subst_q_one(&self) -> Poly {
        self.map_monomials(|t| t.with_exp(Var::Q, 0))
    }

    /// Replaces the variable `v` by the monomial `w`.
    pub fn subst_var_monomial(&self, v: Var, w: &Monomial) -> Poly {
        self.map_monomials(|t| {
            let e = t.exp(v);
            t.with_exp(v, 0).mul(&w.pow(e))
        })
    }

    /// Sets variable `v` to an integer value.
    pub fn subst_int(&self, v: Var, value: i64) -> Result<Poly, PolyError> {
        let value = BigInt::from(value);
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let factor = if e >= 0 {
                num_traits::pow(value.clone(), e as usize)
            } else if value.is_zero() {
                return Err(PolyError::PoleAtZero { var: v.name() });
            } else if value.abs().is_one() {
                num_traits::pow(value.clone(), e.unsigned_abs() as usize)
            } else {
                // 1/value^k is not an integer
                return Err(PolyError::NotDivisible {
                    dividend: "1".into(),
                    divisor: format!("{}^{}", value, -e),
                });
            };
            out.push((m.with_exp(v, 0), c * factor));
        }
        Ok(Self::from_terms(out))
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, at: &Point) -> Result<BigRational, PolyError> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut value = BigRational::from_integer(c.clone());
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                let base = at.get(v);
                if e < 0 && base.is_zero() {
                    return Err(PolyError::PoleAtZero { var: v.name() });
                }
                value *= num_traits::pow::Pow::pow(base, e);
            }
            total += value;
        }
        Ok(total)
    }

    /// Evaluation at an integer point, only when the result is an integer.
    pub fn eval_integer(&self, at: &Point) -> Result<Option<BigInt>, PolyError> {
        let r = self.eval(at)?;
        Ok(r.is_integer().then(|| r.to_integer()))
    }

    fn add_impl(&self, other: &Poly, negate_other: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let sgn = |c: &BigInt| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, sgn(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, sgn(c))));
        Poly { terms: out }
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(large.len() * small.len().min(64));
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let prod = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += prod,
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                }
            }
        }
        Self::from_map(acc)
    }
}

fn truncate_text(s: &str) -> String {
    const MAX: usize = 200;
    if s.len() <= MAX {
        s.to_string()
    } else {
        let mut cut = MAX;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        format!("{}...", &s[..cut])
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::constant(c)
    }
}

impl From<BigInt> for Poly {
    fn from(c: BigInt) -> Self {
        Poly::constant(c)
    }
}

impl From<Monomial> for Poly {
    fn from(m: Monomial) -> Self {
        Poly::term(m, 1)
    }
}

impl From<BTreeMap<Monomial, BigInt>> for Poly {
    fn from(map: BTreeMap<Monomial, BigInt>) -> Self {
        Poly::from_btree(map)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.mul_impl(rhs)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Add<&Poly> for Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        &self + rhs
    }
}

impl Sub<&Poly> for Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        &self - rhs
    }
}

impl Mul<&Poly> for Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        &self * rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        *self = &*self - rhs;
    }
}

impl AddAssign for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        *self = &*self + &rhs;
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn add_and_mul() {
        assert_eq!(&Poly::x() + &p("q*s"), p("x + q*s"));
        assert_eq!(&p("s + x^2") * &p("2*s + x^2"), p("2*s^2 + 3*s*x^2 + x^4"));
        assert_eq!(Poly::x().pow(0), Poly::one());
        assert_eq!(&p("x + 1") - &p("x + 1"), Poly::zero());
    }

    #[test]
    fn exact_division() {
        let a = &p("s + x^2") * &p("2*s + x^2");
        assert_eq!(a.exact_div(&p("s + x^2")).unwrap(), p("2*s + x^2"));
        assert_eq!(p("q^3*s").exact_div(&p("q*s")).unwrap(), p("q^2"));
        assert!(matches!(
            p("x^2 + s").exact_div(&Poly::x()),
            Err(PolyError::NotDivisible { .. })
        ));
        assert_eq!(
            p("x^2 + s").exact_div_laurent(&Poly::x()).unwrap(),
            p("x + s*x^-1")
        );
        assert_eq!(
            p("x + s*x^-1").exact_div(&Poly::x()).unwrap(),
            p("1 + s*x^-2")
        );
        assert!(matches!(
            p("x^2 + s").exact_div(&p("x + 1")),
            Err(PolyError::NotDivisible { .. })
        ));
        assert!(matches!(
            Poly::one().exact_div(&p("1 + q")),
            Err(PolyError::NotDivisible { .. })
        ));
        assert_eq!(
            p("2*x").exact_div(&Poly::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn laurent_quotients() {
        let b = p("q^-1*s + x^2 + z^-3");
        let q = p("x*s^-2 - 7 + q^5");
        assert_eq!((&b * &q).exact_div(&b).unwrap(), q);
    }

    #[test]
    fn substitutions() {
        assert_eq!(p("q*s + x^2").subst_s_scale(2), p("q^3*s + x^2"));
        assert_eq!(p("x^3").subst_s_scale(5), p("x^3"));
        assert_eq!(p("q^-1*s + x^2").subst_s_scale(3), p("q^2*s + x^2"));
        assert_eq!(p("q*s + x^2").subst_q_invert(), p("q^-1*s + x^2"));
        assert_eq!(p("q*s*x + q^2*s*x + x^3").subst_q_one(), p("2*s*x + x^3"));
        assert_eq!(p("q*s*x + x^3").subst_int(Var::X, 1).unwrap(), p("q*s + 1"));
    }

    #[test]
    fn evaluation() {
        let at = Point::integers(2, -4, 1, 0);
        assert_eq!(p("x^2 + s").eval(&at).unwrap(), BigRational::zero());
        assert_eq!(
            p("q^-1").eval(&Point::integers(1, 1, 0, 0)),
            Err(PolyError::PoleAtZero { var: 'q' })
        );
        let half = Point {
            x: BigRational::new(1.into(), 2.into()),
            ..Point::integers(0, 1, 1, 1)
        };
        assert_eq!(
            p("x^-2 + x").eval(&half).unwrap(),
            BigRational::new(9.into(), 2.into())
        );
    }

    #[test]
    fn coefficient_lookup() {
        let f = p("x^4 + 3*s*x^2 + s^2");
        assert_eq!(f.coeff(&Monomial::new(2, 1, 0, 0)), BigInt::from(3));
        assert_eq!(f.coeff(&Monomial::new(1, 1, 0, 0)), BigInt::zero());
        assert_eq!(f.exponent_range(Var::X), Some((0, 4)));
    }
}
