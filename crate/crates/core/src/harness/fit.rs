//! Signed monomial prefactors: exact exponent templates and the fitter that
//! recovers a prefactor from two proportional polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Signed;

use super::Params;
use crate::error::HarnessError;
use crate::poly::{Monomial, Poly};

/// `±m` for a Laurent monomial m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedMonomial {
    pub negative: bool,
    pub monomial: Monomial,
}

impl SignedMonomial {
    pub const ONE: SignedMonomial = SignedMonomial {
        negative: false,
        monomial: Monomial::ONE,
    };

    pub fn new(negative: bool, monomial: Monomial) -> Self {
        SignedMonomial { negative, monomial }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    pub fn to_poly(&self) -> Poly {
        Poly::term(self.monomial, if self.negative { -1 } else { 1 })
    }
}

impl fmt::Display for SignedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { '-' } else { '+' };
        write!(f, "{}{}", sign, self.monomial)
    }
}

/// Returns `c·m` with `lhs = c·m·rhs` and `c = ±1`, when such a factor exists.
///
/// Multiplying by a monomial preserves the term order, so the candidate is
/// read off the leading terms and then checked on the whole polynomial.
pub fn fit_monomial_correction(lhs: &Poly, rhs: &Poly) -> Result<SignedMonomial, HarnessError> {
    if lhs.is_zero() || rhs.is_zero() || lhs.len() != rhs.len() {
        return Err(HarnessError::NotProportional);
    }
    let (lm, lc) = lhs.leading_term().unwrap();
    let (rm, rc) = rhs.leading_term().unwrap();
    if lc.abs() != rc.abs() {
        return Err(HarnessError::NotProportional);
    }
    let candidate = SignedMonomial::new(lc != rc, lm.div(rm));
    let sign = BigInt::from(if candidate.negative { -1 } else { 1 });
    if &rhs.mul_term(&candidate.monomial, &sign) == lhs {
        Ok(candidate)
    } else {
        Err(HarnessError::NotProportional)
    }
}

/// Exact rational exponents, converted to integers only after the total has
/// been formed.
pub type Exponent = Ratio<i64>;

pub fn integral(what: &str, r: Exponent) -> Result<i32, HarnessError> {
    if r.is_integer() {
        i32::try_from(r.to_integer()).map_err(|_| HarnessError::NonIntegralExponent {
            what: what.into(),
            value: r.to_string(),
        })
    } else {
        Err(HarnessError::NonIntegralExponent {
            what: what.into(),
            value: r.to_string(),
        })
    }
}

/// A signed monomial whose exponents are rational functions of the
/// parameters: `(−1)^sign · q^q · s^s · x^x`.
#[derive(Clone, Copy)]
pub struct PrefactorTemplate {
    pub sign: fn(&Params) -> Exponent,
    pub q: fn(&Params) -> Exponent,
    pub s: fn(&Params) -> Exponent,
    pub x: fn(&Params) -> Exponent,
}

impl PrefactorTemplate {
    pub fn evaluate(&self, p: &Params) -> Result<SignedMonomial, HarnessError> {
        let sign = integral("sign", (self.sign)(p))?;
        let q = integral("q", (self.q)(p))?;
        let s = integral("s", (self.s)(p))?;
        let x = integral("x", (self.x)(p))?;
        Ok(SignedMonomial::new(
            sign.rem_euclid(2) == 1,
            Monomial::new(x, s, q, 0),
        ))
    }
}

impl fmt::Debug for PrefactorTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PrefactorTemplate")
    }
}

pub(crate) fn zero_exp(_: &Params) -> Exponent {
    Exponent::from_integer(0)
}

pub(crate) fn ratio(n: i64, d: i64) -> Exponent {
    Exponent::new(n, d)
}

/// The monomial `(−1)^sign q^q s^s x^x` with integer exponents.
pub(crate) fn signed_mono(sign: i64, q: i64, s: i64, x: i64) -> Poly {
    let c = if sign.rem_euclid(2) == 0 { 1 } else { -1 };
    Poly::term(Monomial::new(x as i32, s as i32, q as i32, 0), c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn fits_signed_monomials() {
        let c = fit_monomial_correction(&p("q^3*s^2*x^2"), &p("s^2*x^2")).unwrap();
        assert_eq!(c.to_string(), "+q^3");
        let f = p("x^3 + q*s*x + 7");
        assert!(fit_monomial_correction(&f, &f).unwrap().is_one());
        let c =
            fit_monomial_correction(&(-&f.mul_monomial(&Monomial::new(0, -1, 2, 0))), &f).unwrap();
        assert_eq!(c.to_string(), "-q^2*s^-1");
        assert_eq!(c.to_poly(), p("-q^2*s^-1"));
    }

    #[test]
    fn rejects_non_proportional() {
        assert_eq!(
            fit_monomial_correction(&p("x^2 + s"), &p("x^2")),
            Err(HarnessError::NotProportional)
        );
        assert_eq!(
            fit_monomial_correction(&p("x^2 + s"), &p("x^2 + 2*s")),
            Err(HarnessError::NotProportional)
        );
        assert_eq!(
            fit_monomial_correction(&p("2*x"), &p("x")),
            Err(HarnessError::NotProportional)
        );
        assert_eq!(
            fit_monomial_correction(&Poly::zero(), &p("x")),
            Err(HarnessError::NotProportional)
        );
    }

    #[test]
    fn integrality_is_checked_on_totals() {
        assert_eq!(integral("q", ratio(9, 3)), Ok(3));
        assert!(matches!(
            integral("q", ratio(3, 2)),
            Err(HarnessError::NonIntegralExponent { .. })
        ));
    }
}
