//! The ring `R[α]/(α² − xα − s)` over the Laurent polynomials.
//!
//! α and β = x − α are the two roots of `t² = xt + s`, so αβ = −s and
//! α + β = x hold by construction and no square roots are needed.

use std::ops::{Add, Mul, Neg, Sub};

use crate::poly::Poly;

/// `u + v·α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub u: Poly,
    pub v: Poly,
}

impl QuadElem {
    pub fn new(u: Poly, v: Poly) -> Self {
        QuadElem { u, v }
    }

    pub fn zero() -> Self {
        Self::from_base(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_base(Poly::one())
    }

    pub fn from_base(u: Poly) -> Self {
        QuadElem { u, v: Poly::zero() }
    }

    pub fn alpha() -> Self {
        QuadElem {
            u: Poly::zero(),
            v: Poly::one(),
        }
    }

    pub fn beta() -> Self {
        Self::alpha().conj()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// The base-ring value when the α-component vanishes.
    pub fn as_base(&self) -> Option<&Poly> {
        self.v.is_zero().then_some(&self.u)
    }

    /// α ↦ β, i.e. `(u, v) ↦ (u + v·x, −v)`.
    pub fn conj(&self) -> Self {
        QuadElem {
            u: &self.u + &(&self.v * &Poly::x()),
            v: -&self.v,
        }
    }

    /// `e + conj(e)`, which lies in the base ring.
    pub fn trace(&self) -> Poly {
        &(&self.u + &self.u) + &(&self.v * &Poly::x())
    }

    /// `e · conj(e)`.
    pub fn norm(&self) -> Poly {
        let prod = self * &self.conj();
        debug_assert!(prod.v.is_zero());
        prod.u
    }

    pub fn scale(&self, c: &Poly) -> Self {
        QuadElem {
            u: &self.u * c,
            v: &self.v * c,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = QuadElem::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Applies a base-ring map to both components.
    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        QuadElem {
            u: f(&self.u),
            v: f(&self.v),
        }
    }
}

/// αⁿ for any integer n. Negative powers use α⁻¹ = (α − x)/s, so the
/// components pick up negative powers of s.
pub fn alpha_pow(n: i64) -> QuadElem {
    if n >= 0 {
        QuadElem::alpha().pow(n as u32)
    } else {
        let s_inv = Poly::parse("s^-1").unwrap();
        let alpha_inv = QuadElem::new(-(&Poly::x() * &s_inv), s_inv);
        alpha_inv.pow(n.unsigned_abs() as u32)
    }
}

/// βⁿ = conj(αⁿ).
pub fn beta_pow(n: i64) -> QuadElem {
    alpha_pow(n).conj()
}

impl<'a> Add<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: &'a QuadElem) -> QuadElem {
        QuadElem {
            u: &self.u + &rhs.u,
            v: &self.v + &rhs.v,
        }
    }
}

impl<'a> Sub<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: &'a QuadElem) -> QuadElem {
        QuadElem {
            u: &self.u - &rhs.u,
            v: &self.v - &rhs.v,
        }
    }
}

impl<'a> Mul<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: &'a QuadElem) -> QuadElem {
        // (a + bα)(c + dα) = ac + s·bd + (ad + bc + x·bd)α
        let bd = &self.v * &rhs.v;
        let u = &(&self.u * &rhs.u) + &(&bd * &Poly::s());
        let v = &(&(&self.u * &rhs.v) + &(&self.v * &rhs.u)) + &(&bd * &Poly::x());
        QuadElem { u, v }
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            u: -&self.u,
            v: -&self.v,
        }
    }
}

impl Add for QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: QuadElem) -> QuadElem {
        &self + &rhs
    }
}

impl Sub for QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: QuadElem) -> QuadElem {
        &self - &rhs
    }
}

impl Mul for QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: QuadElem) -> QuadElem {
        &self * &rhs
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}
