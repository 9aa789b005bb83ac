use std::cmp::Ordering;
use std::fmt;

/// One of the four fixed ring variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    S,
    Q,
    Z,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::S, Var::Q, Var::Z];

    /// Order in which variables are written inside a printed term.
    pub(crate) const PRINT_ORDER: [Var; 4] = [Var::Q, Var::S, Var::X, Var::Z];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::S => 's',
            Var::Q => 'q',
            Var::Z => 'z',
        }
    }

    pub fn from_name(c: char) -> Option<Var> {
        match c {
            'x' => Some(Var::X),
            's' => Some(Var::S),
            'q' => Some(Var::Q),
            'z' => Some(Var::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A Laurent monomial `x^a s^b q^c z^d`; every exponent may be negative.
///
/// `Ord` is graded lexicographic: larger total degree first, ties broken
/// lexicographically on the exponents of x, then s, then q, then z. The
/// order is compatible with multiplication, which is what long division
/// relies on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [i32; 4],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; 4] };

    pub const fn new(x: i32, s: i32, q: i32, z: i32) -> Self {
        Monomial { exps: [x, s, q, z] }
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        let mut exps = [0; 4];
        exps[v.index()] = e;
        Monomial { exps }
    }

    #[inline]
    pub fn exp(&self, v: Var) -> i32 {
        self.exps[v.index()]
    }

    #[inline]
    pub fn exps(&self) -> [i32; 4] {
        self.exps
    }

    pub fn with_exp(mut self, v: Var, e: i32) -> Self {
        self.exps[v.index()] = e;
        self
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps == [0; 4]
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.exps.iter().any(|&e| e < 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let a = &self.exps;
        let b = &other.exps;
        Monomial {
            exps: [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]],
        }
    }

    /// Quotient in the Laurent group; always defined.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        let a = &self.exps;
        let b = &other.exps;
        Monomial {
            exps: [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]],
        }
    }

    pub fn pow(&self, e: i32) -> Monomial {
        Monomial {
            exps: self.exps.map(|x| x * e),
        }
    }

    pub fn inverse(&self) -> Monomial {
        self.pow(-1)
    }

    /// Key used for printing: descending in z, then x; ascending in s, then q.
    pub(crate) fn display_key(&self) -> (i32, i32, i32, i32) {
        (
            -self.exp(Var::Z),
            -self.exp(Var::X),
            self.exp(Var::S),
            self.exp(Var::Q),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::PRINT_ORDER {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}
