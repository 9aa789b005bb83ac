//! Dense matrices over the Laurent polynomial ring.

use num_bigint::BigInt;

use crate::error::MatrixError;
use crate::poly::{Monomial, Poly, Var};
use crate::qcomb::{binomial, fibonomial};
use crate::quad::{alpha_pow, beta_pow, QuadElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

/// A column vector over the extension ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadVector(pub Vec<QuadElem>);

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Dimension(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Poly::one() } else { Poly::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn require_square(&self) -> Result<usize, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// Divisions are exact Laurent divisions; a failing one is an error.
    pub fn det(&self) -> Result<Poly, MatrixError> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(Poly::one());
        }
        let mut a: Vec<Vec<Poly>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(Poly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let cross = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = cross.exact_div_laurent(&prev)?;
                }
                a[i][k] = Poly::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// det(zI − M).
    pub fn charpoly(&self) -> Result<Poly, MatrixError> {
        let n = self.require_square()?;
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j).uses(Var::Z) {
                    return Err(MatrixError::EntryUsesZ { row: i, col: j });
                }
            }
        }
        let shifted = Self::from_fn(n, n, |i, j| {
            let e = -self.get(i, j);
            if i == j {
                &e + &Poly::z()
            } else {
                e
            }
        });
        shifted.det()
    }

    /// `M · u` with u over the extension ring.
    pub fn mul_quad_vector(&self, u: &QuadVector) -> Result<QuadVector, MatrixError> {
        if u.0.len() != self.cols {
            return Err(MatrixError::Dimension(format!(
                "vector of length {} for a matrix with {} columns",
                u.0.len(),
                self.cols
            )));
        }
        let out = (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(QuadElem::zero(), |acc, j| {
                    &acc + &u.0[j].scale(self.get(i, j))
                })
            })
            .collect();
        Ok(QuadVector(out))
    }
}

/// Determinant by Laplace expansion along the first row.
///
/// Exponential in the dimension; it is the independent check on [`PolyMatrix::det`]
/// for small matrices.
pub fn det_cofactor(m: &PolyMatrix) -> Result<Poly, MatrixError> {
    let n = m.require_square()?;
    let idx: Vec<usize> = (0..n).collect();
    Ok(cofactor_rec(m, 0, &idx))
}

fn cofactor_rec(m: &PolyMatrix, row: usize, cols: &[usize]) -> Poly {
    if cols.is_empty() {
        return Poly::one();
    }
    let mut total = Poly::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = m.get(row, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor_rec(m, row + 1, &rest);
        let term = entry * &minor;
        if pos % 2 == 0 {
            total += term;
        } else {
            total -= &term;
        }
    }
    total
}

/// The n×n matrix a(n) with entries C(i−1, n−j)·x^{i+j−n−1}·s^{n−j} (1-based).
///
/// Entries whose binomial vanishes are zero, so no negative power of x is
/// ever formed.
pub fn hoggatt(n: usize) -> PolyMatrix {
    assert!(n >= 1);
    let n_i = n as i64;
    PolyMatrix::from_fn(n, n, |r, c| {
        let (i, j) = (r as i64 + 1, c as i64 + 1);
        let b = binomial(i - 1, n_i - j);
        if b == BigInt::from(0) {
            return Poly::zero();
        }
        Poly::term(
            Monomial::new((i + j - n_i - 1) as i32, (n_i - j) as i32, 0, 0),
            b,
        )
    })
}

/// Σ_{j=0}^{n} (−1)^{C(j+1,2)} s^{C(j,2)} ⟨n, j⟩(x, s) z^{n−j}.
pub fn fibonomial_charpoly(n: i64) -> Result<Poly, MatrixError> {
    let mut out = Poly::zero();
    for j in 0..=n {
        let sign = if (j * (j + 1) / 2) % 2 == 0 { 1 } else { -1 };
        let mono = Monomial::new(0, (j * (j - 1) / 2) as i32, 0, (n - j) as i32);
        out += fibonomial(n, j)?.mul_term(&mono, &BigInt::from(sign));
    }
    Ok(out)
}

/// (−s)^e for any integer e.
fn neg_s_pow(e: i64) -> Poly {
    let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
    Poly::term(Monomial::var_pow(Var::S, e as i32), sign)
}

/// The eigenvector u(n, j) of a(n) for λ_j = α^{j−1} β^{n−j}:
/// u(n, i, j) = Σ_{k=1}^{j} (−s)^{i−k} C(i−1, k−1) C(n−i, j−k) α^{2k−i−1}.
pub fn hoggatt_eigvec(n: usize, j: usize) -> QuadVector {
    assert!(1 <= j && j <= n);
    let (n, j) = (n as i64, j as i64);
    let entries = (1..=n)
        .map(|i| {
            (1..=j).fold(QuadElem::zero(), |acc, k| {
                let c = binomial(i - 1, k - 1) * binomial(n - i, j - k);
                if c == BigInt::from(0) {
                    return acc;
                }
                let coeff = neg_s_pow(i - k).scale(&c);
                &acc + &alpha_pow(2 * k - i - 1).scale(&coeff)
            })
        })
        .collect();
    QuadVector(entries)
}

/// λ_j = α^{j−1} β^{n−j}.
pub fn hoggatt_eigenvalue(n: usize, j: usize) -> QuadElem {
    &alpha_pow(j as i64 - 1) * &beta_pow((n - j) as i64)
}

/// Checks a(n)·u(n, j) = λ_j·u(n, j) with u(n, j) ≠ 0.
pub fn verify_hoggatt_eigvec(n: usize, j: usize) -> bool {
    let u = hoggatt_eigvec(n, j);
    if u.0.iter().all(QuadElem::is_zero) {
        return false;
    }
    let lambda = hoggatt_eigenvalue(n, j);
    let lhs = hoggatt(n).mul_quad_vector(&u).expect("square matrix");
    let rhs: Vec<QuadElem> = u.0.iter().map(|e| &lambda * e).collect();
    lhs.0 == rhs
}

/// Π_{j=0}^{k}(z − α^{k−j}β^j) − Σ_j (−1)^{C(j+1,2)} s^{C(j,2)} ⟨k+1, j⟩ z^{k+1−j}.
///
/// The product is expanded in the extension ring; its α-component must
/// vanish before the base component is compared.
pub fn root_product_residual(k: i64) -> Result<Poly, MatrixError> {
    let z = QuadElem::from_base(Poly::z());
    let product = (0..=k).fold(QuadElem::one(), |acc, j| {
        let root = &alpha_pow(k - j) * &beta_pow(j);
        &acc * &(&z - &root)
    });
    if !product.v.is_zero() {
        return Err(MatrixError::AlphaComponentNonzero(product.v.to_string()));
    }
    Ok(&product.u - &fibonomial_charpoly(k + 1)?)
}
