//! Square matrices over `F_q` and the eigenspace-codimension invariant.

use num_rational::Ratio;

use super::field::{FiniteField, FqElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixFq {
    n: usize,
    /// Row-major.
    entries: Vec<FqElement>,
}

impl MatrixFq {
    pub fn zero(n: usize) -> Self {
        MatrixFq {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<FqElement>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        Ok(MatrixFq {
            n,
            entries: rows.concat(),
        })
    }

    /// Identity plus `a` in position `(i, j)`, `i != j`.
    pub fn elementary(n: usize, i: usize, j: usize, a: FqElement) -> Self {
        let mut m = Self::identity(n);
        m.set(i, j, a);
        m
    }

    pub fn diagonal(values: &[FqElement]) -> Self {
        let mut m = Self::zero(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FqElement {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FqElement) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<FqElement>> {
        self.entries.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &FiniteField, other: &MatrixFq) -> MatrixFq {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = f.add(acc, f.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn scale(&self, f: &FiniteField, lambda: FqElement) -> MatrixFq {
        MatrixFq {
            n: self.n,
            entries: self.entries.iter().map(|&x| f.mul(lambda, x)).collect(),
        }
    }

    pub fn sub(&self, f: &FiniteField, other: &MatrixFq) -> MatrixFq {
        MatrixFq {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn pow(&self, f: &FiniteField, mut k: u64) -> MatrixFq {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            k >>= 1;
        }
        acc
    }

    /// Entrywise map, e.g. the Frobenius twist.
    pub fn map(&self, g: impl Fn(FqElement) -> FqElement) -> MatrixFq {
        MatrixFq {
            n: self.n,
            entries: self.entries.iter().map(|&x| g(x)).collect(),
        }
    }

    /// Gauss-Jordan elimination, mirroring row operations on `augment`.
    /// Returns the rank and the determinant (0 when singular).
    fn eliminate(&self, f: &FiniteField, augment: Option<&mut MatrixFq>) -> (usize, FqElement) {
        let n = self.n;
        let mut a = self.clone();
        let mut aug = augment;
        let mut det = 1;
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| a.get(r, col) != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                for j in 0..n {
                    a.entries.swap(piv * n + j, rank * n + j);
                    if let Some(b) = aug.as_deref_mut() {
                        b.entries.swap(piv * n + j, rank * n + j);
                    }
                }
                det = f.neg(det);
            }
            let pv = a.get(rank, col);
            det = f.mul(det, pv);
            let pinv = f.inv(pv).expect("pivot is nonzero");
            for j in 0..n {
                a.set(rank, j, f.mul(a.get(rank, j), pinv));
                if let Some(b) = aug.as_deref_mut() {
                    b.set(rank, j, f.mul(b.get(rank, j), pinv));
                }
            }
            for r in 0..n {
                if r == rank {
                    continue;
                }
                let c = a.get(r, col);
                if c == 0 {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, f.sub(a.get(r, j), f.mul(c, a.get(rank, j))));
                    if let Some(b) = aug.as_deref_mut() {
                        b.set(r, j, f.sub(b.get(r, j), f.mul(c, b.get(rank, j))));
                    }
                }
            }
            rank += 1;
        }
        (rank, if rank == n { det } else { 0 })
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        self.eliminate(f, None).0
    }

    pub fn det(&self, f: &FiniteField) -> FqElement {
        self.eliminate(f, None).1
    }

    pub fn inverse(&self, f: &FiniteField) -> Option<MatrixFq> {
        let mut inv = Self::identity(self.n);
        let (rank, _) = self.eliminate(f, Some(&mut inv));
        (rank == self.n).then_some(inv)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, f: &FiniteField, v: &[FqElement]) -> Vec<FqElement> {
        (0..self.n)
            .map(|j| {
                (0..self.n).fold(0, |acc, i| f.add(acc, f.mul(v[i], self.get(i, j))))
            })
            .collect()
    }

    /// Matrix times column vector.
    pub fn apply_column(&self, f: &FiniteField, v: &[FqElement]) -> Vec<FqElement> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(0, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j])))
            })
            .collect()
    }
}

/// `n - max over nonzero scalars l of dim ker(l x - 1)`.
pub fn nu(f: &FiniteField, x: &MatrixFq) -> usize {
    let n = x.size();
    let id = MatrixFq::identity(n);
    let best = f
        .nonzero()
        .map(|l| n - x.scale(f, l).sub(f, &id).rank(f))
        .max()
        .unwrap_or(0);
    n - best
}

/// The elementary transvection `1 + E_{01}`.
pub fn transvection(n: usize) -> MatrixFq {
    MatrixFq::elementary(n, 0, 1, 1)
}

/// Companion matrix of the monic polynomial `x^n + sum c_i x^i`.
pub fn companion(f: &FiniteField, coeffs: &[FqElement]) -> MatrixFq {
    let n = coeffs.len();
    let mut m = MatrixFq::zero(n);
    for i in 1..n {
        m.set(i, i - 1, 1);
    }
    for (i, &c) in coeffs.iter().enumerate() {
        m.set(i, n - 1, f.neg(c));
    }
    m
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn has_order(f: &FiniteField, m: &MatrixFq, order: u64) -> bool {
    let id = MatrixFq::identity(m.size());
    m.pow(f, order) == id
        && prime_factors(order)
            .into_iter()
            .all(|r| m.pow(f, order / r) != id)
}

/// Coefficients (constant term first, leading 1 omitted) of the least
/// encoded primitive polynomial of degree `n` over `f`.
pub fn primitive_polynomial(f: &FiniteField, n: usize) -> Vec<FqElement> {
    let q = f.order() as u64;
    let target = q.pow(n as u32) - 1;
    let total = q.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let coeffs: Vec<FqElement> = (0..n)
            .map(|_| {
                let d = (c % q) as u32;
                c /= q;
                d
            })
            .collect();
        if coeffs[0] == 0 {
            continue;
        }
        // A companion matrix of multiplicative order q^n - 1 makes
        // F_q[x]/(P) a field, so P is irreducible and primitive.
        if has_order(f, &companion(f, &coeffs), target) {
            return coeffs;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

/// An element of `SL_n(q)` acting irreducibly on the natural module.
///
/// Starts from the companion matrix `C` of the least primitive polynomial.
/// If `det C != 1`, a scalar `mu` with `mu^n = det(C)^{-1}` is used when one
/// exists, otherwise `C^(q-1)`, whose eigenvalue still has degree `n`.
pub fn singer_matrix(f: &FiniteField, n: usize) -> Result<MatrixFq> {
    if n < 2 {
        return Err(Error::InvalidArgument("Singer matrix needs n >= 2".into()));
    }
    let c = companion(f, &primitive_polynomial(f, n));
    let det = c.det(f);
    if det == 1 {
        return Ok(c);
    }
    let want = f.inv(det).expect("companion of a primitive polynomial is invertible");
    if let Some(mu) = f.nonzero().find(|&mu| f.pow(mu, n as u64) == want) {
        return Ok(c.scale(f, mu));
    }
    Ok(c.pow(f, f.order() as u64 - 1))
}

/// The lower bound `nu_t / nu_s` on `c_X(T)`.
pub fn nu_ratio_bound(nu_t: u32, nu_s: u32) -> Result<Ratio<u32>> {
    if nu_s == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(Ratio::new(nu_t, nu_s))
}
