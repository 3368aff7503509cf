//! Finite fields `F_q`, `q = p^e`.
//!
//! An element is the integer `sum c_i p^i` encoding its coefficient vector
//! over the prime field, so `0` and `1` are the zero and unit and the prime
//! subfield is `0..p`. The modulus is the least encoded monic irreducible
//! polynomial of degree `e`; multiplication goes through exp/log tables
//! built on the least encoded primitive element.

use crate::error::{Error, Result};

pub type FqElement = u32;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    /// Coefficients `m_0..m_{e-1}` of the monic modulus (leading 1 implicit).
    modulus: Vec<u32>,
    primitive: FqElement,
    exp: Vec<FqElement>,
    log: Vec<u32>,
}

/// `(p, e)` with `q = p^e`, or `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Product of two encoded polynomials modulo the monic `modulus`.
fn poly_mulmod(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let e = modulus.len();
    let (da, db) = (digits(a, p, e as u32), digits(b, p, e as u32));
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (e..2 * e).rev() {
        let c = prod[deg];
        if c != 0 {
            // x^e = -sum m_i x^i
            for (i, &m) in modulus.iter().enumerate() {
                let k = deg - e + i;
                prod[k] = (prod[k] + (p - c) * m) % p;
            }
            prod[deg] = 0;
        }
    }
    undigits(&prod[..e], p)
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    // Trial division by every monic polynomial of degree 1..=e/2.
    let e = modulus.len();
    let mut full = modulus.to_vec();
    full.push(1);
    for d in 1..=e / 2 {
        for code in 0..p.pow(d as u32) {
            let mut div = digits(code, p, d as u32);
            div.push(1);
            let mut rem = full.clone();
            for top in (d..=e).rev() {
                let c = rem[top];
                if c != 0 {
                    for (i, &v) in div.iter().enumerate() {
                        let k = top - d + i;
                        rem[k] = (rem[k] + (p - c) * v) % p;
                    }
                }
            }
            if rem[..d].iter().all(|&r| r == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_FIELD_ORDER as u64 {
            return Err(Error::CapExceeded {
                what: "field order",
                cap: MAX_FIELD_ORDER as usize,
            });
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = if e == 1 {
            vec![0]
        } else {
            (0..q)
                .map(|code| digits(code, p, e))
                .find(|m| is_irreducible(m, p))
                .expect("irreducible polynomials exist in every degree")
        };
        let mul = |a, b| {
            if e == 1 {
                ((a as u64 * b as u64) % p as u64) as u32
            } else {
                poly_mulmod(a, b, p, &modulus)
            }
        };
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut primitive = 0;
        for g in 1..q {
            exp.clear();
            let mut x = 1;
            loop {
                exp.push(x);
                x = mul(x, g);
                if x == 1 || exp.len() >= q as usize {
                    break;
                }
            }
            if exp.len() == q as usize - 1 {
                primitive = g;
                break;
            }
        }
        let mut log = vec![u32::MAX; q as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        Ok(FiniteField {
            p,
            e,
            q,
            modulus,
            primitive,
            exp,
            log,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus coefficients, constant term first, leading 1 included.
    pub fn modulus(&self) -> Vec<u32> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    pub fn primitive(&self) -> FqElement {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElement> {
        0..self.q
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FqElement> {
        1..self.q
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FqElement {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: FqElement, b: FqElement) -> FqElement {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..self.e {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: FqElement) -> FqElement {
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        for _ in 0..self.e {
            out += (self.p - a % self.p) % self.p * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: FqElement, b: FqElement) -> FqElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElement, b: FqElement) -> FqElement {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(s % (self.q - 1)) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FqElement) -> Option<FqElement> {
        (a != 0).then(|| {
            let l = self.log[a as usize];
            self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
        })
    }

    pub fn div(&self, a: FqElement, b: FqElement) -> Result<FqElement> {
        Ok(self.mul(a, self.inv(b).ok_or(Error::DivisionByZero)?))
    }

    pub fn pow(&self, a: FqElement, k: u64) -> FqElement {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64 * (k % (self.q as u64 - 1));
        self.exp[(l % (self.q as u64 - 1)) as usize]
    }

    /// `omega^k` for the primitive element `omega`.
    pub fn exp(&self, k: u64) -> FqElement {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    /// Discrete log to base the primitive element; `None` for zero.
    pub fn log(&self, a: FqElement) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn frobenius(&self, a: FqElement) -> FqElement {
        self.pow(a, self.p as u64)
    }

    pub fn multiplicative_order(&self, a: FqElement) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = self.q as u64 - 1;
        Some(n / gcd(l, n))
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
