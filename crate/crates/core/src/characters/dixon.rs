//! Character tables by simultaneous diagonalization of the class matrices
//! modulo a prime.
//!
//! For classes `C_j` with representatives `z_i`, the class matrix `M_j`
//! has entry `(k, i)` equal to `#{x in C_j : x^-1 z_i in C_k}`. The central
//! characters `w_k = |C_k| chi(z_k) / chi(1)` form a common eigenvector with
//! `M_j w = w_j w`. Working modulo a prime `p = 1 (mod exp G)` the common
//! eigenvectors are found by splitting eigenspaces one class matrix at a
//! time; degrees and values mod `p` follow, and values are lifted to
//! complex numbers through eigenvalue multiplicities.

use num_complex::Complex;
use num_traits::{Float, FloatConst};

use super::modp::{is_prime, PrimeField};
use super::table::{default_tolerance, CharacterTable};
use crate::error::{Error, Result};
use crate::group::EnumeratedGroup;

pub const DEFAULT_TABLE_CAP: usize = 25_000;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn group_exponent(group: &EnumeratedGroup) -> u64 {
    group
        .classes()
        .classes()
        .iter()
        .map(|c| group.element_order(c.representative))
        .fold(1, lcm)
}

/// Least prime `p = 1 (mod exponent)` with `p > 2 sqrt(order)`.
pub fn dixon_prime(order: usize, exponent: u64) -> u64 {
    let bound = 2.0 * (order as f64).sqrt();
    let mut p = exponent + 1;
    while (p as f64) <= bound || !is_prime(p) {
        p += exponent;
    }
    p
}

/// Class matrices reduced mod `p`, `mats[j][k][i]`.
fn class_matrices(group: &EnumeratedGroup, f: PrimeField) -> Vec<Vec<Vec<u64>>> {
    let part = group.classes();
    let r = part.len();
    (0..r)
        .map(|j| {
            let mut m = vec![vec![0u64; r]; r];
            for i in 0..r {
                let z = part.class(i).representative;
                for &x in &part.class(j).members {
                    let k = part.class_of(group.mul(group.inv(x), z));
                    m[k][i] += 1;
                }
            }
            for row in &mut m {
                for v in row.iter_mut() {
                    *v = f.reduce(*v);
                }
            }
            m
        })
        .collect()
}

/// Splits the subspace spanned by `basis` (RREF rows, pivots `pivots`)
/// into eigenspaces of `m`.
fn split(f: PrimeField, m: &[Vec<u64>], basis: &[Vec<u64>], pivots: &[usize]) -> Result<Vec<Vec<Vec<u64>>>> {
    let d = basis.len();
    let r = m.len();
    // restriction: column s holds the coordinates of m b_s
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..r)
                .map(|k| (0..r).fold(0, |acc, i| f.add(acc, f.mul(m[k][i], b[i]))))
                .collect()
        })
        .collect();
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|row| (0..d).map(|s| images[s][pivots[row]]).collect())
        .collect();
    let mut pieces = Vec::new();
    let mut found = 0;
    for lambda in 0..f.p {
        if found == d {
            break;
        }
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &v)| if i == j { f.sub(v, lambda) } else { v })
                    .collect()
            })
            .collect();
        let kernel = f.nullspace(&shifted);
        if kernel.is_empty() {
            continue;
        }
        found += kernel.len();
        let vectors: Vec<Vec<u64>> = kernel
            .iter()
            .map(|coords| {
                (0..r)
                    .map(|i| {
                        coords
                            .iter()
                            .zip(basis)
                            .fold(0, |acc, (&c, b)| f.add(acc, f.mul(c, b[i])))
                    })
                    .collect()
            })
            .collect();
        pieces.push(vectors);
    }
    if found != d {
        return Err(Error::LiftFailure(format!(
            "class matrix is not diagonalizable mod {} ({found} of {d})",
            f.p
        )));
    }
    Ok(pieces)
}

/// Full irreducible character table of `group`.
pub fn dixon_table<T: Float + FloatConst>(group: &EnumeratedGroup, cap: usize) -> Result<CharacterTable<T>> {
    let n = group.order();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "character table group order",
            cap,
        });
    }
    group.ensure_mul_table();
    let part = group.classes();
    let r = part.len();
    let exponent = group_exponent(group);
    let f = PrimeField {
        p: dixon_prime(n, exponent),
    };
    let mats = class_matrices(group, f);

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect()];
    for m in mats.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for mut basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let pivots = f.rref(&mut basis);
            for mut piece in split(f, m, &basis, &pivots)? {
                f.rref(&mut piece);
                next.push(piece);
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::LiftFailure(format!(
            "found {} common eigenvectors for {r} classes",
            spaces.len()
        )));
    }

    let sizes: Vec<u64> = part.sizes().iter().map(|&s| s as u64).collect();
    let inverse_class: Vec<usize> = part
        .classes()
        .iter()
        .map(|c| part.class_of(group.inv(c.representative)))
        .collect();
    let rep_orders: Vec<u64> = part
        .classes()
        .iter()
        .map(|c| group.element_order(c.representative))
        .collect();
    // power maps: class of z_j^l for l < order(z_j)
    let powers: Vec<Vec<usize>> = part
        .classes()
        .iter()
        .zip(&rep_orders)
        .map(|(c, &o)| (0..o).map(|l| part.class_of(group.pow(c.representative, l))).collect())
        .collect();
    let z = f.pow(f.primitive_root(), (f.p - 1) / exponent);
    let order_mod = f.reduce(n as u64);

    let mut rows: Vec<(u64, Vec<u64>, Vec<Complex<T>>)> = Vec::with_capacity(r);
    for space in spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(Error::LiftFailure("central character vanishes at the identity".into()));
        }
        let scale = f.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| f.mul(x, scale)).collect();
        let denom = (0..r).fold(0, |acc, j| {
            f.add(acc, f.mul(f.mul(w[j], w[inverse_class[j]]), f.inv(f.reduce(sizes[j]))))
        });
        if denom == 0 {
            return Err(Error::LiftFailure("zero norm for a central character".into()));
        }
        let deg_sq = f.mul(order_mod, f.inv(denom));
        let degree = (1..=(n as f64).sqrt() as u64 + 1)
            .find(|&d| f.reduce(d * d) == deg_sq)
            .ok_or_else(|| Error::LiftFailure("degree has no small square root".into()))?;
        let theta: Vec<u64> = (0..r)
            .map(|j| f.mul(f.mul(w[j], degree), f.inv(f.reduce(sizes[j]))))
            .collect();
        let mut values = Vec::with_capacity(r);
        for j in 0..r {
            let m = rep_orders[j];
            let root = f.pow(z, exponent / m);
            let minv = f.inv(f.reduce(m));
            let mut value = Complex::new(T::zero(), T::zero());
            let mut total = 0;
            for s in 0..m {
                let mut acc = 0;
                for l in 0..m {
                    let twist = f.pow(root, (m - (s * l) % m) % m);
                    acc = f.add(acc, f.mul(theta[powers[j][l as usize]], twist));
                }
                let mult = f.mul(acc, minv);
                if mult > degree {
                    return Err(Error::LiftFailure(format!(
                        "eigenvalue multiplicity {mult} exceeds degree {degree}"
                    )));
                }
                total += mult;
                let angle = T::from(2.0).unwrap() * T::PI() * T::from(s as f64 / m as f64).unwrap();
                value = value + Complex::from_polar(T::from(mult).unwrap(), angle);
            }
            if total != degree {
                return Err(Error::LiftFailure(format!(
                    "multiplicities sum to {total}, not {degree}"
                )));
            }
            values.push(value);
        }
        rows.push((degree, theta, values));
    }
    rows.sort_by(|a, b| {
        let trivial = |t: &[u64]| t.iter().any(|&x| x != 1);
        (a.0, trivial(&a.1), &a.1).cmp(&(b.0, trivial(&b.1), &b.1))
    });

    let table = CharacterTable {
        order: n,
        class_sizes: part.sizes(),
        rep_orders,
        degrees: rows.iter().map(|r| r.0).collect(),
        values: rows.into_iter().map(|r| r.2).collect(),
        tolerance: default_tolerance(n),
    };
    table.validate()?;
    Ok(table)
}
