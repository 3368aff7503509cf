//! Alternating, symmetric and low-rank linear groups as permutation groups.

use super::automorphism::{AutLabel, AutRealization};
use super::field::{gcd, FiniteField, FqElement};
use super::matrix::MatrixFq;
use crate::error::{Error, Result};
use crate::group::{enumerate_group, EnumeratedGroup, Permutation, Point};

/// A constructed group with realizations of its outer automorphisms.
#[derive(Debug)]
pub struct Construction {
    pub name: String,
    pub group: EnumeratedGroup,
    /// Together with the inner automorphisms these generate the full
    /// automorphism group, when known.
    pub automorphisms: Vec<AutRealization>,
}

fn cycle(points: impl IntoIterator<Item = usize>, degree: usize) -> Permutation {
    Permutation::from_cycles(degree, &[points.into_iter().collect()]).expect("valid cycle")
}

pub fn alternating_generators(n: usize) -> Result<Vec<Permutation>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("A{n} needs n >= 3")));
    }
    let mut gens = vec![cycle(0..3, n)];
    if n >= 4 {
        if n % 2 == 1 {
            gens.push(cycle(0..n, n));
        } else {
            gens.push(cycle(1..n, n));
        }
    }
    Ok(gens)
}

/// `A_n` on `n` points. For `n != 6` the automorphisms beyond inner ones
/// are realized by a transposition; for `n = 6` the exceptional outer
/// automorphism is added as a map on generators.
pub fn make_alternating(n: usize, order_cap: usize) -> Result<Construction> {
    let group = enumerate_group(&alternating_generators(n)?, order_cap)?;
    let mut automorphisms = vec![AutRealization::conjugation(AutLabel::Outer, cycle(0..2, n))];
    if n == 6 {
        automorphisms.push(exceptional_a6(&group)?);
    }
    Ok(Construction {
        name: format!("A{n}"),
        group,
        automorphisms,
    })
}

/// An automorphism of `A_6` on six points sending 3-cycles to double
/// 3-cycles, found by searching generator images.
fn exceptional_a6(group: &EnumeratedGroup) -> Result<AutRealization> {
    let gens = group.generator_indices();
    let (a, b) = (gens[0], gens[1]);
    let ab = group.element_order(group.mul(a, b));
    let abb = group.element_order(group.mul(a, group.mul(b, b)));
    let cycle_type = |g: u32| group.element(g).cycle_type();
    let double_three = vec![3, 3];
    let five = group.element(b).cycle_type();
    let ta: Vec<u32> = (0..group.order() as u32).filter(|&g| cycle_type(g) == double_three).collect();
    let tb: Vec<u32> = (0..group.order() as u32).filter(|&g| cycle_type(g) == five).collect();
    for &x in &ta {
        for &y in &tb {
            if group.element_order(group.mul(x, y)) != ab
                || group.element_order(group.mul(x, group.mul(y, y))) != abb
            {
                continue;
            }
            if group.extend_generator_images(&[x, y]).is_ok() {
                return Ok(AutRealization::generator_images(
                    AutLabel::Exceptional,
                    vec![group.element(x), group.element(y)],
                ));
            }
        }
    }
    Err(Error::NotFound("exceptional automorphism of A6".into()))
}

pub fn make_symmetric(n: usize, order_cap: usize) -> Result<Construction> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("S{n} needs n >= 2")));
    }
    let mut gens = vec![cycle(0..2, n)];
    if n > 2 {
        gens.push(cycle(0..n, n));
    }
    Ok(Construction {
        name: format!("S{n}"),
        group: enumerate_group(&gens, order_cap)?,
        automorphisms: Vec::new(),
    })
}

/// Normalized projective points of `F_q^dim`: the last nonzero coordinate
/// is 1.
struct ProjectiveSpace<'a> {
    f: &'a FiniteField,
    dim: usize,
}

impl ProjectiveSpace<'_> {
    fn len(&self) -> usize {
        let q = self.f.order() as usize;
        (q.pow(self.dim as u32) - 1) / (q - 1)
    }

    /// Points are grouped by the position of the last nonzero coordinate,
    /// latest position first; within a group the free coordinates are read
    /// as base-q digits, first coordinate lowest.
    fn index(&self, v: &[FqElement]) -> usize {
        let q = self.f.order() as usize;
        let j = v.iter().rposition(|&x| x != 0).expect("nonzero vector");
        let scale = self.f.inv(v[j]).expect("nonzero");
        let mut code = 0;
        for i in (0..j).rev() {
            code = code * q + self.f.mul(v[i], scale) as usize;
        }
        let base: usize = ((j + 1)..self.dim).map(|pos| q.pow(pos as u32)).sum();
        base + code
    }

    fn point(&self, mut idx: usize) -> Vec<FqElement> {
        let q = self.f.order() as usize;
        let mut v = vec![0; self.dim];
        for j in (0..self.dim).rev() {
            let block = q.pow(j as u32);
            if idx < block {
                v[j] = 1;
                for c in v.iter_mut().take(j) {
                    *c = (idx % q) as u32;
                    idx /= q;
                }
                return v;
            }
            idx -= block;
        }
        unreachable!("projective index out of range")
    }

    fn permutation_of(&self, m: &MatrixFq) -> Permutation {
        let images = (0..self.len())
            .map(|i| self.index(&m.apply_column(self.f, &self.point(i))) as Point)
            .collect();
        Permutation::from_images(images).expect("invertible matrix permutes points")
    }

    fn frobenius(&self) -> Permutation {
        let images = (0..self.len())
            .map(|i| {
                let v: Vec<_> = self.point(i).iter().map(|&x| self.f.frobenius(x)).collect();
                self.index(&v) as Point
            })
            .collect();
        Permutation::from_images(images).expect("Frobenius permutes points")
    }
}

/// Elementary matrices `E_ij(omega^m)`, `i != j`, `m < e`; they generate `SL_n(q)`.
fn sl_generators(f: &FiniteField, n: usize) -> Vec<MatrixFq> {
    let mut out = Vec::new();
    for m in 0..f.degree() as u64 {
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(MatrixFq::elementary(n, i, j, f.exp(m)));
                }
            }
        }
    }
    out
}

fn linear_group(
    f: &FiniteField,
    n: usize,
    extra: &[MatrixFq],
    order_cap: usize,
) -> Result<(EnumeratedGroup, Vec<MatrixFq>)> {
    let space = ProjectiveSpace { f, dim: n };
    let mut mats = sl_generators(f, n);
    mats.extend_from_slice(extra);
    let perms: Vec<Permutation> = mats.iter().map(|m| space.permutation_of(m)).collect();
    Ok((enumerate_group(&perms, order_cap)?, mats))
}

fn diagonal_twist(f: &FiniteField, n: usize) -> MatrixFq {
    let mut d = vec![1; n];
    d[0] = f.primitive();
    MatrixFq::diagonal(&d)
}

/// `PSL_2(q)` on the `q + 1` points of the projective line, with a
/// diagonal automorphism (q odd) and the Frobenius (q not prime).
pub fn make_psl2(q: u64, order_cap: usize) -> Result<Construction> {
    let f = FiniteField::new(q)?;
    let space = ProjectiveSpace { f: &f, dim: 2 };
    let (group, _) = linear_group(&f, 2, &[], order_cap)?;
    let mut automorphisms = Vec::new();
    if q % 2 == 1 {
        automorphisms.push(AutRealization::conjugation(
            AutLabel::Diagonal,
            space.permutation_of(&diagonal_twist(&f, 2)),
        ));
    }
    if f.degree() > 1 {
        automorphisms.push(AutRealization::conjugation(AutLabel::Field, space.frobenius()));
    }
    Ok(Construction {
        name: format!("PSL2({q})"),
        group,
        automorphisms,
    })
}

/// `PGL_2(q)` on the projective line, with the Frobenius when q is not prime.
pub fn make_pgl2(q: u64, order_cap: usize) -> Result<Construction> {
    let f = FiniteField::new(q)?;
    let space = ProjectiveSpace { f: &f, dim: 2 };
    let (group, _) = linear_group(&f, 2, &[diagonal_twist(&f, 2)], order_cap)?;
    let mut automorphisms = Vec::new();
    if f.degree() > 1 {
        automorphisms.push(AutRealization::conjugation(AutLabel::Field, space.frobenius()));
    }
    Ok(Construction {
        name: format!("PGL2({q})"),
        group,
        automorphisms,
    })
}

/// `PSL_3(q)` on the `q^2 + q + 1` points of the projective plane, with
/// diagonal, field and inverse-transpose automorphisms. The last swaps
/// points and lines, so it is given by generator images.
pub fn make_psl3(q: u64, order_cap: usize) -> Result<Construction> {
    let f = FiniteField::new(q)?;
    let space = ProjectiveSpace { f: &f, dim: 3 };
    let (group, mats) = linear_group(&f, 3, &[], order_cap)?;
    let mut automorphisms = Vec::new();
    if gcd(3, q - 1) == 3 {
        automorphisms.push(AutRealization::conjugation(
            AutLabel::Diagonal,
            space.permutation_of(&diagonal_twist(&f, 3)),
        ));
    }
    if f.degree() > 1 {
        automorphisms.push(AutRealization::conjugation(AutLabel::Field, space.frobenius()));
    }
    let images = mats
        .iter()
        .map(|m| {
            let it = m.inverse(&f).expect("invertible").transpose();
            space.permutation_of(&it)
        })
        .collect();
    automorphisms.push(AutRealization::generator_images(AutLabel::Graph, images));
    Ok(Construction {
        name: format!("PSL3({q})"),
        group,
        automorphisms,
    })
}
