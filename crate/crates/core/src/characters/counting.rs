//! Counting solutions of `x_1 ... x_d = z` with `x_i` in given classes.

use num_complex::Complex;
use num_traits::Float;

use super::table::CharacterTable;
use crate::error::{Error, Result};
use crate::group::{ElementSet, EnumeratedGroup};

pub const BRUTEFORCE_WORK_CAP: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionCount<T> {
    pub value: Complex<T>,
    pub rounded: i64,
    /// `|value - rounded|`, imaginary part included.
    pub residual: T,
}

/// For every `z`, the number of tuples in `C_1 x ... x C_d` with product `z`,
/// by convolving class indicator vectors through the multiplication.
pub fn structure_count_vector(group: &EnumeratedGroup, classes: &[usize]) -> Result<Vec<u64>> {
    let Some((&first, rest)) = classes.split_first() else {
        return Err(Error::InvalidArgument("need at least one class".into()));
    };
    let part = group.classes();
    let work: u128 = classes[..classes.len() - 1]
        .iter()
        .map(|&c| part.class(c).size() as u128)
        .product();
    if work > BRUTEFORCE_WORK_CAP {
        return Err(Error::CapExceeded {
            what: "brute-force tuple count",
            cap: BRUTEFORCE_WORK_CAP as usize,
        });
    }
    let n = group.order();
    let mut counts = vec![0u64; n];
    for &x in &part.class(first).members {
        counts[x as usize] = 1;
    }
    for &c in rest {
        let mut next = vec![0u64; n];
        for (g, &k) in counts.iter().enumerate() {
            if k == 0 {
                continue;
            }
            for &x in &part.class(c).members {
                next[group.mul(g as u32, x) as usize] += k;
            }
        }
        counts = next;
    }
    Ok(counts)
}

pub fn structure_count_bruteforce(group: &EnumeratedGroup, classes: &[usize], z: u32) -> Result<u64> {
    Ok(structure_count_vector(group, classes)?[z as usize])
}

/// `(prod |C_i| / |G|) sum_chi chi(c_1)...chi(c_d) conj(chi(z)) / chi(1)^(d-1)`.
pub fn frobenius_count<T: Float>(
    table: &CharacterTable<T>,
    classes: &[usize],
    z_class: usize,
) -> Result<SolutionCount<T>> {
    if classes.is_empty() {
        return Err(Error::InvalidArgument("need at least one class".into()));
    }
    let d = classes.len() as i32;
    let zero = Complex::new(T::zero(), T::zero());
    let sum = (0..table.degrees.len()).fold(zero, |acc, chi| {
        let prod = classes
            .iter()
            .fold(Complex::new(T::one(), T::zero()), |p, &c| p * table.value(chi, c));
        let deg = T::from(table.degrees[chi]).unwrap();
        acc + prod * table.value(chi, z_class).conj() / deg.powi(d - 1)
    });
    let scale = classes
        .iter()
        .fold(T::one(), |s, &c| s * T::from(table.class_sizes[c]).unwrap())
        / T::from(table.order).unwrap();
    let value = sum * scale;
    let rounded = value.re.round();
    let residual = (value - Complex::new(rounded, T::zero())).norm();
    let half = T::from(0.5).unwrap();
    if residual >= half {
        return Err(Error::ResidualTooLarge {
            value: format!("{}", value.re.to_f64().unwrap_or(f64::NAN)),
            residual: format!("{}", residual.to_f64().unwrap_or(f64::NAN)),
        });
    }
    Ok(SolutionCount {
        value,
        rounded: rounded.to_i64().unwrap_or(i64::MAX),
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryCheck<T> {
    /// `|sum_{chi != 1} chi(c)^k conj(chi(d)) / chi(1)^(k-1)|`
    pub magnitude: T,
    /// `magnitude < 1 - 1e-6`, which forces `D` into `C^k`.
    pub implied: bool,
    /// Whether `D` lies in `C^k`, from class products.
    pub contained: bool,
}

pub const COROLLARY_EPSILON: f64 = 1e-6;

pub fn corollary_membership<T: Float>(
    table: &CharacterTable<T>,
    group: &EnumeratedGroup,
    c: usize,
    d: usize,
    k: u32,
) -> Result<CorollaryCheck<T>> {
    if c == 0 || d == 0 {
        return Err(Error::IdentityElement);
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let zero = Complex::new(T::zero(), T::zero());
    let sum = (1..table.degrees.len()).fold(zero, |acc, chi| {
        let deg = T::from(table.degrees[chi]).unwrap();
        acc + table.value(chi, c).powi(k as i32) * table.value(chi, d).conj() / deg.powi(k as i32 - 1)
    });
    let magnitude = sum.norm();
    let implied = magnitude < T::one() - T::from(COROLLARY_EPSILON).unwrap();

    let r = group.classes().len();
    let single = ElementSet::from_indices(r, [c as u32]);
    let prods = group.class_products();
    let mut power = single.clone();
    for _ in 1..k {
        power = prods.product(&power, &single);
    }
    Ok(CorollaryCheck {
        magnitude,
        implied,
        contained: power.contains(d as u32),
    })
}
