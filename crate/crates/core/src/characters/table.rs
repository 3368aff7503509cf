//! Character tables with complex values and their validation.

use num_complex::Complex;
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::EnumeratedGroup;

/// Irreducible characters of a finite group as class functions.
///
/// Rows are characters (trivial first, then by degree), columns follow the
/// group's class order: identity first, then by `(size, representative)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable<T> {
    pub order: usize,
    pub class_sizes: Vec<usize>,
    pub rep_orders: Vec<u64>,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<Complex<T>>>,
    pub tolerance: T,
}

/// Largest deviations from the two orthogonality relations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residuals<T> {
    pub rows: T,
    pub columns: T,
}

pub fn default_tolerance<T: Float>(order: usize) -> T {
    let floor = T::from(1e-8).unwrap();
    let scaled = T::from(order as f64 * 1024.0).unwrap() * T::epsilon();
    floor.max(scaled)
}

impl<T: Float> CharacterTable<T> {
    pub fn rank(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn value(&self, chi: usize, class: usize) -> Complex<T> {
        self.values[chi][class]
    }

    pub fn residuals(&self) -> Residuals<T> {
        let r = self.rank();
        let g = T::from(self.order).unwrap();
        let size = |k: usize| T::from(self.class_sizes[k]).unwrap();
        let mut rows = T::zero();
        for i in 0..r {
            for j in 0..r {
                let s = (0..r).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
                    acc + self.values[i][k] * self.values[j][k].conj() * size(k)
                });
                let target = if i == j { g } else { T::zero() };
                rows = rows.max((s - target).norm());
            }
        }
        let mut columns = T::zero();
        for a in 0..r {
            for b in 0..r {
                let s = (0..r).fold(Complex::new(T::zero(), T::zero()), |acc, chi| {
                    acc + self.values[chi][a] * self.values[chi][b].conj()
                });
                let target = if a == b { g / size(a) } else { T::zero() };
                columns = columns.max((s - target).norm());
            }
        }
        Residuals { rows, columns }
    }

    /// Checks both orthogonality relations, integrality of degrees and the
    /// trivial first row.
    pub fn validate(&self) -> Result<Residuals<T>> {
        let r = self.rank();
        if self.values.len() != r || self.degrees.len() != r || self.rep_orders.len() != r {
            return Err(Error::LiftFailure(format!(
                "table shape: {} rows, {} degrees for {} classes",
                self.values.len(),
                self.degrees.len(),
                r
            )));
        }
        if self.class_sizes.iter().sum::<usize>() != self.order {
            return Err(Error::LiftFailure("class sizes do not sum to the order".into()));
        }
        let sum_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != self.order as u64 {
            return Err(Error::LiftFailure(format!(
                "squared degrees sum to {sum_sq}, not {}",
                self.order
            )));
        }
        if let Some(d) = self.degrees.iter().find(|&&d| d == 0 || !(self.order as u64).is_multiple_of(d)) {
            return Err(Error::LiftFailure(format!("degree {d} does not divide {}", self.order)));
        }
        let one = Complex::new(T::one(), T::zero());
        if self.values[0].iter().any(|&v| (v - one).norm() > self.tolerance) {
            return Err(Error::LiftFailure("first row is not the trivial character".into()));
        }
        for (chi, row) in self.values.iter().enumerate() {
            let d = T::from(self.degrees[chi]).unwrap();
            if (row[0] - Complex::new(d, T::zero())).norm() > self.tolerance {
                return Err(Error::LiftFailure(format!("character {chi} has value {:?} at 1", row[0].re.to_f64())));
            }
        }
        let res = self.residuals();
        if res.rows > self.tolerance || res.columns > self.tolerance {
            return Err(Error::LiftFailure(format!(
                "orthogonality residuals {:e}/{:e} exceed {:e}",
                res.rows.to_f64().unwrap_or(f64::NAN),
                res.columns.to_f64().unwrap_or(f64::NAN),
                self.tolerance.to_f64().unwrap_or(f64::NAN)
            )));
        }
        Ok(res)
    }

    /// Whether the columns line up with the classes of `group`.
    pub fn matches_group(&self, group: &EnumeratedGroup) -> bool {
        let part = group.classes();
        self.order == group.order()
            && part.sizes() == self.class_sizes
            && part
                .classes()
                .iter()
                .zip(&self.rep_orders)
                .all(|(c, &o)| group.element_order(c.representative) == o)
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            order: self.order,
            classes: self
                .class_sizes
                .iter()
                .zip(&self.rep_orders)
                .map(|(&size, &rep_order)| ClassJson { size, rep_order })
                .collect(),
            degrees: self.degrees.clone(),
            values: self
                .values
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| [v.re.to_f64().unwrap(), v.im.to_f64().unwrap()])
                        .collect()
                })
                .collect(),
        }
    }

    /// Reads and validates a table.
    pub fn from_json(json: &TableJson) -> Result<Self> {
        let to_t = |x: f64| T::from(x).ok_or_else(|| Error::Parse(format!("value {x} out of range")));
        let values = json
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&[re, im]| Ok(Complex::new(to_t(re)?, to_t(im)?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let table = CharacterTable {
            order: json.order,
            class_sizes: json.classes.iter().map(|c| c.size).collect(),
            rep_orders: json.classes.iter().map(|c| c.rep_order).collect(),
            degrees: json.degrees.clone(),
            values,
            tolerance: default_tolerance(json.order),
        };
        table.validate()?;
        Ok(table)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassJson {
    pub size: usize,
    pub rep_order: u64,
}

/// Serialized table; `values[chi][class]` is `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableJson {
    pub order: usize,
    pub classes: Vec<ClassJson>,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<[f64; 2]>>,
}
