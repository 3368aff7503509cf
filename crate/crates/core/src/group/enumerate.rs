//! Explicit enumeration of a permutation group from generators.

use std::sync::OnceLock;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::classes::{ClassPartition, ClassProducts};
use super::perm::{Permutation, Point};
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 2_000_000;

/// Groups up to this order get a full multiplication table on request.
pub const MUL_TABLE_LIMIT: usize = 4096;

const NO_GENERATOR: u32 = u32::MAX;
const PENDING: u32 = u32::MAX;

/// Element lookup keyed either by the images of a short base (when they fit
/// in 128 bits) or by the full image array.
enum Lookup {
    Base {
        points: Vec<usize>,
        map: FxHashMap<u128, u32>,
    },
    Full(FxHashMap<Box<[Point]>, u32>),
}

/// A finite permutation group with every element listed.
///
/// Element 0 is the identity. Elements are numbered breadth-first from the
/// identity, each layer sorted lexicographically by image array, so indices
/// are reproducible across runs.
pub struct EnumeratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    generator_index: Vec<u32>,
    images: Vec<Point>,
    lookup: Lookup,
    inverse: Vec<u32>,
    /// `(parent, generator)` with `element = parent * generators[generator]`.
    tree: Vec<(u32, u32)>,
    table: OnceLock<Vec<u32>>,
    pub(crate) classes: OnceLock<ClassPartition>,
    pub(crate) class_products: OnceLock<ClassProducts>,
}

impl std::fmt::Debug for EnumeratedGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EnumeratedGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Enumerates the group generated by `generators`, failing once more than
/// `order_cap` elements have been found.
pub fn enumerate_group(generators: &[Permutation], order_cap: usize) -> Result<EnumeratedGroup> {
    let degree = generators
        .first()
        .map(Permutation::degree)
        .ok_or_else(|| Error::InvalidArgument("at least one generator is required".into()))?;
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    if degree > Point::MAX as usize + 1 {
        return Err(Error::InvalidArgument(format!(
            "degree {degree} exceeds the supported maximum"
        )));
    }

    let mut images: Vec<Point> = (0..degree).map(|i| i as Point).collect();
    let mut map: FxHashMap<Box<[Point]>, u32> = FxHashMap::default();
    map.insert(images.clone().into_boxed_slice(), 0);
    let mut tree = vec![(0u32, NO_GENERATOR)];
    let mut count = 1usize;
    let (mut layer_start, mut layer_end) = (0usize, 1usize);
    let mut product = vec![0 as Point; degree];

    while layer_start < layer_end {
        let mut next: Vec<(Box<[Point]>, u32, u32)> = Vec::new();
        for idx in layer_start..layer_end {
            for (gi, gen) in generators.iter().enumerate() {
                let row = &images[idx * degree..(idx + 1) * degree];
                for (dst, &src) in product.iter_mut().zip(row) {
                    *dst = gen.images()[src as usize];
                }
                if map.contains_key(product.as_slice()) {
                    continue;
                }
                let key: Box<[Point]> = product.clone().into_boxed_slice();
                map.insert(key.clone(), PENDING);
                next.push((key, idx as u32, gi as u32));
            }
        }
        next.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        for (key, parent, gen) in next {
            if count >= order_cap {
                return Err(Error::CapExceeded {
                    what: "group order",
                    cap: order_cap,
                });
            }
            images.extend_from_slice(&key);
            *map.get_mut(&key).expect("pending element") = count as u32;
            tree.push((parent, gen));
            count += 1;
        }
        layer_start = layer_end;
        layer_end = count;
    }

    let lookup = choose_lookup(degree, count, &images, map);
    let mut group = EnumeratedGroup {
        degree,
        generators: generators.to_vec(),
        generator_index: Vec::new(),
        images,
        lookup,
        inverse: Vec::new(),
        tree,
        table: OnceLock::new(),
        classes: OnceLock::new(),
        class_products: OnceLock::new(),
    };
    group.generator_index = generators
        .iter()
        .map(|g| group.index_of(g).expect("generator is an element"))
        .collect();
    group.inverse = (0..count as u32)
        .into_par_iter()
        .map(|i| {
            let inv = group.element(i).inverse();
            group.index_of(&inv).expect("closed under inverses")
        })
        .collect();
    Ok(group)
}

fn choose_lookup(
    degree: usize,
    order: usize,
    images: &[Point],
    full: FxHashMap<Box<[Point]>, u32>,
) -> Lookup {
    // Greedy base: every nonidentity element moves some chosen point.
    let mut base = Vec::new();
    let mut moving: Vec<usize> = (1..order).collect();
    while let Some(&g) = moving.first() {
        let row = &images[g * degree..(g + 1) * degree];
        let p = (0..degree).find(|&i| row[i] as usize != i).expect("nonidentity");
        base.push(p);
        if base.len() > 8 {
            return Lookup::Full(full);
        }
        moving.retain(|&h| images[h * degree + p] as usize == p);
    }
    let mut map = FxHashMap::default();
    map.reserve(order);
    for g in 0..order {
        let key = pack(base.iter().map(|&p| images[g * degree + p]));
        map.insert(key, g as u32);
    }
    Lookup::Base { points: base, map }
}

#[inline]
fn pack(points: impl Iterator<Item = Point>) -> u128 {
    points.fold(0u128, |acc, p| acc << 16 | p as u128)
}

impl EnumeratedGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.tree.len()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Element indices of the generators, in the order given.
    pub fn generator_indices(&self) -> &[u32] {
        &self.generator_index
    }

    pub fn images_of(&self, g: u32) -> &[Point] {
        let g = g as usize;
        &self.images[g * self.degree..(g + 1) * self.degree]
    }

    pub fn element(&self, g: u32) -> Permutation {
        Permutation::from_images_unchecked(self.images_of(g).to_vec())
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        if p.degree() != self.degree {
            return None;
        }
        match &self.lookup {
            Lookup::Full(map) => map.get(p.images()).copied(),
            Lookup::Base { points, map } => {
                let key = pack(points.iter().map(|&b| p.images()[b]));
                map.get(&key)
                    .copied()
                    .filter(|&g| self.images_of(g) == p.images())
            }
        }
    }

    #[inline]
    pub fn inv(&self, g: u32) -> u32 {
        self.inverse[g as usize]
    }

    /// Product `a * b` (apply `a`, then `b`).
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if let Some(table) = self.table.get() {
            return table[a as usize * self.order() + b as usize];
        }
        self.mul_by_lookup(a, b)
    }

    fn mul_by_lookup(&self, a: u32, b: u32) -> u32 {
        let ra = self.images_of(a);
        let rb = self.images_of(b);
        match &self.lookup {
            Lookup::Base { points, map } => {
                let key = pack(points.iter().map(|&p| rb[ra[p] as usize]));
                *map.get(&key).expect("group is closed under products")
            }
            Lookup::Full(map) => {
                let prod: Vec<Point> = ra.iter().map(|&i| rb[i as usize]).collect();
                *map.get(prod.as_slice()).expect("group is closed under products")
            }
        }
    }

    /// Builds the full multiplication table if the order is at most
    /// [`MUL_TABLE_LIMIT`]; returns whether a table is in use.
    pub fn ensure_mul_table(&self) -> bool {
        let n = self.order();
        if n > MUL_TABLE_LIMIT {
            return false;
        }
        self.table.get_or_init(|| {
            let mut table = vec![0u32; n * n];
            table
                .par_chunks_mut(n)
                .enumerate()
                .for_each(|(a, row)| {
                    for (b, slot) in row.iter_mut().enumerate() {
                        *slot = self.mul_by_lookup(a as u32, b as u32);
                    }
                });
            table
        });
        true
    }

    /// `x^{-1} g x`.
    #[inline]
    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(self.inv(x), g), x)
    }

    pub fn pow(&self, g: u32, mut e: u64) -> u32 {
        let mut base = g;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Least `m >= 1` with `g^m = 1`.
    pub fn element_order(&self, g: u32) -> u64 {
        self.element(g).order()
    }

    /// Breadth-first spanning tree: entry `g` is `(parent, generator)` with
    /// `g = parent * generators[generator]`; the identity has no parent.
    pub fn spanning_tree(&self) -> &[(u32, u32)] {
        &self.tree
    }

    /// Extends an assignment of generator images to a map on all elements and
    /// checks that it is a bijective homomorphism.
    pub fn extend_generator_images(&self, generator_images: &[u32]) -> Result<Vec<u32>> {
        if generator_images.len() != self.generators.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} generator images, got {}",
                self.generators.len(),
                generator_images.len()
            )));
        }
        let n = self.order();
        let mut map = vec![0u32; n];
        for g in 1..n {
            let (parent, gen) = self.tree[g];
            map[g] = self.mul(map[parent as usize], generator_images[gen as usize]);
        }
        let consistent = (0..n as u32).into_par_iter().all(|g| {
            self.generator_index
                .iter()
                .zip(generator_images)
                .all(|(&s, &img)| map[self.mul(g, s) as usize] == self.mul(map[g as usize], img))
        });
        if !consistent {
            return Err(Error::NotNormalizing(
                "generator images do not extend to a homomorphism".into(),
            ));
        }
        let mut hit = vec![false; n];
        for &m in &map {
            if std::mem::replace(&mut hit[m as usize], true) {
                return Err(Error::NotNormalizing(
                    "generator images do not define a bijection".into(),
                ));
            }
        }
        Ok(map)
    }

    pub fn classes(&self) -> &ClassPartition {
        self.classes.get_or_init(|| ClassPartition::compute(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a5() -> EnumeratedGroup {
        let g1 = Permutation::parse_cycles(5, "(0 1 2)").unwrap();
        let g2 = Permutation::parse_cycles(5, "(2 3 4)").unwrap();
        enumerate_group(&[g1, g2], DEFAULT_ORDER_CAP).unwrap()
    }

    #[test]
    fn a5_has_sixty_elements() {
        let g = a5();
        assert_eq!(g.order(), 60);
        assert!(g.element(0).is_identity());
        assert!((0..60).all(|i| g.element(i).is_even()));
    }

    #[test]
    fn trivial_group() {
        let g = enumerate_group(&[Permutation::identity(3)], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.mul(0, 0), 0);
    }

    #[test]
    fn cap_and_degree_errors() {
        let g1 = Permutation::parse_cycles(5, "(0 1 2)").unwrap();
        let g2 = Permutation::parse_cycles(5, "(2 3 4)").unwrap();
        assert_eq!(
            enumerate_group(&[g1.clone(), g2], 59).unwrap_err(),
            Error::CapExceeded { what: "group order", cap: 59 }
        );
        let g3 = Permutation::parse_cycles(4, "(0 1)").unwrap();
        assert!(matches!(
            enumerate_group(&[g1, g3], 100),
            Err(Error::DegreeMismatch { expected: 5, found: 4 })
        ));
        assert!(enumerate_group(&[], 100).is_err());
    }

    #[test]
    fn lookup_and_table_agree_with_composition() {
        let g = a5();
        for a in 0..60 {
            for b in 0..60 {
                let p = g.element(a).then(&g.element(b));
                assert_eq!(g.mul(a, b), g.index_of(&p).unwrap());
            }
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
        assert!(g.ensure_mul_table());
        for a in 0..60 {
            for b in 0..60 {
                let p = g.element(a).then(&g.element(b));
                assert_eq!(g.mul(a, b), g.index_of(&p).unwrap());
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let x = a5();
        let y = a5();
        assert!((0..60).all(|i| x.images_of(i) == y.images_of(i)));
    }

    #[test]
    fn spanning_tree_reconstructs_elements() {
        let g = a5();
        for (i, &(parent, gen)) in g.spanning_tree().iter().enumerate().skip(1) {
            let s = g.generator_indices()[gen as usize];
            assert_eq!(g.mul(parent, s), i as u32);
        }
    }

    #[test]
    fn inner_generator_images_extend() {
        let g = a5();
        let x = 7;
        let imgs: Vec<u32> = g
            .generator_indices()
            .iter()
            .map(|&s| g.conjugate(s, x))
            .collect();
        let map = g.extend_generator_images(&imgs).unwrap();
        assert!((0..60).all(|h| map[h as usize] == g.conjugate(h, x)));
        // Sending both generators to the identity is not injective.
        assert!(g.extend_generator_images(&[0, 0]).is_err());
    }

    #[test]
    fn element_orders() {
        let g = a5();
        assert_eq!(g.element_order(0), 1);
        let c3 = g.index_of(&Permutation::parse_cycles(5, "(0 1 2)").unwrap()).unwrap();
        let c5 = g.index_of(&Permutation::parse_cycles(5, "(0 1 2 3 4)").unwrap()).unwrap();
        assert_eq!(g.element_order(c3), 3);
        assert_eq!(g.element_order(c5), 5);
        assert_eq!(g.pow(c5, 5), 0);
    }
}
