//! Conjugacy classes and class-level products.
//!
//! A set closed under conjugation is a union of classes, and the product of
//! two such sets is again one. Working with class indices instead of
//! elements turns products of normal subsets into lookups in a table of
//! class-product supports.

use rayon::prelude::*;

use super::elemset::ElementSet;
use super::enumerate::EnumeratedGroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Least element index in the class.
    pub representative: u32,
    /// Sorted element indices.
    pub members: Vec<u32>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The partition of a group into conjugacy classes, identity class first and
/// the rest sorted by `(size, representative)`.
#[derive(Debug, Clone)]
pub struct ClassPartition {
    classes: Vec<ConjugacyClass>,
    class_of: Vec<u32>,
}

impl ClassPartition {
    pub(crate) fn compute(group: &EnumeratedGroup) -> Self {
        let n = group.order();
        let gens = group.generator_indices();
        let gen_invs: Vec<u32> = gens.iter().map(|&s| group.inv(s)).collect();
        let mut orbit_of = vec![u32::MAX; n];
        let mut orbits: Vec<Vec<u32>> = Vec::new();
        for start in 0..n as u32 {
            if orbit_of[start as usize] != u32::MAX {
                continue;
            }
            let id = orbits.len() as u32;
            orbit_of[start as usize] = id;
            let mut members = vec![start];
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                head += 1;
                for (&s, &si) in gens.iter().zip(&gen_invs) {
                    let y = group.mul(group.mul(si, x), s);
                    if orbit_of[y as usize] == u32::MAX {
                        orbit_of[y as usize] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            orbits.push(members);
        }
        orbits.sort_by_key(|m| (m.len(), m[0]));
        let mut class_of = vec![0u32; n];
        let classes: Vec<ConjugacyClass> = orbits
            .into_iter()
            .enumerate()
            .map(|(id, members)| {
                for &g in &members {
                    class_of[g as usize] = id as u32;
                }
                ConjugacyClass {
                    representative: members[0],
                    members,
                }
            })
            .collect();
        ClassPartition { classes, class_of }
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, id: usize) -> &ConjugacyClass {
        &self.classes[id]
    }

    #[inline]
    pub fn class_of(&self, g: u32) -> usize {
        self.class_of[g as usize] as usize
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(ConjugacyClass::size).collect()
    }

    /// Class ids making up `set`, or `None` if `set` is not a union of classes.
    pub fn class_set_of(&self, set: &ElementSet) -> Option<ElementSet> {
        let mut hits = vec![0usize; self.len()];
        for g in set.iter() {
            hits[self.class_of(g)] += 1;
        }
        let mut out = ElementSet::empty(self.len());
        for (id, &h) in hits.iter().enumerate() {
            if h == self.classes[id].size() {
                out.insert(id as u32);
            } else if h != 0 {
                return None;
            }
        }
        Some(out)
    }

    /// Elements of the classes in `class_set`.
    pub fn expand(&self, class_set: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.class_of.len());
        for id in class_set.iter() {
            for &g in &self.classes[id as usize].members {
                out.insert(g);
            }
        }
        out
    }

    /// Number of elements in the classes of `class_set`.
    pub fn weight(&self, class_set: &ElementSet) -> usize {
        class_set.iter().map(|id| self.classes[id as usize].size()).sum()
    }
}

/// For every ordered pair of classes `(i, j)`, the set of classes met by
/// the product `C_i C_j`.
#[derive(Debug, Clone)]
pub struct ClassProducts {
    rank: usize,
    support: Vec<ElementSet>,
}

impl ClassProducts {
    pub(crate) fn compute(group: &EnumeratedGroup) -> Self {
        let part = group.classes();
        let r = part.len();
        let support: Vec<ElementSet> = (0..r * r)
            .into_par_iter()
            .map(|ij| {
                let (i, j) = (ij / r, ij % r);
                let rep = part.class(i).representative;
                let mut s = ElementSet::empty(r);
                for &b in &part.class(j).members {
                    s.insert(part.class_of(group.mul(rep, b)) as u32);
                }
                s
            })
            .collect();
        ClassProducts { rank: r, support }
    }

    pub fn support(&self, i: usize, j: usize) -> &ElementSet {
        &self.support[i * self.rank + j]
    }

    /// Classes met by `A B` for unions of classes `A`, `B`.
    pub fn product(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.rank);
        for i in a.iter() {
            for j in b.iter() {
                out.union_with(self.support(i as usize, j as usize));
            }
        }
        out
    }
}

impl EnumeratedGroup {
    pub fn class_products(&self) -> &ClassProducts {
        self.class_products
            .get_or_init(|| ClassProducts::compute(self))
    }
}

/// Conjugacy classes of `group`, identity first, then by `(size, representative)`.
pub fn conjugacy_classes(group: &EnumeratedGroup) -> &[ConjugacyClass] {
    group.classes().classes()
}
