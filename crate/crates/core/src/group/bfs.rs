//! Cayley-graph balls and set products.
//!
//! Distances from the identity in the Cayley graph with connection set `S`
//! are computed layer by layer, right-multiplying the frontier by `S`.
//! When `S` is closed under conjugation every layer is a union of classes,
//! and the search runs over class indices instead of elements.

use rayon::prelude::*;

use super::elemset::ElementSet;
use super::enumerate::EnumeratedGroup;
use crate::error::{Error, Result};

/// Distance of every element from the identity and the maximum distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eccentricity {
    pub width: u32,
    pub dist: Vec<u32>,
}

/// Per-class distances for a conjugation-invariant connection set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDistances {
    pub width: u32,
    /// Indexed by class id.
    pub dist: Vec<u32>,
}

impl ClassDistances {
    pub fn to_elements(&self, group: &EnumeratedGroup) -> Eccentricity {
        let part = group.classes();
        let dist = (0..group.order() as u32)
            .map(|g| self.dist[part.class_of(g)])
            .collect();
        Eccentricity {
            width: self.width,
            dist,
        }
    }
}

/// Eccentricity of the identity in `Cay(G, S)`.
pub fn cayley_eccentricity(group: &EnumeratedGroup, s: &ElementSet) -> Result<Eccentricity> {
    match group.classes().class_set_of(s) {
        Some(classes) => Ok(class_eccentricity(group, &classes)?.to_elements(group)),
        None => cayley_eccentricity_elementwise(group, s),
    }
}

/// Element-level breadth-first search, valid for any connection set.
pub fn cayley_eccentricity_elementwise(
    group: &EnumeratedGroup,
    s: &ElementSet,
) -> Result<Eccentricity> {
    if s.is_empty() {
        return Err(Error::InvalidArgument("empty connection set".into()));
    }
    let n = group.order();
    let gens = s.to_vec();
    let mut dist = vec![u32::MAX; n];
    let mut visited = ElementSet::empty(n);
    visited.insert(0);
    dist[0] = 0;
    let mut frontier = vec![0u32];
    let mut depth = 0;
    while !frontier.is_empty() {
        let mut next: Vec<u32> = frontier
            .par_chunks(256)
            .flat_map_iter(|chunk| {
                let mut local = Vec::new();
                for &g in chunk {
                    for &x in &gens {
                        let h = group.mul(g, x);
                        if !visited.contains(h) {
                            local.push(h);
                        }
                    }
                }
                local
            })
            .collect();
        next.sort_unstable();
        next.dedup();
        if next.is_empty() {
            break;
        }
        depth += 1;
        for &h in &next {
            visited.insert(h);
            dist[h as usize] = depth;
        }
        frontier = next;
    }
    let reached = visited.len();
    if reached < n {
        return Err(Error::NotGenerating { reached, order: n });
    }
    Ok(Eccentricity { width: depth, dist })
}

/// Breadth-first search over classes for a connection set given as class ids.
pub fn class_eccentricity(group: &EnumeratedGroup, s: &ElementSet) -> Result<ClassDistances> {
    if s.is_empty() {
        return Err(Error::InvalidArgument("empty connection set".into()));
    }
    let part = group.classes();
    let prods = group.class_products();
    let r = part.len();
    let mut dist = vec![u32::MAX; r];
    dist[0] = 0;
    let mut visited = ElementSet::empty(r);
    visited.insert(0);
    let mut frontier = ElementSet::empty(r);
    frontier.insert(0);
    let mut depth = 0;
    loop {
        let mut next = prods.product(&frontier, s);
        next.difference_with(&visited);
        if next.is_empty() {
            break;
        }
        depth += 1;
        for c in next.iter() {
            dist[c as usize] = depth;
        }
        visited.union_with(&next);
        frontier = next;
    }
    if !visited.is_full() {
        return Err(Error::NotGenerating {
            reached: part.weight(&visited),
            order: group.order(),
        });
    }
    Ok(ClassDistances { width: depth, dist })
}

/// `{ab : a in A, b in B}`.
pub fn set_product(group: &EnumeratedGroup, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let part = group.classes();
    if let (Some(ca), Some(cb)) = (part.class_set_of(a), part.class_set_of(b)) {
        return part.expand(&group.class_products().product(&ca, &cb));
    }
    set_product_elementwise(group, a, b)
}

/// Direct enumeration of all products; the reference for [`set_product`].
pub fn set_product_elementwise(group: &EnumeratedGroup, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let n = group.order();
    let bs = b.to_vec();
    let av = a.to_vec();
    av.par_chunks(64)
        .map(|chunk| {
            let mut local = ElementSet::empty(n);
            for &x in chunk {
                for &y in &bs {
                    local.insert(group.mul(x, y));
                }
            }
            local
        })
        .reduce(
            || ElementSet::empty(n),
            |mut acc, s| {
                acc.union_with(&s);
                acc
            },
        )
}
