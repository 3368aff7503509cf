//! Automorphisms of an enumerated group.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{EnumeratedGroup, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AutLabel {
    Inner,
    Outer,
    Diagonal,
    Field,
    Graph,
    Exceptional,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutKind {
    /// `g -> pi^-1 g pi` for a permutation `pi` of the domain normalizing the group.
    Conjugation(Permutation),
    /// Images of the group's generators, in order; extended along the
    /// spanning tree and checked to be a bijective homomorphism.
    GeneratorImages(Vec<Permutation>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutRealization {
    pub label: AutLabel,
    pub kind: AutKind,
}

impl AutRealization {
    pub fn conjugation(label: AutLabel, pi: Permutation) -> Self {
        AutRealization {
            label,
            kind: AutKind::Conjugation(pi),
        }
    }

    pub fn generator_images(label: AutLabel, images: Vec<Permutation>) -> Self {
        AutRealization {
            label,
            kind: AutKind::GeneratorImages(images),
        }
    }

    /// The automorphism as a map on element indices.
    pub fn element_map(&self, group: &EnumeratedGroup) -> Result<Vec<u32>> {
        match &self.kind {
            AutKind::Conjugation(pi) => {
                if pi.degree() != group.degree() {
                    return Err(Error::DegreeMismatch {
                        expected: group.degree(),
                        found: pi.degree(),
                    });
                }
                let pinv = pi.inverse();
                (0..group.order() as u32)
                    .map(|g| {
                        let img = pinv.then(&group.element(g)).then(pi);
                        group.index_of(&img).ok_or_else(|| {
                            Error::NotNormalizing(format!("{pi} conjugates {} out of the group", group.element(g)))
                        })
                    })
                    .collect()
            }
            AutKind::GeneratorImages(images) => {
                let idx = images
                    .iter()
                    .map(|p| {
                        group
                            .index_of(p)
                            .ok_or_else(|| Error::NotNormalizing(format!("generator image {p} is not in the group")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                group.extend_generator_images(&idx)
            }
        }
    }
}
