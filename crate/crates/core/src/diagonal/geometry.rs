//! The coset space of a diagonal subgroup of `T^k` and the actions on it.
//!
//! A coset `D(h_1, ..., h_k)` is stored as `(h_1^-1 h_2, ..., h_1^-1 h_k)`,
//! a `(k-1)`-tuple of element indices read as a mixed-radix number with the
//! second coordinate lowest. The base point `D(1, ..., 1)` has index 0.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{EnumeratedGroup, Permutation};
use crate::widths::{AutomorphismSet, FusionSpec};

pub const DEFAULT_POINT_CAP: usize = 1 << 21;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VariantKind {
    Tk,
    TkSk,
    DkT,
    Custom,
}

impl VariantKind {
    pub fn name(self) -> &'static str {
        match self {
            VariantKind::Tk => "Tk",
            VariantKind::TkSk => "TkSk",
            VariantKind::DkT => "DkT",
            VariantKind::Custom => "custom",
        }
    }
}

/// Which group `T^k.X` acts: the point stabilizer is generated by the
/// diagonal copy of `T`, the listed automorphisms applied to every
/// coordinate, and a permutation group on the coordinates.
#[derive(Debug, Clone)]
pub enum Variant {
    /// `T^k`
    Tk,
    /// `T^k.S_k`
    TkSk,
    /// `T^k.(Out T x S_k)`, with the given automorphisms generating `Aut T`
    /// modulo inner ones.
    DkT(AutomorphismSet),
    Custom {
        automorphisms: AutomorphismSet,
        /// Permutations of `{0, ..., k-1}`.
        coordinates: Vec<Permutation>,
    },
}

impl Variant {
    pub fn kind(&self) -> VariantKind {
        match self {
            Variant::Tk => VariantKind::Tk,
            Variant::TkSk => VariantKind::TkSk,
            Variant::DkT(_) => VariantKind::DkT,
            Variant::Custom { .. } => VariantKind::Custom,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GeometryOptions {
    pub point_cap: usize,
    /// Build geometries whose coordinate group is intransitive for `k >= 3`.
    pub allow_imprimitive: bool,
}

impl Default for GeometryOptions {
    fn default() -> Self {
        GeometryOptions {
            point_cap: DEFAULT_POINT_CAP,
            allow_imprimitive: false,
        }
    }
}

#[derive(Debug)]
pub struct DiagonalGeometry<'a> {
    group: &'a EnumeratedGroup,
    k: usize,
    kind: VariantKind,
    auts: AutomorphismSet,
    coordinates: Vec<Permutation>,
    size: usize,
}

fn symmetric_generators(k: usize) -> Vec<Permutation> {
    let swap = Permutation::from_cycles(k, &[vec![0, 1]]).expect("k >= 2");
    if k == 2 {
        return vec![swap];
    }
    vec![swap, Permutation::from_cycles(k, &[(0..k).collect()]).expect("k-cycle")]
}

fn is_transitive(k: usize, gens: &[Permutation]) -> bool {
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for g in gens {
            let j = g.apply(i);
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&s| s)
}

pub fn make_geometry<'a>(
    group: &'a EnumeratedGroup,
    k: usize,
    variant: Variant,
    options: GeometryOptions,
) -> Result<DiagonalGeometry<'a>> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k = {k}, need k >= 2")));
    }
    let size = (group.order() as u128)
        .checked_pow(k as u32 - 1)
        .filter(|&s| s <= options.point_cap as u128)
        .ok_or(Error::CapExceeded {
            what: "diagonal point count",
            cap: options.point_cap,
        })? as usize;
    let kind = variant.kind();
    let (auts, coordinates) = match variant {
        Variant::Tk => (AutomorphismSet::inner(), Vec::new()),
        Variant::TkSk => (AutomorphismSet::inner(), symmetric_generators(k)),
        Variant::DkT(auts) => (auts, symmetric_generators(k)),
        Variant::Custom { automorphisms, coordinates } => {
            if let Some(p) = coordinates.iter().find(|p| p.degree() != k) {
                return Err(Error::DegreeMismatch {
                    expected: k,
                    found: p.degree(),
                });
            }
            (automorphisms, coordinates)
        }
    };
    if k >= 3 && !options.allow_imprimitive && !is_transitive(k, &coordinates) {
        return Err(Error::NonTransitiveCoordinates { k });
    }
    group.ensure_mul_table();
    Ok(DiagonalGeometry {
        group,
        k,
        kind,
        auts,
        coordinates,
        size,
    })
}

impl<'a> DiagonalGeometry<'a> {
    pub fn group(&self) -> &'a EnumeratedGroup {
        self.group
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> VariantKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn automorphisms(&self) -> &AutomorphismSet {
        &self.auts
    }

    pub fn coordinate_generators(&self) -> &[Permutation] {
        &self.coordinates
    }

    /// Fusion rule whose widths control the diagonal graphs: inner plus
    /// inversion for `T^k` and `T^k.S_k`, the configured automorphisms
    /// otherwise.
    pub fn fusion(&self) -> FusionSpec {
        match self.kind {
            VariantKind::Tk | VariantKind::TkSk => FusionSpec::Inverse,
            VariantKind::DkT | VariantKind::Custom => FusionSpec::Automorphisms,
        }
    }

    /// Coordinates `(x_2, ..., x_k)` of a point.
    pub fn decode(&self, mut point: usize) -> Vec<u32> {
        let n = self.group.order();
        (1..self.k)
            .map(|_| {
                let x = point % n;
                point /= n;
                x as u32
            })
            .collect()
    }

    pub fn encode(&self, coords: &[u32]) -> usize {
        let n = self.group.order();
        coords.iter().rev().fold(0, |acc, &x| acc * n + x as usize)
    }

    /// Point `(1, ..., 1, g, 1, ..., 1)` with `g` in coordinate `i` (`1 <= i < k`).
    pub fn unit_point(&self, i: usize, g: u32) -> usize {
        let mut c = vec![0u32; self.k - 1];
        c[i - 1] = g;
        self.encode(&c)
    }

    /// Right multiplication by `(t_1, ..., t_k)`.
    pub fn act_tk(&self, point: usize, t: &[u32]) -> usize {
        let g = self.group;
        let t1inv = g.inv(t[0]);
        let coords: Vec<u32> = self
            .decode(point)
            .iter()
            .zip(&t[1..])
            .map(|(&x, &ti)| g.mul(g.mul(t1inv, x), ti))
            .collect();
        self.encode(&coords)
    }

    /// Coordinate permutation: entry `j` of the coset tuple moves to
    /// position `sigma(j)`.
    pub fn act_perm(&self, point: usize, sigma: &Permutation) -> usize {
        let g = self.group;
        let mut full = vec![0u32; self.k];
        full[1..].copy_from_slice(&self.decode(point));
        let mut moved = vec![0u32; self.k];
        for (j, &x) in full.iter().enumerate() {
            moved[sigma.apply(j)] = x;
        }
        let h1inv = g.inv(moved[0]);
        let coords: Vec<u32> = moved[1..].iter().map(|&x| g.mul(h1inv, x)).collect();
        self.encode(&coords)
    }

    /// An automorphism applied to every coordinate.
    pub fn act_aut(&self, point: usize, map: &[u32]) -> usize {
        let coords: Vec<u32> = self.decode(point).iter().map(|&x| map[x as usize]).collect();
        self.encode(&coords)
    }

    /// Images of `point` under the generators of the point stabilizer of 0.
    pub(crate) fn stabilizer_images(&self, point: usize, out: &mut Vec<usize>) {
        out.clear();
        for &s in self.group.generator_indices() {
            out.push(self.act_tk(point, &vec![s; self.k]));
        }
        for sigma in &self.coordinates {
            out.push(self.act_perm(point, sigma));
        }
        for m in self.auts.maps() {
            out.push(self.act_aut(point, m));
        }
    }

    /// `(x_2^-1, ..., x_k^-1)`: the base point translated by the inverse of
    /// the canonical representative of `point`.
    pub fn reversal(&self, point: usize) -> usize {
        let coords: Vec<u32> = self.decode(point).iter().map(|&x| self.group.inv(x)).collect();
        self.encode(&coords)
    }

    /// `s` translated by the canonical representative of `alpha`: the
    /// coordinatewise product `s_i a_i`.
    #[inline]
    pub fn translate(&self, s: &[u32], alpha: &[u32]) -> usize {
        let n = self.group.order();
        let mut acc = 0;
        for i in (0..s.len()).rev() {
            acc = acc * n + self.group.mul(s[i], alpha[i]) as usize;
        }
        acc
    }
}

/// Orbits of the stabilizer of the base point, ordered by least point.
#[derive(Debug, Clone)]
pub struct Suborbits {
    pub orbit_of: Vec<u32>,
    pub orbits: Vec<Vec<usize>>,
}

impl Suborbits {
    pub fn rank(&self) -> usize {
        self.orbits.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
}

pub fn suborbits(geometry: &DiagonalGeometry<'_>) -> Suborbits {
    let n = geometry.size();
    let mut orbit_of = vec![u32::MAX; n];
    let mut orbits = Vec::new();
    let mut images = Vec::new();
    for start in 0..n {
        if orbit_of[start] != u32::MAX {
            continue;
        }
        let id = orbits.len() as u32;
        orbit_of[start] = id;
        let mut members = vec![start];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            geometry.stabilizer_images(x, &mut images);
            for &y in &images {
                if orbit_of[y] == u32::MAX {
                    orbit_of[y] = id;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    Suborbits { orbit_of, orbits }
}
