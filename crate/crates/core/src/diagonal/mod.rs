//! Primitive groups of simple diagonal type `T^k.X` acting on the cosets of
//! a diagonal subgroup.

mod geometry;
mod graph;

#[cfg(test)]
mod tests;

use serde::Serialize;

pub use geometry::{
    make_geometry, suborbits, DiagonalGeometry, GeometryOptions, Suborbits, Variant, VariantKind,
    DEFAULT_POINT_CAP,
};
pub use graph::{
    bound_certificate, construct_path, distances_from, eccentricity_from, gamma0, graph_diameter, lower_bound,
    orbdiam, orbital_graph, orbital_record, orbital_representatives, to_dot, BoundCertificate, BoundWidths,
    OrbitalGraph, OrbitalRecord, DOT_POINT_LIMIT,
};

use crate::error::Result;
use crate::widths::{fuse_class, width_of, FusionSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalReport {
    #[serde(rename = "T")]
    pub group: String,
    pub k: usize,
    pub variant: &'static str,
    pub omega_size: usize,
    pub rank: usize,
    pub orbitals: Vec<OrbitalRecord>,
    pub orbdiam: u32,
    pub certificates: Vec<BoundCertificate>,
}

/// `c_X(T, t)` for the geometry's fusion rule and `c_i(T)`.
pub fn widths_for(geometry: &DiagonalGeometry<'_>, t: u32) -> Result<BoundWidths> {
    let group = geometry.group();
    let auts = geometry.automorphisms();
    let c_x = width_of(group, &fuse_class(group, t, geometry.fusion(), auts)?)?;
    let mut c_i = 0;
    for c in &group.classes().classes()[1..] {
        c_i = c_i.max(width_of(group, &fuse_class(group, c.representative, FusionSpec::Inverse, auts)?)?);
    }
    Ok(BoundWidths { c_x, c_i })
}

/// Suborbits, all orbital diameters, and a bound certificate for `Gamma_0^t`
/// with `t` running over class representatives.
pub fn diagonal_report(name: &str, geometry: &DiagonalGeometry<'_>) -> Result<DiagonalReport> {
    let subs = suborbits(geometry);
    let orbitals = orbital_representatives(&subs, geometry)
        .into_iter()
        .map(|beta| orbital_graph(geometry, &subs, beta).and_then(|g| orbital_record(&g, &subs)))
        .collect::<Result<Vec<_>>>()?;
    let group = geometry.group();
    let certificates = group.classes().classes()[1..]
        .iter()
        .map(|c| {
            let widths = widths_for(geometry, c.representative)?;
            bound_certificate(geometry, &subs, c.representative, widths)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DiagonalReport {
        group: name.to_string(),
        k: geometry.k(),
        variant: geometry.kind().name(),
        omega_size: geometry.size(),
        rank: subs.rank(),
        orbdiam: orbitals.iter().map(|r| r.diameter).max().unwrap_or(0),
        orbitals,
        certificates,
    })
}
