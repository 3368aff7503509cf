//! Orbital graphs on the diagonal coset space, their diameters, the width
//! bounds on `diam(Gamma_0^t)`, and explicit short paths.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::geometry::{suborbits, DiagonalGeometry, Suborbits, VariantKind};
use crate::error::{Error, Result};
use crate::group::{class_eccentricity, ElementSet};

/// An undirected orbital graph, stored as the neighbor set of the base point.
#[derive(Debug, Clone)]
pub struct OrbitalGraph<'g, 'a> {
    pub geometry: &'g DiagonalGeometry<'a>,
    /// Sorted point indices of `N(0)`.
    pub neighbors: Vec<usize>,
    /// Decoded `neighbors`.
    coords: Vec<Vec<u32>>,
    membership: ElementSet,
    /// Index of the suborbit of the defining point.
    pub suborbit: usize,
    /// Whether the paired suborbit differs from the defining one and was merged.
    pub merged_pair: bool,
}

impl<'g, 'a> OrbitalGraph<'g, 'a> {
    pub fn valency(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_adjacent(&self, alpha: usize, beta: usize) -> bool {
        // beta = s alpha coordinatewise for some s in N(0)
        let g = self.geometry.group();
        let a = self.geometry.decode(alpha);
        let b = self.geometry.decode(beta);
        let s: Vec<u32> = b.iter().zip(&a).map(|(&y, &x)| g.mul(y, g.inv(x))).collect();
        self.membership.contains(self.geometry.encode(&s) as u32)
    }

    pub fn neighbors_of(&self, alpha: usize) -> Vec<usize> {
        let a = self.geometry.decode(alpha);
        self.coords.iter().map(|s| self.geometry.translate(s, &a)).collect()
    }
}

/// The graph whose base neighbors are the suborbit of `beta` and its reversal.
pub fn orbital_graph<'g, 'a>(
    geometry: &'g DiagonalGeometry<'a>,
    subs: &Suborbits,
    beta: usize,
) -> Result<OrbitalGraph<'g, 'a>> {
    if beta == 0 {
        return Err(Error::DiagonalPair);
    }
    let id = subs.orbit_of[beta] as usize;
    let paired = subs.orbit_of[geometry.reversal(beta)] as usize;
    let mut neighbors = subs.orbits[id].clone();
    if paired != id {
        neighbors.extend_from_slice(&subs.orbits[paired]);
        neighbors.sort_unstable();
    }
    let coords = neighbors.iter().map(|&p| geometry.decode(p)).collect();
    let membership = ElementSet::from_indices(geometry.size(), neighbors.iter().map(|&p| p as u32));
    Ok(OrbitalGraph {
        geometry,
        neighbors,
        coords,
        membership,
        suborbit: id,
        merged_pair: paired != id,
    })
}

/// Distances from `source`; `u32::MAX` marks unreachable points.
pub fn distances_from(graph: &OrbitalGraph<'_, '_>, source: usize) -> Vec<u32> {
    let n = graph.geometry.size();
    let visited: Vec<AtomicU64> = (0..n.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
    let mark = |p: usize| {
        let bit = 1u64 << (p % 64);
        visited[p / 64].fetch_or(bit, Ordering::Relaxed) & bit == 0
    };
    let mut dist = vec![u32::MAX; n];
    mark(source);
    dist[source] = 0;
    let mut frontier = vec![source];
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        let mut next: Vec<usize> = frontier
            .par_chunks(64)
            .flat_map_iter(|chunk| {
                let mut local = Vec::new();
                for &alpha in chunk {
                    let a = graph.geometry.decode(alpha);
                    for s in &graph.coords {
                        let beta = graph.geometry.translate(s, &a);
                        if mark(beta) {
                            local.push(beta);
                        }
                    }
                }
                local
            })
            .collect();
        next.sort_unstable();
        for &b in &next {
            dist[b] = depth;
        }
        frontier = next;
    }
    dist
}

pub fn eccentricity_from(graph: &OrbitalGraph<'_, '_>, source: usize) -> Result<u32> {
    let dist = distances_from(graph, source);
    let reached = dist.iter().filter(|&&d| d != u32::MAX).count();
    if reached < dist.len() {
        return Err(Error::Disconnected {
            reached,
            total: dist.len(),
        });
    }
    Ok(dist.into_iter().max().unwrap_or(0))
}

/// Diameter: the eccentricity of the base point, the graph being
/// vertex-transitive.
pub fn graph_diameter(graph: &OrbitalGraph<'_, '_>) -> Result<u32> {
    eccentricity_from(graph, 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitalRecord {
    /// Defining point, as coordinates `(x_2, ..., x_k)` of element indices.
    pub representative: usize,
    pub suborbit_size: usize,
    pub valency: usize,
    pub merged_pair: bool,
    pub diameter: u32,
}

/// One graph per pair of paired suborbits, in order of least point.
pub fn orbital_representatives(subs: &Suborbits, geometry: &DiagonalGeometry<'_>) -> Vec<usize> {
    let mut seen = vec![false; subs.rank()];
    seen[subs.orbit_of[0] as usize] = true;
    let mut reps = Vec::new();
    for orbit in &subs.orbits {
        let beta = orbit[0];
        let id = subs.orbit_of[beta] as usize;
        if seen[id] {
            continue;
        }
        seen[id] = true;
        seen[subs.orbit_of[geometry.reversal(beta)] as usize] = true;
        reps.push(beta);
    }
    reps
}

pub fn orbital_record(graph: &OrbitalGraph<'_, '_>, subs: &Suborbits) -> Result<OrbitalRecord> {
    Ok(OrbitalRecord {
        representative: subs.orbits[graph.suborbit][0],
        suborbit_size: subs.orbits[graph.suborbit].len(),
        valency: graph.valency(),
        merged_pair: graph.merged_pair,
        diameter: graph_diameter(graph)?,
    })
}

/// Maximum diameter over the orbital graphs, with the per-graph records.
pub fn orbdiam(geometry: &DiagonalGeometry<'_>) -> Result<(u32, Vec<OrbitalRecord>)> {
    let subs = suborbits(geometry);
    let records = orbital_representatives(&subs, geometry)
        .into_iter()
        .map(|beta| orbital_graph(geometry, &subs, beta).and_then(|g| orbital_record(&g, &subs)))
        .collect::<Result<Vec<_>>>()?;
    let max = records.iter().map(|r| r.diameter).max().unwrap_or(0);
    Ok((max, records))
}

/// Widths entering the bounds for `Gamma_0^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundWidths {
    /// `c_X(T, t)` for the variant's fusion rule.
    pub c_x: u32,
    /// `c_i(T)`, the maximum over all nontrivial classes.
    pub c_i: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub t: String,
    pub t_index: u32,
    pub k: usize,
    pub measured: u32,
    pub lower: u32,
    pub upper: u32,
    /// Only for `T^k.S_k`.
    pub upper_quadratic: Option<u32>,
    pub widths: BoundWidths,
}

/// `(k-1)c/2 + 1` for `k` odd, `kc/2` for `k` even.
pub fn lower_bound(k: usize, c: u32) -> u32 {
    let k = k as u32;
    if k % 2 == 1 {
        (k - 1) * c / 2 + 1
    } else {
        k * c / 2
    }
}

/// The graph `Gamma_0^t`, defined by the point `(1, ..., 1, t)`.
pub fn gamma0<'g, 'a>(geometry: &'g DiagonalGeometry<'a>, subs: &Suborbits, t: u32) -> Result<OrbitalGraph<'g, 'a>> {
    if t == geometry.group().identity() {
        return Err(Error::DiagonalPair);
    }
    orbital_graph(geometry, subs, geometry.unit_point(geometry.k() - 1, t))
}

pub fn bound_certificate(
    geometry: &DiagonalGeometry<'_>,
    subs: &Suborbits,
    t: u32,
    widths: BoundWidths,
) -> Result<BoundCertificate> {
    let graph = gamma0(geometry, subs, t)?;
    let measured = graph_diameter(&graph)?;
    let k = geometry.k();
    let lower = lower_bound(k, widths.c_x);
    let upper = (k as u32 - 1) * widths.c_i;
    let upper_quadratic =
        (geometry.kind() == VariantKind::TkSk).then(|| 24 * (k as u32 - 1) * widths.c_i * widths.c_i);
    let t_name = geometry.group().element(t).to_cycle_string();
    if measured < lower || measured > upper || upper_quadratic.is_some_and(|u| measured > u) {
        return Err(Error::BoundViolation(format!(
            "diam Gamma_0^{t_name} = {measured} outside [{lower}, {upper}]"
        )));
    }
    Ok(BoundCertificate {
        t: t_name,
        t_index: t,
        k,
        measured,
        lower,
        upper,
        upper_quadratic,
        widths,
    })
}

/// A path from the base point to `target`, changing one coordinate at a
/// time by a left factor `g` with `(1, .., g, .., 1)` adjacent to the base
/// point. The base point itself is not included.
pub fn construct_path(graph: &OrbitalGraph<'_, '_>, target: usize) -> Result<Vec<usize>> {
    let geometry = graph.geometry;
    let group = geometry.group();
    let part = group.classes();
    let mut coords = vec![0u32; geometry.k() - 1];
    let goal = geometry.decode(target);
    let mut path = Vec::new();
    for i in 1..geometry.k() {
        let h = goal[i - 1];
        if h == group.identity() {
            continue;
        }
        let unavailable = |reason: String| Error::FactorizationUnavailable {
            coordinate: i,
            reason,
        };
        let steps = ElementSet::from_indices(
            group.order(),
            (0..group.order() as u32).filter(|&g| g != 0 && graph.membership.contains(geometry.unit_point(i, g) as u32)),
        );
        let classes = part
            .class_set_of(&steps)
            .ok_or_else(|| unavailable("steps are not a union of classes".into()))?;
        if classes.is_empty() {
            return Err(unavailable("no neighbor differs in this coordinate alone".into()));
        }
        let dist = class_eccentricity(group, &classes).map_err(|e| unavailable(e.to_string()))?;
        let step_list = steps.to_vec();
        let mut rest = h;
        let mut factors = Vec::new();
        while rest != group.identity() {
            let d = dist.dist[part.class_of(rest)];
            let s = *step_list
                .iter()
                .find(|&&s| dist.dist[part.class_of(group.mul(rest, group.inv(s)))] + 1 == d)
                .ok_or_else(|| unavailable("distance does not decrease".into()))?;
            factors.push(s);
            rest = group.mul(rest, group.inv(s));
        }
        // factors were peeled off the right end of h
        for s in factors {
            coords[i - 1] = group.mul(s, coords[i - 1]);
            let next = geometry.encode(&coords);
            let prev = path.last().copied().unwrap_or(0);
            if !graph.is_adjacent(prev, next) {
                return Err(unavailable(format!("step {prev} -> {next} is not an edge")));
            }
            path.push(next);
        }
    }
    debug_assert_eq!(path.last().copied().unwrap_or(0), target);
    Ok(path)
}

pub const DOT_POINT_LIMIT: usize = 5000;

/// Graphviz rendering of the whole graph.
pub fn to_dot(graph: &OrbitalGraph<'_, '_>) -> Result<String> {
    let n = graph.geometry.size();
    if n > DOT_POINT_LIMIT {
        return Err(Error::CapExceeded {
            what: "DOT export point count",
            cap: DOT_POINT_LIMIT,
        });
    }
    let mut out = String::from("graph orbital {\n");
    for alpha in 0..n {
        let mut nbrs = graph.neighbors_of(alpha);
        nbrs.sort_unstable();
        for beta in nbrs.into_iter().filter(|&b| b > alpha) {
            out.push_str(&format!("  {alpha} -- {beta};\n"));
        }
    }
    out.push_str("}\n");
    Ok(out)
}
