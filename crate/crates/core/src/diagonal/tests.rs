use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::constructions::{make_alternating, make_psl2, Construction};
use crate::error::Error;
use crate::group::{cayley_eccentricity_elementwise, enumerate_group, ElementSet, EnumeratedGroup, Permutation};
use crate::widths::AutomorphismSet;

fn a5() -> Construction {
    make_alternating(5, 100).unwrap()
}

fn full_auts(c: &Construction) -> AutomorphismSet {
    AutomorphismSet::new(&c.group, &c.automorphisms).unwrap()
}

fn geometry<'a>(g: &'a EnumeratedGroup, k: usize, variant: Variant) -> DiagonalGeometry<'a> {
    make_geometry(g, k, variant, GeometryOptions::default()).unwrap()
}

fn element(g: &EnumeratedGroup, cycles: &str) -> u32 {
    g.index_of(&Permutation::parse_cycles(g.degree(), cycles).unwrap()).unwrap()
}

/// Oracle orbital graph: the orbit of the pair `(0, beta)` under generators
/// of the whole group, closed under swapping, as adjacency lists.
fn orbital_oracle(geom: &DiagonalGeometry<'_>, beta: usize) -> Vec<BTreeSet<usize>> {
    let g = geom.group();
    let k = geom.k();
    let mut moves: Vec<Box<dyn Fn(usize) -> usize + '_>> = Vec::new();
    for &s in g.generator_indices() {
        for i in 0..k {
            let mut t = vec![0u32; k];
            t[i] = s;
            moves.push(Box::new(move |p| geom.act_tk(p, &t)));
        }
    }
    for sigma in geom.coordinate_generators() {
        moves.push(Box::new(move |p| geom.act_perm(p, sigma)));
    }
    for m in geom.automorphisms().maps() {
        moves.push(Box::new(move |p| geom.act_aut(p, m)));
    }
    let mut seen = BTreeSet::from([(0, beta)]);
    let mut queue = VecDeque::from([(0, beta)]);
    while let Some((a, b)) = queue.pop_front() {
        for f in &moves {
            let pair = (f(a), f(b));
            if seen.insert(pair) {
                queue.push_back(pair);
            }
        }
    }
    let mut adj = vec![BTreeSet::new(); geom.size()];
    for (a, b) in seen {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    adj
}

fn oracle_diameter(adj: &[BTreeSet<usize>]) -> u32 {
    let mut worst = 0;
    for s in 0..adj.len() {
        let mut dist = vec![u32::MAX; adj.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                if dist[b] == u32::MAX {
                    dist[b] = dist[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        worst = worst.max(*dist.iter().max().unwrap());
    }
    worst
}

/// `c_i(T, t)` from an elementwise Cayley graph on `t^T` and `(t^-1)^T`.
fn inverse_width_oracle(g: &EnumeratedGroup, t: u32) -> u32 {
    let mut set = ElementSet::empty(g.order());
    for x in 0..g.order() as u32 {
        set.insert(g.conjugate(t, x));
        set.insert(g.conjugate(g.inv(t), x));
    }
    cayley_eccentricity_elementwise(g, &set).unwrap().width
}

#[test]
fn point_counts() {
    let c = a5();
    assert_eq!(geometry(&c.group, 2, Variant::Tk).size(), 60);
    assert_eq!(geometry(&c.group, 3, Variant::TkSk).size(), 3600);
    let l28 = make_psl2(8, 1000).unwrap();
    assert_eq!(geometry(&l28.group, 3, Variant::TkSk).size(), 254_016);
    let small = GeometryOptions {
        point_cap: 1000,
        ..GeometryOptions::default()
    };
    assert!(matches!(
        make_geometry(&c.group, 3, Variant::TkSk, small),
        Err(Error::CapExceeded { .. })
    ));
    assert!(make_geometry(&c.group, 1, Variant::Tk, GeometryOptions::default()).is_err());
}

#[test]
fn intransitive_coordinates_are_rejected() {
    let c = a5();
    assert!(matches!(
        make_geometry(&c.group, 3, Variant::Tk, GeometryOptions::default()),
        Err(Error::NonTransitiveCoordinates { k: 3 })
    ));
    let custom = Variant::Custom {
        automorphisms: AutomorphismSet::inner(),
        coordinates: vec![Permutation::parse_cycles(3, "(0 1)").unwrap()],
    };
    assert!(matches!(
        make_geometry(&c.group, 3, custom, GeometryOptions::default()),
        Err(Error::NonTransitiveCoordinates { .. })
    ));
    let wrong = Variant::Custom {
        automorphisms: AutomorphismSet::inner(),
        coordinates: vec![Permutation::parse_cycles(4, "(0 1 2 3)").unwrap()],
    };
    assert!(make_geometry(&c.group, 3, wrong, GeometryOptions::default()).is_err());
}

#[test]
fn action_examples() {
    let c = a5();
    let g = &c.group;
    let geom = geometry(g, 3, Variant::TkSk);
    let t = element(g, "(0 1 2)");
    let a = element(g, "(1 2 3 4 0)");
    assert_eq!(geom.act_tk(0, &[0, 0, t]), geom.unit_point(2, t));
    let p = geom.encode(&[a, t]);
    assert_eq!(geom.act_tk(p, &[0, 0, 0]), p);
    assert_eq!(geom.act_tk(0, &[a, a, a]), 0);
    // (1 1 t) with the first and last entries swapped is (t 1 1) = D(1, t^-1, t^-1)
    let swap = Permutation::parse_cycles(3, "(0 2)").unwrap();
    let ti = g.inv(t);
    assert_eq!(geom.act_perm(geom.unit_point(2, t), &swap), geom.encode(&[ti, ti]));
    assert_eq!(geom.act_perm(p, &Permutation::identity(3)), p);
    let conj: Vec<u32> = (0..g.order() as u32).map(|x| g.conjugate(x, a)).collect();
    assert_eq!(geom.act_aut(0, &conj), 0);

    let k2 = geometry(g, 2, Variant::TkSk);
    let flip = Permutation::parse_cycles(2, "(0 1)").unwrap();
    assert_eq!(k2.act_perm(k2.unit_point(1, t), &flip), k2.unit_point(1, ti));
}

#[test]
fn encoding_round_trip() {
    let c = a5();
    let geom = geometry(&c.group, 3, Variant::TkSk);
    for p in (0..geom.size()).step_by(37) {
        assert_eq!(geom.encode(&geom.decode(p)), p);
    }
}

#[test]
fn suborbit_examples() {
    let c = a5();
    let tk = geometry(&c.group, 2, Variant::Tk);
    let subs = suborbits(&tk);
    assert_eq!(subs.rank(), 5);
    let mut sizes = subs.sizes();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
    // for k = 2 the suborbits are the conjugacy classes
    for cl in c.group.classes().classes() {
        let mut members = cl.members.clone();
        members.sort_unstable();
        let id = subs.orbit_of[members[0] as usize] as usize;
        assert_eq!(subs.orbits[id], members.iter().map(|&x| x as usize).collect::<Vec<_>>());
    }

    let dkt = geometry(&c.group, 2, Variant::DkT(full_auts(&c)));
    assert_eq!(suborbits(&dkt).rank(), 4);

    let big = geometry(&c.group, 3, Variant::TkSk);
    let subs = suborbits(&big);
    assert_eq!(subs.sizes().iter().sum::<usize>(), 3600);
    assert_eq!(subs.orbits[0], vec![0]);
}

#[test]
fn orbital_graph_examples() {
    let c = a5();
    let g = &c.group;
    let geom = geometry(g, 2, Variant::Tk);
    let subs = suborbits(&geom);
    assert!(matches!(orbital_graph(&geom, &subs, 0), Err(Error::DiagonalPair)));
    let t = element(g, "(0 1 2 3 4)");
    let graph = orbital_graph(&geom, &subs, t as usize).unwrap();
    let mut expected: Vec<usize> = (0..60u32)
        .flat_map(|x| [g.conjugate(t, x), g.conjugate(g.inv(t), x)])
        .map(|x| x as usize)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    expected.sort_unstable();
    assert_eq!(graph.neighbors, expected);
    // 5-cycles are conjugate to their inverses, so the suborbit is self-paired
    assert!(!graph.merged_pair);
    assert_eq!(graph.valency(), 12);

    let big = geometry(g, 3, Variant::TkSk);
    let subs = suborbits(&big);
    for beta in orbital_representatives(&subs, &big) {
        let graph = orbital_graph(&big, &subs, beta).unwrap();
        for &s in &graph.neighbors {
            assert!(graph.neighbors.binary_search(&big.reversal(s)).is_ok());
        }
    }
}

#[test]
fn graphs_match_orbital_definition() {
    let c = a5();
    let l27 = make_psl2(7, 1000).unwrap();
    for (con, variant) in [
        (&c, Variant::Tk),
        (&c, Variant::DkT(full_auts(&c))),
        (&l27, Variant::Tk),
        (&l27, Variant::DkT(full_auts(&l27))),
    ] {
        let geom = geometry(&con.group, 2, variant);
        let subs = suborbits(&geom);
        for beta in orbital_representatives(&subs, &geom) {
            let graph = orbital_graph(&geom, &subs, beta).unwrap();
            let adj = orbital_oracle(&geom, beta);
            assert_eq!(graph.neighbors, adj[0].iter().copied().collect::<Vec<_>>());
            for alpha in (0..geom.size()).step_by(7) {
                let mut n = graph.neighbors_of(alpha);
                n.sort_unstable();
                assert_eq!(n, adj[alpha].iter().copied().collect::<Vec<_>>());
            }
            assert_eq!(graph_diameter(&graph).unwrap(), oracle_diameter(&adj));
        }
    }
}

#[test]
fn orbdiam_examples() {
    let c = a5();
    assert_eq!(orbdiam(&geometry(&c.group, 2, Variant::Tk)).unwrap().0, 3);
    let (d, records) = orbdiam(&geometry(&c.group, 2, Variant::DkT(full_auts(&c)))).unwrap();
    assert_eq!(d, 2);
    assert_eq!(records.len(), 3);
    assert!(records.iter().all(|r| r.diameter <= 2));

    let (d3, _) = orbdiam(&geometry(&c.group, 3, Variant::DkT(full_auts(&c)))).unwrap();
    assert!(d3 >= 4);
    assert_eq!(d3, 4);
}

#[test]
fn complete_graph_has_diameter_one() {
    let c3 = enumerate_group(&[Permutation::parse_cycles(3, "(0 1 2)").unwrap()], 10).unwrap();
    let geom = geometry(&c3, 2, Variant::TkSk);
    let subs = suborbits(&geom);
    let graph = orbital_graph(&geom, &subs, 1).unwrap();
    assert_eq!(graph.neighbors, vec![1, 2]);
    assert_eq!(graph_diameter(&graph).unwrap(), 1);
}

#[test]
fn k2_diameters_equal_inverse_widths() {
    for con in [a5(), make_psl2(7, 1000).unwrap(), make_alternating(6, 1000).unwrap()] {
        let g = &con.group;
        let geom = geometry(g, 2, Variant::Tk);
        let subs = suborbits(&geom);
        for cl in &g.classes().classes()[1..] {
            let t = cl.representative;
            let graph = orbital_graph(&geom, &subs, t as usize).unwrap();
            assert_eq!(graph_diameter(&graph).unwrap(), inverse_width_oracle(g, t));
        }
    }
}

#[test]
fn eccentricity_is_vertex_independent() {
    let c = a5();
    let geom = geometry(&c.group, 3, Variant::TkSk);
    let subs = suborbits(&geom);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for beta in orbital_representatives(&subs, &geom) {
        let graph = orbital_graph(&geom, &subs, beta).unwrap();
        let base = eccentricity_from(&graph, 0).unwrap();
        for _ in 0..10 {
            let v = rng.gen_range(0..geom.size());
            assert_eq!(eccentricity_from(&graph, v).unwrap(), base);
        }
    }
}

#[test]
fn intransitive_variant_is_disconnected() {
    let c = a5();
    let options = GeometryOptions {
        allow_imprimitive: true,
        ..GeometryOptions::default()
    };
    let geom = make_geometry(&c.group, 3, Variant::Tk, options).unwrap();
    let subs = suborbits(&geom);
    let t = element(&c.group, "(0 1 2)");
    let graph = gamma0(&geom, &subs, t).unwrap();
    assert!(matches!(graph_diameter(&graph), Err(Error::Disconnected { total: 3600, .. })));
    assert!(matches!(orbdiam(&geom), Err(Error::Disconnected { .. })));
}

#[test]
fn lower_bound_formula() {
    assert_eq!(lower_bound(3, 3), 4);
    assert_eq!(lower_bound(3, 2), 3);
    assert_eq!(lower_bound(2, 3), 3);
    assert_eq!(lower_bound(4, 3), 6);
    assert_eq!(lower_bound(5, 2), 5);
}

#[test]
fn certificate_examples() {
    let c = a5();
    let g = &c.group;
    let geom = geometry(g, 3, Variant::TkSk);
    let subs = suborbits(&geom);
    let t = element(g, "(0 1 2)");
    let widths = widths_for(&geom, t).unwrap();
    assert_eq!(widths.c_i, 3);
    let cert = bound_certificate(&geom, &subs, t, widths).unwrap();
    assert_eq!(cert.lower, widths.c_x + 1);
    assert_eq!(cert.upper, 6);
    assert_eq!(cert.upper_quadratic, Some(24 * 2 * 9));
    assert!(cert.lower <= cert.measured && cert.measured <= cert.upper);

    let k2 = geometry(g, 2, Variant::Tk);
    let subs2 = suborbits(&k2);
    let w = widths_for(&k2, t).unwrap();
    let cert = bound_certificate(&k2, &subs2, t, w).unwrap();
    assert_eq!((cert.lower, cert.upper, cert.upper_quadratic), (w.c_x, 3, None));

    let fake = BoundWidths { c_x: 9, c_i: 3 };
    assert!(matches!(
        bound_certificate(&geom, &subs, t, fake),
        Err(Error::BoundViolation(_))
    ));
    assert!(matches!(gamma0(&geom, &subs, 0), Err(Error::DiagonalPair)));
}

#[test]
fn sandwich_for_a5() {
    let c = a5();
    let cases = [
        (2, Variant::Tk),
        (2, Variant::TkSk),
        (2, Variant::DkT(full_auts(&c))),
        (3, Variant::TkSk),
        (3, Variant::DkT(full_auts(&c))),
    ];
    for (k, variant) in cases {
        let geom = geometry(&c.group, k, variant);
        let report = diagonal_report("A5", &geom).unwrap();
        assert_eq!(report.certificates.len(), 4);
        for cert in &report.certificates {
            assert!(cert.lower <= cert.measured && cert.measured <= cert.upper, "{cert:?}");
            assert!(cert.upper_quadratic.is_none_or(|u| cert.measured <= u));
        }
    }
}

#[test]
fn report_fields() {
    let c = a5();
    let geom = geometry(&c.group, 2, Variant::Tk);
    let report = diagonal_report("A5", &geom).unwrap();
    assert_eq!((report.k, report.omega_size, report.rank, report.orbdiam), (2, 60, 5, 3));
    assert_eq!(report.variant, "Tk");
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["T"], "A5");
    assert_eq!(json["orbitals"].as_array().unwrap().len(), 4);
}

#[test]
fn path_examples() {
    let c = a5();
    let g = &c.group;
    let geom = geometry(g, 3, Variant::TkSk);
    let subs = suborbits(&geom);
    let t = element(g, "(0 1 2)");
    let graph = gamma0(&geom, &subs, t).unwrap();
    assert!(construct_path(&graph, 0).unwrap().is_empty());
    let edge = geom.unit_point(2, t);
    assert_eq!(construct_path(&graph, edge).unwrap(), vec![edge]);

    let dist = distances_from(&graph, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let target = rng.gen_range(0..geom.size());
        let path = construct_path(&graph, target).unwrap();
        assert!(path.len() <= 6);
        assert!(path.len() as u32 >= dist[target]);
        assert_eq!(path.last().copied().unwrap_or(0), target);
        let mut prev = 0;
        for &p in &path {
            let mut n = graph.neighbors_of(prev);
            n.sort_unstable();
            assert!(n.binary_search(&p).is_ok());
            prev = p;
        }
    }
}

#[test]
fn dot_export() {
    let c = a5();
    let geom = geometry(&c.group, 2, Variant::Tk);
    let subs = suborbits(&geom);
    let t = element(&c.group, "(0 1)(2 3)");
    let graph = orbital_graph(&geom, &subs, t as usize).unwrap();
    let dot = to_dot(&graph).unwrap();
    assert!(dot.starts_with("graph orbital {"));
    assert_eq!(dot.matches("--").count(), 60 * 15 / 2);
    let big = geometry(&c.group, 4, Variant::TkSk);
    let subs = suborbits(&big);
    let graph = gamma0(&big, &subs, t).unwrap();
    assert!(matches!(to_dot(&graph), Err(Error::CapExceeded { .. })));
}

/// `T = A_7`, `k = 3`: the graph defined by `(1, 1, g)` with `c_i(T, g) = 3`
/// has a point at distance more than 4.
#[test]
fn a7_cube_distance_exceeds_four() {
    use crate::widths::{length_l, FusionSpec};
    let c = make_alternating(7, 5000).unwrap();
    let g = &c.group;
    let auts = AutomorphismSet::inner();
    let options = GeometryOptions {
        point_cap: 1 << 23,
        ..GeometryOptions::default()
    };
    let geom = make_geometry(g, 3, Variant::TkSk, options).unwrap();
    let subs = suborbits(&geom);
    let n = g.order() as u32;
    let (gen, x, y) = g.classes().classes()[1..]
        .iter()
        .map(|cl| cl.representative)
        .find_map(|s| {
            let len = |h| length_l(g, s, FusionSpec::Inverse, &auts, h).unwrap();
            let threes: Vec<u32> = (0..n).filter(|&h| len(h) == 3).collect();
            threes.iter().find_map(|&x| {
                threes
                    .iter()
                    .find(|&&y| len(g.mul(g.inv(x), y)) == 3)
                    .map(|&y| (s, x, y))
            })
        })
        .unwrap();
    let graph = gamma0(&geom, &subs, gen).unwrap();
    // D(x, 1, y) = D(1, x^-1, x^-1 y)
    let xi = g.inv(x);
    let target = geom.encode(&[xi, g.mul(xi, y)]);
    assert!(distances_from(&graph, 0)[target] > 4);
}
