//! Conjugacy widths, covering numbers, and the small combinatorial tests
//! built on class products.
//!
//! Every connection set used here is closed under conjugation, so all work
//! happens on class indices: widths come from a class-level BFS and powers
//! `C^r` from the class-product table.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{alternating_generators, AutRealization};
use crate::error::{Error, Result};
use crate::group::{
    cayley_eccentricity, class_eccentricity, enumerate_group, ElementSet, EnumeratedGroup,
};

pub const DEFAULT_CN_CAP: u32 = 64;

/// Automorphisms of a group as maps on element indices.
#[derive(Debug, Clone, Default)]
pub struct AutomorphismSet {
    maps: Vec<Vec<u32>>,
}

impl AutomorphismSet {
    pub fn inner() -> Self {
        Self::default()
    }

    pub fn new(group: &EnumeratedGroup, auts: &[AutRealization]) -> Result<Self> {
        let maps = auts
            .iter()
            .map(|a| a.element_map(group))
            .collect::<Result<Vec<_>>>()?;
        Ok(AutomorphismSet { maps })
    }

    pub fn from_maps(maps: Vec<Vec<u32>>) -> Self {
        AutomorphismSet { maps }
    }

    pub fn maps(&self) -> &[Vec<u32>] {
        &self.maps
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FusionSpec {
    /// `t^T`
    Class,
    /// `t^T` together with `(t^-1)^T`
    Inverse,
    /// `t^{±X}` for the configured automorphisms `X`
    Automorphisms,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusedClass {
    pub representative: u32,
    pub spec: FusionSpec,
    /// Class ids of the group's conjugacy partition.
    pub classes: ElementSet,
    pub members: ElementSet,
}

impl FusedClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Closure of the class of `t` under the fusion rule.
pub fn fuse_class(
    group: &EnumeratedGroup,
    t: u32,
    spec: FusionSpec,
    auts: &AutomorphismSet,
) -> Result<FusedClass> {
    if t == group.identity() {
        return Err(Error::IdentityElement);
    }
    let part = group.classes();
    let mut classes = ElementSet::empty(part.len());
    let start = part.class_of(t) as u32;
    classes.insert(start);
    let mut queue = vec![start];
    while let Some(c) = queue.pop() {
        let rep = part.class(c as usize).representative;
        let mut next = Vec::new();
        if spec != FusionSpec::Class {
            next.push(group.inv(rep));
        }
        if spec == FusionSpec::Automorphisms {
            next.extend(auts.maps.iter().map(|m| m[rep as usize]));
        }
        for x in next {
            let id = part.class_of(x) as u32;
            if classes.insert(id) {
                queue.push(id);
            }
        }
    }
    Ok(FusedClass {
        representative: t,
        spec,
        members: part.expand(&classes),
        classes,
    })
}

/// `w_C(G)`: the least `m` with every element a product of at most `m`
/// elements of `C`.
pub fn width_of(group: &EnumeratedGroup, class: &FusedClass) -> Result<u32> {
    Ok(class_eccentricity(group, &class.classes)?.width)
}

/// Least `r` with `C^r = G` for the conjugacy class with id `class_id`.
pub fn covering_number_of_class(group: &EnumeratedGroup, class_id: usize, cap: u32) -> Result<u32> {
    if class_id == 0 {
        return Err(Error::IdentityElement);
    }
    let part = group.classes();
    let prods = group.class_products();
    let single = ElementSet::from_indices(part.len(), [class_id as u32]);
    let mut power = single.clone();
    let mut r = 1;
    while !power.is_full() {
        if r >= cap {
            return Err(Error::CapExceeded {
                what: "covering number iteration",
                cap: cap as usize,
            });
        }
        power = prods.product(&power, &single);
        r += 1;
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassWidths {
    pub rep_cycles: String,
    pub rep_index: u32,
    pub size: usize,
    pub element_order: u64,
    pub c: u32,
    pub c_i: u32,
    pub c_x: u32,
    pub cn: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct WidthMaxima {
    pub c: u32,
    pub c_i: u32,
    /// Maximum of `c_x` over classes for the configured automorphisms.
    pub c_a: u32,
    pub cn: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthReport {
    pub group: String,
    pub order: usize,
    pub automorphisms: String,
    pub classes: Vec<ClassWidths>,
    pub maxima: WidthMaxima,
}

impl WidthReport {
    pub fn assemble(group: String, order: usize, automorphisms: String, classes: Vec<ClassWidths>) -> Self {
        let maxima = classes.iter().fold(WidthMaxima::default(), |m, c| WidthMaxima {
            c: m.c.max(c.c),
            c_i: m.c_i.max(c.c_i),
            c_a: m.c_a.max(c.c_x),
            cn: m.cn.max(c.cn),
        });
        WidthReport {
            group,
            order,
            automorphisms,
            classes,
            maxima,
        }
    }
}

/// All width invariants for the nontrivial class `class_id`.
pub fn class_widths(
    group: &EnumeratedGroup,
    class_id: usize,
    auts: &AutomorphismSet,
    cn_cap: u32,
) -> Result<ClassWidths> {
    let rep = group.classes().class(class_id).representative;
    let width = |spec| fuse_class(group, rep, spec, auts).and_then(|c| width_of(group, &c));
    Ok(ClassWidths {
        rep_cycles: group.element(rep).to_cycle_string(),
        rep_index: rep,
        size: group.classes().class(class_id).size(),
        element_order: group.element_order(rep),
        c: width(FusionSpec::Class)?,
        c_i: width(FusionSpec::Inverse)?,
        c_x: width(FusionSpec::Automorphisms)?,
        cn: covering_number_of_class(group, class_id, cn_cap)?,
    })
}

/// Per-class widths and group maxima, one computation per class.
pub fn group_widths(
    name: &str,
    group: &EnumeratedGroup,
    auts: &AutomorphismSet,
    selector: &str,
    cn_cap: u32,
) -> Result<WidthReport> {
    group.ensure_mul_table();
    group.class_products();
    let classes = (1..group.classes().len())
        .into_par_iter()
        .map(|id| class_widths(group, id, auts, cn_cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(WidthReport::assemble(
        name.to_string(),
        group.order(),
        selector.to_string(),
        classes,
    ))
}

/// Class ids of the involutions.
fn involution_classes(group: &EnumeratedGroup) -> ElementSet {
    let part = group.classes();
    let mut out = ElementSet::empty(part.len());
    for (id, c) in part.classes().iter().enumerate() {
        if group.element_order(c.representative) == 2 {
            out.insert(id as u32);
        }
    }
    out
}

/// Whether every element is a product of at most two involutions.
pub fn strongly_real_test(group: &EnumeratedGroup) -> bool {
    let inv = involution_classes(group);
    if inv.is_empty() {
        return group.order() == 1;
    }
    let mut reach = group.class_products().product(&inv, &inv);
    reach.union_with(&inv);
    reach.insert(0);
    reach.is_full()
}

/// Whether every even permutation of `n` points is a product of exactly
/// three `l`-cycles.
pub fn three_l_cycles_test(n: usize, l: usize) -> Result<bool> {
    if n < 5 || l.is_multiple_of(2) || l > n || l < 3 {
        return Err(Error::InvalidArgument(format!(
            "need n >= 5 and odd 3 <= l <= n, got n={n} l={l}"
        )));
    }
    let group = enumerate_group(&alternating_generators(n)?, crate::group::DEFAULT_ORDER_CAP)?;
    group.ensure_mul_table();
    let cycles = l_cycle_classes(&group, l);
    let prods = group.class_products();
    let cube = prods.product(&prods.product(&cycles, &cycles), &cycles);
    Ok(cube.is_full())
}

/// Class ids of the `l`-cycles in a group of permutations.
pub fn l_cycle_classes(group: &EnumeratedGroup, l: usize) -> ElementSet {
    let n = group.degree();
    let mut shape = vec![l];
    shape.extend(std::iter::repeat_n(1, n - l));
    let part = group.classes();
    let mut out = ElementSet::empty(part.len());
    for (id, c) in part.classes().iter().enumerate() {
        if group.element(c.representative).cycle_type() == shape {
            out.insert(id as u32);
        }
    }
    out
}

/// The first `x` in element order with `u u^x` of order greater than 2.
pub fn noncommuting_conjugate(group: &EnumeratedGroup, u: u32) -> Result<u32> {
    if group.element_order(u) != 2 {
        return Err(Error::InvalidArgument(format!(
            "{} is not an involution",
            group.element(u)
        )));
    }
    (0..group.order() as u32)
        .find(|&x| group.element_order(group.mul(u, group.conjugate(u, x))) > 2)
        .ok_or_else(|| Error::NotFound(format!("no conjugate of {} fails to commute", group.element(u))))
}

/// Length of `g` as a product of elements of `t^{±X}`.
pub fn length_l(
    group: &EnumeratedGroup,
    t: u32,
    spec: FusionSpec,
    auts: &AutomorphismSet,
    g: u32,
) -> Result<u32> {
    let class = fuse_class(group, t, spec, auts)?;
    Ok(cayley_eccentricity(group, &class.members)?.dist[g as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_alternating, make_psl2, Construction};
    use crate::group::{cayley_eccentricity_elementwise, set_product_elementwise, Permutation};
    use proptest::prelude::*;

    fn build(c: crate::Result<Construction>) -> (EnumeratedGroup, AutomorphismSet) {
        let c = c.unwrap();
        let auts = AutomorphismSet::new(&c.group, &c.automorphisms).unwrap();
        (c.group, auts)
    }

    fn element(g: &EnumeratedGroup, cycles: &str) -> u32 {
        g.index_of(&Permutation::parse_cycles(g.degree(), cycles).unwrap()).unwrap()
    }

    /// Oracle: orbit of `t` under conjugation by every element and every
    /// automorphism map, plus inverses, computed elementwise.
    fn fused_oracle(g: &EnumeratedGroup, t: u32, spec: FusionSpec, auts: &AutomorphismSet) -> ElementSet {
        let mut set = ElementSet::from_indices(g.order(), [t]);
        loop {
            let before = set.len();
            for x in set.to_vec() {
                for y in 0..g.order() as u32 {
                    set.insert(g.conjugate(x, y));
                }
                if spec != FusionSpec::Class {
                    set.insert(g.inv(x));
                }
                if spec == FusionSpec::Automorphisms {
                    for m in auts.maps() {
                        set.insert(m[x as usize]);
                    }
                }
            }
            if set.len() == before {
                return set;
            }
        }
    }

    /// Oracle: least r with C^r = G by elementwise products.
    fn cn_oracle(g: &EnumeratedGroup, class: &ElementSet) -> u32 {
        let mut power = class.clone();
        let mut r = 1;
        while !power.is_full() {
            power = set_product_elementwise(g, &power, class);
            r += 1;
            assert!(r < 20);
        }
        r
    }

    #[test]
    fn fuse_examples_a5() {
        let (g, auts) = build(make_alternating(5, 100));
        let t = element(&g, "(0 1 2 3 4)");
        assert_eq!(fuse_class(&g, t, FusionSpec::Class, &auts).unwrap().size(), 12);
        assert_eq!(fuse_class(&g, t, FusionSpec::Automorphisms, &auts).unwrap().size(), 24);
        let u = element(&g, "(0 1)(2 3)");
        assert_eq!(
            fuse_class(&g, u, FusionSpec::Inverse, &auts).unwrap().members,
            fuse_class(&g, u, FusionSpec::Class, &auts).unwrap().members
        );
        assert_eq!(fuse_class(&g, 0, FusionSpec::Class, &auts), Err(Error::IdentityElement));
    }

    #[test]
    fn fused_classes_match_oracle() {
        for c in [make_alternating(5, 100), make_alternating(6, 1000), make_psl2(7, 1000), make_psl2(8, 1000)] {
            let (g, auts) = build(c);
            for cl in g.classes().classes().iter().skip(1) {
                for spec in [FusionSpec::Class, FusionSpec::Inverse, FusionSpec::Automorphisms] {
                    let fused = fuse_class(&g, cl.representative, spec, &auts).unwrap();
                    assert_eq!(fused.members, fused_oracle(&g, cl.representative, spec, &auts));
                    assert!(!fused.members.contains(0));
                }
            }
        }
    }

    #[test]
    fn width_examples_a5() {
        let (g, auts) = build(make_alternating(5, 100));
        let t = element(&g, "(0 1 2 3 4)");
        let c = fuse_class(&g, t, FusionSpec::Class, &auts).unwrap();
        assert_eq!(width_of(&g, &c).unwrap(), 3);
        assert_eq!(cayley_eccentricity_elementwise(&g, &c.members).unwrap().width, 3);
        let max_a = g.classes().classes()[1..]
            .iter()
            .map(|cl| {
                let f = fuse_class(&g, cl.representative, FusionSpec::Automorphisms, &auts).unwrap();
                width_of(&g, &f).unwrap()
            })
            .max()
            .unwrap();
        assert_eq!(max_a, 2);
    }

    #[test]
    fn covering_numbers_match_oracle() {
        for c in [make_alternating(5, 100), make_alternating(6, 1000), make_psl2(7, 1000)] {
            let (g, _) = build(c);
            let part = g.classes();
            for id in 1..part.len() {
                let members = ElementSet::from_indices(g.order(), part.class(id).members.iter().copied());
                assert_eq!(covering_number_of_class(&g, id, 64).unwrap(), cn_oracle(&g, &members));
            }
            assert_eq!(covering_number_of_class(&g, 0, 64), Err(Error::IdentityElement));
        }
    }

    #[test]
    fn covering_cap_is_reported() {
        let (g, _) = build(make_alternating(8, 100_000));
        assert!(matches!(
            covering_number_of_class(&g, 1, 2),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn a7_report() {
        let (g, auts) = build(make_alternating(7, 10_000));
        let r = group_widths("A7", &g, &auts, "aut", 64).unwrap();
        assert_eq!(r.maxima, WidthMaxima { c: 3, c_i: 3, c_a: 3, cn: 3 });
        assert_eq!(r.classes.len(), g.classes().len() - 1);
    }

    #[test]
    fn chain_inequality_holds() {
        for c in [make_alternating(5, 100), make_alternating(6, 1000), make_psl2(7, 1000),
                  make_psl2(9, 1000), make_psl2(8, 1000), make_psl2(11, 10_000)] {
            let (g, auts) = build(c);
            let r = group_widths("g", &g, &auts, "aut", 64).unwrap();
            for cl in &r.classes {
                assert!(cl.c_x <= cl.c_i && cl.c_i <= cl.c && cl.c <= cl.cn, "{cl:?}");
            }
            let m = r.maxima;
            assert!(m.c_a <= m.c_i && m.c_i <= m.c && m.c <= m.cn);
        }
    }

    #[test]
    fn strongly_real_examples() {
        let (a5, _) = build(make_alternating(5, 100));
        let (l27, _) = build(make_psl2(7, 1000));
        let (a7, _) = build(make_alternating(7, 10_000));
        assert!(strongly_real_test(&a5));
        assert!(!strongly_real_test(&l27));
        assert!(!strongly_real_test(&a7));
    }

    #[test]
    fn strongly_real_iff_involution_distance_two() {
        for c in [make_alternating(5, 100), make_alternating(6, 1000), make_psl2(7, 1000), make_psl2(8, 1000)] {
            let (g, _) = build(c);
            let inv: ElementSet = ElementSet::from_indices(
                g.order(),
                (0..g.order() as u32).filter(|&x| g.element_order(x) == 2),
            );
            let ecc = cayley_eccentricity_elementwise(&g, &inv).unwrap();
            assert_eq!(strongly_real_test(&g), ecc.width <= 2);
        }
    }

    #[test]
    fn three_l_cycles_examples() {
        assert!(three_l_cycles_test(7, 3).unwrap());
        assert!(!three_l_cycles_test(9, 3).unwrap());
        assert!(three_l_cycles_test(6, 5).unwrap());
        assert!(three_l_cycles_test(4, 3).is_err());
        assert!(three_l_cycles_test(7, 4).is_err());
    }

    #[test]
    fn three_l_cycles_match_elementwise_products() {
        for (n, l) in [(5, 3), (5, 5), (6, 3), (6, 5)] {
            let g = enumerate_group(&alternating_generators(n).unwrap(), 1000).unwrap();
            let shape: Vec<usize> = std::iter::once(l).chain(std::iter::repeat_n(1, n - l)).collect();
            let cycles = ElementSet::from_indices(
                g.order(),
                (0..g.order() as u32).filter(|&x| g.element(x).cycle_type() == shape),
            );
            let cube = set_product_elementwise(&g, &set_product_elementwise(&g, &cycles, &cycles), &cycles);
            assert_eq!(three_l_cycles_test(n, l).unwrap(), cube.is_full(), "n={n} l={l}");
        }
    }

    #[test]
    fn noncommuting_conjugate_examples() {
        let (g, _) = build(make_alternating(5, 100));
        let u = element(&g, "(0 1)(2 3)");
        let x = noncommuting_conjugate(&g, u).unwrap();
        let o = g.element_order(g.mul(u, g.conjugate(u, x)));
        assert!(o == 3 || o == 5);
        // linear-scan oracle: every earlier x commutes up to order 2
        for y in 0..x {
            assert!(g.element_order(g.mul(u, g.conjugate(u, y))) <= 2);
        }
        let (a8, _) = build(make_alternating(8, 100_000));
        for cl in a8.classes().classes() {
            if a8.element_order(cl.representative) == 2 {
                assert!(noncommuting_conjugate(&a8, cl.representative).is_ok());
            }
        }
        let v4 = enumerate_group(
            &[Permutation::parse_cycles(4, "(0 1)(2 3)").unwrap(), Permutation::parse_cycles(4, "(0 2)(1 3)").unwrap()],
            10,
        )
        .unwrap();
        assert!(matches!(noncommuting_conjugate(&v4, 1), Err(Error::NotFound(_))));
        assert!(noncommuting_conjugate(&g, 0).is_err());
    }

    #[test]
    fn length_examples() {
        let (g, auts) = build(make_alternating(5, 100));
        let t = element(&g, "(0 1 2)");
        let spec = FusionSpec::Automorphisms;
        assert_eq!(length_l(&g, t, spec, &auts, 0).unwrap(), 0);
        assert_eq!(length_l(&g, t, spec, &auts, t).unwrap(), 1);
        let target = element(&g, "(0 1 2 3 4)");
        let l = length_l(&g, t, spec, &auts, target).unwrap();
        assert!(l == 1 || l == 2);
        let f = fuse_class(&g, t, spec, &auts).unwrap();
        assert_eq!(l, cayley_eccentricity_elementwise(&g, &f.members).unwrap().dist[target as usize]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn inverse_spec_never_wider(ci in 1usize..7) {
            let (g, auts) = build(make_psl2(7, 1000));
            let id = ci % g.classes().len();
            prop_assume!(id != 0);
            let rep = g.classes().class(id).representative;
            let plain = width_of(&g, &fuse_class(&g, rep, FusionSpec::Class, &auts).unwrap()).unwrap();
            let pm = width_of(&g, &fuse_class(&g, rep, FusionSpec::Inverse, &auts).unwrap()).unwrap();
            let cn = covering_number_of_class(&g, id, 64).unwrap();
            prop_assert!(pm <= plain && plain <= cn);
        }

        #[test]
        fn length_triangle_inequality(t in 1u32..60, a in 0u32..60, b in 0u32..60) {
            let (g, auts) = build(make_alternating(5, 100));
            let f = fuse_class(&g, t, FusionSpec::Automorphisms, &auts).unwrap();
            let d = cayley_eccentricity(&g, &f.members).unwrap().dist;
            // l(a) <= l(a b) + l(b^-1)
            prop_assert!(d[a as usize] <= d[g.mul(a, b) as usize] + d[g.inv(b) as usize]);
        }
    }
}
