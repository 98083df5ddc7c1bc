//! Covers built from cosets of a vertex subgroup, and lifting Ω-operations
//! to them.
//!
//! For a connected groupoid `G` and a subgroup `S` of the loops at `0`, the
//! cover has one object per coset `S∘a` (`a` in the star at `0`) and one
//! morphism `(S∘a, g)` per morphism `g` leaving `d1(a)`. Cosets are numbered
//! by their least member, so the coset `S` itself is object `0`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groupoid::{
    check_groupoid, connected_components, is_covering_morphism, star, FiniteGroupoid,
    GroupoidMorphism,
};
use crate::internal::{
    check_internal_groupoid, check_internal_morphism, vertex_omega_group, InternalGroupoid,
    InternalMorphism,
};
use crate::omega::{enumerate_subobjects, is_subobject, OmegaGroup};
use crate::report::{Report, Witness};
use crate::table::Table;

#[derive(Clone, Debug)]
pub struct ConstructedCover {
    base: FiniteGroupoid,
    subgroup: Vec<usize>,
    cosets: Vec<Vec<usize>>,
    coset_of: Vec<Option<usize>>,
    pairs: Vec<(usize, usize)>,
    pair_index: BTreeMap<(usize, usize), usize>,
    cover: FiniteGroupoid,
    projection: GroupoidMorphism,
}

impl ConstructedCover {
    pub fn base(&self) -> &FiniteGroupoid {
        &self.base
    }

    /// `S`, as morphisms of the base.
    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    /// Members of each coset, sorted; the index is the cover object.
    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    /// The cover object containing `a`, if `a` starts at `0`.
    pub fn coset_of(&self, a: usize) -> Option<usize> {
        self.coset_of[a]
    }

    /// Least member of coset `c`.
    pub fn representative(&self, c: usize) -> usize {
        self.cosets[c][0]
    }

    /// `(coset, base morphism)` for each cover morphism.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The cover morphism `(c, g)`, if `g` leaves the end of coset `c`.
    pub fn pair(&self, c: usize, g: usize) -> Option<usize> {
        self.pair_index.get(&(c, g)).copied()
    }

    pub fn cover(&self) -> &FiniteGroupoid {
        &self.cover
    }

    /// `p: (S∘a, g) ↦ g`, `S∘a ↦ d1(a)`.
    pub fn projection(&self) -> &GroupoidMorphism {
        &self.projection
    }

    /// `[vertex group : S]`.
    pub fn index(&self) -> usize {
        self.cosets.len()
    }
}

fn require(r: Report) -> Result<()> {
    if r.is_ok() {
        Ok(())
    } else {
        Err(Error::Verification(r))
    }
}

fn check_connected(g: &FiniteGroupoid) -> Report {
    let mut r = Report::new();
    let components = connected_components(g);
    if components.len() > 1 {
        let x = components[1][0];
        r.record(
            "connected",
            Witness::at(&[("x", x)]).with_note(format!("no morphism from 0 to {x}")),
        );
    }
    r
}

/// Checks that `s` is a subgroup of the loops at `0` under `∘`.
fn check_vertex_subgroup(g: &FiniteGroupoid, s: &[usize]) -> Report {
    let mut r = Report::new();
    let member = |a: usize| s.contains(&a);
    if !member(g.identity(0)) {
        r.record("subgroup.identity", Witness::at(&[("a", g.identity(0))]));
    }
    for &a in s {
        if g.d0(a) != 0 || g.d1(a) != 0 {
            r.record("subgroup.loop", Witness::at(&[("a", a)]));
            continue;
        }
        if !member(g.inverse(a)) {
            r.record("subgroup.closed.inverse", Witness::at(&[("a", a)]));
        }
        for &b in s {
            if let Some(c) = g.compose(a, b) {
                if !member(c) {
                    r.record("subgroup.closed.compose", Witness::at(&[("a", a), ("b", b)]));
                }
            }
        }
    }
    r
}

/// Builds the coset cover of a connected groupoid for a subgroup `s` of the
/// loops at `0`, and checks that the projection is a covering morphism.
pub fn construct_cover(g: &FiniteGroupoid, s: &[usize]) -> Result<ConstructedCover> {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&bad) = s.iter().find(|&&a| a >= g.n_morphisms()) {
        return Err(Error::OutOfRange {
            table: "subobject".into(),
            position: "member".into(),
            value: bad,
            bound: g.n_morphisms(),
        });
    }
    require(check_connected(g))?;
    require(check_vertex_subgroup(g, &s))?;

    let star0 = star(g, 0);
    let mut coset_of = vec![None; g.n_morphisms()];
    let mut cosets = Vec::new();
    for &a in &star0 {
        if coset_of[a].is_some() {
            continue;
        }
        let mut members: Vec<usize> = s
            .iter()
            .map(|&x| g.compose(x, a).expect("loops at 0 compose with the star at 0"))
            .collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            coset_of[m] = Some(cosets.len());
        }
        cosets.push(members);
    }
    // `star0` is increasing, so cosets are already numbered by least member.

    let mut pairs = Vec::new();
    for (c, members) in cosets.iter().enumerate() {
        let end = g.d1(members[0]);
        pairs.extend(
            (0..g.n_morphisms())
                .filter(|&h| g.d0(h) == end)
                .map(|h| (c, h)),
        );
    }
    let pair_index: BTreeMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let rep = |c: usize| cosets[c][0];
    let coset_after = |c: usize, h: usize| {
        coset_of[g.compose(rep(c), h).expect("pairs are composable")].expect("stays in the star")
    };
    let cover = FiniteGroupoid::from_fn(
        cosets.len(),
        pairs.iter().map(|&(c, _)| c).collect(),
        pairs.iter().map(|&(c, h)| coset_after(c, h)).collect(),
        (0..cosets.len())
            .map(|c| pair_index[&(c, g.identity(g.d1(rep(c))))])
            .collect(),
        pairs
            .iter()
            .map(|&(c, h)| pair_index[&(coset_after(c, h), g.inverse(h))])
            .collect(),
        |p, q| {
            let ((c, h), (_, k)) = (pairs[p], pairs[q]);
            pair_index[&(c, g.compose(h, k).expect("composable in the cover"))]
        },
    )?;
    let projection = GroupoidMorphism::new(
        cover.clone(),
        g.clone(),
        (0..cosets.len()).map(|c| g.d1(rep(c))).collect(),
        pairs.iter().map(|&(_, h)| h).collect(),
    )?;
    let mut r = Report::new();
    r.absorb("cover", check_groupoid(&cover));
    r.absorb("projection", is_covering_morphism(&projection)?);
    require(r)?;
    Ok(ConstructedCover {
        base: g.clone(),
        subgroup: s,
        cosets,
        coset_of,
        pairs,
        pair_index,
        cover,
        projection,
    })
}

/// A coset cover of an internal groupoid with the Ω-operations lifted.
#[derive(Clone, Debug)]
pub struct LiftedCover {
    pub constructed: ConstructedCover,
    pub cover: InternalGroupoid,
    pub projection: InternalMorphism,
    /// Result of checking the cover, the projection, and that the projection
    /// is a covering morphism.
    pub report: Report,
}

/// Maps morphism indices of `g` in `s` to indices of the vertex Ω-group.
fn vertex_indices(g: &InternalGroupoid, s: &[usize]) -> Result<(OmegaGroup, Vec<usize>)> {
    let (v, incl) = vertex_omega_group(g)?;
    let mut out = Vec::new();
    for &a in s {
        match incl.map().iter().position(|&x| x == a) {
            Some(k) => out.push(k),
            None => {
                let mut r = Report::new();
                r.record("subgroup.loop", Witness::at(&[("a", a)]));
                return Err(Error::Verification(r));
            }
        }
    }
    Ok((v, out))
}

/// Lifts every Ω-operation to the coset cover of `s`.
///
/// `s` must be a subobject of the vertex Ω-group at `0`; otherwise the
/// subobject report is returned as [`Error::Verification`].
pub fn lift_operations(g: &InternalGroupoid, s: &[usize]) -> Result<LiftedCover> {
    let (v, idx) = vertex_indices(g, s)?;
    require(is_subobject(&v, &idx)?)?;
    lift_operations_unchecked(g, s)
}

/// Like [`lift_operations`] but skips the subobject test, so that lifting
/// fails only when some operation is not well defined on cosets. The
/// failure report carries the offending representatives.
pub fn lift_operations_unchecked(g: &InternalGroupoid, s: &[usize]) -> Result<LiftedCover> {
    let c = construct_cover(g.groupoid(), s)?;
    let m = g.morphism_group();
    let sig = m.signature().clone();
    let n_obj = c.index();
    let n_mor = c.pairs().len();
    let mut defects = Report::new();

    // coset of an operation applied to representatives, checked over all choices
    let mut lift2 = |law: &str, op: &dyn Fn(usize, usize) -> usize| {
        Table::from_fn(n_obj, n_obj, |c1, c2| {
            let mut found: Option<(usize, usize, usize)> = None;
            for &a in &c.cosets()[c1] {
                for &b in &c.cosets()[c2] {
                    let w = [("a", a), ("b", b)];
                    let Some(k) = c.coset_of(op(a, b)) else {
                        defects.record(
                            format!("star.closed.{law}"),
                            Witness::at(&w).with_note("result does not start at 0"),
                        );
                        continue;
                    };
                    match found {
                        None => found = Some((a, b, k)),
                        Some((a0, b0, k0)) if k0 != k => defects.record(
                            format!("well_defined.{law}"),
                            Witness::at(&[("a", a0), ("b", b0), ("a'", a), ("b'", b)])
                                .with_sides(k0, k),
                        ),
                        _ => {}
                    }
                }
            }
            found.map_or(0, |f| f.2)
        })
    };
    let obj_add = lift2("+", &|a, b| m.add(a, b));
    let obj_binary: Vec<Table> = (0..sig.binary_ops().len())
        .map(|i| lift2(&sig.binary_ops()[i], &|a, b| m.binary(i, a, b)))
        .collect();
    let mut lift1 = |law: &str, op: &dyn Fn(usize) -> usize| -> Vec<usize> {
        (0..n_obj)
            .map(|c1| {
                let mut found: Option<(usize, usize)> = None;
                for &a in &c.cosets()[c1] {
                    let Some(k) = c.coset_of(op(a)) else {
                        defects.record(
                            format!("star.closed.{law}"),
                            Witness::at(&[("a", a)]).with_note("result does not start at 0"),
                        );
                        continue;
                    };
                    match found {
                        None => found = Some((a, k)),
                        Some((a0, k0)) if k0 != k => defects.record(
                            format!("well_defined.{law}"),
                            Witness::at(&[("a", a0), ("a'", a)]).with_sides(k0, k),
                        ),
                        _ => {}
                    }
                }
                found.map_or(0, |f| f.1)
            })
            .collect()
    };
    let obj_neg = lift1("-", &|a| m.neg(a));
    let obj_unary: Vec<Vec<usize>> = (0..sig.unary_ops().len())
        .map(|i| lift1(&sig.unary_ops()[i], &|a| m.unary(i, a)))
        .collect();
    require(defects)?;

    let mut defects = Report::new();
    let mut pair_or_defect = |law: &str, p: usize, q: usize, k: usize, h: usize| match c.pair(k, h)
    {
        Some(x) => x,
        None => {
            defects.record(
                format!("pair.{law}"),
                Witness::at(&[("p", p), ("q", q)]).with_note(format!(
                    "morphism {h} does not leave the end of coset {k}"
                )),
            );
            0
        }
    };
    let pairs = c.pairs();
    let mor_add = Table::from_fn(n_mor, n_mor, |p, q| {
        let ((c1, g1), (c2, g2)) = (pairs[p], pairs[q]);
        pair_or_defect("+", p, q, obj_add.get(c1, c2), m.add(g1, g2))
    });
    let mor_binary: Vec<Table> = obj_binary
        .iter()
        .enumerate()
        .map(|(i, t)| {
            Table::from_fn(n_mor, n_mor, |p, q| {
                let ((c1, g1), (c2, g2)) = (pairs[p], pairs[q]);
                pair_or_defect(&sig.binary_ops()[i], p, q, t.get(c1, c2), m.binary(i, g1, g2))
            })
        })
        .collect();
    let mor_neg: Vec<usize> = (0..n_mor)
        .map(|p| {
            let (c1, g1) = pairs[p];
            pair_or_defect("-", p, p, obj_neg[c1], m.neg(g1))
        })
        .collect();
    let mor_unary: Vec<Vec<usize>> = obj_unary
        .iter()
        .enumerate()
        .map(|(i, t)| {
            (0..n_mor)
                .map(|p| {
                    let (c1, g1) = pairs[p];
                    pair_or_defect(&sig.unary_ops()[i], p, p, t[c1], m.unary(i, g1))
                })
                .collect()
        })
        .collect();
    require(defects)?;

    let objects = OmegaGroup::from_parts(sig.clone(), obj_add, obj_neg, obj_binary, obj_unary)?;
    let morphisms = OmegaGroup::from_parts(sig, mor_add, mor_neg, mor_binary, mor_unary)?;
    let cover = InternalGroupoid::new(c.cover().clone(), morphisms, objects)?;
    let projection = InternalMorphism::new(
        cover.clone(),
        g.clone(),
        c.projection().object_map().to_vec(),
        c.projection().morphism_map().to_vec(),
    )?;
    let mut report = Report::new();
    report.absorb("cover", check_internal_groupoid(&cover));
    report.absorb("projection", check_internal_morphism(&projection)?);
    report.absorb("covering", is_covering_morphism(&projection.groupoid_morphism())?);
    Ok(LiftedCover {
        constructed: c,
        cover,
        projection,
        report,
    })
}

/// Image under the projection of the loops at the cover's object `0`.
pub fn characteristic_subobject(c: &ConstructedCover) -> Vec<usize> {
    let p = c.projection().morphism_map();
    let mut image: Vec<usize> = c.cover().vertex_group(0).iter().map(|&a| p[a]).collect();
    image.sort_unstable();
    image.dedup();
    image
}

/// One subgroup of the vertex group, and its cover.
#[derive(Clone, Debug)]
pub struct CoverClass {
    /// `S`, as morphisms of the base.
    pub subgroup: Vec<usize>,
    /// Whether `S` is a subobject of the vertex Ω-group.
    pub liftable: bool,
    pub cover: ConstructedCover,
    /// Present exactly when `liftable`.
    pub lifted: Option<LiftedCover>,
}

/// Every subgroup of the vertex group at `0` of a valid connected internal
/// groupoid, whether it is liftable, and its cover.
///
/// Subgroups come from the plain-group reduct of the vertex Ω-group and are
/// listed by size, then lexicographically; conjugate or automorphic
/// subgroups are not merged.
pub fn classify_covers(g: &InternalGroupoid) -> Result<Vec<CoverClass>> {
    require(check_internal_groupoid(g))?;
    require(check_connected(g.groupoid()))?;
    let (v, incl) = vertex_omega_group(g)?;
    let mut out = Vec::new();
    for sub in enumerate_subobjects(&v.group_reduct()) {
        let liftable = is_subobject(&v, sub.members())?.is_ok();
        let subgroup: Vec<usize> = sub.members().iter().map(|&k| incl.apply(k)).collect();
        let cover = construct_cover(g.groupoid(), &subgroup)?;
        let lifted = if liftable {
            Some(lift_operations(g, &subgroup)?)
        } else {
            None
        };
        out.push(CoverClass {
            subgroup,
            liftable,
            cover,
            lifted,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::generators::{gen_cyclic_group, gen_f4_space, gen_module, gen_one_object};

    #[test]
    fn two_fold_cover_of_c4() {
        let g = FiniteGroupoid::one_object(&gen_cyclic_group(4));
        let c = construct_cover(&g, &[0, 2]).unwrap();
        assert_eq!(c.index(), 2);
        assert_eq!(c.cover().n_morphisms(), 8);
        assert_eq!(c.cover().vertex_group(0).len(), 2);
        assert_eq!(c.cosets(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(characteristic_subobject(&c), vec![0, 2]);
    }

    #[test]
    fn universal_and_trivial_covers_of_c4() {
        let g = FiniteGroupoid::one_object(&gen_cyclic_group(4));
        let u = construct_cover(&g, &[0]).unwrap();
        assert_eq!((u.index(), u.cover().n_morphisms()), (4, 16));
        assert_eq!(characteristic_subobject(&u), vec![0]);
        let full = construct_cover(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(full.index(), 1);
        assert_eq!(full.projection().morphism_map(), &[0, 1, 2, 3]);
    }

    #[test]
    fn non_subgroup_is_rejected() {
        let g = FiniteGroupoid::one_object(&gen_cyclic_group(4));
        let err = construct_cover(&g, &[0, 1]).unwrap_err();
        match err {
            Error::Verification(r) => assert!(r.find("subgroup.closed.compose").is_some()),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn disconnected_base_is_rejected() {
        let g = FiniteGroupoid::discrete(2);
        assert!(construct_cover(&g, &[0]).is_err());
    }

    #[test]
    fn lifted_two_fold_cover_of_c4() {
        let g = gen_one_object(&gen_cyclic_group(4));
        let l = lift_operations(&g, &[0, 2]).unwrap();
        assert!(l.report.is_ok(), "{}", l.report);
        assert_eq!(l.cover.object_group().order(), 2);
        assert_eq!(l.cover.morphism_group().order(), 8);
    }

    #[test]
    fn universal_cover_of_z3_module_lifts_scalars() {
        let g = gen_one_object(&gen_module(3, 3));
        let l = lift_operations(&g, &[0]).unwrap();
        assert!(l.report.is_ok(), "{}", l.report);
        let obj = l.cover.object_group();
        assert_eq!(obj.order(), 3);
        assert_eq!(obj.signature().unary_ops().len(), 3);
    }

    #[test]
    fn f4_additive_subgroup_is_not_liftable() {
        let g = gen_one_object(&gen_f4_space());
        assert!(matches!(lift_operations(&g, &[0, 1]), Err(Error::Verification(_))));
        let err = lift_operations_unchecked(&g, &[0, 1]).unwrap_err();
        match err {
            Error::Verification(r) => {
                assert!(r.violations().iter().any(|v| v.law.starts_with("well_defined")))
            }
            e => panic!("unexpected {e}"),
        }
        let classes = classify_covers(&g).unwrap();
        assert_eq!(classes.len(), 5);
        assert_eq!(classes.iter().filter(|c| c.liftable).count(), 2);
    }

    #[test]
    fn c4_has_three_liftable_subgroups() {
        let classes = classify_covers(&gen_one_object(&gen_cyclic_group(4))).unwrap();
        assert_eq!(classes.len(), 3);
        assert!(classes.iter().all(|c| c.liftable));
    }

    #[test]
    fn trivial_groupoid_has_one_class() {
        let classes = classify_covers(&gen_one_object(&gen_cyclic_group(1))).unwrap();
        assert_eq!(classes.len(), 1);
    }
}
