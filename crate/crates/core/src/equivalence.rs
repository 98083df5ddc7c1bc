//! Passing between internal groupoids and crossed modules.
//!
//! [`delta`] keeps the morphisms starting at `0` and the object group;
//! [`eta`] rebuilds a groupoid on the semidirect product. The two round trips
//! come with explicit isomorphisms ([`iso_delta_eta`], [`iso_eta_delta`]),
//! and both constructions carry covers to covers.

use crate::actions::{pair_index, semidirect, ActionFamily};
use crate::error::{Error, Result};
use crate::groupoid::{is_covering_morphism, FiniteGroupoid};
use crate::internal::{
    check_internal_groupoid, check_internal_morphism, kernel_of_source, InternalGroupoid,
    InternalMorphism,
};
use crate::omega::OmegaMorphism;
use crate::report::{Report, Witness};
use crate::table::Table;
use crate::xmod::{check_crossed_module, check_xmod_morphism, is_cover, CrossedModule, XModMorphism};

/// An isomorphism together with its inverse and the report from checking both.
#[derive(Clone, Debug)]
pub struct IsoWitness<M> {
    pub forward: M,
    pub backward: M,
    pub report: Report,
}

impl<M> IsoWitness<M> {
    pub fn is_ok(&self) -> bool {
        self.report.is_ok()
    }
}

fn reject_invalid(r: Report) -> Result<()> {
    if r.is_ok() {
        Ok(())
    } else {
        Err(Error::Verification(r))
    }
}

fn positions(members: &[usize], n: usize) -> Vec<Option<usize>> {
    let mut index = vec![None; n];
    for (k, &x) in members.iter().enumerate() {
        index[x] = Some(k);
    }
    index
}

/// The crossed module of a valid internal groupoid.
///
/// `A = Ker d0`, `B` is the object group, the boundary is `d1` restricted to
/// `A`, and `B` acts through identities:
///
/// ```text
/// b · a = ε(b) + a - ε(b)      b ⋆ a = ε(b) ⋆ a      a ⋆ b = a ⋆ ε(b)
/// ```
pub fn delta(g: &InternalGroupoid) -> Result<CrossedModule> {
    reject_invalid(check_internal_groupoid(g))?;
    build_delta(g)
}

fn build_delta(g: &InternalGroupoid) -> Result<CrossedModule> {
    let (a_grp, incl) = kernel_of_source(g)?;
    let gpd = g.groupoid();
    let m = g.morphism_group();
    let b_grp = g.object_group().clone();
    let index = positions(incl.map(), m.order());
    let mut defects = Report::new();
    let mut pull = |law: &str, b: usize, a: usize, v: usize| match index[v] {
        Some(k) => k,
        None => {
            defects.record(
                format!("kernel.closed.{law}"),
                Witness::at(&[("b", b), ("a", a)]).with_note(format!("{v} does not start at 0")),
            );
            0
        }
    };
    let (nb, na) = (b_grp.order(), a_grp.order());
    let eps = |b: usize| gpd.identity(b);
    let dot = Table::from_fn(nb, na, |b, a| pull("dot", b, a, m.conj(eps(b), incl.apply(a))));
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (op, name) in m.signature().binary_ops().iter().enumerate() {
        left.push(Table::from_fn(nb, na, |b, a| {
            pull(name, b, a, m.binary(op, eps(b), incl.apply(a)))
        }));
        right.push(Table::from_fn(na, nb, |a, b| {
            pull(name, b, a, m.binary(op, incl.apply(a), eps(b)))
        }));
    }
    reject_invalid(defects)?;
    let boundary = OmegaMorphism::new(
        a_grp.clone(),
        b_grp.clone(),
        incl.map().iter().map(|&x| gpd.d1(x)).collect(),
    )?;
    CrossedModule::new(boundary, ActionFamily::new(b_grp, a_grp, dot, left, right)?)
}

/// The internal groupoid of a valid crossed module.
///
/// Morphisms are pairs `(b, a)` of `B ⋉ A`, stored at `b·|A| + a`, and
///
/// ```text
/// d0(b, a) = b        d1(b, a) = α(a) + b        ε(b) = (b, 0)
/// (b, a) ∘ (α(a) + b, a1) = (b, a1 + a)
/// ```
pub fn eta(x: &CrossedModule) -> Result<InternalGroupoid> {
    reject_invalid(check_crossed_module(x)?)?;
    Ok(build_eta(x))
}

fn build_eta(x: &CrossedModule) -> InternalGroupoid {
    let (a_grp, b_grp) = (x.kernel(), x.base());
    let alpha = x.boundary();
    let (nb, na) = (b_grp.order(), a_grp.order());
    let n = nb * na;
    let split = |p: usize| (p / na, p % na);
    let target = |p: usize| {
        let (b, a) = split(p);
        b_grp.add(alpha.apply(a), b)
    };
    let gpd = FiniteGroupoid::from_fn(
        nb,
        (0..n).map(|p| p / na).collect(),
        (0..n).map(target).collect(),
        (0..nb).map(|b| pair_index(na, b, 0)).collect(),
        (0..n)
            .map(|p| pair_index(na, target(p), a_grp.neg(p % na)))
            .collect(),
        |p, q| pair_index(na, p / na, a_grp.add(q % na, p % na)),
    )
    .expect("semidirect groupoid tables are well-shaped");
    InternalGroupoid::new(gpd, semidirect(x.action()), b_grp.clone())
        .expect("semidirect groupoid has matching groups")
}

/// `X ≅ δ(η(X))` by `a ↦ (0, a)` on kernels and the identity on bases.
pub fn iso_delta_eta(x: &CrossedModule) -> Result<IsoWitness<XModMorphism>> {
    let eta_x = eta(x)?;
    let dx = build_delta(&eta_x)?;
    let na = x.kernel().order();
    let (_, incl) = kernel_of_source(&eta_x)?;
    let index = positions(incl.map(), eta_x.morphism_group().order());
    let on_kernel: Vec<usize> = (0..na)
        .map(|a| index[pair_index(na, 0, a)].expect("(0, a) starts at 0"))
        .collect();
    let mut back = vec![0; na];
    for (a, &k) in on_kernel.iter().enumerate() {
        back[k] = a;
    }
    let on_base: Vec<usize> = x.base().elements().collect();
    let forward = XModMorphism::new(x.clone(), dx.clone(), on_kernel, on_base.clone())?;
    let backward = XModMorphism::new(dx, x.clone(), back, on_base)?;
    let mut report = Report::new();
    report.absorb("forward", check_xmod_morphism(&forward)?);
    report.absorb("backward", check_xmod_morphism(&backward)?);
    let there_and_back = forward.then(&backward)?;
    let back_and_there = backward.then(&forward)?;
    for a in x.kernel().elements() {
        report.expect_eq("inverse.kernel", &[("a", a)], there_and_back.on_kernel()[a], a);
        report.expect_eq("inverse.kernel.dual", &[("a", a)], back_and_there.on_kernel()[a], a);
    }
    Ok(IsoWitness {
        forward,
        backward,
        report,
    })
}

/// `G ≅ η(δ(G))` by `g ↦ (d0(g), g - ε d0(g))` on morphisms and the identity
/// on objects.
pub fn iso_eta_delta(g: &InternalGroupoid) -> Result<IsoWitness<InternalMorphism>> {
    let dg = delta(g)?;
    let edg = build_eta(&dg);
    let gpd = g.groupoid();
    let m = g.morphism_group();
    let (_, incl) = kernel_of_source(g)?;
    let index = positions(incl.map(), m.order());
    let na = dg.kernel().order();
    let morphism_map: Vec<usize> = (0..m.order())
        .map(|a| {
            let x = gpd.d0(a);
            let k = index[m.sub(a, gpd.identity(x))].expect("g - ε d0(g) starts at 0");
            pair_index(na, x, k)
        })
        .collect();
    let mut back = vec![0; morphism_map.len()];
    for (a, &p) in morphism_map.iter().enumerate() {
        back[p] = a;
    }
    let objects: Vec<usize> = (0..gpd.n_objects()).collect();
    let forward = InternalMorphism::new(g.clone(), edg.clone(), objects.clone(), morphism_map)?;
    let backward = InternalMorphism::new(edg, g.clone(), objects, back)?;
    let mut report = Report::new();
    report.absorb("forward", check_internal_morphism(&forward)?);
    report.absorb("backward", check_internal_morphism(&backward)?);
    let there_and_back = forward.then(&backward)?;
    let back_and_there = backward.then(&forward)?;
    for a in 0..m.order() {
        report.expect_eq("inverse.morphisms", &[("a", a)], there_and_back.morphism_map()[a], a);
        report.expect_eq(
            "inverse.morphisms.dual",
            &[("a", a)],
            back_and_there.morphism_map()[a],
            a,
        );
    }
    Ok(IsoWitness {
        forward,
        backward,
        report,
    })
}

/// The crossed-module morphism of a covering morphism of internal groupoids,
/// with the report from checking it and that it is a cover.
///
/// Rejects `f` unless it is an internal morphism and a covering morphism.
pub fn delta_on_covering(f: &InternalMorphism) -> Result<(XModMorphism, Report)> {
    reject_invalid(check_internal_morphism(f)?)?;
    reject_invalid(is_covering_morphism(&f.groupoid_morphism())?)?;
    let (src, dst) = (delta(f.source())?, delta(f.target())?);
    let (_, src_incl) = kernel_of_source(f.source())?;
    let (_, dst_incl) = kernel_of_source(f.target())?;
    let index = positions(dst_incl.map(), f.target().morphism_group().order());
    let on_kernel = src_incl
        .map()
        .iter()
        .map(|&a| index[f.morphism_map()[a]].expect("covering morphisms fix 0"))
        .collect();
    let m = XModMorphism::new(src, dst, on_kernel, f.object_map().to_vec())?;
    let mut report = check_xmod_morphism(&m)?;
    if report.is_ok() {
        report.absorb("cover", is_cover(&m)?);
    }
    Ok((m, report))
}

/// The covering morphism `η(X) -> η(X')`, `(b, a) ↦ (f2(b), f1(a))`, of a
/// cover of crossed modules, with the report from checking it.
pub fn eta_on_cover(m: &XModMorphism) -> Result<(InternalMorphism, Report)> {
    reject_invalid(is_cover(m)?)?;
    let (src, dst) = (eta(m.source())?, eta(m.target())?);
    let na = m.source().kernel().order();
    let na2 = m.target().kernel().order();
    let morphism_map = (0..src.morphism_group().order())
        .map(|p| pair_index(na2, m.on_base()[p / na], m.on_kernel()[p % na]))
        .collect();
    let f = InternalMorphism::new(src, dst, m.on_base().to_vec(), morphism_map)?;
    let mut report = check_internal_morphism(&f)?;
    if report.is_ok() {
        report.absorb("covering", is_covering_morphism(&f.groupoid_morphism())?);
    }
    Ok((f, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::generators::{gen_cyclic_group, gen_one_object, gen_pair_groupoid};

    fn inversion_xmod() -> CrossedModule {
        let (z2, z3) = (gen_cyclic_group(2), gen_cyclic_group(3));
        let act = ActionFamily::new(
            z2.clone(),
            z3.clone(),
            Table::from_fn(2, 3, |b, a| if b == 1 { (3 - a) % 3 } else { a }),
            vec![],
            vec![],
        )
        .unwrap();
        CrossedModule::new(OmegaMorphism::zero(&z3, &z2), act).unwrap()
    }

    #[test]
    fn eta_of_inversion_has_two_vertex_groups() {
        let g = eta(&inversion_xmod()).unwrap();
        let gpd = g.groupoid();
        assert_eq!((gpd.n_objects(), gpd.n_morphisms()), (2, 6));
        assert_eq!(gpd.d0_table(), gpd.d1_table());
        assert_eq!(gpd.vertex_group(1).len(), 3);
    }

    #[test]
    fn delta_of_one_object_c4() {
        let x = delta(&gen_one_object(&gen_cyclic_group(4))).unwrap();
        assert_eq!((x.kernel().order(), x.base().order()), (4, 1));
        assert_eq!(x.boundary().map(), &[0; 4]);
        assert!(check_crossed_module(&x).unwrap().is_ok());
    }

    #[test]
    fn delta_of_pair_groupoid_has_bijective_boundary() {
        let x = delta(&gen_pair_groupoid(&gen_cyclic_group(2))).unwrap();
        assert_eq!(x.kernel().order(), 2);
        assert!(x.boundary().is_bijective());
    }

    #[test]
    fn round_trips() {
        let x = inversion_xmod();
        let w = iso_delta_eta(&x).unwrap();
        assert!(w.is_ok(), "{}", w.report);
        let g = gen_pair_groupoid(&gen_cyclic_group(3));
        let w = iso_eta_delta(&g).unwrap();
        assert!(w.is_ok(), "{}", w.report);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let s3 = gen_one_object(&crate::io::generators::gen_dihedral(3));
        assert!(matches!(delta(&s3), Err(Error::Verification(_))));
    }

    #[test]
    fn identity_cover_round_trip() {
        let g = gen_one_object(&gen_cyclic_group(4));
        let (m, r) = delta_on_covering(&InternalMorphism::identity(&g)).unwrap();
        assert!(r.is_ok());
        assert_eq!(m.on_kernel(), &[0, 1, 2, 3]);
        let (f, r) = eta_on_cover(&m).unwrap();
        assert!(r.is_ok());
        assert_eq!(f.morphism_map(), &[0, 1, 2, 3]);
    }
}
