//! Crossed modules, their morphisms, and covers.

use crate::actions::{verify_derived_action, ActionFamily};
use crate::error::{check_len, check_range, Error, Result};
use crate::omega::{check_morphism, OmegaGroup, OmegaMorphism, Subobject};
use crate::report::{Report, Witness};
use crate::table::Table;

/// A boundary `alpha: A -> B` together with an action of `B` on `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    boundary: OmegaMorphism,
    action: ActionFamily,
}

impl CrossedModule {
    pub fn new(boundary: OmegaMorphism, action: ActionFamily) -> Result<Self> {
        if action.actor() != boundary.target() {
            return Err(Error::malformed("the acting group must be the boundary's target"));
        }
        if action.acted() != boundary.source() {
            return Err(Error::malformed("the acted-on group must be the boundary's source"));
        }
        Ok(CrossedModule { boundary, action })
    }

    /// `A`
    pub fn kernel(&self) -> &OmegaGroup {
        self.boundary.source()
    }

    /// `B`
    pub fn base(&self) -> &OmegaGroup {
        self.boundary.target()
    }

    pub fn boundary(&self) -> &OmegaMorphism {
        &self.boundary
    }

    pub fn action(&self) -> &ActionFamily {
        &self.action
    }

    /// Trivial crossed module over a signature: both groups have one element.
    pub fn trivial(signature: &crate::omega::Signature) -> Self {
        let t = OmegaGroup::trivial(signature);
        CrossedModule {
            boundary: OmegaMorphism::identity(&t),
            action: ActionFamily::trivial(&t, &t).expect("trivial shapes"),
        }
    }

    /// The inclusion of an ideal `I` of `G`, with `G` acting by conjugation
    /// and by its own operations. `I` is re-indexed as in [`Subobject::to_group`].
    pub fn ideal_inclusion(g: &OmegaGroup, ideal: &[usize]) -> Result<Self> {
        let (i, incl) = Subobject::new(g, ideal)?.to_group();
        let mut index = vec![None; g.order()];
        for (k, &x) in incl.map().iter().enumerate() {
            index[x] = Some(k);
        }
        let mut escapes = Report::new();
        let mut pull = |law: &str, w: &[(&str, usize)], v: usize| match index[v] {
            Some(k) => k,
            None => {
                escapes.record(law, Witness::at(w).with_note(format!("{v} leaves the ideal")));
                0
            }
        };
        let (nb, na) = (g.order(), i.order());
        let dot = Table::from_fn(nb, na, |b, a| {
            pull("dot", &[("b", b), ("a", a)], g.conj(b, incl.apply(a)))
        });
        let mut left = Vec::new();
        let mut right = Vec::new();
        for op in 0..g.signature().binary_ops().len() {
            left.push(Table::from_fn(nb, na, |b, a| {
                pull("left", &[("b", b), ("a", a)], g.binary(op, b, incl.apply(a)))
            }));
            right.push(Table::from_fn(na, nb, |a, b| {
                pull("right", &[("a", a), ("b", b)], g.binary(op, incl.apply(a), b))
            }));
        }
        if !escapes.is_ok() {
            return Err(Error::Verification(escapes));
        }
        let action = ActionFamily::new(g.clone(), i, dot, left, right)?;
        CrossedModule::new(incl, action)
    }
}

/// Checks that the action is a derived action, the boundary is a morphism,
/// and CM1 to CM4.
///
/// ```text
/// CM1  alpha(b · a)  = b + alpha(a) - b
/// CM2  alpha(a) · a' = a + a' - a
/// CM3  alpha(a) ⋆ a' = a ⋆ a'
/// CM4  alpha(b ⋆ a)  = b ⋆ alpha(a),  alpha(a ⋆ b) = alpha(a) ⋆ b
/// ```
pub fn check_crossed_module(x: &CrossedModule) -> Result<Report> {
    let (a_grp, b_grp) = (x.kernel(), x.base());
    a_grp
        .signature()
        .ensure_compatible(b_grp.signature(), "crossed module groups")?;
    let alpha = x.boundary();
    let act = x.action();
    let mut r = Report::new();
    r.absorb("action", verify_derived_action(act));
    r.absorb("boundary", check_morphism(alpha)?);

    for b in b_grp.elements() {
        for a in a_grp.elements() {
            r.expect_eq(
                "CM1",
                &[("b", b), ("a", a)],
                alpha.apply(act.dot(b, a)),
                b_grp.conj(b, alpha.apply(a)),
            );
        }
    }
    for a in a_grp.elements() {
        for a2 in a_grp.elements() {
            r.expect_eq(
                "CM2",
                &[("a", a), ("a'", a2)],
                act.dot(alpha.apply(a), a2),
                a_grp.conj(a, a2),
            );
        }
    }
    for (op, name) in a_grp.signature().binary_ops().iter().enumerate() {
        let cm3 = format!("CM3.{name}");
        let cm3_dual = format!("CM3.{name}.dual");
        for a in a_grp.elements() {
            for a2 in a_grp.elements() {
                r.expect_eq(
                    &cm3,
                    &[("a", a), ("a'", a2)],
                    act.left(op, alpha.apply(a), a2),
                    a_grp.binary(op, a, a2),
                );
                // a' ⋆ alpha(a) = a' ⋆ a, the same law for the dual operation
                r.expect_eq(
                    &cm3_dual,
                    &[("a", a), ("a'", a2)],
                    act.right(op, a2, alpha.apply(a)),
                    a_grp.binary(op, a2, a),
                );
            }
        }
        let cm4_left = format!("CM4.{name}.left");
        let cm4_right = format!("CM4.{name}.right");
        for b in b_grp.elements() {
            for a in a_grp.elements() {
                r.expect_eq(
                    &cm4_left,
                    &[("b", b), ("a", a)],
                    alpha.apply(act.left(op, b, a)),
                    b_grp.binary(op, b, alpha.apply(a)),
                );
                r.expect_eq(
                    &cm4_right,
                    &[("a", a), ("b", b)],
                    alpha.apply(act.right(op, a, b)),
                    b_grp.binary(op, alpha.apply(a), b),
                );
            }
        }
    }
    Ok(r)
}

/// A pair of maps `on_kernel: A -> A'` and `on_base: B -> B'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModMorphism {
    source: CrossedModule,
    target: CrossedModule,
    on_kernel: Vec<usize>,
    on_base: Vec<usize>,
}

impl XModMorphism {
    pub fn new(
        source: CrossedModule,
        target: CrossedModule,
        on_kernel: Vec<usize>,
        on_base: Vec<usize>,
    ) -> Result<Self> {
        check_len("on_kernel", source.kernel().order(), on_kernel.len())?;
        check_range("on_kernel", &on_kernel, target.kernel().order())?;
        check_len("on_base", source.base().order(), on_base.len())?;
        check_range("on_base", &on_base, target.base().order())?;
        Ok(XModMorphism {
            source,
            target,
            on_kernel,
            on_base,
        })
    }

    pub fn identity(x: &CrossedModule) -> Self {
        XModMorphism {
            source: x.clone(),
            target: x.clone(),
            on_kernel: x.kernel().elements().collect(),
            on_base: x.base().elements().collect(),
        }
    }

    pub fn source(&self) -> &CrossedModule {
        &self.source
    }

    pub fn target(&self) -> &CrossedModule {
        &self.target
    }

    pub fn on_kernel(&self) -> &[usize] {
        &self.on_kernel
    }

    pub fn on_base(&self) -> &[usize] {
        &self.on_base
    }

    pub fn kernel_map(&self) -> OmegaMorphism {
        OmegaMorphism::new(
            self.source.kernel().clone(),
            self.target.kernel().clone(),
            self.on_kernel.clone(),
        )
        .expect("shapes checked at construction")
    }

    pub fn base_map(&self) -> OmegaMorphism {
        OmegaMorphism::new(
            self.source.base().clone(),
            self.target.base().clone(),
            self.on_base.clone(),
        )
        .expect("shapes checked at construction")
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &XModMorphism) -> Result<XModMorphism> {
        XModMorphism::new(
            self.source.clone(),
            other.target.clone(),
            self.on_kernel.iter().map(|&a| other.on_kernel[a]).collect(),
            self.on_base.iter().map(|&b| other.on_base[b]).collect(),
        )
    }
}

/// Checks that both maps are Ω-morphisms, that they commute with the
/// boundaries, and that they respect every action.
pub fn check_xmod_morphism(m: &XModMorphism) -> Result<Report> {
    let (f1, f2) = (m.kernel_map(), m.base_map());
    let (src, dst) = (m.source(), m.target());
    let mut r = Report::new();
    r.absorb("on_kernel", check_morphism(&f1)?);
    r.absorb("on_base", check_morphism(&f2)?);
    for a in src.kernel().elements() {
        r.expect_eq(
            "boundary",
            &[("a", a)],
            f2.apply(src.boundary().apply(a)),
            dst.boundary().apply(f1.apply(a)),
        );
    }
    let (sa, da) = (src.action(), dst.action());
    for b in src.base().elements() {
        for a in src.kernel().elements() {
            let (fa, fb) = (f1.apply(a), f2.apply(b));
            let w = [("b", b), ("a", a)];
            r.expect_eq("dot", &w, f1.apply(sa.dot(b, a)), da.dot(fb, fa));
            for (op, name) in src.kernel().signature().binary_ops().iter().enumerate() {
                r.expect_eq(
                    &format!("{name}.left"),
                    &w,
                    f1.apply(sa.left(op, b, a)),
                    da.left(op, fb, fa),
                );
                r.expect_eq(
                    &format!("{name}.right"),
                    &w,
                    f1.apply(sa.right(op, a, b)),
                    da.right(op, fa, fb),
                );
            }
        }
    }
    Ok(r)
}

/// A valid morphism is a cover when its kernel map is bijective.
pub fn is_cover(m: &XModMorphism) -> Result<Report> {
    let base = check_xmod_morphism(m)?;
    if !base.is_ok() {
        return Err(Error::Verification(base));
    }
    let mut r = Report::new();
    if !m.kernel_map().is_bijective() {
        let f1 = m.kernel_map();
        let mut seen = vec![None; m.target().kernel().order()];
        for a in m.source().kernel().elements() {
            if let Some(prev) = seen[f1.apply(a)].replace(a) {
                r.record("kernel.injective", Witness::at(&[("a", prev), ("a'", a)]));
            }
        }
        for (a2, s) in seen.iter().enumerate() {
            if s.is_none() {
                r.record("kernel.surjective", Witness::at(&[("missing", a2)]));
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::generators::{gen_cyclic_group, gen_cyclic_ring, gen_dihedral};

    fn z3_z2(inverting: bool) -> CrossedModule {
        let (z2, z3) = (gen_cyclic_group(2), gen_cyclic_group(3));
        let act = ActionFamily::new(
            z2.clone(),
            z3.clone(),
            Table::from_fn(2, 3, |b, a| if b == 1 && inverting { (3 - a) % 3 } else { a }),
            vec![],
            vec![],
        )
        .unwrap();
        CrossedModule::new(OmegaMorphism::zero(&z3, &z2), act).unwrap()
    }

    #[test]
    fn z3_z2_inversion_is_valid() {
        assert!(check_crossed_module(&z3_z2(true)).unwrap().is_ok());
    }

    #[test]
    fn ideal_inclusion_in_z4_ring() {
        let x = CrossedModule::ideal_inclusion(&gen_cyclic_ring(4), &[0, 2]).unwrap();
        assert_eq!(x.boundary().map(), &[0, 2]);
        assert!(check_crossed_module(&x).unwrap().is_ok());
    }

    #[test]
    fn non_ideal_is_rejected() {
        // {0, 1} is not closed under addition
        assert!(CrossedModule::ideal_inclusion(&gen_cyclic_ring(4), &[0, 1]).is_err());
    }

    #[test]
    fn nonabelian_kernel_with_trivial_base_fails_cm2() {
        let s3 = gen_dihedral(3);
        let t = OmegaGroup::trivial(s3.signature());
        let x = CrossedModule::new(
            OmegaMorphism::zero(&s3, &t),
            ActionFamily::trivial(&t, &s3).unwrap(),
        )
        .unwrap();
        let r = check_crossed_module(&x).unwrap();
        let w = &r.find("CM2").unwrap().witnesses[0];
        let (a, a2) = (w.binding("a").unwrap(), w.binding("a'").unwrap());
        assert_ne!(s3.add(a, a2), s3.add(a2, a));
        assert!(r.find("CM1").is_none());
    }

    #[test]
    fn zero_boundary_forces_zero_products() {
        let z2 = gen_cyclic_ring(2);
        let x = CrossedModule::new(
            OmegaMorphism::zero(&z2, &z2),
            ActionFamily::trivial(&z2, &z2).unwrap(),
        )
        .unwrap();
        let r = check_crossed_module(&x).unwrap();
        let w = &r.find("CM3.mul").unwrap().witnesses[0];
        assert_eq!((w.binding("a"), w.binding("a'")), (Some(1), Some(1)));
    }

    #[test]
    fn morphisms_and_covers() {
        let x = z3_z2(true);
        let id = XModMorphism::identity(&x);
        assert!(check_xmod_morphism(&id).unwrap().is_ok());
        assert!(is_cover(&id).unwrap().is_ok());

        let m = XModMorphism::new(x.clone(), z3_z2(false), vec![0, 1, 2], vec![0, 1]).unwrap();
        let r = check_xmod_morphism(&m).unwrap();
        let w = &r.find("dot").unwrap().witnesses[0];
        assert_eq!((w.binding("b"), w.binding("a")), (Some(1), Some(1)));

        let t = CrossedModule::trivial(x.kernel().signature());
        let to_trivial = XModMorphism::new(x.clone(), t, vec![0; 3], vec![0; 2]).unwrap();
        assert!(check_xmod_morphism(&to_trivial).unwrap().is_ok());

        let zero = XModMorphism::new(x.clone(), x.clone(), vec![0; 3], vec![0, 1]).unwrap();
        assert!(check_xmod_morphism(&zero).unwrap().is_ok());
        let r = is_cover(&zero).unwrap();
        assert!(r.find("kernel.injective").is_some());
        assert!(matches!(is_cover(&m), Err(Error::Verification(_))));
    }
}
