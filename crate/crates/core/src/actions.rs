//! Split extensions, derived actions and semidirect products.
//!
//! A split extension `0 -> A -> E -> B -> 0` with section `s` induces, for
//! `b` in `B` and `a` in `A`,
//!
//! ```text
//! b · a  = s(b) + a - s(b)
//! b ⋆ a  = s(b) ⋆ a
//! a ⋆ b  = a ⋆ s(b)
//! ```
//!
//! computed inside `E` and pulled back along the inclusion. Conversely a
//! family of such tables is a derived action exactly when the semidirect
//! product built from it is again an Ω-group; [`verify_derived_action`]
//! decides this and also round-trips through the induced extension.

use crate::error::{check_len, Error, Result};
use crate::omega::{check_morphism, check_omega_group, OmegaGroup, OmegaMorphism};
use crate::report::{Report, Witness};
use crate::table::Table;

/// Candidate action of `actor` (B) on `acted` (A).
///
/// For every named binary operation there are two tables: `left` holds
/// `b ⋆ a` (shape `|B| × |A|`) and `right` holds `a ⋆ b` (shape `|A| × |B|`).
/// Whether the family is a genuine derived action is decided by
/// [`verify_derived_action`], never assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionFamily {
    actor: OmegaGroup,
    acted: OmegaGroup,
    dot: Table,
    left: Vec<Table>,
    right: Vec<Table>,
}

impl ActionFamily {
    pub fn new(
        actor: OmegaGroup,
        acted: OmegaGroup,
        dot: Table,
        left: Vec<Table>,
        right: Vec<Table>,
    ) -> Result<Self> {
        actor
            .signature()
            .ensure_compatible(acted.signature(), "actor and acted")?;
        let (nb, na) = (actor.order(), acted.order());
        dot.check_shape("dot", (nb, na))?;
        dot.check_entries("dot", na)?;
        let ops = actor.signature().binary_ops();
        check_len("left action tables", ops.len(), left.len())?;
        check_len("right action tables", ops.len(), right.len())?;
        for (name, t) in ops.iter().zip(&left) {
            t.check_shape(&format!("left.{name}"), (nb, na))?;
            t.check_entries(&format!("left.{name}"), na)?;
        }
        for (name, t) in ops.iter().zip(&right) {
            t.check_shape(&format!("right.{name}"), (na, nb))?;
            t.check_entries(&format!("right.{name}"), na)?;
        }
        Ok(ActionFamily {
            actor,
            acted,
            dot,
            left,
            right,
        })
    }

    /// `b · a = a` and every `⋆`-action zero.
    pub fn trivial(actor: &OmegaGroup, acted: &OmegaGroup) -> Result<Self> {
        let (nb, na) = (actor.order(), acted.order());
        let k = actor.signature().binary_ops().len();
        Self::new(
            actor.clone(),
            acted.clone(),
            Table::from_fn(nb, na, |_, a| a),
            vec![Table::filled(nb, na, 0); k],
            vec![Table::filled(na, nb, 0); k],
        )
    }

    pub fn actor(&self) -> &OmegaGroup {
        &self.actor
    }

    pub fn acted(&self) -> &OmegaGroup {
        &self.acted
    }

    #[inline]
    pub fn dot(&self, b: usize, a: usize) -> usize {
        self.dot.get(b, a)
    }

    /// `b ⋆ a` for the `op`-th named operation.
    #[inline]
    pub fn left(&self, op: usize, b: usize, a: usize) -> usize {
        self.left[op].get(b, a)
    }

    /// `a ⋆ b` for the `op`-th named operation.
    #[inline]
    pub fn right(&self, op: usize, a: usize, b: usize) -> usize {
        self.right[op].get(a, b)
    }

    pub fn dot_table(&self) -> &Table {
        &self.dot
    }

    pub fn left_tables(&self) -> &[Table] {
        &self.left
    }

    pub fn right_tables(&self) -> &[Table] {
        &self.right
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitExtension {
    kernel: OmegaGroup,
    extension: OmegaGroup,
    base: OmegaGroup,
    inclusion: OmegaMorphism,
    projection: OmegaMorphism,
    section: OmegaMorphism,
}

impl SplitExtension {
    /// Maps are given as value tables: `A -> E`, `E -> B`, `B -> E`.
    pub fn new(
        kernel: OmegaGroup,
        extension: OmegaGroup,
        base: OmegaGroup,
        inclusion: Vec<usize>,
        projection: Vec<usize>,
        section: Vec<usize>,
    ) -> Result<Self> {
        kernel
            .signature()
            .ensure_compatible(extension.signature(), "kernel and extension")?;
        base.signature()
            .ensure_compatible(extension.signature(), "base and extension")?;
        Ok(SplitExtension {
            inclusion: OmegaMorphism::new(kernel.clone(), extension.clone(), inclusion)?,
            projection: OmegaMorphism::new(extension.clone(), base.clone(), projection)?,
            section: OmegaMorphism::new(base.clone(), extension.clone(), section)?,
            kernel,
            extension,
            base,
        })
    }

    pub fn kernel(&self) -> &OmegaGroup {
        &self.kernel
    }

    pub fn extension(&self) -> &OmegaGroup {
        &self.extension
    }

    pub fn base(&self) -> &OmegaGroup {
        &self.base
    }

    pub fn inclusion(&self) -> &OmegaMorphism {
        &self.inclusion
    }

    pub fn projection(&self) -> &OmegaMorphism {
        &self.projection
    }

    pub fn section(&self) -> &OmegaMorphism {
        &self.section
    }
}

/// Checks that the three objects are Ω-groups, the three maps are morphisms,
/// `p` is surjective, `ı` is injective with image `ker p`, and `p ∘ s = id`.
pub fn check_split_extension(x: &SplitExtension) -> Report {
    let mut r = Report::new();
    r.absorb("kernel", check_omega_group(x.kernel()));
    r.absorb("extension", check_omega_group(x.extension()));
    r.absorb("base", check_omega_group(x.base()));
    for (name, f) in [
        ("inclusion", x.inclusion()),
        ("projection", x.projection()),
        ("section", x.section()),
    ] {
        r.absorb(name, check_morphism(f).expect("signatures checked at construction"));
    }
    let (incl, proj, sect) = (x.inclusion(), x.projection(), x.section());
    if !proj.is_surjective() {
        for b in x.base().elements() {
            if !proj.map().contains(&b) {
                r.record("projection.surjective", Witness::at(&[("b", b)]));
            }
        }
    }
    if !incl.is_injective() {
        r.record(
            "inclusion.injective",
            Witness::at(&[]).with_note("two kernel elements share an image"),
        );
    }
    let mut in_image = vec![false; x.extension().order()];
    for &e in incl.map() {
        in_image[e] = true;
    }
    for e in x.extension().elements() {
        let in_kernel = proj.apply(e) == 0;
        if in_kernel != in_image[e] {
            r.record(
                "exact",
                Witness::at(&[("e", e)]).with_note(if in_kernel {
                    "in ker p but not in image of inclusion"
                } else {
                    "in image of inclusion but not in ker p"
                }),
            );
        }
    }
    for b in x.base().elements() {
        r.expect_eq("split", &[("b", b)], proj.apply(sect.apply(b)), b);
    }
    r
}

/// The derived action of a valid split extension.
///
/// Fails with [`Error::Verification`] if the extension is invalid or if a
/// formula value leaves the image of the inclusion.
pub fn derived_actions_from_split_extension(x: &SplitExtension) -> Result<ActionFamily> {
    let check = check_split_extension(x);
    if !check.is_ok() {
        return Err(Error::Verification(check));
    }
    let e = x.extension();
    let (a_grp, b_grp) = (x.kernel(), x.base());
    let (incl, sect) = (x.inclusion(), x.section());
    let mut preimage = vec![None; e.order()];
    for a in a_grp.elements() {
        preimage[incl.apply(a)] = Some(a);
    }
    let mut defects = Report::new();
    let mut pull = |law: &str, w: &[(&str, usize)], v: usize| match preimage[v] {
        Some(a) => a,
        None => {
            defects.record(law, Witness::at(w).with_note(format!("{v} escapes the kernel")));
            0
        }
    };
    let (nb, na) = (b_grp.order(), a_grp.order());
    let dot = Table::from_fn(nb, na, |b, a| {
        let sb = sect.apply(b);
        pull("dot", &[("b", b), ("a", a)], e.conj(sb, incl.apply(a)))
    });
    let ops = e.signature().binary_ops().to_vec();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (op, name) in ops.iter().enumerate() {
        left.push(Table::from_fn(nb, na, |b, a| {
            pull(
                &format!("{name}.left"),
                &[("b", b), ("a", a)],
                e.binary(op, sect.apply(b), incl.apply(a)),
            )
        }));
        right.push(Table::from_fn(na, nb, |a, b| {
            pull(
                &format!("{name}.right"),
                &[("a", a), ("b", b)],
                e.binary(op, incl.apply(a), sect.apply(b)),
            )
        }));
    }
    if !defects.is_ok() {
        return Err(Error::Verification(defects));
    }
    ActionFamily::new(b_grp.clone(), a_grp.clone(), dot, left, right)
}

/// Index of `(b, a)` in a semidirect product with `|A| = na`.
#[inline]
pub fn pair_index(na: usize, b: usize, a: usize) -> usize {
    b * na + a
}

/// The semidirect product `B ⋉ A` on `B × A`, with `(b, a)` stored at `b·|A| + a`.
///
/// ```text
/// (b, a) + (b', a') = (b + b', a + b·a')
/// (b, a) ⋆ (b', a') = (b ⋆ b', a ⋆ a' + b ⋆ a' + a ⋆ b')
/// ω(b, a)           = (ω b, ω a)
/// ```
///
/// Negation is found by searching for a right inverse; if the action is not
/// valid there may be none, in which case `0` is stored and the structure
/// fails [`check_omega_group`].
pub fn semidirect(act: &ActionFamily) -> OmegaGroup {
    let (bg, ag) = (act.actor(), act.acted());
    let (nb, na) = (bg.order(), ag.order());
    let n = nb * na;
    let split = |p: usize| (p / na, p % na);
    let add = Table::from_fn(n, n, |p, q| {
        let ((b, a), (b2, a2)) = (split(p), split(q));
        pair_index(na, bg.add(b, b2), ag.add(a, act.dot(b, a2)))
    });
    let neg = (0..n)
        .map(|p| (0..n).find(|&q| add.get(p, q) == 0).unwrap_or(0))
        .collect();
    let binary = (0..bg.signature().binary_ops().len())
        .map(|op| {
            Table::from_fn(n, n, |p, q| {
                let ((b, a), (b2, a2)) = (split(p), split(q));
                let sum = ag.add(
                    ag.add(ag.binary(op, a, a2), act.left(op, b, a2)),
                    act.right(op, a, b2),
                );
                pair_index(na, bg.binary(op, b, b2), sum)
            })
        })
        .collect();
    let unary = (0..bg.signature().unary_ops().len())
        .map(|op| {
            (0..n)
                .map(|p| {
                    let (b, a) = split(p);
                    pair_index(na, bg.unary(op, b), ag.unary(op, a))
                })
                .collect()
        })
        .collect();
    OmegaGroup::from_parts(bg.signature().clone(), add, neg, binary, unary)
        .expect("semidirect tables are well-shaped")
}

/// `0 -> A -> B ⋉ A -> B -> 0` with `ı(a) = (0, a)`, `p(b, a) = b`, `s(b) = (b, 0)`.
pub fn induced_extension(act: &ActionFamily) -> SplitExtension {
    let (nb, na) = (act.actor().order(), act.acted().order());
    SplitExtension::new(
        act.acted().clone(),
        semidirect(act),
        act.actor().clone(),
        (0..na).map(|a| pair_index(na, 0, a)).collect(),
        (0..nb * na).map(|p| p / na).collect(),
        (0..nb).map(|b| pair_index(na, b, 0)).collect(),
    )
    .expect("induced extension is well-shaped")
}

/// Decides whether `act` is a derived action.
///
/// Builds the semidirect product and checks it is an Ω-group; if so, checks
/// the induced split extension and that deriving the action back from it
/// reproduces every table of `act` exactly.
pub fn verify_derived_action(act: &ActionFamily) -> Report {
    let mut r = Report::new();
    let sd = semidirect(act);
    let sd_report = check_omega_group(&sd);
    if !sd_report.is_ok() {
        r.absorb("semidirect", sd_report);
        return r;
    }
    let ext = induced_extension(act);
    let derived = match derived_actions_from_split_extension(&ext) {
        Ok(d) => d,
        Err(Error::Verification(rep)) => {
            r.absorb("extension", rep);
            return r;
        }
        Err(e) => unreachable!("induced extension is well-formed: {e}"),
    };
    let (nb, na) = (act.actor().order(), act.acted().order());
    for b in 0..nb {
        for a in 0..na {
            r.expect_eq(
                "roundtrip.dot",
                &[("b", b), ("a", a)],
                derived.dot(b, a),
                act.dot(b, a),
            );
        }
    }
    for (op, name) in act.actor().signature().binary_ops().iter().enumerate() {
        for b in 0..nb {
            for a in 0..na {
                r.expect_eq(
                    &format!("roundtrip.{name}.left"),
                    &[("b", b), ("a", a)],
                    derived.left(op, b, a),
                    act.left(op, b, a),
                );
                r.expect_eq(
                    &format!("roundtrip.{name}.right"),
                    &[("a", a), ("b", b)],
                    derived.right(op, a, b),
                    act.right(op, a, b),
                );
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::generators::{gen_cyclic_group, gen_cyclic_ring, gen_dihedral};

    fn inversion() -> ActionFamily {
        let (z2, z3) = (gen_cyclic_group(2), gen_cyclic_group(3));
        ActionFamily::new(
            z2,
            z3,
            Table::from_fn(2, 3, |b, a| if b == 0 { a } else { (3 - a) % 3 }),
            vec![],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn s3_as_split_extension() {
        // S3 from the dihedral generator: rotations 0..3, reflections 3..6
        let s3 = gen_dihedral(3);
        let x = SplitExtension::new(
            gen_cyclic_group(3),
            s3,
            gen_cyclic_group(2),
            vec![0, 1, 2],
            vec![0, 0, 0, 1, 1, 1],
            vec![0, 3],
        )
        .unwrap();
        assert!(check_split_extension(&x).is_ok());
        let act = derived_actions_from_split_extension(&x).unwrap();
        assert_eq!(act.dot_table(), inversion().dot_table());
    }

    #[test]
    fn non_additive_section_is_rejected() {
        let z4 = gen_cyclic_group(4);
        let x = SplitExtension::new(
            gen_cyclic_group(2),
            z4,
            gen_cyclic_group(2),
            vec![0, 2],
            vec![0, 1, 0, 1],
            vec![0, 1],
        )
        .unwrap();
        let r = check_split_extension(&x);
        let w = &r.find_path("section/add").unwrap().witnesses[0];
        assert_eq!((w.binding("a"), w.binding("b")), (Some(1), Some(1)));
        assert_eq!(w.sides, Some((0, 2)));
        assert!(matches!(
            derived_actions_from_split_extension(&x),
            Err(Error::Verification(_))
        ));
    }

    #[test]
    fn identity_extension_over_trivial_base() {
        let g = gen_cyclic_ring(5);
        let t = OmegaGroup::trivial(g.signature());
        let x = SplitExtension::new(
            g.clone(),
            g.clone(),
            t,
            g.elements().collect(),
            vec![0; 5],
            vec![0],
        )
        .unwrap();
        assert!(check_split_extension(&x).is_ok());
    }

    #[test]
    fn direct_product_gives_trivial_action() {
        let (b, a) = (gen_cyclic_ring(2), gen_cyclic_ring(3));
        let e = semidirect(&ActionFamily::trivial(&b, &a).unwrap());
        let x = SplitExtension::new(
            a.clone(),
            e,
            b.clone(),
            (0..3).collect(),
            (0..6).map(|p| p / 3).collect(),
            vec![0, 3],
        )
        .unwrap();
        let act = derived_actions_from_split_extension(&x).unwrap();
        assert_eq!(act, ActionFamily::trivial(&b, &a).unwrap());
    }

    #[test]
    fn componentwise_z2_ring_square_has_zero_star_actions() {
        let z2 = gen_cyclic_ring(2);
        // E = Z2 × Z2 componentwise, (b, a) at 2b + a
        let e = OmegaGroup::tabulate(
            "rings",
            4,
            &|p, q| p ^ q,
            &|p| p,
            &[("mul", &|p, q| p & q)],
            &[],
        )
        .unwrap();
        let x = SplitExtension::new(
            z2.clone(),
            e,
            z2.clone(),
            vec![0, 1],
            vec![0, 0, 1, 1],
            vec![0, 2],
        )
        .unwrap();
        let act = derived_actions_from_split_extension(&x).unwrap();
        assert!(act.left_tables()[0].to_rows().iter().flatten().all(|&v| v == 0));
        assert!(act.right_tables()[0].to_rows().iter().flatten().all(|&v| v == 0));
    }

    #[test]
    fn semidirect_z2_z3_inversion() {
        let g = semidirect(&inversion());
        assert!(check_omega_group(&g).is_ok());
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let mut orders: Vec<_> = g.elements().map(|a| g.element_order(a)).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn trivial_action_sum() {
        let act = ActionFamily::trivial(&gen_cyclic_group(2), &gen_cyclic_group(3)).unwrap();
        let g = semidirect(&act);
        // (1,2) + (1,1) = (0,0)
        assert_eq!(g.add(pair_index(3, 1, 2), pair_index(3, 1, 1)), 0);
    }

    #[test]
    fn trivial_factor_semidirects() {
        let z5 = gen_cyclic_ring(5);
        let t = OmegaGroup::trivial(z5.signature());
        let g = semidirect(&ActionFamily::trivial(&t, &z5).unwrap());
        assert_eq!(g.add_table(), z5.add_table());
        assert_eq!(g.binary_table(0), z5.binary_table(0));
        let h = semidirect(&ActionFamily::trivial(&z5, &t).unwrap());
        assert_eq!(h.binary_table(0), z5.binary_table(0));
    }

    #[test]
    fn verification_of_candidate_actions() {
        assert!(verify_derived_action(&inversion()).is_ok());

        let shift = ActionFamily::new(
            gen_cyclic_group(2),
            gen_cyclic_group(3),
            Table::from_fn(2, 3, |b, a| if b == 0 { a } else { (a + 1) % 3 }),
            vec![],
            vec![],
        )
        .unwrap();
        let r = verify_derived_action(&shift);
        assert!(r.find_path("semidirect").is_some());

        let triv = ActionFamily::trivial(&gen_cyclic_ring(4), &gen_cyclic_ring(2)).unwrap();
        assert!(verify_derived_action(&triv).is_ok());
    }

    #[test]
    fn action_shapes_are_validated() {
        let (z2, z3) = (gen_cyclic_group(2), gen_cyclic_group(3));
        assert!(ActionFamily::new(z2.clone(), z3.clone(), Table::filled(3, 2, 0), vec![], vec![])
            .is_err());
        assert!(ActionFamily::new(z2.clone(), z3.clone(), Table::filled(2, 3, 7), vec![], vec![])
            .is_err());
        let r = gen_cyclic_ring(3);
        assert!(matches!(
            ActionFamily::new(z2, r, Table::filled(2, 3, 0), vec![], vec![]),
            Err(Error::SignatureMismatch(_))
        ));
    }
}
