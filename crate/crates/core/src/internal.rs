//! Internal groupoids in a category of groups with operations.
//!
//! Both the morphism set and the object set carry Ω-group structure, and the
//! structure maps `d0`, `d1`, `ε` and `∘` are required to be Ω-morphisms.
//! For `∘` this is the interchange law
//!
//! ```text
//! (a ⋆ b) ∘ (c ⋆ d) = (a ∘ c) ⋆ (b ∘ d)
//! ```
//!
//! for `+`, every named binary operation, and the analogous statement for
//! `-` and every unary operation.

use crate::error::{Error, Result};
use crate::groupoid::{check_groupoid, check_groupoid_morphism, FiniteGroupoid, GroupoidMorphism};
use crate::omega::{check_morphism, check_omega_group, OmegaGroup, OmegaMorphism, Subobject};
use crate::report::{Report, Witness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalGroupoid {
    groupoid: FiniteGroupoid,
    morphisms: OmegaGroup,
    objects: OmegaGroup,
}

impl InternalGroupoid {
    /// Requires matching sizes and signatures, and `ε(0) = 0`.
    pub fn new(groupoid: FiniteGroupoid, morphisms: OmegaGroup, objects: OmegaGroup) -> Result<Self> {
        crate::error::check_len("morphism group", groupoid.n_morphisms(), morphisms.order())?;
        crate::error::check_len("object group", groupoid.n_objects(), objects.order())?;
        morphisms
            .signature()
            .ensure_compatible(objects.signature(), "morphism and object groups")?;
        if groupoid.identity(0) != 0 {
            return Err(Error::malformed(format!(
                "the identity at object 0 must be morphism 0, found {}",
                groupoid.identity(0)
            )));
        }
        Ok(InternalGroupoid {
            groupoid,
            morphisms,
            objects,
        })
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn morphism_group(&self) -> &OmegaGroup {
        &self.morphisms
    }

    pub fn object_group(&self) -> &OmegaGroup {
        &self.objects
    }

    /// `d0` as a map of Ω-groups.
    pub fn source_map(&self) -> OmegaMorphism {
        OmegaMorphism::new(
            self.morphisms.clone(),
            self.objects.clone(),
            self.groupoid.d0_table().to_vec(),
        )
        .expect("shapes checked at construction")
    }

    /// `d1` as a map of Ω-groups.
    pub fn target_map(&self) -> OmegaMorphism {
        OmegaMorphism::new(
            self.morphisms.clone(),
            self.objects.clone(),
            self.groupoid.d1_table().to_vec(),
        )
        .expect("shapes checked at construction")
    }

    /// `ε` as a map of Ω-groups.
    pub fn identity_map(&self) -> OmegaMorphism {
        OmegaMorphism::new(
            self.objects.clone(),
            self.morphisms.clone(),
            self.groupoid.identity_table().to_vec(),
        )
        .expect("shapes checked at construction")
    }

    /// Both sides of the interchange law for `op` (`"+"` or a named binary
    /// operation), or `None` when `(a, c)` or `(b, d)` is not composable or
    /// the left side is undefined.
    pub fn interchange_sides(
        &self,
        op: &str,
        a: usize,
        b: usize,
        c: usize,
        d: usize,
    ) -> Option<(usize, usize)> {
        let m = &self.morphisms;
        let apply = |x, y| -> Option<usize> {
            if op == "+" {
                Some(m.add(x, y))
            } else {
                m.signature().binary_index(op).map(|i| m.binary(i, x, y))
            }
        };
        let g = &self.groupoid;
        let ac = g.compose(a, c)?;
        let bd = g.compose(b, d)?;
        let lhs = g.compose(apply(a, b)?, apply(c, d)?)?;
        Some((lhs, apply(ac, bd)?))
    }

    /// `ε d1(a) - a + ε d0(a)`.
    pub fn inverse_by_formula(&self, a: usize) -> usize {
        let (g, m) = (&self.groupoid, &self.morphisms);
        let e1 = g.identity(g.d1(a));
        let e0 = g.identity(g.d0(a));
        m.add(m.sub(e1, a), e0)
    }
}

/// Exhaustive check of every internal-groupoid condition.
pub fn check_internal_groupoid(ig: &InternalGroupoid) -> Report {
    let g = ig.groupoid();
    let m = ig.morphism_group();
    let mut r = Report::new();
    r.absorb("groupoid", check_groupoid(g));
    r.absorb("morphism_group", check_omega_group(m));
    r.absorb("object_group", check_omega_group(ig.object_group()));
    for (name, f) in [
        ("d0", ig.source_map()),
        ("d1", ig.target_map()),
        ("identity", ig.identity_map()),
    ] {
        r.absorb(name, check_morphism(&f).expect("signatures checked at construction"));
    }

    if let Some(z) = g.compose(0, 0) {
        r.expect_eq("compose.zero", &[], z, 0);
    }

    let pairs: Vec<((usize, usize), usize)> = g.composites().collect();
    let sig = m.signature();
    let mut binary: Vec<(String, Box<dyn Fn(usize, usize) -> usize + '_>)> =
        vec![("+".to_string(), Box::new(|x, y| m.add(x, y)))];
    for (i, name) in sig.binary_ops().iter().enumerate() {
        binary.push((name.clone(), Box::new(move |x, y| m.binary(i, x, y))));
    }
    for (name, op) in &binary {
        let law = format!("interchange.{name}");
        let closed = format!("pullback.closed.{name}");
        for &((a, c), ac) in &pairs {
            for &((b, d), bd) in &pairs {
                let w = [("a", a), ("b", b), ("c", c), ("d", d)];
                match g.compose(op(a, b), op(c, d)) {
                    Some(lhs) => {
                        r.expect_eq(&law, &w, lhs, op(ac, bd));
                    }
                    None => r.record(&closed, Witness::at(&w)),
                }
            }
        }
    }

    let mut unary: Vec<(String, Box<dyn Fn(usize) -> usize + '_>)> =
        vec![("-".to_string(), Box::new(|x| m.neg(x)))];
    for (i, name) in sig.unary_ops().iter().enumerate() {
        unary.push((name.clone(), Box::new(move |x| m.unary(i, x))));
    }
    for (name, op) in &unary {
        let law = format!("interchange.{name}");
        let closed = format!("pullback.closed.{name}");
        for &((a, c), ac) in &pairs {
            let w = [("a", a), ("c", c)];
            match g.compose(op(a), op(c)) {
                Some(v) => {
                    r.expect_eq(&law, &w, op(ac), v);
                }
                None => r.record(&closed, Witness::at(&w)),
            }
        }
    }

    for a in 0..g.n_morphisms() {
        r.expect_eq("inverse.formula", &[("a", a)], g.inverse(a), ig.inverse_by_formula(a));
    }
    r
}

fn promote(ig: &InternalGroupoid, members: Vec<usize>) -> Result<(OmegaGroup, OmegaMorphism)> {
    Ok(Subobject::new(ig.morphism_group(), &members)?.to_group())
}

/// `{a : d0(a) = 0}` as a standalone Ω-group, with its inclusion.
pub fn kernel_of_source(ig: &InternalGroupoid) -> Result<(OmegaGroup, OmegaMorphism)> {
    let g = ig.groupoid();
    promote(ig, (0..g.n_morphisms()).filter(|&a| g.d0(a) == 0).collect())
}

/// Loops at object 0 as a standalone Ω-group, with its inclusion.
pub fn vertex_omega_group(ig: &InternalGroupoid) -> Result<(OmegaGroup, OmegaMorphism)> {
    promote(ig, ig.groupoid().vertex_group(0))
}

/// A morphism of internal groupoids: a groupoid morphism whose two maps are
/// Ω-morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalMorphism {
    source: InternalGroupoid,
    target: InternalGroupoid,
    object_map: Vec<usize>,
    morphism_map: Vec<usize>,
}

impl InternalMorphism {
    pub fn new(
        source: InternalGroupoid,
        target: InternalGroupoid,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Self> {
        GroupoidMorphism::new(
            source.groupoid().clone(),
            target.groupoid().clone(),
            object_map.clone(),
            morphism_map.clone(),
        )?;
        Ok(InternalMorphism {
            source,
            target,
            object_map,
            morphism_map,
        })
    }

    pub fn identity(g: &InternalGroupoid) -> Self {
        InternalMorphism {
            source: g.clone(),
            target: g.clone(),
            object_map: (0..g.groupoid().n_objects()).collect(),
            morphism_map: (0..g.groupoid().n_morphisms()).collect(),
        }
    }

    pub fn source(&self) -> &InternalGroupoid {
        &self.source
    }

    pub fn target(&self) -> &InternalGroupoid {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphism_map
    }

    pub fn groupoid_morphism(&self) -> GroupoidMorphism {
        GroupoidMorphism::new(
            self.source.groupoid().clone(),
            self.target.groupoid().clone(),
            self.object_map.clone(),
            self.morphism_map.clone(),
        )
        .expect("shapes checked at construction")
    }

    pub fn on_morphisms(&self) -> OmegaMorphism {
        OmegaMorphism::new(
            self.source.morphism_group().clone(),
            self.target.morphism_group().clone(),
            self.morphism_map.clone(),
        )
        .expect("shapes checked at construction")
    }

    pub fn on_objects(&self) -> OmegaMorphism {
        OmegaMorphism::new(
            self.source.object_group().clone(),
            self.target.object_group().clone(),
            self.object_map.clone(),
        )
        .expect("shapes checked at construction")
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &InternalMorphism) -> Result<InternalMorphism> {
        InternalMorphism::new(
            self.source.clone(),
            other.target.clone(),
            self.object_map.iter().map(|&x| other.object_map[x]).collect(),
            self.morphism_map.iter().map(|&a| other.morphism_map[a]).collect(),
        )
    }

    /// Replaces the morphism map. Used for fault injection.
    pub fn with_morphism_map(self, morphism_map: Vec<usize>) -> Result<Self> {
        InternalMorphism::new(self.source, self.target, self.object_map, morphism_map)
    }
}

/// Checks the groupoid-morphism conditions and that both maps are Ω-morphisms.
pub fn check_internal_morphism(f: &InternalMorphism) -> Result<Report> {
    let mut r = Report::new();
    r.absorb("groupoid", check_groupoid_morphism(&f.groupoid_morphism()));
    r.absorb("morphisms", check_morphism(&f.on_morphisms())?);
    r.absorb("objects", check_morphism(&f.on_objects())?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::generators::{
        gen_cyclic_group, gen_cyclic_ring, gen_dihedral, gen_one_object, gen_pair_groupoid,
    };

    #[test]
    fn one_object_abelian_group_is_internal() {
        let c4 = gen_one_object(&gen_cyclic_group(4));
        assert!(check_internal_groupoid(&c4).is_ok());
        let (k, _) = kernel_of_source(&c4).unwrap();
        assert_eq!(k.order(), 4);
        let (v, _) = vertex_omega_group(&c4).unwrap();
        assert_eq!(v.order(), 4);
    }

    #[test]
    fn one_object_ring_fails_interchange() {
        let z4 = gen_one_object(&gen_cyclic_ring(4));
        let r = check_internal_groupoid(&z4);
        assert!(r.find("interchange.mul").is_some());
        assert!(r.find("interchange.+").is_none());
        assert_eq!(z4.interchange_sides("mul", 1, 1, 1, 1), Some((2, 0)));
    }

    #[test]
    fn one_object_nonabelian_group_fails_interchange() {
        let s3 = gen_one_object(&gen_dihedral(3));
        assert!(check_internal_groupoid(&s3).find("interchange.+").is_some());
    }

    #[test]
    fn pair_groupoid() {
        let p = gen_pair_groupoid(&gen_cyclic_group(2));
        assert!(check_internal_groupoid(&p).is_ok());
        let (k, incl) = kernel_of_source(&p).unwrap();
        assert_eq!(k.order(), 2);
        assert_eq!(incl.map(), &[0, 1]);
        let (v, _) = vertex_omega_group(&p).unwrap();
        assert_eq!(v.order(), 1);
    }

    #[test]
    fn pair_groupoid_of_nonabelian_group_is_internal() {
        let p = gen_pair_groupoid(&gen_dihedral(3));
        assert!(check_internal_groupoid(&p).is_ok());
    }

    #[test]
    fn identity_morphism_and_broken_identity_compatibility() {
        let p = gen_pair_groupoid(&gen_cyclic_ring(2));
        let id = InternalMorphism::identity(&p);
        assert!(check_internal_morphism(&id).unwrap().is_ok());
        // swap the two identities (0,0) <-> (1,1) at indices 0 and 3
        let bad = id.with_morphism_map(vec![3, 1, 2, 0]).unwrap();
        let r = check_internal_morphism(&bad).unwrap();
        assert!(r.find_path("groupoid/identity").is_some());
    }

    #[test]
    fn identity_at_zero_must_be_zero() {
        let g = FiniteGroupoid::codiscrete(2);
        // swap morphism labels so ε(0) != 0
        let swapped = FiniteGroupoid::from_fn(
            2,
            vec![0, 0, 1, 1],
            vec![1, 0, 0, 1],
            vec![1, 3],
            vec![2, 1, 0, 3],
            |a, b| {
                let pair = |m: usize| [(0, 1), (0, 0), (1, 0), (1, 1)][m];
                let (x, _) = pair(a);
                let (_, z) = pair(b);
                [(0, 1), (0, 0), (1, 0), (1, 1)]
                    .iter()
                    .position(|&p| p == (x, z))
                    .unwrap()
            },
        )
        .unwrap();
        assert!(check_groupoid(&swapped).is_ok());
        let z4 = gen_cyclic_group(4);
        let z2 = gen_cyclic_group(2);
        assert!(InternalGroupoid::new(swapped, z4.clone(), z2.clone()).is_err());
        assert!(InternalGroupoid::new(g, z4, z2).is_ok());
    }
}
