use crate::error::{check_len, check_range, Result};
use crate::report::Report;

use super::OmegaGroup;

/// A map between Ω-groups, given by its value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaMorphism {
    source: OmegaGroup,
    target: OmegaGroup,
    map: Vec<usize>,
}

impl OmegaMorphism {
    pub fn new(source: OmegaGroup, target: OmegaGroup, map: Vec<usize>) -> Result<Self> {
        check_len("morphism map", source.order(), map.len())?;
        check_range("morphism map", &map, target.order())?;
        Ok(OmegaMorphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(g: &OmegaGroup) -> Self {
        OmegaMorphism {
            source: g.clone(),
            target: g.clone(),
            map: g.elements().collect(),
        }
    }

    pub fn zero(source: &OmegaGroup, target: &OmegaGroup) -> Self {
        OmegaMorphism {
            source: source.clone(),
            target: target.clone(),
            map: vec![0; source.order()],
        }
    }

    pub fn source(&self) -> &OmegaGroup {
        &self.source
    }

    pub fn target(&self) -> &OmegaGroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &OmegaMorphism) -> Result<OmegaMorphism> {
        OmegaMorphism::new(
            self.source.clone(),
            other.target.clone(),
            self.map.iter().map(|&a| other.apply(a)).collect(),
        )
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&b| !std::mem::replace(&mut seen[b], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &b in &self.map {
            seen[b] = true;
        }
        seen.into_iter().all(|x| x)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// Inverse map, when bijective.
    pub fn inverse(&self) -> Option<OmegaMorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b] = a;
        }
        Some(OmegaMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        })
    }
}

/// Checks that `f` preserves zero, `+`, `-` and every named operation.
///
/// Preservation of a binary operation over all ordered pairs also gives
/// preservation of its dual. Fails with a structural error when the two
/// signatures differ.
pub fn check_morphism(f: &OmegaMorphism) -> Result<Report> {
    let s = f.source();
    let t = f.target();
    s.signature()
        .ensure_compatible(t.signature(), "morphism source and target")?;
    let mut r = Report::new();
    r.expect_eq("zero", &[], f.apply(0), 0);
    for a in s.elements() {
        r.expect_eq("neg", &[("a", a)], f.apply(s.neg(a)), t.neg(f.apply(a)));
        for (op, name) in s.signature().unary_ops().iter().enumerate() {
            r.expect_eq(
                name,
                &[("a", a)],
                f.apply(s.unary(op, a)),
                t.unary(op, f.apply(a)),
            );
        }
    }
    for a in s.elements() {
        for b in s.elements() {
            let (fa, fb) = (f.apply(a), f.apply(b));
            r.expect_eq("add", &[("a", a), ("b", b)], f.apply(s.add(a, b)), t.add(fa, fb));
            for (op, name) in s.signature().binary_ops().iter().enumerate() {
                r.expect_eq(
                    name,
                    &[("a", a), ("b", b)],
                    f.apply(s.binary(op, a, b)),
                    t.binary(op, fa, fb),
                );
            }
        }
    }
    Ok(r)
}

/// Checks that `f` is a morphism with a two-sided inverse that is also a morphism.
pub fn check_isomorphism(f: &OmegaMorphism) -> Result<Report> {
    let mut r = check_morphism(f)?;
    if !f.is_bijective() {
        r.record(
            "bijective",
            crate::report::Witness::at(&[("source", f.source().order()), ("target", f.target().order())]),
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::io::generators::{gen_cyclic_group, gen_cyclic_ring};

    #[test]
    fn doubling_on_z4_ring_breaks_multiplication() {
        let z4 = gen_cyclic_ring(4);
        let f = OmegaMorphism::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap();
        let r = check_morphism(&f).unwrap();
        assert!(r.find("add").is_none());
        let w = &r.find("mul").unwrap().witnesses[0];
        assert_eq!((w.binding("a"), w.binding("b")), (Some(1), Some(1)));
        assert_eq!(w.sides, Some((2, 0)));
    }

    #[test]
    fn identity_and_zero_maps_are_morphisms() {
        let z4 = gen_cyclic_ring(4);
        assert!(check_morphism(&OmegaMorphism::identity(&z4)).unwrap().is_ok());
        assert!(check_morphism(&OmegaMorphism::zero(&z4, &z4)).unwrap().is_ok());
    }

    #[test]
    fn signature_mismatch_is_an_error() {
        let f = OmegaMorphism::zero(&gen_cyclic_ring(4), &gen_cyclic_group(4));
        assert!(matches!(check_morphism(&f), Err(Error::SignatureMismatch(_))));
    }

    #[test]
    fn map_shape_is_validated() {
        let z4 = gen_cyclic_group(4);
        assert!(OmegaMorphism::new(z4.clone(), z4.clone(), vec![0, 1]).is_err());
        assert!(OmegaMorphism::new(z4.clone(), z4, vec![0, 1, 2, 9]).is_err());
    }

    #[test]
    fn inverse_of_automorphism() {
        let z5 = gen_cyclic_ring(5).group_reduct();
        let f = OmegaMorphism::new(z5.clone(), z5.clone(), vec![0, 2, 4, 1, 3]).unwrap();
        assert!(check_isomorphism(&f).unwrap().is_ok());
        let g = f.inverse().unwrap();
        assert_eq!(f.then(&g).unwrap(), OmegaMorphism::identity(&z5));
    }
}
