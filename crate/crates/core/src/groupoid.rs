//! Finite groupoids, their morphisms and covering morphisms.
//!
//! Composition is written `a ∘ b` and is defined when `d1(a) == d0(b)`: first
//! `a`, then `b`. So `d0(a ∘ b) = d0(a)` and `d1(a ∘ b) = d1(b)`.

use std::collections::BTreeMap;

use crate::error::{check_len, check_range, Error, Result};
use crate::omega::OmegaGroup;
use crate::report::{Report, Witness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    n_objects: usize,
    d0: Vec<usize>,
    d1: Vec<usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    comp: BTreeMap<(usize, usize), usize>,
}

impl FiniteGroupoid {
    /// Validates shapes, ranges, and that `comp` has exactly one entry per
    /// composable pair. Groupoid axioms are left to [`check_groupoid`].
    pub fn new(
        n_objects: usize,
        d0: Vec<usize>,
        d1: Vec<usize>,
        identity: Vec<usize>,
        inverse: Vec<usize>,
        comp: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let m = d0.len();
        check_len("d1", m, d1.len())?;
        check_len("inverse", m, inverse.len())?;
        check_len("identity", n_objects, identity.len())?;
        check_range("d0", &d0, n_objects)?;
        check_range("d1", &d1, n_objects)?;
        check_range("identity", &identity, m)?;
        check_range("inverse", &inverse, m)?;
        for (&(a, b), &c) in &comp {
            if a >= m || b >= m || c >= m {
                return Err(Error::OutOfRange {
                    table: "compose".into(),
                    position: format!("({a},{b})"),
                    value: a.max(b).max(c),
                    bound: m,
                });
            }
            if d1[a] != d0[b] {
                return Err(Error::malformed(format!(
                    "composite given for non-composable pair ({a},{b})"
                )));
            }
        }
        let expected: usize = (0..m)
            .map(|a| d0.iter().filter(|&&x| x == d1[a]).count())
            .sum();
        if comp.len() != expected {
            let missing = (0..m)
                .flat_map(|a| (0..m).map(move |b| (a, b)))
                .find(|&(a, b)| d1[a] == d0[b] && !comp.contains_key(&(a, b)))
                .expect("a composable pair lacks an entry");
            return Err(Error::malformed(format!(
                "no composite given for composable pair ({},{})",
                missing.0, missing.1
            )));
        }
        Ok(FiniteGroupoid {
            n_objects,
            d0,
            d1,
            identity,
            inverse,
            comp,
        })
    }

    /// Tabulates composition from a closure over every composable pair.
    pub fn from_fn(
        n_objects: usize,
        d0: Vec<usize>,
        d1: Vec<usize>,
        identity: Vec<usize>,
        inverse: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let m = d0.len();
        check_len("d1", m, d1.len())?;
        let mut comp = BTreeMap::new();
        for a in 0..m {
            for b in 0..m {
                if d1[a] == d0[b] {
                    comp.insert((a, b), compose(a, b));
                }
            }
        }
        Self::new(n_objects, d0, d1, identity, inverse, comp)
    }

    /// A group viewed as a groupoid with a single object, `∘ = +`.
    pub fn one_object(g: &OmegaGroup) -> Self {
        let m = g.order();
        Self::from_fn(
            1,
            vec![0; m],
            vec![0; m],
            vec![0],
            g.neg_table().to_vec(),
            |a, b| g.add(a, b),
        )
        .expect("one-object groupoid tables are well-shaped")
    }

    /// One morphism `(x, y)` for each ordered pair of objects, indexed `x * n + y`.
    pub fn codiscrete(n: usize) -> Self {
        let idx = |x: usize, y: usize| x * n + y;
        Self::from_fn(
            n,
            (0..n * n).map(|a| a / n).collect(),
            (0..n * n).map(|a| a % n).collect(),
            (0..n).map(|x| idx(x, x)).collect(),
            (0..n * n).map(|a| idx(a % n, a / n)).collect(),
            |a, b| idx(a / n, b % n),
        )
        .expect("codiscrete tables are well-shaped")
    }

    /// Only identities.
    pub fn discrete(n: usize) -> Self {
        Self::from_fn(
            n,
            (0..n).collect(),
            (0..n).collect(),
            (0..n).collect(),
            (0..n).collect(),
            |a, _| a,
        )
        .expect("discrete tables are well-shaped")
    }

    /// Objects and morphisms of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &FiniteGroupoid) -> Self {
        let (no, nm) = (self.n_objects, self.n_morphisms());
        let mut comp = self.comp.clone();
        for (&(a, b), &c) in &other.comp {
            comp.insert((a + nm, b + nm), c + nm);
        }
        let shift = |v: &[usize], k: usize| v.iter().map(|x| x + k).collect::<Vec<_>>();
        Self::new(
            no + other.n_objects,
            [self.d0.clone(), shift(&other.d0, no)].concat(),
            [self.d1.clone(), shift(&other.d1, no)].concat(),
            [self.identity.clone(), shift(&other.identity, nm)].concat(),
            [self.inverse.clone(), shift(&other.inverse, nm)].concat(),
            comp,
        )
        .expect("union of well-shaped groupoids is well-shaped")
    }

    /// Redirects one existing composition entry. Used for fault injection.
    pub fn with_composite(mut self, a: usize, b: usize, value: usize) -> Result<Self> {
        if value >= self.n_morphisms() {
            return Err(Error::OutOfRange {
                table: "compose".into(),
                position: format!("({a},{b})"),
                value,
                bound: self.n_morphisms(),
            });
        }
        match self.comp.get_mut(&(a, b)) {
            Some(slot) => *slot = value,
            None => return Err(Error::malformed(format!("({a},{b}) is not composable"))),
        }
        Ok(self)
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_morphisms(&self) -> usize {
        self.d0.len()
    }

    #[inline]
    pub fn d0(&self, a: usize) -> usize {
        self.d0[a]
    }

    #[inline]
    pub fn d1(&self, a: usize) -> usize {
        self.d1[a]
    }

    #[inline]
    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a ∘ b`, or `None` when the pair is not composable.
    #[inline]
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.comp.get(&(a, b)).copied()
    }

    pub fn d0_table(&self) -> &[usize] {
        &self.d0
    }

    pub fn d1_table(&self) -> &[usize] {
        &self.d1
    }

    pub fn identity_table(&self) -> &[usize] {
        &self.identity
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    /// `((a, b), a ∘ b)` for every composable pair, in ascending order.
    pub fn composites(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.comp.iter().map(|(&k, &v)| (k, v))
    }

    /// Morphisms grouped by source object.
    pub fn stars(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_objects];
        for (a, &x) in self.d0.iter().enumerate() {
            out[x].push(a);
        }
        out
    }

    /// Morphisms from `x` to `y`.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.n_morphisms())
            .filter(|&a| self.d0[a] == x && self.d1[a] == y)
            .collect()
    }

    /// Loops at `x`.
    pub fn vertex_group(&self, x: usize) -> Vec<usize> {
        self.hom(x, x)
    }
}

/// `{a : d0(a) = x}`.
pub fn star(g: &FiniteGroupoid, x: usize) -> Vec<usize> {
    (0..g.n_morphisms()).filter(|&a| g.d0(a) == x).collect()
}

/// Exhaustive check of the groupoid axioms.
pub fn check_groupoid(g: &FiniteGroupoid) -> Report {
    let mut r = Report::new();
    for x in 0..g.n_objects() {
        let e = g.identity(x);
        r.expect_eq("identity.d0", &[("x", x)], g.d0(e), x);
        r.expect_eq("identity.d1", &[("x", x)], g.d1(e), x);
    }
    for ((a, b), c) in g.composites() {
        r.expect_eq("compose.d0", &[("a", a), ("b", b)], g.d0(c), g.d0(a));
        r.expect_eq("compose.d1", &[("a", a), ("b", b)], g.d1(c), g.d1(b));
    }
    let undefined = |r: &mut Report, law: &str, w: &[(&str, usize)]| {
        r.record(law, Witness::at(w).with_note("undefined composite"));
    };
    for a in 0..g.n_morphisms() {
        match g.compose(g.identity(g.d0(a)), a) {
            Some(v) => {
                r.expect_eq("identity.left", &[("a", a)], v, a);
            }
            None => undefined(&mut r, "identity.left", &[("a", a)]),
        }
        match g.compose(a, g.identity(g.d1(a))) {
            Some(v) => {
                r.expect_eq("identity.right", &[("a", a)], v, a);
            }
            None => undefined(&mut r, "identity.right", &[("a", a)]),
        }
        let inv = g.inverse(a);
        r.expect_eq("inverse.d0", &[("a", a)], g.d0(inv), g.d1(a));
        r.expect_eq("inverse.d1", &[("a", a)], g.d1(inv), g.d0(a));
        match g.compose(a, inv) {
            Some(v) => {
                r.expect_eq("inverse.right", &[("a", a)], v, g.identity(g.d0(a)));
            }
            None => undefined(&mut r, "inverse.right", &[("a", a)]),
        }
        match g.compose(inv, a) {
            Some(v) => {
                r.expect_eq("inverse.left", &[("a", a)], v, g.identity(g.d1(a)));
            }
            None => undefined(&mut r, "inverse.left", &[("a", a)]),
        }
    }
    let stars = g.stars();
    for a in 0..g.n_morphisms() {
        for &b in &stars[g.d1(a)] {
            let ab = g.compose(a, b).expect("composable by construction");
            for &c in &stars[g.d1(b)] {
                let bc = g.compose(b, c).expect("composable by construction");
                let w = [("a", a), ("b", b), ("c", c)];
                match (g.compose(ab, c), g.compose(a, bc)) {
                    (Some(l), Some(rr)) => {
                        r.expect_eq("compose.assoc", &w, l, rr);
                    }
                    _ => undefined(&mut r, "compose.assoc", &w),
                }
            }
        }
    }
    r
}

/// Objects grouped into connected components, each sorted, ordered by least object.
pub fn connected_components(g: &FiniteGroupoid) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..g.n_objects()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut y = x;
        while parent[y] != root {
            let next = parent[y];
            parent[y] = root;
            y = next;
        }
        root
    }
    for a in 0..g.n_morphisms() {
        let (x, y) = (find(&mut parent, g.d0(a)), find(&mut parent, g.d1(a)));
        if x != y {
            parent[x.max(y)] = x.min(y);
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..g.n_objects() {
        let root = find(&mut parent, x);
        classes.entry(root).or_default().push(x);
    }
    classes.into_values().collect()
}

/// A pair of maps on objects and morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidMorphism {
    source: FiniteGroupoid,
    target: FiniteGroupoid,
    object_map: Vec<usize>,
    morphism_map: Vec<usize>,
}

impl GroupoidMorphism {
    pub fn new(
        source: FiniteGroupoid,
        target: FiniteGroupoid,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Self> {
        check_len("object_map", source.n_objects(), object_map.len())?;
        check_len("morphism_map", source.n_morphisms(), morphism_map.len())?;
        check_range("object_map", &object_map, target.n_objects())?;
        check_range("morphism_map", &morphism_map, target.n_morphisms())?;
        Ok(GroupoidMorphism {
            source,
            target,
            object_map,
            morphism_map,
        })
    }

    pub fn identity(g: &FiniteGroupoid) -> Self {
        GroupoidMorphism {
            source: g.clone(),
            target: g.clone(),
            object_map: (0..g.n_objects()).collect(),
            morphism_map: (0..g.n_morphisms()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteGroupoid {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroupoid {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphism_map
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &GroupoidMorphism) -> Result<GroupoidMorphism> {
        GroupoidMorphism::new(
            self.source.clone(),
            other.target.clone(),
            self.object_map.iter().map(|&x| other.object_map[x]).collect(),
            self.morphism_map.iter().map(|&a| other.morphism_map[a]).collect(),
        )
    }

    /// Replaces the object map. Used for fault injection.
    pub fn with_object_map(mut self, object_map: Vec<usize>) -> Result<Self> {
        check_len("object_map", self.source.n_objects(), object_map.len())?;
        check_range("object_map", &object_map, self.target.n_objects())?;
        self.object_map = object_map;
        Ok(self)
    }
}

/// Checks compatibility with `d0`, `d1`, `ε` and composition.
pub fn check_groupoid_morphism(f: &GroupoidMorphism) -> Report {
    let (s, t) = (f.source(), f.target());
    let (f0, f1) = (f.object_map(), f.morphism_map());
    let mut r = Report::new();
    for a in 0..s.n_morphisms() {
        r.expect_eq("d0", &[("a", a)], t.d0(f1[a]), f0[s.d0(a)]);
        r.expect_eq("d1", &[("a", a)], t.d1(f1[a]), f0[s.d1(a)]);
    }
    for x in 0..s.n_objects() {
        r.expect_eq("identity", &[("x", x)], f1[s.identity(x)], t.identity(f0[x]));
    }
    for ((a, b), c) in s.composites() {
        match t.compose(f1[a], f1[b]) {
            Some(v) => {
                r.expect_eq("compose", &[("a", a), ("b", b)], f1[c], v);
            }
            None => r.record(
                "compose",
                Witness::at(&[("a", a), ("b", b)]).with_note("images not composable"),
            ),
        }
    }
    r
}

/// Checks that `f` restricts to a bijection `St x -> St f0(x)` for every object `x`.
///
/// `f` must be a valid morphism; otherwise the morphism report is returned
/// as [`Error::Verification`].
pub fn is_covering_morphism(f: &GroupoidMorphism) -> Result<Report> {
    let base = check_groupoid_morphism(f);
    if !base.is_ok() {
        return Err(Error::Verification(base));
    }
    let (s, t) = (f.source(), f.target());
    let source_stars = s.stars();
    let target_stars = t.stars();
    let mut r = Report::new();
    for x in 0..s.n_objects() {
        let y = f.object_map()[x];
        let mut hit: BTreeMap<usize, usize> = BTreeMap::new();
        for &a in &source_stars[x] {
            let fa = f.morphism_map()[a];
            if let Some(&prev) = hit.get(&fa) {
                r.record(
                    "star.injective",
                    Witness::at(&[("x", x), ("a", prev), ("b", a)]),
                );
            } else {
                hit.insert(fa, a);
            }
        }
        for &b in &target_stars[y] {
            if !hit.contains_key(&b) {
                r.record(
                    "star.surjective",
                    Witness::at(&[("x", x), ("missing", b)]),
                );
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::generators::gen_cyclic_group;

    fn c(n: usize) -> FiniteGroupoid {
        FiniteGroupoid::one_object(&gen_cyclic_group(n))
    }

    #[test]
    fn standard_groupoids_are_valid() {
        assert!(check_groupoid(&FiniteGroupoid::codiscrete(3)).is_ok());
        assert!(check_groupoid(&c(4)).is_ok());
        assert!(check_groupoid(&FiniteGroupoid::discrete(3)).is_ok());
        assert!(check_groupoid(&c(2).disjoint_union(&c(3))).is_ok());
    }

    #[test]
    fn redirected_composite_is_caught() {
        let g = FiniteGroupoid::codiscrete(3);
        // (0,1) ∘ (1,2) should be (0,2) = 2; send it to (0,1) = 1 instead
        let bad = g.with_composite(1, 5, 1).unwrap();
        let r = check_groupoid(&bad);
        assert!(!r.is_ok());
        assert!(r.find("compose.d1").is_some() || r.find("compose.assoc").is_some());
    }

    #[test]
    fn missing_or_extra_composites_are_structural() {
        let g = c(2);
        let mut comp: BTreeMap<_, _> = g.composites().collect();
        comp.remove(&(1, 1));
        let err = FiniteGroupoid::new(1, vec![0, 0], vec![0, 0], vec![0], vec![0, 1], comp)
            .unwrap_err();
        assert!(err.is_structural());

        let d = FiniteGroupoid::discrete(2);
        let mut comp: BTreeMap<_, _> = d.composites().collect();
        comp.insert((0, 1), 0);
        assert!(FiniteGroupoid::new(2, vec![0, 1], vec![0, 1], vec![0, 1], vec![0, 1], comp)
            .is_err());
    }

    #[test]
    fn stars() {
        assert_eq!(star(&FiniteGroupoid::codiscrete(3), 1).len(), 3);
        assert_eq!(star(&c(4), 0).len(), 4);
        let u = c(2).disjoint_union(&c(3));
        assert_eq!(star(&u, 0), vec![0, 1]);
        assert_eq!(star(&u, 1), vec![2, 3, 4]);
    }

    #[test]
    fn components() {
        assert_eq!(connected_components(&c(2).disjoint_union(&c(3))).len(), 2);
        assert_eq!(connected_components(&FiniteGroupoid::codiscrete(4)).len(), 1);
        assert_eq!(
            connected_components(&FiniteGroupoid::discrete(3)),
            vec![vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn morphisms_and_covers() {
        let g = c(4);
        let id = GroupoidMorphism::identity(&g);
        assert!(check_groupoid_morphism(&id).is_ok());
        assert!(is_covering_morphism(&id).unwrap().is_ok());

        // C2 ⊔ C2 onto C2
        let u = c(2).disjoint_union(&c(2));
        let proj = GroupoidMorphism::new(u, c(2), vec![0, 0], vec![0, 1, 0, 1]).unwrap();
        assert!(check_groupoid_morphism(&proj).is_ok());
        assert!(is_covering_morphism(&proj).unwrap().is_ok());

        // collapse C4 to the trivial groupoid
        let collapse = GroupoidMorphism::new(g.clone(), c(1), vec![0], vec![0; 4]).unwrap();
        assert!(check_groupoid_morphism(&collapse).is_ok());
        let r = is_covering_morphism(&collapse).unwrap();
        assert_eq!(r.find("star.injective").unwrap().count, 3);
    }

    #[test]
    fn endpoint_violation_has_a_witness() {
        let d = FiniteGroupoid::discrete(2);
        let f = GroupoidMorphism::identity(&d).with_object_map(vec![1, 1]).unwrap();
        let r = check_groupoid_morphism(&f);
        assert!(r.find("d0").is_some());
        assert!(matches!(is_covering_morphism(&f), Err(Error::Verification(_))));
    }
}
