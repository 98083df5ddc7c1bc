use std::collections::BTreeSet;

use crate::error::{check_range, Error, Result};
use crate::report::{Report, Witness};
use crate::table::Table;

use super::{check_morphism, OmegaGroup, OmegaMorphism};

/// A subset of an Ω-group closed under every operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subobject {
    parent: OmegaGroup,
    members: Vec<usize>,
}

impl Subobject {
    /// Fails with [`Error::Verification`] when `members` is not closed.
    pub fn new(parent: &OmegaGroup, members: &[usize]) -> Result<Self> {
        let report = is_subobject(parent, members)?;
        if !report.is_ok() {
            return Err(Error::Verification(report));
        }
        let members: BTreeSet<usize> = members.iter().copied().collect();
        Ok(Subobject {
            parent: parent.clone(),
            members: members.into_iter().collect(),
        })
    }

    pub fn parent(&self) -> &OmegaGroup {
        &self.parent
    }

    /// Sorted, so `members()[0] == 0`.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    /// Re-indexes the members as `0..len` (in ascending order) and returns the
    /// standalone Ω-group together with its inclusion into the parent.
    pub fn to_group(&self) -> (OmegaGroup, OmegaMorphism) {
        let g = &self.parent;
        let mut index = vec![usize::MAX; g.order()];
        for (i, &m) in self.members.iter().enumerate() {
            index[m] = i;
        }
        let k = self.members.len();
        let m = &self.members;
        let sub = OmegaGroup::from_parts(
            g.signature().clone(),
            Table::from_fn(k, k, |i, j| index[g.add(m[i], m[j])]),
            (0..k).map(|i| index[g.neg(m[i])]).collect(),
            (0..g.signature().binary_ops().len())
                .map(|op| Table::from_fn(k, k, |i, j| index[g.binary(op, m[i], m[j])]))
                .collect(),
            (0..g.signature().unary_ops().len())
                .map(|op| (0..k).map(|i| index[g.unary(op, m[i])]).collect())
                .collect(),
        )
        .expect("closed subsets give well-shaped tables");
        let incl = OmegaMorphism::new(sub.clone(), g.clone(), self.members.clone())
            .expect("inclusion lands in the parent");
        (sub, incl)
    }
}

/// Checks that `members` contains 0 and is closed under every operation.
pub fn is_subobject(g: &OmegaGroup, members: &[usize]) -> Result<Report> {
    check_range("subset", members, g.order())?;
    let mut inside = vec![false; g.order()];
    for &m in members {
        inside[m] = true;
    }
    let mut r = Report::new();
    if !inside[0] {
        r.record("contains_zero", Witness::at(&[]));
    }
    let sig = g.signature();
    let elems: Vec<usize> = g.elements().filter(|&a| inside[a]).collect();
    let escape = |r: &mut Report, law: &str, w: &[(&str, usize)], v: usize| {
        if !inside[v] {
            r.record(law, Witness::at(w).with_note(format!("{v} escapes")));
        }
    };
    for &a in &elems {
        escape(&mut r, "closed.neg", &[("a", a)], g.neg(a));
        for (op, name) in sig.unary_ops().iter().enumerate() {
            escape(&mut r, &format!("closed.{name}"), &[("a", a)], g.unary(op, a));
        }
        for &b in &elems {
            escape(&mut r, "closed.add", &[("a", a), ("b", b)], g.add(a, b));
            for (op, name) in sig.binary_ops().iter().enumerate() {
                escape(
                    &mut r,
                    &format!("closed.{name}"),
                    &[("a", a), ("b", b)],
                    g.binary(op, a, b),
                );
            }
        }
    }
    Ok(r)
}

/// Smallest subobject containing `seed`.
pub fn closure(g: &OmegaGroup, seed: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; g.order()];
    let mut members = vec![];
    let push = |x: usize, inside: &mut Vec<bool>, members: &mut Vec<usize>| {
        if !inside[x] {
            inside[x] = true;
            members.push(x);
        }
    };
    push(0, &mut inside, &mut members);
    for &s in seed {
        push(s, &mut inside, &mut members);
    }
    let nb = g.signature().binary_ops().len();
    let nu = g.signature().unary_ops().len();
    let mut done = 0;
    while done < members.len() {
        let a = members[done];
        done += 1;
        push(g.neg(a), &mut inside, &mut members);
        for op in 0..nu {
            push(g.unary(op, a), &mut inside, &mut members);
        }
        // pair the new element with everything seen so far, both orders
        let mut j = 0;
        while j < done {
            let b = members[j];
            for (x, y) in [(a, b), (b, a)] {
                push(g.add(x, y), &mut inside, &mut members);
                for op in 0..nb {
                    push(g.binary(op, x, y), &mut inside, &mut members);
                }
            }
            j += 1;
        }
    }
    members.sort_unstable();
    members
}

/// Every subobject of `g`, by ascending size, then lexicographically.
///
/// Subobjects are generated by closing known ones under one extra element,
/// so the cost is governed by the number of subobjects, not by `2^order`.
pub fn enumerate_subobjects(g: &OmegaGroup) -> Vec<Subobject> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = vec![closure(g, &[])];
    found.insert(queue[0].clone());
    while let Some(s) = queue.pop() {
        for x in g.elements() {
            if s.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = s.clone();
            seed.push(x);
            let c = closure(g, &seed);
            if found.insert(c.clone()) {
                queue.push(c);
            }
        }
    }
    let mut all: Vec<Vec<usize>> = found.into_iter().collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all.into_iter()
        .map(|members| Subobject {
            parent: g.clone(),
            members,
        })
        .collect()
}

/// Kernel (preimage of 0) and image of a valid morphism.
pub fn kernel_image(f: &OmegaMorphism) -> Result<(Subobject, Subobject)> {
    let report = check_morphism(f)?;
    if !report.is_ok() {
        return Err(Error::Verification(report));
    }
    let kernel: Vec<usize> = f.source().elements().filter(|&a| f.apply(a) == 0).collect();
    let image: BTreeSet<usize> = f.map().iter().copied().collect();
    let image: Vec<usize> = image.into_iter().collect();
    Ok((
        Subobject::new(f.source(), &kernel)?,
        Subobject::new(f.target(), &image)?,
    ))
}
