use crate::error::{check_len, check_range, Error, Result};
use crate::report::Report;
use crate::table::Table;

use super::Signature;

/// A finite group with operations, given by operation tables.
///
/// Elements are `0..order`, and `0` is always the group identity. Binary and
/// unary tables are stored in the (sorted) order of the signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OmegaGroup {
    signature: Signature,
    order: usize,
    add: Table,
    neg: Vec<usize>,
    binary: Vec<Table>,
    unary: Vec<Vec<usize>>,
}

pub type BinaryFn<'a> = &'a dyn Fn(usize, usize) -> usize;
pub type UnaryFn<'a> = &'a dyn Fn(usize) -> usize;

impl OmegaGroup {
    /// Assembles a structure from named tables. Only shapes and ranges are
    /// validated; the axioms are left to [`check_omega_group`].
    pub fn new(
        label: impl Into<String>,
        add: Table,
        neg: Vec<usize>,
        binary: Vec<(String, Table)>,
        unary: Vec<(String, Vec<usize>)>,
    ) -> Result<Self> {
        let signature = Signature::new(
            label,
            binary.iter().map(|(n, _)| n.clone()),
            unary.iter().map(|(n, _)| n.clone()),
        )?;
        let mut binary = binary;
        let mut unary = unary;
        binary.sort_by(|a, b| a.0.cmp(&b.0));
        unary.sort_by(|a, b| a.0.cmp(&b.0));
        Self::from_parts(
            signature,
            add,
            neg,
            binary.into_iter().map(|(_, t)| t).collect(),
            unary.into_iter().map(|(_, t)| t).collect(),
        )
    }

    /// Tables must already be in signature order.
    pub fn from_parts(
        signature: Signature,
        add: Table,
        neg: Vec<usize>,
        binary: Vec<Table>,
        unary: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let order = neg.len();
        if order == 0 {
            return Err(Error::malformed("an Ω-group needs at least one element"));
        }
        add.check_shape("add", (order, order))?;
        add.check_entries("add", order)?;
        check_range("neg", &neg, order)?;
        check_len("binary operations", signature.binary_ops().len(), binary.len())?;
        check_len("unary operations", signature.unary_ops().len(), unary.len())?;
        for (name, t) in signature.binary_ops().iter().zip(&binary) {
            t.check_shape(name, (order, order))?;
            t.check_entries(name, order)?;
        }
        for (name, t) in signature.unary_ops().iter().zip(&unary) {
            check_len(name, order, t.len())?;
            check_range(name, t, order)?;
        }
        Ok(OmegaGroup {
            signature,
            order,
            add,
            neg,
            binary,
            unary,
        })
    }

    /// Builds every table by evaluating closures.
    pub fn tabulate(
        label: &str,
        order: usize,
        add: BinaryFn<'_>,
        neg: UnaryFn<'_>,
        binary: &[(&str, BinaryFn<'_>)],
        unary: &[(&str, UnaryFn<'_>)],
    ) -> Result<Self> {
        Self::new(
            label,
            Table::from_fn(order, order, add),
            (0..order).map(neg).collect(),
            binary
                .iter()
                .map(|(n, f)| (n.to_string(), Table::from_fn(order, order, f)))
                .collect(),
            unary
                .iter()
                .map(|(n, f)| (n.to_string(), (0..order).map(f).collect()))
                .collect(),
        )
    }

    /// The one-element structure over `signature`.
    pub fn trivial(signature: &Signature) -> Self {
        OmegaGroup {
            signature: signature.clone(),
            order: 1,
            add: Table::filled(1, 1, 0),
            neg: vec![0],
            binary: vec![Table::filled(1, 1, 0); signature.binary_ops().len()],
            unary: vec![vec![0]; signature.unary_ops().len()],
        }
    }

    /// Forgets every extra operation.
    pub fn group_reduct(&self) -> Self {
        OmegaGroup {
            signature: Signature::groups(),
            order: self.order,
            add: self.add.clone(),
            neg: self.neg.clone(),
            binary: vec![],
            unary: vec![],
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.get(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// `a - b`, i.e. `a + (-b)`.
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `a + b - a`.
    #[inline]
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.sub(self.add(a, b), a)
    }

    #[inline]
    pub fn binary(&self, op: usize, a: usize, b: usize) -> usize {
        self.binary[op].get(a, b)
    }

    #[inline]
    pub fn unary(&self, op: usize, a: usize) -> usize {
        self.unary[op][a]
    }

    pub fn add_table(&self) -> &Table {
        &self.add
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }

    pub fn binary_table(&self, op: usize) -> &Table {
        &self.binary[op]
    }

    pub fn unary_table(&self, op: usize) -> &[usize] {
        &self.unary[op]
    }

    pub fn binary_tables(&self) -> &[Table] {
        &self.binary
    }

    pub fn unary_tables(&self) -> &[Vec<usize>] {
        &self.unary
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.signature = self.signature.with_label(label);
        self
    }

    /// Overwrites one entry of a binary table. Used for fault injection.
    pub fn with_binary_entry(mut self, op: usize, a: usize, b: usize, value: usize) -> Self {
        assert!(value < self.order);
        self.binary[op].set(a, b, value);
        self
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.add(a, b) == self.add(b, a)))
    }

    /// Additive order of `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.add(x, a);
            k += 1;
            if k > self.order {
                break;
            }
        }
        k
    }
}

/// Exhaustively checks the group laws and axioms (c) and (d).
///
/// Axiom (c) is checked for every named operation and for its dual, so both
/// left and right distributivity are required. Axiom (d) is checked for every
/// unary operation against every named binary operation and its dual.
pub fn check_omega_group(g: &OmegaGroup) -> Report {
    let mut r = Report::new();
    let n = g.order();
    let sig = g.signature().clone();

    if n > 0 {
        // 0 is the identity; this also catches a mislabelled zero.
        for a in 0..n {
            r.expect_eq("add.left_identity", &[("a", a)], g.add(0, a), a);
            r.expect_eq("add.right_identity", &[("a", a)], g.add(a, 0), a);
            r.expect_eq("neg.right_inverse", &[("a", a)], g.add(a, g.neg(a)), 0);
            r.expect_eq("neg.left_inverse", &[("a", a)], g.add(g.neg(a), a), 0);
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = g.add(a, b);
            for c in 0..n {
                r.expect_eq(
                    "add.assoc",
                    &[("a", a), ("b", b), ("c", c)],
                    g.add(ab, c),
                    g.add(a, g.add(b, c)),
                );
            }
        }
    }

    for (op, name) in sig.binary_ops().iter().enumerate() {
        let left = format!("{name}.left_distrib");
        let right = format!("{name}.right_distrib");
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let w = [("a", a), ("b", b), ("c", c)];
                    let bc = g.add(b, c);
                    r.expect_eq(
                        &left,
                        &w,
                        g.binary(op, a, bc),
                        g.add(g.binary(op, a, b), g.binary(op, a, c)),
                    );
                    // the dual operation: a op° (b+c) = (b+c) op a
                    r.expect_eq(
                        &right,
                        &w,
                        g.binary(op, bc, a),
                        g.add(g.binary(op, b, a), g.binary(op, c, a)),
                    );
                }
            }
        }
    }

    for (w_op, w_name) in sig.unary_ops().iter().enumerate() {
        let additive = format!("{w_name}.additive");
        for a in 0..n {
            for b in 0..n {
                r.expect_eq(
                    &additive,
                    &[("a", a), ("b", b)],
                    g.unary(w_op, g.add(a, b)),
                    g.add(g.unary(w_op, a), g.unary(w_op, b)),
                );
            }
        }
        for (op, name) in sig.binary_ops().iter().enumerate() {
            let over = format!("{w_name}.over.{name}");
            let over_dual = format!("{w_name}.over.{name}.dual");
            for a in 0..n {
                let wa = g.unary(w_op, a);
                for b in 0..n {
                    r.expect_eq(
                        &over,
                        &[("a", a), ("b", b)],
                        g.binary(op, wa, b),
                        g.unary(w_op, g.binary(op, a, b)),
                    );
                    r.expect_eq(
                        &over_dual,
                        &[("a", a), ("b", b)],
                        g.binary(op, b, wa),
                        g.unary(w_op, g.binary(op, b, a)),
                    );
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::generators::{gen_cyclic_group, gen_cyclic_ring, gen_dihedral};

    #[test]
    fn z6_ring_is_valid() {
        assert!(check_omega_group(&gen_cyclic_ring(6)).is_ok());
    }

    #[test]
    fn addition_as_product_breaks_distributivity() {
        let g = OmegaGroup::tabulate(
            "rings",
            2,
            &|a, b| (a + b) % 2,
            &|a| a,
            &[("mul", &|a, b| (a + b) % 2)],
            &[],
        )
        .unwrap();
        let r = check_omega_group(&g);
        let v = r.find("mul.left_distrib").unwrap();
        let w = &v.witnesses[0];
        assert_eq!(
            (w.binding("a"), w.binding("b"), w.binding("c")),
            (Some(1), Some(0), Some(0))
        );
        assert_eq!(w.sides, Some((1, 0)));
    }

    #[test]
    fn trivial_structure_is_valid() {
        let sig = Signature::new("x", ["p", "q"], ["w"]).unwrap();
        assert!(check_omega_group(&OmegaGroup::trivial(&sig)).is_ok());
    }

    #[test]
    fn shape_errors_are_structural() {
        let err = OmegaGroup::new("groups", Table::filled(2, 3, 0), vec![0, 1], vec![], vec![])
            .unwrap_err();
        assert!(err.is_structural());
        let err = OmegaGroup::new("groups", Table::filled(2, 2, 5), vec![0, 1], vec![], vec![])
            .unwrap_err();
        assert!(matches!(err, Error::OutOfRange { value: 5, .. }));
    }

    #[test]
    fn wrong_negation_is_an_axiom_failure() {
        let z4 = gen_cyclic_group(4);
        let bad = OmegaGroup::from_parts(
            z4.signature().clone(),
            z4.add_table().clone(),
            vec![0, 2, 1, 3],
            vec![],
            vec![],
        )
        .unwrap();
        let r = check_omega_group(&bad);
        assert!(r.find("neg.right_inverse").is_some());
    }

    #[test]
    fn products_with_zero_vanish_in_valid_structures() {
        for g in [gen_cyclic_ring(4), gen_cyclic_ring(6), gen_cyclic_ring(7)] {
            assert!(check_omega_group(&g).is_ok());
            for a in g.elements() {
                assert_eq!(g.binary(0, a, 0), 0);
                assert_eq!(g.binary(0, 0, a), 0);
            }
        }
    }

    #[test]
    fn dihedral_element_orders() {
        let s3 = gen_dihedral(3);
        let mut orders: Vec<_> = s3.elements().map(|a| s3.element_order(a)).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);
        assert!(!s3.is_abelian());
    }
}
