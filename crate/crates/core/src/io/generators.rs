//! Small example structures.

use crate::groupoid::FiniteGroupoid;
use crate::internal::InternalGroupoid;
use crate::omega::{OmegaGroup, Signature};
use crate::table::Table;

/// `Z/n` under addition, signature of groups.
pub fn gen_cyclic_group(n: usize) -> OmegaGroup {
    assert!(n >= 1, "a cyclic group needs n >= 1");
    OmegaGroup::tabulate("groups", n, &|a, b| (a + b) % n, &|a| (n - a) % n, &[], &[])
        .expect("cyclic tables are well-shaped")
}

/// `Z/n` as a ring, with one binary operation `mul`.
pub fn gen_cyclic_ring(n: usize) -> OmegaGroup {
    assert!(n >= 1, "a cyclic ring needs n >= 1");
    OmegaGroup::tabulate(
        "rings",
        n,
        &|a, b| (a + b) % n,
        &|a| (n - a) % n,
        &[("mul", &|a, b| a * b % n)],
        &[],
    )
    .expect("cyclic tables are well-shaped")
}

/// `Z/n` as a module over `Z/m`: one unary operation `r{k}`, `a ↦ k·a mod n`,
/// per scalar `k < m`. This is a valid Ω-group for every `m, n`; it is a
/// module in the usual sense when `n` divides `m`.
pub fn gen_module(m: usize, n: usize) -> OmegaGroup {
    assert!(m >= 1 && n >= 1, "a module needs m, n >= 1");
    let names: Vec<String> = (0..m).map(|k| format!("r{k}")).collect();
    let scalars: Vec<Box<dyn Fn(usize) -> usize>> = (0..m)
        .map(|k| Box::new(move |a: usize| k * a % n) as Box<dyn Fn(usize) -> usize>)
        .collect();
    let unary: Vec<(&str, &dyn Fn(usize) -> usize)> = names
        .iter()
        .zip(&scalars)
        .map(|(n, f)| (n.as_str(), f.as_ref()))
        .collect();
    OmegaGroup::tabulate(
        &format!("modules/Z{m}"),
        n,
        &|a, b| (a + b) % n,
        &|a| (n - a) % n,
        &[],
        &unary,
    )
    .expect("module tables are well-shaped")
}

/// The dihedral group of order `2n`. Element `e·n + k` is `s^e r^k`, with
/// `r^n = s^2 = 1` and `r s = s r^-1`.
pub fn gen_dihedral(n: usize) -> OmegaGroup {
    assert!(n >= 1, "a dihedral group needs n >= 1");
    let split = |x: usize| (x / n, x % n);
    let join = |e: usize, k: usize| e * n + k % n;
    OmegaGroup::tabulate(
        "groups",
        2 * n,
        &|x, y| {
            let ((e1, k1), (e2, k2)) = (split(x), split(y));
            let k1 = if e2 == 1 { n - k1 } else { k1 };
            join((e1 + e2) % 2, k1 + k2)
        },
        &|x| {
            let (e, k) = split(x);
            if e == 1 {
                x
            } else {
                join(0, n - k)
            }
        },
        &[],
        &[],
    )
    .expect("dihedral tables are well-shaped")
}

fn gf4_mul(a: usize, b: usize) -> usize {
    // elements are b0 + b1·x with x^2 = x + 1
    let mut acc = 0;
    for i in 0..2 {
        if b >> i & 1 == 1 {
            acc ^= a << i;
        }
    }
    if acc & 4 != 0 {
        acc ^= 0b111;
    }
    acc
}

/// The field with four elements as a vector space over itself: addition is
/// XOR on `{0, 1, 2, 3}` (2 is a root of `x^2 + x + 1`), with one unary
/// operation `r{k}` for multiplication by each scalar `k`.
pub fn gen_f4_space() -> OmegaGroup {
    let names: Vec<String> = (0..4).map(|k| format!("r{k}")).collect();
    let scalars: Vec<Box<dyn Fn(usize) -> usize>> = (0..4)
        .map(|k| Box::new(move |a: usize| gf4_mul(k, a)) as Box<dyn Fn(usize) -> usize>)
        .collect();
    let unary: Vec<(&str, &dyn Fn(usize) -> usize)> = names
        .iter()
        .zip(&scalars)
        .map(|(n, f)| (n.as_str(), f.as_ref()))
        .collect();
    OmegaGroup::tabulate("modules/F4", 4, &|a, b| a ^ b, &|a| a, &[], &unary)
        .expect("F4 tables are well-shaped")
}

/// `B × A` with componentwise operations, `(b, a)` stored at `b·|A| + a`.
pub fn gen_direct_product(b: &OmegaGroup, a: &OmegaGroup) -> OmegaGroup {
    let na = a.order();
    let n = b.order() * na;
    let split = |p: usize| (p / na, p % na);
    let pair = |x: usize, y: usize| x * na + y;
    let binary = (0..b.signature().binary_ops().len())
        .map(|op| {
            Table::from_fn(n, n, |p, q| {
                let ((x, y), (x2, y2)) = (split(p), split(q));
                pair(b.binary(op, x, x2), a.binary(op, y, y2))
            })
        })
        .collect();
    let unary = (0..b.signature().unary_ops().len())
        .map(|op| {
            (0..n)
                .map(|p| {
                    let (x, y) = split(p);
                    pair(b.unary(op, x), a.unary(op, y))
                })
                .collect()
        })
        .collect();
    OmegaGroup::from_parts(
        b.signature().clone(),
        Table::from_fn(n, n, |p, q| {
            let ((x, y), (x2, y2)) = (split(p), split(q));
            pair(b.add(x, x2), a.add(y, y2))
        }),
        (0..n)
            .map(|p| {
                let (x, y) = split(p);
                pair(b.neg(x), a.neg(y))
            })
            .collect(),
        binary,
        unary,
    )
    .expect("product tables are well-shaped")
}

/// The codiscrete groupoid on `G`: one morphism `(x, y)` from `x` to `y` for
/// every pair, stored at `x·|G| + y`, with `G × G` as morphism group.
pub fn gen_pair_groupoid(g: &OmegaGroup) -> InternalGroupoid {
    InternalGroupoid::new(
        FiniteGroupoid::codiscrete(g.order()),
        gen_direct_product(g, g),
        g.clone(),
    )
    .expect("pair groupoid has matching groups")
}

/// `G` as a groupoid with one object, `∘ = +`. This is an internal groupoid
/// exactly when `G` is abelian and every named binary operation is zero.
pub fn gen_one_object(g: &OmegaGroup) -> InternalGroupoid {
    InternalGroupoid::new(
        FiniteGroupoid::one_object(g),
        g.clone(),
        OmegaGroup::trivial(g.signature()),
    )
    .expect("one-object groupoid has matching groups")
}

/// The trivial structure in the signature of groups.
pub fn gen_trivial() -> OmegaGroup {
    OmegaGroup::trivial(&Signature::groups())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::internal::check_internal_groupoid;
    use crate::omega::check_omega_group;

    #[test]
    fn generators_pass_their_checkers() {
        for n in 1..=8 {
            assert!(check_omega_group(&gen_cyclic_group(n)).is_ok());
            assert!(check_omega_group(&gen_cyclic_ring(n)).is_ok());
            assert!(check_omega_group(&gen_dihedral(n)).is_ok());
            for m in 1..=4 {
                assert!(check_omega_group(&gen_module(m, n)).is_ok());
            }
        }
        assert!(check_omega_group(&gen_f4_space()).is_ok());
        assert!(check_omega_group(&gen_trivial()).is_ok());
    }

    #[test]
    fn f4_is_a_field() {
        for a in 1..4 {
            assert_eq!((1..4).filter(|&b| gf4_mul(a, b) == 1).count(), 1);
        }
        assert_eq!(gf4_mul(2, 2), 3);
    }

    #[test]
    fn dihedral_three_is_nonabelian_of_order_six() {
        let s3 = gen_dihedral(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn groupoid_generators() {
        assert!(check_internal_groupoid(&gen_pair_groupoid(&gen_cyclic_group(2))).is_ok());
        assert!(check_internal_groupoid(&gen_pair_groupoid(&gen_cyclic_ring(3))).is_ok());
        assert!(!check_internal_groupoid(&gen_one_object(&gen_dihedral(3))).is_ok());
        assert!(!check_internal_groupoid(&gen_one_object(&gen_cyclic_ring(4))).is_ok());
    }
}
