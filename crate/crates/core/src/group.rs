//! Enumerated finite groups of signed permutations: Weyl groups W, the
//! extended groups W-tilde, stabilizers of embedded subspaces, restricted
//! images, and exact comparisons.
//!
//! Tables are generated by breadth-first closure from simple reflections,
//! never from the structural order formulas -- those formulas are claims
//! the tests check against the enumerated tables.

use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::{unit_vec, RatVec, RowSpace};
use crate::root_system::{RootSystem, TypeLabel};
use crate::signed_perm::SignedPermutation;

/// Default cap on the rank of enumerated groups (B_7 has 645120 elements).
pub const DEFAULT_ENUM_CAP: usize = 7;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    /// Type A: plain permutations.
    Plain,
    /// Types B/C: all sign changes.
    FullSign,
    /// Type D: even numbers of sign changes.
    EvenSign,
    /// Type D adjoined with the diagram involution (odd sign changes).
    Extended,
    /// Stabilizers, restricted images, products.
    Derived,
}

#[derive(Clone, Debug)]
pub struct GroupTable {
    pub kind: GroupKind,
    pub type_label: Option<TypeLabel>,
    pub rank: Option<usize>,
    /// Ambient dimension the elements act on.
    pub size: usize,
    /// Generating set used for enumeration (empty for derived tables).
    pub generators: Vec<SignedPermutation>,
    /// All elements, sorted; membership is binary search.
    pub elements: Vec<SignedPermutation>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupComparison {
    Equal,
    ProperSubgroup,
    ProperSupergroup,
    Incomparable,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, w: &SignedPermutation) -> bool {
        self.elements.binary_search(w).is_ok()
    }

    fn from_elements(
        kind: GroupKind,
        type_label: Option<TypeLabel>,
        rank: Option<usize>,
        size: usize,
        generators: Vec<SignedPermutation>,
        set: BTreeSet<SignedPermutation>,
    ) -> Self {
        GroupTable {
            kind,
            type_label,
            rank,
            size,
            generators,
            elements: set.into_iter().collect(),
        }
    }

    /// Breadth-first closure from a generating set.
    pub fn closure(size: usize, generators: &[SignedPermutation]) -> BTreeSet<SignedPermutation> {
        let mut set = BTreeSet::new();
        set.insert(SignedPermutation::identity(size));
        let mut frontier: Vec<SignedPermutation> = vec![SignedPermutation::identity(size)];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for g in generators {
                    let prod = g.compose(w);
                    if set.insert(prod.clone()) {
                        next.push(prod);
                    }
                }
            }
            frontier = next;
        }
        set
    }

    /// Closure check: products of table elements stay in the table.
    /// Exhaustive for small tables, sampled diagonally for large ones.
    pub fn is_closed(&self) -> bool {
        let n = self.order();
        let step = if n > 400 { n / 400 + 1 } else { 1 };
        for (i, a) in self.elements.iter().enumerate().step_by(step) {
            for (j, b) in self.elements.iter().enumerate().step_by(step) {
                let _ = (i, j);
                if !self.contains(&a.compose(b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Does every element permute the given root set?
    pub fn preserves_roots(&self, rs: &RootSystem) -> bool {
        self.elements
            .iter()
            .all(|w| rs.roots.iter().all(|r| rs.contains_root(&w.apply(r))))
    }

    /// Subgroup stabilizing the span of `basis`, found by brute force:
    /// an element is kept iff it maps every basis vector back into the span.
    pub fn stabilizer_of_span(&self, basis: &[RatVec]) -> GroupTable {
        let span = RowSpace::new(self.size, basis);
        let set: BTreeSet<SignedPermutation> = self
            .elements
            .iter()
            .filter(|w| basis.iter().all(|b| span.contains(&w.apply(b))))
            .cloned()
            .collect();
        GroupTable::from_elements(
            GroupKind::Derived,
            self.type_label,
            self.rank,
            self.size,
            Vec::new(),
            set,
        )
    }

    /// Direct product acting on the concatenation of the coordinate spaces.
    pub fn product(&self, other: &GroupTable) -> GroupTable {
        let mut set = BTreeSet::new();
        for a in &self.elements {
            for b in &other.elements {
                set.insert(a.block_sum(b));
            }
        }
        let generators = self
            .generators
            .iter()
            .map(|g| g.block_sum(&SignedPermutation::identity(other.size)))
            .chain(
                other
                    .generators
                    .iter()
                    .map(|g| SignedPermutation::identity(self.size).block_sum(g)),
            )
            .collect();
        GroupTable::from_elements(
            GroupKind::Derived,
            None,
            None,
            self.size + other.size,
            generators,
            set,
        )
    }

    /// Subgroup generated by the reflections contained in this table.
    pub fn closure_of_reflections(&self) -> GroupTable {
        let refl: Vec<SignedPermutation> = self
            .elements
            .iter()
            .filter(|w| w.is_reflection())
            .cloned()
            .collect();
        let set = Self::closure(self.size, &refl);
        GroupTable::from_elements(
            GroupKind::Derived,
            self.type_label,
            self.rank,
            self.size,
            refl,
            set,
        )
    }
}

/// Basis of the embedded rank-n subspace inside the ambient space of a
/// rank-k system: coordinates 1..n for B/C/D, the trace-zero part of
/// coordinates 1..n+1 for type A.
pub fn embedded_basis(label: TypeLabel, size: usize, n: usize) -> Result<Vec<RatVec>> {
    let m = label.embedded_dim(n);
    if m > size {
        return Err(Error::SubspaceOutOfRange { n, size });
    }
    Ok(match label {
        TypeLabel::A => (1..m)
            .map(|i| {
                let mut v = unit_vec(size, i);
                let e = unit_vec(size, i - 1);
                for (x, y) in v.iter_mut().zip(e) {
                    *x = &*x - y;
                }
                v
            })
            .collect(),
        _ => (0..m).map(|i| unit_vec(size, i)).collect(),
    })
}

pub fn generate_weyl(rs: &RootSystem, cap: usize) -> Result<GroupTable> {
    if rs.rank > cap {
        return Err(Error::EnumerationCap { rank: rs.rank, cap });
    }
    let generators: Vec<SignedPermutation> = rs
        .simple_roots
        .iter()
        .map(|r| SignedPermutation::from_reflection(r).expect("classical reflections are signed"))
        .collect();
    let set = GroupTable::closure(rs.ambient_dim, &generators);
    let kind = match rs.type_label {
        TypeLabel::A => GroupKind::Plain,
        TypeLabel::B | TypeLabel::C => GroupKind::FullSign,
        TypeLabel::D => GroupKind::EvenSign,
    };
    Ok(GroupTable::from_elements(
        kind,
        Some(rs.type_label),
        Some(rs.rank),
        rs.ambient_dim,
        generators,
        set,
    ))
}

/// The extended group W-tilde. For type D this adjoins the diagram
/// involution sigma (swap of alpha_1 and alpha_2), realized as the sign
/// flip of coordinate 1; the result is the full hyperoctahedral group.
/// For A/B/C the extension is trivial and the Weyl table is returned.
pub fn generate_extended(rs: &RootSystem, cap: usize) -> Result<GroupTable> {
    if rs.type_label != TypeLabel::D {
        return generate_weyl(rs, cap);
    }
    if rs.rank > cap {
        return Err(Error::EnumerationCap { rank: rs.rank, cap });
    }
    let mut generators: Vec<SignedPermutation> = rs
        .simple_roots
        .iter()
        .map(|r| SignedPermutation::from_reflection(r).expect("classical reflections are signed"))
        .collect();
    generators.push(SignedPermutation::sign_flip(rs.ambient_dim, 0));
    let set = GroupTable::closure(rs.ambient_dim, &generators);
    Ok(GroupTable::from_elements(
        GroupKind::Extended,
        Some(rs.type_label),
        Some(rs.rank),
        rs.ambient_dim,
        generators,
        set,
    ))
}

/// Stabilizer of the embedded rank-n subspace: elements mapping the
/// subspace to itself, filtered by image-of-basis membership (the
/// index-set characterization is a theorem, not an assumption).
pub fn stabilizer(g: &GroupTable, n: usize) -> Result<GroupTable> {
    let label = g.type_label.ok_or(Error::InvalidParams(
        "stabilizer needs a table with root-system provenance".into(),
    ))?;
    if let Some(rank) = g.rank {
        if n > rank {
            return Err(Error::SubspaceOutOfRange { n, size: rank });
        }
    }
    let basis = embedded_basis(label, g.size, n)?;
    Ok(g.stabilizer_of_span(&basis))
}

/// Restriction of a subspace-preserving element to the embedded rank-n
/// subspace, as a signed permutation on its coordinates.
pub fn restrict_element(
    w: &SignedPermutation,
    label: TypeLabel,
    n: usize,
) -> Result<SignedPermutation> {
    w.restrict(label.embedded_dim(n))
}

#[derive(Clone, Debug)]
pub struct RestrictedImage {
    pub table: GroupTable,
    pub stabilizer_order: usize,
    pub kernel_order: usize,
}

/// Image of the stabilizer under restriction, with the kernel size
/// reported as |stabilizer| / |image|.
pub fn restricted_image(g: &GroupTable, n: usize) -> Result<RestrictedImage> {
    let label = g.type_label.ok_or(Error::InvalidParams(
        "restricted_image needs a table with root-system provenance".into(),
    ))?;
    let stab = stabilizer(g, n)?;
    let m = label.embedded_dim(n);
    let mut set = BTreeSet::new();
    for w in &stab.elements {
        set.insert(w.restrict(m)?);
    }
    let table =
        GroupTable::from_elements(GroupKind::Derived, Some(label), Some(n), m, Vec::new(), set);
    let stabilizer_order = stab.order();
    let kernel_order = stabilizer_order / table.order();
    Ok(RestrictedImage {
        table,
        stabilizer_order,
        kernel_order,
    })
}

/// Exact set comparison of two tables on the same ambient space.
pub fn compare_groups(a: &GroupTable, b: &GroupTable) -> Result<GroupComparison> {
    if a.size != b.size {
        return Err(Error::SizeMismatch {
            a: a.size,
            b: b.size,
        });
    }
    let a_in_b = a.elements.iter().all(|w| b.contains(w));
    let b_in_a = b.elements.iter().all(|w| a.contains(w));
    Ok(match (a_in_b, b_in_a) {
        (true, true) => GroupComparison::Equal,
        (true, false) => GroupComparison::ProperSubgroup,
        (false, true) => GroupComparison::ProperSupergroup,
        (false, false) => GroupComparison::Incomparable,
    })
}

impl Serialize for GroupTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("GroupTable", 5)?;
        s.serialize_field("type", &self.type_label)?;
        s.serialize_field("rank", &self.rank)?;
        s.serialize_field("kind", &self.kind)?;
        s.serialize_field("order", &self.order())?;
        s.serialize_field("elements", &self.elements)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::RootSystem;

    fn weyl(label: TypeLabel, rank: usize) -> GroupTable {
        let rs = RootSystem::build(label, rank).unwrap();
        generate_weyl(&rs, DEFAULT_ENUM_CAP).unwrap()
    }

    fn extended(label: TypeLabel, rank: usize) -> GroupTable {
        let rs = RootSystem::build(label, rank).unwrap();
        generate_extended(&rs, DEFAULT_ENUM_CAP).unwrap()
    }

    #[test]
    fn orders_match_structural_formulas() {
        assert_eq!(weyl(TypeLabel::A, 2).order(), 6);
        assert_eq!(weyl(TypeLabel::B, 3).order(), 48);
        assert_eq!(weyl(TypeLabel::D, 4).order(), 192);
        assert_eq!(extended(TypeLabel::D, 4).order(), 384);
        assert_eq!(extended(TypeLabel::B, 3).order(), 48);
        for label in TypeLabel::ALL {
            for rank in label.min_rank().max(2)..=5 {
                assert_eq!(weyl(label, rank).order(), label.weyl_order(rank));
            }
        }
    }

    #[test]
    fn extended_is_weyl_outside_type_d() {
        let w = weyl(TypeLabel::B, 3);
        let e = extended(TypeLabel::B, 3);
        assert_eq!(compare_groups(&w, &e).unwrap(), GroupComparison::Equal);
    }

    #[test]
    fn extended_d4_contains_single_sign_change() {
        let e = extended(TypeLabel::D, 4);
        assert!(e.contains(&SignedPermutation::sign_flip(4, 0)));
        let w = weyl(TypeLabel::D, 4);
        assert!(!w.contains(&SignedPermutation::sign_flip(4, 0)));
        assert_eq!(
            compare_groups(&w, &e).unwrap(),
            GroupComparison::ProperSubgroup
        );
    }

    #[test]
    fn weyl_d_has_even_sign_changes_only() {
        // derived property of the enumerated table, not an input
        let w = weyl(TypeLabel::D, 4);
        assert!(w.elements.iter().all(|e| e.sign_product() == 1));
    }

    #[test]
    fn tables_are_closed_and_preserve_roots() {
        for label in TypeLabel::ALL {
            let rank = label.min_propagation_rank();
            let rs = RootSystem::build(label, rank).unwrap();
            let w = generate_weyl(&rs, DEFAULT_ENUM_CAP).unwrap();
            assert!(w.is_closed());
            assert!(w.preserves_roots(&rs));
        }
        let rs = RootSystem::build(TypeLabel::D, 4).unwrap();
        let e = generate_extended(&rs, DEFAULT_ENUM_CAP).unwrap();
        assert!(e.is_closed());
        assert!(e.preserves_roots(&rs));
    }

    #[test]
    fn stabilizer_orders_match_product_formulas() {
        let fact = |m: usize| (1..=m).product::<usize>();
        // A: (k-n)! (n+1)!
        let w = weyl(TypeLabel::A, 3);
        for n in 1..=3 {
            let s = stabilizer(&w, n).unwrap();
            assert_eq!(s.order(), fact(3 - n) * fact(n + 1), "A_3 n={n}");
        }
        // B: 2^{k-n} (k-n)! 2^n n!
        let w = weyl(TypeLabel::B, 3);
        let s = stabilizer(&w, 2).unwrap();
        assert_eq!(s.order(), 16);
        // n = rank: whole group
        let s = stabilizer(&w, 3).unwrap();
        assert_eq!(s.order(), w.order());
        // D ambiguity resolved by brute force: 2^{k-1} (k-n)! n!
        let w = weyl(TypeLabel::D, 5);
        let s = stabilizer(&w, 4).unwrap();
        assert_eq!(s.order(), (1 << 4) * fact(1) * fact(4));
    }

    #[test]
    fn stabilizer_index_set_characterization_is_derived() {
        // for signed permutations, stabilizing the embedded subspace is
        // exactly preserving the coordinate index set
        let w = weyl(TypeLabel::B, 4);
        let s = stabilizer(&w, 2).unwrap();
        for e in &w.elements {
            let preserves_indices = (0..2).all(|i| e.perm()[i] < 2);
            assert_eq!(s.contains(e), preserves_indices);
        }
    }

    #[test]
    fn restrict_element_cases() {
        // identity restricts to identity
        let id = SignedPermutation::identity(5);
        assert!(restrict_element(&id, TypeLabel::D, 4)
            .unwrap()
            .is_identity());
        // D_5 element flipping signs of coordinates 1 and 5 restricts to a
        // single flip on D_4's space: an odd sign change in the image
        let mut signs = vec![1i8; 5];
        signs[0] = -1;
        signs[4] = -1;
        let w = SignedPermutation::new((0..5).collect(), signs).unwrap();
        let weyl_d5 = weyl(TypeLabel::D, 5);
        assert!(weyl_d5.contains(&w));
        let r = restrict_element(&w, TypeLabel::D, 4).unwrap();
        assert_eq!(r, SignedPermutation::sign_flip(4, 0));
        // A: a transposition restricts to the same transposition
        let t = SignedPermutation::transposition(5, 0, 1);
        let r = restrict_element(&t, TypeLabel::A, 2).unwrap();
        assert_eq!(r, SignedPermutation::transposition(3, 0, 1));
    }

    #[test]
    fn restricted_image_equalities() {
        // A and C: image is exactly the small Weyl group
        let img = restricted_image(&weyl(TypeLabel::A, 3), 2).unwrap();
        let small = weyl(TypeLabel::A, 2);
        assert_eq!(
            compare_groups(&img.table, &small).unwrap(),
            GroupComparison::Equal
        );
        assert_eq!(img.kernel_order, 1); // (k-n)! = 1!
        let img = restricted_image(&weyl(TypeLabel::A, 4), 2).unwrap();
        assert_eq!(img.kernel_order, 2); // (k-n)! = 2!
        let img = restricted_image(&weyl(TypeLabel::C, 4), 3).unwrap();
        assert_eq!(
            compare_groups(&img.table, &weyl(TypeLabel::C, 3)).unwrap(),
            GroupComparison::Equal
        );
        // D: image strictly contains W(D_n) and equals the hyperoctahedral group
        let img = restricted_image(&weyl(TypeLabel::D, 5), 4).unwrap();
        let small = weyl(TypeLabel::D, 4);
        assert_eq!(
            compare_groups(&small, &img.table).unwrap(),
            GroupComparison::ProperSubgroup
        );
        let hyper = extended(TypeLabel::D, 4);
        assert_eq!(
            compare_groups(&img.table, &hyper).unwrap(),
            GroupComparison::Equal
        );
        // extended restricts onto extended
        let img = restricted_image(&extended(TypeLabel::D, 5), 4).unwrap();
        assert_eq!(
            compare_groups(&img.table, &hyper).unwrap(),
            GroupComparison::Equal
        );
    }

    #[test]
    fn diagonal_stabilizer_of_product_restricts_to_factor() {
        // stabilizer of the diagonal in W x W restricts onto exactly W
        let w = weyl(TypeLabel::B, 2);
        let prod = w.product(&w);
        let basis: Vec<RatVec> = (0..2)
            .map(|i| {
                let mut v = unit_vec(4, i);
                v[i + 2] = crate::rat::rat(1);
                v
            })
            .collect();
        let stab = prod.stabilizer_of_span(&basis);
        assert_eq!(stab.order(), w.order());
        let mut restricted = BTreeSet::new();
        for e in &stab.elements {
            restricted.insert(e.restrict(2).unwrap());
        }
        assert_eq!(restricted.into_iter().collect::<Vec<_>>(), w.elements);
    }

    #[test]
    fn reflection_closure_recovers_extended_group() {
        let e = extended(TypeLabel::D, 4);
        let refl = e.closure_of_reflections();
        assert_eq!(compare_groups(&refl, &e).unwrap(), GroupComparison::Equal);
    }

    #[test]
    fn enumeration_cap_enforced() {
        let rs = RootSystem::build(TypeLabel::B, 5).unwrap();
        assert!(generate_weyl(&rs, 4).is_err());
    }

    #[test]
    #[ignore = "cap-scale enumeration, ~1 minute"]
    fn b7_enumerates_at_the_default_cap() {
        let rs = RootSystem::build(TypeLabel::B, 7).unwrap();
        let w = generate_weyl(&rs, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(w.order(), 645_120);
    }

    #[test]
    fn compare_requires_same_size() {
        let a = weyl(TypeLabel::B, 2);
        let b = weyl(TypeLabel::B, 3);
        assert!(compare_groups(&a, &b).is_err());
    }
}
