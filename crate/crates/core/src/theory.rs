//! Supercharacter theories: partitions of the group and of `Irr(G)`, the
//! superclass (central Schur ring) test, the dual character partition, and
//! the normal supercharacter theories built from families of normal
//! subgroups.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::chartab::{character_table, idempotent_supports, CharacterTable, IdempotentSupport};
use crate::classes::{structure_constants, ConjugacyClasses, StructureConstants};
use crate::cyclotomic::{Cyclotomic, CyclotomicFraction};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::{all_normal_subgroups, closure_a, n_circle, NormalSet};
use crate::subgroup::{subgroup_intersection, Subgroup};

/// A group together with the data every theory computation needs.
#[derive(Debug, Clone)]
pub struct GroupData {
    group: Group,
    sc: StructureConstants,
    ct: CharacterTable,
    es: IdempotentSupport,
}

impl GroupData {
    pub fn new(group: Group) -> Result<Self> {
        Self::with_seed(group, 0)
    }

    pub fn with_seed(group: Group, seed: u64) -> Result<Self> {
        let sc = structure_constants(&group, group.classes());
        let ct = crate::chartab::character_table_with_seed(&group, group.classes(), &sc, seed)?;
        let es = idempotent_supports(&ct);
        Ok(GroupData { group, sc, ct, es })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        self.group.classes()
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn table(&self) -> &CharacterTable {
        &self.ct
    }

    pub fn supports(&self) -> &IdempotentSupport {
        &self.es
    }

    pub fn normal_subgroups(&self) -> NormalSet {
        all_normal_subgroups(&self.group, &self.ct)
    }
}

/// Convenience wrapper matching [`character_table`] for callers that only
/// hold a group.
pub fn table_of(g: &Group) -> Result<CharacterTable> {
    character_table(g, g.classes(), &structure_constants(g, g.classes()))
}

/// Disjoint nonempty parts covering the group, sorted by smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupPartition {
    parts: Vec<FixedBitSet>,
}

impl GroupPartition {
    pub fn new(order: usize, parts: Vec<FixedBitSet>) -> Result<Self> {
        let mut seen = FixedBitSet::with_capacity(order);
        for part in &parts {
            if part.len() != order {
                return Err(Error::NotAPartition("part over a different group".into()));
            }
            if part.is_clear() {
                return Err(Error::NotAPartition("empty part".into()));
            }
            if !seen.is_disjoint(part) {
                let x = seen.intersection(part).next().unwrap();
                return Err(Error::NotAPartition(format!("element {x} lies in two parts")));
            }
            seen.union_with(part);
        }
        if let Some(x) = seen.zeroes().next() {
            return Err(Error::NotAPartition(format!("element {x} is not covered")));
        }
        let mut parts = parts;
        parts.sort_by_key(|p| p.minimum());
        Ok(GroupPartition { parts })
    }

    pub fn from_lists(order: usize, lists: &[Vec<usize>]) -> Result<Self> {
        let parts = lists
            .iter()
            .map(|l| {
                let mut b = FixedBitSet::with_capacity(order);
                for &x in l {
                    if x >= order {
                        return Err(Error::NotAPartition(format!("element {x} out of range")));
                    }
                    if b.put(x) {
                        return Err(Error::NotAPartition(format!("element {x} repeated")));
                    }
                }
                Ok(b)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(order, parts)
    }

    /// Conjugacy classes as a partition.
    pub fn classes(g: &Group) -> Self {
        let cc = g.classes();
        let lists: Vec<Vec<usize>> = (0..cc.count()).map(|c| cc.members(c).to_vec()).collect();
        Self::from_lists(g.order(), &lists).expect("classes partition the group")
    }

    /// `{e}` and everything else.
    pub fn coarsest(g: &Group) -> Self {
        let rest: Vec<usize> = (1..g.order()).collect();
        let lists = if rest.is_empty() { vec![vec![0]] } else { vec![vec![0], rest] };
        Self::from_lists(g.order(), &lists).expect("valid partition")
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[FixedBitSet] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &FixedBitSet {
        &self.parts[i]
    }

    pub fn part_elements(&self, i: usize) -> Vec<usize> {
        self.parts[i].ones().collect()
    }

    pub fn part_of(&self, x: usize) -> usize {
        self.parts.iter().position(|p| p.contains(x)).expect("partition covers the group")
    }

    /// Part sizes in part order.
    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.count_ones(..)).collect()
    }

    /// Sorted part sizes.
    pub fn size_profile(&self) -> Vec<usize> {
        let mut s = self.sizes();
        s.sort_unstable();
        s
    }

    pub fn has_identity_part(&self) -> bool {
        self.parts.first().is_some_and(|p| p.count_ones(..) == 1 && p.contains(0))
    }
}

/// True iff every part of `a` lies inside a part of `b`.
pub fn refines(a: &GroupPartition, b: &GroupPartition) -> bool {
    a.parts().iter().all(|p| b.parts().iter().any(|q| p.is_subset(q)))
}

/// Disjoint nonempty sets of character indices covering `Irr(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IrrPartition {
    parts: Vec<Vec<usize>>,
}

impl IrrPartition {
    pub fn new(count: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; count];
        let mut parts = parts;
        for part in parts.iter_mut() {
            if part.is_empty() {
                return Err(Error::NotAPartition("empty character part".into()));
            }
            part.sort_unstable();
            for &i in part.iter() {
                if i >= count || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::NotAPartition(format!("character {i} misplaced")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::NotAPartition(format!("character {i} is not covered")));
        }
        parts.sort();
        Ok(IrrPartition { parts })
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }
}

/// Why a partition is not a superclass theory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SuperclassWitness {
    IdentityNotAPart,
    NotUnionOfClasses { part: usize, element: usize },
    /// `P̂·Q̂` has different coefficients on two classes of the same part.
    ProductNotInSpan {
        left: usize,
        right: usize,
        target: usize,
        class_a: usize,
        coefficient_a: u64,
        class_b: usize,
        coefficient_b: u64,
    },
}

impl fmt::Display for SuperclassWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuperclassWitness::IdentityNotAPart => write!(f, "{{e}} is not a part"),
            SuperclassWitness::NotUnionOfClasses { part, element } => {
                write!(f, "part {part} is not a union of classes (at element {element})")
            }
            SuperclassWitness::ProductNotInSpan { left, right, target, class_a, coefficient_a, class_b, coefficient_b } => write!(
                f,
                "product of parts {left} and {right} has coefficient {coefficient_a} on class {class_a} \
                 but {coefficient_b} on class {class_b}, both inside part {target}"
            ),
        }
    }
}

/// Record of the superclass checks that passed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuperclassCertificate {
    pub identity_part: bool,
    pub unions_of_classes: bool,
    pub product_closed: bool,
    pub inverse_closed: bool,
    pub part_count: usize,
}

/// Checks that `{e}` is a part, every part is a union of classes, and the
/// span of the part sums is closed under multiplication.
///
/// Products are expanded on the class sums through the structure constants;
/// since parts are unions of classes, a product lies in the span exactly
/// when its coefficients are constant on the classes of every part.
pub fn verify_superclass_theory(
    g: &Group,
    cc: &ConjugacyClasses,
    sc: &StructureConstants,
    p: &GroupPartition,
) -> std::result::Result<SuperclassCertificate, SuperclassWitness> {
    if !p.has_identity_part() {
        return Err(SuperclassWitness::IdentityNotAPart);
    }
    let mut class_part = vec![usize::MAX; cc.count()];
    let mut part_classes: Vec<Vec<usize>> = vec![Vec::new(); p.len()];
    for (i, part) in p.parts().iter().enumerate() {
        for x in part.ones() {
            let c = cc.class_of(x);
            if let Some(&y) = cc.members(c).iter().find(|&&y| !part.contains(y)) {
                let _ = y;
                return Err(SuperclassWitness::NotUnionOfClasses { part: i, element: x });
            }
            if class_part[c] == usize::MAX {
                class_part[c] = i;
                part_classes[i].push(c);
            }
        }
    }
    let k = cc.count();
    let mut coef = vec![0u64; k];
    for left in 0..p.len() {
        for right in left..p.len() {
            coef.fill(0);
            for &i in &part_classes[left] {
                for &j in &part_classes[right] {
                    for (l, &a) in sc.product(i, j).iter().enumerate() {
                        coef[l] += a;
                    }
                }
            }
            for (target, classes) in part_classes.iter().enumerate() {
                let first = classes[0];
                if let Some(&other) = classes.iter().find(|&&c| coef[c] != coef[first]) {
                    return Err(SuperclassWitness::ProductNotInSpan {
                        left,
                        right,
                        target,
                        class_a: first,
                        coefficient_a: coef[first],
                        class_b: other,
                        coefficient_b: coef[other],
                    });
                }
            }
        }
    }
    let inverse_closed = p.parts().iter().all(|part| {
        let inverse: FixedBitSet = {
            let mut b = FixedBitSet::with_capacity(g.order());
            b.extend(part.ones().map(|x| g.inv(x)));
            b
        };
        p.parts().contains(&inverse)
    });
    Ok(SuperclassCertificate {
        identity_part: true,
        unions_of_classes: true,
        product_closed: true,
        inverse_closed,
        part_count: p.len(),
    })
}

/// `Σ_{g∈K} χ(g)/χ(1)` for every part `K`.
fn normalized_part_sums(ct: &CharacterTable, cc: &ConjugacyClasses, k: &GroupPartition, character: usize) -> Vec<CyclotomicFraction> {
    let e = ct.modulus();
    k.parts()
        .iter()
        .map(|part| {
            let mut sum = Cyclotomic::zero(e);
            let mut counted = vec![false; cc.count()];
            for x in part.ones() {
                let c = cc.class_of(x);
                if !std::mem::replace(&mut counted[c], true) {
                    sum = &sum + &ct.value(character, c).scale(cc.size(c) as i64);
                }
            }
            CyclotomicFraction::new(sum, ct.degree(character) as i64)
        })
        .collect()
}

/// Groups characters whose normalized part-sum vectors agree.
pub fn dual_partition(ct: &CharacterTable, cc: &ConjugacyClasses, k: &GroupPartition) -> Result<IrrPartition> {
    let mut groups: HashMap<Vec<CyclotomicFraction>, Vec<usize>> = HashMap::new();
    for i in 0..ct.len() {
        groups.entry(normalized_part_sums(ct, cc, k, i)).or_default().push(i);
    }
    let x = IrrPartition::new(ct.len(), groups.into_values().collect())?;
    if x.len() != k.len() {
        return Err(Error::SizeMismatch { characters: x.len(), classes: k.len() });
    }
    Ok(x)
}

/// `σ_X = Σ_{χ∈X} χ(1)·χ`, one value per class.
pub fn supercharacter_values(ct: &CharacterTable, x_part: &[usize]) -> Vec<Cyclotomic> {
    (0..ct.len())
        .map(|l| {
            x_part.iter().fold(Cyclotomic::zero(ct.modulus()), |acc, &i| {
                &acc + &ct.value(i, l).scale(ct.degree(i) as i64)
            })
        })
        .collect()
}

/// Which axioms were checked for a theory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// `{e}` is a superclass.
    pub identity_part: bool,
    /// As many character parts as superclasses.
    pub equal_part_counts: bool,
    /// Each supercharacter is constant on each superclass.
    pub supercharacters_constant: bool,
    /// Superclasses are unions of conjugacy classes.
    pub unions_of_classes: bool,
    /// The span of superclass sums is a subring of the centre.
    pub product_closed: bool,
    /// Inverting a superclass gives a superclass.
    pub inverse_closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupercharacterTheory {
    k: GroupPartition,
    x: IrrPartition,
    supercharacters: Vec<Vec<Cyclotomic>>,
    certificate: Certificate,
}

impl SupercharacterTheory {
    /// Verifies every axiom for the pair and records the certificate.
    pub fn assemble(data: &GroupData, k: GroupPartition, x: IrrPartition) -> Result<Self> {
        let cc = data.classes();
        let cert = verify_superclass_theory(data.group(), cc, data.structure_constants(), &k)
            .map_err(|w| Error::VerificationFailed(w.to_string()))?;
        if !cert.inverse_closed {
            return Err(Error::VerificationFailed("superclasses are not closed under inversion".into()));
        }
        if x.len() != k.len() {
            return Err(Error::SizeMismatch { characters: x.len(), classes: k.len() });
        }
        let supercharacters: Vec<Vec<Cyclotomic>> =
            x.parts().iter().map(|part| supercharacter_values(data.table(), part)).collect();
        for (xi, values) in supercharacters.iter().enumerate() {
            for (ki, part) in k.parts().iter().enumerate() {
                let first = cc.class_of(part.minimum().unwrap());
                if part.ones().any(|y| values[cc.class_of(y)] != values[first]) {
                    return Err(Error::VerificationFailed(format!(
                        "supercharacter {xi} is not constant on superclass {ki}"
                    )));
                }
            }
        }
        Ok(SupercharacterTheory {
            k,
            x,
            supercharacters,
            certificate: Certificate {
                identity_part: cert.identity_part,
                equal_part_counts: true,
                supercharacters_constant: true,
                unions_of_classes: cert.unions_of_classes,
                product_closed: cert.product_closed,
                inverse_closed: cert.inverse_closed,
            },
        })
    }

    /// Builds the theory whose superclasses are `k`, deriving the characters.
    pub fn from_superclasses(data: &GroupData, k: GroupPartition) -> Result<Self> {
        let cc = data.classes();
        verify_superclass_theory(data.group(), cc, data.structure_constants(), &k)
            .map_err(|w| Error::VerificationFailed(w.to_string()))?;
        let x = dual_partition(data.table(), cc, &k)?;
        Self::assemble(data, k, x)
    }

    pub fn superclasses(&self) -> &GroupPartition {
        &self.k
    }

    pub fn character_parts(&self) -> &IrrPartition {
        &self.x
    }

    /// Values of `σ_X` per class, one row per character part.
    pub fn supercharacters(&self) -> &[Vec<Cyclotomic>] {
        &self.supercharacters
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }
}

/// The superclasses `{N° ≠ ∅ : N ∈ family}`.
pub fn n_circle_partition(g: &Group, family: &NormalSet) -> GroupPartition {
    let parts: Vec<FixedBitSet> =
        (0..family.len()).map(|i| n_circle(family, i)).filter(|p| !p.is_clear()).collect();
    GroupPartition::new(g.order(), parts).expect("N° sets partition the group")
}

/// The normal supercharacter theory generated by `seeds`.
pub fn nsct_from_normals(data: &GroupData, seeds: &[Subgroup]) -> Result<SupercharacterTheory> {
    let family = closure_a(data.group(), seeds)?;
    nsct_from_family(data, &family)
}

/// The normal supercharacter theory of an already closed family.
pub fn nsct_from_family(data: &GroupData, family: &NormalSet) -> Result<SupercharacterTheory> {
    SupercharacterTheory::from_superclasses(data, n_circle_partition(data.group(), family))
}

/// Classes grouped by equal `E` sets, expanded to elements.
pub fn kg_partition(g: &Group, cc: &ConjugacyClasses, es: &IdempotentSupport) -> GroupPartition {
    let mut groups: HashMap<&FixedBitSet, Vec<usize>> = HashMap::new();
    for c in 0..cc.count() {
        groups.entry(es.get(c)).or_default().extend_from_slice(cc.members(c));
    }
    let lists: Vec<Vec<usize>> = groups.into_values().collect();
    GroupPartition::from_lists(g.order(), &lists).expect("classes partition the group")
}

/// `U_g`: the union of the classes `h` with `E_h ⊆ E_g`. Checked to be a
/// normal subgroup equal to `∩{ker χ : χ ∉ E_g}`.
pub fn ug_subgroup(data: &GroupData, element: usize) -> Result<Subgroup> {
    let (g, cc, es, ct) = (data.group(), data.classes(), data.supports(), data.table());
    let eg = es.get(cc.class_of(element));
    let elements: Vec<usize> =
        (0..cc.count()).filter(|&c| es.get(c).is_subset(eg)).flat_map(|c| cc.members(c).to_vec()).collect();
    let u = Subgroup::from_elements(g, elements)?;
    if !u.is_normal() {
        return Err(Error::NotASubgroup("U_g is not normal".into()));
    }
    let meet = (0..ct.len())
        .filter(|&i| !eg.contains(i))
        .fold(Subgroup::whole(g), |acc, i| subgroup_intersection(g, &acc, &ct.kernels()[i]));
    if meet != u {
        return Err(Error::NotASubgroup("U_g differs from the kernel intersection".into()));
    }
    Ok(u)
}

/// The finest normal supercharacter theory, built twice: from the `E` sets
/// and from the full normal-subgroup lattice. The two must agree.
pub fn finest_nsct(data: &GroupData) -> Result<SupercharacterTheory> {
    let from_supports = kg_partition(data.group(), data.classes(), data.supports());
    let theory = nsct_from_family(data, &data.normal_subgroups())?;
    if theory.superclasses() != &from_supports {
        return Err(Error::MismatchBug("K_g partition differs from the N° partition".into()));
    }
    Ok(theory)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::subgroup::subgroup_generate;

    fn data(name: &str) -> GroupData {
        GroupData::new(catalog::group(name).unwrap()).unwrap()
    }

    fn named(g: &Group, names: &[&str]) -> Vec<usize> {
        names.iter().map(|n| g.element_by_name(n).unwrap()).collect()
    }

    #[test]
    fn coarsest_and_classes_verify() {
        for name in ["C4", "S3", "Q8", "A4"] {
            let d = data(name);
            let (g, cc, sc) = (d.group(), d.classes(), d.structure_constants());
            assert!(verify_superclass_theory(g, cc, sc, &GroupPartition::coarsest(g)).is_ok());
            assert!(verify_superclass_theory(g, cc, sc, &GroupPartition::classes(g)).is_ok());
            let x = dual_partition(d.table(), cc, &GroupPartition::coarsest(g)).unwrap();
            assert_eq!(x.parts()[0], vec![0]);
            let singles = dual_partition(d.table(), cc, &GroupPartition::classes(g)).unwrap();
            assert!(singles.parts().iter().all(|p| p.len() == 1));
        }
    }

    #[test]
    fn c4_partitions() {
        let d = data("C4");
        let g = d.group();
        let good = GroupPartition::from_lists(4, &[named(g, &["1"]), named(g, &["g^2"]), named(g, &["g", "g^3"])]).unwrap();
        assert!(verify_superclass_theory(g, d.classes(), d.structure_constants(), &good).is_ok());
        let bad = GroupPartition::from_lists(4, &[named(g, &["1"]), named(g, &["g"]), named(g, &["g^2", "g^3"])]).unwrap();
        let witness = verify_superclass_theory(g, d.classes(), d.structure_constants(), &bad).unwrap_err();
        assert!(matches!(witness, SuperclassWitness::ProductNotInSpan { .. }), "{witness:?}");
        // The span oracle: ĝ·ĝ = g², which is not a combination of 1, ĝ and g² + g³.
        assert!(dual_partition(d.table(), d.classes(), &bad).is_err());
    }

    #[test]
    fn non_class_union_is_rejected() {
        let d = data("S3");
        let g = d.group();
        let t = named(g, &["(1 2)"]);
        let rest: Vec<usize> = (1..6).filter(|x| !t.contains(x)).collect();
        let p = GroupPartition::from_lists(6, &[vec![0], t, rest]).unwrap();
        let w = verify_superclass_theory(g, d.classes(), d.structure_constants(), &p).unwrap_err();
        assert!(matches!(w, SuperclassWitness::NotUnionOfClasses { .. }));
    }

    #[test]
    fn partition_validation() {
        assert!(GroupPartition::from_lists(3, &[vec![0], vec![1]]).is_err());
        assert!(GroupPartition::from_lists(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(GroupPartition::from_lists(3, &[vec![0], vec![], vec![1, 2]]).is_err());
        assert!(IrrPartition::new(3, vec![vec![0], vec![1, 1, 2]]).is_err());
    }

    #[test]
    fn nsct_basics() {
        let d = data("C2");
        let t = nsct_from_normals(&d, &[]).unwrap();
        assert_eq!(t.superclasses(), &GroupPartition::coarsest(d.group()));

        let d = data("C3xC4");
        let g = d.group();
        let seeds = [subgroup_generate(g, &named(g, &["(g,1)"])), subgroup_generate(g, &named(g, &["(1,h)"]))];
        let t = nsct_from_normals(&d, &seeds).unwrap();
        assert_eq!(t.superclasses().size_profile(), vec![1, 2, 3, 6]);
    }

    #[test]
    fn kg_partition_c3() {
        let d = data("C3");
        let k = kg_partition(d.group(), d.classes(), d.supports());
        // g and g^2 move the same two characters, so they share a part.
        assert_eq!(k.len(), 2);
        assert!(k.has_identity_part());
        assert_eq!(finest_nsct(&d).unwrap().superclasses().len(), 2);
    }

    #[test]
    fn supercharacter_of_everything_is_regular() {
        let d = data("D4");
        let all: Vec<usize> = (0..d.table().len()).collect();
        let reg = supercharacter_values(d.table(), &all);
        assert!(reg[0].is_integer(8));
        assert!(reg[1..].iter().all(Cyclotomic::is_zero));
        assert!(supercharacter_values(d.table(), &[0]).iter().all(|v| v.is_integer(1)));
    }

    #[test]
    fn refinement() {
        let d = data("C2xC4");
        let g = d.group();
        let classes = GroupPartition::classes(g);
        let finest = finest_nsct(&d).unwrap();
        assert!(refines(&classes, &classes));
        assert!(refines(&classes, finest.superclasses()));
        assert!(refines(finest.superclasses(), &GroupPartition::coarsest(g)));
        assert!(!refines(&GroupPartition::coarsest(g), finest.superclasses()));
    }

    #[test]
    fn ug_examples() {
        let d = data("S5");
        let g = d.group();
        assert_eq!(ug_subgroup(&d, 0).unwrap().order(), 1);
        assert_eq!(ug_subgroup(&d, g.element_by_name("(1 2 3)").unwrap()).unwrap().order(), 60);
        assert_eq!(ug_subgroup(&d, g.element_by_name("(1 2)").unwrap()).unwrap().order(), 120);
    }
}
