//! Subgroups as bit sets over element indices, plus quotients.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{group_from_trusted_table, Group};

/// A subgroup of some ambient group. Equality and hashing use the member set
/// only; the order is the population count.
#[derive(Debug, Clone)]
pub struct Subgroup {
    members: FixedBitSet,
    order: usize,
    normal: bool,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    /// By order, then by the sorted member lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&other.order).then_with(|| self.members.ones().cmp(other.members.ones()))
    }
}

impl Subgroup {
    /// Wraps a bit set already known to be closed under products and inverses.
    pub(crate) fn from_closed_set(g: &Group, members: FixedBitSet) -> Subgroup {
        debug_assert!(members.contains(0));
        let order = members.count_ones(..);
        let normal = is_union_of_classes(g, &members);
        Subgroup { members, order, normal }
    }

    /// Checks closure and wraps `elements` as a subgroup.
    pub fn from_elements(g: &Group, elements: impl IntoIterator<Item = usize>) -> Result<Subgroup> {
        let mut members = FixedBitSet::with_capacity(g.order());
        for x in elements {
            if x >= g.order() {
                return Err(Error::NotASubgroup(format!("element {x} out of range")));
            }
            members.insert(x);
        }
        if !members.contains(0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for a in members.ones() {
            if !members.contains(g.inv(a)) {
                return Err(Error::NotASubgroup(format!("inverse of {} missing", g.name(a))));
            }
            for b in members.ones() {
                if !members.contains(g.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!(
                        "{} · {} leaves the set",
                        g.name(a),
                        g.name(b)
                    )));
                }
            }
        }
        Ok(Subgroup::from_closed_set(g, members))
    }

    pub fn trivial(g: &Group) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(g.order());
        members.insert(0);
        Subgroup { members, order: 1, normal: true }
    }

    pub fn whole(g: &Group) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(g.order());
        members.insert_range(..);
        Subgroup { members, order: g.order(), normal: true }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    /// Sorted member indices.
    pub fn elements(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }
}

fn is_union_of_classes(g: &Group, members: &FixedBitSet) -> bool {
    let cc = g.classes();
    members.ones().all(|x| cc.members(cc.class_of(x)).iter().all(|&y| members.contains(y)))
}

/// Smallest subgroup containing `seeds`.
pub fn subgroup_generate(g: &Group, seeds: &[usize]) -> Subgroup {
    let mut members = FixedBitSet::with_capacity(g.order());
    members.insert(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &s in seeds {
            let y = g.mul(x, s);
            if !members.put(y) {
                queue.push_back(y);
            }
        }
    }
    Subgroup::from_closed_set(g, members)
}

/// Smallest subgroup containing both arguments.
pub fn subgroup_join(g: &Group, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let seeds: Vec<usize> = a.members.union(&b.members).collect();
    subgroup_generate(g, &seeds)
}

/// The set product `a·b` of two normal subgroups.
pub fn subgroup_product(g: &Group, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    for (s, which) in [(a, "left"), (b, "right")] {
        if !s.is_normal() {
            return Err(Error::NotNormal(format!("{which} factor of order {}", s.order())));
        }
    }
    let mut members = FixedBitSet::with_capacity(g.order());
    for x in a.members.ones() {
        for y in b.members.ones() {
            members.insert(g.mul(x, y));
        }
    }
    let product = Subgroup::from_closed_set(g, members);
    debug_assert_eq!(product, subgroup_join(g, a, b));
    Ok(product)
}

pub fn subgroup_intersection(g: &Group, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut members = a.members.clone();
    members.intersect_with(&b.members);
    Subgroup::from_closed_set(g, members)
}

/// True iff `s` is a union of conjugacy classes.
pub fn is_normal(g: &Group, s: &Subgroup) -> bool {
    is_union_of_classes(g, &s.members)
}

/// `G/N` on cosets ordered by smallest member, with the projection map.
pub fn quotient_group(g: &Group, n: &Subgroup) -> Result<(Group, Vec<usize>)> {
    if !n.is_normal() {
        return Err(Error::NotNormal(format!("subgroup of order {}", n.order())));
    }
    let mut coset_map = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_map[x] != usize::MAX {
            continue;
        }
        for y in n.members.ones() {
            coset_map[g.mul(x, y)] = reps.len();
        }
        reps.push(x);
    }
    let q = reps.len();
    let mut mul = vec![0u32; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            mul[i * q + j] = coset_map[g.mul(a, b)] as u32;
        }
    }
    let names = reps.iter().map(|&r| format!("[{}]", g.name(r))).collect();
    Ok((group_from_trusted_table(mul, q, names), coset_map))
}

/// The subgroup as a group in its own right, with the embedding into `g`.
/// Elements keep their ambient order and names.
pub fn subgroup_as_group(g: &Group, s: &Subgroup) -> (Group, Vec<usize>) {
    let embedding = s.elements();
    let mut local = vec![usize::MAX; g.order()];
    for (i, &x) in embedding.iter().enumerate() {
        local[x] = i;
    }
    let m = embedding.len();
    let mut mul = vec![0u32; m * m];
    for (i, &a) in embedding.iter().enumerate() {
        for (j, &b) in embedding.iter().enumerate() {
            mul[i * m + j] = local[g.mul(a, b)] as u32;
        }
    }
    let names = embedding.iter().map(|&x| g.name(x).to_string()).collect();
    (group_from_trusted_table(mul, m, names), embedding)
}

/// Every subgroup, found by repeatedly adjoining one element to known
/// subgroups. Sorted by `(order, members)`.
pub fn all_subgroups(g: &Group) -> Vec<Subgroup> {
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let trivial = Subgroup::trivial(g);
    seen.insert(trivial.clone());
    let mut queue = VecDeque::from([trivial]);
    while let Some(h) = queue.pop_front() {
        let gens: Vec<usize> = h.elements();
        for x in g.elements() {
            if h.contains(x) {
                continue;
            }
            let mut seeds = gens.clone();
            seeds.push(x);
            let next = subgroup_generate(g, &seeds);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen.into_iter().collect();
    out.sort();
    out
}
