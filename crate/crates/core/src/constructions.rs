//! Automorphism-orbit theories, the `*`-product over a normal subgroup, and
//! membership tests for AutSup, Sup* (single products) and NSup.

use std::collections::{BTreeSet, HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::automorphism::{
    automorphism_group, automorphisms_as_group, close_automorphisms, generating_set, is_automorphism, Automorphism,
    DEFAULT_AUT_SEARCH_CAP,
};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::lattice::{closure_a, NormalSet};
use crate::subgroup::{all_subgroups, quotient_group, subgroup_as_group, Subgroup};
use crate::theory::{n_circle_partition, GroupData, GroupPartition, IrrPartition, SupercharacterTheory};

/// Largest automorphism group scanned by [`in_autsup`] by default.
pub const DEFAULT_AUT_CAP: usize = 64;

/// Most closed families visited by [`in_nsup`].
pub const NSUP_FAMILY_CAP: usize = 1 << 14;

/// Union-find over `0..n`, returning the blocks sorted by smallest member.
fn blocks(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(Vec::new());
        }
        out[slot[r]].push(x);
    }
    out
}

/// How each automorphism permutes the classes and the irreducible characters.
#[derive(Debug, Clone)]
struct InducedPermutations {
    on_classes: Vec<Vec<usize>>,
    on_irr: Vec<Vec<usize>>,
}

/// `χ^α(g) = χ(α(g))`, matched back to a row of the table.
fn induced_permutations(data: &GroupData, maps: &[Automorphism]) -> InducedPermutations {
    let (ct, cc) = (data.table(), data.classes());
    let rows: HashMap<&[Cyclotomic], usize> = (0..ct.len()).map(|i| (ct.row(i), i)).collect();
    let mut on_classes = Vec::with_capacity(maps.len());
    let mut on_irr = Vec::with_capacity(maps.len());
    for m in maps {
        let image_class: Vec<usize> = (0..cc.count()).map(|c| cc.class_of(m[cc.rep(c)])).collect();
        on_irr.push(
            (0..ct.len())
                .map(|i| {
                    let twisted: Vec<Cyclotomic> = image_class.iter().map(|&c| ct.value(i, c).clone()).collect();
                    rows[twisted.as_slice()]
                })
                .collect(),
        );
        on_classes.push(image_class);
    }
    InducedPermutations { on_classes, on_irr }
}

fn orbits(n: usize, perms: &[&Vec<usize>]) -> Vec<Vec<usize>> {
    blocks(n, perms.iter().flat_map(|p| p.iter().enumerate().map(|(i, &j)| (i, j))))
}

/// A group of automorphisms together with its orbits on classes and on
/// irreducible characters.
#[derive(Debug, Clone)]
pub struct AutAction {
    automorphisms: Vec<Automorphism>,
    orbit_on_classes: Vec<Vec<usize>>,
    orbit_on_irr: Vec<Vec<usize>>,
}

impl AutAction {
    /// Checks each map, closes the set under composition, and computes orbits.
    pub fn new(data: &GroupData, maps: &[Automorphism]) -> Result<Self> {
        let g = data.group();
        if let Some(bad) = maps.iter().position(|m| !is_automorphism(g, m)) {
            return Err(Error::NotAutomorphism(format!("map {bad} is not a bijective homomorphism")));
        }
        let automorphisms = close_automorphisms(g.order(), maps);
        let induced = induced_permutations(data, &automorphisms);
        let all: Vec<usize> = (0..automorphisms.len()).collect();
        Ok(Self::from_induced(data, &automorphisms, &induced, &all))
    }

    fn from_induced(data: &GroupData, auts: &[Automorphism], induced: &InducedPermutations, members: &[usize]) -> Self {
        fn pick<'a>(perms: &'a [Vec<usize>], members: &[usize]) -> Vec<&'a Vec<usize>> {
            members.iter().map(|&i| &perms[i]).collect()
        }
        AutAction {
            automorphisms: members.iter().map(|&i| auts[i].clone()).collect(),
            orbit_on_classes: orbits(data.classes().count(), &pick(&induced.on_classes, members)),
            orbit_on_irr: orbits(data.table().len(), &pick(&induced.on_irr, members)),
        }
    }

    pub fn automorphisms(&self) -> &[Automorphism] {
        &self.automorphisms
    }

    pub fn orbit_on_classes(&self) -> &[Vec<usize>] {
        &self.orbit_on_classes
    }

    pub fn orbit_on_irr(&self) -> &[Vec<usize>] {
        &self.orbit_on_irr
    }

    /// Orbits on classes expanded to element sets.
    pub fn superclasses(&self, data: &GroupData) -> GroupPartition {
        orbit_superclasses(data, &self.orbit_on_classes)
    }
}

fn orbit_superclasses(data: &GroupData, orbits: &[Vec<usize>]) -> GroupPartition {
    let cc = data.classes();
    let lists: Vec<Vec<usize>> =
        orbits.iter().map(|o| o.iter().flat_map(|&c| cc.members(c).iter().copied()).collect()).collect();
    GroupPartition::from_lists(data.group().order(), &lists).expect("class orbits partition the group")
}

/// The theory whose superclasses are unions of orbits of the group generated
/// by `maps` on the classes.
pub fn autsup_theory(data: &GroupData, maps: &[Automorphism]) -> Result<SupercharacterTheory> {
    let action = AutAction::new(data, maps)?;
    let x = IrrPartition::new(data.table().len(), action.orbit_on_irr.clone())?;
    SupercharacterTheory::assemble(data, action.superclasses(data), x)
}

/// A normal subgroup with its subgroup and quotient data.
#[derive(Debug, Clone)]
pub struct NormalSplit {
    n: Subgroup,
    sub: GroupData,
    embedding: Vec<usize>,
    quotient: GroupData,
    coset_map: Vec<usize>,
}

impl NormalSplit {
    pub fn new(data: &GroupData, n: &Subgroup) -> Result<Self> {
        let g = data.group();
        let (qg, coset_map) = quotient_group(g, n)?;
        let (sg, embedding) = subgroup_as_group(g, n);
        Ok(NormalSplit {
            n: n.clone(),
            sub: GroupData::new(sg)?,
            embedding,
            quotient: GroupData::new(qg)?,
            coset_map,
        })
    }

    pub fn normal(&self) -> &Subgroup {
        &self.n
    }

    /// `N` as a group in its own right; element `i` is `embedding()[i]` in `G`.
    pub fn sub(&self) -> &GroupData {
        &self.sub
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    pub fn quotient(&self) -> &GroupData {
        &self.quotient
    }

    /// Coset index of each element of `G`.
    pub fn coset_map(&self) -> &[usize] {
        &self.coset_map
    }

    /// The finest theory of `N` whose superclasses are unions of `G`-classes.
    pub fn finest_invariant_theory(&self, data: &GroupData) -> Result<SupercharacterTheory> {
        let cc = data.classes();
        let local: HashMap<usize, usize> = self.embedding.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut seen = vec![false; cc.count()];
        let mut lists = Vec::new();
        for &x in &self.embedding {
            let c = cc.class_of(x);
            if !std::mem::replace(&mut seen[c], true) {
                lists.push(cc.members(c).iter().map(|y| local[y]).collect::<Vec<_>>());
            }
        }
        let k = GroupPartition::from_lists(self.sub.group().order(), &lists)?;
        SupercharacterTheory::from_superclasses(&self.sub, k)
    }
}

/// Inputs of a `*`-product.
#[derive(Debug, Clone)]
pub struct StarFactors {
    pub split: NormalSplit,
    /// A theory of `N`, given on the local indices of `split.sub()`.
    pub inner: SupercharacterTheory,
    /// A theory of `G/N`.
    pub outer: SupercharacterTheory,
}

/// Index of the inflation of each quotient character in `Irr(G)`.
fn inflation(data: &GroupData, split: &NormalSplit) -> Result<Vec<usize>> {
    let (ct, cc) = (data.table(), data.classes());
    let (qt, qcc) = (split.quotient.table(), split.quotient.classes());
    let rows: HashMap<&[Cyclotomic], usize> = (0..ct.len()).map(|i| (ct.row(i), i)).collect();
    (0..qt.len())
        .map(|psi| {
            let row: Vec<Cyclotomic> = (0..cc.count())
                .map(|c| qt.value(psi, qcc.class_of(split.coset_map[cc.rep(c)])).embed(ct.modulus()))
                .collect();
            rows.get(row.as_slice())
                .copied()
                .ok_or_else(|| Error::LiftFailure(format!("quotient character {psi} has no inflation")))
        })
        .collect()
}

/// `Irr(G|ψ)`: characters whose restriction to `N` contains `ψ`.
fn characters_over(data: &GroupData, split: &NormalSplit, psi: usize) -> Vec<usize> {
    let (ct, cc) = (data.table(), data.classes());
    let (nt, ncc) = (split.sub.table(), split.sub.classes());
    let n_order = split.embedding.len() as i64;
    (0..ct.len())
        .filter(|&chi| {
            let mut sum = Cyclotomic::zero(ct.modulus());
            for (i, &x) in split.embedding.iter().enumerate() {
                let term = ct.value(chi, cc.class_of(x)) * &nt.value(psi, ncc.class_of(i)).conj();
                sum = &sum + &term;
            }
            let total = sum.as_integer().expect("inner products of characters are integers");
            debug_assert_eq!(total % n_order, 0);
            total > 0
        })
        .collect()
}

/// The `*`-product of a `G`-invariant theory of `N` with a theory of `G/N`.
///
/// Superclasses are the inner superclasses together with, for every outer
/// superclass other than the identity coset, the union of its cosets.
pub fn star_product(data: &GroupData, factors: &StarFactors) -> Result<SupercharacterTheory> {
    let g = data.group();
    let cc = data.classes();
    let split = &factors.split;
    if !split.n.is_normal() {
        return Err(Error::InvalidFactors("N is not normal".into()));
    }
    if factors.inner.superclasses().parts().first().map(|p| p.len()) != Some(split.embedding.len()) {
        return Err(Error::InvalidFactors("inner theory is not a theory of N".into()));
    }
    if factors.outer.superclasses().parts().first().map(|p| p.len()) != Some(split.quotient.group().order()) {
        return Err(Error::InvalidFactors("outer theory is not a theory of G/N".into()));
    }
    let mut parts = Vec::new();
    for (i, part) in factors.inner.superclasses().parts().iter().enumerate() {
        let mut bits = FixedBitSet::with_capacity(g.order());
        bits.extend(part.ones().map(|x| split.embedding[x]));
        if let Some(x) = bits.ones().find(|&x| cc.members(cc.class_of(x)).iter().any(|&y| !bits.contains(y))) {
            return Err(Error::InvalidFactors(format!(
                "inner superclass {i} is not G-invariant (class of {} leaves it)",
                g.name(x)
            )));
        }
        parts.push(bits);
    }
    let identity_coset = split.coset_map[0];
    for part in factors.outer.superclasses().parts() {
        if part.contains(identity_coset) {
            continue;
        }
        let mut bits = FixedBitSet::with_capacity(g.order());
        bits.extend((0..g.order()).filter(|&x| part.contains(split.coset_map[x])));
        parts.push(bits);
    }
    let k = GroupPartition::new(g.order(), parts).map_err(|e| Error::InvalidFactors(e.to_string()))?;

    let infl = inflation(data, split)?;
    let mut x_parts: Vec<Vec<usize>> =
        factors.outer.character_parts().parts().iter().map(|p| p.iter().map(|&i| infl[i]).collect()).collect();
    for z in factors.inner.character_parts().parts() {
        if z.as_slice() == [0] {
            continue;
        }
        let merged: BTreeSet<usize> = z.iter().flat_map(|&psi| characters_over(data, split, psi)).collect();
        x_parts.push(merged.into_iter().collect());
    }
    let x = IrrPartition::new(data.table().len(), x_parts).map_err(|e| Error::InvalidFactors(e.to_string()))?;
    SupercharacterTheory::assemble(data, k, x)
}

/// Result of trying to split a theory as a `*`-product over `N`.
#[derive(Debug, Clone)]
pub enum StarVerdict {
    Decomposable(Box<StarFactors>),
    /// A superclass meets `N` without lying inside it.
    SplitsPart { part: usize },
    /// A superclass outside `N` is not a union of cosets of `N`.
    NotCosetUnion { part: usize },
    /// The candidate factors failed verification or did not reproduce the theory.
    FactorRejected { reason: String },
}

impl StarVerdict {
    pub fn is_decomposable(&self) -> bool {
        matches!(self, StarVerdict::Decomposable(_))
    }
}

/// Decides whether `theory` is a `*`-product over the normal subgroup `n`.
pub fn is_star_decomposable(data: &GroupData, theory: &SupercharacterTheory, n: &Subgroup) -> StarVerdict {
    let k = theory.superclasses();
    for (i, part) in k.parts().iter().enumerate() {
        let inside = part.is_subset(n.bits());
        if !inside && !part.is_disjoint(n.bits()) {
            return StarVerdict::SplitsPart { part: i };
        }
    }
    let split = match NormalSplit::new(data, n) {
        Ok(s) => s,
        Err(e) => return StarVerdict::FactorRejected { reason: e.to_string() },
    };
    let q = split.quotient.group().order();
    let local: HashMap<usize, usize> = split.embedding.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut inner_lists = Vec::new();
    let mut outer_lists = vec![vec![split.coset_map[0]]];
    for (i, part) in k.parts().iter().enumerate() {
        if part.is_subset(n.bits()) {
            inner_lists.push(part.ones().map(|x| local[&x]).collect::<Vec<_>>());
            continue;
        }
        let cosets: BTreeSet<usize> = part.ones().map(|x| split.coset_map[x]).collect();
        let covered = part.count_ones(..) == cosets.len() * n.order();
        if !covered {
            return StarVerdict::NotCosetUnion { part: i };
        }
        outer_lists.push(cosets.into_iter().collect());
    }
    let build = || -> Result<StarFactors> {
        let inner_k = GroupPartition::from_lists(split.embedding.len(), &inner_lists)?;
        let outer_k = GroupPartition::from_lists(q, &outer_lists)?;
        let inner = SupercharacterTheory::from_superclasses(&split.sub, inner_k)?;
        let outer = SupercharacterTheory::from_superclasses(&split.quotient, outer_k)?;
        Ok(StarFactors { split: split.clone(), inner, outer })
    };
    let factors = match build() {
        Ok(f) => f,
        Err(e) => return StarVerdict::FactorRejected { reason: e.to_string() },
    };
    match star_product(data, &factors) {
        Ok(t) if t.superclasses() == k => StarVerdict::Decomposable(Box::new(factors)),
        Ok(_) => StarVerdict::FactorRejected { reason: "re-product differs from the theory".into() },
        Err(e) => StarVerdict::FactorRejected { reason: e.to_string() },
    }
}

/// Outcome of the AutSup membership search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutSupVerdict {
    pub member: bool,
    /// Generators of the first matching automorphism subgroup.
    pub witness: Option<Vec<Automorphism>>,
    pub automorphism_group_order: usize,
    pub subgroups_checked: usize,
}

/// Scans every subgroup of `Aut(G)` for one whose class orbits are the
/// superclasses of `theory`.
pub fn in_autsup(data: &GroupData, theory: &SupercharacterTheory, aut_cap: usize) -> Result<AutSupVerdict> {
    let auts = automorphism_group(data.group(), DEFAULT_AUT_SEARCH_CAP)?;
    if auts.len() > aut_cap {
        return Err(Error::OrderCapExceeded { what: format!("automorphism group of order {}", auts.len()), cap: aut_cap });
    }
    let aut_group = automorphisms_as_group(&auts);
    let subgroups = all_subgroups(&aut_group);
    let target = theory.superclasses();
    let on_classes: Vec<Vec<usize>> = {
        let cc = data.classes();
        auts.iter().map(|m| (0..cc.count()).map(|c| cc.class_of(m[cc.rep(c)])).collect()).collect()
    };
    let found = subgroups.par_iter().position_first(|s| {
        let perms: Vec<&Vec<usize>> = s.elements().into_iter().map(|i| &on_classes[i]).collect();
        orbit_superclasses(data, &orbits(data.classes().count(), &perms)) == *target
    });
    let witness = found.map(|i| {
        let (sg, embedding) = subgroup_as_group(&aut_group, &subgroups[i]);
        generating_set(&sg).into_iter().map(|j| auts[embedding[j]].clone()).collect()
    });
    Ok(AutSupVerdict {
        member: found.is_some(),
        witness,
        automorphism_group_order: auts.len(),
        subgroups_checked: found.map_or(subgroups.len(), |i| i + 1),
    })
}

/// Every subgroup of `Aut(G)` as an [`AutAction`].
pub fn all_aut_actions(data: &GroupData, aut_cap: usize) -> Result<Vec<AutAction>> {
    let auts = automorphism_group(data.group(), DEFAULT_AUT_SEARCH_CAP)?;
    if auts.len() > aut_cap {
        return Err(Error::OrderCapExceeded { what: format!("automorphism group of order {}", auts.len()), cap: aut_cap });
    }
    let aut_group = automorphisms_as_group(&auts);
    let induced = induced_permutations(data, &auts);
    Ok(all_subgroups(&aut_group)
        .par_iter()
        .map(|s| AutAction::from_induced(data, &auts, &induced, &s.elements()))
        .collect())
}

/// Outcome of the NSup membership search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsupVerdict {
    pub member: bool,
    /// A closed family of normal subgroups producing the theory.
    pub family: Option<NormalSet>,
    pub families_checked: usize,
}

/// Breadth-first search over closed families of normal subgroups.
pub fn in_nsup(data: &GroupData, theory: &SupercharacterTheory) -> Result<NsupVerdict> {
    let g = data.group();
    let normals = data.normal_subgroups();
    let target = theory.superclasses();
    let start = closure_a(g, &[])?;
    let mut seen: BTreeSet<Vec<Subgroup>> = BTreeSet::from([start.members().to_vec()]);
    let mut queue = VecDeque::from([start]);
    let mut checked = 0;
    while let Some(family) = queue.pop_front() {
        checked += 1;
        if n_circle_partition(g, &family) == *target {
            return Ok(NsupVerdict { member: true, family: Some(family), families_checked: checked });
        }
        for n in normals.members() {
            if family.index_of(n).is_some() {
                continue;
            }
            let mut seeds = family.members().to_vec();
            seeds.push(n.clone());
            let next = closure_a(g, &seeds)?;
            if seen.insert(next.members().to_vec()) {
                if seen.len() > NSUP_FAMILY_CAP {
                    return Err(Error::OrderCapExceeded { what: "closed families of normal subgroups".into(), cap: NSUP_FAMILY_CAP });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(NsupVerdict { member: false, family: None, families_checked: checked })
}

/// One line of a separation report.
#[derive(Debug, Clone)]
pub struct StarCheck {
    pub n: Subgroup,
    pub verdict: StarVerdict,
}

#[derive(Debug, Clone)]
pub struct SeparationReport {
    pub autsup: AutSupVerdict,
    /// One entry per proper nontrivial normal subgroup.
    pub star: Vec<StarCheck>,
    pub nsup: NsupVerdict,
}

impl SeparationReport {
    pub fn in_autsup(&self) -> bool {
        self.autsup.member
    }

    /// Membership in Sup* as a single `*`-product over a proper nontrivial `N`.
    pub fn in_sup_star(&self) -> bool {
        self.star.iter().any(|c| c.verdict.is_decomposable())
    }

    pub fn in_nsup(&self) -> bool {
        self.nsup.member
    }
}

pub fn separation_report(data: &GroupData, theory: &SupercharacterTheory, aut_cap: usize) -> Result<SeparationReport> {
    let g = data.group();
    let autsup = in_autsup(data, theory, aut_cap)?;
    let star = data
        .normal_subgroups()
        .members()
        .iter()
        .filter(|n| n.order() > 1 && n.order() < g.order())
        .map(|n| StarCheck { n: n.clone(), verdict: is_star_decomposable(data, theory, n) })
        .collect();
    let nsup = in_nsup(data, theory)?;
    Ok(SeparationReport { autsup, star, nsup })
}
