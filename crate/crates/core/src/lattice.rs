//! Families of normal subgroups closed under product and intersection,
//! their Möbius functions, and the sets `N°`.

use std::collections::{HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::subgroup::{subgroup_intersection, subgroup_product, Subgroup};

/// A deduplicated family of normal subgroups sorted by `(order, members)`,
/// with its containment relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSet {
    members: Vec<Subgroup>,
    leq: Vec<Vec<bool>>,
    closed: bool,
}

impl NormalSet {
    fn new(mut members: Vec<Subgroup>, closed: bool) -> Self {
        members.sort();
        members.dedup();
        let leq = members
            .iter()
            .map(|a| members.iter().map(|b| a.is_subgroup_of(b)).collect())
            .collect();
        NormalSet { members, leq, closed }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Subgroup {
        &self.members[i]
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.members.binary_search(s).ok()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Cover relations `(lower, upper)` of the containment order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq[a][b] && !(0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b]) {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// True iff every member's set-wise product and intersection with every
    /// other member is again a member.
    pub fn check_closed(&self, g: &Group) -> bool {
        let set: HashSet<&Subgroup> = self.members.iter().collect();
        self.members.iter().all(|a| {
            self.members.iter().all(|b| {
                set.contains(&subgroup_intersection(g, a, b))
                    && subgroup_product(g, a, b).map(|p| set.contains(&p)).unwrap_or(false)
            })
        })
    }
}

/// Every normal subgroup of `g`, as the intersections of character kernels.
/// The empty intersection contributes `G`.
pub fn all_normal_subgroups(g: &Group, ct: &CharacterTable) -> NormalSet {
    let mut found: HashSet<Subgroup> = HashSet::new();
    found.insert(Subgroup::whole(g));
    let mut frontier: Vec<Subgroup> = vec![Subgroup::whole(g)];
    while let Some(s) = frontier.pop() {
        for k in ct.kernels() {
            let meet = subgroup_intersection(g, &s, k);
            if found.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }
    let set = NormalSet::new(found.into_iter().collect(), true);
    debug_assert!(set.check_closed(g));
    set
}

/// The smallest family containing `seeds`, `{e}` and `G` that is closed
/// under product and intersection. Pairs are processed first-in first-out.
pub fn closure_a(g: &Group, seeds: &[Subgroup]) -> Result<NormalSet> {
    if let Some(bad) = seeds.iter().find(|s| !s.is_normal()) {
        return Err(Error::NotNormal(format!("seed of order {}", bad.order())));
    }
    let mut members: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let mut queue: VecDeque<Subgroup> = VecDeque::new();
    for s in [Subgroup::trivial(g), Subgroup::whole(g)].into_iter().chain(seeds.iter().cloned()) {
        if seen.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some(next) = queue.pop_front() {
        for other in members.iter().chain(std::iter::once(&next)) {
            for candidate in [subgroup_product(g, &next, other)?, subgroup_intersection(g, &next, other)] {
                if seen.insert(candidate.clone()) {
                    queue.push_back(candidate);
                }
            }
        }
        members.push(next);
    }
    Ok(NormalSet::new(members, true))
}

/// `μ(x, y)` for every pair of members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusTable {
    mu: Vec<Vec<i64>>,
}

impl MobiusTable {
    pub fn get(&self, x: usize, y: usize) -> i64 {
        self.mu[x][y]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.mu
    }
}

/// Evaluates `μ(x, x) = 1`, `μ(x, y) = -Σ_{x<z≤y} μ(z, y)`. Members are sorted
/// by order, so every `z` strictly above `x` has a larger index and is already
/// filled in when `x` is reached.
pub fn mobius_table(ns: &NormalSet) -> MobiusTable {
    let n = ns.len();
    let mut mu = vec![vec![0i64; n]; n];
    for y in 0..n {
        mu[y][y] = 1;
        for x in (0..y).rev() {
            if !ns.leq(x, y) {
                continue;
            }
            mu[x][y] = -((x + 1..=y).filter(|&z| ns.leq(x, z) && ns.leq(z, y)).map(|z| mu[z][y]).sum::<i64>());
        }
    }
    MobiusTable { mu }
}

/// `N` minus the union of the members strictly below it. May be empty.
pub fn n_circle(ns: &NormalSet, n: usize) -> FixedBitSet {
    let mut set = ns.member(n).bits().clone();
    for k in 0..ns.len() {
        if k != n && ns.leq(k, n) {
            set.difference_with(ns.member(k).bits());
        }
    }
    set
}

/// Checks `1_{N°} = Σ_{H ≤ N} μ(H, N)·1_H` coordinate-wise.
pub fn mobius_inversion_check(ns: &NormalSet, mt: &MobiusTable, n: usize) -> bool {
    let order = ns.member(n).bits().len();
    let mut rhs = vec![0i64; order];
    for h in (0..ns.len()).filter(|&h| ns.leq(h, n)) {
        let mu = mt.get(h, n);
        for x in ns.member(h).bits().ones() {
            rhs[x] += mu;
        }
    }
    let lhs = n_circle(ns, n);
    (0..order).all(|x| rhs[x] == i64::from(lhs.contains(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::chartab::character_table;
    use crate::classes::structure_constants;
    use crate::subgroup::subgroup_generate;

    fn setup(name: &str) -> (Group, CharacterTable) {
        let g = catalog::group(name).unwrap();
        let sc = structure_constants(&g, g.classes());
        let ct = character_table(&g, g.classes(), &sc).unwrap();
        (g, ct)
    }

    fn gen(g: &Group, names: &[&str]) -> Subgroup {
        let seeds: Vec<usize> = names.iter().map(|n| g.element_by_name(n).unwrap()).collect();
        subgroup_generate(g, &seeds)
    }

    #[test]
    fn normal_subgroup_counts() {
        assert_eq!(all_normal_subgroups(&setup("C7").0, &setup("C7").1).len(), 2);
        let (g, ct) = setup("S5");
        let ns = all_normal_subgroups(&g, &ct);
        assert_eq!(ns.members().iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 60, 120]);
        let (g, ct) = setup("C2xC4");
        assert_eq!(all_normal_subgroups(&g, &ct).len(), 8);
        let (g, ct) = setup("C1");
        assert_eq!(all_normal_subgroups(&g, &ct).len(), 1);
    }

    #[test]
    fn closure_examples() {
        let (g, _) = setup("C3xC4");
        assert_eq!(closure_a(&g, &[]).unwrap().len(), 2);
        let seeds = [gen(&g, &["(g,1)"]), gen(&g, &["(1,h)"])];
        let ns = closure_a(&g, &seeds).unwrap();
        assert_eq!(ns.members().iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 3, 4, 12]);

        let (g, _) = setup("C2xC4");
        let ns = closure_a(&g, &[gen(&g, &["(g,1)"]), gen(&g, &["(1,h)"])]).unwrap();
        assert_eq!(ns.len(), 4);
        assert!(ns.check_closed(&g));

        let s3 = catalog::group("S3").unwrap();
        assert!(matches!(closure_a(&s3, &[gen(&s3, &["(1 2)"])]), Err(Error::NotNormal(_))));
    }

    #[test]
    fn closure_is_seed_order_independent() {
        let (g, ct) = setup("C2xC4");
        let all = all_normal_subgroups(&g, &ct);
        let mut seeds: Vec<Subgroup> = all.members()[1..4].to_vec();
        let a = closure_a(&g, &seeds).unwrap();
        seeds.reverse();
        assert_eq!(a, closure_a(&g, &seeds).unwrap());
    }

    #[test]
    fn mobius_on_small_lattices() {
        let (g, _) = setup("C5");
        let chain = closure_a(&g, &[]).unwrap();
        assert_eq!(mobius_table(&chain).get(0, 1), -1);

        let (g, _) = setup("C3xC4");
        let diamond = closure_a(&g, &[gen(&g, &["(g,1)"]), gen(&g, &["(1,h)"])]).unwrap();
        let mt = mobius_table(&diamond);
        assert_eq!((mt.get(0, 3), mt.get(1, 3), mt.get(2, 3)), (1, -1, -1));
    }

    #[test]
    fn mobius_on_full_c2xc4() {
        let (g, ct) = setup("C2xC4");
        let ns = all_normal_subgroups(&g, &ct);
        let mt = mobius_table(&ns);
        let top = ns.len() - 1;
        let idx = |names: &[&str]| ns.index_of(&gen(&g, names)).unwrap();
        assert_eq!(mt.get(idx(&["(1,h^2)"]), top), 2);
        assert_eq!(mt.get(idx(&["(g,1)"]), top), 0);
        assert_eq!(mt.get(0, top), 0);
        // Σ_{x≤z≤y} μ(z,y) = δ(x,y)
        for x in 0..ns.len() {
            for y in 0..ns.len() {
                if ns.leq(x, y) {
                    let s: i64 = (0..ns.len()).filter(|&z| ns.leq(x, z) && ns.leq(z, y)).map(|z| mt.get(z, y)).sum();
                    assert_eq!(s, i64::from(x == y));
                }
            }
        }
    }

    #[test]
    fn n_circle_examples() {
        let (g, _) = setup("C3xC4");
        let ns = closure_a(&g, &[gen(&g, &["(g,1)"]), gen(&g, &["(1,h)"])]).unwrap();
        assert_eq!(n_circle(&ns, 0).ones().collect::<Vec<_>>(), vec![0]);
        let c3 = ns.index_of(&gen(&g, &["(g,1)"])).unwrap();
        let names: Vec<&str> = n_circle(&ns, c3).ones().map(|x| g.name(x)).collect();
        assert_eq!(names, vec!["(g,1)", "(g^2,1)"]);

        let (g, ct) = setup("C2xC4");
        let ns = all_normal_subgroups(&g, &ct);
        let diagonal = ns.index_of(&gen(&g, &["(g,h^2)"])).unwrap();
        let names: Vec<&str> = n_circle(&ns, diagonal).ones().map(|x| g.name(x)).collect();
        assert_eq!(names, vec!["(g,h^2)"]);
        // Every element of the Klein subgroup and of G lies in a smaller member.
        let klein = ns.index_of(&gen(&g, &["(g,1)", "(1,h^2)"])).unwrap();
        assert!(n_circle(&ns, klein).is_clear());
        assert!(n_circle(&ns, ns.len() - 1).is_clear());
    }

    #[test]
    fn inversion_holds() {
        for name in ["C2xC4", "S5", "Q8", "D6"] {
            let (g, ct) = setup(name);
            let ns = all_normal_subgroups(&g, &ct);
            let mt = mobius_table(&ns);
            for n in 0..ns.len() {
                assert!(mobius_inversion_check(&ns, &mt, n), "{name} member {n}");
            }
        }
        let (g, ct) = setup("S5");
        let ns = all_normal_subgroups(&g, &ct);
        assert_eq!(mobius_table(&ns).get(0, 1), -1);
    }

    #[test]
    fn hasse_edges_of_a_chain() {
        let (g, ct) = setup("S5");
        assert_eq!(all_normal_subgroups(&g, &ct).hasse_edges(), vec![(0, 1), (1, 2)]);
    }
}
