//! Oracles that avoid the library's character-table and lattice code.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use sckit::{Cyclotomic, Group};

/// Sorted element lists.
pub type ElementSet = Vec<usize>;

/// Smallest subgroup containing `seeds`, by repeated multiplication.
pub fn generated(g: &Group, seeds: &[usize]) -> ElementSet {
    let mut seen = BTreeSet::from([0usize]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &s in seeds {
            let y = g.mul(x, s);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// The normal subgroup generated by the conjugates of `x`.
fn normal_closure(g: &Group, xs: &[usize]) -> ElementSet {
    let conjugates: BTreeSet<usize> =
        xs.iter().flat_map(|&x| (0..g.order()).map(move |y| g.mul(g.mul(y, x), g.inv(y)))).collect();
    generated(g, &conjugates.into_iter().collect::<Vec<_>>())
}

/// Every normal subgroup, as joins of normal closures of single elements.
pub fn normal_subgroups(g: &Group) -> Vec<ElementSet> {
    let mut seen: BTreeSet<ElementSet> = BTreeSet::from([vec![0]]);
    let mut queue = VecDeque::from([vec![0usize]]);
    while let Some(n) = queue.pop_front() {
        for x in 0..g.order() {
            if n.binary_search(&x).is_err() {
                let mut gens = n.clone();
                gens.push(x);
                let m = normal_closure(g, &gens);
                if seen.insert(m.clone()) {
                    queue.push_back(m);
                }
            }
        }
    }
    let mut out: Vec<ElementSet> = seen.into_iter().collect();
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

/// `N` minus every strictly smaller member of `family`.
pub fn circle(family: &[ElementSet], n: &ElementSet) -> ElementSet {
    n.iter()
        .copied()
        .filter(|x| !family.iter().any(|m| m.len() < n.len() && m.iter().all(|y| n.contains(y)) && m.contains(x)))
        .collect()
}

/// Products of part sums, computed element by element, have coefficients
/// constant on every part.
pub fn schur_closed(g: &Group, parts: &[ElementSet]) -> bool {
    let part_of = {
        let mut v = vec![usize::MAX; g.order()];
        for (i, p) in parts.iter().enumerate() {
            for &x in p {
                v[x] = i;
            }
        }
        v
    };
    for p in parts {
        for q in parts {
            let mut coef = vec![0u64; g.order()];
            for &x in p {
                for &y in q {
                    coef[g.mul(x, y)] += 1;
                }
            }
            for r in parts {
                if r.iter().any(|&z| coef[z] != coef[r[0]]) {
                    return false;
                }
            }
        }
    }
    part_of.iter().all(|&i| i != usize::MAX)
}

/// Canonical form for comparing partitions.
pub fn canonical(parts: impl IntoIterator<Item = ElementSet>) -> BTreeSet<ElementSet> {
    parts
        .into_iter()
        .map(|mut p| {
            p.sort_unstable();
            p
        })
        .collect()
}

/// `ker χ = {x : χ(x) = χ(1)}`, read off the table row.
pub fn kernel_from_values(g: &Group, row: &[Cyclotomic], degree: u64) -> ElementSet {
    let cc = g.classes();
    (0..g.order()).filter(|&x| row[cc.class_of(x)].is_integer(degree as i64)).collect()
}
