//! Automorphisms as element-index maps, and the full automorphism group by
//! backtracking over generator images.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::group::{group_from_trusted_table, Group};
use crate::subgroup::{subgroup_generate, Subgroup};

/// Largest group order accepted by [`automorphism_group`] by default.
pub const DEFAULT_AUT_SEARCH_CAP: usize = 256;

pub type Automorphism = Vec<usize>;

/// True iff `map` is a bijective homomorphism of `g` onto itself.
pub fn is_automorphism(g: &Group, map: &[usize]) -> bool {
    let n = g.order();
    if map.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &y in map {
        if y >= n || std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    (0..n).all(|a| (0..n).all(|b| map[g.mul(a, b)] == g.mul(map[a], map[b])))
}

/// `first` then `second`: `x ↦ second(first(x))`.
pub fn compose(first: &[usize], second: &[usize]) -> Automorphism {
    first.iter().map(|&y| second[y]).collect()
}

pub fn invert(map: &[usize]) -> Automorphism {
    let mut out = vec![0; map.len()];
    for (x, &y) in map.iter().enumerate() {
        out[y] = x;
    }
    out
}

/// Closure of `maps` under composition, sorted with the identity first.
pub fn close_automorphisms(order: usize, maps: &[Automorphism]) -> Vec<Automorphism> {
    let identity: Automorphism = (0..order).collect();
    let mut seen: BTreeSet<Automorphism> = BTreeSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(a) = queue.pop_front() {
        for m in maps {
            let b = compose(&a, m);
            if seen.insert(b.clone()) {
                queue.push_back(b);
            }
        }
    }
    seen.into_iter().collect()
}

/// A short generating set, chosen greedily by decreasing element order.
pub fn generating_set(g: &Group) -> Vec<usize> {
    let mut by_order: Vec<usize> = (1..g.order()).collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut gens = Vec::new();
    let mut current = Subgroup::trivial(g);
    for x in by_order {
        if current.order() == g.order() {
            break;
        }
        if !current.contains(x) {
            gens.push(x);
            current = subgroup_generate(g, &gens);
        }
    }
    gens
}

/// Extends generator images to a full map by walking right multiplications.
/// Returns `None` when the images do not define a bijective homomorphism.
fn extend(g: &Group, gens: &[usize], images: &[usize]) -> Option<Automorphism> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let (y, fy) = (g.mul(x, s), g.mul(map[x], t));
            if map[y] == usize::MAX {
                if std::mem::replace(&mut used[fy], true) {
                    return None;
                }
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

/// Every automorphism of `g`, sorted with the identity first.
pub fn automorphism_group(g: &Group, cap: usize) -> Result<Vec<Automorphism>> {
    if g.order() > cap {
        return Err(Error::OrderCapExceeded { what: format!("automorphism search on order {}", g.order()), cap });
    }
    let gens = generating_set(g);
    let cc = g.classes();
    let signature = |x: usize| (g.element_order(x), cc.size(cc.class_of(x)));
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|&s| (0..g.order()).filter(|&y| signature(y) == signature(s)).collect()).collect();
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    search(g, &gens, &candidates, &mut images, &mut out);
    out.sort();
    debug_assert!(out.iter().all(|m| is_automorphism(g, m)));
    Ok(out)
}

fn search(g: &Group, gens: &[usize], candidates: &[Vec<usize>], images: &mut Vec<usize>, out: &mut Vec<Automorphism>) {
    let depth = images.len();
    if depth == gens.len() {
        if let Some(map) = extend(g, gens, images) {
            if map.iter().all(|&y| y != usize::MAX) && is_automorphism(g, &map) {
                out.push(map);
            }
        }
        return;
    }
    for &y in &candidates[depth] {
        if images.contains(&y) {
            continue;
        }
        images.push(y);
        // Prune on the generators fixed so far.
        if extend_partial(g, &gens[..=depth], images) {
            search(g, gens, candidates, images, out);
        }
        images.pop();
    }
}

/// Consistency of a prefix of generator images on the subgroup they generate.
fn extend_partial(g: &Group, gens: &[usize], images: &[usize]) -> bool {
    let n = g.order();
    let mut map: HashMap<usize, usize> = HashMap::from([(0, 0)]);
    let mut used = vec![false; n];
    used[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let fx = map[&x];
        for (&s, &t) in gens.iter().zip(images) {
            let (y, fy) = (g.mul(x, s), g.mul(fx, t));
            match map.get(&y) {
                None => {
                    if std::mem::replace(&mut used[fy], true) {
                        return false;
                    }
                    map.insert(y, fy);
                    queue.push_back(y);
                }
                Some(&old) if old != fy => return false,
                Some(_) => {}
            }
        }
    }
    true
}

/// The automorphisms as an abstract group; element `i` is `maps[i]` and
/// `i·j` is "apply `j`, then `i`".
pub fn automorphisms_as_group(maps: &[Automorphism]) -> Group {
    let index: HashMap<&Automorphism, usize> = maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = maps.len();
    let mut table = Vec::with_capacity(n * n);
    for a in maps {
        for b in maps {
            table.push(index[&compose(b, a)] as u32);
        }
    }
    let names = (0..n).map(|i| format!("a{i}")).collect();
    group_from_trusted_table(table, n, names)
}
