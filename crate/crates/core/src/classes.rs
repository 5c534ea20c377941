//! Conjugacy classes and the structure constants of the class algebra.

use crate::group::Group;

/// Conjugacy classes ordered by `(size, smallest member)`. Class 0 is the
/// identity; each representative is the smallest member of its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClasses {
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    inverse_class: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn rep(&self, class: usize) -> usize {
        self.members[class][0]
    }

    pub fn reps(&self) -> Vec<usize> {
        self.members.iter().map(|m| m[0]).collect()
    }

    pub fn size(&self, class: usize) -> usize {
        self.members[class].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    /// Sorted members of a class.
    pub fn members(&self, class: usize) -> &[usize] {
        &self.members[class]
    }

    /// Class containing the inverses of the given class.
    pub fn inverse_class(&self, class: usize) -> usize {
        self.inverse_class[class]
    }
}

/// Computes the classes by conjugating a representative with every element.
pub fn conjugacy_classes(g: &Group) -> ConjugacyClasses {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if assigned[start] {
            continue;
        }
        let mut class = Vec::new();
        for x in 0..n {
            let y = g.conjugate(start, x);
            if !assigned[y] {
                assigned[y] = true;
                class.push(y);
            }
        }
        class.sort_unstable();
        members.push(class);
    }
    members.sort_by_key(|m| (m.len(), m[0]));
    let mut class_of = vec![0; n];
    for (c, m) in members.iter().enumerate() {
        for &x in m {
            class_of[x] = c;
        }
    }
    let inverse_class = members.iter().map(|m| class_of[g.inv(m[0])]).collect();
    ConjugacyClasses { class_of, members, inverse_class }
}

/// `a[i][j][l]` counts pairs `(x, y)` in `C_i × C_j` with `x·y` equal to the
/// representative of `C_l`, so that `Ĉ_i·Ĉ_j = Σ_l a[i][j][l]·Ĉ_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    k: usize,
    a: Vec<u64>,
}

impl StructureConstants {
    pub fn class_count(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, l: usize) -> u64 {
        self.a[(i * self.k + j) * self.k + l]
    }

    /// Coefficients of `Ĉ_i·Ĉ_j` in the class-sum basis.
    pub fn product(&self, i: usize, j: usize) -> &[u64] {
        let start = (i * self.k + j) * self.k;
        &self.a[start..start + self.k]
    }
}

pub fn structure_constants(g: &Group, cc: &ConjugacyClasses) -> StructureConstants {
    let k = cc.count();
    let mut a = vec![0u64; k * k * k];
    let reps = cc.reps();
    let mut is_rep = vec![false; g.order()];
    for &r in &reps {
        is_rep[r] = true;
    }
    for x in g.elements() {
        let i = cc.class_of(x);
        for y in g.elements() {
            let z = g.mul(x, y);
            if is_rep[z] {
                let j = cc.class_of(y);
                a[(i * k + j) * k + cc.class_of(z)] += 1;
            }
        }
    }
    StructureConstants { k, a }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn abelian_classes_are_singletons() {
        let g = catalog::group("C6").unwrap();
        let cc = conjugacy_classes(&g);
        assert_eq!(cc.count(), 6);
        assert!(cc.sizes().iter().all(|&s| s == 1));
    }

    #[test]
    fn s3_class_sizes_by_brute_force() {
        let g = catalog::group("S3").unwrap();
        let cc = conjugacy_classes(&g);
        // Oracle: conjugate every element by every element.
        let mut oracle: Vec<usize> = g
            .elements()
            .map(|x| {
                let mut orbit: Vec<usize> = g.elements().map(|y| g.conjugate(x, y)).collect();
                orbit.sort_unstable();
                orbit.dedup();
                orbit.len()
            })
            .collect();
        oracle.sort_unstable();
        let mut from_classes: Vec<usize> = g.elements().map(|x| cc.size(cc.class_of(x))).collect();
        from_classes.sort_unstable();
        assert_eq!(oracle, from_classes);
        assert_eq!(cc.sizes(), vec![1, 2, 3]);
    }

    #[test]
    fn s5_class_sizes() {
        let g = catalog::group("S5").unwrap();
        let cc = conjugacy_classes(&g);
        let mut sizes = cc.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 10, 15, 20, 20, 24, 30]);
        assert_eq!(cc.members(0), &[0]);
    }

    #[test]
    fn small_structure_constants() {
        let g = catalog::group("C1").unwrap();
        assert_eq!(structure_constants(&g, g.classes()).get(0, 0, 0), 1);
        let c2 = catalog::group("C2").unwrap();
        let sc = structure_constants(&c2, c2.classes());
        assert_eq!((sc.get(1, 1, 0), sc.get(1, 1, 1)), (1, 0));
    }

    /// Convolves class indicator vectors in the group algebra and reads the
    /// result back in the class-sum basis.
    fn convolution_oracle(g: &Group, cc: &ConjugacyClasses, i: usize, j: usize) -> Vec<u64> {
        let mut product = vec![0u64; g.order()];
        for &x in cc.members(i) {
            for &y in cc.members(j) {
                product[g.mul(x, y)] += 1;
            }
        }
        (0..cc.count()).map(|l| product[cc.rep(l)]).collect()
    }

    #[test]
    fn s3_transposition_square_matches_convolution() {
        let g = catalog::group("S3").unwrap();
        let cc = conjugacy_classes(&g);
        let sc = structure_constants(&g, &cc);
        let t = (0..cc.count()).find(|&c| cc.size(c) == 3).unwrap();
        let r = (0..cc.count()).find(|&c| cc.size(c) == 2).unwrap();
        assert_eq!(sc.product(t, t), convolution_oracle(&g, &cc, t, t).as_slice());
        assert_eq!((sc.get(t, t, 0), sc.get(t, t, r), sc.get(t, t, t)), (3, 3, 0));
    }

    #[test]
    fn structure_constants_match_convolution_on_catalog() {
        for name in catalog::names_up_to(24) {
            let g = catalog::group(&name).unwrap();
            let cc = g.classes();
            let sc = structure_constants(&g, cc);
            let mut total = 0;
            for i in 0..cc.count() {
                for j in 0..cc.count() {
                    assert_eq!(sc.product(i, j), convolution_oracle(&g, cc, i, j).as_slice(), "{name}");
                    let pairs: u64 = (0..cc.count()).map(|l| sc.get(i, j, l) * cc.size(l) as u64).sum();
                    assert_eq!(pairs, (cc.size(i) * cc.size(j)) as u64);
                    total += 1;
                }
            }
            assert!(total > 0);
            // Classes are stable under conjugation.
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(cc.class_of(g.conjugate(x, y)), cc.class_of(x));
                }
            }
            assert_eq!(cc.sizes().iter().sum::<usize>(), g.order());
        }
    }
}
