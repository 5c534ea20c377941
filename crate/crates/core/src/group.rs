//! Finite groups as Cayley tables.
//!
//! Every group is stored with the identity at index 0. Constructors validate
//! the table (Latin square, two-sided identity and inverses, associativity)
//! so everything downstream can index freely.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classes::{conjugacy_classes, ConjugacyClasses};
use crate::error::{Error, GroupDefect, Result};
use crate::perm::Permutation;

pub const DEFAULT_ORDER_CAP: usize = 5000;
pub const DEFAULT_ASSOCIATIVITY_BOUND: usize = 512;

/// Limits and seeds used while building groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupConfig {
    pub order_cap: usize,
    /// Tables up to this order are checked for associativity on all triples.
    pub exhaustive_associativity_bound: usize,
    /// Seed for the sampled associativity check above the bound.
    pub seed: u64,
}

impl Default for GroupConfig {
    fn default() -> Self {
        GroupConfig {
            order_cap: DEFAULT_ORDER_CAP,
            exhaustive_associativity_bound: DEFAULT_ASSOCIATIVITY_BOUND,
            seed: 0,
        }
    }
}

/// Records that a group was built as a direct product, so its two factors
/// can be addressed by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductInfo {
    pub labels: [String; 2],
    pub orders: [usize; 2],
}

pub struct Group {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    names: Vec<String>,
    element_orders: Vec<usize>,
    exponent: usize,
    label: String,
    product: Option<ProductInfo>,
    classes: OnceLock<ConjugacyClasses>,
}

impl Clone for Group {
    fn clone(&self) -> Self {
        Group {
            order: self.order,
            mul: self.mul.clone(),
            inv: self.inv.clone(),
            names: self.names.clone(),
            element_orders: self.element_orders.clone(),
            exponent: self.exponent,
            label: self.label.clone(),
            product: self.product.clone(),
            classes: self.classes.clone(),
        }
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("order", &self.order)
            .field("exponent", &self.exponent)
            .finish_non_exhaustive()
    }
}

impl PartialEq for Group {
    /// Tables and names must agree exactly.
    fn eq(&self, other: &Self) -> bool {
        self.mul == other.mul && self.names == other.names
    }
}

impl Group {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `x · g · x⁻¹`
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        let k = k % self.element_orders[g];
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.element_orders[g]
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn product_info(&self) -> Option<&ProductInfo> {
        self.product.as_ref()
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// The Cayley table as rows of indices.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|row| row.iter().map(|&x| x as usize).collect()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, computed on first use.
    pub fn classes(&self) -> &ConjugacyClasses {
        self.classes.get_or_init(|| conjugacy_classes(self))
    }
}

/// Builds a group from a Cayley table using the default configuration.
pub fn group_from_cayley(table: &[Vec<usize>], names: Option<Vec<String>>) -> Result<Group> {
    group_from_cayley_with(table, names, &GroupConfig::default())
}

pub fn group_from_cayley_with(
    table: &[Vec<usize>],
    names: Option<Vec<String>>,
    config: &GroupConfig,
) -> Result<Group> {
    let n = table.len();
    let malformed = |msg: String| Error::NotAGroup(GroupDefect::Malformed(msg));
    if n == 0 {
        return Err(malformed("empty table".into()));
    }
    if n > config.order_cap {
        return Err(Error::OrderCapExceeded { what: format!("table of order {n}"), cap: config.order_cap });
    }
    for (r, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(malformed(format!("row {r} has {} entries, expected {n}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(malformed(format!("entry {bad} in row {r} is out of range")));
        }
    }
    let names = match names {
        Some(names) if names.len() != n => {
            return Err(malformed(format!("{} names for {n} elements", names.len())))
        }
        Some(names) => names,
        None => (0..n).map(|i| i.to_string()).collect(),
    };

    check_latin(table)?;
    let e = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or(Error::NotAGroup(GroupDefect::NoIdentity))?;

    // Swap labels 0 and e so the identity sits at index 0.
    let relabel = |x: usize| if x == e { 0 } else if x == 0 { e } else { x };
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[relabel(a) * n + relabel(b)] = relabel(table[a][b]) as u32;
        }
    }
    let mut names = names;
    names.swap(0, e);

    let mut inv = vec![0u32; n];
    for a in 0..n {
        let b = (0..n)
            .find(|&b| mul[a * n + b] == 0)
            .ok_or(Error::NotAGroup(GroupDefect::MissingInverse { element: relabel(a) }))?;
        if mul[b * n + a] != 0 {
            return Err(Error::NotAGroup(GroupDefect::MissingInverse { element: relabel(a) }));
        }
        inv[a] = b as u32;
    }

    let at = |a: usize, b: usize| mul[a * n + b] as usize;
    let fails = |a: usize, b: usize, c: usize| at(at(a, b), c) != at(a, at(b, c));
    let witness = |a: usize, b: usize, c: usize| {
        Error::NotAGroup(GroupDefect::NonAssociative { a: relabel(a), b: relabel(b), c: relabel(c) })
    };
    if n <= config.exhaustive_associativity_bound {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if fails(a, b, c) {
                        return Err(witness(a, b, c));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        for _ in 0..3 * n * n {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if fails(a, b, c) {
                return Err(witness(a, b, c));
            }
        }
    }

    Ok(finish(n, mul, inv, names, String::new(), None))
}

fn check_latin(table: &[Vec<usize>]) -> Result<()> {
    let n = table.len();
    let mut seen = vec![usize::MAX; n];
    for (r, row) in table.iter().enumerate() {
        for &x in row {
            if seen[x] == r {
                return Err(Error::NotAGroup(GroupDefect::NotLatin { row: Some(r), column: None, entry: x }));
            }
            seen[x] = r;
        }
    }
    seen.fill(usize::MAX);
    for c in 0..n {
        for row in table {
            let x = row[c];
            if seen[x] == c {
                return Err(Error::NotAGroup(GroupDefect::NotLatin { row: None, column: Some(c), entry: x }));
            }
            seen[x] = c;
        }
    }
    Ok(())
}

/// Assembles a group from a table already known to be valid.
fn finish(
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    names: Vec<String>,
    label: String,
    product: Option<ProductInfo>,
) -> Group {
    let element_orders: Vec<usize> = (0..n)
        .map(|g| {
            let mut x = g;
            let mut k = 1;
            while x != 0 {
                x = mul[x * n + g] as usize;
                k += 1;
            }
            k
        })
        .collect();
    let exponent = element_orders.iter().fold(1, |acc, &o| lcm(acc, o));
    Group {
        order: n,
        mul,
        inv,
        names,
        element_orders,
        exponent,
        label,
        product,
        classes: OnceLock::new(),
    }
}

/// Builds a group from a table produced by a trusted construction. Only the
/// Latin-square and identity shape is re-checked in debug builds.
pub(crate) fn group_from_trusted_table(mul: Vec<u32>, n: usize, names: Vec<String>) -> Group {
    debug_assert_eq!(mul.len(), n * n);
    debug_assert!((0..n).all(|x| mul[x] as usize == x && mul[x * n] as usize == x));
    let mut inv = vec![0u32; n];
    for a in 0..n {
        for b in 0..n {
            if mul[a * n + b] == 0 {
                inv[a] = b as u32;
                break;
            }
        }
    }
    finish(n, mul, inv, names, String::new(), None)
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Closes a set of permutations under composition and returns the elements in
/// breadth-first order, identity first.
pub(crate) fn close_permutations(generators: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let degree = generators.iter().map(Permutation::degree).max().unwrap_or(0);
    let generators: Vec<Permutation> = generators.iter().map(|p| p.padded(degree)).collect();
    let identity = Permutation::identity(degree);
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    index.insert(identity, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for gen in &generators {
            let next = elements[i].then(gen);
            if !index.contains_key(&next) {
                if elements.len() >= cap {
                    return Err(Error::OrderCapExceeded {
                        what: "permutation group closure".into(),
                        cap,
                    });
                }
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
    }
    Ok(elements)
}

/// Builds the group generated by `generators`, with elements named in cycle
/// notation. The identity is named `()`.
pub fn group_from_permutations(generators: &[Permutation], cap: usize) -> Result<Group> {
    let elements = close_permutations(generators, cap)?;
    let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let n = elements.len();
    let mut mul = vec![0u32; n * n];
    for (a, pa) in elements.iter().enumerate() {
        for (b, pb) in elements.iter().enumerate() {
            mul[a * n + b] = index[&pa.then(pb)] as u32;
        }
    }
    let names = elements.iter().map(|p| p.to_string()).collect();
    Ok(group_from_trusted_table(mul, n, names))
}

/// Direct product with elements `(a, b)` stored at index `a·|g2| + b`.
pub fn group_direct_product(g1: &Group, g2: &Group, cap: usize) -> Result<Group> {
    let (n1, n2) = (g1.order(), g2.order());
    let n = n1 * n2;
    if n > cap {
        return Err(Error::OrderCapExceeded { what: format!("direct product of order {n}"), cap });
    }
    let mut mul = vec![0u32; n * n];
    for a1 in 0..n1 {
        for b1 in 0..n2 {
            let row = (a1 * n2 + b1) * n;
            for a2 in 0..n1 {
                for b2 in 0..n2 {
                    mul[row + a2 * n2 + b2] = (g1.mul(a1, a2) * n2 + g2.mul(b1, b2)) as u32;
                }
            }
        }
    }
    let names = (0..n1)
        .flat_map(|a| (0..n2).map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", g1.name(a), g2.name(b)))
        .collect();
    let label = if g1.label().is_empty() || g2.label().is_empty() {
        String::new()
    } else {
        format!("{}x{}", g1.label(), g2.label())
    };
    let product = ProductInfo { labels: [g1.label().to_string(), g2.label().to_string()], orders: [n1, n2] };
    let group = group_from_trusted_table(mul, n, names);
    Ok(Group { label, product: Some(product), ..group })
}

/// The cyclic group of order `n`, with elements named `1, x, x^2, …`.
pub fn cyclic_group(n: usize, letter: &str) -> Group {
    assert!(n > 0, "cyclic group of order 0");
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = ((a + b) % n) as u32;
        }
    }
    let names = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => letter.to_string(),
            _ => format!("{letter}^{k}"),
        })
        .collect();
    group_from_trusted_table(mul, n, names).with_label(format!("C{n}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> Vec<Vec<usize>> {
        vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]]
    }

    #[test]
    fn trivial_and_c2() {
        let g = group_from_cayley(&[vec![0]], None).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
        let c2 = group_from_cayley(&[vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(c2.exponent(), 2);
    }

    #[test]
    fn identity_is_moved_to_index_zero() {
        // C3 written with identity at label 2.
        let table = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let names = vec!["a".into(), "b".into(), "e".into()];
        let g = group_from_cayley(&table, Some(names)).unwrap();
        assert_eq!(g.name(0), "e");
        assert!((0..3).all(|x| g.mul(0, x) == x && g.mul(x, g.inv(x)) == 0));
    }

    #[test]
    fn one_corrupt_cell_is_rejected() {
        let mut table = klein();
        table[1][2] = 2;
        let err = group_from_cayley(&table, None).unwrap_err();
        assert!(matches!(err, Error::NotAGroup(GroupDefect::NotLatin { .. })), "{err:?}");
    }

    /// A Latin square with identity 0 that is not associative: the loop of
    /// order 5 built from the smallest non-group quasigroup pattern.
    fn nonassociative_loop() -> Vec<Vec<usize>> {
        vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ]
    }

    #[test]
    fn non_associative_loop_yields_a_true_witness() {
        let table = nonassociative_loop();
        // Brute force: the loop really has a failing triple.
        let bad = (0..5)
            .flat_map(|a| (0..5).flat_map(move |b| (0..5).map(move |c| (a, b, c))))
            .find(|&(a, b, c)| table[table[a][b]][c] != table[a][table[b][c]]);
        assert!(bad.is_some());
        match group_from_cayley(&table, None).unwrap_err() {
            Error::NotAGroup(GroupDefect::NonAssociative { a, b, c }) => {
                assert_ne!(table[table[a][b]][c], table[a][table[b][c]]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sampled_associativity_above_bound() {
        let config = GroupConfig { exhaustive_associativity_bound: 2, ..GroupConfig::default() };
        let g = group_from_cayley_with(&klein(), None, &config).unwrap();
        assert_eq!(g.order(), 4);
        assert!(group_from_cayley_with(&nonassociative_loop(), None, &config).is_err());
    }

    #[test]
    fn permutation_closure_orders() {
        let gens = |s: &[&str]| s.iter().map(|p| p.parse::<Permutation>().unwrap()).collect::<Vec<_>>();
        assert_eq!(group_from_permutations(&gens(&["(1 2)"]), 5000).unwrap().order(), 2);
        let s5 = group_from_permutations(&gens(&["(1 2 3 4 5)", "(1 2)"]), 5000).unwrap();
        assert_eq!(s5.order(), 120);
        assert_eq!(s5.name(0), "()");
        assert_eq!(group_from_permutations(&gens(&["(1 2 3)", "(2 3 4)"]), 5000).unwrap().order(), 12);
        let err = group_from_permutations(&gens(&["(1 2 3 4 5)", "(1 2)"]), 100).unwrap_err();
        assert!(matches!(err, Error::OrderCapExceeded { .. }));
    }

    #[test]
    fn direct_products() {
        let c1 = cyclic_group(1, "a");
        let c4 = cyclic_group(4, "h");
        let p = group_direct_product(&c1, &c4, 5000).unwrap();
        assert_eq!(p.table(), c4.table());

        let c2xc4 = group_direct_product(&cyclic_group(2, "g"), &c4, 5000).unwrap();
        assert_eq!((c2xc4.order(), c2xc4.exponent()), (8, 4));
        assert_eq!(c2xc4.label(), "C2xC4");

        let c3xc4 = group_direct_product(&cyclic_group(3, "g"), &c4, 5000).unwrap();
        assert_eq!(c3xc4.order(), 12);
        assert_eq!(c3xc4.exponent(), 12);
        assert!(c3xc4.elements().any(|x| c3xc4.element_order(x) == 12));
        assert_eq!(c3xc4.name(4 + 2), "(g,h^2)");
    }
}
