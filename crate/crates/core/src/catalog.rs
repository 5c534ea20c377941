//! Named groups: `C<n>` (n ≤ 64), `C<m>xC<n>`, `D<n>` (dihedral of order 2n,
//! n ≤ 12), `Q8`, `S<n>` and `A<n>` (n ≤ 5). Any two names joined by `x` give
//! their direct product.
//!
//! Cyclic generators are named `g`; the second factor of a product of cyclic
//! groups uses `h`, so `C3xC4` has elements such as `(g,h^2)`.

use crate::error::{Error, Result};
use crate::group::{cyclic_group, group_direct_product, group_from_permutations, group_from_trusted_table, Group};
use crate::perm::Permutation;

const MAX_CYCLIC: usize = 64;
const MAX_DIHEDRAL: usize = 12;
const MAX_SYMMETRIC: usize = 5;

pub fn group(name: &str) -> Result<Group> {
    let name = name.trim();
    if let Some((left, right)) = split_product(name) {
        let a = simple(left, "g")?;
        let b = simple(right, "h")?;
        return group_direct_product(&a, &b, crate::group::DEFAULT_ORDER_CAP);
    }
    simple(name, "g")
}

/// Splits `AxB` at the last `x` that separates two catalog names.
fn split_product(name: &str) -> Option<(&str, &str)> {
    let at = name.rfind(['x', 'X', '×'])?;
    let (left, right) = (&name[..at], &name[at..]);
    let right = right.trim_start_matches(['x', 'X', '×']);
    (!left.is_empty() && !right.is_empty()).then_some((left.trim(), right.trim()))
}

fn parse_index(name: &str, prefix: char) -> Option<usize> {
    name.strip_prefix(prefix).and_then(|rest| rest.parse().ok())
}

fn simple(name: &str, letter: &str) -> Result<Group> {
    let unknown = || Error::Parse(format!("unknown catalog group {name:?}"));
    if name == "Q8" {
        return Ok(quaternion());
    }
    if let Some(n) = parse_index(name, 'C') {
        if n == 0 || n > MAX_CYCLIC {
            return Err(unknown());
        }
        return Ok(cyclic_group(n, letter));
    }
    if let Some(n) = parse_index(name, 'D') {
        if !(2..=MAX_DIHEDRAL).contains(&n) {
            return Err(unknown());
        }
        return Ok(dihedral(n));
    }
    if let Some(n) = parse_index(name, 'S') {
        if n == 0 || n > MAX_SYMMETRIC {
            return Err(unknown());
        }
        return Ok(symmetric(n).with_label(name));
    }
    if let Some(n) = parse_index(name, 'A') {
        if n == 0 || n > MAX_SYMMETRIC {
            return Err(unknown());
        }
        return Ok(alternating(n).with_label(name));
    }
    Err(unknown())
}

fn perms(cycles: &[&str]) -> Vec<Permutation> {
    cycles.iter().map(|c| c.parse().expect("catalog permutation")).collect()
}

fn symmetric(n: usize) -> Group {
    if n < 2 {
        return group_from_permutations(&[], 1).expect("trivial group");
    }
    let long: String = format!("({})", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
    group_from_permutations(&perms(&[&long, "(1 2)"]), crate::group::DEFAULT_ORDER_CAP).expect("S_n")
}

fn alternating(n: usize) -> Group {
    let gens: Vec<String> = (3..=n).map(|i| format!("(1 2 {i})")).collect();
    let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
    group_from_permutations(&perms(&gens), crate::group::DEFAULT_ORDER_CAP).expect("A_n")
}

/// `r^i s^b` stored at index `b·n + i`, with `s r s = r⁻¹`.
fn dihedral(n: usize) -> Group {
    let order = 2 * n;
    let mut mul = vec![0u32; order * order];
    for a in 0..order {
        let (ra, sa) = (a % n, a / n);
        for b in 0..order {
            let (rb, sb) = (b % n, b / n);
            let r = if sa == 0 { (ra + rb) % n } else { (ra + n - rb) % n };
            mul[a * order + b] = (((sa + sb) % 2) * n + r) as u32;
        }
    }
    let names = (0..order)
        .map(|x| {
            let (r, s) = (x % n, x / n);
            let rot = match r {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{r}"),
            };
            match (rot.is_empty(), s) {
                (true, 0) => "1".to_string(),
                (false, 0) => rot,
                (_, _) => format!("{rot}s"),
            }
        })
        .collect();
    group_from_trusted_table(mul, order, names).with_label(format!("D{n}"))
}

/// `±1, ±i, ±j, ±k`, stored as `sign·4 + unit`.
fn quaternion() -> Group {
    // unit product table for 1, i, j, k as (sign, unit)
    const UNIT: [[(u8, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut mul = vec![0u32; 64];
    for a in 0..8 {
        for b in 0..8 {
            let (s, u) = UNIT[a % 4][b % 4];
            let sign = (a / 4 + b / 4 + s as usize) % 2;
            mul[a * 8 + b] = (sign * 4 + u) as u32;
        }
    }
    let names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"].iter().map(|s| s.to_string()).collect();
    group_from_trusted_table(mul, 8, names).with_label("Q8")
}

/// Catalog names of every group of order at most `max_order` in the
/// enumerated families (products only of cyclic groups). Deterministic order.
pub fn names_up_to(max_order: usize) -> Vec<String> {
    let mut out = Vec::new();
    for n in 1..=max_order.min(MAX_CYCLIC) {
        out.push(format!("C{n}"));
    }
    for m in 2..=max_order {
        for n in m..=max_order {
            if m * n <= max_order {
                out.push(format!("C{m}xC{n}"));
            }
        }
    }
    for n in 3..=MAX_DIHEDRAL {
        if 2 * n <= max_order {
            out.push(format!("D{n}"));
        }
    }
    if max_order >= 8 {
        out.push("Q8".into());
    }
    for (name, order) in [("S3", 6), ("A4", 12), ("S4", 24), ("A5", 60), ("S5", 120)] {
        if order <= max_order {
            out.push(name.into());
        }
    }
    out
}
