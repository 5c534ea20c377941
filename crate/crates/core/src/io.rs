//! Text formats: Cayley table files, permutation generator files, partition
//! files, and subgroup selectors.

use crate::error::{Error, Result};
use crate::group::{group_from_cayley_with, group_from_permutations, Group, GroupConfig};
use crate::perm::Permutation;
use crate::subgroup::{subgroup_generate, Subgroup};
use crate::theory::GroupPartition;

/// A multiplication table and optional element names.
pub type CayleyData = (Vec<Vec<usize>>, Option<Vec<String>>);

/// Parses `n`, then `n` rows of `n` indices, then optionally `n` names.
pub fn parse_cayley(text: &str) -> Result<CayleyData> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("empty Cayley file".into()))?
        .parse()
        .map_err(|_| Error::Parse("first line must be the group order".into()))?;
    let mut table = Vec::with_capacity(n);
    for r in 0..n {
        let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {r}")))?;
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad entry {t:?} in row {r}"))))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::Parse(format!("row {r} has {} entries, expected {n}", row.len())));
        }
        table.push(row);
    }
    let names: Vec<String> = lines.map(String::from).collect();
    match names.len() {
        0 => Ok((table, None)),
        m if m == n => Ok((table, Some(names))),
        m => Err(Error::Parse(format!("expected {n} names, found {m}"))),
    }
}

pub fn read_cayley(text: &str, config: &GroupConfig) -> Result<Group> {
    let (table, names) = parse_cayley(text)?;
    group_from_cayley_with(&table, names, config)
}

/// One generator per line in cycle notation.
pub fn parse_permutations(text: &str) -> Result<Vec<Permutation>> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(str::parse).collect()
}

pub fn read_permutations(text: &str, cap: usize) -> Result<Group> {
    let gens = parse_permutations(text)?;
    if gens.is_empty() {
        return Err(Error::Parse("no generators".into()));
    }
    group_from_permutations(&gens, cap)
}

/// Splits on commas that are not inside parentheses.
pub fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out.retain(|s| !s.is_empty());
    out
}

/// Looks up an element by name, accepting `e`/`1`/`()` for the identity,
/// cycle notation in any rotation, and bare factor names in direct products.
pub fn resolve_element(g: &Group, name: &str) -> Result<usize> {
    let name = name.trim();
    if let Some(x) = g.element_by_name(name) {
        return Ok(x);
    }
    if matches!(name, "e" | "1" | "()") {
        return Ok(g.identity());
    }
    if let Ok(p) = name.parse::<Permutation>() {
        if let Some(x) = g.element_by_name(&p.to_string()) {
            return Ok(x);
        }
    }
    if g.product_info().is_some() {
        for candidate in [format!("({name},1)"), format!("(1,{name})")] {
            if let Some(x) = g.element_by_name(&candidate) {
                return Ok(x);
            }
        }
    }
    Err(Error::Parse(format!("no element named {name:?} in {}", g.label())))
}

/// A subgroup given either as a direct factor (`C3x1`, `1xC4`) or as a
/// comma-separated list of generators. The empty selector is the trivial
/// subgroup.
pub fn resolve_subgroup(g: &Group, selector: &str) -> Result<Subgroup> {
    let selector = selector.trim();
    if let Some(info) = g.product_info() {
        let [left, right] = &info.labels;
        let n2 = info.orders[1];
        let pick = |keep: &dyn Fn(usize, usize) -> bool| {
            let elements = (0..g.order()).filter(|&x| keep(x / n2, x % n2));
            Subgroup::from_elements(g, elements)
        };
        for sep in ["x", "X", "×"] {
            if selector == format!("{left}{sep}1") {
                return pick(&|_, b| b == 0);
            }
            if selector == format!("1{sep}{right}") {
                return pick(&|a, _| a == 0);
            }
        }
    }
    let gens = split_top_level(selector).into_iter().map(|s| resolve_element(g, s)).collect::<Result<Vec<_>>>()?;
    Ok(subgroup_generate(g, &gens))
}

/// One part per line; element names separated by top-level commas.
pub fn parse_partition(g: &Group, text: &str) -> Result<GroupPartition> {
    let lists = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|line| {
            split_top_level(line)
                .into_iter()
                .map(|s| resolve_element(g, s).map_err(|e| Error::NotAPartition(e.to_string())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GroupPartition::from_lists(g.order(), &lists)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::error::GroupDefect;

    #[test]
    fn cayley_round_trip() {
        let text = "3\n0 1 2\n1 2 0\n2 0 1\ne\na\nb\n";
        let g = read_cayley(text, &GroupConfig::default()).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.name(1), "a");
        assert!(parse_cayley("2\n0 1\n").is_err());
        assert!(parse_cayley("2\n0 1\n1 0\nonly-one\n").is_err());
        let bad = read_cayley("2\n0 1\n0 1\n", &GroupConfig::default()).unwrap_err();
        assert!(matches!(bad, Error::NotAGroup(GroupDefect::NotLatin { .. })));
    }

    #[test]
    fn permutation_file() {
        let g = read_permutations("# S3\n(1 2 3)\n(1 2)\n", 100).unwrap();
        assert_eq!(g.order(), 6);
        assert!(read_permutations("(1 2\n", 100).is_err());
        assert!(read_permutations("\n", 100).is_err());
    }

    #[test]
    fn splitting_respects_parentheses() {
        assert_eq!(split_top_level("(g,1), (1,h^2),e"), vec!["(g,1)", "(1,h^2)", "e"]);
        assert!(split_top_level("  ").is_empty());
    }

    #[test]
    fn selectors() {
        let g = catalog::group("C3xC4").unwrap();
        assert_eq!(resolve_subgroup(&g, "C3x1").unwrap().order(), 3);
        assert_eq!(resolve_subgroup(&g, "1xC4").unwrap().order(), 4);
        assert_eq!(resolve_subgroup(&g, "h^2").unwrap().order(), 2);
        assert_eq!(resolve_subgroup(&g, "g, h").unwrap().order(), 12);
        assert_eq!(resolve_subgroup(&g, "").unwrap().order(), 1);
        assert!(resolve_subgroup(&g, "k").is_err());

        let s5 = catalog::group("S5").unwrap();
        assert_eq!(resolve_subgroup(&s5, "(2 3 1)").unwrap().order(), 3);
        assert_eq!(resolve_subgroup(&s5, "(1 2 3 4 5),(1 2)").unwrap().order(), 120);
    }

    #[test]
    fn partition_files() {
        let g = catalog::group("C4").unwrap();
        let p = parse_partition(&g, "1\ng^2\ng, g^3\n").unwrap();
        assert_eq!(p.sizes(), vec![1, 2, 1]);
        assert!(matches!(parse_partition(&g, "1\ng\n"), Err(Error::NotAPartition(_))));
        assert!(matches!(parse_partition(&g, "1, g\ng, g^2, g^3\n"), Err(Error::NotAPartition(_))));
        assert!(matches!(parse_partition(&g, "1\nq\n"), Err(Error::NotAPartition(_))));
    }
}
