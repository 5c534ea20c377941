//! Serializable reports and plain-text renderings.

use serde::Serialize;

use crate::constructions::{SeparationReport, StarVerdict};
use crate::cyclotomic::Cyclotomic;
use crate::group::Group;
use crate::lattice::{mobius_table, NormalSet};
use crate::theory::{GroupData, GroupPartition, SuperclassCertificate, SuperclassWitness, SupercharacterTheory, Certificate};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactValue {
    /// Coefficients of `1, ζ, ζ², …` for `ζ = E(modulus)`, trailing zeros dropped.
    pub coefficients: Vec<i64>,
    pub text: String,
}

impl From<&Cyclotomic> for ExactValue {
    fn from(c: &Cyclotomic) -> Self {
        let mut coefficients = c.coeffs().to_vec();
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        ExactValue { coefficients, text: c.to_string() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassEntry {
    pub index: usize,
    pub representative: String,
    pub size: usize,
    pub element_order: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterEntry {
    pub index: usize,
    pub degree: u64,
    pub kernel_order: usize,
    pub values: Vec<ExactValue>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChartabReport {
    pub schema_version: u32,
    pub group: String,
    pub order: usize,
    pub modulus: usize,
    pub prime: u64,
    pub classes: Vec<ClassEntry>,
    pub characters: Vec<CharacterEntry>,
}

pub fn chartab_report(data: &GroupData) -> ChartabReport {
    let (g, cc, ct) = (data.group(), data.classes(), data.table());
    ChartabReport {
        schema_version: SCHEMA_VERSION,
        group: g.label().to_string(),
        order: g.order(),
        modulus: ct.modulus(),
        prime: ct.prime(),
        classes: (0..cc.count())
            .map(|c| ClassEntry {
                index: c,
                representative: g.name(cc.rep(c)).to_string(),
                size: cc.size(c),
                element_order: g.element_order(cc.rep(c)),
            })
            .collect(),
        characters: (0..ct.len())
            .map(|i| CharacterEntry {
                index: i,
                degree: ct.degree(i),
                kernel_order: ct.kernels()[i].order(),
                values: ct.row(i).iter().map(ExactValue::from).collect(),
            })
            .collect(),
    }
}

fn names(g: &Group, elements: impl IntoIterator<Item = usize>) -> Vec<String> {
    elements.into_iter().map(|x| g.name(x).to_string()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeMember {
    pub index: usize,
    pub order: usize,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    pub schema_version: u32,
    pub group: String,
    pub members: Vec<LatticeMember>,
    pub hasse_edges: Vec<(usize, usize)>,
    pub mobius: Vec<Vec<i64>>,
}

pub fn lattice_report(g: &Group, ns: &NormalSet) -> LatticeReport {
    LatticeReport {
        schema_version: SCHEMA_VERSION,
        group: g.label().to_string(),
        members: ns
            .members()
            .iter()
            .enumerate()
            .map(|(index, s)| LatticeMember { index, order: s.order(), elements: names(g, s.elements()) })
            .collect(),
        hasse_edges: ns.hasse_edges(),
        mobius: mobius_table(ns).rows().to_vec(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoryReport {
    pub schema_version: u32,
    pub group: String,
    pub superclasses: Vec<Vec<String>>,
    pub superclass_sizes: Vec<usize>,
    pub character_parts: Vec<Vec<usize>>,
    /// One row per character part, one value per conjugacy class.
    pub supercharacters: Vec<Vec<ExactValue>>,
    pub certificate: Certificate,
}

fn partition_names(g: &Group, p: &GroupPartition) -> Vec<Vec<String>> {
    p.parts().iter().map(|part| names(g, part.ones())).collect()
}

pub fn theory_report(data: &GroupData, t: &SupercharacterTheory) -> TheoryReport {
    let g = data.group();
    TheoryReport {
        schema_version: SCHEMA_VERSION,
        group: g.label().to_string(),
        superclasses: partition_names(g, t.superclasses()),
        superclass_sizes: t.superclasses().sizes(),
        character_parts: t.character_parts().parts().to_vec(),
        supercharacters: t.supercharacters().iter().map(|row| row.iter().map(ExactValue::from).collect()).collect(),
        certificate: t.certificate().clone(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub group: String,
    pub verified: bool,
    pub parts: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<SuperclassCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character_parts: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SuperclassWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AutSupEntry {
    pub member: bool,
    pub automorphism_group_order: usize,
    pub subgroups_checked: usize,
    /// Each generator as the list of moved elements `[x, α(x)]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_generators: Option<Vec<Vec<(String, String)>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StarEntry {
    pub normal_order: usize,
    pub normal_elements: Vec<String>,
    pub decomposable: bool,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offending_part: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inner_superclasses: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outer_superclasses: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparationJson {
    pub schema_version: u32,
    pub group: String,
    pub superclasses: Vec<Vec<String>>,
    pub in_autsup: bool,
    pub in_sup_star: bool,
    pub in_nsup: bool,
    /// Sup* is decided for single `*`-products over proper nontrivial normal subgroups.
    pub sup_star_scope: &'static str,
    pub autsup: AutSupEntry,
    pub star: Vec<StarEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nsup_family: Option<Vec<Vec<String>>>,
    pub nsup_families_checked: usize,
}

pub fn separation_json(data: &GroupData, t: &SupercharacterTheory, r: &SeparationReport) -> SeparationJson {
    let g = data.group();
    let k = t.superclasses();
    let star = r
        .star
        .iter()
        .map(|c| {
            let mut entry = StarEntry {
                normal_order: c.n.order(),
                normal_elements: names(g, c.n.elements()),
                decomposable: c.verdict.is_decomposable(),
                reason: String::new(),
                offending_part: None,
                inner_superclasses: None,
                outer_superclasses: None,
            };
            match &c.verdict {
                StarVerdict::Decomposable(f) => {
                    entry.reason = "decomposes as a *-product".into();
                    entry.inner_superclasses = Some(partition_names(f.split.sub().group(), f.inner.superclasses()));
                    entry.outer_superclasses =
                        Some(partition_names(f.split.quotient().group(), f.outer.superclasses()));
                }
                StarVerdict::SplitsPart { part } => {
                    entry.reason = "a superclass meets N without lying inside it".into();
                    entry.offending_part = Some(names(g, k.part(*part).ones()));
                }
                StarVerdict::NotCosetUnion { part } => {
                    entry.reason = "a superclass outside N is not a union of cosets of N".into();
                    entry.offending_part = Some(names(g, k.part(*part).ones()));
                }
                StarVerdict::FactorRejected { reason } => entry.reason = reason.clone(),
            }
            entry
        })
        .collect();
    SeparationJson {
        schema_version: SCHEMA_VERSION,
        group: g.label().to_string(),
        superclasses: partition_names(g, k),
        in_autsup: r.in_autsup(),
        in_sup_star: r.in_sup_star(),
        in_nsup: r.in_nsup(),
        sup_star_scope: "single *-product over a proper nontrivial normal subgroup",
        autsup: AutSupEntry {
            member: r.autsup.member,
            automorphism_group_order: r.autsup.automorphism_group_order,
            subgroups_checked: r.autsup.subgroups_checked,
            witness_generators: r.autsup.witness.as_ref().map(|gens| {
                gens.iter()
                    .map(|m| {
                        m.iter()
                            .enumerate()
                            .filter(|&(x, &y)| x != y)
                            .map(|(x, &y)| (g.name(x).to_string(), g.name(y).to_string()))
                            .collect()
                    })
                    .collect()
            }),
        },
        star,
        nsup_family: r.nsup.family.as_ref().map(|f| f.members().iter().map(|s| names(g, s.elements())).collect()),
        nsup_families_checked: r.nsup.families_checked,
    }
}

/// Pads every column to its widest cell.
fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(s, &w)| format!("{s:>w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn render_chartab(r: &ChartabReport) -> String {
    let mut rows = vec![
        std::iter::once("class".to_string()).chain(r.classes.iter().map(|c| c.representative.clone())).collect(),
        std::iter::once("size".to_string()).chain(r.classes.iter().map(|c| c.size.to_string())).collect(),
        std::iter::once("order".to_string()).chain(r.classes.iter().map(|c| c.element_order.to_string())).collect(),
    ];
    for ch in &r.characters {
        rows.push(
            std::iter::once(format!("X.{}", ch.index + 1)).chain(ch.values.iter().map(|v| v.text.clone())).collect(),
        );
    }
    format!("{} (order {}, E = E({}))\n{}", r.group, r.order, r.modulus, grid(&rows))
}

pub fn render_lattice(r: &LatticeReport) -> String {
    let mut out = format!("{}: {} normal subgroups\n", r.group, r.members.len());
    for m in &r.members {
        out.push_str(&format!("  N{} (order {}): {}\n", m.index, m.order, m.elements.join(", ")));
    }
    out.push_str("covers:");
    for (a, b) in &r.hasse_edges {
        out.push_str(&format!(" N{a}<N{b}"));
    }
    out.push_str("\nmobius:\n");
    let mut rows = vec![std::iter::once(String::new()).chain((0..r.members.len()).map(|i| format!("N{i}"))).collect()];
    for (i, row) in r.mobius.iter().enumerate() {
        rows.push(std::iter::once(format!("N{i}")).chain(row.iter().map(i64::to_string)).collect());
    }
    out.push_str(&grid(&rows));
    out
}

pub fn render_theory(r: &TheoryReport) -> String {
    let mut out = format!("{}: {} superclasses, sizes {:?}\n", r.group, r.superclasses.len(), r.superclass_sizes);
    for (i, part) in r.superclasses.iter().enumerate() {
        out.push_str(&format!("  K{i}: {{{}}}\n", part.join(", ")));
    }
    for (i, part) in r.character_parts.iter().enumerate() {
        let chars: Vec<String> = part.iter().map(|c| format!("X.{}", c + 1)).collect();
        out.push_str(&format!("  X{i}: {{{}}}\n", chars.join(", ")));
    }
    out.push_str("supercharacters by class:\n");
    let rows: Vec<Vec<String>> = r
        .supercharacters
        .iter()
        .enumerate()
        .map(|(i, row)| std::iter::once(format!("s{i}")).chain(row.iter().map(|v| v.text.clone())).collect())
        .collect();
    out.push_str(&grid(&rows));
    let c = &r.certificate;
    out.push_str(&format!(
        "certificate: identity part {}, equal counts {}, constant supercharacters {}, class unions {}, product closed {}, inverse closed {}\n",
        c.identity_part, c.equal_part_counts, c.supercharacters_constant, c.unions_of_classes, c.product_closed, c.inverse_closed
    ));
    out
}

pub fn render_verify(r: &VerifyReport) -> String {
    let mut out = String::new();
    if r.verified {
        let c = r.certificate.as_ref().expect("verified reports carry a certificate");
        out.push_str(&format!("{}: superclass theory with {} parts\n", r.group, c.part_count));
        if let Some(x) = &r.character_parts {
            out.push_str(&format!("character parts: {x:?}\n"));
        }
        out.push_str(&format!("inverse closed: {}\n", c.inverse_closed));
    } else {
        out.push_str(&format!("{}: not a superclass theory\n", r.group));
        if let Some(w) = &r.witness {
            out.push_str(&format!("witness: {w}\n"));
        }
        if let Some(reason) = &r.reason {
            out.push_str(&format!("reason: {reason}\n"));
        }
    }
    out
}

pub fn render_separation(r: &SeparationJson) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut out = format!("{}: superclass sizes {:?}\n", r.group, r.superclasses.iter().map(Vec::len).collect::<Vec<_>>());
    out.push_str(&format!(
        "AutSup: {} ({} of the subgroups of Aut(G), |Aut(G)| = {}, checked)\n",
        yes(r.in_autsup),
        r.autsup.subgroups_checked,
        r.autsup.automorphism_group_order
    ));
    out.push_str(&format!("Sup*:   {} ({})\n", yes(r.in_sup_star), r.sup_star_scope));
    for s in &r.star {
        out.push_str(&format!("  N of order {}: {}", s.normal_order, s.reason));
        if let Some(p) = &s.offending_part {
            out.push_str(&format!(" {{{}}}", p.join(", ")));
        }
        out.push('\n');
    }
    out.push_str(&format!("NSup:   {} ({} closed families checked)\n", yes(r.in_nsup), r.nsup_families_checked));
    out
}
