//! JSON wire formats for groups, permutation groups, digraphs, and coset
//! specifications. Serialization is canonical: fixed field order, sorted
//! sets, identity at index 0, so equal values produce identical bytes.

use serde::{Deserialize, Serialize};

use crate::construct::CosetSpec;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup, CLOSURE_CAP};
use crate::perm::{Perm, PermGroup};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Table {
        n: usize,
        table: Vec<Vec<usize>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Generators {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::ParseError {
        detail: e.to_string(),
    }
}

/// Parse either group form. Returns the group and the relabeling map that
/// moved the identity to index 0 (the identity map for generator input).
pub fn group_from_json(text: &str) -> Result<(Group, Vec<usize>)> {
    let parsed: GroupJson = serde_json::from_str(text).map_err(parse_err)?;
    match parsed {
        GroupJson::Table { n, table, labels } => {
            if table.len() != n {
                return Err(Error::MalformedTable {
                    detail: format!("declared n = {n} but table has {} rows", table.len()),
                });
            }
            Group::from_table(&table, labels)
        }
        GroupJson::Generators { degree, generators } => {
            let (g, _) = Group::from_permutations(degree, &generators, CLOSURE_CAP)?;
            let identity = (0..g.order()).collect();
            Ok((g, identity))
        }
    }
}

pub fn group_to_json(g: &Group) -> String {
    let value = GroupJson::Table {
        n: g.order(),
        table: g.table_rows(),
        labels: g.labels().map(|ls| ls.to_vec()),
    };
    serde_json::to_string(&value).expect("group serialization cannot fail")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DigraphJson {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
}

pub fn digraph_from_json(text: &str) -> Result<Digraph> {
    let parsed: DigraphJson = serde_json::from_str(text).map_err(parse_err)?;
    Digraph::from_arcs(parsed.n, &parsed.arcs)
}

pub fn digraph_to_json(d: &Digraph) -> String {
    let value = DigraphJson {
        n: d.vertex_count(),
        arcs: d.arcs(),
    };
    serde_json::to_string(&value).expect("digraph serialization cannot fail")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PermGroupJson {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

pub fn permgroup_to_json(p: &PermGroup) -> String {
    let value = PermGroupJson {
        degree: p.degree(),
        generators: p.generators().iter().map(|g| g.images().to_vec()).collect(),
    };
    serde_json::to_string(&value).expect("permutation group serialization cannot fail")
}

pub fn permgroup_from_json(text: &str) -> Result<PermGroup> {
    let parsed: PermGroupJson = serde_json::from_str(text).map_err(parse_err)?;
    for (index, images) in parsed.generators.iter().enumerate() {
        let mut seen = vec![false; parsed.degree];
        if images.len() != parsed.degree
            || images
                .iter()
                .any(|&x| x >= parsed.degree || std::mem::replace(&mut seen[x], true))
        {
            return Err(Error::NotAPermutation {
                index,
                degree: parsed.degree,
            });
        }
    }
    Ok(PermGroup::new(
        parsed.degree,
        parsed.generators.into_iter().map(Perm::new).collect(),
    ))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CosetSpecJson {
    pub group: GroupJson,
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    #[serde(rename = "S")]
    pub s: Vec<usize>,
}

pub fn coset_spec_from_json(text: &str) -> Result<CosetSpec> {
    let parsed: CosetSpecJson = serde_json::from_str(text).map_err(parse_err)?;
    let group_text = serde_json::to_string(&parsed.group).map_err(parse_err)?;
    let (group, relabel) = group_from_json(&group_text)?;
    let h: Vec<usize> = parsed
        .h
        .iter()
        .map(|&x| {
            relabel.get(x).copied().ok_or_else(|| Error::ParseError {
                detail: format!("H element {x} out of range"),
            })
        })
        .collect::<Result<_>>()?;
    let s: Vec<usize> = parsed
        .s
        .iter()
        .map(|&x| {
            relabel.get(x).copied().ok_or_else(|| Error::ParseError {
                detail: format!("S element {x} out of range"),
            })
        })
        .collect::<Result<_>>()?;
    let subgroup = Subgroup::new(&group, &h)?;
    CosetSpec::new(group, subgroup, &s)
}

pub fn coset_spec_to_json(spec: &CosetSpec) -> String {
    let value = CosetSpecJson {
        group: GroupJson::Table {
            n: spec.group.order(),
            table: spec.group.table_rows(),
            labels: spec.group.labels().map(|ls| ls.to_vec()),
        },
        h: spec.subgroup.members().to_vec(),
        s: spec.conn.clone(),
    };
    serde_json::to_string(&value).expect("spec serialization cannot fail")
}
