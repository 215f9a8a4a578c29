//! Plain-text voltage-graph input format. UTF-8, `#` comments, one directive
//! per line:
//!
//! ```text
//! group sym <n> | group cyclic <n> | group perm <n> <perm>[, <perm>...]
//! subgroup stab <point> | subgroup gens <perm>[, ...] | subgroup trivial
//! vertex <name>
//! edge <name> <u> <v> <perm>     # arc pair; voltage on the u→v arc
//! loop <name> <v> <perm>
//! jelement <perm>                # optional override for the all-ones base matrix
//! ```
//!
//! Permutations use cycle notation; in multi-permutation directives the
//! permutations are separated by commas. Vertex and edge order in the file is
//! the canonical order.

use crate::error::{Error, Result};
use crate::group_core::{FiniteGroup, Permutation, Subgroup};
use crate::voltage_graph::{BaseGraph, VoltageAssignment};

/// Parsed contents of a `.vg` file.
#[derive(Debug, Clone)]
pub struct VoltageGraphFile {
    pub base: BaseGraph,
    pub assignment: VoltageAssignment,
    /// Optional user-designated element for the all-ones base matrix.
    pub j_element: Option<Permutation>,
}

pub fn parse_vg(text: &str) -> Result<VoltageGraphFile> {
    let mut group: Option<FiniteGroup> = None;
    let mut subgroup: Option<Subgroup> = None;
    let mut base = BaseGraph::new();
    let mut voltages: Vec<(usize, Permutation)> = Vec::new();
    let mut j_element: Option<Permutation> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line, msg };
        let mut words = content.split_whitespace();
        let directive = words.next().unwrap();
        match directive {
            "group" => {
                if group.is_some() {
                    return Err(err("duplicate group directive".into()));
                }
                let kind = words.next().ok_or_else(|| err("missing group kind".into()))?;
                let n: usize = words
                    .next()
                    .ok_or_else(|| err("missing degree".into()))?
                    .parse()
                    .map_err(|_| err("degree must be a positive integer".into()))?;
                let g = match kind {
                    "sym" => FiniteGroup::symmetric(n),
                    "cyclic" => FiniteGroup::cyclic(n),
                    "perm" => {
                        let rest = perm_text(content).unwrap_or("");
                        let gens = parse_perm_list(rest, n)
                            .map_err(|e| err(e.to_string()))?;
                        FiniteGroup::generate(gens, n)
                    }
                    other => return Err(err(format!("unknown group kind `{other}`"))),
                }
                .map_err(|e| err(e.to_string()))?;
                group = Some(g);
            }
            "subgroup" => {
                let g = group
                    .as_ref()
                    .ok_or_else(|| err("subgroup before group".into()))?;
                if subgroup.is_some() {
                    return Err(err("duplicate subgroup directive".into()));
                }
                let kind = words
                    .next()
                    .ok_or_else(|| err("missing subgroup kind".into()))?;
                let h = match kind {
                    "trivial" => Subgroup::trivial(g),
                    "stab" => {
                        let point: usize = words
                            .next()
                            .ok_or_else(|| err("missing stabilized point".into()))?
                            .parse()
                            .map_err(|_| err("point must be an integer".into()))?;
                        g.stabilizer(point).map_err(|e| err(e.to_string()))?
                    }
                    "gens" => {
                        let rest = perm_text(content).unwrap_or("");
                        let gens = parse_perm_list(rest, g.degree())
                            .map_err(|e| err(e.to_string()))?;
                        Subgroup::from_generators(g, &gens).map_err(|e| err(e.to_string()))?
                    }
                    other => return Err(err(format!("unknown subgroup kind `{other}`"))),
                };
                subgroup = Some(h);
            }
            "vertex" => {
                let name = words.next().ok_or_else(|| err("missing vertex name".into()))?;
                base.add_vertex(name).map_err(|e| err(e.to_string()))?;
            }
            "edge" | "loop" => {
                let g = group
                    .as_ref()
                    .ok_or_else(|| err(format!("{directive} before group")))?;
                let name = words.next().ok_or_else(|| err("missing edge name".into()))?;
                let u = words.next().ok_or_else(|| err("missing tail vertex".into()))?;
                let v = if directive == "edge" {
                    words.next().ok_or_else(|| err("missing head vertex".into()))?
                } else {
                    u
                };
                let rest = perm_text(content).ok_or_else(|| err("missing voltage".into()))?;
                let voltage =
                    Permutation::parse(rest, g.degree()).map_err(|e| err(e.to_string()))?;
                let ui = base.vertex_index(u).map_err(|e| err(e.to_string()))?;
                let vi = base.vertex_index(v).map_err(|e| err(e.to_string()))?;
                let (arc, _) = base.add_edge(name, ui, vi);
                voltages.push((arc, voltage));
            }
            "jelement" => {
                let g = group
                    .as_ref()
                    .ok_or_else(|| err("jelement before group".into()))?;
                let rest = perm_text(content).ok_or_else(|| err("missing permutation".into()))?;
                let perm =
                    Permutation::parse(rest, g.degree()).map_err(|e| err(e.to_string()))?;
                j_element = Some(perm);
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }

    let group = group.ok_or(Error::Parse {
        line: 0,
        msg: "no group directive".into(),
    })?;
    let subgroup = subgroup.unwrap_or_else(|| Subgroup::trivial(&group));
    let mut assignment = VoltageAssignment::identity(&base, group, subgroup);
    for (arc, v) in voltages {
        assignment.set_edge_voltage(&base, arc, v);
    }
    Ok(VoltageGraphFile {
        base,
        assignment,
        j_element,
    })
}

/// The cycle-notation tail of a directive line: everything from the first `(`.
fn perm_text(content: &str) -> Option<&str> {
    content.find('(').map(|i| &content[i..])
}

/// Parses a comma-separated list of permutations in cycle notation.
fn parse_perm_list(text: &str, degree: usize) -> Result<Vec<Permutation>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| Permutation::parse(part.trim(), degree))
        .collect()
}
