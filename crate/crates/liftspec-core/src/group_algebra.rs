//! Complex group-algebra elements and the k×k universal base matrix of a
//! voltage graph.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::Complex;

use crate::coeffs::Coeffs;
use crate::error::{Error, Result};
use crate::group_core::{CosetTable, FiniteGroup, Permutation};
use crate::voltage_graph::{BaseGraph, VoltageAssignment};

type C64 = Complex<f64>;

/// A formal complex combination of group elements. Zero coefficients are not
/// stored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AlgebraElement {
    terms: BTreeMap<Permutation, C64>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_element(g: Permutation) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(g, C64::new(1.0, 0.0));
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &C64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &Permutation) -> C64 {
        self.terms.get(g).copied().unwrap_or_else(|| C64::new(0.0, 0.0))
    }

    pub fn add_term(&mut self, g: Permutation, c: C64) {
        let entry = self.terms.entry(g).or_insert_with(|| C64::new(0.0, 0.0));
        *entry += c;
        if entry.norm() == 0.0 {
            let dead: Vec<Permutation> = self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() == 0.0)
                .map(|(g, _)| g.clone())
                .collect();
            for g in dead {
                self.terms.remove(&g);
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), *c);
        }
        out
    }

    pub fn scale(&self, c: C64) -> AlgebraElement {
        if c.norm() == 0.0 {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(g, x)| (g.clone(), x * c)).collect(),
        }
    }

    /// Convolution product induced by group multiplication.
    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (g, cg) in &self.terms {
            for (h, ch) in &other.terms {
                out.add_term(g.compose(h)?, cg * ch);
            }
        }
        Ok(out)
    }

    /// The star involution: g ↦ g⁻¹ with conjugated coefficient.
    pub fn star(&self) -> AlgebraElement {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.inverse(), c.conj()))
                .collect(),
        }
    }
}

/// Prints a group-algebra element with elements in cycle notation, the
/// identity written `e`, e.g. `3e - (1 2 3) - (1 3 2)`.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (g, c) in &self.terms {
            let elem = if g.is_identity() {
                "e".to_string()
            } else {
                g.to_string()
            };
            if c.im == 0.0 {
                let sign_negative = c.re < 0.0;
                let mag = c.re.abs();
                if first {
                    if sign_negative {
                        write!(f, "-")?;
                    }
                } else if sign_negative {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                if mag != 1.0 {
                    write!(f, "{}", fmt_real(mag))?;
                }
                write!(f, "{elem}")?;
            } else {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "({}{}{}i){elem}", fmt_real(c.re), if c.im < 0.0 { "-" } else { "+" }, fmt_real(c.im.abs()))?;
            }
            first = false;
        }
        Ok(())
    }
}

fn fmt_real(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

/// A k×k matrix over the complex group algebra of one common group.
#[derive(Debug, Clone)]
pub struct BaseMatrix {
    group: FiniteGroup,
    k: usize,
    entries: Vec<AlgebraElement>,
}

impl BaseMatrix {
    pub fn zeros(group: FiniteGroup, k: usize) -> Self {
        Self {
            group,
            k,
            entries: vec![AlgebraElement::zero(); k * k],
        }
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn entry(&self, u: usize, v: usize) -> &AlgebraElement {
        &self.entries[u * self.k + v]
    }

    pub fn entry_mut(&mut self, u: usize, v: usize) -> &mut AlgebraElement {
        &mut self.entries[u * self.k + v]
    }

    /// Coefficientwise `self + c · other`.
    pub fn add_scaled(&self, other: &BaseMatrix, c: f64) -> Result<BaseMatrix> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch(format!(
                "base matrices of dimension {} and {}",
                self.k, other.k
            )));
        }
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut out = self.clone();
        let scale = C64::new(c, 0.0);
        for (dst, src) in out.entries.iter_mut().zip(&other.entries) {
            *dst = dst.add(&src.scale(scale));
        }
        Ok(out)
    }

    pub fn scale(&self, c: f64) -> BaseMatrix {
        let scale = C64::new(c, 0.0);
        BaseMatrix {
            group: self.group.clone(),
            k: self.k,
            entries: self.entries.iter().map(|e| e.scale(scale)).collect(),
        }
    }

    /// True when `entry(u,v) = star(entry(v,u))` for all u, v.
    pub fn is_star_symmetric(&self) -> bool {
        (0..self.k).all(|u| {
            (0..self.k).all(|v| self.entry(u, v) == &self.entry(v, u).star())
        })
    }

    /// Multi-line pretty print used by the CLI `info` command.
    pub fn pretty(&self) -> String {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        let mut out = String::new();
        for u in 0..self.k {
            out.push_str("[ ");
            for v in 0..self.k {
                if v > 0 {
                    out.push_str("  ");
                }
                out.push_str(&format!("{:>width$}", cells[u * self.k + v]));
            }
            out.push_str(" ]\n");
        }
        out
    }
}

/// The four components `B(A)`, `B(D)`, `B(I)`, `B(J)` of the universal base
/// matrix. The all-ones component is absent when no suitable element exists.
#[derive(Debug, Clone)]
pub struct BaseComponents {
    pub adjacency: BaseMatrix,
    pub degree: BaseMatrix,
    pub identity: BaseMatrix,
    all_ones: Option<BaseMatrix>,
    j_element: Option<Permutation>,
    j_reason: Option<String>,
}

impl BaseComponents {
    pub fn all_ones(&self) -> Result<&BaseMatrix> {
        self.all_ones.as_ref().ok_or_else(|| {
            Error::UnsupportedJ(
                self.j_reason
                    .clone()
                    .unwrap_or_else(|| "no all-ones base matrix".into()),
            )
        })
    }

    pub fn all_ones_supported(&self) -> bool {
        self.all_ones.is_some()
    }

    /// The element whose coset-action powers build `B(J)` in relative mode.
    pub fn j_element(&self) -> Option<&Permutation> {
        self.j_element.as_ref()
    }

    pub fn j_unsupported_reason(&self) -> Option<&str> {
        self.j_reason.as_deref()
    }
}

/// Computes the component base matrices of a validated voltage graph.
///
/// `B(A)_{uv}` sums the voltages of all arcs u→v, `B(D)` is `diag(deg(u)·e)`,
/// `B(I)` is `diag(e)`. For `B(J)`: in ordinary mode (trivial `H`) every
/// entry is the sum over the whole group; otherwise every entry is
/// `π⁰+π¹+…+πⁿ⁻¹` for an element `π` whose coset action is an n-cycle,
/// either user-designated or found by canonical-order search.
pub fn base_components(
    base: &BaseGraph,
    assignment: &VoltageAssignment,
    table: &CosetTable,
    j_override: Option<&Permutation>,
) -> Result<BaseComponents> {
    assignment.validate(base).into_result()?;
    let group = assignment.group.clone();
    let k = base.order();
    let e = group.identity();

    let mut adjacency = BaseMatrix::zeros(group.clone(), k);
    for (ai, arc) in base.arcs().iter().enumerate() {
        adjacency
            .entry_mut(arc.tail, arc.head)
            .add_term(assignment.voltage(ai).clone(), C64::new(1.0, 0.0));
    }

    let mut degree = BaseMatrix::zeros(group.clone(), k);
    let mut identity = BaseMatrix::zeros(group.clone(), k);
    for u in 0..k {
        degree
            .entry_mut(u, u)
            .add_term(e.clone(), C64::new(base.degree(u) as f64, 0.0));
        identity.entry_mut(u, u).add_term(e.clone(), C64::new(1.0, 0.0));
    }

    let n = table.index();
    let (j_entry, j_element, j_reason) = if let Some(pi) = j_override {
        if !group.contains(pi) {
            return Err(Error::UnsupportedJ(format!(
                "designated element {pi} is not in the group"
            )));
        }
        if !table.coset_action(pi)?.is_full_cycle() {
            return Err(Error::UnsupportedJ(format!(
                "designated element {pi} does not act as an {n}-cycle on the cosets"
            )));
        }
        (Some(power_sum(pi, n)?), Some(pi.clone()), None)
    } else if assignment.subgroup.is_trivial() {
        let mut sum = AlgebraElement::zero();
        for g in group.elements() {
            sum.add_term(g.clone(), C64::new(1.0, 0.0));
        }
        (Some(sum), None, None)
    } else {
        match group
            .elements()
            .iter()
            .find(|g| table.coset_action(g).map(|a| a.is_full_cycle()).unwrap_or(false))
        {
            Some(pi) => (Some(power_sum(pi, n)?), Some(pi.clone()), None),
            None => (
                None,
                None,
                Some(format!(
                    "no element of the group acts as an {n}-cycle on the cosets"
                )),
            ),
        }
    };

    let all_ones = match j_entry {
        Some(entry) => {
            let mut m = BaseMatrix::zeros(group.clone(), k);
            for u in 0..k {
                for v in 0..k {
                    *m.entry_mut(u, v) = entry.clone();
                }
            }
            Some(m)
        }
        None => None,
    };

    Ok(BaseComponents {
        adjacency,
        degree,
        identity,
        all_ones,
        j_element,
        j_reason,
    })
}

fn power_sum(pi: &Permutation, n: usize) -> Result<AlgebraElement> {
    let mut sum = AlgebraElement::zero();
    let mut power = Permutation::identity(pi.degree());
    for _ in 0..n {
        sum.add_term(power.clone(), C64::new(1.0, 0.0));
        power = power.compose(pi)?;
    }
    Ok(sum)
}

/// `B(U) = c1·B(A) + c2·B(D) + c3·B(I) + c4·B(J)`. The all-ones component is
/// only required when `c4 ≠ 0`.
pub fn universal_base_matrix(components: &BaseComponents, coeffs: Coeffs) -> Result<BaseMatrix> {
    let mut out = components.adjacency.scale(coeffs.c1);
    out = out.add_scaled(&components.degree, coeffs.c2)?;
    out = out.add_scaled(&components.identity, coeffs.c3)?;
    if coeffs.c4 != 0.0 {
        out = out.add_scaled(components.all_ones()?, coeffs.c4)?;
    }
    Ok(out)
}
