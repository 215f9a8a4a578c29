//! Base graphs with arc-pair structure, voltage assignments, lift
//! construction, universal adjacency matrices of concrete graphs, and
//! connectivity / local-group analysis.

mod input;

pub use input::{parse_vg, VoltageGraphFile};

use nalgebra::DMatrix;

use crate::coeffs::Coeffs;
use crate::error::{Error, Result};
use crate::group_core::{CosetTable, FiniteGroup, Permutation, Subgroup};

/// One directed arc of a base graph. Every undirected edge (or loop) is a
/// pair of mutually reverse arcs.
#[derive(Debug, Clone)]
pub struct Arc {
    pub name: String,
    pub tail: usize,
    pub head: usize,
    /// Index of the reverse arc `a⁻`.
    pub reverse: usize,
}

/// An undirected base graph on `k` named vertices; loops and multiple edges
/// are allowed. The arc list always holds both arcs of every edge.
#[derive(Debug, Clone, Default)]
pub struct BaseGraph {
    vertices: Vec<String>,
    arcs: Vec<Arc>,
}

impl BaseGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if self.vertices.iter().any(|v| v == name) {
            return Err(Error::Internal(format!("duplicate vertex `{name}`")));
        }
        self.vertices.push(name.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn vertex_name(&self, index: usize) -> &str {
        &self.vertices[index]
    }

    /// Adds the arc pair of an undirected edge from `u` to `v` (u = v gives a
    /// loop). Returns the indices of the forward and reverse arcs.
    pub fn add_edge(&mut self, name: &str, u: usize, v: usize) -> (usize, usize) {
        let a = self.arcs.len();
        self.arcs.push(Arc {
            name: name.to_string(),
            tail: u,
            head: v,
            reverse: a + 1,
        });
        self.arcs.push(Arc {
            name: format!("{name}-"),
            tail: v,
            head: u,
            reverse: a,
        });
        (a, a + 1)
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Degree of `u`: number of arcs with tail `u`, so a loop contributes 2.
    pub fn degree(&self, u: usize) -> usize {
        self.arcs.iter().filter(|a| a.tail == u).count()
    }

    /// Number of connected components (0 for the empty graph).
    pub fn components(&self) -> usize {
        component_count(self.order(), self.arcs.iter().map(|a| (a.tail, a.head)))
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.components() == 1
    }

    /// Adjacency matrix counting arcs tail→head; a loop contributes 2 to its
    /// diagonal entry through its two arcs.
    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let k = self.order();
        let mut m = DMatrix::zeros(k, k);
        for a in &self.arcs {
            m[(a.tail, a.head)] += 1.0;
        }
        m
    }

    /// Universal adjacency matrix `c1·A + c2·D + c3·I + c4·J`.
    pub fn universal_matrix(&self, coeffs: Coeffs) -> DMatrix<f64> {
        let degrees: Vec<usize> = (0..self.order()).map(|u| self.degree(u)).collect();
        universal_matrix_from_arcs(
            self.order(),
            self.arcs.iter().map(|a| (a.tail, a.head)),
            &degrees,
            coeffs,
        )
    }
}

fn component_count(nv: usize, arcs: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (t, h) in arcs {
        let (rt, rh) = (find(&mut parent, t), find(&mut parent, h));
        if rt != rh {
            parent[rt] = rh;
        }
    }
    (0..nv).filter(|&v| find(&mut parent, v) == v).count()
}

fn universal_matrix_from_arcs(
    nv: usize,
    arcs: impl Iterator<Item = (usize, usize)>,
    degrees: &[usize],
    coeffs: Coeffs,
) -> DMatrix<f64> {
    let mut m = DMatrix::from_element(nv, nv, coeffs.c4);
    for (t, h) in arcs {
        m[(t, h)] += coeffs.c1;
    }
    for v in 0..nv {
        m[(v, v)] += coeffs.c2 * degrees[v] as f64 + coeffs.c3;
    }
    m
}

/// A voltage assignment on a base graph: one group element per arc, in a
/// group `G` relative to a subgroup `H` (trivial `H` is the ordinary mode).
#[derive(Debug, Clone)]
pub struct VoltageAssignment {
    pub group: FiniteGroup,
    pub subgroup: Subgroup,
    voltages: Vec<Permutation>,
}

impl VoltageAssignment {
    /// All-identity assignment over the given group and subgroup.
    pub fn identity(base: &BaseGraph, group: FiniteGroup, subgroup: Subgroup) -> Self {
        let e = group.identity();
        Self {
            group,
            subgroup,
            voltages: vec![e; base.arcs().len()],
        }
    }

    /// Sets the voltage of the arc and the inverse voltage on its reverse.
    pub fn set_edge_voltage(&mut self, base: &BaseGraph, arc: usize, v: Permutation) {
        let rev = base.arcs()[arc].reverse;
        self.voltages[rev] = v.inverse();
        self.voltages[arc] = v;
    }

    /// Sets the voltage of a single arc without touching its reverse; used
    /// to build deliberately broken assignments in tests and validation.
    pub fn set_arc_voltage(&mut self, arc: usize, v: Permutation) {
        self.voltages[arc] = v;
    }

    pub fn voltage(&self, arc: usize) -> &Permutation {
        &self.voltages[arc]
    }

    /// Checks arc-pair involution, voltage symmetry, membership of all
    /// voltages in the group, and `H ≤ G`.
    pub fn validate(&self, base: &BaseGraph) -> ValidationReport {
        let mut violations = Vec::new();
        let mut warnings = Vec::new();
        if base.order() == 0 {
            warnings.push("empty base graph (k = 0)".to_string());
        }
        if !self.subgroup.is_subgroup_of(&self.group) {
            violations.push("H is not a subgroup of G".to_string());
        }
        if self.voltages.len() != base.arcs().len() {
            violations.push(format!(
                "voltage table has {} entries for {} arcs",
                self.voltages.len(),
                base.arcs().len()
            ));
            return ValidationReport {
                violations,
                warnings,
            };
        }
        for (i, arc) in base.arcs().iter().enumerate() {
            let rev = &base.arcs()[arc.reverse];
            if rev.reverse != i {
                violations.push(format!("arc pairing is not an involution at arc {}", arc.name));
            }
            if rev.tail != arc.head || rev.head != arc.tail {
                violations.push(format!(
                    "reverse of arc {} does not swap tail and head",
                    arc.name
                ));
            }
            if !self.group.contains(&self.voltages[i]) {
                violations.push(format!("voltage of arc {} is not in the group", arc.name));
            } else if self.voltages[arc.reverse] != self.voltages[i].inverse() {
                violations.push(format!("voltage symmetry broken at arc {}", arc.name));
            }
        }
        ValidationReport {
            violations,
            warnings,
        }
    }
}

/// Structured outcome of voltage-graph validation.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Validation(self.violations))
        }
    }
}

/// One arc of a lift graph, remembering where it came from.
#[derive(Debug, Clone)]
pub struct LiftArc {
    pub base_arc: usize,
    pub fiber: usize,
    pub tail: usize,
    pub head: usize,
}

/// The lift `Γ^α`: `k·n` vertices `(u, i)` in base-vertex-major order, with
/// an arc `(a, i)` from `(u, i)` to `(v, i·α(a))` for every base arc and
/// coset index.
#[derive(Debug, Clone)]
pub struct LiftGraph {
    k: usize,
    n: usize,
    arcs: Vec<LiftArc>,
    base_degrees: Vec<usize>,
}

impl LiftGraph {
    pub fn base_order(&self) -> usize {
        self.k
    }

    /// Number of fibers (the index `n = [G : H]`).
    pub fn fibers(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.k * self.n
    }

    pub fn arcs(&self) -> &[LiftArc] {
        &self.arcs
    }

    /// Index of lift vertex `(u, i)` with 0-based fiber index `i`.
    pub fn vertex_index(&self, base_vertex: usize, fiber: usize) -> usize {
        base_vertex * self.n + fiber
    }

    /// `(u, i)` of a lift vertex index.
    pub fn vertex_pair(&self, index: usize) -> (usize, usize) {
        (index / self.n, index % self.n)
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.arcs.iter().filter(|a| a.tail == vertex).count()
    }

    pub fn components(&self) -> usize {
        component_count(self.order(), self.arcs.iter().map(|a| (a.tail, a.head)))
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.components() == 1
    }

    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let nv = self.order();
        let mut m = DMatrix::zeros(nv, nv);
        for a in &self.arcs {
            m[(a.tail, a.head)] += 1.0;
        }
        m
    }

    pub fn universal_matrix(&self, coeffs: Coeffs) -> DMatrix<f64> {
        let degrees: Vec<usize> = (0..self.order())
            .map(|v| self.base_degrees[v / self.n])
            .collect();
        universal_matrix_from_arcs(
            self.order(),
            self.arcs.iter().map(|a| (a.tail, a.head)),
            &degrees,
            coeffs,
        )
    }
}

/// Builds the lift of a validated voltage graph via the right-coset action.
pub fn build_lift(base: &BaseGraph, assignment: &VoltageAssignment) -> Result<LiftGraph> {
    assignment.validate(base).into_result()?;
    let table = CosetTable::new(&assignment.group, &assignment.subgroup)?;
    let n = table.index();
    let k = base.order();
    let mut arcs = Vec::with_capacity(base.arcs().len() * n);
    for (ai, arc) in base.arcs().iter().enumerate() {
        let action = table.coset_action(assignment.voltage(ai))?;
        for i in 0..n {
            let j = action.apply(i + 1) - 1;
            arcs.push(LiftArc {
                base_arc: ai,
                fiber: i,
                tail: arc.tail * n + i,
                head: arc.head * n + j,
            });
        }
    }
    let base_degrees = (0..k).map(|u| base.degree(u)).collect();
    Ok(LiftGraph {
        k,
        n,
        arcs,
        base_degrees,
    })
}

/// The local group at `u`: subgroup of `G` generated by the voltages of the
/// fundamental closed walks (spanning tree plus one generator per cotree
/// edge).
pub fn local_group(
    base: &BaseGraph,
    assignment: &VoltageAssignment,
    u: usize,
) -> Result<Subgroup> {
    if !base.is_connected() {
        return Err(Error::Internal(
            "local group requires a connected base graph".into(),
        ));
    }
    let k = base.order();
    let e = assignment.group.identity();
    let mut walk_voltage: Vec<Option<Permutation>> = vec![None; k];
    walk_voltage[u] = Some(e);
    let mut tree_arcs = vec![false; base.arcs().len()];
    let mut queue = std::collections::VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for (ai, arc) in base.arcs().iter().enumerate() {
            if arc.tail != x || walk_voltage[arc.head].is_some() {
                continue;
            }
            let wx = walk_voltage[x].clone().expect("visited");
            walk_voltage[arc.head] = Some(wx.compose(assignment.voltage(ai))?);
            tree_arcs[ai] = true;
            tree_arcs[arc.reverse] = true;
            queue.push_back(arc.head);
        }
    }
    let mut generators = Vec::new();
    for (ai, arc) in base.arcs().iter().enumerate() {
        if tree_arcs[ai] || ai > arc.reverse {
            continue;
        }
        let wt = walk_voltage[arc.tail].clone().expect("connected");
        let wh = walk_voltage[arc.head].clone().expect("connected");
        let gen = wt.compose(assignment.voltage(ai))?.compose(&wh.inverse())?;
        generators.push(gen);
    }
    Subgroup::from_generators(&assignment.group, &generators)
}

/// Connectivity report: whether the built lift is connected, and whether the
/// algebraic condition `|K_u·H| = |K|` holds. The two must always agree.
#[derive(Debug, Clone)]
pub struct ConnectivityReport {
    pub lift_connected: bool,
    pub local_group_condition: bool,
    pub lift_components: usize,
}

pub fn connectivity_check(
    base: &BaseGraph,
    assignment: &VoltageAssignment,
) -> Result<ConnectivityReport> {
    let lift = build_lift(base, assignment)?;
    let components = lift.components();
    let local = local_group(base, assignment, 0)?;
    let mut product = std::collections::BTreeSet::new();
    for kk in local.elements() {
        for h in assignment.subgroup.elements() {
            product.insert(kk.compose(h)?);
        }
    }
    Ok(ConnectivityReport {
        lift_connected: lift.is_connected(),
        local_group_condition: product.len() == assignment.group.order(),
        lift_components: components,
    })
}


#[cfg(test)]
mod tests {
    use super::tests_support::sym3_example;
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse(text, n).unwrap()
    }

    #[test]
    fn validation_passes_on_example() {
        let (base, va) = sym3_example();
        let report = va.validate(&base);
        assert!(report.is_valid());
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn validation_catches_broken_symmetry() {
        let (base, mut va) = sym3_example();
        // loop arcs are indices 2 and 3
        va.set_arc_voltage(3, p("(1 2 3)", 3));
        let report = va.validate(&base);
        assert!(!report.is_valid());
        assert!(report.violations[0].contains("voltage symmetry broken at arc b"));
        assert!(build_lift(&base, &va).is_err());
    }

    #[test]
    fn validation_empty_graph_warns() {
        let base = BaseGraph::new();
        let group = FiniteGroup::cyclic(2).unwrap();
        let sub = Subgroup::trivial(&group);
        let va = VoltageAssignment::identity(&base, group, sub);
        let report = va.validate(&base);
        assert!(report.is_valid());
        assert_eq!(report.warnings.len(), 1);
    }

    #[test]
    fn degrees_count_loops_twice() {
        let (base, _) = sym3_example();
        assert_eq!(base.degree(0), 1);
        assert_eq!(base.degree(1), 3);
    }

    #[test]
    fn lift_of_sym3_example() {
        let (base, va) = sym3_example();
        let lift = build_lift(&base, &va).unwrap();
        assert_eq!(lift.order(), 6);
        assert_eq!(lift.fibers(), 3);
        // covering projection preserves degrees
        for i in 0..3 {
            assert_eq!(lift.degree(lift.vertex_index(0, i)), 1);
            assert_eq!(lift.degree(lift.vertex_index(1, i)), 3);
        }
        // the loop lifts to a triangle on the v-fiber, so the lift is connected
        assert!(lift.is_connected());
        // adjacency is exactly symmetric
        let a = lift.adjacency_matrix();
        assert_eq!(a, a.transpose());
        // each (u,i)-(v,i) edge persists
        for i in 0..3 {
            assert_eq!(a[(lift.vertex_index(0, i), lift.vertex_index(1, i))], 1.0);
        }
    }

    #[test]
    fn identity_voltages_give_disjoint_copies() {
        let mut base = BaseGraph::new();
        base.add_vertex("u").unwrap();
        base.add_vertex("v").unwrap();
        base.add_edge("a", 0, 1);
        let group = FiniteGroup::cyclic(3).unwrap();
        let sub = Subgroup::trivial(&group);
        let va = VoltageAssignment::identity(&base, group, sub);
        let lift = build_lift(&base, &va).unwrap();
        assert_eq!(lift.components(), 3);
        let report = connectivity_check(&base, &va).unwrap();
        assert!(!report.lift_connected);
        assert!(!report.local_group_condition);
    }

    #[test]
    fn single_loop_full_cycle_voltage_gives_cycle_graph() {
        for n in 3..=6 {
            let mut base = BaseGraph::new();
            base.add_vertex("v").unwrap();
            let (b, _) = base.add_edge("b", 0, 0);
            let group = FiniteGroup::cyclic(n).unwrap();
            let gen = group.generators()[0].clone();
            let sub = Subgroup::trivial(&group);
            let mut va = VoltageAssignment::identity(&base, group, sub);
            va.set_edge_voltage(&base, b, gen);
            let lift = build_lift(&base, &va).unwrap();
            assert_eq!(lift.order(), n);
            assert!(lift.is_connected());
            let a = lift.adjacency_matrix();
            // n-cycle: every vertex has exactly two neighbors
            for v in 0..n {
                assert_eq!(a.row(v).sum(), 2.0);
                assert_eq!(a[(v, v)], 0.0);
            }
        }
    }

    #[test]
    fn universal_matrix_isolated_vertex() {
        let mut base = BaseGraph::new();
        base.add_vertex("w").unwrap();
        let m = base.universal_matrix(Coeffs::raw(1.0, 1.0, 1.0, 1.0));
        assert_eq!(m, DMatrix::from_element(1, 1, 2.0));
    }

    #[test]
    fn trace_identities() {
        let (base, va) = sym3_example();
        let lift = build_lift(&base, &va).unwrap();
        let a = lift.universal_matrix(Coeffs::ADJACENCY);
        // the loop's voltage acts as a 3-cycle, fixing no fiber: trace 0
        assert_eq!(a.trace(), 0.0);
        let d = lift.universal_matrix(Coeffs::raw(1.0, 1.0, 0.0, 0.0)) - a.clone();
        let total_degree: usize = (0..base.order()).map(|u| base.degree(u)).sum();
        assert_eq!(d.trace(), (lift.fibers() * total_degree) as f64);
    }

    #[test]
    fn quotient_consistency() {
        // collapsing the fiber coordinate recovers the base graph
        let (base, va) = sym3_example();
        let lift = build_lift(&base, &va).unwrap();
        let mut collapsed = DMatrix::zeros(base.order(), base.order());
        for arc in lift.arcs() {
            let (u, _) = lift.vertex_pair(arc.tail);
            let (v, _) = lift.vertex_pair(arc.head);
            collapsed[(u, v)] += 1.0;
        }
        assert_eq!(collapsed, base.adjacency_matrix() * lift.fibers() as f64);
    }

    #[test]
    fn local_group_of_example() {
        let (base, va) = sym3_example();
        let local = local_group(&base, &va, 0).unwrap();
        assert_eq!(local.order(), 3);
        assert!(local.contains(&p("(1 2 3)", 3)));
    }

    #[test]
    fn local_group_identity_voltages_is_trivial() {
        let mut base = BaseGraph::new();
        base.add_vertex("u").unwrap();
        base.add_vertex("v").unwrap();
        base.add_edge("a", 0, 1);
        let group = FiniteGroup::symmetric(3).unwrap();
        let sub = Subgroup::trivial(&group);
        let va = VoltageAssignment::identity(&base, group, sub);
        assert!(local_group(&base, &va, 0).unwrap().is_trivial());
    }

    #[test]
    fn local_group_single_loop() {
        let mut base = BaseGraph::new();
        base.add_vertex("v").unwrap();
        let (b, _) = base.add_edge("b", 0, 0);
        let group = FiniteGroup::symmetric(3).unwrap();
        let sub = Subgroup::trivial(&group);
        let mut va = VoltageAssignment::identity(&base, group, sub);
        va.set_edge_voltage(&base, b, p("(1 2)", 3));
        let local = local_group(&base, &va, 0).unwrap();
        assert_eq!(local.order(), 2);
    }

    #[test]
    fn connectivity_example_both_true() {
        let (base, va) = sym3_example();
        let report = connectivity_check(&base, &va).unwrap();
        assert!(report.lift_connected);
        assert!(report.local_group_condition);
    }

    #[test]
    fn connectivity_triangle_lift() {
        let mut base = BaseGraph::new();
        base.add_vertex("v").unwrap();
        let (b, _) = base.add_edge("b", 0, 0);
        let group = FiniteGroup::cyclic(3).unwrap();
        let gen = group.generators()[0].clone();
        let sub = Subgroup::trivial(&group);
        let mut va = VoltageAssignment::identity(&base, group, sub);
        va.set_edge_voltage(&base, b, gen);
        let report = connectivity_check(&base, &va).unwrap();
        assert!(report.lift_connected);
        assert!(report.local_group_condition);
    }
}
