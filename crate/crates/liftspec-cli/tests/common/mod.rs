//! Seeded random voltage-graph instances shared by the acceptance suite.

use liftspec_core::{BaseGraph, FiniteGroup, IrrepSet, Permutation, Subgroup, VoltageAssignment};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct RandomInstance {
    pub label: String,
    pub base: BaseGraph,
    pub assignment: VoltageAssignment,
    pub irreps: IrrepSet,
}

/// Base graph on `k <= 5` vertices with `<= 8` edges, loops and multi-edges
/// allowed, spanning-tree edges first so most instances are connected.
fn random_base(rng: &mut ChaCha8Rng) -> BaseGraph {
    let k = rng.gen_range(1..=5);
    let mut base = BaseGraph::new();
    for u in 0..k {
        base.add_vertex(&format!("v{u}")).unwrap();
    }
    let mut edges = 0usize;
    for u in 1..k {
        base.add_edge(&format!("t{u}"), rng.gen_range(0..u), u);
        edges += 1;
    }
    let extra = rng.gen_range(1..=(8 - edges.max(1)).max(1));
    for i in 0..extra {
        if edges >= 8 {
            break;
        }
        let u = rng.gen_range(0..k);
        let v = rng.gen_range(0..k);
        base.add_edge(&format!("x{i}"), u, v);
        edges += 1;
    }
    base
}

fn random_element(rng: &mut ChaCha8Rng, group: &FiniteGroup) -> Permutation {
    group.elements()[rng.gen_range(0..group.order())].clone()
}

fn assign(
    rng: &mut ChaCha8Rng,
    base: &BaseGraph,
    group: FiniteGroup,
    subgroup: Subgroup,
) -> VoltageAssignment {
    let mut assignment = VoltageAssignment::identity(base, group, subgroup);
    let mut arc = 0;
    while arc < base.arcs().len() {
        let v = random_element(rng, &assignment.group);
        assignment.set_edge_voltage(base, arc, v);
        arc += 2;
    }
    assignment
}

/// `count` instances cycling through cyclic groups Z2..Z8 (ordinary) and
/// Sym(3) with trivial subgroup and with the stabilizer of 1.
pub fn random_instances(seed: u64, count: usize) -> Vec<RandomInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for index in 0..count {
        let base = random_base(&mut rng);
        let (label, group, subgroup) = match index % 9 {
            c @ 0..=6 => {
                let n = c + 2;
                let group = FiniteGroup::cyclic(n).unwrap();
                let sub = Subgroup::trivial(&group);
                (format!("Z{n} ordinary"), group, sub)
            }
            7 => {
                let group = FiniteGroup::symmetric(3).unwrap();
                let sub = Subgroup::trivial(&group);
                ("Sym(3) trivial".into(), group, sub)
            }
            _ => {
                let group = FiniteGroup::symmetric(3).unwrap();
                let sub = group.stabilizer(1).unwrap();
                ("Sym(3) stab(1)".into(), group, sub)
            }
        };
        let irreps = IrrepSet::builtin(&group).unwrap();
        let assignment = assign(&mut rng, &base, group, subgroup);
        out.push(RandomInstance {
            label: format!("#{index} {label}"),
            base,
            assignment,
            irreps,
        });
    }
    out
}

/// Ordinary cyclic instances only (for the Seidel relation check).
pub fn random_cyclic_instances(seed: u64, count: usize) -> Vec<RandomInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for index in 0..count {
        let base = random_base(&mut rng);
        let n = rng.gen_range(2..=8);
        let group = FiniteGroup::cyclic(n).unwrap();
        let sub = Subgroup::trivial(&group);
        let irreps = IrrepSet::cyclic(&group).unwrap();
        let assignment = assign(&mut rng, &base, group, sub);
        out.push(RandomInstance {
            label: format!("#{index} Z{n} ordinary"),
            base,
            assignment,
            irreps,
        });
    }
    out
}
