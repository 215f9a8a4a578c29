use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::group_core::perm::Permutation;

/// A finite permutation group stored by full element enumeration.
///
/// Elements are kept duplicate-free and sorted lexicographically on their
/// image arrays; this canonical order fixes file-format indexing everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl FiniteGroup {
    /// Closure of the generators under composition and inverse.
    pub fn generate(generators: Vec<Permutation>, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation(
                "group degree 0 is not allowed".into(),
            ));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let identity = Permutation::identity(degree);
        let mut elements: BTreeSet<Permutation> = BTreeSet::new();
        elements.insert(identity.clone());
        let mut frontier = vec![identity];
        while let Some(x) = frontier.pop() {
            for g in &generators {
                let y = x.compose(g)?;
                if elements.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(Self {
            degree,
            elements: elements.into_iter().collect(),
            generators,
        })
    }

    /// The cyclic group generated by the n-cycle `(1 2 .. n)` acting on `[n]`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation(
                "group degree 0 is not allowed".into(),
            ));
        }
        let mut images: Vec<usize> = (2..=n).collect();
        images.push(1);
        let gen = Permutation::from_images(images)?;
        Self::generate(vec![gen], n)
    }

    /// The full symmetric group on `[n]`, generated by `(1 2)` and `(1 2 .. n)`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation(
                "group degree 0 is not allowed".into(),
            ));
        }
        if n == 1 {
            return Self::generate(vec![], 1);
        }
        let mut images: Vec<usize> = (2..=n).collect();
        images.push(1);
        let cycle = Permutation::from_images(images)?;
        let mut swap: Vec<usize> = (1..=n).collect();
        swap.swap(0, 1);
        let swap = Permutation::from_images(swap)?;
        Self::generate(vec![swap, cycle], n)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in canonical (lexicographic) order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Canonical index of an element.
    pub fn index_of(&self, p: &Permutation) -> Result<usize> {
        self.elements
            .binary_search(p)
            .map_err(|_| Error::NotInGroup(p.to_string()))
    }

    /// True iff the orbit of point 1 is all of `[n]`.
    pub fn is_transitive(&self) -> bool {
        let mut reached = vec![false; self.degree];
        reached[0] = true;
        let mut frontier = vec![1usize];
        while let Some(x) = frontier.pop() {
            for g in &self.elements {
                let y = g.apply(x);
                if !reached[y - 1] {
                    reached[y - 1] = true;
                    frontier.push(y);
                }
            }
        }
        reached.iter().all(|&r| r)
    }

    /// The point stabilizer `Stab_G(point)` as a subgroup.
    pub fn stabilizer(&self, point: usize) -> Result<Subgroup> {
        if point < 1 || point > self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        let elements: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|g| g.apply(point) == point)
            .cloned()
            .collect();
        Ok(Subgroup { elements })
    }

    /// True iff the group acts regularly on `[n]` (transitive with trivial
    /// point stabilizers, equivalently |G| = n and transitive).
    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == self.degree
    }
}

/// A subgroup given by its (sorted) element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<Permutation>,
}

impl Subgroup {
    pub fn trivial(parent: &FiniteGroup) -> Self {
        Self {
            elements: vec![parent.identity()],
        }
    }

    /// Whole group as a subgroup of itself.
    pub fn full(parent: &FiniteGroup) -> Self {
        Self {
            elements: parent.elements().to_vec(),
        }
    }

    /// Closure of the generators inside the parent group.
    pub fn from_generators(parent: &FiniteGroup, generators: &[Permutation]) -> Result<Self> {
        for g in generators {
            if !parent.contains(g) {
                return Err(Error::NotInGroup(g.to_string()));
            }
        }
        let closure = FiniteGroup::generate(generators.to_vec(), parent.degree())?;
        Ok(Self {
            elements: closure.elements,
        })
    }

    /// Wraps an element list after checking closure inside the parent.
    pub fn from_elements(parent: &FiniteGroup, elements: Vec<Permutation>) -> Result<Self> {
        let sub = Self::from_generators(parent, &elements)?;
        if sub.elements.len() != elements.iter().collect::<BTreeSet<_>>().len() {
            return Err(Error::NotASubgroup);
        }
        Ok(sub)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, parent: &FiniteGroup) -> bool {
        self.elements.iter().all(|h| parent.contains(h))
            && parent.order() % self.order() == 0
    }

    /// Normality test by elementwise conjugation.
    pub fn is_normal_in(&self, parent: &FiniteGroup) -> Result<bool> {
        for g in parent.elements() {
            let g_inv = g.inverse();
            for h in &self.elements {
                let conj = g_inv.compose(h)?.compose(g)?;
                if !self.contains(&conj) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Right cosets of `H` in `G`, ordered deterministically: coset 1 is `H`
/// itself, the rest discovered by BFS right-multiplying representatives with
/// the group generators in canonical order.
#[derive(Debug, Clone)]
pub struct CosetTable {
    cosets: Vec<Vec<Permutation>>,
    representatives: Vec<Permutation>,
    element_to_coset: HashMap<Permutation, usize>,
}

impl CosetTable {
    pub fn new(group: &FiniteGroup, subgroup: &Subgroup) -> Result<Self> {
        if !subgroup.is_subgroup_of(group) {
            return Err(Error::NotASubgroup);
        }
        // generators in canonical order; fall back to all elements when the
        // group was built without explicit generators
        let mut gens: Vec<Permutation> = if group.generators().is_empty() {
            group.elements().to_vec()
        } else {
            group.generators().to_vec()
        };
        gens.sort();

        let mut element_to_coset: HashMap<Permutation, usize> = HashMap::new();
        let mut cosets: Vec<Vec<Permutation>> = Vec::new();
        let mut representatives: Vec<Permutation> = Vec::new();

        let push_coset = |rep: &Permutation,
                              cosets: &mut Vec<Vec<Permutation>>,
                              reps: &mut Vec<Permutation>,
                              map: &mut HashMap<Permutation, usize>|
         -> Result<usize> {
            let idx = cosets.len();
            let mut members: Vec<Permutation> = subgroup
                .elements()
                .iter()
                .map(|h| h.compose(rep))
                .collect::<Result<_>>()?;
            members.sort();
            for m in &members {
                map.insert(m.clone(), idx);
            }
            cosets.push(members);
            reps.push(rep.clone());
            Ok(idx)
        };

        push_coset(
            &group.identity(),
            &mut cosets,
            &mut representatives,
            &mut element_to_coset,
        )?;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let rep = representatives[i].clone();
            for g in &gens {
                let next = rep.compose(g)?;
                if !element_to_coset.contains_key(&next) {
                    let idx = push_coset(
                        &next,
                        &mut cosets,
                        &mut representatives,
                        &mut element_to_coset,
                    )?;
                    queue.push_back(idx);
                }
            }
        }
        if element_to_coset.len() != group.order() {
            return Err(Error::Internal(
                "coset enumeration did not cover the group".into(),
            ));
        }
        Ok(Self {
            cosets,
            representatives,
            element_to_coset,
        })
    }

    /// Number of cosets, the index `n = |G| / |H|`.
    pub fn index(&self) -> usize {
        self.cosets.len()
    }

    pub fn cosets(&self) -> &[Vec<Permutation>] {
        &self.cosets
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    /// 0-based index of the coset containing `p`.
    pub fn coset_of(&self, p: &Permutation) -> Result<usize> {
        self.element_to_coset
            .get(p)
            .copied()
            .ok_or_else(|| Error::NotInGroup(p.to_string()))
    }

    /// The permutation of `[n]` induced by right multiplication with `g`:
    /// coset index i maps to the index of `H gᵢ g`.
    pub fn coset_action(&self, g: &Permutation) -> Result<Permutation> {
        let mut images = Vec::with_capacity(self.index());
        for rep in &self.representatives {
            let moved = rep.compose(g)?;
            images.push(self.coset_of(&moved)? + 1);
        }
        Permutation::from_images(images)
    }
}

/// The core of `H` in `G`: the largest normal subgroup of `G` contained in
/// `H`, computed as the kernel of the right-coset action.
pub fn core(group: &FiniteGroup, subgroup: &Subgroup) -> Result<Subgroup> {
    let table = CosetTable::new(group, subgroup)?;
    let kernel: Vec<Permutation> = group
        .elements()
        .iter()
        .filter(|g| {
            table
                .coset_action(g)
                .map(|a| a.is_identity())
                .unwrap_or(false)
        })
        .cloned()
        .collect();
    Ok(Subgroup { elements: kernel })
}
