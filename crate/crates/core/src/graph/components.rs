use std::collections::VecDeque;

use super::{Graph, GraphMorphism, VertexId};

/// Connected components of a graph. Component `k` is the one whose
/// representative (its minimum vertex) is the `k`-th smallest representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    index: Vec<usize>,
    representatives: Vec<VertexId>,
    members: Vec<Vec<VertexId>>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.index[v.index()]
    }

    pub fn representative(&self, component: usize) -> VertexId {
        self.representatives[component]
    }

    pub fn representatives(&self) -> &[VertexId] {
        &self.representatives
    }

    /// Vertices of a component in increasing order.
    pub fn members(&self, component: usize) -> &[VertexId] {
        &self.members[component]
    }

    pub fn same_component(&self, u: VertexId, v: VertexId) -> bool {
        self.component_of(u) == self.component_of(v)
    }
}

pub fn components(g: &Graph) -> ComponentPartition {
    let n = g.vertex_count();
    let mut index = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    let mut members = Vec::new();
    let mut queue = VecDeque::new();
    for start in g.vertices() {
        if index[start.index()] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(start);
        let mut group = Vec::new();
        index[start.index()] = c;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            group.push(v);
            for &d in g.star(v) {
                let w = g.terminus(d);
                if index[w.index()] == usize::MAX {
                    index[w.index()] = c;
                    queue.push_back(w);
                }
            }
        }
        group.sort();
        members.push(group);
    }
    ComponentPartition {
        index,
        representatives,
        members,
    }
}

/// The induced map on components, `[x] -> [f(x)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi0Map {
    pub map: Vec<usize>,
    pub target_count: usize,
    pub surjective: bool,
    pub injective: bool,
}

impl Pi0Map {
    pub fn is_bijective(&self) -> bool {
        self.surjective && self.injective
    }

    /// Target components not hit by the map.
    pub fn missed(&self) -> Vec<usize> {
        (0..self.target_count).filter(|c| !self.map.contains(c)).collect()
    }

    /// Pairs of distinct source components with the same image.
    pub fn collisions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.map.len() {
            for j in i + 1..self.map.len() {
                if self.map[i] == self.map[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

pub fn induced_pi0_map(f: &GraphMorphism) -> Pi0Map {
    let src = components(f.source());
    let dst = components(f.target());
    let map: Vec<usize> = src
        .representatives()
        .iter()
        .map(|&r| dst.component_of(f.vertex(r)))
        .collect();
    let mut hit = vec![false; dst.count()];
    for &c in &map {
        hit[c] = true;
    }
    let mut sorted = map.clone();
    sorted.sort_unstable();
    sorted.dedup();
    Pi0Map {
        surjective: hit.iter().all(|&h| h),
        injective: sorted.len() == map.len(),
        target_count: dst.count(),
        map,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::shapes;

    #[test]
    fn component_counts() {
        let c3 = shapes::cycle("C3", 3);
        assert_eq!(components(&c3).count(), 1);
        let two = Graph::disjoint_union("2C3", &[&c3, &c3]);
        let p = components(&two);
        assert_eq!(p.count(), 2);
        assert_eq!(p.representative(0), VertexId::new(0));
        assert_eq!(p.representative(1), VertexId::new(3));
        assert!(p.same_component(VertexId::new(0), VertexId::new(2)));
        assert!(!p.same_component(VertexId::new(0), VertexId::new(3)));
    }

    #[test]
    fn pi0_of_identity_inclusion_and_fold() {
        let c3 = Arc::new(shapes::cycle("C3", 3));
        let two = Arc::new(Graph::disjoint_union("2C3", &[&c3, &c3]));
        let id = GraphMorphism::identity(c3.clone());
        let m = induced_pi0_map(&id);
        assert!(m.is_bijective());

        let inc = shapes::summand_inclusion(&two, &c3, 0);
        let m = induced_pi0_map(&inc);
        assert!(m.injective && !m.surjective);
        assert_eq!(m.missed(), vec![1]);

        let fold = shapes::fold_summands(&two, &c3);
        let m = induced_pi0_map(&fold);
        assert!(m.surjective && !m.injective);
        assert_eq!(m.collisions(), vec![(0, 1)]);
    }
}
