use std::collections::VecDeque;

use super::{components, ComponentPartition, DartId, Graph, VertexId};
use crate::error::{Error, Result};

/// Breadth-first spanning forest, one tree per component.
///
/// Each component is rooted at its explicit basepoint when one is given,
/// otherwise at the component representative. Darts are explored in index
/// order, so the forest is a function of the graph and the bases alone.
#[derive(Clone, Debug)]
pub struct SpanningForest {
    partition: ComponentPartition,
    roots: Vec<VertexId>,
    /// Dart from the parent into each non-root vertex.
    parent: Vec<Option<DartId>>,
    depth: Vec<usize>,
    in_tree: Vec<bool>,
}

impl SpanningForest {
    pub fn partition(&self) -> &ComponentPartition {
        &self.partition
    }

    pub fn root(&self, component: usize) -> VertexId {
        self.roots[component]
    }

    pub fn roots(&self) -> &[VertexId] {
        &self.roots
    }

    pub fn parent_dart(&self, v: VertexId) -> Option<DartId> {
        self.parent[v.index()]
    }

    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v.index()]
    }

    /// Both darts of every tree edge are marked.
    pub fn is_tree_dart(&self, d: DartId) -> bool {
        self.in_tree[d.index()]
    }

    /// Tree edges of one component, as their lower-indexed dart.
    pub fn tree_edges(&self, g: &Graph, component: usize) -> Vec<DartId> {
        g.edges()
            .filter(|&d| self.in_tree[d.index()] && self.partition.component_of(g.origin(d)) == component)
            .collect()
    }

    pub fn non_tree_edges(&self, g: &Graph, component: usize) -> Vec<DartId> {
        g.edges()
            .filter(|&d| !self.in_tree[d.index()] && self.partition.component_of(g.origin(d)) == component)
            .collect()
    }

    /// Tree darts leading from the root of `v`'s component to `v`.
    pub fn path_from_root(&self, g: &Graph, v: VertexId) -> Vec<DartId> {
        let mut path = Vec::with_capacity(self.depth(v));
        let mut cur = v;
        while let Some(d) = self.parent[cur.index()] {
            path.push(d);
            cur = g.origin(d);
        }
        path.reverse();
        path
    }

    /// Tree darts leading from `v` back to its root.
    pub fn path_to_root(&self, g: &Graph, v: VertexId) -> Vec<DartId> {
        let mut path = Vec::with_capacity(self.depth(v));
        let mut cur = v;
        while let Some(d) = self.parent[cur.index()] {
            let r = g.reverse(d);
            path.push(r);
            cur = g.terminus(r);
        }
        path
    }
}

/// Builds the forest. `bases` override the root of their component; two
/// bases in one component are an error.
pub fn spanning_forest(g: &Graph, bases: &[VertexId]) -> Result<SpanningForest> {
    let partition = components(g);
    let mut roots = partition.representatives().to_vec();
    let mut overridden: Vec<Option<VertexId>> = vec![None; partition.count()];
    for &b in bases {
        if b.index() >= g.vertex_count() {
            return Err(Error::UnknownVertex(b.to_string()));
        }
        let c = partition.component_of(b);
        if let Some(prev) = overridden[c] {
            return Err(Error::BasepointsShareComponent(
                g.vertex_name(prev).to_string(),
                g.vertex_name(b).to_string(),
            ));
        }
        overridden[c] = Some(b);
        roots[c] = b;
    }

    let n = g.vertex_count();
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut seen = vec![false; n];
    let mut in_tree = vec![false; g.dart_count()];
    let mut queue = VecDeque::new();
    for &root in &roots {
        seen[root.index()] = true;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &d in g.star(v) {
                let w = g.terminus(d);
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    parent[w.index()] = Some(d);
                    depth[w.index()] = depth[v.index()] + 1;
                    in_tree[d.index()] = true;
                    in_tree[g.reverse(d).index()] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(SpanningForest {
        partition,
        roots,
        parent,
        depth,
        in_tree,
    })
}
