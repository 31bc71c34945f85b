//! Finite multigraphs in dart (half-edge) form.
//!
//! A [`Graph`] is a finite set of vertices together with a finite set of
//! darts, a fixed-point-free involution `reverse` on the darts and an
//! `origin` map. Every edge is an orbit `{d, reverse(d)}` of the involution,
//! so loops and parallel edges need no special treatment.

mod components;
mod forest;
mod morphism;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

pub use components::{components, induced_pi0_map, ComponentPartition, Pi0Map};
pub use forest::{spanning_forest, SpanningForest};
pub(crate) use morphism::same_graph;
pub use morphism::{GraphMorphism, MorphismViolation};

use crate::error::{Error, Result};

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(u32);

        impl $name {
            pub fn new(index: usize) -> Self {
                Self(u32::try_from(index).expect("identifier overflow"))
            }

            pub fn index(self) -> usize {
                self.0 as usize
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

id_type!(
    /// Index of a vertex inside one [`Graph`].
    VertexId
);
id_type!(
    /// Index of a dart inside one [`Graph`].
    DartId
);

/// A validated finite multigraph.
///
/// Vertices and darts are stored by index; every index carries an opaque
/// textual name. Graphs built from a [`GraphDescription`] order both by name,
/// so the lowest index is the lexicographically smallest identifier.
#[derive(Clone, Debug)]
pub struct Graph {
    name: String,
    vertex_names: Vec<String>,
    dart_names: Vec<String>,
    origin: Vec<VertexId>,
    reverse: Vec<DartId>,
    bases: Vec<VertexId>,
    stars: Vec<Vec<DartId>>,
    vertex_lookup: HashMap<String, VertexId>,
    dart_lookup: HashMap<String, DartId>,
}

/// Structural equality: names, origins and involution. The graph's own name
/// and its declared basepoints are not compared.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_names == other.vertex_names
            && self.dart_names == other.dart_names
            && self.origin == other.origin
            && self.reverse == other.reverse
    }
}

impl Eq for Graph {}

impl Graph {
    /// Assembles a graph from index-ordered parts. Callers inside the crate
    /// guarantee the invariants; they are re-checked in debug builds.
    pub(crate) fn from_parts(
        name: impl Into<String>,
        vertex_names: Vec<String>,
        dart_names: Vec<String>,
        origin: Vec<VertexId>,
        reverse: Vec<DartId>,
        bases: Vec<VertexId>,
    ) -> Self {
        debug_assert_eq!(dart_names.len(), origin.len());
        debug_assert_eq!(dart_names.len(), reverse.len());
        debug_assert!(reverse
            .iter()
            .enumerate()
            .all(|(d, r)| r.index() != d && reverse[r.index()].index() == d));
        let mut stars = vec![Vec::new(); vertex_names.len()];
        for (d, o) in origin.iter().enumerate() {
            stars[o.index()].push(DartId::new(d));
        }
        let vertex_lookup = vertex_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), VertexId::new(i)))
            .collect();
        let dart_lookup = dart_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), DartId::new(i)))
            .collect();
        Graph {
            name: name.into(),
            vertex_names,
            dart_names,
            origin,
            reverse,
            bases,
            stars,
            vertex_lookup,
            dart_lookup,
        }
    }

    pub fn empty(name: impl Into<String>) -> Self {
        Self::from_parts(name, Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn dart_count(&self) -> usize {
        self.dart_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.dart_names.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_names.is_empty()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + Clone {
        (0..self.vertex_count()).map(VertexId::new)
    }

    pub fn darts(&self) -> impl ExactSizeIterator<Item = DartId> + Clone {
        (0..self.dart_count()).map(DartId::new)
    }

    /// One dart per edge: the lower-indexed dart of each involution orbit.
    pub fn edges(&self) -> impl Iterator<Item = DartId> + '_ {
        self.darts().filter(move |&d| d < self.reverse(d))
    }

    pub fn origin(&self, d: DartId) -> VertexId {
        self.origin[d.index()]
    }

    pub fn reverse(&self, d: DartId) -> DartId {
        self.reverse[d.index()]
    }

    pub fn terminus(&self, d: DartId) -> VertexId {
        self.origin(self.reverse(d))
    }

    /// Darts with origin `v`, in index order.
    pub fn star(&self, v: VertexId) -> &[DartId] {
        &self.stars[v.index()]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn dart_name(&self, d: DartId) -> &str {
        &self.dart_names[d.index()]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn dart_by_name(&self, name: &str) -> Option<DartId> {
        self.dart_lookup.get(name).copied()
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_by_name(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Explicit basepoints, in declaration order (at most one per component).
    pub fn bases(&self) -> &[VertexId] {
        &self.bases
    }

    pub fn with_bases(mut self, bases: Vec<VertexId>) -> Result<Self> {
        let partition = components(&self);
        let mut seen: HashMap<usize, VertexId> = HashMap::new();
        for &b in &bases {
            if b.index() >= self.vertex_count() {
                return Err(Error::UnknownVertex(b.to_string()));
            }
            if let Some(prev) = seen.insert(partition.component_of(b), b) {
                return Err(Error::BasepointsShareComponent(
                    self.vertex_name(prev).to_string(),
                    self.vertex_name(b).to_string(),
                ));
            }
        }
        self.bases = bases;
        Ok(self)
    }

    /// Name of the edge containing `d` and whether `d` is its positive dart.
    ///
    /// Darts named `X+` / `X-` belong to edge `X`. Any other pairing falls back
    /// to the name of the lower-indexed dart.
    pub fn edge_label(&self, d: DartId) -> (String, bool) {
        let r = self.reverse(d);
        let name = self.dart_name(d);
        let rname = self.dart_name(r);
        if let (Some(stem), Some(rstem)) = (name.strip_suffix('+'), rname.strip_suffix('-')) {
            if stem == rstem {
                return (stem.to_string(), true);
            }
        }
        if let (Some(stem), Some(rstem)) = (name.strip_suffix('-'), rname.strip_suffix('+')) {
            if stem == rstem {
                return (stem.to_string(), false);
            }
        }
        if d < r {
            (name.to_string(), true)
        } else {
            (rname.to_string(), false)
        }
    }

    /// The positive dart of an edge, if `d` is one of its darts.
    pub fn positive_dart(&self, d: DartId) -> DartId {
        if self.edge_label(d).1 {
            d
        } else {
            self.reverse(d)
        }
    }

    /// Disjoint union of graphs; names are prefixed by the summand position
    /// only when they would collide.
    pub fn disjoint_union(name: impl Into<String>, parts: &[&Graph]) -> Graph {
        let mut vertex_names = Vec::new();
        let mut dart_names = Vec::new();
        let mut origin = Vec::new();
        let mut reverse = Vec::new();
        let mut bases = Vec::new();
        let collide = {
            let mut vs = BTreeSet::new();
            let mut ds = BTreeSet::new();
            let mut clash = false;
            for g in parts {
                clash |= g.vertex_names.iter().any(|n| !vs.insert(n.as_str()));
                clash |= g.dart_names.iter().any(|n| !ds.insert(n.as_str()));
            }
            clash
        };
        for (k, g) in parts.iter().enumerate() {
            let v_off = vertex_names.len();
            let d_off = dart_names.len();
            let rename = |n: &str| {
                if collide {
                    format!("{n}.{k}")
                } else {
                    n.to_string()
                }
            };
            vertex_names.extend(g.vertex_names.iter().map(|n| rename(n)));
            dart_names.extend(g.dart_names.iter().map(|n| {
                // keep the `X+`/`X-` convention intact under renaming
                match (n.strip_suffix('+'), n.strip_suffix('-')) {
                    (Some(s), _) if collide => format!("{}+", rename(s)),
                    (_, Some(s)) if collide => format!("{}-", rename(s)),
                    _ => rename(n),
                }
            }));
            origin.extend(g.origin.iter().map(|o| VertexId::new(o.index() + v_off)));
            reverse.extend(g.reverse.iter().map(|r| DartId::new(r.index() + d_off)));
            bases.extend(g.bases.iter().map(|b| VertexId::new(b.index() + v_off)));
        }
        Graph::from_parts(name, vertex_names, dart_names, origin, reverse, bases)
    }
}

/// `(a,b)` for vertex names; for a dart name `x+` or `x-` the sign stays
/// outside the pair, `(x,b)+`, so the edge-label convention survives.
pub(crate) fn pair_name(a: &str, b: &str) -> String {
    match a.strip_suffix('+').map(|s| (s, '+')).or_else(|| a.strip_suffix('-').map(|s| (s, '-'))) {
        Some((stem, sign)) => format!("({stem},{b}){sign}"),
        None => format!("({a},{b})"),
    }
}

/// An unvalidated graph: vertices, darts with origin and reverse, and
/// optional basepoints, all by name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphDescription {
    pub name: String,
    pub vertices: Vec<String>,
    pub darts: Vec<DartDescription>,
    pub bases: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DartDescription {
    pub name: String,
    pub origin: String,
    pub reverse: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphViolation {
    DuplicateVertex(String),
    DuplicateDart(String),
    DanglingOrigin { dart: String, origin: String },
    UnknownReverse { dart: String, reverse: String },
    FixedPoint(String),
    NotSelfInverse { dart: String, reverse: String },
    UnknownBase(String),
    BasesShareComponent(String, String),
}

impl fmt::Display for GraphViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DuplicateVertex(v) => write!(f, "duplicate vertex {v}"),
            Self::DuplicateDart(d) => write!(f, "duplicate dart {d}"),
            Self::DanglingOrigin { dart, origin } => {
                write!(f, "dangling origin {origin} of dart {dart}")
            }
            Self::UnknownReverse { dart, reverse } => {
                write!(f, "dart {dart} has unknown reverse {reverse}")
            }
            Self::FixedPoint(d) => write!(f, "involution fixed point at {d}"),
            Self::NotSelfInverse { dart, reverse } => {
                write!(f, "involution not self-inverse at {dart} (reverse {reverse})")
            }
            Self::UnknownBase(v) => write!(f, "unknown basepoint {v}"),
            Self::BasesShareComponent(a, b) => {
                write!(f, "basepoints {a} and {b} lie in one component")
            }
        }
    }
}

/// Checks every invariant and returns the graph, or every violation found.
pub fn validate_graph(desc: &GraphDescription) -> Result<Graph> {
    let mut violations = Vec::new();

    let mut vertex_names: Vec<String> = desc.vertices.clone();
    vertex_names.sort();
    for w in vertex_names.windows(2) {
        if w[0] == w[1] {
            violations.push(GraphViolation::DuplicateVertex(w[0].clone()));
        }
    }
    vertex_names.dedup();

    let mut darts: Vec<&DartDescription> = desc.darts.iter().collect();
    darts.sort_by(|a, b| a.name.cmp(&b.name));
    for w in darts.windows(2) {
        if w[0].name == w[1].name {
            violations.push(GraphViolation::DuplicateDart(w[0].name.clone()));
        }
    }
    darts.dedup_by(|a, b| a.name == b.name);

    let vindex: HashMap<&str, usize> = vertex_names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let dindex: HashMap<&str, usize> = darts
        .iter()
        .enumerate()
        .map(|(i, d)| (d.name.as_str(), i))
        .collect();

    let mut origin = Vec::with_capacity(darts.len());
    let mut reverse = Vec::with_capacity(darts.len());
    for d in &darts {
        match vindex.get(d.origin.as_str()) {
            Some(&o) => origin.push(VertexId::new(o)),
            None => {
                violations.push(GraphViolation::DanglingOrigin {
                    dart: d.name.clone(),
                    origin: d.origin.clone(),
                });
                origin.push(VertexId::new(0));
            }
        }
        match dindex.get(d.reverse.as_str()) {
            Some(&r) => reverse.push(Some(r)),
            None => {
                violations.push(GraphViolation::UnknownReverse {
                    dart: d.name.clone(),
                    reverse: d.reverse.clone(),
                });
                reverse.push(None);
            }
        }
    }
    for (i, r) in reverse.iter().enumerate() {
        let Some(r) = *r else { continue };
        if r == i {
            violations.push(GraphViolation::FixedPoint(darts[i].name.clone()));
        } else if reverse[r] != Some(i) {
            violations.push(GraphViolation::NotSelfInverse {
                dart: darts[i].name.clone(),
                reverse: darts[r].name.clone(),
            });
        }
    }

    let mut bases = Vec::new();
    for b in &desc.bases {
        match vindex.get(b.as_str()) {
            Some(&i) => bases.push(VertexId::new(i)),
            None => violations.push(GraphViolation::UnknownBase(b.clone())),
        }
    }

    if !violations.is_empty() {
        return Err(Error::InvalidGraph(violations));
    }

    let reverse = reverse.into_iter().map(|r| DartId::new(r.unwrap())).collect();
    let dart_names = darts.iter().map(|d| d.name.clone()).collect();
    let graph = Graph::from_parts(
        desc.name.clone(),
        vertex_names,
        dart_names,
        origin,
        reverse,
        Vec::new(),
    );
    graph.with_bases(bases).map_err(|e| match e {
        Error::BasepointsShareComponent(a, b) => {
            Error::InvalidGraph(vec![GraphViolation::BasesShareComponent(a, b)])
        }
        other => other,
    })
}

/// Convenience builder: each `edge(e, u, v)` adds darts `e+` (origin `u`)
/// and `e-` (origin `v`).
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    desc: GraphDescription,
}

impl GraphBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        GraphBuilder {
            desc: GraphDescription {
                name: name.into(),
                ..Default::default()
            },
        }
    }

    pub fn vertex(mut self, v: impl Into<String>) -> Self {
        self.desc.vertices.push(v.into());
        self
    }

    pub fn vertices<I, S>(mut self, vs: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.desc.vertices.extend(vs.into_iter().map(Into::into));
        self
    }

    pub fn edge(mut self, e: impl Into<String>, u: impl Into<String>, v: impl Into<String>) -> Self {
        let e = e.into();
        self.desc.darts.push(DartDescription {
            name: format!("{e}+"),
            origin: u.into(),
            reverse: format!("{e}-"),
        });
        self.desc.darts.push(DartDescription {
            name: format!("{e}-"),
            origin: v.into(),
            reverse: format!("{e}+"),
        });
        self
    }

    pub fn base(mut self, v: impl Into<String>) -> Self {
        self.desc.bases.push(v.into());
        self
    }

    pub fn description(&self) -> &GraphDescription {
        &self.desc
    }

    pub fn build(self) -> Result<Graph> {
        validate_graph(&self.desc)
    }
}

/// A subgraph given by a vertex set and a reverse-closed dart set whose
/// origins lie in the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub vertices: BTreeSet<VertexId>,
    pub darts: BTreeSet<DartId>,
}

impl Subgraph {
    pub fn new(
        graph: &Graph,
        vertices: impl IntoIterator<Item = VertexId>,
        darts: impl IntoIterator<Item = DartId>,
    ) -> Result<Self> {
        let vertices: BTreeSet<_> = vertices.into_iter().collect();
        let darts: BTreeSet<_> = darts.into_iter().collect();
        if let Some(v) = vertices.iter().find(|v| v.index() >= graph.vertex_count()) {
            return Err(Error::InvalidSubgraph(format!("vertex index {v} out of range")));
        }
        for &d in &darts {
            if d.index() >= graph.dart_count() {
                return Err(Error::InvalidSubgraph(format!("dart index {d} out of range")));
            }
            if !vertices.contains(&graph.origin(d)) {
                return Err(Error::InvalidSubgraph(format!(
                    "dart {} leaves the vertex set",
                    graph.dart_name(d)
                )));
            }
            if !darts.contains(&graph.reverse(d)) {
                return Err(Error::InvalidSubgraph(format!(
                    "dart {} without its reverse",
                    graph.dart_name(d)
                )));
            }
        }
        Ok(Subgraph { vertices, darts })
    }

    /// The full subgraph spanned by `vertices`.
    pub fn induced(graph: &Graph, vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let vertices: BTreeSet<_> = vertices.into_iter().collect();
        let darts: Vec<_> = graph
            .darts()
            .filter(|&d| vertices.contains(&graph.origin(d)) && vertices.contains(&graph.terminus(d)))
            .collect();
        Subgraph::new(graph, vertices, darts)
    }

    pub fn whole(graph: &Graph) -> Self {
        Subgraph {
            vertices: graph.vertices().collect(),
            darts: graph.darts().collect(),
        }
    }

    /// The subgraph as a graph of its own, with the inclusion into `graph`.
    pub fn realize(&self, graph: &Arc<Graph>, name: impl Into<String>) -> (Arc<Graph>, GraphMorphism) {
        let vpos: HashMap<VertexId, usize> =
            self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let dpos: HashMap<DartId, usize> =
            self.darts.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        let sub = Graph::from_parts(
            name,
            self.vertices.iter().map(|&v| graph.vertex_name(v).to_string()).collect(),
            self.darts.iter().map(|&d| graph.dart_name(d).to_string()).collect(),
            self.darts.iter().map(|&d| VertexId::new(vpos[&graph.origin(d)])).collect(),
            self.darts.iter().map(|&d| DartId::new(dpos[&graph.reverse(d)])).collect(),
            graph
                .bases()
                .iter()
                .filter_map(|b| vpos.get(b).map(|&i| VertexId::new(i)))
                .collect(),
        );
        let sub = Arc::new(sub);
        let inclusion = GraphMorphism::from_parts(
            sub.clone(),
            graph.clone(),
            self.vertices.iter().copied().collect(),
            self.darts.iter().copied().collect(),
        );
        (sub, inclusion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    #[test]
    fn empty_description_is_the_empty_graph() {
        let g = validate_graph(&GraphDescription::default()).unwrap();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.dart_count(), 0);
        assert_eq!(components(&g).count(), 0);
    }

    #[test]
    fn triangle_is_valid() {
        let g = shapes::cycle("C3", 3);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.dart_count(), 6);
        assert_eq!(g.edge_count(), 3);
        for d in g.darts() {
            assert_ne!(g.reverse(d), d);
            assert_eq!(g.reverse(g.reverse(d)), d);
        }
    }

    #[test]
    fn fixed_point_is_reported_by_name() {
        let desc = GraphDescription {
            name: "bad".into(),
            vertices: vec!["a".into()],
            darts: vec![DartDescription {
                name: "d".into(),
                origin: "a".into(),
                reverse: "d".into(),
            }],
            bases: vec![],
        };
        let err = validate_graph(&desc).unwrap_err();
        assert!(err.to_string().contains("involution fixed point at d"), "{err}");
    }

    #[test]
    fn every_violation_is_reported() {
        let desc = GraphDescription {
            name: "bad".into(),
            vertices: vec!["a".into(), "a".into()],
            darts: vec![
                DartDescription { name: "x".into(), origin: "q".into(), reverse: "y".into() },
                DartDescription { name: "y".into(), origin: "a".into(), reverse: "z".into() },
                DartDescription { name: "z".into(), origin: "a".into(), reverse: "z".into() },
            ],
            bases: vec![],
        };
        let Err(Error::InvalidGraph(v)) = validate_graph(&desc) else {
            panic!("expected violations")
        };
        assert!(v.contains(&GraphViolation::DuplicateVertex("a".into())));
        assert!(v.contains(&GraphViolation::DanglingOrigin { dart: "x".into(), origin: "q".into() }));
        assert!(v.contains(&GraphViolation::FixedPoint("z".into())));
        assert!(v.contains(&GraphViolation::NotSelfInverse { dart: "x".into(), reverse: "y".into() }));
    }

    #[test]
    fn names_are_ordered_lexicographically() {
        let g = GraphBuilder::new("g")
            .vertices(["v10", "v2", "v1"])
            .edge("b", "v1", "v2")
            .edge("a", "v2", "v10")
            .build()
            .unwrap();
        let names: Vec<_> = g.vertices().map(|v| g.vertex_name(v)).collect();
        assert_eq!(names, ["v1", "v10", "v2"]);
        assert_eq!(g.dart_name(DartId::new(0)), "a+");
        assert_eq!(g.edge_label(DartId::new(1)), ("a".to_string(), false));
    }

    #[test]
    fn two_bases_in_one_component_are_rejected() {
        let err = GraphBuilder::new("g")
            .vertices(["a", "b"])
            .edge("e", "a", "b")
            .base("a")
            .base("b")
            .build()
            .unwrap_err();
        assert!(err.to_string().contains("basepoints a and b"), "{err}");
    }

    #[test]
    fn subgraph_requires_reverse_closure() {
        let g = shapes::cycle("C3", 3);
        let d = g.dart_by_name("e0+").unwrap();
        let err = Subgraph::new(&g, g.vertices(), [d]).unwrap_err();
        assert!(matches!(err, Error::InvalidSubgraph(_)));
        let sub = Subgraph::induced(&g, [VertexId::new(0), VertexId::new(1)]).unwrap();
        assert_eq!(sub.darts.len(), 2);
    }
}
