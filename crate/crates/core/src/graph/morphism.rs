use std::fmt;
use std::sync::Arc;

use super::{DartId, Graph, VertexId};
use crate::error::{Error, Result};

/// A map of graphs sending vertices to vertices and darts to darts,
/// commuting with `origin` and `reverse`. Edges are never collapsed.
#[derive(Clone, Debug)]
pub struct GraphMorphism {
    source: Arc<Graph>,
    target: Arc<Graph>,
    vertex_map: Vec<VertexId>,
    dart_map: Vec<DartId>,
    base: Option<VertexId>,
}

/// Two morphisms are equal when their maps agree; the graphs are compared
/// structurally.
impl PartialEq for GraphMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_map == other.vertex_map
            && self.dart_map == other.dart_map
            && same_graph(&self.source, &other.source)
            && same_graph(&self.target, &other.target)
    }
}

pub(crate) fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismViolation {
    WrongLength { what: &'static str, expected: usize, found: usize },
    OutOfRange { what: &'static str, index: usize },
    OriginMismatch { dart: String },
    ReverseMismatch { dart: String },
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WrongLength { what, expected, found } => {
                write!(f, "{what} map has {found} entries, expected {expected}")
            }
            Self::OutOfRange { what, index } => write!(f, "{what} image {index} out of range"),
            Self::OriginMismatch { dart } => {
                write!(f, "dart {dart}: image does not start at the image of its origin")
            }
            Self::ReverseMismatch { dart } => {
                write!(f, "dart {dart}: map does not commute with reversal")
            }
        }
    }
}

impl GraphMorphism {
    pub fn new(
        source: Arc<Graph>,
        target: Arc<Graph>,
        vertex_map: Vec<VertexId>,
        dart_map: Vec<DartId>,
    ) -> Result<Self> {
        let mut v = Vec::new();
        if vertex_map.len() != source.vertex_count() {
            v.push(MorphismViolation::WrongLength {
                what: "vertex",
                expected: source.vertex_count(),
                found: vertex_map.len(),
            });
        }
        if dart_map.len() != source.dart_count() {
            v.push(MorphismViolation::WrongLength {
                what: "dart",
                expected: source.dart_count(),
                found: dart_map.len(),
            });
        }
        if !v.is_empty() {
            return Err(Error::InvalidMorphism(v));
        }
        for x in &vertex_map {
            if x.index() >= target.vertex_count() {
                v.push(MorphismViolation::OutOfRange { what: "vertex", index: x.index() });
            }
        }
        for x in &dart_map {
            if x.index() >= target.dart_count() {
                v.push(MorphismViolation::OutOfRange { what: "dart", index: x.index() });
            }
        }
        if !v.is_empty() {
            return Err(Error::InvalidMorphism(v));
        }
        for d in source.darts() {
            let image = dart_map[d.index()];
            if target.origin(image) != vertex_map[source.origin(d).index()] {
                v.push(MorphismViolation::OriginMismatch {
                    dart: source.dart_name(d).to_string(),
                });
            }
            if target.reverse(image) != dart_map[source.reverse(d).index()] {
                v.push(MorphismViolation::ReverseMismatch {
                    dart: source.dart_name(d).to_string(),
                });
            }
        }
        if !v.is_empty() {
            return Err(Error::InvalidMorphism(v));
        }
        Ok(Self::from_parts(source, target, vertex_map, dart_map))
    }

    /// Unchecked constructor for maps the crate builds itself.
    pub(crate) fn from_parts(
        source: Arc<Graph>,
        target: Arc<Graph>,
        vertex_map: Vec<VertexId>,
        dart_map: Vec<DartId>,
    ) -> Self {
        debug_assert!(source.darts().all(|d| {
            let image = dart_map[d.index()];
            target.origin(image) == vertex_map[source.origin(d).index()]
                && target.reverse(image) == dart_map[source.reverse(d).index()]
        }));
        GraphMorphism {
            source,
            target,
            vertex_map,
            dart_map,
            base: None,
        }
    }

    pub fn identity(g: Arc<Graph>) -> Self {
        let vertex_map = g.vertices().collect();
        let dart_map = g.darts().collect();
        Self::from_parts(g.clone(), g, vertex_map, dart_map)
    }

    /// Marks the map as based at `x0` in the source.
    pub fn based_at(mut self, x0: VertexId) -> Result<Self> {
        if x0.index() >= self.source.vertex_count() {
            return Err(Error::UnknownVertex(x0.to_string()));
        }
        self.base = Some(x0);
        Ok(self)
    }

    pub fn base(&self) -> Option<VertexId> {
        self.base
    }

    /// The explicit base, else the first declared base of the source, else
    /// the representative of its first component.
    pub fn base_or_default(&self) -> Option<VertexId> {
        self.base
            .or_else(|| self.source.bases().first().copied())
            .or_else(|| (!self.source.is_empty()).then(|| VertexId::new(0)))
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Graph> {
        &self.target
    }

    pub fn vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.index()]
    }

    pub fn dart(&self, d: DartId) -> DartId {
        self.dart_map[d.index()]
    }

    pub fn vertex_map(&self) -> &[VertexId] {
        &self.vertex_map
    }

    pub fn dart_map(&self) -> &[DartId] {
        &self.dart_map
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GraphMorphism) -> Result<GraphMorphism> {
        if !same_graph(&self.target, &other.source) {
            return Err(Error::MismatchedBase(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source.name(),
                self.target.name(),
                other.source.name(),
                other.target.name()
            )));
        }
        let mut out = Self::from_parts(
            self.source.clone(),
            other.target.clone(),
            self.vertex_map.iter().map(|&v| other.vertex(v)).collect(),
            self.dart_map.iter().map(|&d| other.dart(d)).collect(),
        );
        out.base = self.base;
        Ok(out)
    }

    pub fn is_vertex_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.vertex_count()];
        for v in &self.vertex_map {
            hit[v.index()] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_dart_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.dart_count()];
        for d in &self.dart_map {
            hit[d.index()] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.vertex_count()];
        for v in &self.vertex_map {
            if std::mem::replace(&mut hit[v.index()], true) {
                return false;
            }
        }
        let mut hit = vec![false; self.target.dart_count()];
        for d in &self.dart_map {
            if std::mem::replace(&mut hit[d.index()], true) {
                return false;
            }
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective()
            && self.source.vertex_count() == self.target.vertex_count()
            && self.source.dart_count() == self.target.dart_count()
    }
}
