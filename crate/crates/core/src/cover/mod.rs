//! Covering maps of graphs.
//!
//! A morphism `p: E → Y` is a covering when it is star-bijective: for every
//! vertex `e` of `E`, the darts leaving `e` map bijectively onto the darts
//! leaving `p(e)`. Fibers may be empty. Fiber size is constant over each
//! component of `Y`.

mod morphism;
mod ops;
mod union;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use morphism::{equalizer, CoverMorphism};
pub use ops::{
    extend_cover_to_union, image_of_component, is_trivial, restrict_cover, select_components,
    trivial_cover,
};
pub use union::{extrinsic_union, union_morphism, union_respects_iso, ExtrinsicUnion};

use crate::error::{Error, Result};
use crate::graph::{components, DartId, Graph, GraphMorphism, VertexId};

/// The four categories of coverings over a fixed base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    Cov,
    SCov,
    BCov,
    BSCov,
}

impl Category {
    pub const ALL: [Category; 4] = [Category::Cov, Category::SCov, Category::BCov, Category::BSCov];

    pub fn is_based(self) -> bool {
        matches!(self, Category::BCov | Category::BSCov)
    }

    pub fn is_surjective(self) -> bool {
        matches!(self, Category::SCov | Category::BSCov)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Cov => "cov",
            Category::SCov => "scov",
            Category::BCov => "bcov",
            Category::BSCov => "bscov",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "cov" => Ok(Category::Cov),
            "scov" => Ok(Category::SCov),
            "bcov" => Ok(Category::BCov),
            "bscov" => Ok(Category::BSCov),
            other => Err(format!("unknown category `{other}` (expected cov, scov, bcov or bscov)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverViolation {
    StarNotInjective { vertex: String, image: String },
    StarNotSurjective { vertex: String, missing: String },
    FiberNotConstant { vertex: String, size: usize, expected: usize },
    MissedVertex(String),
    MissingBasepoint,
    UnknownBasepoint(usize),
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::StarNotInjective { vertex, image } => {
                write!(f, "star of vertex {vertex} is not injective (two darts onto {image})")
            }
            Self::StarNotSurjective { vertex, missing } => {
                write!(f, "star of vertex {vertex} is not surjective (misses {missing})")
            }
            Self::FiberNotConstant { vertex, size, expected } => write!(
                f,
                "fiber over vertex {vertex} has {size} points, its component expects {expected}"
            ),
            Self::MissedVertex(v) => write!(f, "surjective category but vertex {v} has empty fiber"),
            Self::MissingBasepoint => write!(f, "based category but no basepoint given"),
            Self::UnknownBasepoint(i) => write!(f, "basepoint index {i} out of range"),
        }
    }
}

/// A validated covering map. Cheap to clone.
#[derive(Clone, Debug)]
pub struct CoveringMap {
    inner: Arc<CoverData>,
}

#[derive(Debug)]
struct CoverData {
    projection: GraphMorphism,
    category: Category,
    basepoint: Option<VertexId>,
    fibers: Vec<Vec<VertexId>>,
    fiber_pos: Vec<usize>,
    /// Position of each base dart inside the star of its origin.
    star_pos: Vec<usize>,
    /// For each total vertex, the lift of each dart of the star below it.
    lifts: Vec<Vec<DartId>>,
}

/// Checks star bijectivity, fiber constancy and the demands of `category`,
/// reporting every failure.
pub fn validate_cover(
    p: GraphMorphism,
    category: Category,
    basepoint: Option<VertexId>,
) -> Result<CoveringMap> {
    let total = p.source().clone();
    let base = p.target().clone();
    let mut violations = Vec::new();

    let mut star_pos = vec![0; base.dart_count()];
    for y in base.vertices() {
        for (i, &d) in base.star(y).iter().enumerate() {
            star_pos[d.index()] = i;
        }
    }

    let mut lifts = Vec::with_capacity(total.vertex_count());
    for e in total.vertices() {
        let below = base.star(p.vertex(e));
        let mut lift = vec![None; below.len()];
        for &d in total.star(e) {
            let slot = &mut lift[star_pos[p.dart(d).index()]];
            if slot.is_some() {
                violations.push(CoverViolation::StarNotInjective {
                    vertex: total.vertex_name(e).to_string(),
                    image: base.dart_name(p.dart(d)).to_string(),
                });
            } else {
                *slot = Some(d);
            }
        }
        for (i, l) in lift.iter().enumerate() {
            if l.is_none() {
                violations.push(CoverViolation::StarNotSurjective {
                    vertex: total.vertex_name(e).to_string(),
                    missing: base.dart_name(below[i]).to_string(),
                });
            }
        }
        lifts.push(lift.into_iter().map(|l| l.unwrap_or(DartId::new(0))).collect::<Vec<_>>());
    }

    let mut fibers = vec![Vec::new(); base.vertex_count()];
    let mut fiber_pos = vec![0; total.vertex_count()];
    for e in total.vertices() {
        let y = p.vertex(e);
        fiber_pos[e.index()] = fibers[y.index()].len();
        fibers[y.index()].push(e);
    }

    let partition = components(&base);
    for c in 0..partition.count() {
        let expected = fibers[partition.representative(c).index()].len();
        for &y in partition.members(c) {
            let size = fibers[y.index()].len();
            if size != expected {
                violations.push(CoverViolation::FiberNotConstant {
                    vertex: base.vertex_name(y).to_string(),
                    size,
                    expected,
                });
            }
        }
    }

    if category.is_surjective() {
        for y in base.vertices() {
            if fibers[y.index()].is_empty() {
                violations.push(CoverViolation::MissedVertex(base.vertex_name(y).to_string()));
            }
        }
    }
    match basepoint {
        Some(e) if e.index() >= total.vertex_count() => {
            violations.push(CoverViolation::UnknownBasepoint(e.index()))
        }
        None if category.is_based() => violations.push(CoverViolation::MissingBasepoint),
        _ => {}
    }

    if !violations.is_empty() {
        return Err(Error::InvalidCover(violations));
    }
    Ok(CoveringMap {
        inner: Arc::new(CoverData {
            projection: p,
            category,
            basepoint,
            fibers,
            fiber_pos,
            star_pos,
            lifts,
        }),
    })
}

impl CoveringMap {
    /// The identity of `y`, a one-sheeted cover.
    pub fn identity(y: Arc<Graph>) -> Self {
        validate_cover(GraphMorphism::identity(y), Category::Cov, None).expect("identity is a cover")
    }

    /// The empty cover of `y`.
    pub fn empty(y: Arc<Graph>) -> Self {
        validate_cover(crate::shapes::from_empty(&y), Category::Cov, None).expect("empty cover")
    }

    pub fn projection(&self) -> &GraphMorphism {
        &self.inner.projection
    }

    pub fn total(&self) -> &Arc<Graph> {
        self.inner.projection.source()
    }

    pub fn base(&self) -> &Arc<Graph> {
        self.inner.projection.target()
    }

    pub fn category(&self) -> Category {
        self.inner.category
    }

    /// The based point `e₀` of the total space.
    pub fn basepoint(&self) -> Option<VertexId> {
        self.inner.basepoint
    }

    /// `(e₀, p(e₀))` when based.
    pub fn basepoint_pair(&self) -> Option<(VertexId, VertexId)> {
        self.inner.basepoint.map(|e| (e, self.vertex(e)))
    }

    /// Re-tags the cover, revalidating the category's demands.
    pub fn with_category(&self, category: Category) -> Result<Self> {
        validate_cover(self.inner.projection.clone(), category, self.inner.basepoint)
    }

    pub fn with_basepoint(&self, e0: Option<VertexId>, category: Category) -> Result<Self> {
        validate_cover(self.inner.projection.clone(), category, e0)
    }

    pub fn vertex(&self, e: VertexId) -> VertexId {
        self.inner.projection.vertex(e)
    }

    pub fn dart(&self, d: DartId) -> DartId {
        self.inner.projection.dart(d)
    }

    /// Vertices over `y`, in index order.
    pub fn fiber(&self, y: VertexId) -> &[VertexId] {
        &self.inner.fibers[y.index()]
    }

    pub fn checked_fiber(&self, y: &str) -> Result<&[VertexId]> {
        Ok(self.fiber(self.base().vertex(y)?))
    }

    /// Position of `e` inside its fiber.
    pub fn fiber_position(&self, e: VertexId) -> usize {
        self.inner.fiber_pos[e.index()]
    }

    /// The unique dart at `e` over the base dart `d`; `d` must start at `p(e)`.
    pub fn lift_dart(&self, e: VertexId, d: DartId) -> DartId {
        debug_assert_eq!(self.base().origin(d), self.vertex(e));
        self.inner.lifts[e.index()][self.inner.star_pos[d.index()]]
    }

    /// Lifts a dart path of the base starting at `e`; returns the lifted darts.
    pub fn lift_path(&self, e: VertexId, path: &[DartId]) -> Vec<DartId> {
        let total = self.total();
        let mut cur = e;
        path.iter()
            .map(|&d| {
                let l = self.lift_dart(cur, d);
                cur = total.terminus(l);
                l
            })
            .collect()
    }

    /// End vertex of the lift of `path` starting at `e`.
    pub fn lift_endpoint(&self, e: VertexId, path: &[DartId]) -> VertexId {
        let total = self.total();
        path.iter()
            .fold(e, |cur, &d| total.terminus(self.lift_dart(cur, d)))
    }

    /// Sheet count over the component of `y`.
    pub fn degree_at(&self, y: VertexId) -> usize {
        self.fiber(y).len()
    }

    pub fn is_surjective(&self) -> bool {
        self.inner.fibers.iter().all(|f| !f.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    #[test]
    fn double_wrap_is_a_two_sheeted_cover() {
        let p = validate_cover(shapes::cycle_wrap(6, 3), Category::Cov, None).unwrap();
        for y in p.base().vertices() {
            assert_eq!(p.fiber(y).len(), 2);
        }
        let p9 = validate_cover(shapes::cycle_wrap(9, 3), Category::SCov, None).unwrap();
        assert_eq!(p9.fiber(VertexId::new(1)).len(), 3);
    }

    #[test]
    fn cycle_onto_loop_is_a_cover() {
        let p = validate_cover(shapes::cycle_onto_loop(3), Category::Cov, None).unwrap();
        assert_eq!(p.fiber(VertexId::new(0)).len(), 3);
    }

    #[test]
    fn rose_collapse_is_not_a_cover() {
        let err = validate_cover(shapes::rose_collapse(2), Category::Cov, None).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("star of vertex v0 is not injective"), "{msg}");
    }

    #[test]
    fn empty_cover_is_cov_not_scov() {
        let c3 = Arc::new(shapes::cycle("C3", 3));
        let e = CoveringMap::empty(c3.clone());
        assert!(e.fiber(VertexId::new(0)).is_empty());
        assert!(e.with_category(Category::SCov).is_err());
        assert!(e.with_category(Category::BCov).is_err());
    }

    #[test]
    fn lifting_follows_sheets() {
        let p = validate_cover(shapes::cycle_wrap(6, 3), Category::Cov, None).unwrap();
        let y = p.base();
        let around: Vec<DartId> = (0..3).map(|k| y.dart_by_name(&format!("e{k}+")).unwrap()).collect();
        assert_eq!(p.lift_endpoint(VertexId::new(0), &around), VertexId::new(3));
        let twice: Vec<DartId> = around.iter().chain(&around).copied().collect();
        assert_eq!(p.lift_endpoint(VertexId::new(0), &twice), VertexId::new(0));
    }

    #[test]
    fn category_names_round_trip() {
        for c in Category::ALL {
            assert_eq!(c.as_str().parse::<Category>().unwrap(), c);
        }
        assert!("xcov".parse::<Category>().is_err());
    }
}
