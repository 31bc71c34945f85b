//! The fiber product `f*(E) = {(x,e) : f(x) = p(e)}` of a graph morphism
//! `f: X → Y` and a covering `p: E → Y`, with its two projections
//!
//! ```text
//!   f*(E) --f̃--> E
//!     |          |
//!   f*(p)        p
//!     v          v
//!     X ---f---> Y
//! ```
//!
//! Vertices `(x,e)` are ordered by `x`, then by the position of `e` in its
//! fiber; darts `(a,b)` likewise by `a`, then by the fiber position of the
//! origin of `b`.

mod unions;

use std::collections::BTreeSet;
use std::sync::Arc;

pub use unions::{
    pullback_extrinsic_union, pullback_intrinsic_union, pullback_partitioned_union,
    preimage_subspace, ExtrinsicPullback, IntrinsicSplit, PartitionedChain,
};

use crate::cover::{trivial_cover, validate_cover, Category, CoverMorphism, CoveringMap};
use crate::error::{Error, Result};
use crate::graph::{same_graph, DartId, Graph, GraphMorphism, VertexId};

#[derive(Clone, Debug)]
pub struct PullbackCover {
    f: GraphMorphism,
    p: CoveringMap,
    proj_base: CoveringMap,
    proj_top: GraphMorphism,
    vertex_start: Vec<usize>,
    dart_start: Vec<usize>,
    vertex_pairs: Vec<(VertexId, VertexId)>,
    dart_pairs: Vec<(DartId, DartId)>,
}

/// Pulls `p` back along `f`. The result carries `p`'s category; when `p` is
/// based at `e₀`, the pullback is based at `(x₀, e₀)` with `x₀` the base of
/// `f`, which must satisfy `f(x₀) = p(e₀)`.
pub fn pullback(f: &GraphMorphism, p: &CoveringMap) -> Result<PullbackCover> {
    if !same_graph(f.target(), p.base()) {
        return Err(Error::MismatchedBase(format!(
            "{} maps to {}, cover lies over {}",
            f.source().name(),
            f.target().name(),
            p.base().name()
        )));
    }
    let x = f.source();
    let e = p.total();

    let mut vertex_start = Vec::with_capacity(x.vertex_count() + 1);
    let mut vertex_pairs = Vec::new();
    let mut vertex_names = Vec::new();
    for v in x.vertices() {
        vertex_start.push(vertex_pairs.len());
        for &z in p.fiber(f.vertex(v)) {
            vertex_pairs.push((v, z));
            vertex_names.push(format!("({},{})", x.vertex_name(v), e.vertex_name(z)));
        }
    }
    vertex_start.push(vertex_pairs.len());

    let mut dart_start = Vec::with_capacity(x.dart_count() + 1);
    let mut dart_pairs = Vec::new();
    let mut dart_names = Vec::new();
    let mut origin = Vec::new();
    for a in x.darts() {
        dart_start.push(dart_pairs.len());
        let (stem, positive) = x.edge_label(a);
        let sign = if positive { '+' } else { '-' };
        let o = x.origin(a);
        for (j, &z) in p.fiber(f.vertex(o)).iter().enumerate() {
            let b = p.lift_dart(z, f.dart(a));
            let named = if positive { b } else { e.reverse(b) };
            dart_pairs.push((a, b));
            dart_names.push(format!("({stem},{}){sign}", e.dart_name(named)));
            origin.push(VertexId::new(vertex_start[o.index()] + j));
        }
    }
    dart_start.push(dart_pairs.len());
    let reverse = dart_pairs
        .iter()
        .map(|&(a, b)| {
            let (ra, rb) = (x.reverse(a), e.reverse(b));
            DartId::new(dart_start[ra.index()] + p.fiber_position(e.origin(rb)))
        })
        .collect();

    let total = Arc::new(Graph::from_parts(
        format!("{}*{}", x.name(), e.name()),
        vertex_names,
        dart_names,
        origin,
        reverse,
        Vec::new(),
    ));

    let basepoint = match p.basepoint_pair() {
        Some((e0, y0)) => {
            let x0 = f.base_or_default().ok_or_else(|| {
                Error::MissingBasepoint(format!("{} is empty", x.name()))
            })?;
            if f.vertex(x0) != y0 {
                return Err(Error::MismatchedBase(format!(
                    "f sends {} to {}, cover is based over {}",
                    x.vertex_name(x0),
                    f.target().vertex_name(f.vertex(x0)),
                    f.target().vertex_name(y0)
                )));
            }
            Some(VertexId::new(vertex_start[x0.index()] + p.fiber_position(e0)))
        }
        None => None,
    };

    let proj_base = GraphMorphism::from_parts(
        total.clone(),
        x.clone(),
        vertex_pairs.iter().map(|&(v, _)| v).collect(),
        dart_pairs.iter().map(|&(a, _)| a).collect(),
    );
    let proj_top = GraphMorphism::from_parts(
        total,
        e.clone(),
        vertex_pairs.iter().map(|&(_, z)| z).collect(),
        dart_pairs.iter().map(|&(_, b)| b).collect(),
    );
    let proj_base = validate_cover(proj_base, p.category(), basepoint)?;
    Ok(PullbackCover {
        f: f.clone(),
        p: p.clone(),
        proj_base,
        proj_top,
        vertex_start,
        dart_start,
        vertex_pairs,
        dart_pairs,
    })
}

impl PullbackCover {
    pub fn f(&self) -> &GraphMorphism {
        &self.f
    }

    pub fn p(&self) -> &CoveringMap {
        &self.p
    }

    pub fn total(&self) -> &Arc<Graph> {
        self.proj_base.total()
    }

    /// `f*(p)`, a covering of `X`.
    pub fn proj_base(&self) -> &CoveringMap {
        &self.proj_base
    }

    /// `f̃: f*(E) → E`.
    pub fn proj_top(&self) -> &GraphMorphism {
        &self.proj_top
    }

    pub fn basepoint(&self) -> Option<VertexId> {
        self.proj_base.basepoint()
    }

    /// The vertex `(x,e)`, if `f(x) = p(e)`.
    pub fn vertex(&self, x: VertexId, e: VertexId) -> Option<VertexId> {
        (self.f.vertex(x) == self.p.vertex(e))
            .then(|| VertexId::new(self.vertex_start[x.index()] + self.p.fiber_position(e)))
    }

    /// The dart `(a,b)`, if `f(a) = p(b)`.
    pub fn dart(&self, a: DartId, b: DartId) -> Option<DartId> {
        if self.f.dart(a) != self.p.dart(b) {
            return None;
        }
        let origin = self.p.total().origin(b);
        Some(DartId::new(self.dart_start[a.index()] + self.p.fiber_position(origin)))
    }

    pub fn vertex_pair(&self, v: VertexId) -> (VertexId, VertexId) {
        self.vertex_pairs[v.index()]
    }

    pub fn dart_pair(&self, d: DartId) -> (DartId, DartId) {
        self.dart_pairs[d.index()]
    }

    pub fn vertex_pairs(&self) -> &[(VertexId, VertexId)] {
        &self.vertex_pairs
    }

    pub fn dart_pairs(&self) -> &[(DartId, DartId)] {
        &self.dart_pairs
    }

    /// Checks `p ∘ f̃ = f ∘ f*(p)` on every vertex and dart.
    pub fn square_commutes(&self) -> bool {
        self.total().vertices().all(|v| {
            self.p.vertex(self.proj_top.vertex(v)) == self.f.vertex(self.proj_base.vertex(v))
        }) && self.total().darts().all(|d| {
            self.p.dart(self.proj_top.dart(d)) == self.f.dart(self.proj_base.dart(d))
        })
    }
}

/// `f*(t)`: the morphism `(x,e) ↦ (x,t(e))` between pullbacks already
/// computed along the same `f`.
pub fn pullback_morphism_between(
    source: &PullbackCover,
    target: &PullbackCover,
    t: &CoverMorphism,
) -> Result<CoverMorphism> {
    if !same_graph(t.map().source(), source.p.total()) || !same_graph(t.map().target(), target.p.total())
    {
        return Err(Error::MismatchedBase("morphism does not match the pulled-back covers".into()));
    }
    let vertex_map = source
        .vertex_pairs
        .iter()
        .map(|&(x, e)| target.vertex(x, t.map().vertex(e)).expect("t commutes with projections"))
        .collect();
    let dart_map = source
        .dart_pairs
        .iter()
        .map(|&(a, b)| target.dart(a, t.map().dart(b)).expect("t commutes with projections"))
        .collect();
    let map = GraphMorphism::from_parts(source.total().clone(), target.total().clone(), vertex_map, dart_map);
    Ok(CoverMorphism::from_parts(map, &source.proj_base, &target.proj_base, t.category()))
}

/// `f*(t)` for a morphism `t: p₁ → p₂` of covers of `Y`.
pub fn pullback_morphism(f: &GraphMorphism, t: &CoverMorphism) -> Result<CoverMorphism> {
    let source = pullback(f, t.source())?;
    let target = pullback(f, t.target())?;
    pullback_morphism_between(&source, &target, t)
}

/// The unique `μ: Q → f*(E)` with `f*(p) ∘ μ = q₁` and `f̃ ∘ μ = q₂`.
pub fn universal_map(q1: &GraphMorphism, q2: &GraphMorphism, pb: &PullbackCover) -> Result<GraphMorphism> {
    if !same_graph(q1.source(), q2.source())
        || !same_graph(q1.target(), pb.f.source())
        || !same_graph(q2.target(), pb.p.total())
    {
        return Err(Error::MismatchedBase("maps do not form a square over the pullback".into()));
    }
    let q = q1.source();
    let mut vertex_map = Vec::with_capacity(q.vertex_count());
    for c in q.vertices() {
        let v = pb.vertex(q1.vertex(c), q2.vertex(c)).ok_or_else(|| {
            Error::NotCommuting(format!("vertex {} goes to different places in Y", q.vertex_name(c)))
        })?;
        vertex_map.push(v);
    }
    let mut dart_map = Vec::with_capacity(q.dart_count());
    for c in q.darts() {
        let d = pb.dart(q1.dart(c), q2.dart(c)).ok_or_else(|| {
            Error::NotCommuting(format!("dart {} goes to different places in Y", q.dart_name(c)))
        })?;
        dart_map.push(d);
    }
    GraphMorphism::new(q.clone(), pb.total().clone(), vertex_map, dart_map)
}

/// The canonical isomorphism `h*(f*(p)) → (f∘h)*(p)`, `(w,(x,z)) ↦ (w,z)`,
/// checked to be bijective with a valid inverse.
pub fn compose_pullbacks(h: &GraphMorphism, f: &GraphMorphism, p: &CoveringMap) -> Result<CoverMorphism> {
    let inner = pullback(f, p)?;
    let outer = pullback(h, inner.proj_base())?;
    let fh = h.then(f)?;
    let direct = pullback(&fh, p)?;
    let vertex_map = outer
        .vertex_pairs
        .iter()
        .map(|&(w, xz)| {
            let (_, z) = inner.vertex_pair(xz);
            direct.vertex(w, z).expect("square commutes")
        })
        .collect();
    let dart_map = outer
        .dart_pairs
        .iter()
        .map(|&(a, ab)| {
            let (_, b) = inner.dart_pair(ab);
            direct.dart(a, b).expect("square commutes")
        })
        .collect();
    let map = GraphMorphism::new(outer.total().clone(), direct.total().clone(), vertex_map, dart_map)?;
    let t = CoverMorphism::new(map, outer.proj_base(), direct.proj_base(), Category::Cov)?;
    verified_iso(t)
}

/// `μ: X × D → f*(Y × D)`, `(x,d) ↦ (x,(f(x),d))`. With `based = Some(d₀)`
/// both covers are based at sheet `d₀` and μ is checked to preserve it.
pub fn pullback_trivial(f: &GraphMorphism, sheets: usize, based: Option<usize>) -> Result<CoverMorphism> {
    let x = f.source();
    let y = f.target();
    let mut q = trivial_cover(x, sheets);
    let mut p = trivial_cover(y, sheets);
    let category = if based.is_some() { Category::BCov } else { Category::Cov };
    if let Some(d0) = based {
        if d0 >= sheets {
            return Err(Error::UnknownComponent(d0));
        }
        let x0 = f
            .base_or_default()
            .ok_or_else(|| Error::MissingBasepoint(format!("{} is empty", x.name())))?;
        let y0 = f.vertex(x0);
        q = q.with_basepoint(Some(VertexId::new(d0 * x.vertex_count() + x0.index())), category)?;
        p = p.with_basepoint(Some(VertexId::new(d0 * y.vertex_count() + y0.index())), category)?;
    }
    let pb = pullback(f, &p)?;
    let nx = x.vertex_count();
    let ny = y.vertex_count();
    let ax = x.dart_count();
    let ay = y.dart_count();
    let vertex_map = q
        .total()
        .vertices()
        .map(|v| {
            let (i, xv) = (v.index() / nx, VertexId::new(v.index() % nx));
            pb.vertex(xv, VertexId::new(i * ny + f.vertex(xv).index())).expect("fiber pair")
        })
        .collect();
    let dart_map = q
        .total()
        .darts()
        .map(|d| {
            let (i, a) = (d.index() / ax, DartId::new(d.index() % ax));
            pb.dart(a, DartId::new(i * ay + f.dart(a).index())).expect("fiber pair")
        })
        .collect();
    let map = GraphMorphism::new(q.total().clone(), pb.total().clone(), vertex_map, dart_map)?;
    let t = CoverMorphism::new(map, &q, pb.proj_base(), category)?;
    verified_iso(t)
}

pub(crate) fn verified_iso(t: CoverMorphism) -> Result<CoverMorphism> {
    if !t.is_isomorphism() || t.inverse().is_none() {
        return Err(Error::NotCommuting("canonical map is not an isomorphism".into()));
    }
    Ok(t)
}

/// The images of the two projections, checked against
/// `im f̃ = p⁻¹(im f)` and `im f*(p) = f⁻¹(im p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageReport {
    pub top_vertices: BTreeSet<VertexId>,
    pub top_darts: BTreeSet<DartId>,
    pub base_vertices: BTreeSet<VertexId>,
    pub base_darts: BTreeSet<DartId>,
}

pub fn image_identities(pb: &PullbackCover) -> Result<ImageReport> {
    let f = &pb.f;
    let p = &pb.p;
    let top_vertices: BTreeSet<_> = pb.proj_top.vertex_map().iter().copied().collect();
    let top_darts: BTreeSet<_> = pb.proj_top.dart_map().iter().copied().collect();
    let base_vertices: BTreeSet<_> = pb.proj_base.projection().vertex_map().iter().copied().collect();
    let base_darts: BTreeSet<_> = pb.proj_base.projection().dart_map().iter().copied().collect();

    let im_f_v: BTreeSet<_> = f.vertex_map().iter().copied().collect();
    let im_f_d: BTreeSet<_> = f.dart_map().iter().copied().collect();
    let im_p_v: BTreeSet<_> = p.projection().vertex_map().iter().copied().collect();
    let im_p_d: BTreeSet<_> = p.projection().dart_map().iter().copied().collect();

    let want_top_v: BTreeSet<_> = p.total().vertices().filter(|&e| im_f_v.contains(&p.vertex(e))).collect();
    let want_top_d: BTreeSet<_> = p.total().darts().filter(|&b| im_f_d.contains(&p.dart(b))).collect();
    let want_base_v: BTreeSet<_> = f.source().vertices().filter(|&x| im_p_v.contains(&f.vertex(x))).collect();
    let want_base_d: BTreeSet<_> = f.source().darts().filter(|&a| im_p_d.contains(&f.dart(a))).collect();

    if top_vertices != want_top_v || top_darts != want_top_d {
        return Err(Error::NotCommuting("image of f̃ differs from p⁻¹(im f)".into()));
    }
    if base_vertices != want_base_v || base_darts != want_base_d {
        return Err(Error::NotCommuting("image of f*(p) differs from f⁻¹(im p)".into()));
    }
    Ok(ImageReport {
        top_vertices,
        top_darts,
        base_vertices,
        base_darts,
    })
}
