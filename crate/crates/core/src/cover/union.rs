use std::sync::Arc;

use super::{validate_cover, Category, CoverMorphism, CoveringMap};
use crate::error::{Error, Result};
use crate::graph::{pair_name, same_graph, DartId, Graph, GraphMorphism, VertexId};

/// The tagged disjoint union `∐ E_α → Y` of covers of a common base, with
/// its canonical injections. Cells of summand `α` are named `(c,α)`.
#[derive(Clone, Debug)]
pub struct ExtrinsicUnion {
    pub cover: CoveringMap,
    pub summands: Vec<CoveringMap>,
    pub injections: Vec<GraphMorphism>,
    vertex_offsets: Vec<usize>,
    dart_offsets: Vec<usize>,
}

impl ExtrinsicUnion {
    /// Index of vertex `e` of summand `α` in the union.
    pub fn vertex(&self, alpha: usize, e: VertexId) -> VertexId {
        VertexId::new(self.vertex_offsets[alpha] + e.index())
    }

    pub fn dart(&self, alpha: usize, d: DartId) -> DartId {
        DartId::new(self.dart_offsets[alpha] + d.index())
    }

    /// The summand and local index of a union vertex. Empty summands share
    /// the offset of their successor, so the owner is the last summand
    /// starting at or before the index.
    pub fn locate_vertex(&self, v: VertexId) -> (usize, VertexId) {
        let alpha = self.vertex_offsets.partition_point(|&o| o <= v.index()) - 1;
        (alpha, VertexId::new(v.index() - self.vertex_offsets[alpha]))
    }

    pub fn locate_dart(&self, d: DartId) -> (usize, DartId) {
        let alpha = self.dart_offsets.partition_point(|&o| o <= d.index()) - 1;
        (alpha, DartId::new(d.index() - self.dart_offsets[alpha]))
    }
}

/// Builds `∐ covers`. In based categories `designated` names the summand
/// whose basepoint becomes the basepoint of the union.
pub fn extrinsic_union(
    base: &Arc<Graph>,
    covers: &[CoveringMap],
    category: Category,
    designated: Option<usize>,
) -> Result<ExtrinsicUnion> {
    for p in covers {
        if !same_graph(p.base(), base) {
            return Err(Error::MismatchedBase(format!(
                "summand lies over {}, union over {}",
                p.base().name(),
                base.name()
            )));
        }
    }
    if category.is_based() && designated.is_none() {
        return Err(Error::MissingBasepoint(
            "designate the summand carrying the basepoint of the union".into(),
        ));
    }
    let mut vertex_names = Vec::new();
    let mut dart_names = Vec::new();
    let mut origin = Vec::new();
    let mut reverse = Vec::new();
    let mut vertex_map = Vec::new();
    let mut dart_map = Vec::new();
    let mut vertex_offsets = Vec::with_capacity(covers.len());
    let mut dart_offsets = Vec::with_capacity(covers.len());
    for (alpha, p) in covers.iter().enumerate() {
        let e = p.total();
        let tag = alpha.to_string();
        let v_off = vertex_names.len();
        let d_off = dart_names.len();
        vertex_offsets.push(v_off);
        dart_offsets.push(d_off);
        vertex_names.extend(e.vertices().map(|v| pair_name(e.vertex_name(v), &tag)));
        dart_names.extend(e.darts().map(|d| pair_name(e.dart_name(d), &tag)));
        origin.extend(e.darts().map(|d| VertexId::new(v_off + e.origin(d).index())));
        reverse.extend(e.darts().map(|d| DartId::new(d_off + e.reverse(d).index())));
        vertex_map.extend(e.vertices().map(|v| p.vertex(v)));
        dart_map.extend(e.darts().map(|d| p.dart(d)));
    }
    let name = covers
        .iter()
        .map(|p| p.total().name())
        .collect::<Vec<_>>()
        .join("+");
    let total = Arc::new(Graph::from_parts(
        if name.is_empty() { "empty".to_string() } else { name },
        vertex_names,
        dart_names,
        origin,
        reverse,
        Vec::new(),
    ));
    let basepoint = match designated {
        Some(alpha) => {
            let p = covers.get(alpha).ok_or(Error::UnknownComponent(alpha))?;
            let e0 = p.basepoint().ok_or_else(|| {
                Error::MissingBasepoint(format!("designated summand {alpha} is unbased"))
            })?;
            Some(VertexId::new(vertex_offsets[alpha] + e0.index()))
        }
        None => None,
    };
    let injections = covers
        .iter()
        .enumerate()
        .map(|(alpha, p)| {
            let e = p.total();
            GraphMorphism::from_parts(
                e.clone(),
                total.clone(),
                e.vertices().map(|v| VertexId::new(vertex_offsets[alpha] + v.index())).collect(),
                e.darts().map(|d| DartId::new(dart_offsets[alpha] + d.index())).collect(),
            )
        })
        .collect();
    let projection = GraphMorphism::from_parts(total, base.clone(), vertex_map, dart_map);
    let cover = validate_cover(projection, category, basepoint)?;
    Ok(ExtrinsicUnion {
        cover,
        summands: covers.to_vec(),
        injections,
        vertex_offsets,
        dart_offsets,
    })
}

/// Assembles `t((e,α)) = (t_α(e), β(α))` from morphisms
/// `t_α: E_α → E'_{β(α)}`, given as pairs `(t_α, β(α))`.
pub fn union_morphism(
    left: &ExtrinsicUnion,
    right: &ExtrinsicUnion,
    parts: &[(CoverMorphism, usize)],
    category: Category,
) -> Result<CoverMorphism> {
    if parts.len() != left.summands.len() {
        return Err(Error::MismatchedIndex(format!(
            "{} morphisms for {} summands",
            parts.len(),
            left.summands.len()
        )));
    }
    let mut vertex_map = Vec::with_capacity(left.cover.total().vertex_count());
    let mut dart_map = Vec::with_capacity(left.cover.total().dart_count());
    for (alpha, (t, beta)) in parts.iter().enumerate() {
        let Some(target) = right.summands.get(*beta) else {
            return Err(Error::MismatchedIndex(format!("no summand {beta} on the right")));
        };
        if !same_graph(t.map().source(), left.summands[alpha].total())
            || !same_graph(t.map().target(), target.total())
        {
            return Err(Error::MismatchedIndex(format!(
                "morphism {alpha} does not run between summands {alpha} and {beta}"
            )));
        }
        vertex_map.extend(t.map().vertex_map().iter().map(|&v| right.vertex(*beta, v)));
        dart_map.extend(t.map().dart_map().iter().map(|&d| right.dart(*beta, d)));
    }
    let map = GraphMorphism::new(
        left.cover.total().clone(),
        right.cover.total().clone(),
        vertex_map,
        dart_map,
    )?;
    CoverMorphism::new(map, &left.cover, &right.cover, category)
}

/// The isomorphism `∐ E_α ≅ ∐ E'_α` assembled from summand isomorphisms.
pub fn union_respects_iso(
    left: &ExtrinsicUnion,
    right: &ExtrinsicUnion,
    isos: &[CoverMorphism],
    category: Category,
) -> Result<CoverMorphism> {
    if isos.len() != right.summands.len() {
        return Err(Error::MismatchedIndex(format!(
            "{} isomorphisms for {} summands",
            isos.len(),
            right.summands.len()
        )));
    }
    if let Some(alpha) = isos.iter().position(|t| !t.is_isomorphism()) {
        return Err(Error::MismatchedIndex(format!("morphism {alpha} is not an isomorphism")));
    }
    let parts: Vec<_> = isos.iter().cloned().enumerate().map(|(a, t)| (t, a)).collect();
    let t = union_morphism(left, right, &parts, category)?;
    debug_assert!(t.is_isomorphism());
    Ok(t)
}
