use std::collections::BTreeSet;

use super::{pullback, pullback_morphism_between, verified_iso, PullbackCover};
use crate::cover::{
    extrinsic_union, select_components, union_respects_iso, Category, CoverMorphism, CoveringMap,
    ExtrinsicUnion,
};
use crate::error::{Error, Result};
use crate::graph::{components, same_graph, DartId, GraphMorphism, VertexId};

/// The pullback of `p` split along a partition of the components of `E`.
#[derive(Clone, Debug)]
pub struct IntrinsicSplit {
    pub whole: PullbackCover,
    pub blocks: Vec<PullbackCover>,
}

/// Checks that `f*(S) = f̃⁻¹(S)` for the union `S` of the chosen components
/// of `E`, as sets of pairs, and that `f*(p)` restricted there is `f*(p|S)`.
pub fn preimage_subspace(f: &GraphMorphism, p: &CoveringMap, chosen: &[usize]) -> Result<PullbackCover> {
    let whole = pullback(f, p)?;
    check_block(&whole, p, chosen)
}

/// `f*(⊔ E_α) = ⊔ f*(E_α)` for a partition of the components of `E` into
/// blocks `E_α`, checked as an equality of sets of pairs.
pub fn pullback_intrinsic_union(
    f: &GraphMorphism,
    p: &CoveringMap,
    blocks: &[Vec<usize>],
) -> Result<IntrinsicSplit> {
    let count = components(p.total()).count();
    let mut seen = vec![false; count];
    for &c in blocks.iter().flatten() {
        if c >= count {
            return Err(Error::UnknownComponent(c));
        }
        if std::mem::replace(&mut seen[c], true) {
            return Err(Error::InvalidPartition(format!("component {c} appears twice")));
        }
    }
    if let Some(c) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidPartition(format!("component {c} is in no block")));
    }
    let whole = pullback(f, p)?;
    let mut vertices = BTreeSet::new();
    let mut darts = BTreeSet::new();
    let mut parts = Vec::with_capacity(blocks.len());
    for block in blocks {
        let part = check_block(&whole, p, block)?;
        let (vs, ds) = pairs_in_e(&part, p, block);
        let before = vertices.len() + darts.len();
        let added = vs.len() + ds.len();
        vertices.extend(vs);
        darts.extend(ds);
        if vertices.len() + darts.len() != before + added {
            return Err(Error::InvalidPartition("pullbacks of two blocks overlap".into()));
        }
        parts.push(part);
    }
    let want_v: BTreeSet<_> = whole.vertex_pairs().iter().copied().collect();
    let want_d: BTreeSet<_> = whole.dart_pairs().iter().copied().collect();
    if vertices != want_v || darts != want_d {
        return Err(Error::InvalidPartition("pullbacks of the blocks do not cover f*(E)".into()));
    }
    Ok(IntrinsicSplit { whole, blocks: parts })
}

type VertexPairs = BTreeSet<(VertexId, VertexId)>;
type DartPairs = BTreeSet<(DartId, DartId)>;

/// Pairs of `f*(p|S)`, with `S`-cells renamed back to cells of `E`.
fn pairs_in_e(part: &PullbackCover, p: &CoveringMap, chosen: &[usize]) -> (VertexPairs, DartPairs) {
    let (vertex_of, dart_of) = block_cells(p, chosen);
    let vs = part.vertex_pairs().iter().map(|&(x, e)| (x, vertex_of[e.index()])).collect();
    let ds = part.dart_pairs().iter().map(|&(a, b)| (a, dart_of[b.index()])).collect();
    (vs, ds)
}

/// Cells of `E` in the chosen components, in the order `select_components`
/// lays them out.
fn block_cells(p: &CoveringMap, chosen: &[usize]) -> (Vec<VertexId>, Vec<DartId>) {
    let total = p.total();
    let parts = components(total);
    let keep: BTreeSet<usize> = chosen.iter().copied().collect();
    let vertices: Vec<VertexId> = total.vertices().filter(|&v| keep.contains(&parts.component_of(v))).collect();
    let darts = total
        .darts()
        .filter(|&d| keep.contains(&parts.component_of(total.origin(d))))
        .collect();
    (vertices, darts)
}

fn check_block(whole: &PullbackCover, p: &CoveringMap, chosen: &[usize]) -> Result<PullbackCover> {
    let sub = select_components(p, chosen)?;
    let part = pullback(whole.f(), &sub)?;
    let (vs, ds) = pairs_in_e(&part, p, chosen);

    let (in_s, _) = block_cells(p, chosen);
    let in_s: BTreeSet<VertexId> = in_s.into_iter().collect();
    let preimage_v: VertexPairs = whole.vertex_pairs().iter().copied().filter(|(_, e)| in_s.contains(e)).collect();
    let preimage_d: DartPairs = whole
        .dart_pairs()
        .iter()
        .copied()
        .filter(|&(_, b)| in_s.contains(&p.total().origin(b)))
        .collect();
    if vs != preimage_v || ds != preimage_d {
        return Err(Error::InvalidSubgraph("f*(S) differs from the preimage of S".into()));
    }
    // The preimage is a union of components, and the projection restricted
    // to it agrees with the projection of f*(p|S) pair by pair.
    let total = whole.total();
    let parts = components(total);
    let inside: Vec<bool> = total.vertices().map(|v| in_s.contains(&whole.vertex_pair(v).1)).collect();
    for d in total.darts() {
        if inside[total.origin(d).index()] != inside[total.terminus(d).index()] {
            return Err(Error::NotAComponent("preimage of S is not open and closed".into()));
        }
    }
    for v in total.vertices() {
        let c = parts.representative(parts.component_of(v));
        if inside[v.index()] != inside[c.index()] {
            return Err(Error::NotAComponent("preimage of S splits a component".into()));
        }
    }
    Ok(part)
}

/// The map `t: ∐ f*(E_α) → f*(∐ E_α)`, `((x,e),α) ↦ (x,(e,α))`, with both
/// sides kept for inspection.
#[derive(Clone, Debug)]
pub struct ExtrinsicPullback {
    pub source: ExtrinsicUnion,
    pub target: PullbackCover,
    pub union: ExtrinsicUnion,
    pub iso: CoverMorphism,
}

pub fn pullback_extrinsic_union(f: &GraphMorphism, covers: &[CoveringMap]) -> Result<ExtrinsicPullback> {
    let y = f.target();
    let x = f.source();
    let union = extrinsic_union(y, covers, Category::Cov, None)?;
    let target = pullback(f, &union.cover)?;
    let parts = covers.iter().map(|p| pullback(f, p)).collect::<Result<Vec<_>>>()?;
    let pulled: Vec<CoveringMap> = parts.iter().map(|pb| pb.proj_base().clone()).collect();
    let source = extrinsic_union(x, &pulled, Category::Cov, None)?;
    let total = source.cover.total();
    let vertex_map = total
        .vertices()
        .map(|v| {
            let (alpha, local) = source.locate_vertex(v);
            let (x, e) = parts[alpha].vertex_pair(local);
            target.vertex(x, union.vertex(alpha, e)).expect("pair over f")
        })
        .collect();
    let dart_map = total
        .darts()
        .map(|d| {
            let (alpha, local) = source.locate_dart(d);
            let (a, b) = parts[alpha].dart_pair(local);
            target.dart(a, union.dart(alpha, b)).expect("pair over f")
        })
        .collect();
    let map = GraphMorphism::new(total.clone(), target.total().clone(), vertex_map, dart_map)?;
    let iso = verified_iso(CoverMorphism::new(map, &source.cover, target.proj_base(), Category::Cov)?)?;
    Ok(ExtrinsicPullback {
        source,
        target,
        union,
        iso,
    })
}

/// For `E = ∐_α E_α` and a partition of the index set into blocks `I_β`,
/// the chain
///
/// ```text
/// f*(E) ≅ f*(∐_β ∐_{α∈I_β} E_α) ≅ ∐_β f*(∐_{α∈I_β} E_α) ≅ ∐_β ∐_{α∈I_β} f*(E_α)
/// ```
///
/// Each arrow is stored in the direction it is constructed, together with
/// the regrouping `∐_β ∐_{α∈I_β} E_α → E` over `Y` that induces the first.
#[derive(Clone, Debug)]
pub struct PartitionedChain {
    pub regroup: CoverMorphism,
    pub pulled_regroup: CoverMorphism,
    pub outer: ExtrinsicPullback,
    pub inner: CoverMorphism,
}

impl PartitionedChain {
    /// The composite `∐_β ∐_{α∈I_β} f*(E_α) → f*(E)`.
    pub fn composite(&self) -> Result<CoverMorphism> {
        self.inner.then(&self.outer.iso)?.then(&self.pulled_regroup)
    }
}

pub fn pullback_partitioned_union(
    f: &GraphMorphism,
    covers: &[CoveringMap],
    blocks: &[Vec<usize>],
) -> Result<PartitionedChain> {
    let mut seen = vec![false; covers.len()];
    for &alpha in blocks.iter().flatten() {
        if alpha >= covers.len() || std::mem::replace(&mut seen[alpha], true) {
            return Err(Error::InvalidPartition(format!("index {alpha} is repeated or unknown")));
        }
    }
    if let Some(alpha) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidPartition(format!("index {alpha} is in no block")));
    }
    let y = f.target();
    let whole = extrinsic_union(y, covers, Category::Cov, None)?;
    let inner_unions = blocks
        .iter()
        .map(|block| {
            let members: Vec<_> = block.iter().map(|&a| covers[a].clone()).collect();
            extrinsic_union(y, &members, Category::Cov, None)
        })
        .collect::<Result<Vec<_>>>()?;
    let grouped: Vec<_> = inner_unions.iter().map(|u| u.cover.clone()).collect();
    let nested = extrinsic_union(y, &grouped, Category::Cov, None)?;

    let total = nested.cover.total();
    let cell = |beta: usize, k: usize| blocks[beta][k];
    let vertex_map = total
        .vertices()
        .map(|v| {
            let (beta, local) = nested.locate_vertex(v);
            let (k, e) = inner_unions[beta].locate_vertex(local);
            whole.vertex(cell(beta, k), e)
        })
        .collect();
    let dart_map = total
        .darts()
        .map(|d| {
            let (beta, local) = nested.locate_dart(d);
            let (k, b) = inner_unions[beta].locate_dart(local);
            whole.dart(cell(beta, k), b)
        })
        .collect();
    let map = GraphMorphism::new(total.clone(), whole.cover.total().clone(), vertex_map, dart_map)?;
    let regroup = verified_iso(CoverMorphism::new(map, &nested.cover, &whole.cover, Category::Cov)?)?;

    let pb_nested = pullback(f, &nested.cover)?;
    let pb_whole = pullback(f, &whole.cover)?;
    let pulled_regroup = verified_iso(pullback_morphism_between(&pb_nested, &pb_whole, &regroup)?)?;

    let outer = pullback_extrinsic_union(f, &grouped)?;
    let per_block = blocks
        .iter()
        .map(|block| {
            let members: Vec<_> = block.iter().map(|&a| covers[a].clone()).collect();
            pullback_extrinsic_union(f, &members)
        })
        .collect::<Result<Vec<_>>>()?;
    let sources: Vec<_> = per_block.iter().map(|e| e.source.cover.clone()).collect();
    let left = extrinsic_union(f.source(), &sources, Category::Cov, None)?;
    let isos: Vec<_> = per_block
        .iter()
        .zip(&outer.source.summands)
        .map(|(e, target)| retarget(&e.iso, target))
        .collect::<Result<_>>()?;
    let inner = verified_iso(union_respects_iso(&left, &outer.source, &isos, Category::Cov)?)?;

    // `outer.target` and `pb_nested` are built identically; compose through
    // the latter so the chain is literally composable.
    let outer = ExtrinsicPullback {
        iso: same_layout(&outer.iso, &pb_nested)?,
        target: pb_nested,
        ..outer
    };
    Ok(PartitionedChain {
        regroup,
        pulled_regroup,
        outer,
        inner,
    })
}

/// `t` with its target replaced by an identically built cover.
fn retarget(t: &CoverMorphism, target: &CoveringMap) -> Result<CoverMorphism> {
    if !same_graph(t.map().target(), target.total()) {
        return Err(Error::MismatchedBase("pullbacks of a block differ".into()));
    }
    let map = GraphMorphism::new(
        t.map().source().clone(),
        target.total().clone(),
        t.map().vertex_map().to_vec(),
        t.map().dart_map().to_vec(),
    )?;
    CoverMorphism::new(map, t.source(), target, t.category())
}

fn same_layout(t: &CoverMorphism, target: &PullbackCover) -> Result<CoverMorphism> {
    retarget(t, target.proj_base())
}
