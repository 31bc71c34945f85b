use std::collections::BTreeSet;

use crate::cover::{Category, CoverMorphism, CoveringMap};
use crate::error::{Error, Result};
use crate::graph::{components, same_graph, ComponentPartition, DartId, GraphMorphism, VertexId};

/// All morphisms `p₁ → p₂` of one category, in a fixed order.
#[derive(Clone, Debug)]
pub struct HomSet {
    source: CoveringMap,
    target: CoveringMap,
    category: Category,
    morphisms: Vec<CoverMorphism>,
}

impl HomSet {
    pub fn source(&self) -> &CoveringMap {
        &self.source
    }

    pub fn target(&self) -> &CoveringMap {
        &self.target
    }

    pub fn category(&self) -> Category {
        self.category
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn morphisms(&self) -> &[CoverMorphism] {
        &self.morphisms
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CoverMorphism> {
        self.morphisms.iter()
    }

    /// Vertex maps, which determine cover morphisms.
    pub fn vertex_maps(&self) -> BTreeSet<Vec<VertexId>> {
        self.morphisms.iter().map(|t| t.map().vertex_map().to_vec()).collect()
    }
}

/// The unique extension of `c ↦ e` to the component of `c`, if the lifts
/// close up consistently.
pub(crate) struct ComponentMap {
    pub vertices: Vec<(VertexId, VertexId)>,
    pub darts: Vec<(DartId, DartId)>,
}

pub(crate) fn extend_component(
    p1: &CoveringMap,
    p2: &CoveringMap,
    members: &[VertexId],
    c: VertexId,
    e: VertexId,
    scratch: &mut [Option<VertexId>],
) -> Option<ComponentMap> {
    let g1 = p1.total();
    let g2 = p2.total();
    for &v in members {
        scratch[v.index()] = None;
    }
    let mut vertices = Vec::with_capacity(members.len());
    let mut darts = Vec::new();
    let mut stack = vec![c];
    scratch[c.index()] = Some(e);
    vertices.push((c, e));
    let mut ok = true;
    'outer: while let Some(u) = stack.pop() {
        let mu = scratch[u.index()].expect("visited");
        for &d in g1.star(u) {
            let b = p2.lift_dart(mu, p1.dart(d));
            darts.push((d, b));
            let w = g1.terminus(d);
            let t = g2.terminus(b);
            match scratch[w.index()] {
                None => {
                    scratch[w.index()] = Some(t);
                    vertices.push((w, t));
                    stack.push(w);
                }
                Some(prev) if prev != t => {
                    ok = false;
                    break 'outer;
                }
                Some(_) => {}
            }
        }
    }
    ok.then_some(ComponentMap { vertices, darts })
}

fn check_objects(p1: &CoveringMap, p2: &CoveringMap, category: Category) -> Result<()> {
    if !same_graph(p1.base(), p2.base()) {
        return Err(Error::MismatchedBase(format!(
            "covers of {} and {}",
            p1.base().name(),
            p2.base().name()
        )));
    }
    if category.is_based() && (p1.basepoint().is_none() || p2.basepoint().is_none()) {
        return Err(Error::MissingBasepoint(format!("{category} hom-set of unbased covers")));
    }
    Ok(())
}

/// Per source component: every admissible image of its representative.
fn component_options(
    p1: &CoveringMap,
    p2: &CoveringMap,
    parts: &ComponentPartition,
    category: Category,
) -> Vec<Vec<ComponentMap>> {
    let mut scratch = vec![None; p1.total().vertex_count()];
    let based = if category.is_based() { p1.basepoint().zip(p2.basepoint()) } else { None };
    (0..parts.count())
        .map(|k| {
            let members = parts.members(k);
            let c = parts.representative(k);
            p2.fiber(p1.vertex(c))
                .iter()
                .filter_map(|&e| extend_component(p1, p2, members, c, e, &mut scratch))
                .filter(|m| match based {
                    Some((b1, b2)) if parts.component_of(b1) == k => {
                        m.vertices.iter().any(|&(v, w)| v == b1 && w == b2)
                    }
                    _ => true,
                })
                .collect()
        })
        .collect()
}

/// Builds every morphism component by component: the representative of a
/// component goes to each point of its fiber in turn and the rest follows
/// by unique lifting. Choices are combined with the last component varying
/// fastest, then filtered by the category.
pub fn enumerate_hom(p1: &CoveringMap, p2: &CoveringMap, category: Category) -> Result<HomSet> {
    check_objects(p1, p2, category)?;
    let parts = components(p1.total());
    let options = component_options(p1, p2, &parts, category);
    let mut morphisms = Vec::new();
    if options.iter().all(|o| !o.is_empty()) {
        let g1 = p1.total();
        let mut choice = vec![0usize; options.len()];
        loop {
            let mut vertex_map = vec![VertexId::default(); g1.vertex_count()];
            let mut dart_map = vec![DartId::default(); g1.dart_count()];
            for (k, &i) in choice.iter().enumerate() {
                let m = &options[k][i];
                for &(v, w) in &m.vertices {
                    vertex_map[v.index()] = w;
                }
                for &(d, b) in &m.darts {
                    dart_map[d.index()] = b;
                }
            }
            let map = GraphMorphism::from_parts(g1.clone(), p2.total().clone(), vertex_map, dart_map);
            if !category.is_surjective() || map.is_vertex_surjective() {
                morphisms.push(CoverMorphism::from_parts(map, p1, p2, category));
            }
            // Odometer, last position fastest.
            let mut k = options.len();
            loop {
                if k == 0 {
                    return Ok(HomSet {
                        source: p1.clone(),
                        target: p2.clone(),
                        category,
                        morphisms,
                    });
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < options[k].len() {
                    break;
                }
                choice[k] = 0;
            }
        }
    }
    Ok(HomSet {
        source: p1.clone(),
        target: p2.clone(),
        category,
        morphisms,
    })
}

/// An isomorphism `p₁ → p₂` in the category, if one exists: each source
/// component must go bijectively onto a distinct target component.
pub fn find_isomorphism(p1: &CoveringMap, p2: &CoveringMap, category: Category) -> Result<Option<CoverMorphism>> {
    check_objects(p1, p2, category)?;
    let g1 = p1.total();
    let g2 = p2.total();
    if g1.vertex_count() != g2.vertex_count() || g1.dart_count() != g2.dart_count() {
        return Ok(None);
    }
    let parts1 = components(g1);
    let parts2 = components(g2);
    if parts1.count() != parts2.count() {
        return Ok(None);
    }
    let options: Vec<Vec<(usize, ComponentMap)>> = component_options(p1, p2, &parts1, category)
        .into_iter()
        .enumerate()
        .map(|(k, opts)| {
            opts.into_iter()
                .filter_map(|m| {
                    let target = parts2.component_of(m.vertices[0].1);
                    (parts2.members(target).len() == parts1.members(k).len()).then_some((target, m))
                })
                .collect()
        })
        .collect();

    fn assign(k: usize, options: &[Vec<(usize, ComponentMap)>], used: &mut [bool], chosen: &mut Vec<usize>) -> bool {
        if k == options.len() {
            return true;
        }
        for (i, (target, _)) in options[k].iter().enumerate() {
            if !used[*target] {
                used[*target] = true;
                chosen.push(i);
                if assign(k + 1, options, used, chosen) {
                    return true;
                }
                chosen.pop();
                used[*target] = false;
            }
        }
        false
    }

    let mut used = vec![false; parts2.count()];
    let mut chosen = Vec::new();
    if !assign(0, &options, &mut used, &mut chosen) {
        return Ok(None);
    }
    let mut vertex_map = vec![VertexId::default(); g1.vertex_count()];
    let mut dart_map = vec![DartId::default(); g1.dart_count()];
    for (k, &i) in chosen.iter().enumerate() {
        let (_, m) = &options[k][i];
        for &(v, w) in &m.vertices {
            vertex_map[v.index()] = w;
        }
        for &(d, b) in &m.darts {
            dart_map[d.index()] = b;
        }
    }
    let map = GraphMorphism::new(g1.clone(), g2.clone(), vertex_map, dart_map)?;
    let t = CoverMorphism::new(map, p1, p2, category)?;
    Ok((t.is_isomorphism() && t.inverse().is_some()).then_some(t))
}

/// The lifting criterion: a morphism of covers sending `c` to `e` exists
/// iff `p₁♯π₁(E₁, c) ⊆ p₂♯π₁(E₂, e)`, tested on the generators of the
/// former.
pub fn lifting_criterion(p1: &CoveringMap, c: VertexId, p2: &CoveringMap, e: VertexId) -> Result<bool> {
    if p1.vertex(c) != p2.vertex(e) {
        return Ok(false);
    }
    let h = crate::pi1::induced_hom(p1.projection(), c)?;
    let target = crate::pi1::cover_subgroup(p2, e)?;
    Ok(h.images().iter().all(|w| crate::pi1::membership(w, &target).member))
}

/// Brute-force hom-set: every assignment of vertices to fibers and of darts
/// to darts with matching ends and image, closed under reversal. Sorted by
/// vertex map, then dart map.
pub fn brute_force_hom(p1: &CoveringMap, p2: &CoveringMap, category: Category) -> Result<Vec<GraphMorphism>> {
    check_objects(p1, p2, category)?;
    let g1 = p1.total().clone();
    let g2 = p2.total().clone();
    let n = g1.vertex_count();
    let candidates = |v: VertexId| -> Vec<VertexId> {
        g2.vertices().filter(|&w| p2.vertex(w) == p1.vertex(v)).collect()
    };
    let dart_candidates = |d: DartId, m: &[VertexId]| -> Vec<DartId> {
        g2.darts()
            .filter(|&b| {
                p2.dart(b) == p1.dart(d)
                    && g2.origin(b) == m[g1.origin(d).index()]
                    && g2.terminus(b) == m[g1.terminus(d).index()]
            })
            .collect()
    };
    let mut results = Vec::new();
    let mut m = vec![VertexId::default(); n];

    fn vertices_rec(
        i: usize,
        m: &mut Vec<VertexId>,
        candidates: &dyn Fn(VertexId) -> Vec<VertexId>,
        feasible: &dyn Fn(usize, &[VertexId]) -> bool,
        done: &mut dyn FnMut(&[VertexId]),
    ) {
        if i == m.len() {
            done(m);
            return;
        }
        for w in candidates(VertexId::new(i)) {
            m[i] = w;
            if feasible(i, m) {
                vertices_rec(i + 1, m, candidates, feasible, done);
            }
        }
    }

    // A dart between assigned vertices must have somewhere to go.
    let feasible = |i: usize, m: &[VertexId]| -> bool {
        g1.darts().all(|d| {
            let (o, t) = (g1.origin(d).index(), g1.terminus(d).index());
            o.max(t) != i || !dart_candidates(d, m).is_empty()
        })
    };
    let based = category.is_based().then(|| (p1.basepoint().unwrap(), p2.basepoint().unwrap()));
    let mut done = |m: &[VertexId]| {
        if let Some((b1, b2)) = based {
            if m[b1.index()] != b2 {
                return;
            }
        }
        if category.is_surjective() {
            let hit: BTreeSet<_> = m.iter().copied().collect();
            if hit.len() != g2.vertex_count() {
                return;
            }
        }
        // Choose darts edge by edge: a dart and its reverse together.
        let edges: Vec<DartId> = g1.edges().collect();
        let mut dmap = vec![DartId::default(); g1.dart_count()];
        fn darts_rec(
            j: usize,
            edges: &[DartId],
            dmap: &mut Vec<DartId>,
            options: &dyn Fn(DartId) -> Vec<DartId>,
            rev1: &dyn Fn(DartId) -> DartId,
            rev2: &dyn Fn(DartId) -> DartId,
            out: &mut Vec<Vec<DartId>>,
        ) {
            if j == edges.len() {
                out.push(dmap.clone());
                return;
            }
            let d = edges[j];
            for b in options(d) {
                dmap[d.index()] = b;
                dmap[rev1(d).index()] = rev2(b);
                darts_rec(j + 1, edges, dmap, options, rev1, rev2, out);
            }
        }
        let mut dart_maps = Vec::new();
        darts_rec(
            0,
            &edges,
            &mut dmap,
            &|d| dart_candidates(d, m),
            &|d| g1.reverse(d),
            &|b| g2.reverse(b),
            &mut dart_maps,
        );
        for dm in dart_maps {
            results.push((m.to_vec(), dm));
        }
    };
    vertices_rec(0, &mut m, &candidates, &feasible, &mut done);
    results.sort();
    results
        .into_iter()
        .map(|(vm, dm)| GraphMorphism::new(g1.clone(), g2.clone(), vm, dm))
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cover::{trivial_cover, validate_cover};
    use crate::shapes;

    fn sorted(h: &HomSet) -> Vec<GraphMorphism> {
        let mut v: Vec<_> = h.iter().map(|t| t.map().clone()).collect();
        v.sort_by(|a, b| (a.vertex_map(), a.dart_map()).cmp(&(b.vertex_map(), b.dart_map())));
        v
    }

    #[test]
    fn trivial_double_cover_has_four_endomorphisms() {
        let c3 = Arc::new(shapes::cycle("C3", 3));
        let p = trivial_cover(&c3, 2);
        let h = enumerate_hom(&p, &p, Category::Cov).unwrap();
        assert_eq!(h.len(), 4);
        assert_eq!(enumerate_hom(&p, &p, Category::SCov).unwrap().len(), 2);
        assert_eq!(sorted(&h), brute_force_hom(&p, &p, Category::Cov).unwrap());
    }

    #[test]
    fn deck_group_of_triple_wrap() {
        let p = validate_cover(shapes::cycle_wrap(9, 3), Category::Cov, None).unwrap();
        let h = enumerate_hom(&p, &p, Category::Cov).unwrap();
        assert_eq!(h.len(), 3);
        assert!(h.iter().all(CoverMorphism::is_isomorphism));
        let b = p.with_basepoint(Some(VertexId::new(0)), Category::BCov).unwrap();
        let hb = enumerate_hom(&b, &b, Category::BCov).unwrap();
        assert_eq!(hb.len(), 1);
        assert_eq!(hb.morphisms()[0], CoverMorphism::identity(&b, Category::BCov));
        assert_eq!(sorted(&hb), brute_force_hom(&b, &b, Category::BCov).unwrap());
    }

    #[test]
    fn isomorphism_search() {
        let c3 = Arc::new(shapes::cycle("C3", 3));
        let wrap = validate_cover(shapes::wrap_between(Arc::new(shapes::cycle("C6", 6)), c3.clone()), Category::Cov, None)
            .unwrap();
        let triv = trivial_cover(&c3, 2);
        assert!(find_isomorphism(&wrap, &triv, Category::Cov).unwrap().is_none());
        assert!(find_isomorphism(&triv, &triv, Category::Cov).unwrap().is_some());
        assert!(find_isomorphism(&wrap, &wrap, Category::SCov).unwrap().is_some());
        let down = enumerate_hom(&wrap, &triv, Category::Cov).unwrap();
        assert_eq!(down.len(), 2);
        assert_eq!(sorted(&down), brute_force_hom(&wrap, &triv, Category::Cov).unwrap());
        assert!(enumerate_hom(&triv, &wrap, Category::Cov).unwrap().is_empty());
        assert!(brute_force_hom(&triv, &wrap, Category::Cov).unwrap().is_empty());
    }

    #[test]
    fn extension_matches_the_lifting_criterion() {
        let r2 = Arc::new(shapes::rose("R2", 2));
        let pres = crate::pi1::pi1(&r2, VertexId::new(0)).unwrap();
        let covers = crate::functor::connected_covers(&pres, 3).unwrap();
        for (_, p1) in &covers {
            let parts = components(p1.total());
            let c = parts.representative(0);
            let mut scratch = vec![None; p1.total().vertex_count()];
            for (_, p2) in &covers {
                for &e in p2.fiber(p1.vertex(c)) {
                    let extends = extend_component(p1, p2, parts.members(0), c, e, &mut scratch).is_some();
                    assert_eq!(extends, lifting_criterion(p1, c, p2, e).unwrap());
                }
            }
        }
    }
}
