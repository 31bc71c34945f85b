use std::collections::BTreeSet;
use std::sync::Arc;

use super::{validate_cover, Category, CoverMorphism, CoveringMap};
use crate::error::{Error, Result};
use crate::graph::{
    components, pair_name, same_graph, DartId, Graph, GraphMorphism, Subgraph, VertexId,
};

/// `|D|` disjoint copies of `y`, sheet-major: vertex `(v, i)` has index
/// `(i - 1) * |V| + v` and is named `(v,i)` with `i` counted from 1.
pub(crate) fn product_graph(y: &Graph, sheets: usize, name: impl Into<String>) -> Graph {
    let nv = y.vertex_count();
    let nd = y.dart_count();
    let mut vertex_names = Vec::with_capacity(nv * sheets);
    let mut dart_names = Vec::with_capacity(nd * sheets);
    let mut origin = Vec::with_capacity(nd * sheets);
    let mut reverse = Vec::with_capacity(nd * sheets);
    for i in 0..sheets {
        let tag = (i + 1).to_string();
        vertex_names.extend(y.vertices().map(|v| pair_name(y.vertex_name(v), &tag)));
        dart_names.extend(y.darts().map(|d| pair_name(y.dart_name(d), &tag)));
        origin.extend(y.darts().map(|d| VertexId::new(i * nv + y.origin(d).index())));
        reverse.extend(y.darts().map(|d| DartId::new(i * nd + y.reverse(d).index())));
    }
    Graph::from_parts(name, vertex_names, dart_names, origin, reverse, Vec::new())
}

/// The product cover `Y × {1..sheets} → Y`.
pub fn trivial_cover(y: &Arc<Graph>, sheets: usize) -> CoveringMap {
    let total = Arc::new(product_graph(y, sheets, format!("{}x{sheets}", y.name())));
    let nv = y.vertex_count().max(1);
    let nd = y.dart_count().max(1);
    let map = GraphMorphism::from_parts(
        total.clone(),
        y.clone(),
        total.vertices().map(|v| VertexId::new(v.index() % nv)).collect(),
        total.darts().map(|d| DartId::new(d.index() % nd)).collect(),
    );
    validate_cover(map, Category::Cov, None).expect("product is a cover")
}

/// An isomorphism from `p` onto `trivial_cover(Y, D)` when one exists.
///
/// `p` is trivial exactly when every component of its total space maps with
/// degree one onto a component of `Y` and every component of `Y` is covered by
/// the same number `D` of such sheets.
pub fn is_trivial(p: &CoveringMap) -> Option<CoverMorphism> {
    let y = p.base();
    let total = p.total();
    let base_parts = components(y);
    let total_parts = components(total);

    let mut sheets_over: Vec<Vec<usize>> = vec![Vec::new(); base_parts.count()];
    for c in 0..total_parts.count() {
        let rep = total_parts.representative(c);
        let b = base_parts.component_of(p.vertex(rep));
        let over = p
            .fiber(p.vertex(rep))
            .iter()
            .filter(|&&e| total_parts.component_of(e) == c)
            .count();
        if over != 1 {
            return None;
        }
        sheets_over[b].push(c);
    }
    let d = sheets_over.first().map_or(0, Vec::len);
    if sheets_over.iter().any(|s| s.len() != d) {
        return None;
    }
    let mut sheet_of_component = vec![0; total_parts.count()];
    for list in &sheets_over {
        for (k, &c) in list.iter().enumerate() {
            sheet_of_component[c] = k;
        }
    }
    let trivial = trivial_cover(y, d);
    let nv = y.vertex_count();
    let nd = y.dart_count();
    let map = GraphMorphism::from_parts(
        total.clone(),
        trivial.total().clone(),
        total
            .vertices()
            .map(|e| {
                let k = sheet_of_component[total_parts.component_of(e)];
                VertexId::new(k * nv + p.vertex(e).index())
            })
            .collect(),
        total
            .darts()
            .map(|a| {
                let k = sheet_of_component[total_parts.component_of(total.origin(a))];
                DartId::new(k * nd + p.dart(a).index())
            })
            .collect(),
    );
    let t = CoverMorphism::new(map, p, &trivial, Category::Cov).ok()?;
    t.is_isomorphism().then_some(t)
}

/// The restriction `p⁻¹(A) → A` over a subgraph `A` of the base.
pub fn restrict_cover(p: &CoveringMap, a: &Subgraph) -> Result<CoveringMap> {
    let y = p.base();
    let a = Subgraph::new(y, a.vertices.iter().copied(), a.darts.iter().copied())?;
    let total = p.total();
    let sub_total = Subgraph::new(
        total,
        total.vertices().filter(|&e| a.vertices.contains(&p.vertex(e))),
        total.darts().filter(|&d| a.darts.contains(&p.dart(d))),
    )?;
    let (a_graph, _) = a.realize(y, format!("{}|A", y.name()));
    let (e_graph, _) = sub_total.realize(total, format!("{}|A", total.name()));
    let vpos: Vec<Option<usize>> = {
        let mut v = vec![None; y.vertex_count()];
        for (i, y) in a.vertices.iter().enumerate() {
            v[y.index()] = Some(i);
        }
        v
    };
    let dpos: Vec<Option<usize>> = {
        let mut v = vec![None; y.dart_count()];
        for (i, d) in a.darts.iter().enumerate() {
            v[d.index()] = Some(i);
        }
        v
    };
    let vertex_map = sub_total
        .vertices
        .iter()
        .map(|&e| VertexId::new(vpos[p.vertex(e).index()].expect("vertex over A")))
        .collect();
    let dart_map = sub_total
        .darts
        .iter()
        .map(|&d| DartId::new(dpos[p.dart(d).index()].expect("dart over A")))
        .collect();
    let basepoint = p
        .basepoint()
        .and_then(|b| sub_total.vertices.iter().position(|&e| e == b))
        .map(VertexId::new);
    let map = GraphMorphism::from_parts(e_graph, a_graph, vertex_map, dart_map);
    validate_cover(map, Category::Cov, basepoint)
}

/// The restriction of `p` to the union of the chosen total-space components.
pub fn select_components(p: &CoveringMap, chosen: &[usize]) -> Result<CoveringMap> {
    let total = p.total();
    let parts = components(total);
    let mut vertices = BTreeSet::new();
    for &c in chosen {
        if c >= parts.count() {
            return Err(Error::UnknownComponent(c));
        }
        vertices.extend(parts.members(c).iter().copied());
    }
    let darts: Vec<DartId> = total
        .darts()
        .filter(|&d| vertices.contains(&total.origin(d)))
        .collect();
    let sub = Subgraph::new(total, vertices, darts)?;
    let (_, inclusion) = sub.realize(total, total.name().to_string());
    let basepoint = p
        .basepoint()
        .and_then(|b| sub.vertices.iter().position(|&e| e == b))
        .map(VertexId::new);
    let map = inclusion.then(p.projection())?;
    validate_cover(map, Category::Cov, basepoint)
}

/// The component of the base equal to `p(C)`. Asserts that the image is the
/// whole component, vertices and darts alike.
pub fn image_of_component(p: &CoveringMap, component: usize) -> Result<usize> {
    let total = p.total();
    let parts = components(total);
    if component >= parts.count() {
        return Err(Error::UnknownComponent(component));
    }
    let y = p.base();
    let base_parts = components(y);
    let members = parts.members(component);
    let b = base_parts.component_of(p.vertex(members[0]));
    let image_vertices: BTreeSet<VertexId> = members.iter().map(|&e| p.vertex(e)).collect();
    let image_darts: BTreeSet<DartId> = members
        .iter()
        .flat_map(|&e| total.star(e).iter().map(|&d| p.dart(d)))
        .collect();
    let want_vertices: BTreeSet<VertexId> = base_parts.members(b).iter().copied().collect();
    let want_darts: BTreeSet<DartId> = want_vertices
        .iter()
        .flat_map(|&v| y.star(v).iter().copied())
        .collect();
    if image_vertices != want_vertices || image_darts != want_darts {
        return Err(Error::NotAComponent(format!(
            "image of component {component} is a proper part of base component {b}"
        )));
    }
    Ok(b)
}

/// Views a cover of `B` as a cover of `Y ⊇ B`, where `inclusion: B → Y`
/// embeds `B` as a union of components. Fibers off `B` are empty.
pub fn extend_cover_to_union(p: &CoveringMap, inclusion: &GraphMorphism) -> Result<CoveringMap> {
    if !same_graph(inclusion.source(), p.base()) {
        return Err(Error::MismatchedBase(format!(
            "inclusion starts at {}, cover lies over {}",
            inclusion.source().name(),
            p.base().name()
        )));
    }
    if !inclusion.is_injective() {
        return Err(Error::NotAComponent("inclusion is not injective".into()));
    }
    let y = inclusion.target();
    let image: BTreeSet<DartId> = inclusion.dart_map().iter().copied().collect();
    for &v in inclusion.vertex_map() {
        if y.star(v).iter().any(|d| !image.contains(d)) {
            return Err(Error::NotAComponent(format!(
                "vertex {} has darts outside the image",
                y.vertex_name(v)
            )));
        }
    }
    let map = p.projection().then(inclusion)?;
    validate_cover(map, Category::Cov, p.basepoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    fn c3() -> Arc<Graph> {
        Arc::new(shapes::cycle("C3", 3))
    }

    #[test]
    fn trivial_covers() {
        let y = c3();
        let p = trivial_cover(&y, 2);
        assert_eq!(components(p.total()).count(), 2);
        assert_eq!(p.total().vertex_name(VertexId::new(4)), "(v1,2)");
        assert_eq!(p.total().dart_name(DartId::new(0)), "(e0,1)+");
        assert!(trivial_cover(&y, 0).total().is_empty());
        let r2 = Arc::new(shapes::rose("R2", 2));
        assert_eq!(trivial_cover(&r2, 1).total().dart_count(), 4);
    }

    #[test]
    fn triviality() {
        let y = c3();
        let t = is_trivial(&trivial_cover(&y, 2)).unwrap();
        assert!(t.is_isomorphism());
        let wrap = validate_cover(shapes::cycle_wrap(6, 3), Category::Cov, None).unwrap();
        assert!(is_trivial(&wrap).is_none());
        assert!(is_trivial(&CoveringMap::empty(y)).is_some());
    }

    #[test]
    fn restriction_to_a_vertex() {
        let wrap = validate_cover(shapes::cycle_wrap(6, 3), Category::Cov, None).unwrap();
        let y = wrap.base().clone();
        let point = Subgraph::new(&y, [VertexId::new(0)], []).unwrap();
        let r = restrict_cover(&wrap, &point).unwrap();
        assert_eq!(r.total().vertex_count(), 2);
        assert_eq!(r.total().dart_count(), 0);
        let whole = restrict_cover(&wrap, &Subgraph::whole(&y)).unwrap();
        assert_eq!(whole.projection().vertex_map(), wrap.projection().vertex_map());
    }

    #[test]
    fn selecting_components() {
        let y = c3();
        let p = trivial_cover(&y, 2);
        assert_eq!(select_components(&p, &[0, 1]).unwrap().total().vertex_count(), 6);
        let one = select_components(&p, &[1]).unwrap();
        assert_eq!(one.fiber(VertexId::new(0)).len(), 1);
        let none = select_components(&p, &[]).unwrap();
        assert!(none.total().is_empty());
        assert!(matches!(select_components(&p, &[2]), Err(Error::UnknownComponent(2))));
    }

    #[test]
    fn images_of_components_are_components() {
        let y = Arc::new(Graph::disjoint_union("C3+R2", &[&shapes::cycle("C3", 3), &shapes::rose("R2", 2)]));
        let c3 = Arc::new(shapes::cycle("C3", 3));
        let first = GraphMorphism::from_parts(
            c3.clone(),
            y.clone(),
            c3.vertices().collect(),
            c3.darts().collect(),
        );
        let q = extend_cover_to_union(&trivial_cover(&c3, 2), &first).unwrap();
        assert_eq!(q.fiber(VertexId::new(3)).len(), 0);
        for c in 0..2 {
            assert_eq!(image_of_component(&q, c).unwrap(), 0);
        }
        let back = restrict_cover(&q, &Subgraph::induced(&y, [0, 1, 2].map(VertexId::new)).unwrap()).unwrap();
        assert_eq!(back.total().vertex_count(), 6);
    }
}
