use super::{validate_cover, Category, CoveringMap};
use crate::error::{Error, Result};
use crate::graph::{components, same_graph, DartId, GraphMorphism, VertexId};

/// A commuting triangle `p₂ ∘ t = p₁` between covers of one base.
#[derive(Clone, Debug)]
pub struct CoverMorphism {
    map: GraphMorphism,
    source: CoveringMap,
    target: CoveringMap,
    category: Category,
}

impl PartialEq for CoverMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}

impl CoverMorphism {
    pub fn new(
        map: GraphMorphism,
        source: &CoveringMap,
        target: &CoveringMap,
        category: Category,
    ) -> Result<Self> {
        if !same_graph(map.source(), source.total()) || !same_graph(map.target(), target.total()) {
            return Err(Error::MismatchedBase(
                "morphism does not run between the two total spaces".into(),
            ));
        }
        if !same_graph(source.base(), target.base()) {
            return Err(Error::MismatchedBase(format!(
                "covers of {} and {}",
                source.base().name(),
                target.base().name()
            )));
        }
        let total = source.total();
        for e in total.vertices() {
            if target.vertex(map.vertex(e)) != source.vertex(e) {
                return Err(Error::NotCommuting(format!(
                    "vertex {} changes its image in the base",
                    total.vertex_name(e)
                )));
            }
        }
        for d in total.darts() {
            if target.dart(map.dart(d)) != source.dart(d) {
                return Err(Error::NotCommuting(format!(
                    "dart {} changes its image in the base",
                    total.dart_name(d)
                )));
            }
        }
        if category.is_based() {
            match (source.basepoint(), target.basepoint()) {
                (Some(e0), Some(e1)) if map.vertex(e0) == e1 => {}
                (Some(_), Some(_)) => {
                    return Err(Error::NotCommuting(format!("{category} requires the basepoint to be preserved")))
                }
                _ => return Err(Error::MissingBasepoint(format!("{category} morphism between unbased covers"))),
            }
        }
        if category.is_surjective() && !map.is_vertex_surjective() {
            return Err(Error::NotCommuting(format!(
                "{category} requires a surjective morphism"
            )));
        }
        if category.is_based() {
            match (source.basepoint(), target.basepoint()) {
                (Some(a), Some(b)) if map.vertex(a) == b => {}
                (Some(_), Some(_)) => {
                    return Err(Error::MismatchedBase("basepoint is not preserved".into()))
                }
                _ => return Err(Error::MissingBasepoint(category.to_string())),
            }
        }
        Ok(Self::from_parts(map, source, target, category))
    }

    pub(crate) fn from_parts(
        map: GraphMorphism,
        source: &CoveringMap,
        target: &CoveringMap,
        category: Category,
    ) -> Self {
        CoverMorphism {
            map,
            source: source.clone(),
            target: target.clone(),
            category,
        }
    }

    pub fn identity(p: &CoveringMap, category: Category) -> Self {
        Self::from_parts(GraphMorphism::identity(p.total().clone()), p, p, category)
    }

    pub fn map(&self) -> &GraphMorphism {
        &self.map
    }

    pub fn source(&self) -> &CoveringMap {
        &self.source
    }

    pub fn target(&self) -> &CoveringMap {
        &self.target
    }

    pub fn category(&self) -> Category {
        self.category
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &CoverMorphism) -> Result<CoverMorphism> {
        let map = self.map.then(&other.map)?;
        Ok(Self::from_parts(map, &self.source, &other.target, self.category))
    }

    pub fn is_injective(&self) -> bool {
        self.map.is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.map.is_vertex_surjective() && self.map.is_dart_surjective()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.map.is_bijective()
    }

    /// The inverse of a bijective morphism, itself a valid morphism.
    pub fn inverse(&self) -> Option<CoverMorphism> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut vertex_map = vec![VertexId::default(); self.map.target().vertex_count()];
        for (i, v) in self.map.vertex_map().iter().enumerate() {
            vertex_map[v.index()] = VertexId::new(i);
        }
        let mut dart_map = vec![DartId::default(); self.map.target().dart_count()];
        for (i, d) in self.map.dart_map().iter().enumerate() {
            dart_map[d.index()] = DartId::new(i);
        }
        let inv = GraphMorphism::new(
            self.map.target().clone(),
            self.map.source().clone(),
            vertex_map,
            dart_map,
        )
        .ok()?;
        CoverMorphism::new(inv, &self.target, &self.source, self.category).ok()
    }

    /// The morphism viewed as a covering of its target total space.
    pub fn as_cover(&self) -> Result<CoveringMap> {
        validate_cover(self.map.clone(), Category::Cov, None)
    }
}

/// Components of the source total space on which `t₁` and `t₂` agree.
///
/// Also checks rigidity: agreement at a single vertex of a component must
/// force agreement on the whole component.
pub fn equalizer(t1: &CoverMorphism, t2: &CoverMorphism) -> Result<Vec<usize>> {
    if !same_graph(t1.map.source(), t2.map.source()) || !same_graph(t1.map.target(), t2.map.target())
    {
        return Err(Error::MismatchedBase("morphisms between different covers".into()));
    }
    let total = t1.map.source();
    let partition = components(total);
    let mut agree = Vec::new();
    for c in 0..partition.count() {
        let members = partition.members(c);
        let vertices_agree = members.iter().filter(|&&v| t1.map.vertex(v) == t2.map.vertex(v)).count();
        let all = vertices_agree == members.len()
            && members.iter().all(|&v| {
                total.star(v).iter().all(|&d| t1.map.dart(d) == t2.map.dart(d))
            });
        if all {
            agree.push(c);
        } else if vertices_agree > 0 {
            return Err(Error::RigidityViolated(c));
        }
    }
    Ok(agree)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cover::trivial_cover;
    use crate::shapes;

    fn deck_rotation(p: &CoveringMap, shift: usize) -> CoverMorphism {
        let total = p.total();
        let n = total.vertex_count();
        let map = GraphMorphism::new(
            total.clone(),
            total.clone(),
            total.vertices().map(|v| VertexId::new((v.index() + shift) % n)).collect(),
            total.darts().map(|d| DartId::new((d.index() + 2 * shift) % (2 * n))).collect(),
        )
        .unwrap();
        CoverMorphism::new(map, p, p, Category::Cov).unwrap()
    }

    #[test]
    fn deck_swap_has_empty_equalizer_with_identity() {
        let p = validate_cover(shapes::cycle_wrap(6, 3), Category::Cov, None).unwrap();
        let id = CoverMorphism::identity(&p, Category::Cov);
        let swap = deck_rotation(&p, 3);
        assert!(equalizer(&id, &swap).unwrap().is_empty());
        assert_eq!(equalizer(&id, &id).unwrap(), vec![0]);
        assert_eq!(swap.then(&swap).unwrap(), id);
        assert_eq!(swap.inverse().unwrap(), swap);
    }

    #[test]
    fn non_deck_rotation_is_rejected() {
        let p = validate_cover(shapes::cycle_wrap(6, 3), Category::Cov, None).unwrap();
        let total = p.total();
        let map = GraphMorphism::new(
            total.clone(),
            total.clone(),
            total.vertices().map(|v| VertexId::new((v.index() + 1) % 6)).collect(),
            total.darts().map(|d| DartId::new((d.index() + 2) % 12)).collect(),
        )
        .unwrap();
        assert!(matches!(
            CoverMorphism::new(map, &p, &p, Category::Cov),
            Err(Error::NotCommuting(_))
        ));
    }

    #[test]
    fn morphisms_are_covers() {
        let c3 = Arc::new(shapes::cycle("C3", 3));
        let p = trivial_cover(&c3, 2);
        let id = CoverMorphism::identity(&p, Category::Cov);
        assert!(id.as_cover().is_ok());
    }
}
