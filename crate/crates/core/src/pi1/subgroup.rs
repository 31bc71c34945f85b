use super::stallings::{fold, membership, StallingsGraph};
use super::word::Word;
use super::{induced_hom, induced_hom_between, monodromy, pi1, InducedHom};
use crate::cover::CoveringMap;
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::pullback::pullback;

pub fn hom_is_surjective(h: &InducedHom) -> bool {
    fold(h.images(), h.target().rank()).is_whole_group()
}

/// Free groups are Hopfian: `f♯` is injective iff its image has the rank
/// of the source.
pub fn hom_is_injective(h: &InducedHom) -> bool {
    fold(h.images(), h.target().rank()).core().subgroup_rank() == h.source().rank()
}

/// `p♯(π₁(E, e))` inside `π₁(Y, p(e))`, by folding the images of the
/// generator loops of `E`. Checked against [`schreier_graph`].
pub fn cover_subgroup(p: &CoveringMap, e: VertexId) -> Result<StallingsGraph> {
    if e.index() >= p.total().vertex_count() {
        return Err(Error::UnknownVertex(e.to_string()));
    }
    let h = induced_hom(p.projection(), e)?;
    let folded = fold(h.images(), h.target().rank()).core();
    debug_assert_eq!(Some(&folded), schreier_graph(p, e).ok().as_ref());
    Ok(folded)
}

/// The same subgroup read off the component of `e` directly: the fiber
/// points in that component, joined by the lifts of the generator loops.
pub fn schreier_graph(p: &CoveringMap, e: VertexId) -> Result<StallingsGraph> {
    let y = p.vertex(e);
    let pres = pi1(p.base(), y)?;
    let rep = monodromy(p, &pres)?;
    let start = p.fiber_position(e);
    let orbit = rep.orbit(start);
    let mut order = vec![start];
    order.extend(orbit.iter().copied().filter(|&s| s != start));
    let mut pos = vec![usize::MAX; rep.sheets()];
    for (i, &s) in order.iter().enumerate() {
        pos[s] = i;
    }
    let table: Vec<Vec<usize>> = order
        .iter()
        .map(|&s| (0..rep.rank()).map(|k| pos[rep.perm(k)[s]]).collect())
        .collect();
    Ok(StallingsGraph::from_action(rep.rank(), &table))
}

/// Whether the lift at `e` of the loop `w` (a word of `π₁(Y, p(e))`)
/// closes up.
pub fn closed_lift_test(p: &CoveringMap, e: VertexId, w: &Word) -> Result<bool> {
    if e.index() >= p.total().vertex_count() {
        return Err(Error::UnknownVertex(e.to_string()));
    }
    let pres = pi1(p.base(), p.vertex(e))?;
    let path = pres.word_to_path(w)?;
    Ok(p.lift_endpoint(e, &path) == e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyLemmaRow {
    pub word: Word,
    pub image: Word,
    /// Closed lift of `w` in `f*(p)` at `z₁`.
    pub pulled_lift: bool,
    /// Closed lift of `f♯(w)` in `p` at `e₁`.
    pub image_lift: bool,
    /// Membership of `w` in the folded `f*(p)♯π₁(Z, z₁)`.
    pub pulled_member: bool,
    /// Membership of `f♯(w)` in the folded `p♯π₁(E, e₁)`.
    pub image_member: bool,
}

impl KeyLemmaRow {
    pub fn agrees(&self) -> bool {
        self.pulled_lift == self.image_lift
            && self.pulled_lift == self.pulled_member
            && self.image_lift == self.image_member
    }
}

#[derive(Clone, Debug)]
pub struct KeyLemmaReport {
    pub z1: VertexId,
    pub rows: Vec<KeyLemmaRow>,
}

impl KeyLemmaReport {
    pub fn discrepancies(&self) -> Vec<&KeyLemmaRow> {
        self.rows.iter().filter(|r| !r.agrees()).collect()
    }

    pub fn members(&self) -> usize {
        self.rows.iter().filter(|r| r.pulled_lift).count()
    }
}

/// Compares `f*(p)♯π₁(Z, z₁)` with `f♯⁻¹(p♯π₁(E, e₁))` on sample words of
/// `π₁(X, x₀)`, where `z₁ = (x₀, e₁)`. Each side is computed twice, by
/// lifting and by folding.
pub fn verify_key_lemma(
    f: &crate::graph::GraphMorphism,
    p: &CoveringMap,
    x0: VertexId,
    e1: VertexId,
    words: &[Word],
) -> Result<KeyLemmaReport> {
    let pb = pullback(f, p)?;
    let z1 = pb.vertex(x0, e1).ok_or_else(|| {
        Error::MismatchedBase(format!(
            "{} and {} lie over different vertices",
            f.source().vertex_name(x0),
            p.total().vertex_name(e1)
        ))
    })?;
    let source = pi1(f.source(), x0)?;
    let target = pi1(f.target(), f.vertex(x0))?;
    let h = induced_hom_between(f, source.clone(), target.clone())?;
    let pulled = cover_subgroup(pb.proj_base(), z1)?;
    let image = cover_subgroup(p, e1)?;
    let mut rows = Vec::with_capacity(words.len());
    for w in words {
        let fw = h.apply(w)?;
        let pulled_lift = pb.proj_base().lift_endpoint(z1, &source.word_to_path(w)?) == z1;
        let image_lift = p.lift_endpoint(e1, &target.word_to_path(&fw)?) == e1;
        rows.push(KeyLemmaRow {
            word: w.clone(),
            pulled_member: membership(w, &pulled).member,
            image_member: membership(&fw, &image).member,
            image: fw,
            pulled_lift,
            image_lift,
        });
    }
    Ok(KeyLemmaReport { z1, rows })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::cover::{validate_cover, Category};
    use crate::graph::GraphMorphism;
    use crate::pi1::{all_perm_reps, cover_from_perm_rep, random_word};
    use crate::shapes;

    fn wrap(n: usize, k: usize) -> CoveringMap {
        validate_cover(shapes::cycle_wrap(n, k), Category::Cov, None).unwrap()
    }

    #[test]
    fn surjectivity_and_injectivity() {
        let id = GraphMorphism::identity(Arc::new(shapes::rose("R2", 2)));
        let h = induced_hom(&id, VertexId::new(0)).unwrap();
        assert!(hom_is_surjective(&h) && hom_is_injective(&h));
        let h = induced_hom(&shapes::cycle_wrap(6, 3), VertexId::new(0)).unwrap();
        assert!(!hom_is_surjective(&h) && hom_is_injective(&h));
        let h = induced_hom(&shapes::rose_collapse(2), VertexId::new(0)).unwrap();
        assert!(hom_is_surjective(&h) && !hom_is_injective(&h));
        let h = induced_hom(&shapes::eight_onto_loop(), VertexId::new(0)).unwrap();
        assert!(!hom_is_surjective(&h) && !hom_is_injective(&h));
    }

    #[test]
    fn subgroups_of_cyclic_covers() {
        let one = CoveringMap::identity(Arc::new(shapes::cycle("C3", 3)));
        assert!(cover_subgroup(&one, VertexId::new(0)).unwrap().is_whole_group());
        for (n, idx) in [(6, 2), (9, 3)] {
            let p = wrap(n, 3);
            for e in p.total().vertices() {
                let s = cover_subgroup(&p, e).unwrap();
                assert_eq!(s.index(), Some(idx));
                assert_eq!(s.subgroup_rank(), 1);
            }
        }
        let p = wrap(6, 3);
        let b: Word = "g0".parse().unwrap();
        assert!(!closed_lift_test(&p, VertexId::new(0), &b).unwrap());
        assert!(closed_lift_test(&p, VertexId::new(0), &b.pow(2)).unwrap());
        assert!(closed_lift_test(&one, VertexId::new(1), &b.pow(5)).unwrap());
    }

    #[test]
    fn index_two_subgroup_of_f2() {
        let r2 = Arc::new(shapes::rose("R2", 2));
        let pres = pi1(&r2, VertexId::new(0)).unwrap();
        let rep = crate::pi1::PermRep::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let p = cover_from_perm_rep(&pres, &rep, Category::Cov).unwrap();
        let s = cover_subgroup(&p, VertexId::new(0)).unwrap();
        let gens: Vec<Word> = ["g0 g0", "g1", "g0 g1 g0^-1"].iter().map(|w| w.parse().unwrap()).collect();
        assert_eq!(s, fold(&gens, 2).core());
    }

    #[test]
    fn lifting_agrees_with_membership() {
        let r2 = Arc::new(shapes::rose("R2", 2));
        let pres = pi1(&r2, VertexId::new(0)).unwrap();
        let words = crate::pi1::all_words(2, 4);
        for rep in all_perm_reps(2, 3) {
            let p = cover_from_perm_rep(&pres, &rep, Category::Cov).unwrap();
            for &e in p.fiber(VertexId::new(0)) {
                let s = cover_subgroup(&p, e).unwrap();
                for w in &words {
                    assert_eq!(closed_lift_test(&p, e, w).unwrap(), membership(w, &s).member);
                }
            }
        }
    }

    #[test]
    fn key_lemma_on_cyclic_maps() {
        let p = wrap(9, 3);
        let f = shapes::wrap_between(Arc::new(shapes::cycle("C6", 6)), p.base().clone());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let words: Vec<_> = (0..100).map(|_| random_word(&mut rng, 1, 12)).collect();
        for e1 in p.fiber(VertexId::new(0)).to_vec() {
            let report = verify_key_lemma(&f, &p, VertexId::new(0), e1, &words).unwrap();
            assert!(report.discrepancies().is_empty());
        }
    }
}
