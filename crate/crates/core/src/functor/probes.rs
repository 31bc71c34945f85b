use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use super::corpus::{assemble_cover, component_presentations, connected_covers, cover_corpus};
use super::hom::{enumerate_hom, find_isomorphism};
use crate::cover::{extrinsic_union, trivial_cover, Category, CoverMorphism, CoveringMap};
use crate::error::{Error, Result};
use crate::graph::{components, induced_pi0_map, Graph, GraphMorphism, VertexId};
use crate::pi1::{
    all_perm_reps, cover_from_perm_rep, fold, induced_hom_between, membership, monodromy,
    PermRep, Presentation,
};
use crate::pullback::{pullback, pullback_morphism_between, PullbackCover};

/// Search limits shared by the probes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest number of sheets over any component in the searched covers.
    pub max_sheets: usize,
    /// Longest sampled word in the lifting checks.
    pub word_length: usize,
    /// Sampled words per lifting check.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_sheets: 3,
            word_length: 12,
            samples: 100,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    /// Built directly from a failure of the algebraic condition.
    Construction,
    /// Found by exhausting the bounded corpus.
    Search,
}

/// `(x₀, f(x₀))` in based categories, where `x₀` is the base of `f` or
/// else the first declared base of its source.
pub(crate) fn base_pair(f: &GraphMorphism, category: Category) -> Result<Option<(VertexId, VertexId)>> {
    if !category.is_based() {
        return Ok(None);
    }
    let x0 = f.base().or_else(|| f.source().bases().first().copied()).ok_or_else(|| {
        Error::MissingBasepoint(format!("{category} needs a base vertex in {}", f.source().name()))
    })?;
    Ok(Some((x0, f.vertex(x0))))
}

/// Completes a vertex map between covers to a cover morphism by lifting.
fn by_lifting(p: &CoveringMap, q: &CoveringMap, vertex_map: Vec<VertexId>, category: Category) -> Result<CoverMorphism> {
    let total = p.total();
    let dart_map = total.darts().map(|d| q.lift_dart(vertex_map[total.origin(d).index()], p.dart(d))).collect();
    let map = GraphMorphism::new(total.clone(), q.total().clone(), vertex_map, dart_map)?;
    CoverMorphism::new(map, p, q, category)
}

/// `G × {1,2}`, based on sheet 1 over `base` when given.
fn two_sheets(g: &Arc<Graph>, base: Option<VertexId>, category: Category) -> Result<CoveringMap> {
    trivial_cover(g, 2).with_basepoint(base, category)
}

/// Exchanges the two sheets of `G × {1,2}` over the components picked by
/// `swapped`.
fn sheet_swap(p: &CoveringMap, swapped: impl Fn(VertexId) -> bool, category: Category) -> Result<CoverMorphism> {
    let n = p.base().vertex_count();
    let vertex_map = p
        .total()
        .vertices()
        .map(|e| {
            let v = p.vertex(e);
            if swapped(v) {
                VertexId::new((1 - e.index() / n) * n + v.index())
            } else {
                e
            }
        })
        .collect();
    by_lifting(p, p, vertex_map, category)
}

fn pull_all(f: &GraphMorphism, corpus: &[CoveringMap]) -> Result<Vec<PullbackCover>> {
    corpus.iter().map(|p| pullback(f, p)).collect()
}

/// Two morphisms with the same image under `f*`.
#[derive(Clone, Debug)]
pub struct FaithfulWitness {
    pub source: WitnessSource,
    pub p: CoveringMap,
    pub q: CoveringMap,
    pub t1: CoverMorphism,
    pub t2: CoverMorphism,
}

impl FaithfulWitness {
    /// Rechecks both morphisms in `category` and compares their pullbacks.
    pub fn verify(&self, f: &GraphMorphism, category: Category) -> Result<bool> {
        let t1 = CoverMorphism::new(self.t1.map().clone(), &self.p, &self.q, category)?;
        let t2 = CoverMorphism::new(self.t2.map().clone(), &self.p, &self.q, category)?;
        let a = pullback(f, &self.p)?;
        let b = pullback(f, &self.q)?;
        let s1 = pullback_morphism_between(&a, &b, &t1)?;
        let s2 = pullback_morphism_between(&a, &b, &t2)?;
        Ok(t1 != t2 && s1 == s2)
    }
}

#[derive(Clone, Debug)]
pub struct FaithfulProbe {
    pub category: Category,
    pub construction: Option<FaithfulWitness>,
    pub search: Option<FaithfulWitness>,
    pub objects: usize,
    pub pairs: usize,
    pub morphisms: usize,
}

impl FaithfulProbe {
    pub fn witness(&self) -> Option<&FaithfulWitness> {
        self.construction.as_ref().or(self.search.as_ref())
    }
}

/// Looks for `t₁ ≠ t₂` with `f*(t₁) = f*(t₂)`.
///
/// When a component `C` of `Y` is missed by `f`, the identity of
/// `Y × {1,2}` and the map exchanging the sheets over `C` are such a pair.
/// Independently, all hom-sets between corpus covers are searched.
pub fn probe_faithful(f: &GraphMorphism, category: Category, bounds: &Bounds) -> Result<FaithfulProbe> {
    let base = base_pair(f, category)?;
    let y = f.target();
    let pi0 = induced_pi0_map(f);
    let construction = match pi0.missed().first() {
        Some(&missed) => {
            let parts = components(y);
            let p = two_sheets(y, base.map(|(_, y0)| y0), category)?;
            let t1 = CoverMorphism::identity(&p, category);
            let t2 = sheet_swap(&p, |v| parts.component_of(v) == missed, category)?;
            Some(FaithfulWitness {
                source: WitnessSource::Construction,
                p: p.clone(),
                q: p,
                t1,
                t2,
            })
        }
        None => None,
    };

    let corpus = cover_corpus(y, base.map(|(_, y0)| y0), category, bounds.max_sheets)?;
    let pulled = pull_all(f, &corpus)?;
    let mut pairs = 0;
    let mut morphisms = 0;
    let mut search = None;
    'search: for (i, p) in corpus.iter().enumerate() {
        for (j, q) in corpus.iter().enumerate() {
            pairs += 1;
            let hom = enumerate_hom(p, q, category)?;
            morphisms += hom.len();
            let mut seen: HashMap<Vec<VertexId>, usize> = HashMap::new();
            for (k, t) in hom.iter().enumerate() {
                let s = pullback_morphism_between(&pulled[i], &pulled[j], t)?;
                if let Some(&earlier) = seen.get(s.map().vertex_map()) {
                    search = Some(FaithfulWitness {
                        source: WitnessSource::Search,
                        p: p.clone(),
                        q: q.clone(),
                        t1: hom.morphisms()[earlier].clone(),
                        t2: t.clone(),
                    });
                    break 'search;
                }
                seen.insert(s.map().vertex_map().to_vec(), k);
            }
        }
    }
    Ok(FaithfulProbe {
        category,
        construction,
        search,
        objects: corpus.len(),
        pairs,
        morphisms,
    })
}

/// How a fullness witness was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FullConstruction {
    /// Components `C₁ ≠ C₂` of `X` with the same image; `s` exchanges the
    /// sheets of `f*(Y × {1,2}) ≅ X × {1,2}` over `C₁`.
    SheetSwap { swapped: usize, partner: usize },
    /// `f♯` misses part of `π₁(Y, f(x₁))` at `x₁` in component `C`. `E` is a
    /// connected cover whose group contains the image; `s` collapses
    /// `f*(E)` onto the one-sheeted component through `(x₁, e₁)`.
    Collapse { component: usize, sheets: usize },
    /// As `Collapse`, but `s` exchanges that component with `C × {2}` in
    /// `f*(E ⊔ Y × {1} ⊔ Y × {2})`, which keeps `s` surjective.
    Exchange { component: usize, sheets: usize },
}

/// A morphism `s: f*(p) → f*(q)` that is not `f*(t)` for any `t: p → q`.
#[derive(Clone, Debug)]
pub struct FullWitness {
    pub source: WitnessSource,
    pub construction: Option<FullConstruction>,
    pub p: CoveringMap,
    pub q: CoveringMap,
    pub s: CoverMorphism,
}

impl FullWitness {
    /// Rechecks `s` in `category` and compares it with every `f*(t)`.
    pub fn verify(&self, f: &GraphMorphism, category: Category) -> Result<bool> {
        let a = pullback(f, &self.p)?;
        let b = pullback(f, &self.q)?;
        let s = CoverMorphism::new(self.s.map().clone(), a.proj_base(), b.proj_base(), category)?;
        for t in enumerate_hom(&self.p, &self.q, category)?.iter() {
            if pullback_morphism_between(&a, &b, t)? == s {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug)]
pub struct FullProbe {
    pub category: Category,
    pub construction: Option<FullWitness>,
    pub search: Option<FullWitness>,
    pub pairs: usize,
    pub morphisms: usize,
}

impl FullProbe {
    pub fn witness(&self) -> Option<&FullWitness> {
        self.construction.as_ref().or(self.search.as_ref())
    }
}

fn swap_witness(
    f: &GraphMorphism,
    category: Category,
    base: Option<(VertexId, VertexId)>,
    swapped: usize,
    partner: usize,
) -> Result<FullWitness> {
    let parts = components(f.source());
    let p = two_sheets(f.target(), base.map(|(_, y0)| y0), category)?;
    let a = pullback(f, &p)?;
    let ny = f.target().vertex_count();
    // φ⁻¹ ∘ σ ∘ φ for φ: X × {1,2} ≅ f*(Y × {1,2}), written out directly.
    let vertex_map = a
        .vertex_pairs()
        .iter()
        .enumerate()
        .map(|(v, &(x, e))| {
            if parts.component_of(x) == swapped {
                let flipped = VertexId::new((1 - e.index() / ny) * ny + e.index() % ny);
                a.vertex(x, flipped).expect("both sheets lie over f(x)")
            } else {
                VertexId::new(v)
            }
        })
        .collect();
    let s = by_lifting(a.proj_base(), a.proj_base(), vertex_map, category)?;
    Ok(FullWitness {
        source: WitnessSource::Construction,
        construction: Some(FullConstruction::SheetSwap { swapped, partner }),
        p: p.clone(),
        q: p,
        s,
    })
}

fn image_witness(
    f: &GraphMorphism,
    category: Category,
    base: Option<(VertexId, VertexId)>,
    pres: &Presentation,
) -> Result<Option<FullWitness>> {
    let y = f.target();
    let target = crate::pi1::pi1(y, f.vertex(pres.base()))?;
    let h = induced_hom_between(f, pres.clone(), target.clone())?;
    let image = fold(h.images(), target.rank()).core();
    let Some(rep) = image.finite_completion() else {
        return Ok(None);
    };
    let sheets = rep.sheets();
    let x1 = pres.base();
    let e = cover_from_perm_rep(&target, &rep, Category::BCov)?;
    let e1 = e.basepoint().expect("based");
    let component = pres.component();

    // The cover p, the position of E inside it, and the summand used for C × {2}.
    let (p, e_summand, second) = match category {
        Category::Cov => (e.with_basepoint(None, Category::Cov)?, None, None),
        _ => {
            let mut summands = vec![e.with_basepoint(None, Category::Cov)?];
            let one = trivial_cover(y, 1);
            let based_one = match base {
                Some((_, y0)) => one.with_basepoint(Some(y0), Category::BCov)?,
                None => one.clone(),
            };
            summands.push(based_one);
            if category.is_surjective() {
                summands.push(one);
            }
            let designated = category.is_based().then_some(1);
            let union = extrinsic_union(y, &summands, category, designated)?;
            let second = category.is_surjective().then_some(2);
            (union.cover.clone(), Some(union), second)
        }
    };
    let in_e = |v: VertexId| match &e_summand {
        None => true,
        Some(u) => u.locate_vertex(v).0 == 0,
    };
    let e1_in_p = match &e_summand {
        None => e1,
        Some(u) => u.vertex(0, e1),
    };
    let a = pullback(f, &p)?;
    let z = a.proj_base();
    let parts = components(a.total());
    let z1 = parts.component_of(a.vertex(x1, e1_in_p).expect("e₁ lies over f(x₁)"));
    // The component through (x₁, e₁) is one-sheeted over C.
    let mut over = vec![None; f.source().vertex_count()];
    for &v in parts.members(z1) {
        let x = z.vertex(v);
        if over[x.index()].replace(v).is_some() {
            return Err(Error::NotCommuting(format!(
                "component through ({},{}) has several sheets",
                f.source().vertex_name(x1),
                p.total().vertex_name(e1_in_p)
            )));
        }
    }
    let x_parts = components(f.source());
    let vertex_map: Vec<VertexId> = match second {
        None => a
            .vertex_pairs()
            .iter()
            .enumerate()
            .map(|(v, &(x, e))| if in_e(e) { over[x.index()].expect("component covers C") } else { VertexId::new(v) })
            .collect(),
        Some(k) => {
            let u = e_summand.as_ref().expect("union");
            a.vertex_pairs()
                .iter()
                .enumerate()
                .map(|(v, &(x, e))| {
                    let v = VertexId::new(v);
                    if x_parts.component_of(x) != component {
                        v
                    } else if parts.component_of(v) == z1 {
                        a.vertex(x, u.vertex(k, f.vertex(x))).expect("sheet over f(x)")
                    } else if u.locate_vertex(e).0 == k {
                        over[x.index()].expect("component covers C")
                    } else {
                        v
                    }
                })
                .collect()
        }
    };
    let s = by_lifting(z, z, vertex_map, category)?;
    let construction = if second.is_some() {
        FullConstruction::Exchange { component, sheets }
    } else {
        FullConstruction::Collapse { component, sheets }
    };
    Ok(Some(FullWitness {
        source: WitnessSource::Construction,
        construction: Some(construction),
        p: p.clone(),
        q: p,
        s,
    }))
}

/// Looks for `s: f*(p) → f*(q)` outside the image of `f*`.
///
/// Two constructions apply when the algebraic condition fails: a sheet
/// exchange over one of two components of `X` with a common image, and,
/// when π₀ is injective but `f♯` is not onto, a cover of `Y` whose group
/// contains the image of `f♯`. The bounded corpus is searched as well.
pub fn probe_full(f: &GraphMorphism, category: Category, bounds: &Bounds) -> Result<FullProbe> {
    let base = base_pair(f, category)?;
    let x = f.source();
    let y = f.target();
    let pi0 = induced_pi0_map(f);
    let mut construction = None;
    if let Some(&(i, j)) = pi0.collisions().first() {
        let parts = components(x);
        let (swapped, partner) = match base {
            Some((x0, _)) if parts.component_of(x0) == i => (j, i),
            _ => (i, j),
        };
        construction = Some(swap_witness(f, category, base, swapped, partner)?);
    } else {
        for pres in component_presentations(x, base.map(|(x0, _)| x0))? {
            if let Some(w) = image_witness(f, category, base, &pres)? {
                construction = Some(w);
                break;
            }
        }
    }

    let corpus = cover_corpus(y, base.map(|(_, y0)| y0), category, bounds.max_sheets)?;
    let pulled = pull_all(f, &corpus)?;
    let mut pairs = 0;
    let mut morphisms = 0;
    let mut search = None;
    'search: for (i, p) in corpus.iter().enumerate() {
        for (j, q) in corpus.iter().enumerate() {
            pairs += 1;
            let image: HashSet<Vec<VertexId>> = enumerate_hom(p, q, category)?
                .iter()
                .map(|t| pullback_morphism_between(&pulled[i], &pulled[j], t).map(|s| s.map().vertex_map().to_vec()))
                .collect::<Result<_>>()?;
            let upstairs = enumerate_hom(pulled[i].proj_base(), pulled[j].proj_base(), category)?;
            morphisms += upstairs.len();
            if let Some(s) = upstairs.iter().find(|s| !image.contains(s.map().vertex_map())) {
                search = Some(FullWitness {
                    source: WitnessSource::Search,
                    construction: None,
                    p: p.clone(),
                    q: q.clone(),
                    s: s.clone(),
                });
                break 'search;
            }
        }
    }
    Ok(FullProbe {
        category,
        construction,
        search,
        pairs,
        morphisms,
    })
}

/// Why no cover of `Y` pulls back to a given cover of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonRealizable {
    /// Two vertices with the same image component have fibers of different
    /// sizes.
    DegreeMismatch { x1: VertexId, x2: VertexId, degrees: (usize, usize) },
    /// The only action of `π₁(Y)` compatible with the component's action
    /// through `f♯` fails on this generator of `π₁(X)`.
    ForcedActionFails { component: usize, generator: usize },
    /// No cover of `Y` with the forced degrees pulls back to it.
    Exhausted { candidates: usize },
}

#[derive(Clone, Debug)]
pub enum Realization {
    /// `f*(cover) ≅ object` via `iso`.
    Realized { cover: CoveringMap, iso: CoverMorphism, candidates: usize },
    NotRealizable(NonRealizable),
}

impl Realization {
    pub fn is_realized(&self) -> bool {
        matches!(self, Realization::Realized { .. })
    }
}

/// The presentations of `X` used by the probes, with `f♯` on each.
struct Induced {
    presentations: Vec<Presentation>,
    targets: Vec<Presentation>,
    images: Vec<Vec<crate::pi1::Word>>,
}

fn induced(f: &GraphMorphism, x0: Option<VertexId>) -> Result<Induced> {
    let presentations = component_presentations(f.source(), x0)?;
    let mut targets = Vec::new();
    let mut images = Vec::new();
    for pres in &presentations {
        let target = crate::pi1::pi1(f.target(), f.vertex(pres.base()))?;
        let h = induced_hom_between(f, pres.clone(), target.clone())?;
        images.push(h.images().to_vec());
        targets.push(target);
    }
    Ok(Induced {
        presentations,
        targets,
        images,
    })
}

/// Decides whether `object ≅ f*(E)` for some cover `E` of `Y` in
/// `category`. When π₀ is bijective and `f♯` onto, the action of `π₁(Y)`
/// on each orbit is forced and read off through preimages of generators;
/// otherwise every cover with the forced degrees is tried.
pub fn realize(f: &GraphMorphism, object: &CoveringMap, category: Category) -> Result<Realization> {
    let pi0 = induced_pi0_map(f);
    let base = base_pair(f, category)?;
    let data = induced(f, base.map(|(x0, _)| x0))?;
    let onto = data
        .images
        .iter()
        .zip(&data.targets)
        .all(|(im, t)| fold(im, t.rank()).is_whole_group());
    if pi0.is_bijective() && onto {
        realize_forced(f, object, category, base, &data)
    } else {
        realize_exhaustive(f, object, category)
    }
}

fn realize_forced(
    f: &GraphMorphism,
    object: &CoveringMap,
    category: Category,
    base: Option<(VertexId, VertexId)>,
    data: &Induced,
) -> Result<Realization> {
    let y = f.target();
    let t0 = object.basepoint();
    let mut summands = Vec::new();
    let mut designated = None;
    for (c, pres) in data.presentations.iter().enumerate() {
        let xc = pres.base();
        if object.fiber(xc).is_empty() {
            continue;
        }
        let target = &data.targets[c];
        let images = &data.images[c];
        let folded = fold(images, target.rank());
        let preimages: Vec<_> = (0..target.rank())
            .map(|j| {
                membership(&crate::pi1::Word::generator(j), &folded)
                    .preimage
                    .expect("f♯ is onto")
            })
            .collect();
        let rho = monodromy(object, pres)?;
        for mut orbit in rho.orbits() {
            let holds_base = match (t0, base) {
                (Some(t0), Some((x0, _))) if x0 == xc => orbit.contains(&object.fiber_position(t0)),
                _ => false,
            };
            if holds_base {
                let s0 = object.fiber_position(t0.expect("based"));
                orbit.retain(|&s| s != s0);
                orbit.insert(0, s0);
            }
            let local = rho.restrict_to_orbit(&orbit);
            let perms = preimages
                .iter()
                .map(|u| (0..local.sheets()).map(|s| local.act(s, u)).collect())
                .collect();
            let sigma = PermRep::new(local.sheets(), perms)?;
            for (i, w) in images.iter().enumerate() {
                if (0..local.sheets()).any(|s| sigma.act(s, w) != local.perm(i)[s]) {
                    return Ok(Realization::NotRealizable(NonRealizable::ForcedActionFails {
                        component: c,
                        generator: i,
                    }));
                }
            }
            if holds_base {
                designated = Some(summands.len());
            }
            let cat = if holds_base { Category::BCov } else { Category::Cov };
            summands.push(cover_from_perm_rep(target, &sigma, cat)?);
        }
    }
    let e = assemble_cover(y, &summands, category, designated)?;
    let pb = pullback(f, &e)?;
    match find_isomorphism(pb.proj_base(), object, category)? {
        Some(iso) => Ok(Realization::Realized {
            cover: e,
            iso,
            candidates: 1,
        }),
        None => Err(Error::NotCommuting(
            "forced action gives a cover whose pullback is not the object".into(),
        )),
    }
}

/// Tries every cover of `Y` whose degree over each hit component matches
/// the object, one per action up to relabeling (and per basepoint sheet in
/// based categories). Components of `Y` missed by `f` get nothing, or one
/// sheet in surjective categories.
pub fn realize_exhaustive(f: &GraphMorphism, object: &CoveringMap, category: Category) -> Result<Realization> {
    let x = f.source();
    let y = f.target();
    let base = base_pair(f, category)?;
    let y_parts = components(y);
    let mut degree: Vec<Option<(VertexId, usize)>> = vec![None; y_parts.count()];
    for v in x.vertices() {
        let b = y_parts.component_of(f.vertex(v));
        let d = object.fiber(v).len();
        match degree[b] {
            None => degree[b] = Some((v, d)),
            Some((u, du)) if du != d => {
                return Ok(Realization::NotRealizable(NonRealizable::DegreeMismatch {
                    x1: u,
                    x2: v,
                    degrees: (du, d),
                }))
            }
            Some(_) => {}
        }
    }
    let presentations = component_presentations(y, base.map(|(_, y0)| y0))?;
    let based_component = base.map(|(_, y0)| y_parts.component_of(y0));
    let options: Vec<Vec<Option<PermRep>>> = presentations
        .iter()
        .enumerate()
        .map(|(b, pres)| match degree[b] {
            None if category.is_surjective() => vec![Some(PermRep::identity(pres.rank(), 1))],
            None | Some((_, 0)) => vec![None],
            Some((_, d)) => {
                let reps = all_perm_reps(pres.rank(), d);
                if based_component == Some(b) {
                    let set: BTreeSet<_> = reps.iter().flat_map(|r| (0..d).map(|s| r.based_at(s))).collect();
                    set.into_iter().map(Some).collect()
                } else {
                    reps.into_iter().map(Some).collect()
                }
            }
        })
        .collect();
    let mut candidates = 0;
    let mut choice = vec![0usize; options.len()];
    loop {
        candidates += 1;
        let mut summands = Vec::new();
        let mut designated = None;
        for (b, &i) in choice.iter().enumerate() {
            if let Some(rep) = &options[b][i] {
                let based = based_component == Some(b);
                if based {
                    designated = Some(summands.len());
                }
                let cat = if based { Category::BCov } else { Category::Cov };
                summands.push(cover_from_perm_rep(&presentations[b], rep, cat)?);
            }
        }
        let admissible = !category.is_based() || designated.is_some();
        if admissible {
            let e = assemble_cover(y, &summands, category, designated)?;
            let pb = pullback(f, &e)?;
            if let Some(iso) = find_isomorphism(pb.proj_base(), object, category)? {
                return Ok(Realization::Realized { cover: e, iso, candidates });
            }
        }
        let mut k = options.len();
        loop {
            if k == 0 {
                return Ok(Realization::NotRealizable(NonRealizable::Exhausted { candidates }));
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

/// A cover of `X` not isomorphic to any pullback.
#[derive(Clone, Debug)]
pub struct EsWitness {
    /// Component of `X` carrying the connected test cover.
    pub component: usize,
    /// Its action, on the fiber over the component's base vertex.
    pub rep: PermRep,
    pub object: CoveringMap,
    pub reason: NonRealizable,
}

impl EsWitness {
    /// Rechecks non-realizability by the exhaustive search.
    pub fn verify(&self, f: &GraphMorphism, category: Category) -> Result<bool> {
        Ok(!realize_exhaustive(f, &self.object, category)?.is_realized())
    }
}

#[derive(Clone, Debug)]
pub struct EsProbe {
    pub category: Category,
    pub tested: usize,
    pub realized: usize,
    pub witnesses: Vec<EsWitness>,
}

/// The test object for a connected cover `z` of one component: `z` itself
/// in `Cov`, otherwise `z ⊔ X × {1}` based over `x₀` in the second summand.
pub fn test_object(x: &Arc<Graph>, z: &CoveringMap, category: Category, x0: Option<VertexId>) -> Result<CoveringMap> {
    if category == Category::Cov {
        return Ok(z.clone());
    }
    let one = trivial_cover(x, 1);
    let one = match x0 {
        Some(x0) if category.is_based() => one.with_basepoint(Some(x0), Category::BCov)?,
        _ => one,
    };
    assemble_cover(x, &[z.clone(), one], category, category.is_based().then_some(1))
}

/// Tries to realize every connected cover of every component of `X` with
/// at most `max_sheets` sheets, one per conjugacy class of subgroups.
pub fn probe_essentially_surjective(f: &GraphMorphism, category: Category, bounds: &Bounds) -> Result<EsProbe> {
    let base = base_pair(f, category)?;
    let x = f.source();
    let mut tested = 0;
    let mut realized = 0;
    let mut witnesses = Vec::new();
    for (c, pres) in component_presentations(x, base.map(|(x0, _)| x0))?.iter().enumerate() {
        for (rep, z) in connected_covers(pres, bounds.max_sheets)? {
            let object = test_object(x, &z, category, base.map(|(x0, _)| x0))?;
            tested += 1;
            match realize(f, &object, category)? {
                Realization::Realized { .. } => realized += 1,
                Realization::NotRealizable(reason) => witnesses.push(EsWitness {
                    component: c,
                    rep,
                    object,
                    reason,
                }),
            }
        }
    }
    Ok(EsProbe {
        category,
        tested,
        realized,
        witnesses,
    })
}
