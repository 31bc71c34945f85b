use std::collections::BTreeSet;
use std::sync::Arc;

use crate::cover::{extrinsic_union, validate_cover, Category, CoveringMap};
use crate::error::{Error, Result};
use crate::graph::{components, DartId, Graph, GraphMorphism, VertexId};
use crate::pi1::{all_perm_reps, cover_from_perm_rep, pi1, pi1_default, transitive_perm_reps, PermRep, Presentation};
use crate::shapes;

/// Expected answers for a corpus map, fixed by construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub pi0_surjective: bool,
    pub pi0_injective: bool,
    pub pi1_surjective: bool,
    pub pi1_injective: bool,
}

#[derive(Clone, Debug)]
pub struct CorpusMap {
    pub name: String,
    pub f: GraphMorphism,
    pub expected: Expected,
}

/// Doubles the source and/or adds a spare `C3` to the target of `f`,
/// keeping `f` on the first copy. Based at vertex 0.
fn variant(f: &GraphMorphism, double_source: bool, spare_target: bool) -> GraphMorphism {
    let x = f.source();
    let y = f.target();
    let x2: Arc<Graph> = if double_source {
        Arc::new(Graph::disjoint_union(format!("{}+{}", x.name(), x.name()), &[x, x]))
    } else {
        x.clone()
    };
    let y2: Arc<Graph> = if spare_target {
        let spare = shapes::cycle("C3", 3);
        Arc::new(Graph::disjoint_union(format!("{}+C3", y.name()), &[y, &spare]))
    } else {
        y.clone()
    };
    let nv = x.vertex_count();
    let nd = x.dart_count().max(1);
    let vertex_map = x2.vertices().map(|v| f.vertex(VertexId::new(v.index() % nv))).collect();
    let dart_map = x2.darts().map(|d| f.dart(DartId::new(d.index() % nd))).collect();
    GraphMorphism::new(x2, y2, vertex_map, dart_map)
        .and_then(|g| g.based_at(VertexId::new(0)))
        .expect("variant of a valid map")
}

/// Sixteen maps covering every combination of π₀ surjective/injective and
/// π₁ surjective/injective, plus the identity of `R2`.
///
/// The π₁ behaviour comes from one of four maps: the identity of `C3`,
/// `R2 → R1`, `C6 → C3` and the subdivided eight onto `R1`. π₀ behaviour
/// comes from doubling the source and adding a spare target component.
pub fn corpus_maps() -> Vec<CorpusMap> {
    let c3 = Arc::new(shapes::cycle("C3", 3));
    let bases: [(GraphMorphism, bool, bool); 4] = [
        (GraphMorphism::identity(c3.clone()), true, true),
        (shapes::rose_collapse(2), true, false),
        (shapes::wrap_between(Arc::new(shapes::cycle("C6", 6)), c3), false, true),
        (shapes::eight_onto_loop(), false, false),
    ];
    let mut out = Vec::new();
    for (f, pi1_surjective, pi1_injective) in &bases {
        for (double_source, spare_target) in [(false, false), (false, true), (true, false), (true, true)] {
            let g = variant(f, double_source, spare_target);
            out.push(CorpusMap {
                name: format!("{}->{}", g.source().name(), g.target().name()),
                f: g,
                expected: Expected {
                    pi0_surjective: !spare_target,
                    pi0_injective: !double_source,
                    pi1_surjective: *pi1_surjective,
                    pi1_injective: *pi1_injective,
                },
            });
        }
    }
    let r2 = Arc::new(shapes::rose("R2", 2));
    out.push(CorpusMap {
        name: "R2->R2".into(),
        f: GraphMorphism::identity(r2).based_at(VertexId::new(0)).expect("vertex 0"),
        expected: Expected {
            pi0_surjective: true,
            pi0_injective: true,
            pi1_surjective: true,
            pi1_injective: true,
        },
    });
    out
}

/// Looks a corpus map up by name.
pub fn corpus_map(name: &str) -> Option<CorpusMap> {
    corpus_maps().into_iter().find(|m| m.name == name)
}

/// Puts summands over `y` together: no summand gives the empty cover, one
/// is re-tagged, more go through the extrinsic union.
pub fn assemble_cover(
    y: &Arc<Graph>,
    summands: &[CoveringMap],
    category: Category,
    designated: Option<usize>,
) -> Result<CoveringMap> {
    match summands {
        [] => validate_cover(CoveringMap::empty(y.clone()).projection().clone(), category, None),
        [p] => {
            let e0 = if category.is_based() {
                Some(p.basepoint().ok_or_else(|| Error::MissingBasepoint("summand is unbased".into()))?)
            } else {
                None
            };
            p.with_basepoint(e0, category)
        }
        _ => Ok(extrinsic_union(y, summands, category, designated)?.cover),
    }
}

/// Presentations of every component of `y`, the one containing `y0` based
/// there.
pub fn component_presentations(y: &Arc<Graph>, y0: Option<VertexId>) -> Result<Vec<Presentation>> {
    let parts = components(y);
    (0..parts.count())
        .map(|j| match y0 {
            Some(b) if parts.component_of(b) == j => pi1(y, b),
            _ => pi1_default(y, j),
        })
        .collect()
}

/// Covers of `y` with at most `max_sheets` sheets over each component, one
/// per action of each component's group up to relabeling (and per choice
/// of basepoint sheet in based categories). Disconnected covers arise from
/// intransitive actions. Only objects of `category` are kept.
pub fn cover_corpus(
    y: &Arc<Graph>,
    y0: Option<VertexId>,
    category: Category,
    max_sheets: usize,
) -> Result<Vec<CoveringMap>> {
    let parts = components(y);
    let based_component = if category.is_based() {
        let b = y0.ok_or_else(|| Error::MissingBasepoint(format!("{category} corpus needs a base vertex")))?;
        Some(parts.component_of(b))
    } else {
        None
    };
    let presentations = component_presentations(y, y0)?;
    let options: Vec<Vec<Option<PermRep>>> = presentations
        .iter()
        .enumerate()
        .map(|(j, pres)| {
            let based = based_component == Some(j);
            let mut opts = Vec::new();
            if !category.is_surjective() && !based {
                opts.push(None);
            }
            for k in 1..=max_sheets {
                let reps = all_perm_reps(pres.rank(), k);
                if based {
                    let set: BTreeSet<_> = reps.iter().flat_map(|r| (0..k).map(|s| r.based_at(s))).collect();
                    opts.extend(set.into_iter().map(Some));
                } else {
                    opts.extend(reps.into_iter().map(Some));
                }
            }
            opts
        })
        .collect();
    let mut out = Vec::new();
    if options.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    let mut choice = vec![0usize; options.len()];
    loop {
        let mut summands = Vec::new();
        let mut designated = None;
        for (j, &i) in choice.iter().enumerate() {
            if let Some(rep) = &options[j][i] {
                let based = based_component == Some(j);
                if based {
                    designated = Some(summands.len());
                }
                let cat = if based { Category::BCov } else { Category::Cov };
                summands.push(cover_from_perm_rep(&presentations[j], rep, cat)?);
            }
        }
        out.push(assemble_cover(y, &summands, category, designated)?);
        let mut k = options.len();
        loop {
            if k == 0 {
                return Ok(out);
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

/// Connected covers of the presentation's component with at most
/// `max_sheets` sheets, one per conjugacy class of subgroups, as unbased
/// covers empty over the other components.
pub fn connected_covers(pres: &Presentation, max_sheets: usize) -> Result<Vec<(PermRep, CoveringMap)>> {
    let mut out = Vec::new();
    for k in 1..=max_sheets {
        for rep in transitive_perm_reps(pres.rank(), k) {
            let p = cover_from_perm_rep(pres, &rep, Category::Cov)?;
            out.push((rep, p));
        }
    }
    Ok(out)
}
