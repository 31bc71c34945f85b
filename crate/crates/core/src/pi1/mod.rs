//! Fundamental groups of graphs, all free.
//!
//! A presentation comes from a breadth-first spanning tree of one component:
//! the generators are the non-tree edges, each oriented along its
//! lower-indexed dart. The loop of generator `g_k` runs through the tree to
//! the origin of its dart, across the dart, and back through the tree.

mod perm;
mod stallings;
mod subgroup;
mod word;

use std::sync::Arc;

pub use perm::{
    all_perm_reps, based_transitive_reps, cover_from_perm_rep, monodromy, transitive_perm_reps,
    PermRep,
};
pub use stallings::{fold, membership, Membership, StallingsGraph};
pub use subgroup::{
    closed_lift_test, cover_subgroup, hom_is_injective, hom_is_surjective, schreier_graph,
    verify_key_lemma, KeyLemmaReport, KeyLemmaRow,
};
pub use word::{all_words, letter, letter_generator, random_word, Letter, Word};

use crate::error::{Error, Result};
use crate::graph::{spanning_forest, DartId, Graph, GraphMorphism, SpanningForest, VertexId};

/// `π₁(G, x)` for the component of `x`.
#[derive(Clone, Debug)]
pub struct Presentation {
    graph: Arc<Graph>,
    component: usize,
    base: VertexId,
    forest: SpanningForest,
    generators: Vec<DartId>,
    letters: Vec<Option<Letter>>,
}

pub fn pi1(g: &Arc<Graph>, x: VertexId) -> Result<Presentation> {
    if x.index() >= g.vertex_count() {
        return Err(Error::UnknownVertex(x.to_string()));
    }
    let forest = spanning_forest(g, &[x])?;
    let component = forest.partition().component_of(x);
    let generators = forest.non_tree_edges(g, component);
    let mut letters = vec![None; g.dart_count()];
    for (k, &d) in generators.iter().enumerate() {
        letters[d.index()] = Some(letter(k, true));
        letters[g.reverse(d).index()] = Some(letter(k, false));
    }
    Ok(Presentation {
        graph: g.clone(),
        component,
        base: x,
        forest,
        generators,
        letters,
    })
}

/// The presentation of a component at its explicit base, or at its
/// representative vertex when none is declared.
pub fn pi1_default(g: &Arc<Graph>, component: usize) -> Result<Presentation> {
    let parts = crate::graph::components(g);
    if component >= parts.count() {
        return Err(Error::UnknownComponent(component));
    }
    let x = g
        .bases()
        .iter()
        .copied()
        .find(|&b| parts.component_of(b) == component)
        .unwrap_or_else(|| parts.representative(component));
    pi1(g, x)
}

impl Presentation {
    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn component(&self) -> usize {
        self.component
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn forest(&self) -> &SpanningForest {
        &self.forest
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// The positive dart of each generator.
    pub fn generators(&self) -> &[DartId] {
        &self.generators
    }

    /// The generator letter carried by a dart; `None` on tree darts and
    /// darts of other components.
    pub fn letter(&self, d: DartId) -> Option<Letter> {
        self.letters[d.index()]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.forest.partition().component_of(v) == self.component
    }

    pub fn generator_loop(&self, k: usize) -> Vec<DartId> {
        let d = self.generators[k];
        let g = &self.graph;
        let mut path = self.forest.path_from_root(g, g.origin(d));
        path.push(d);
        path.extend(self.forest.path_to_root(g, g.terminus(d)));
        path
    }

    /// A closed path at the base spelling `w`.
    pub fn word_to_path(&self, w: &Word) -> Result<Vec<DartId>> {
        w.check_rank(self.rank())?;
        let mut path = Vec::new();
        for &l in w.letters() {
            let k = letter_generator(l);
            let d = if l > 0 { self.generators[k] } else { self.graph.reverse(self.generators[k]) };
            let g = &self.graph;
            path.extend(self.forest.path_from_root(g, g.origin(d)));
            path.push(d);
            path.extend(self.forest.path_to_root(g, g.terminus(d)));
        }
        Ok(path)
    }

    /// The reduced word of a closed path at the base.
    pub fn loop_word(&self, path: &[DartId]) -> Result<Word> {
        let g = &self.graph;
        let mut at = self.base;
        let mut w = Word::empty();
        for &d in path {
            if d.index() >= g.dart_count() {
                return Err(Error::NotClosed(format!("unknown dart {d}")));
            }
            if g.origin(d) != at {
                return Err(Error::NotClosed(format!(
                    "{} does not start at {}",
                    g.dart_name(d),
                    g.vertex_name(at)
                )));
            }
            if let Some(l) = self.letters[d.index()] {
                w.push(l);
            }
            at = g.terminus(d);
        }
        if at != self.base {
            return Err(Error::NotClosed(format!(
                "path ends at {}, not {}",
                g.vertex_name(at),
                g.vertex_name(self.base)
            )));
        }
        Ok(w)
    }

    pub fn generator_name(&self, k: usize) -> String {
        format!("g{k}")
    }
}

/// Free function form of [`Presentation::loop_word`].
pub fn loop_word(presentation: &Presentation, path: &[DartId]) -> Result<Word> {
    presentation.loop_word(path)
}

/// `f♯: π₁(X, x) → π₁(Y, f(x))` on generators.
#[derive(Clone, Debug)]
pub struct InducedHom {
    source: Presentation,
    target: Presentation,
    images: Vec<Word>,
}

pub fn induced_hom(f: &GraphMorphism, x: VertexId) -> Result<InducedHom> {
    let source = pi1(f.source(), x)?;
    let target = pi1(f.target(), f.vertex(x))?;
    induced_hom_between(f, source, target)
}

/// `f♯` relative to given presentations; the target must be based at the
/// image of the source base.
pub fn induced_hom_between(f: &GraphMorphism, source: Presentation, target: Presentation) -> Result<InducedHom> {
    if f.vertex(source.base) != target.base {
        return Err(Error::MismatchedBase(format!(
            "{} maps to {}, presentation is based at {}",
            source.graph.vertex_name(source.base),
            target.graph.vertex_name(f.vertex(source.base)),
            target.graph.vertex_name(target.base)
        )));
    }
    let images = (0..source.rank())
        .map(|k| {
            let path: Vec<_> = source.generator_loop(k).into_iter().map(|d| f.dart(d)).collect();
            target.loop_word(&path)
        })
        .collect::<Result<_>>()?;
    Ok(InducedHom {
        source,
        target,
        images,
    })
}

impl InducedHom {
    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        w.check_rank(self.source.rank())?;
        Ok(w.substitute(&self.images))
    }
}
