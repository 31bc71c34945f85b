use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::corpus::{component_presentations, connected_covers};
use super::probes::{
    base_pair, probe_essentially_surjective, probe_faithful, probe_full, Bounds, EsProbe, FaithfulProbe, FullProbe,
};
use crate::cover::{Category, CoveringMap};
use crate::error::Result;
use crate::graph::{components, induced_pi0_map, GraphMorphism, Pi0Map, VertexId};
use crate::pi1::{fold, induced_hom_between, pi1, random_word, verify_key_lemma, Word};
use crate::pullback::pullback;

/// `f♯` at the base vertex of one component of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPi1 {
    pub component: usize,
    pub base: VertexId,
    pub source_rank: usize,
    pub target_rank: usize,
    pub images: Vec<Word>,
    pub surjective: bool,
    pub injective: bool,
    /// Index of the image, when finite.
    pub image_index: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicSide {
    pub pi0: Pi0Map,
    pub components: Vec<ComponentPi1>,
}

impl AlgebraicSide {
    pub fn pi1_surjective(&self) -> bool {
        self.components.iter().all(|c| c.surjective)
    }

    pub fn pi1_injective(&self) -> bool {
        self.components.iter().all(|c| c.injective)
    }

    /// π₀ surjective.
    pub fn q1(&self) -> bool {
        self.pi0.surjective
    }

    /// π₀ bijective and π₁ surjective at every vertex.
    pub fn q2(&self) -> bool {
        self.pi0.is_bijective() && self.pi1_surjective()
    }

    /// π₀ bijective and π₁ bijective at every vertex.
    pub fn q3(&self) -> bool {
        self.q2() && self.pi1_injective()
    }
}

/// `π₀(f)` and `f♯` on each component, based at `x0` in its component and
/// at the default base elsewhere. A change of base vertex within a
/// component conjugates `f♯`, so one vertex per component decides it.
pub fn algebraic_side(f: &GraphMorphism, x0: Option<VertexId>) -> Result<AlgebraicSide> {
    let pi0 = induced_pi0_map(f);
    let mut out = Vec::new();
    for pres in component_presentations(f.source(), x0)? {
        let target = pi1(f.target(), f.vertex(pres.base()))?;
        let h = induced_hom_between(f, pres.clone(), target.clone())?;
        let folded = fold(h.images(), target.rank());
        let core = folded.core();
        out.push(ComponentPi1 {
            component: pres.component(),
            base: pres.base(),
            source_rank: pres.rank(),
            target_rank: target.rank(),
            images: h.images().to_vec(),
            surjective: folded.is_whole_group(),
            injective: core.subgroup_rank() == pres.rank(),
            image_index: core.index(),
        });
    }
    Ok(AlgebraicSide { pi0, components: out })
}

/// One condition read both ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Condition {
    pub algebraic: bool,
    /// No counterexample within the bounds.
    pub categorical: bool,
}

impl Condition {
    pub fn consistent(&self) -> bool {
        self.algebraic == self.categorical
    }
}

#[derive(Clone, Debug)]
pub struct CategoryReport {
    pub category: Category,
    pub faithful: FaithfulProbe,
    pub full: FullProbe,
    pub essential: EsProbe,
    /// Faithful ⇔ π₀ surjective.
    pub q1: Condition,
    /// Fully faithful ⇔ π₀ bijective and `f♯` onto.
    pub q2: Condition,
    /// Equivalence ⇔ π₀ bijective and `f♯` bijective.
    pub q3: Condition,
}

impl CategoryReport {
    pub fn consistent(&self) -> bool {
        self.q1.consistent() && self.q2.consistent() && self.q3.consistent() && self.constructions_found()
    }

    /// Whenever a condition fails, the witness built from that failure is
    /// present.
    pub fn constructions_found(&self) -> bool {
        (self.q1.algebraic || self.faithful.construction.is_some())
            && (!self.q1.algebraic || self.q2.algebraic || self.full.construction.is_some())
    }
}

/// Subgroup comparisons `f*(p)♯π₁ = f♯⁻¹(p♯π₁)` on sampled words.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LiftingSummary {
    pub covers: usize,
    pub checks: usize,
    pub words: usize,
    pub members: usize,
    pub discrepancies: usize,
}

#[derive(Clone, Debug)]
pub struct TriadReport {
    pub map: String,
    pub base: Option<VertexId>,
    pub algebraic: AlgebraicSide,
    pub bounds: Bounds,
    pub lifting: LiftingSummary,
    pub connectivity: Vec<ConnectivityReport>,
    pub categories: Vec<CategoryReport>,
}

impl TriadReport {
    pub fn consistent(&self) -> bool {
        self.lifting.discrepancies == 0
            && self.connectivity.iter().all(ConnectivityReport::consistent)
            && self.categories.iter().all(CategoryReport::consistent)
    }
}

/// Runs the three conditions in each category, plus the lifting and
/// connectivity checks over connected covers of `Y` within the bounds.
pub fn triad(f: &GraphMorphism, categories: &[Category], bounds: &Bounds) -> Result<TriadReport> {
    for &category in categories {
        base_pair(f, category)?;
    }
    let x0 = f.base_or_default();
    let algebraic = algebraic_side(f, x0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let mut lifting = LiftingSummary::default();
    let mut connectivity = Vec::new();
    for c in &algebraic.components {
        let target = pi1(f.target(), f.vertex(c.base))?;
        for (_, p) in connected_covers(&target, bounds.max_sheets)? {
            lifting.covers += 1;
            connectivity.push(pb_connectivity_check(f, &p)?);
            let words: Vec<Word> = (0..bounds.samples)
                .map(|_| random_word(&mut rng, c.source_rank, bounds.word_length))
                .collect();
            for &e1 in p.fiber(f.vertex(c.base)) {
                let report = verify_key_lemma(f, &p, c.base, e1, &words)?;
                lifting.checks += 1;
                lifting.words += report.rows.len();
                lifting.members += report.members();
                lifting.discrepancies += report.discrepancies().len();
            }
        }
    }
    let mut reports = Vec::new();
    for &category in categories {
        let faithful = probe_faithful(f, category, bounds)?;
        let full = probe_full(f, category, bounds)?;
        let essential = probe_essentially_surjective(f, category, bounds)?;
        let no_faithful = faithful.witness().is_none();
        let no_full = full.witness().is_none();
        let no_es = essential.witnesses.is_empty();
        reports.push(CategoryReport {
            category,
            q1: Condition {
                algebraic: algebraic.q1(),
                categorical: no_faithful,
            },
            q2: Condition {
                algebraic: algebraic.q2(),
                categorical: no_faithful && no_full,
            },
            q3: Condition {
                algebraic: algebraic.q3(),
                categorical: no_faithful && no_full && no_es,
            },
            faithful,
            full,
            essential,
        });
    }
    Ok(TriadReport {
        map: format!("{}->{}", f.source().name(), f.target().name()),
        base: x0,
        algebraic,
        bounds: *bounds,
        lifting,
        connectivity,
        categories: reports,
    })
}

/// Connectivity of `f*(E)` against its two sufficient conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub pi0_injective: bool,
    pub pi1_surjective: bool,
    pub cover_connected: bool,
    /// `p(E)` lies in one component of `Y`.
    pub image_connected: bool,
    pub components: usize,
    /// A vertex `x₁` with nonempty fiber, when there is one.
    pub x1: Option<VertexId>,
    /// Every component of `f*(E)` meets `{x₁} × p⁻¹(f(x₁))`.
    pub every_component_meets_fiber: bool,
}

impl ConnectivityReport {
    /// π₀ injective, `f♯` onto everywhere and `E` connected.
    pub fn hypotheses_hold(&self) -> bool {
        self.pi0_injective && self.pi1_surjective && self.cover_connected
    }

    pub fn consistent(&self) -> bool {
        let connected = !self.hypotheses_hold() || self.components <= 1;
        let meets = !(self.pi0_injective && self.image_connected) || self.every_component_meets_fiber;
        connected && meets
    }
}

pub fn pb_connectivity_check(f: &GraphMorphism, p: &CoveringMap) -> Result<ConnectivityReport> {
    let algebraic = algebraic_side(f, f.base_or_default())?;
    let y_parts = components(f.target());
    let e_parts = components(p.total());
    let hit: std::collections::BTreeSet<usize> =
        p.total().vertices().map(|e| y_parts.component_of(p.vertex(e))).collect();
    let pb = pullback(f, p)?;
    let z_parts = components(pb.total());
    let x1 = f.source().vertices().find(|&x| !p.fiber(f.vertex(x)).is_empty());
    let every_component_meets_fiber = match x1 {
        None => true,
        Some(x1) => {
            let mut met = vec![false; z_parts.count()];
            for &e in p.fiber(f.vertex(x1)) {
                let z = pb.vertex(x1, e).expect("fiber point");
                met[z_parts.component_of(z)] = true;
            }
            met.into_iter().all(|m| m)
        }
    };
    Ok(ConnectivityReport {
        pi0_injective: algebraic.pi0.injective,
        pi1_surjective: algebraic.pi1_surjective(),
        cover_connected: e_parts.count() == 1,
        image_connected: hit.len() <= 1,
        components: z_parts.count(),
        x1,
        every_component_meets_fiber,
    })
}
