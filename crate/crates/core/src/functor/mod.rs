//! The pullback functor `f*` between categories of coverings, and the
//! checks that compare its categorical behaviour with what `f` does on
//! `π₀` and `π₁`.

mod corpus;
mod hom;
mod probes;
mod triad;

pub use corpus::{
    assemble_cover, component_presentations, connected_covers, corpus_map, corpus_maps, cover_corpus, CorpusMap,
    Expected,
};
pub use hom::{brute_force_hom, enumerate_hom, find_isomorphism, lifting_criterion, HomSet};
pub use probes::{
    probe_essentially_surjective, probe_faithful, probe_full, realize, realize_exhaustive, test_object, Bounds,
    EsProbe, EsWitness, FaithfulProbe, FaithfulWitness, FullConstruction, FullProbe, FullWitness, NonRealizable,
    Realization, WitnessSource,
};
pub use triad::{
    algebraic_side, pb_connectivity_check, triad, AlgebraicSide, CategoryReport, ComponentPi1, Condition,
    ConnectivityReport, LiftingSummary, TriadReport,
};
