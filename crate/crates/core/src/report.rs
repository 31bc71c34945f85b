//! Plain-text rendering of results. Output depends only on its inputs.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::cover::{CoverMorphism, CoveringMap};
use crate::error::Result;
use crate::functor::{
    CategoryReport, EsWitness, FaithfulWitness, FullConstruction, FullWitness, HomSet, NonRealizable, TriadReport,
    WitnessSource,
};
use crate::graph::{components, Graph, GraphMorphism};
use crate::pi1::{cover_subgroup, induced_hom, membership, pi1, Word};
use crate::pullback::PullbackCover;

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn words(ws: &[Word]) -> String {
    if ws.is_empty() {
        return "(none)".into();
    }
    ws.iter().map(|w| format!("[{w}]")).collect::<Vec<_>>().join(" ")
}

/// `π₁` of every component of `g`, based at the declared base of the
/// component or at its first vertex.
pub fn presentation(g: &Arc<Graph>) -> Result<String> {
    let parts = components(g);
    let mut out = String::new();
    writeln!(
        out,
        "graph {}: {} vertices, {} edges, {} component(s)",
        g.name(),
        g.vertex_count(),
        g.edge_count(),
        parts.count()
    )
    .unwrap();
    for c in 0..parts.count() {
        let base = g
            .bases()
            .iter()
            .copied()
            .find(|&b| parts.component_of(b) == c)
            .unwrap_or(parts.representative(c));
        let pres = pi1(g, base)?;
        writeln!(out, "  component {c} at {}: rank {}", g.vertex_name(base), pres.rank()).unwrap();
        for (k, &d) in pres.generators().iter().enumerate() {
            writeln!(out, "    {} = {}", pres.generator_name(k), g.dart_name(d)).unwrap();
        }
    }
    Ok(out)
}

/// `f♯` on each component of the source.
pub fn induced(name: &str, f: &GraphMorphism) -> Result<String> {
    let x = f.source();
    let parts = components(x);
    let mut out = String::new();
    writeln!(out, "morphism {name} : {} -> {}", x.name(), f.target().name()).unwrap();
    for c in 0..parts.count() {
        let base = x
            .bases()
            .iter()
            .copied()
            .find(|&b| parts.component_of(b) == c)
            .unwrap_or(parts.representative(c));
        let h = induced_hom(f, base)?;
        writeln!(
            out,
            "  component {c} at {} -> {}: rank {} -> {}",
            x.vertex_name(base),
            f.target().vertex_name(f.vertex(base)),
            h.source().rank(),
            h.target().rank()
        )
        .unwrap();
        for (k, w) in h.images().iter().enumerate() {
            writeln!(out, "    {} -> {w}", h.source().generator_name(k)).unwrap();
        }
    }
    Ok(out)
}

/// `p♯π₁(E, e)` for one vertex `e` per component of `E` (the basepoint in
/// its component), with membership of `word` when given.
pub fn cover_group(name: &str, p: &CoveringMap, word: Option<&Word>) -> Result<String> {
    let e = p.total();
    let parts = components(e);
    let mut out = String::new();
    writeln!(
        out,
        "cover {name} : {} -> {} ({}), {} component(s)",
        e.name(),
        p.base().name(),
        p.category(),
        parts.count()
    )
    .unwrap();
    for c in 0..parts.count() {
        let v = p
            .basepoint()
            .filter(|&b| parts.component_of(b) == c)
            .unwrap_or(parts.representative(c));
        let s = cover_subgroup(p, v)?;
        let index = s.index().map_or("infinite".to_string(), |i| i.to_string());
        writeln!(
            out,
            "  component {c} at {} over {}: rank {}, index {index}",
            e.vertex_name(v),
            p.base().vertex_name(p.vertex(v)),
            s.subgroup_rank()
        )
        .unwrap();
        writeln!(out, "    basis {}", words(&s.basis())).unwrap();
        if let Some(w) = word {
            let m = membership(w, &s);
            writeln!(out, "    [{w}] member: {}", yn(m.member)).unwrap();
            if let Some(pre) = m.preimage {
                writeln!(out, "    as basis word: {pre}").unwrap();
            }
        }
    }
    Ok(out)
}

fn morphism_line(t: &CoverMorphism) -> String {
    let m = t.map();
    let (x, y) = (m.source(), m.target());
    x.vertices()
        .map(|v| format!("{}>{}", x.vertex_name(v), y.vertex_name(m.vertex(v))))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn hom_set(from: &str, to: &str, hom: &HomSet) -> String {
    let mut out = String::new();
    writeln!(out, "hom {from} -> {to} in {}: {} morphisms", hom.category(), hom.len()).unwrap();
    for (i, t) in hom.iter().enumerate() {
        let kind = if t.is_isomorphism() { " (iso)" } else { "" };
        writeln!(out, "  {i}: {}{kind}", morphism_line(t)).unwrap();
    }
    out
}

pub fn pullback(pb: &PullbackCover) -> String {
    let total = pb.total();
    let parts = components(total);
    let mut out = String::new();
    writeln!(
        out,
        "pullback {}: {} vertices, {} edges, {} component(s)",
        total.name(),
        total.vertex_count(),
        total.edge_count(),
        parts.count()
    )
    .unwrap();
    if let Some(b) = pb.basepoint() {
        writeln!(out, "  basepoint {}", total.vertex_name(b)).unwrap();
    }
    let x = pb.f().source();
    for c in 0..parts.count() {
        let v = parts.representative(c);
        let image = components(x).component_of(pb.proj_base().vertex(v));
        let over = pb.proj_base().fiber(pb.proj_base().vertex(v)).iter().filter(|&&w| parts.component_of(w) == c).count();
        let e = pb.proj_top().vertex(v);
        let up = total
            .vertices()
            .filter(|&w| parts.component_of(w) == c && pb.proj_top().vertex(w) == e)
            .count();
        writeln!(
            out,
            "  component {c}: {} vertices, degree {over} over component {image} of {}, degree {up} onto {}",
            parts.members(c).len(),
            x.name(),
            pb.p().total().name()
        )
        .unwrap();
    }
    out
}

fn source_tag(s: WitnessSource) -> &'static str {
    match s {
        WitnessSource::Construction => "construction",
        WitnessSource::Search => "search",
    }
}

fn faithful_line(w: &FaithfulWitness) -> String {
    format!(
        "{}: maps {} -> {} [{}] and [{}] with one pullback",
        source_tag(w.source),
        w.p.total().name(),
        w.q.total().name(),
        morphism_line(&w.t1),
        morphism_line(&w.t2)
    )
}

fn full_line(w: &FullWitness) -> String {
    let how = match &w.construction {
        Some(FullConstruction::SheetSwap { swapped, partner }) => {
            format!("sheet swap over component {swapped} (same image as {partner})")
        }
        Some(FullConstruction::Collapse { component, sheets }) => {
            format!("collapse at component {component} through a {sheets}-sheeted cover")
        }
        Some(FullConstruction::Exchange { component, sheets }) => {
            format!("exchange at component {component} through a {sheets}-sheeted cover")
        }
        None => "found among bounded covers".into(),
    };
    format!(
        "{}: {how}; a map f*({}) -> f*({}) that is no f*(t)",
        source_tag(w.source),
        w.p.total().name(),
        w.q.total().name()
    )
}

fn es_line(f: &GraphMorphism, w: &EsWitness) -> String {
    let x = f.source();
    let why = match &w.reason {
        NonRealizable::DegreeMismatch { x1, x2, degrees } => format!(
            "fibers over {} and {} have sizes {} and {} but share an image component",
            x.vertex_name(*x1),
            x.vertex_name(*x2),
            degrees.0,
            degrees.1
        ),
        NonRealizable::ForcedActionFails { component, generator } => {
            format!("forced action fails on g{generator} of component {component}")
        }
        NonRealizable::Exhausted { candidates } => format!("none of {candidates} candidates pulls back to it"),
    };
    format!("component {} action {}: {why}", w.component, w.rep.code())
}

fn category_block(out: &mut String, f: &GraphMorphism, r: &CategoryReport) {
    writeln!(out, "[{}]", r.category).unwrap();
    let fp = &r.faithful;
    match fp.witness() {
        None => writeln!(
            out,
            "  faithful   yes  ({} objects, {} pairs, {} morphisms searched)",
            fp.objects, fp.pairs, fp.morphisms
        ),
        Some(w) => writeln!(out, "  faithful   no   {}", faithful_line(w)),
    }
    .unwrap();
    let up = &r.full;
    match up.witness() {
        None => writeln!(out, "  full       yes  ({} pairs, {} morphisms searched)", up.pairs, up.morphisms),
        Some(w) => writeln!(out, "  full       no   {}", full_line(w)),
    }
    .unwrap();
    let es = &r.essential;
    writeln!(
        out,
        "  essential  {}  ({} of {} test covers realized)",
        if es.witnesses.is_empty() { "yes" } else { "no " },
        es.realized,
        es.tested
    )
    .unwrap();
    for w in &es.witnesses {
        writeln!(out, "    {}", es_line(f, w)).unwrap();
    }
    for (label, c) in [("Q1", r.q1), ("Q2", r.q2), ("Q3", r.q3)] {
        writeln!(
            out,
            "  {label}  algebraic {:<3}  categorical {:<3}  {}",
            yn(c.algebraic),
            yn(c.categorical),
            if c.consistent() { "agree" } else { "DISAGREE" }
        )
        .unwrap();
    }
}

pub fn triad(name: &str, f: &GraphMorphism, r: &TriadReport) -> String {
    let x = f.source();
    let y = f.target();
    let mut out = String::new();
    writeln!(out, "triad {name} : {} -> {}", x.name(), y.name()).unwrap();
    if let Some(b) = r.base {
        writeln!(out, "base {} -> {}", x.vertex_name(b), y.vertex_name(f.vertex(b))).unwrap();
    }
    let b = &r.bounds;
    writeln!(
        out,
        "bounds  max-sheets {}  word-length {}  samples {}  seed {}",
        b.max_sheets, b.word_length, b.samples, b.seed
    )
    .unwrap();
    let pi0 = &r.algebraic.pi0;
    writeln!(out, "pi0  surjective {}  injective {}", yn(pi0.surjective), yn(pi0.injective)).unwrap();
    if !pi0.missed().is_empty() {
        let missed: Vec<String> = pi0.missed().iter().map(usize::to_string).collect();
        writeln!(out, "  missed components of {}: {}", y.name(), missed.join(" ")).unwrap();
    }
    for (a, b) in pi0.collisions() {
        writeln!(out, "  components {a} and {b} of {} share an image", x.name()).unwrap();
    }
    for c in &r.algebraic.components {
        let index = c.image_index.map_or("infinite".to_string(), |i| i.to_string());
        writeln!(
            out,
            "pi1  component {} at {}: rank {} -> {}  surjective {}  injective {}  index {index}",
            c.component,
            x.vertex_name(c.base),
            c.source_rank,
            c.target_rank,
            yn(c.surjective),
            yn(c.injective)
        )
        .unwrap();
        for (k, w) in c.images.iter().enumerate() {
            writeln!(out, "  g{k} -> {w}").unwrap();
        }
    }
    let l = &r.lifting;
    writeln!(
        out,
        "lifting  {} covers  {} base sheets  {} words  {} closed lifts  {} discrepancies",
        l.covers, l.checks, l.words, l.members, l.discrepancies
    )
    .unwrap();
    let hyp = r.connectivity.iter().filter(|c| c.hypotheses_hold()).count();
    let bad = r.connectivity.iter().filter(|c| !c.consistent()).count();
    writeln!(
        out,
        "connectivity  {} covers  {hyp} meeting the hypotheses  {bad} violations",
        r.connectivity.len()
    )
    .unwrap();
    for cat in &r.categories {
        category_block(&mut out, f, cat);
    }
    writeln!(out, "consistent {}", yn(r.consistent())).unwrap();
    out
}
