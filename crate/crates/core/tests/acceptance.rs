//! The eight acceptance criteria, each with its own oracle and time limit.
//! Prints one PASS/FAIL line per criterion and fails if any criterion does.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pullcov::cover::{is_trivial, trivial_cover, validate_cover, Category, CoverMorphism, CoveringMap};
use pullcov::functor::{
    brute_force_hom, connected_covers, corpus_maps, cover_corpus, enumerate_hom, triad, Bounds, CorpusMap,
};
use pullcov::graph::{components, Graph, GraphMorphism, VertexId};
use pullcov::pi1::{
    all_words, based_transitive_reps, fold, membership, pi1, random_word, verify_key_lemma, PermRep, Word,
};
use pullcov::pullback::{
    pullback, pullback_extrinsic_union, pullback_intrinsic_union, pullback_morphism, pullback_partitioned_union,
};
use pullcov::shapes;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|err| err.to_string())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The connected `n`-sheeted cover `C_{3n} → C_3`.
fn cyclic_cover(n: usize) -> CoveringMap {
    validate_cover(shapes::cycle_wrap(3 * n, 3), Category::Cov, None).expect("wrap is a cover")
}

// 1 ------------------------------------------------------------------------

fn gcd_components() -> Outcome {
    let mut checked = 0;
    for m in 1..=6 {
        let f = shapes::cycle_wrap(3 * m, 3);
        for n in 1..=6 {
            let p = cyclic_cover(n);
            let pb = e(pullback(&f, &p))?;
            let g = gcd(m, n);
            let total = pb.total();
            let parts = components(total);
            ensure(parts.count() == g, || format!("m={m} n={n}: {} components, want {g}", parts.count()))?;
            for c in 0..parts.count() {
                let members = parts.members(c);
                for x in f.source().vertices() {
                    let over = members.iter().filter(|&&v| pb.proj_base().vertex(v) == x).count();
                    ensure(over == n / g, || format!("m={m} n={n}: component {c} has {over} points over x"))?;
                }
                for z in p.total().vertices() {
                    let over = members.iter().filter(|&&v| pb.proj_top().vertex(v) == z).count();
                    ensure(over == m / g, || format!("m={m} n={n}: component {c} has {over} points over e"))?;
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs (m, n)"))
}

// 2 ------------------------------------------------------------------------

fn triviality() -> Outcome {
    let mut trivial = 0;
    for m in 1..=6 {
        let f = shapes::cycle_wrap(3 * m, 3);
        for n in 1..=6 {
            let pb = e(pullback(&f, &cyclic_cover(n)))?;
            let t = is_trivial(pb.proj_base());
            if m % n != 0 {
                ensure(t.is_none(), || format!("m={m} n={n}: trivialized although n does not divide m"))?;
                continue;
            }
            let t = t.ok_or_else(|| format!("m={m} n={n}: is_trivial failed"))?;
            let model = trivial_cover(f.source(), n);
            ensure(t.is_isomorphism(), || format!("m={m} n={n}: not bijective"))?;
            ensure(t.target().total().vertex_count() == model.total().vertex_count(), || {
                format!("m={m} n={n}: target is not X × {n}")
            })?;
            let inv = t.inverse().ok_or_else(|| format!("m={m} n={n}: no inverse"))?;
            let there_and_back = e(t.then(&inv))?;
            ensure(there_and_back == CoverMorphism::identity(pb.proj_base(), Category::Cov), || {
                format!("m={m} n={n}: inverse does not compose to the identity")
            })?;
            trivial += 1;
        }
    }
    ensure(trivial == 14, || format!("{trivial} divisible pairs, want 14"))?;
    Ok(format!("{trivial} pairs with n | m trivialized"))
}

// 3 ------------------------------------------------------------------------

/// Walks `w` from `(x0, e1)` in `X ×_Y E` one dart at a time, without
/// building the pullback: closed iff the `E`-coordinate returns to `e1`.
fn pair_walk(f: &GraphMorphism, p: &CoveringMap, path: &[pullcov::graph::DartId], e1: VertexId) -> bool {
    let mut at = e1;
    for &d in path {
        at = p.total().terminus(p.lift_dart(at, f.dart(d)));
    }
    at == e1
}

fn key_lemma() -> Outcome {
    let mut instances = 0;
    let mut rows = 0;
    let mut members = 0;
    for (i, m) in corpus_maps().iter().enumerate() {
        let f = &m.f;
        let x0 = f.base_or_default().expect("nonempty source");
        let source = e(pi1(f.source(), x0))?;
        let target = e(pi1(f.target(), f.vertex(x0)))?;
        for (j, (_, p)) in e(connected_covers(&target, 3))?.into_iter().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64((i * 100 + j) as u64);
            let words: Vec<Word> = (0..100).map(|_| random_word(&mut rng, source.rank(), 12)).collect();
            for &e1 in p.fiber(f.vertex(x0)) {
                let report = e(verify_key_lemma(f, &p, x0, e1, &words))?;
                for row in &report.rows {
                    let path = e(source.word_to_path(&row.word))?;
                    let truth = pair_walk(f, &p, &path, e1);
                    ensure(
                        row.pulled_lift == truth
                            && row.image_lift == truth
                            && row.pulled_member == truth
                            && row.image_member == truth,
                        || format!("{}: word [{}] disagrees with the pair walk", m.name, row.word),
                    )?;
                    rows += 1;
                    members += usize::from(truth);
                }
                instances += 1;
            }
        }
    }
    ensure(instances >= 10, || format!("only {instances} instances"))?;
    Ok(format!("{instances} (f, p, e1) instances, {rows} words, {members} in the subgroup"))
}

// 4 ------------------------------------------------------------------------

/// Largest number of sheets of a single component of `p` over its image.
fn component_degree(p: &CoveringMap) -> usize {
    let parts = components(p.total());
    (0..parts.count())
        .map(|c| {
            let y = p.vertex(parts.representative(c));
            p.fiber(y).iter().filter(|&&v| parts.component_of(v) == c).count()
        })
        .max()
        .unwrap_or(0)
}

/// `rep` is the action on `F_2 / ⟨a², b, aba⁻¹⟩`.
fn is_a_squared_b_aba(rep: &PermRep) -> bool {
    let gens: Vec<Word> = ["g0 g0", "g1", "g0 g1 g0^-1"].iter().map(|s| s.parse().unwrap()).collect();
    rep.sheets() == 2 && rep.is_transitive() && gens.iter().all(|g| rep.act(0, g) == 0)
}

fn triad_corpus() -> Outcome {
    let maps = corpus_maps();
    let combos: BTreeSet<_> = maps
        .iter()
        .map(|m| (m.expected.pi0_surjective, m.expected.pi0_injective, m.expected.pi1_surjective, m.expected.pi1_injective))
        .collect();
    ensure(maps.len() >= 12, || "corpus too small".into())?;
    let pi0_pi1: BTreeSet<_> = combos.iter().map(|c| (c.0, c.1, c.2)).collect();
    ensure(pi0_pi1.len() >= 8, || "corpus misses a combination".into())?;
    let bounds = Bounds {
        max_sheets: 3,
        ..Bounds::default()
    };
    let mut witnesses = 0;
    let mut reports = 0;
    for m in &maps {
        let r = e(triad(&m.f, &Category::ALL, &bounds))?;
        let a = &r.algebraic;
        ensure(
            a.pi0.surjective == m.expected.pi0_surjective
                && a.pi0.injective == m.expected.pi0_injective
                && a.pi1_surjective() == m.expected.pi1_surjective
                && a.pi1_injective() == m.expected.pi1_injective,
            || format!("{}: algebraic side differs from the construction", m.name),
        )?;
        ensure(r.consistent(), || format!("{}: inconsistent", m.name))?;
        for cat in &r.categories {
            let c = cat.category;
            for w in [&cat.faithful.construction, &cat.faithful.search].into_iter().flatten() {
                ensure(e(w.verify(&m.f, c))?, || format!("{} {c}: faithfulness witness fails", m.name))?;
                ensure(component_degree(&w.p).max(component_degree(&w.q)) <= 2, || {
                    format!("{} {c}: faithfulness witness above 2 sheets", m.name)
                })?;
                witnesses += 1;
            }
            for w in [&cat.full.construction, &cat.full.search].into_iter().flatten() {
                ensure(e(w.verify(&m.f, c))?, || format!("{} {c}: fullness witness fails", m.name))?;
                ensure(component_degree(&w.p).max(component_degree(&w.q)) <= 2, || {
                    format!("{} {c}: fullness witness above 2 sheets", m.name)
                })?;
                witnesses += 1;
            }
            for w in &cat.essential.witnesses {
                ensure(e(w.verify(&m.f, c))?, || format!("{} {c}: non-realizable object is realizable", m.name))?;
                ensure(w.rep.sheets() <= bounds.max_sheets, || format!("{} {c}: oversized test cover", m.name))?;
                witnesses += 1;
            }
            // no counterexamples where the algebra says none exist
            ensure(!cat.q1.algebraic || cat.faithful.witness().is_none(), || format!("{} {c}: q1", m.name))?;
            ensure(!cat.q2.algebraic || cat.full.witness().is_none(), || format!("{} {c}: q2", m.name))?;
            ensure(!cat.q3.algebraic || cat.essential.witnesses.is_empty(), || format!("{} {c}: q3", m.name))?;
            // the proof constructions themselves
            match m.name.as_str() {
                "C3->C3+C3" => ensure(cat.faithful.construction.is_some(), || format!("{c}: no component swap"))?,
                "C3+C3->C3" => ensure(
                    matches!(
                        cat.full.construction.as_ref().and_then(|w| w.construction.clone()),
                        Some(pullcov::functor::FullConstruction::SheetSwap { .. })
                    ),
                    || format!("{c}: no sheet swap"),
                )?,
                "R2->R1" => ensure(cat.essential.witnesses.iter().any(|w| is_a_squared_b_aba(&w.rep)), || {
                    format!("{c}: <a^2, b, aba^-1> not reported")
                })?,
                _ => {}
            }
            reports += 1;
        }
    }
    Ok(format!("{} maps, {reports} category reports, {witnesses} witnesses verified", maps.len()))
}

// 5 ------------------------------------------------------------------------

fn functor_laws() -> Outcome {
    struct Pool {
        map: CorpusMap,
        covers: Vec<CoveringMap>,
        homs: Vec<Vec<Vec<CoverMorphism>>>,
    }
    let mut pools = Vec::new();
    for m in corpus_maps() {
        let covers = e(cover_corpus(m.f.target(), None, Category::Cov, 2))?;
        let homs = covers
            .iter()
            .map(|p| covers.iter().map(|q| enumerate_hom(p, q, Category::Cov).map(|h| h.morphisms().to_vec())).collect())
            .collect::<Result<Vec<Vec<_>>, _>>();
        pools.push(Pool {
            map: m,
            covers,
            homs: e(homs)?,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut triples = 0;
    let mut attempts = 0;
    while triples < 200 {
        attempts += 1;
        ensure(attempts < 100_000, || "could not draw composable triples".into())?;
        let pool = pools.choose(&mut rng).unwrap();
        let n = pool.covers.len();
        let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let (Some(t1), Some(t2)) = (pool.homs[i][j].choose(&mut rng), pool.homs[j][k].choose(&mut rng)) else {
            continue;
        };
        let f = &pool.map.f;
        let a = e(pullback(f, &pool.covers[i]))?;
        let c = e(pullback(f, &pool.covers[k]))?;
        let s1 = e(pullback_morphism(f, t1))?;
        let s2 = e(pullback_morphism(f, t2))?;
        let s12 = e(pullback_morphism(f, &e(t1.then(t2))?))?;
        ensure(s12 == e(s1.then(&s2))?, || format!("{}: composition not preserved", pool.map.name))?;
        // pointwise: (x, e) ↦ (x, t2(t1(e)))
        for v in a.total().vertices() {
            let (x, z) = a.vertex_pair(v);
            let want = c.vertex(x, t2.map().vertex(t1.map().vertex(z)));
            ensure(Some(s12.map().vertex(v)) == want, || format!("{}: wrong pair image", pool.map.name))?;
        }
        let id = CoverMorphism::identity(&pool.covers[i], Category::Cov);
        ensure(
            e(pullback_morphism(f, &id))? == CoverMorphism::identity(a.proj_base(), Category::Cov),
            || format!("{}: identity not preserved", pool.map.name),
        )?;
        triples += 1;
    }
    Ok(format!("{triples} composable triples ({attempts} draws)"))
}

// 6 ------------------------------------------------------------------------

fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            go(i + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        go(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

fn names(g: &Graph) -> (BTreeSet<String>, BTreeSet<String>) {
    (
        g.vertices().map(|v| g.vertex_name(v).to_string()).collect(),
        g.darts().map(|d| g.dart_name(d).to_string()).collect(),
    )
}

fn disjoint_unions() -> Outcome {
    let (mut intrinsic, mut extrinsic, mut partitioned) = (0, 0, 0);
    for m in corpus_maps() {
        let f = &m.f;
        let covers = e(cover_corpus(f.target(), None, Category::Cov, 2))?;
        // intrinsic: partitions of the components of one cover
        for p in &covers {
            let count = components(p.total()).count();
            if !(2..=3).contains(&count) {
                continue;
            }
            for blocks in set_partitions(count) {
                let split = e(pullback_intrinsic_union(f, p, &blocks))?;
                // equality as sets of named pairs, independent of the check
                // inside the library
                let (wv, wd) = names(split.whole.total());
                let mut uv = BTreeSet::new();
                let mut ud = BTreeSet::new();
                for b in &split.blocks {
                    let (v, d) = names(b.total());
                    ensure(v.is_disjoint(&uv) && d.is_disjoint(&ud), || format!("{}: blocks overlap", m.name))?;
                    uv.extend(v);
                    ud.extend(d);
                }
                ensure(uv == wv && ud == wd, || format!("{}: blocks do not make up f*(E)", m.name))?;
                intrinsic += 1;
            }
        }
        // extrinsic and partitioned: families of two or three covers
        let families: Vec<Vec<CoveringMap>> = covers
            .iter()
            .enumerate()
            .flat_map(|(i, p)| covers.iter().skip(i).take(2).map(move |q| vec![p.clone(), q.clone()]))
            .chain(covers.windows(3).map(<[CoveringMap]>::to_vec))
            .take(6)
            .collect();
        for family in &families {
            let ext = e(pullback_extrinsic_union(f, family))?;
            ensure(ext.iso.is_isomorphism() && ext.iso.inverse().is_some(), || format!("{}: not an iso", m.name))?;
            let parts = family.iter().map(|p| pullback(f, p)).collect::<Result<Vec<_>, _>>();
            let parts = e(parts)?;
            for v in ext.source.cover.total().vertices() {
                let (alpha, local) = ext.source.locate_vertex(v);
                let (x, z) = parts[alpha].vertex_pair(local);
                let image = ext.iso.map().vertex(v);
                ensure(ext.target.vertex_pair(image) == (x, ext.union.vertex(alpha, z)), || {
                    format!("{}: ((x,e),a) not sent to (x,(e,a))", m.name)
                })?;
            }
            extrinsic += 1;
            for blocks in set_partitions(family.len()) {
                let chain = e(pullback_partitioned_union(f, family, &blocks))?;
                let composite = e(chain.composite())?;
                ensure(composite.is_isomorphism() && composite.inverse().is_some(), || {
                    format!("{}: partitioned chain is not an iso", m.name)
                })?;
                partitioned += 1;
            }
        }
    }
    ensure(intrinsic >= 20 && extrinsic >= 20 && partitioned >= 20, || {
        format!("too few instances: {intrinsic} intrinsic, {extrinsic} extrinsic, {partitioned} partitioned")
    })?;
    Ok(format!(
        "{intrinsic} intrinsic splits, {extrinsic} extrinsic unions, {partitioned} partitioned chains"
    ))
}

// 7 ------------------------------------------------------------------------

/// Schreier generators of the stabilizer of sheet 0, from a breadth-first
/// tree of the action. Also returns the depth of the tree.
fn schreier_generators(rep: &PermRep) -> (Vec<Word>, usize) {
    let d = rep.sheets();
    let mut path: Vec<Option<Word>> = vec![None; d];
    path[0] = Some(Word::empty());
    let mut queue = VecDeque::from([0]);
    let mut depth = 0;
    let mut tree = HashSet::new();
    while let Some(u) = queue.pop_front() {
        let pu = path[u].clone().unwrap();
        depth = depth.max(pu.len());
        for k in 0..rep.rank() {
            for (word, sign) in [(Word::generator(k), true), (Word::generator(k).inverse(), false)] {
                let v = rep.act(u, &word);
                if path[v].is_none() {
                    path[v] = Some(pu.concat(&word));
                    tree.insert(if sign { (u, k) } else { (v, k) });
                    queue.push_back(v);
                }
            }
        }
    }
    let mut gens = Vec::new();
    for u in 0..d {
        for k in 0..rep.rank() {
            if tree.contains(&(u, k)) {
                continue;
            }
            let v = rep.act(u, &Word::generator(k));
            let g = path[u].clone().unwrap().concat(&Word::generator(k)).concat(&path[v].clone().unwrap().inverse());
            gens.push(g);
        }
    }
    (gens, depth)
}

/// Reduced elements of the subgroup up to length `bound`, closed under
/// right multiplication by the generators and their inverses.
fn enumerate_subgroup(gens: &[Word], bound: usize) -> HashSet<Word> {
    let steps: Vec<Word> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    let mut seen = HashSet::from([Word::empty()]);
    let mut queue = VecDeque::from([Word::empty()]);
    while let Some(w) = queue.pop_front() {
        for s in &steps {
            let next = w.concat(s);
            if next.len() <= bound && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

fn stallings_suite() -> Outcome {
    const LEN: usize = 6;
    let words = all_words(2, LEN);
    let mut subgroups = 0;
    let mut counts = Vec::new();
    for d in 1..=4 {
        let reps = based_transitive_reps(2, d);
        counts.push(reps.len());
        for rep in &reps {
            let (gens, depth) = schreier_generators(rep);
            let s = fold(&gens, 2).core();
            ensure(s.index() == Some(d), || format!("index {:?} for degree {d}", s.index()))?;
            ensure(s.subgroup_rank() == 1 + d, || format!("rank {} for index {d}", s.subgroup_rank()))?;
            ensure(gens.len() == 1 + d, || "Schreier generator count".into())?;
            let enumerated = enumerate_subgroup(&gens, LEN + depth);
            for w in &words {
                let by_cosets = rep.act(0, w) == 0;
                let by_words = enumerated.contains(w);
                let by_fold = membership(w, &s).member;
                ensure(by_cosets == by_words && by_words == by_fold, || {
                    format!("[{w}] in index-{d} subgroup: cosets {by_cosets}, words {by_words}, fold {by_fold}")
                })?;
            }
            subgroups += 1;
        }
    }
    // subgroups of index 1..4 in F_2
    ensure(counts == [1, 3, 13, 71], || format!("subgroup counts {counts:?}"))?;
    Ok(format!("{subgroups} subgroups, {} words each", words.len()))
}

// 8 ------------------------------------------------------------------------

fn hom_completeness() -> Outcome {
    let mut targets: Vec<Arc<Graph>> = Vec::new();
    for m in corpus_maps() {
        if !targets.iter().any(|t| **t == **m.f.target()) {
            targets.push(m.f.target().clone());
        }
    }
    let mut pairs = 0;
    let mut morphisms = 0;
    for y in &targets {
        for cat in Category::ALL {
            let covers: Vec<CoveringMap> = e(cover_corpus(y, Some(VertexId::new(0)), cat, 3))?
                .into_iter()
                .filter(|p| p.total().vertex_count() <= 12)
                .collect();
            for p in &covers {
                for q in &covers {
                    let fast: BTreeSet<_> = e(enumerate_hom(p, q, cat))?
                        .iter()
                        .map(|t| (t.map().vertex_map().to_vec(), t.map().dart_map().to_vec()))
                        .collect();
                    let slow: BTreeSet<_> = e(brute_force_hom(p, q, cat))?
                        .iter()
                        .map(|g| (g.vertex_map().to_vec(), g.dart_map().to_vec()))
                        .collect();
                    ensure(fast == slow, || {
                        format!(
                            "{} {cat}: {} -> {}: {} enumerated, {} by brute force",
                            y.name(),
                            p.total().name(),
                            q.total().name(),
                            fast.len(),
                            slow.len()
                        )
                    })?;
                    pairs += 1;
                    morphisms += fast.len();
                }
            }
        }
    }
    Ok(format!("{} bases, {pairs} pairs, {morphisms} morphisms", targets.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("1 gcd-component law", gcd_components, Duration::from_secs(1)),
        ("2 triviality when n | m", triviality, Duration::from_secs(1)),
        ("3 lifting criterion vs pair walk", key_lemma, Duration::from_secs(10)),
        ("4 triad corpus", triad_corpus, Duration::from_secs(120)),
        ("5 functor laws", functor_laws, Duration::from_secs(10)),
        ("6 disjoint-union isomorphisms", disjoint_unions, Duration::from_secs(10)),
        ("7 Stallings suite", stallings_suite, Duration::from_secs(30)),
        ("8 hom-set completeness", hom_completeness, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > limit => Err(format!("{detail}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{took:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} [{took:.2?}]");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
