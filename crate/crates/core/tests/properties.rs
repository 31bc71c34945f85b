//! Randomized invariants. Covers are built by the voltage construction: a
//! permutation of the sheets per base edge.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pullcov::cover::{
    extrinsic_union, image_of_component, select_components, validate_cover, Category, CoveringMap,
};
use pullcov::format::{parse, same_workspace, write_cover, write_graph};
use pullcov::functor::{enumerate_hom, find_isomorphism};
use pullcov::graph::{components, spanning_forest, Graph, GraphBuilder, GraphMorphism, Subgraph, VertexId};
use pullcov::pi1::{
    closed_lift_test, cover_from_perm_rep, cover_subgroup, fold, hom_is_injective, hom_is_surjective,
    induced_hom, membership, monodromy, pi1, random_word, Word,
};
use pullcov::pullback::{pullback, pullback_morphism};
use pullcov::shapes;

#[derive(Clone, Debug)]
struct Shape {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

fn shape(max_v: usize, max_e: usize) -> impl Strategy<Value = Shape> {
    (1..=max_v).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_e).prop_map(move |edges| Shape { vertices: n, edges })
    })
}

/// A path through all vertices plus extra edges.
fn connected_shape(max_v: usize, max_extra: usize) -> impl Strategy<Value = Shape> {
    shape(max_v, max_extra).prop_map(|mut s| {
        let mut edges: Vec<_> = (1..s.vertices).map(|i| (i - 1, i)).collect();
        edges.append(&mut s.edges);
        Shape { vertices: s.vertices, edges }
    })
}

fn build(name: &str, s: &Shape, vname: impl Fn(usize) -> String) -> Arc<Graph> {
    let mut b = GraphBuilder::new(name).vertices((0..s.vertices).map(&vname));
    for (k, &(u, v)) in s.edges.iter().enumerate() {
        b = b.edge(format!("e{k}"), vname(u), vname(v));
    }
    Arc::new(b.build().expect("valid shape"))
}

fn base(s: &Shape) -> Arc<Graph> {
    build("Y", s, |i| format!("v{i}"))
}

fn permutation(d: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..d).collect::<Vec<_>>()).prop_shuffle()
}

fn voltages(s: &Shape, d: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(permutation(d), s.edges.len())
}

/// The cover of `y` with vertices `vI.S` and edges `eK.S` from `(u, S)` to
/// `(v, σ_K(S))`.
fn voltage_cover(name: &str, y: &Arc<Graph>, s: &Shape, sigma: &[Vec<usize>], d: usize) -> CoveringMap {
    let mut b = GraphBuilder::new(name);
    for i in 0..s.vertices {
        for t in 0..d {
            b = b.vertex(format!("v{i}.{t}"));
        }
    }
    for (k, &(u, v)) in s.edges.iter().enumerate() {
        for t in 0..d {
            b = b.edge(format!("e{k}.{t}"), format!("v{u}.{t}"), format!("v{v}.{}", sigma[k][t]));
        }
    }
    let e = Arc::new(b.build().expect("valid total space"));
    let vmap = e
        .vertices()
        .map(|x| {
            let n = e.vertex_name(x);
            y.vertex(&n[..n.find('.').unwrap()]).unwrap()
        })
        .collect();
    let dmap = e
        .darts()
        .map(|a| {
            let n = e.dart_name(a);
            let (stem, sign) = (&n[..n.find('.').unwrap()], &n[n.len() - 1..]);
            y.dart_by_name(&format!("{stem}{sign}")).unwrap()
        })
        .collect();
    let p = GraphMorphism::new(e, y.clone(), vmap, dmap).expect("projection is a morphism");
    validate_cover(p, Category::Cov, None).expect("voltage covers are covers")
}

#[derive(Clone, Debug)]
struct Fixture {
    shape: Shape,
    d1: usize,
    s1: Vec<Vec<usize>>,
    d2: usize,
    s2: Vec<Vec<usize>>,
}

fn fixture(connected: bool) -> impl Strategy<Value = Fixture> {
    let s = if connected { connected_shape(3, 2).boxed() } else { shape(3, 3).boxed() };
    (s, 1..=3usize, 1..=3usize).prop_flat_map(|(shape, d1, d2)| {
        (voltages(&shape, d1), voltages(&shape, d2))
            .prop_map(move |(s1, s2)| Fixture { shape: shape.clone(), d1, s1, d2, s2 })
    })
}

impl Fixture {
    fn covers(&self) -> (Arc<Graph>, CoveringMap, CoveringMap) {
        let y = base(&self.shape);
        let p = voltage_cover("E", &y, &self.shape, &self.s1, self.d1);
        let q = voltage_cover("F", &y, &self.shape, &self.s2, self.d2);
        (y, p, q)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // graph ----------------------------------------------------------------

    #[test]
    fn components_follow_relabeling(s in shape(6, 6), perm in permutation(6)) {
        let g = build("G", &s, |i| format!("v{i}"));
        let h = build("H", &s, |i| format!("w{}", perm[i]));
        let (pg, ph) = (components(&g), components(&h));
        prop_assert_eq!(pg.count(), ph.count());
        let to_h = |i: usize| h.vertex(&format!("w{}", perm[i])).unwrap();
        let to_g = |i: usize| g.vertex(&format!("v{i}")).unwrap();
        for i in 0..s.vertices {
            for j in 0..s.vertices {
                prop_assert_eq!(
                    pg.same_component(to_g(i), to_g(j)),
                    ph.same_component(to_h(i), to_h(j))
                );
            }
        }
    }

    #[test]
    fn morphisms_preserve_components(f in fixture(false)) {
        let (_, p, _) = f.covers();
        let pe = components(p.total());
        let py = components(p.base());
        for u in p.total().vertices() {
            for v in p.total().vertices() {
                if pe.same_component(u, v) {
                    prop_assert!(py.same_component(p.vertex(u), p.vertex(v)));
                }
            }
        }
    }

    #[test]
    fn non_tree_edges_count_cycle_rank(s in shape(6, 8)) {
        let g = base(&s);
        let forest = spanning_forest(&g, &[]).unwrap();
        let parts = forest.partition();
        for c in 0..parts.count() {
            let members = parts.members(c);
            let edges = g.edges().filter(|&d| parts.component_of(g.origin(d)) == c).count();
            prop_assert_eq!(forest.non_tree_edges(&g, c).len() + members.len(), edges + 1);
        }
    }

    // covers ---------------------------------------------------------------

    #[test]
    fn fibers_are_constant_on_components(f in fixture(false), chosen in prop::collection::vec(any::<bool>(), 9)) {
        let (_, p, _) = f.covers();
        let picked: Vec<usize> = (0..components(p.total()).count()).filter(|&c| chosen[c]).collect();
        for cover in [p.clone(), select_components(&p, &picked).unwrap()] {
            let py = components(cover.base());
            for y in cover.base().vertices() {
                let other = py.representative(py.component_of(y));
                prop_assert_eq!(cover.fiber(y).len(), cover.fiber(other).len());
            }
        }
    }

    #[test]
    fn cover_morphisms_are_covers(f in fixture(false)) {
        let (_, p, q) = f.covers();
        let hom = enumerate_hom(&p, &q, Category::Cov).unwrap();
        for t in hom.iter() {
            prop_assert!(t.as_cover().is_ok());
            if t.map().is_bijective() {
                let inv = t.inverse();
                prop_assert!(inv.is_some());
                let back = t.then(inv.as_ref().unwrap()).unwrap();
                prop_assert!(back.map() == &GraphMorphism::identity(p.total().clone()));
            }
        }
    }

    #[test]
    fn morphisms_agreeing_at_a_point_agree_on_its_component(f in fixture(false)) {
        let (_, p, q) = f.covers();
        let hom = enumerate_hom(&p, &q, Category::Cov).unwrap();
        // edgeless bases give |D|^|V| morphisms; the pairs are what matter
        prop_assume!(hom.len() <= 500);
        let e = p.total();
        let parts = components(e);
        for t1 in hom.iter() {
            for t2 in hom.iter() {
                let (a, b) = (t1.map(), t2.map());
                let agree_at = |v: VertexId| a.vertex(v) == b.vertex(v) && e.star(v).iter().all(|&d| a.dart(d) == b.dart(d));
                for c in 0..parts.count() {
                    let members = parts.members(c);
                    if members.iter().any(|&v| agree_at(v)) {
                        prop_assert!(members.iter().all(|&v| agree_at(v)));
                    }
                }
            }
        }
    }

    #[test]
    fn components_cover_whole_components(f in fixture(false)) {
        let (y, p, _) = f.covers();
        let pe = components(p.total());
        let py = components(&y);
        for c in 0..pe.count() {
            let image = image_of_component(&p, c).unwrap();
            let hit: BTreeSet<_> = pe.members(c).iter().map(|&v| p.vertex(v)).collect();
            let whole: BTreeSet<_> = py.members(image).iter().copied().collect();
            prop_assert_eq!(hit, whole);
        }
    }

    #[test]
    fn union_summands_are_recovered(f in fixture(false)) {
        let (y, p, q) = f.covers();
        let u = extrinsic_union(&y, &[p.clone(), q.clone()], Category::Cov, None).unwrap();
        let parts = components(u.cover.total());
        let offset = components(p.total()).count();
        for (alpha, summand) in [(0, &p), (1, &q)] {
            let picked: Vec<usize> = (0..parts.count())
                .filter(|&c| u.locate_vertex(parts.representative(c)).0 == alpha)
                .collect();
            prop_assert_eq!(picked.len(), if alpha == 0 { offset } else { parts.count() - offset });
            let back = select_components(&u.cover, &picked).unwrap();
            prop_assert!(find_isomorphism(&back, summand, Category::Cov).unwrap().is_some());
        }
    }

    // pullback -------------------------------------------------------------

    #[test]
    fn pullback_fibers_match(f in fixture(false)) {
        let (_, p, q) = f.covers();
        let g = q.projection();
        let pb = pullback(g, &p).unwrap();
        for x in g.source().vertices() {
            prop_assert_eq!(pb.proj_base().fiber(x).len(), p.fiber(g.vertex(x)).len());
        }
        prop_assert!(validate_cover(pb.proj_base().projection().clone(), Category::Cov, None).is_ok());
        prop_assert!(pb.square_commutes());
    }

    #[test]
    fn injective_maps_pull_back_injectively(f in fixture(false), keep in prop::collection::vec(any::<bool>(), 3)) {
        let (y, p, _) = f.covers();
        let vs: Vec<VertexId> = y.vertices().filter(|v| keep[v.index()]).collect();
        let sub = Subgraph::induced(&y, vs).unwrap();
        let (_, inclusion) = sub.realize(&y, "A");
        prop_assert!(inclusion.is_injective());
        let pb = pullback(&inclusion, &p).unwrap();
        prop_assert!(pb.proj_top().is_injective());
    }

    #[test]
    fn isomorphic_covers_pull_back_isomorphically(f in fixture(false), relabel in permutation(3)) {
        let (_, p, q) = f.covers();
        // the same cover with its sheets renamed
        let r: Vec<usize> = relabel.iter().copied().filter(|&i| i < f.d1).collect();
        let renamed: Vec<Vec<usize>> = f
            .s1
            .iter()
            .map(|sig| {
                let mut out = vec![0; f.d1];
                for t in 0..f.d1 {
                    out[r[t]] = r[sig[t]];
                }
                out
            })
            .collect();
        let p2 = voltage_cover("E2", p.base(), &f.shape, &renamed, f.d1);
        let iso = find_isomorphism(&p, &p2, Category::Cov).unwrap();
        prop_assert!(iso.is_some());
        let pulled = pullback_morphism(q.projection(), iso.as_ref().unwrap()).unwrap();
        prop_assert!(pulled.is_isomorphism());
        prop_assert!(pulled.inverse().is_some());
    }

    // pi1 ------------------------------------------------------------------

    #[test]
    fn closed_lifts_are_members(f in fixture(true), seed in any::<u64>()) {
        let (y, p, _) = f.covers();
        let rank = pi1(&y, VertexId::new(0)).unwrap().rank();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for &e in p.fiber(VertexId::new(0)) {
            let s = cover_subgroup(&p, e).unwrap();
            for _ in 0..20 {
                let w = random_word(&mut rng, rank, 8);
                prop_assert_eq!(closed_lift_test(&p, e, &w).unwrap(), membership(&w, &s).member);
            }
        }
    }

    #[test]
    fn monodromy_rebuilds_the_cover(f in fixture(true)) {
        let (y, p, _) = f.covers();
        let pres = pi1(&y, VertexId::new(0)).unwrap();
        let rep = monodromy(&p, &pres).unwrap();
        let rebuilt = cover_from_perm_rep(&pres, &rep, Category::Cov).unwrap();
        prop_assert!(find_isomorphism(&p, &rebuilt, Category::Cov).unwrap().is_some());
    }

    #[test]
    fn based_covers_with_equal_subgroups_are_isomorphic(f in fixture(true)) {
        let (y, p, _) = f.covers();
        let y0 = VertexId::new(0);
        let connected = components(p.total()).count() == 1;
        prop_assume!(connected);
        let fiber = p.fiber(y0).to_vec();
        let e0 = fiber[0];
        let s0 = cover_subgroup(&p, e0).unwrap();
        let based = |e| p.with_basepoint(Some(e), Category::BCov).unwrap();
        let rank = pi1(&y, y0).unwrap().rank();
        for &e in &fiber {
            let s = cover_subgroup(&p, e).unwrap();
            let equal = s.basis().iter().all(|w| membership(w, &s0).member)
                && s0.basis().iter().all(|w| membership(w, &s).member);
            let iso = find_isomorphism(&based(e0), &based(e), Category::BCov).unwrap();
            prop_assert_eq!(equal, iso.is_some(), "rank {}", rank);
        }
    }

    #[test]
    fn surjectivity_onto_a_loop_is_a_gcd(s in connected_shape(4, 3), signs in prop::collection::vec(any::<bool>(), 6)) {
        let x = base(&s);
        let r1 = Arc::new(shapes::rose("R1", 1));
        let loop_dart = |positive: bool| r1.dart_by_name(if positive { "e0+" } else { "e0-" }).unwrap();
        let dmap = x
            .darts()
            .map(|d| {
                let (stem, positive) = x.edge_label(d);
                let k: usize = stem[1..].parse().unwrap();
                loop_dart(positive == signs[k])
            })
            .collect();
        let f = GraphMorphism::new(x.clone(), r1, vec![VertexId::new(0); x.vertex_count()], dmap).unwrap();
        let h = induced_hom(&f, VertexId::new(0)).unwrap();
        let sums: Vec<i64> = h.images().iter().map(|w| w.exponent_sums(1)[0]).collect();
        let g = sums.iter().fold(0i64, |a, &b| num_gcd(a, b.abs()));
        prop_assert_eq!(hom_is_surjective(&h), g == 1);
        let injective = match sums.len() {
            0 => true,
            1 => sums[0] != 0,
            _ => false,
        };
        prop_assert_eq!(hom_is_injective(&h), injective);
    }

    #[test]
    fn surjectivity_onto_r2_is_membership(images in prop::collection::vec(word(2, 4), 0..4)) {
        // a rose mapped petal by petal onto the given loops of R2
        let r = images.len();
        let s = fold(&images, 2).core();
        let generated = (0..2).all(|k| membership(&Word::generator(k), &s).member);
        let sums: Vec<Vec<i64>> = images.iter().map(|w| w.exponent_sums(2)).collect();
        // onto F_2 forces onto Z^2: the 2x2 minors have gcd 1
        let minors = (0..r).flat_map(|i| (0..r).map(move |j| (i, j)));
        let g = minors.fold(0, |a, (i, j)| num_gcd(a, (sums[i][0] * sums[j][1] - sums[i][1] * sums[j][0]).abs()));
        if generated {
            prop_assert_eq!(g, 1);
        }
        let h = rose_hom(&images);
        prop_assert_eq!(hom_is_surjective(&h), generated);
        prop_assert_eq!(hom_is_injective(&h), s.subgroup_rank() == r);
    }

    // format ---------------------------------------------------------------

    #[test]
    fn cover_files_round_trip(f in fixture(false)) {
        let (_, p, _) = f.covers();
        let text = write_graph(p.base(), &[]).unwrap() + &write_cover("p", &p).unwrap();
        let ws = parse(&text).unwrap();
        let again = parse(&ws.to_text().unwrap()).unwrap();
        prop_assert!(same_workspace(&ws, &again));
        prop_assert_eq!(again.to_text().unwrap(), ws.to_text().unwrap());
        let back = again.cover("p").unwrap();
        prop_assert!(find_isomorphism(back, &p, Category::Cov).unwrap().is_some());
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    any::<u64>().prop_map(move |seed| random_word(&mut ChaCha8Rng::seed_from_u64(seed), rank, max_len))
}

/// `π₁(R_r) → π₁(R_2)` sending petal `k` to `images[k]`, realized by
/// subdividing each petal into a cycle that spells its image.
fn rose_hom(images: &[Word]) -> pullcov::pi1::InducedHom {
    let r2 = Arc::new(shapes::rose("R2", 2));
    let mut b = GraphBuilder::new("X").vertex("o");
    let mut spelled = Vec::new();
    for (k, w) in images.iter().enumerate() {
        let letters = w.letters();
        if letters.is_empty() {
            // a trivial loop still needs an edge; map it back and forth
            b = b.vertex(format!("p{k}.1"));
            b = b.edge(format!("p{k}.0"), "o", format!("p{k}.1"));
            b = b.edge(format!("p{k}.1"), format!("p{k}.1"), "o");
            spelled.push((format!("p{k}.0"), (0, true)));
            spelled.push((format!("p{k}.1"), (0, false)));
            continue;
        }
        let n = letters.len();
        let at = |i: usize| if i == 0 || i == n { "o".to_string() } else { format!("p{k}.{i}") };
        for i in 1..n {
            b = b.vertex(at(i));
        }
        for (i, &l) in letters.iter().enumerate() {
            b = b.edge(format!("p{k}.{i}"), at(i), at(i + 1));
            let w1 = Word::from_letters([l]);
            let positive = w1.exponent_sums(2).iter().sum::<i64>() > 0;
            spelled.push((format!("p{k}.{i}"), (pullcov::pi1::letter_generator(l), positive)));
        }
    }
    let x = Arc::new(b.build().unwrap());
    let lookup: std::collections::HashMap<String, (usize, bool)> = spelled.into_iter().collect();
    let dmap = x
        .darts()
        .map(|d| {
            let (stem, positive) = x.edge_label(d);
            let (g, sign) = lookup[&stem];
            r2.dart_by_name(&format!("e{g}{}", if sign == positive { "+" } else { "-" })).unwrap()
        })
        .collect();
    let f = GraphMorphism::new(x.clone(), r2, vec![VertexId::new(0); x.vertex_count()], dmap).unwrap();
    induced_hom(&f, x.vertex("o").unwrap()).unwrap()
}
