//! Small named graphs and maps used throughout examples and tests.
//!
//! Vertices and darts are numbered in construction order: vertex `vK` has
//! index `K`, edge `eK` contributes darts `eK+` and `eK-` at indices `2K` and
//! `2K + 1`.

use std::sync::Arc;

use crate::graph::{DartId, Graph, GraphMorphism, VertexId};

fn assemble(name: &str, vertices: Vec<String>, edges: &[(String, usize, usize)]) -> Graph {
    let mut dart_names = Vec::with_capacity(2 * edges.len());
    let mut origin = Vec::with_capacity(2 * edges.len());
    let mut reverse = Vec::with_capacity(2 * edges.len());
    for (k, (e, u, v)) in edges.iter().enumerate() {
        dart_names.push(format!("{e}+"));
        dart_names.push(format!("{e}-"));
        origin.push(VertexId::new(*u));
        origin.push(VertexId::new(*v));
        reverse.push(DartId::new(2 * k + 1));
        reverse.push(DartId::new(2 * k));
    }
    Graph::from_parts(name, vertices, dart_names, origin, reverse, Vec::new())
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// One vertex, no edges.
pub fn point(name: &str) -> Graph {
    assemble(name, numbered("v", 1), &[])
}

/// `n` isolated vertices.
pub fn discrete(name: &str, n: usize) -> Graph {
    assemble(name, numbered("v", n), &[])
}

/// The cycle `C_n`: edge `eK` runs from `vK` to `v(K+1 mod n)`.
/// `C_1` is a single loop, `C_2` two parallel edges.
pub fn cycle(name: &str, n: usize) -> Graph {
    assert!(n >= 1, "a cycle needs at least one vertex");
    let edges: Vec<_> = (0..n).map(|k| (format!("e{k}"), k, (k + 1) % n)).collect();
    assemble(name, numbered("v", n), &edges)
}

/// The rose `R_r`: one vertex with `r` loops.
pub fn rose(name: &str, r: usize) -> Graph {
    let edges: Vec<_> = (0..r).map(|k| (format!("e{k}"), 0, 0)).collect();
    assemble(name, numbered("v", 1), &edges)
}

/// Two vertices joined by `k` parallel edges.
pub fn theta(name: &str, k: usize) -> Graph {
    let edges: Vec<_> = (0..k).map(|i| (format!("e{i}"), 0, 1)).collect();
    assemble(name, numbered("v", 2), &edges)
}

/// A path with `n` edges and `n + 1` vertices.
pub fn path(name: &str, n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|k| (format!("e{k}"), k, k + 1)).collect();
    assemble(name, numbered("v", n + 1), &edges)
}

/// Figure eight with each loop subdivided once: vertices `v0, v1, v2`,
/// edges `e0: v0→v1`, `e1: v1→v0`, `e2: v0→v2`, `e3: v2→v0`.
pub fn subdivided_eight(name: &str) -> Graph {
    let edges = [
        ("e0".to_string(), 0, 1),
        ("e1".to_string(), 1, 0),
        ("e2".to_string(), 0, 2),
        ("e3".to_string(), 2, 0),
    ];
    assemble(name, numbered("v", 3), &edges)
}

/// Sends every vertex to the single vertex of `R_1` and every edge onto the
/// loop, preserving orientation.
fn onto_loop(source: Arc<Graph>) -> GraphMorphism {
    let target = Arc::new(rose("R1", 1));
    let vertex_map = vec![VertexId::new(0); source.vertex_count()];
    let dart_map = source.darts().map(|d| DartId::new(d.index() % 2)).collect();
    GraphMorphism::from_parts(source, target, vertex_map, dart_map)
}

/// `C_n → C_k` wrapping `n / k` times.
pub fn cycle_wrap(n: usize, k: usize) -> GraphMorphism {
    assert!(k >= 1 && n % k == 0, "{k} must divide {n}");
    let source = Arc::new(cycle(&format!("C{n}"), n));
    let target = Arc::new(cycle(&format!("C{k}"), k));
    wrap_between(source, target)
}

/// The wrap map between two given cycles built by [`cycle`].
pub fn wrap_between(source: Arc<Graph>, target: Arc<Graph>) -> GraphMorphism {
    let k = target.vertex_count();
    let vertex_map = source.vertices().map(|v| VertexId::new(v.index() % k)).collect();
    let dart_map = source.darts().map(|d| DartId::new(d.index() % (2 * k))).collect();
    GraphMorphism::from_parts(source, target, vertex_map, dart_map)
}

/// `C_n → R_1`, winding once around per edge.
pub fn cycle_onto_loop(n: usize) -> GraphMorphism {
    onto_loop(Arc::new(cycle(&format!("C{n}"), n)))
}

/// `R_r → R_1`, every loop onto the loop.
pub fn rose_collapse(r: usize) -> GraphMorphism {
    onto_loop(Arc::new(rose(&format!("R{r}"), r)))
}

/// The subdivided eight onto `R_1`; on fundamental groups `a, b ↦ c²`.
pub fn eight_onto_loop() -> GraphMorphism {
    onto_loop(Arc::new(subdivided_eight("E8")))
}

/// Inclusion of the `k`-th copy of `part` into `union`, where `union` is a
/// disjoint union of copies of `part`.
pub fn summand_inclusion(union: &Arc<Graph>, part: &Arc<Graph>, k: usize) -> GraphMorphism {
    let v_off = k * part.vertex_count();
    let d_off = k * part.dart_count();
    assert!(v_off + part.vertex_count() <= union.vertex_count());
    GraphMorphism::from_parts(
        part.clone(),
        union.clone(),
        part.vertices().map(|v| VertexId::new(v.index() + v_off)).collect(),
        part.darts().map(|d| DartId::new(d.index() + d_off)).collect(),
    )
}

/// Folds a disjoint union of copies of `part` onto `part`.
pub fn fold_summands(union: &Arc<Graph>, part: &Arc<Graph>) -> GraphMorphism {
    let nv = part.vertex_count().max(1);
    let nd = part.dart_count().max(1);
    GraphMorphism::from_parts(
        union.clone(),
        part.clone(),
        union.vertices().map(|v| VertexId::new(v.index() % nv)).collect(),
        union.darts().map(|d| DartId::new(d.index() % nd)).collect(),
    )
}

/// The inclusion of a single vertex.
pub fn vertex_inclusion(g: &Arc<Graph>, v: VertexId) -> GraphMorphism {
    let source = Arc::new(
        Graph::from_parts("pt", vec![g.vertex_name(v).to_string()], Vec::new(), Vec::new(), Vec::new(), Vec::new()),
    );
    GraphMorphism::from_parts(source, g.clone(), vec![v], Vec::new())
}

/// The unique map from the empty graph.
pub fn from_empty(g: &Arc<Graph>) -> GraphMorphism {
    GraphMorphism::from_parts(Arc::new(Graph::empty("empty")), g.clone(), Vec::new(), Vec::new())
}
