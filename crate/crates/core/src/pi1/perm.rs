use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use super::word::{letter_generator, Word};
use super::Presentation;
use crate::cover::{validate_cover, Category, CoveringMap};
use crate::error::{Error, Result};
use crate::graph::{pair_name, DartId, Graph, GraphMorphism, VertexId};

/// A right action of `F_r` on `d` sheets: `s · g_k = perms[k][s]`.
/// Sheets are 0-based here and 1-based in vertex names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermRep {
    sheets: usize,
    perms: Vec<Vec<usize>>,
}

impl PermRep {
    pub fn new(sheets: usize, perms: Vec<Vec<usize>>) -> Result<Self> {
        for (k, p) in perms.iter().enumerate() {
            let distinct: BTreeSet<_> = p.iter().copied().collect();
            if p.len() != sheets || distinct.len() != sheets || p.iter().any(|&s| s >= sheets) {
                return Err(Error::InvalidWord(format!("permutation {k} is not a permutation of {sheets} sheets")));
            }
        }
        Ok(PermRep { sheets, perms })
    }

    pub fn identity(rank: usize, sheets: usize) -> Self {
        PermRep {
            sheets,
            perms: vec![(0..sheets).collect(); rank],
        }
    }

    pub fn sheets(&self) -> usize {
        self.sheets
    }

    pub fn rank(&self) -> usize {
        self.perms.len()
    }

    pub fn perm(&self, k: usize) -> &[usize] {
        &self.perms[k]
    }

    fn inverse_perm(&self, k: usize) -> Vec<usize> {
        let mut inv = vec![0; self.sheets];
        for (s, &t) in self.perms[k].iter().enumerate() {
            inv[t] = s;
        }
        inv
    }

    /// `s · w`.
    pub fn act(&self, s: usize, w: &Word) -> usize {
        let mut at = s;
        for &l in w.letters() {
            let k = letter_generator(l);
            at = if l > 0 {
                self.perms[k][at]
            } else {
                self.perms[k].iter().position(|&t| t == at).expect("permutation")
            };
        }
        at
    }

    /// The image of `F_r` under `g_k ↦ σ_k` applied through `images`:
    /// the representation `g ↦ ρ(φ(g))` for `φ(g_k) = images[k]`.
    pub fn compose(&self, images: &[Word]) -> PermRep {
        let perms = images
            .iter()
            .map(|w| (0..self.sheets).map(|s| self.act(s, w)).collect())
            .collect();
        PermRep {
            sheets: self.sheets,
            perms,
        }
    }

    /// Sheets reachable from `s`.
    pub fn orbit(&self, s: usize) -> Vec<usize> {
        let mut seen = vec![false; self.sheets];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        let mut orbit = vec![s];
        while let Some(t) = queue.pop_front() {
            for k in 0..self.rank() {
                for u in [self.perms[k][t], self.inverse_perm(k)[t]] {
                    if !seen[u] {
                        seen[u] = true;
                        orbit.push(u);
                        queue.push_back(u);
                    }
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.sheets];
        let mut out = Vec::new();
        for s in 0..self.sheets {
            if !seen[s] {
                let orbit = self.orbit(s);
                for &t in &orbit {
                    seen[t] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.sheets > 0 && self.orbit(0).len() == self.sheets
    }

    /// Relabels sheet `s` as `relabel[s]`.
    pub fn relabeled(&self, relabel: &[usize]) -> PermRep {
        let perms = self
            .perms
            .iter()
            .map(|p| {
                let mut q = vec![0; self.sheets];
                for s in 0..self.sheets {
                    q[relabel[s]] = relabel[p[s]];
                }
                q
            })
            .collect();
        PermRep {
            sheets: self.sheets,
            perms,
        }
    }

    /// Breadth-first numbering of the orbit of `start` over letters
    /// `g0, g0⁻¹, g1, …`, with the remaining sheets after it in order.
    fn bfs_labels(&self, start: usize) -> Vec<usize> {
        let inverses: Vec<_> = (0..self.rank()).map(|k| self.inverse_perm(k)).collect();
        let mut label = vec![usize::MAX; self.sheets];
        let mut next = 0;
        let mut queue = VecDeque::from([start]);
        label[start] = 0;
        next += 1;
        while let Some(t) = queue.pop_front() {
            for k in 0..self.rank() {
                for u in [self.perms[k][t], inverses[k][t]] {
                    if label[u] == usize::MAX {
                        label[u] = next;
                        next += 1;
                        queue.push_back(u);
                    }
                }
            }
        }
        for l in label.iter_mut() {
            if *l == usize::MAX {
                *l = next;
                next += 1;
            }
        }
        label
    }

    /// Canonical form of a transitive rep based at sheet 0. Two based
    /// transitive reps have equal stabilizers iff their forms agree.
    pub fn based_canonical(&self) -> PermRep {
        self.relabeled(&self.bfs_labels(0))
    }

    /// Canonical form up to relabeling of sheets: the least relabeling.
    pub fn canonical(&self) -> PermRep {
        let mut best: Option<PermRep> = None;
        let mut relabel: Vec<usize> = (0..self.sheets).collect();
        permute_all(&mut relabel, 0, &mut |r| {
            let candidate = self.relabeled(r);
            if best.as_ref().map_or(true, |b| candidate < *b) {
                best = Some(candidate);
            }
        });
        best.unwrap_or_else(|| self.clone())
    }

    /// The least relabeling that moves sheet `s` to sheet 0.
    pub fn based_at(&self, s: usize) -> PermRep {
        let mut best: Option<PermRep> = None;
        let mut relabel: Vec<usize> = (0..self.sheets).collect();
        permute_all(&mut relabel, 0, &mut |r| {
            if r[s] != 0 {
                return;
            }
            let candidate = self.relabeled(r);
            if best.as_ref().map_or(true, |b| candidate < *b) {
                best = Some(candidate);
            }
        });
        best.expect("sheet exists")
    }

    /// The transitive rep on one orbit, with sheets in increasing order.
    pub fn restrict_to_orbit(&self, orbit: &[usize]) -> PermRep {
        let mut pos = vec![usize::MAX; self.sheets];
        for (i, &s) in orbit.iter().enumerate() {
            pos[s] = i;
        }
        let perms = self
            .perms
            .iter()
            .map(|p| orbit.iter().map(|&s| pos[p[s]]).collect())
            .collect();
        PermRep {
            sheets: orbit.len(),
            perms,
        }
    }

    /// Stable compact code: each permutation 1-based, `.` between them.
    pub fn code(&self) -> String {
        self.perms
            .iter()
            .map(|p| p.iter().map(|&s| (s + 1).to_string()).collect::<Vec<_>>().join(""))
            .collect::<Vec<_>>()
            .join(".")
    }
}

fn permute_all(v: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        visit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute_all(v, k + 1, visit);
        v.swap(k, i);
    }
}

fn all_permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut v: Vec<usize> = (0..d).collect();
    permute_all(&mut v, 0, &mut |p| out.push(p.to_vec()));
    out.sort();
    out
}

fn all_tuples(rank: usize, d: usize) -> Vec<PermRep> {
    let perms = all_permutations(d);
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Vec<usize>>| {
                perms.iter().map(move |p| {
                    let mut t = prefix.clone();
                    t.push(p.clone());
                    t
                })
            })
            .collect();
    }
    out.into_iter().map(|perms| PermRep { sheets: d, perms }).collect()
}

/// All actions of `F_rank` on `d` sheets up to relabeling, sorted.
pub fn all_perm_reps(rank: usize, d: usize) -> Vec<PermRep> {
    let set: BTreeSet<_> = all_tuples(rank, d).iter().map(PermRep::canonical).collect();
    set.into_iter().collect()
}

/// Transitive actions up to relabeling: conjugacy classes of subgroups of
/// index `d`.
pub fn transitive_perm_reps(rank: usize, d: usize) -> Vec<PermRep> {
    all_perm_reps(rank, d).into_iter().filter(PermRep::is_transitive).collect()
}

/// Transitive actions based at sheet 0, up to relabeling fixing sheet 0:
/// the subgroups of index `d`.
pub fn based_transitive_reps(rank: usize, d: usize) -> Vec<PermRep> {
    let set: BTreeSet<_> = all_tuples(rank, d)
        .iter()
        .filter(|r| r.is_transitive())
        .map(PermRep::based_canonical)
        .collect();
    set.into_iter().collect()
}

/// The cover of the presentation's component with monodromy `rep`, empty
/// over the other components. Vertices `(v, s)` are sheet-major; tree darts
/// stay on their sheet, and the `g_k`-dart moves sheet `s` to `σ_k(s)`.
/// Based categories put the basepoint at the base vertex on sheet 1.
pub fn cover_from_perm_rep(pres: &Presentation, rep: &PermRep, category: Category) -> Result<CoveringMap> {
    if rep.rank() != pres.rank() {
        return Err(Error::MismatchedIndex(format!(
            "{} permutations for rank {}",
            rep.rank(),
            pres.rank()
        )));
    }
    let y = pres.graph();
    let verts: Vec<VertexId> = y.vertices().filter(|&v| pres.contains(v)).collect();
    let darts: Vec<DartId> = y.darts().filter(|&d| pres.contains(y.origin(d))).collect();
    let mut vpos = vec![usize::MAX; y.vertex_count()];
    for (i, v) in verts.iter().enumerate() {
        vpos[v.index()] = i;
    }
    let mut dpos = vec![usize::MAX; y.dart_count()];
    for (i, d) in darts.iter().enumerate() {
        dpos[d.index()] = i;
    }
    let d = rep.sheets();
    let inverses: Vec<_> = (0..rep.rank()).map(|k| rep.inverse_perm(k)).collect();
    let target_sheet = |dart: DartId, s: usize| match pres.letter(dart) {
        None => s,
        Some(l) if l > 0 => rep.perms[letter_generator(l)][s],
        Some(l) => inverses[letter_generator(l)][s],
    };

    let mut vertex_names = Vec::with_capacity(d * verts.len());
    let mut vertex_map = Vec::with_capacity(d * verts.len());
    for s in 0..d {
        let tag = (s + 1).to_string();
        for &v in &verts {
            vertex_names.push(pair_name(y.vertex_name(v), &tag));
            vertex_map.push(v);
        }
    }
    let mut dart_names = Vec::with_capacity(d * darts.len());
    let mut origin = Vec::with_capacity(d * darts.len());
    let mut reverse = Vec::with_capacity(d * darts.len());
    let mut dart_map = Vec::with_capacity(d * darts.len());
    for s in 0..d {
        let tag = (s + 1).to_string();
        for &a in &darts {
            let t = target_sheet(a, s);
            dart_names.push(pair_name(y.dart_name(a), &tag));
            origin.push(VertexId::new(s * verts.len() + vpos[y.origin(a).index()]));
            reverse.push(DartId::new(t * darts.len() + dpos[y.reverse(a).index()]));
            dart_map.push(a);
        }
    }
    let total = Arc::new(Graph::from_parts(
        format!("{}~{}", y.name(), rep.code()),
        vertex_names,
        dart_names,
        origin,
        reverse,
        Vec::new(),
    ));
    let basepoint = if category.is_based() {
        if d == 0 {
            return Err(Error::MissingBasepoint("a based cover needs at least one sheet".into()));
        }
        Some(VertexId::new(vpos[pres.base().index()]))
    } else {
        None
    };
    let map = GraphMorphism::from_parts(total, y.clone(), vertex_map, dart_map);
    validate_cover(map, category, basepoint)
}

/// The action of `π₁(Y, y)` on the fiber over the presentation's base,
/// sheets numbered by fiber position.
pub fn monodromy(p: &CoveringMap, pres: &Presentation) -> Result<PermRep> {
    if !crate::graph::same_graph(p.base(), pres.graph()) {
        return Err(Error::MismatchedBase("presentation is not of the cover's base".into()));
    }
    let y = pres.base();
    let fiber = p.fiber(y);
    if fiber.is_empty() {
        return Err(Error::EmptyFiber(pres.graph().vertex_name(y).to_string()));
    }
    let perms = (0..pres.rank())
        .map(|k| {
            let path = pres.generator_loop(k);
            fiber
                .iter()
                .map(|&e| p.fiber_position(p.lift_endpoint(e, &path)))
                .collect()
        })
        .collect();
    PermRep::new(fiber.len(), perms)
}
