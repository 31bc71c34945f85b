//! Stallings graphs of finitely generated subgroups of `F_n`.
//!
//! Every edge also carries a word in the *input* generators, so reading a
//! closed path at the base yields both the element of `F_n` it spells and a
//! preimage of that element under `g_i ↦ generators[i]`. Labels are kept
//! consistent through folding by a gauge change at the absorbed vertex.

use std::collections::{BTreeSet, VecDeque};

use super::perm::PermRep;
use super::word::{letter_generator, Letter, Word};

/// Slot `2k` holds the `g_k`-edge leaving a vertex, slot `2k + 1` the
/// `g_k⁻¹`-edge. Vertex 0 is the base.
#[derive(Clone, Debug)]
pub struct StallingsGraph {
    rank: usize,
    out: Vec<Vec<Option<usize>>>,
    labels: Vec<Vec<Word>>,
}

impl PartialEq for StallingsGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.out == other.out
    }
}

impl Eq for StallingsGraph {}

fn slot(l: Letter) -> usize {
    2 * letter_generator(l) + usize::from(l < 0)
}

fn slot_letter(s: usize) -> Letter {
    let k = (s / 2) as Letter + 1;
    if s % 2 == 0 {
        k
    } else {
        -k
    }
}

#[derive(Clone, Debug)]
struct Edge {
    from: usize,
    to: usize,
    letter: Letter,
    label: Word,
}

/// Unfolded graph under construction.
struct Builder {
    edges: Vec<Option<Edge>>,
    incident: Vec<Vec<usize>>,
    alive: Vec<bool>,
}

impl Builder {
    fn add_vertex(&mut self) -> usize {
        self.incident.push(Vec::new());
        self.alive.push(true);
        self.incident.len() - 1
    }

    fn add_edge(&mut self, from: usize, to: usize, letter: Letter, label: Word) {
        let id = self.edges.len();
        self.edges.push(Some(Edge { from, to, letter, label }));
        self.incident[from].push(id);
        if to != from {
            self.incident[to].push(id);
        }
    }

    /// The ways edge `e` leaves `v`: letter, far end, label read from `v`.
    fn leaving(&self, e: usize, v: usize) -> Vec<(Letter, usize, Word)> {
        let edge = self.edges[e].as_ref().expect("live edge");
        let mut out = Vec::with_capacity(2);
        if edge.from == v {
            out.push((edge.letter, edge.to, edge.label.clone()));
        }
        if edge.to == v {
            out.push((-edge.letter, edge.from, edge.label.inverse()));
        }
        out
    }

    /// The smallest clash: lowest vertex, then lowest slot, then the two
    /// lowest edges.
    fn find_clash(&self) -> Option<(usize, (usize, usize, Word), (usize, usize, Word))> {
        for v in 0..self.incident.len() {
            if !self.alive[v] {
                continue;
            }
            let mut by_slot: Vec<(usize, usize, usize, Word)> = Vec::new();
            for &e in &self.incident[v] {
                for (l, far, label) in self.leaving(e, v) {
                    by_slot.push((slot(l), e, far, label));
                }
            }
            by_slot.sort_by_key(|&(s, e, _, _)| (s, e));
            for pair in by_slot.windows(2) {
                if pair[0].0 == pair[1].0 && pair[0].1 != pair[1].1 {
                    let (_, e1, v1, l1) = pair[0].clone();
                    let (_, e2, v2, l2) = pair[1].clone();
                    return Some((v, (e1, v1, l1), (e2, v2, l2)));
                }
            }
        }
        None
    }

    fn remove_edge(&mut self, e: usize) {
        let edge = self.edges[e].take().expect("live edge");
        self.incident[edge.from].retain(|&x| x != e);
        self.incident[edge.to].retain(|&x| x != e);
    }

    fn fold_all(&mut self) {
        while let Some((_, (e1, v1, l1), (e2, v2, l2))) = self.find_clash() {
            if v1 == v2 {
                self.remove_edge(e1.max(e2));
                continue;
            }
            let (a, b, e_a, l_a, l_b) = if v1 > v2 { (v1, v2, e1, l1, l2) } else { (v2, v1, e2, l2, l1) };
            // Re-gauge at `a` so that it carries the potential of `b`.
            let g = l_b.inverse().concat(&l_a);
            let g_inv = g.inverse();
            let moved = std::mem::take(&mut self.incident[a]);
            for &e in &moved {
                let edge = self.edges[e].as_mut().expect("live edge");
                if edge.from == a {
                    edge.label = g.concat(&edge.label);
                    edge.from = b;
                }
                if edge.to == a {
                    edge.label = edge.label.concat(&g_inv);
                    edge.to = b;
                }
            }
            self.alive[a] = false;
            for e in moved {
                if !self.incident[b].contains(&e) {
                    self.incident[b].push(e);
                }
            }
            self.remove_edge(e_a);
        }
    }
}

/// Folds the bouquet of `generators` (words over `F_rank`). The label of
/// generator `i` is `g_i`.
pub fn fold(generators: &[Word], rank: usize) -> StallingsGraph {
    let mut b = Builder {
        edges: Vec::new(),
        incident: Vec::new(),
        alive: Vec::new(),
    };
    let base = b.add_vertex();
    for (i, w) in generators.iter().enumerate() {
        assert!(w.generator_bound() <= rank, "{w} is not a word in F_{rank}");
        let letters = w.letters();
        let mut at = base;
        for (j, &l) in letters.iter().enumerate() {
            let last = j + 1 == letters.len();
            let to = if last { base } else { b.add_vertex() };
            let label = if last { Word::generator(i) } else { Word::empty() };
            b.add_edge(at, to, l, label);
            at = to;
        }
    }
    b.fold_all();

    let n = b.incident.len();
    let mut out = vec![vec![None; 2 * rank]; n];
    let mut labels = vec![vec![Word::empty(); 2 * rank]; n];
    for edge in b.edges.iter().flatten() {
        out[edge.from][slot(edge.letter)] = Some(edge.to);
        labels[edge.from][slot(edge.letter)] = edge.label.clone();
        out[edge.to][slot(-edge.letter)] = Some(edge.from);
        labels[edge.to][slot(-edge.letter)] = edge.label.inverse();
    }
    StallingsGraph { rank, out, labels }.renumbered(&b.alive)
}

impl StallingsGraph {
    /// Keeps the vertices flagged in `keep` that are reachable from the
    /// base, numbered in breadth-first order over slots.
    fn renumbered(&self, keep: &[bool]) -> StallingsGraph {
        let n = self.out.len();
        let mut new_id = vec![usize::MAX; n];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([0]);
        new_id[0] = 0;
        order.push(0);
        while let Some(v) = queue.pop_front() {
            for w in self.out[v].iter().flatten().copied() {
                if keep[w] && new_id[w] == usize::MAX {
                    new_id[w] = order.len();
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        let out = order
            .iter()
            .map(|&v| {
                self.out[v]
                    .iter()
                    .map(|t| t.filter(|&w| keep[w]).map(|w| new_id[w]))
                    .collect()
            })
            .collect();
        let labels = order.iter().map(|&v| self.labels[v].clone()).collect();
        StallingsGraph {
            rank: self.rank,
            out,
            labels,
        }
    }

    /// A complete graph from a transitive action: `table[v][k]` is the end
    /// of the `g_k`-edge at `v`. Vertex 0 is the base. Edges are unlabelled.
    pub(crate) fn from_action(rank: usize, table: &[Vec<usize>]) -> StallingsGraph {
        let n = table.len();
        let mut out = vec![vec![None; 2 * rank]; n];
        for (v, row) in table.iter().enumerate() {
            for (k, &w) in row.iter().enumerate() {
                out[v][2 * k] = Some(w);
                out[w][2 * k + 1] = Some(v);
            }
        }
        let labels = vec![vec![Word::empty(); 2 * rank]; n];
        StallingsGraph { rank, out, labels }.renumbered(&vec![true; n])
    }

    /// Ambient rank `n` of `F_n`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().flatten().filter(|t| t.is_some()).count() / 2
    }

    /// `E − V + 1`: the rank of the subgroup when the graph is a core.
    pub fn subgroup_rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    pub fn target(&self, v: usize, s: usize) -> Option<usize> {
        self.out[v][s]
    }

    fn degree(&self, v: usize) -> usize {
        self.out[v].iter().filter(|t| t.is_some()).count()
    }

    pub fn is_core(&self) -> bool {
        (1..self.vertex_count()).all(|v| self.degree(v) >= 2)
    }

    /// Prunes hanging trees away from the base.
    pub fn core(&self) -> StallingsGraph {
        let mut g = self.clone();
        let mut keep = vec![true; g.out.len()];
        let mut stack: Vec<usize> = (1..g.out.len()).filter(|&v| g.degree(v) < 2).collect();
        while let Some(v) = stack.pop() {
            if !keep[v] || g.degree(v) >= 2 {
                continue;
            }
            keep[v] = false;
            for s in 0..2 * g.rank {
                if let Some(w) = g.out[v][s].take() {
                    g.out[w][s ^ 1] = None;
                    if w != 0 && keep[w] && g.degree(w) < 2 {
                        stack.push(w);
                    }
                }
            }
        }
        g.renumbered(&keep)
    }

    pub fn is_complete(&self) -> bool {
        self.out.iter().flatten().all(Option::is_some)
    }

    /// The index of the subgroup when finite (complete graph).
    pub fn index(&self) -> Option<usize> {
        self.is_complete().then_some(self.vertex_count())
    }

    /// The single-vertex rose: the whole group.
    pub fn is_whole_group(&self) -> bool {
        let core = self.core();
        core.vertex_count() == 1 && core.is_complete()
    }

    /// A transitive action on finitely many sheets, based at sheet 0, whose
    /// stabilizer is a proper subgroup containing this one. `None` for the
    /// whole group.
    ///
    /// Each partial permutation `v ↦ v·g_k` of the graph is extended to a
    /// full one by pairing the free starts with the free ends in order. A
    /// single vertex gets a second sheet that the missing generators swap in.
    pub fn finite_completion(&self) -> Option<PermRep> {
        if self.is_whole_group() {
            return None;
        }
        let n = self.vertex_count();
        if n == 1 {
            let perms = (0..self.rank)
                .map(|k| if self.out[0][2 * k].is_some() { vec![0, 1] } else { vec![1, 0] })
                .collect();
            return PermRep::new(2, perms).ok();
        }
        let perms = (0..self.rank)
            .map(|k| {
                let free_from: Vec<usize> = (0..n).filter(|&v| self.out[v][2 * k].is_none()).collect();
                let free_to: Vec<usize> = (0..n).filter(|&v| self.out[v][2 * k + 1].is_none()).collect();
                let mut perm: Vec<usize> = (0..n).map(|v| self.out[v][2 * k].unwrap_or(usize::MAX)).collect();
                for (&v, &w) in free_from.iter().zip(&free_to) {
                    perm[v] = w;
                }
                perm
            })
            .collect();
        PermRep::new(n, perms).ok()
    }

    /// Follows `w` from `v` as far as possible; returns the vertices visited
    /// and the product of labels read.
    fn read_from(&self, v: usize, w: &Word) -> (Vec<usize>, Word, bool) {
        let mut path = vec![v];
        let mut label = Word::empty();
        let mut at = v;
        for &l in w.letters() {
            match self.out[at][slot(l)] {
                Some(next) => {
                    label = label.concat(&self.labels[at][slot(l)]);
                    at = next;
                    path.push(at);
                }
                None => return (path, label, false),
            }
        }
        (path, label, true)
    }

    /// A free basis of the subgroup: one word per edge outside a
    /// breadth-first tree from the base.
    pub fn basis(&self) -> Vec<Word> {
        let n = self.vertex_count();
        let mut reach: Vec<Option<Word>> = vec![None; n];
        // tree edges as (origin of the positive dart, generator)
        let mut tree = BTreeSet::new();
        let mut queue = VecDeque::new();
        if n > 0 {
            reach[0] = Some(Word::empty());
            queue.push_back(0);
        }
        while let Some(v) = queue.pop_front() {
            for s in 0..2 * self.rank {
                let Some(w) = self.out[v][s] else { continue };
                if reach[w].is_none() {
                    let mut word = reach[v].clone().unwrap_or_default();
                    word.push(slot_letter(s));
                    reach[w] = Some(word);
                    tree.insert(if s % 2 == 0 { (v, s / 2) } else { (w, s / 2) });
                    queue.push_back(w);
                }
            }
        }
        self.edges()
            .into_iter()
            .filter(|&(v, l, _)| !tree.contains(&(v, slot(l) / 2)))
            .map(|(v, l, w)| {
                let to_v = reach[v].clone().unwrap_or_default();
                let back = reach[w].clone().unwrap_or_default().inverse();
                to_v.concat(&Word::from_letters([l])).concat(&back)
            })
            .collect()
    }

    /// Edges as `(from, letter, to)` with positive letters.
    pub fn edges(&self) -> Vec<(usize, Letter, usize)> {
        let mut out = Vec::new();
        for (v, row) in self.out.iter().enumerate() {
            for (s, t) in row.iter().enumerate() {
                if let (Some(w), true) = (t, s % 2 == 0) {
                    out.push((v, slot_letter(s), *w));
                }
            }
        }
        out
    }
}

/// Result of reading a word from the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// Vertices visited while reading, starting at the base.
    pub path: Vec<usize>,
    /// For members, a word in the folded generators that multiplies out to
    /// the tested word.
    pub preimage: Option<Word>,
}

pub fn membership(w: &Word, s: &StallingsGraph) -> Membership {
    let (path, label, complete) = s.read_from(0, w);
    let member = complete && *path.last().expect("nonempty path") == 0;
    Membership {
        member,
        path,
        preimage: member.then_some(label),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi1::word::all_words;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_and_whole() {
        let t = fold(&[], 2);
        assert_eq!(t.vertex_count(), 1);
        assert_eq!(t.subgroup_rank(), 0);
        assert!(membership(&Word::empty(), &t).member);
        assert!(!membership(&w("g0"), &t).member);
        let whole = fold(&[w("g0"), w("g1")], 2);
        assert!(whole.is_whole_group());
        assert_eq!(whole.index(), Some(1));
    }

    #[test]
    fn index_two_example() {
        let s = fold(&[w("g0 g0"), w("g1"), w("g0 g1 g0^-1")], 2);
        assert_eq!(s.vertex_count(), 2);
        assert_eq!(s.edge_count(), 4);
        assert_eq!(s.subgroup_rank(), 3);
        assert_eq!(s.index(), Some(2));
        assert!(!membership(&w("g0"), &s).member);
        assert!(!membership(&w("g0 g1"), &s).member);
        assert!(membership(&w("g0 g0"), &s).member);
    }

    #[test]
    fn preimages_multiply_out() {
        let gens = [w("g0 g1 g0^-1"), w("g0 g0"), w("g1 g0 g1"), w("g1^-1 g0 g1^-1 g0")];
        let s = fold(&gens, 2);
        for x in all_words(2, 6) {
            let m = membership(&x, &s);
            if let Some(u) = m.preimage {
                assert_eq!(u.substitute(&gens), x, "preimage of {x}");
            }
        }
    }

    #[test]
    fn core_prunes_hanging_trees() {
        let s = fold(&[w("g0 g1 g0^-1")], 2);
        assert_eq!(s.vertex_count(), 2);
        assert!(s.is_core());
        // Base-hanging edge stays; only non-base leaves are pruned.
        assert_eq!(s.core(), s);
        let wide = StallingsGraph::from_action(1, &[vec![1], vec![2], vec![0]]);
        assert_eq!(wide.index(), Some(3));
        assert_eq!(wide, fold(&[w("g0 g0 g0")], 1));
    }

    #[test]
    fn parallel_fold_drops_duplicate() {
        let s = fold(&[w("g0"), w("g0")], 1);
        assert_eq!(s.edge_count(), 1);
        let m = membership(&w("g0"), &s);
        assert_eq!(m.preimage.unwrap().substitute(&[w("g0"), w("g0")]), w("g0"));
    }

    #[test]
    fn completions_contain_the_subgroup() {
        let cases: [(&[&str], usize); 5] = [
            (&["g0"], 2),
            (&["g0 g0"], 2),
            (&["g0 g1 g0^-1"], 2),
            (&["g0 g0", "g1"], 2),
            (&["g0 g0 g0", "g1 g0 g1^-1"], 2),
        ];
        for (gens, rank) in cases {
            let gens: Vec<Word> = gens.iter().map(|g| w(g)).collect();
            let h = fold(&gens, rank).core();
            let rep = h.finite_completion().expect("proper subgroup");
            assert!(rep.is_transitive());
            assert!(rep.sheets() >= 2);
            for g in &gens {
                assert_eq!(rep.act(0, g), 0, "{g}");
            }
        }
        assert!(fold(&[w("g0"), w("g1")], 2).finite_completion().is_none());
        let third = fold(&[w("g0 g0 g0")], 1).core().finite_completion().unwrap();
        assert_eq!(third.sheets(), 3);
    }

    #[test]
    fn basis_refolds_to_the_same_graph() {
        let cases: [(&[&str], usize); 4] = [
            (&["g0 g0", "g1", "g0 g1 g0^-1"], 2),
            (&["g0 g1 g0^-1 g1^-1"], 2),
            (&["g0 g0 g0", "g1 g0 g1^-1", "g1 g1"], 2),
            (&["g0", "g1"], 2),
        ];
        for (gens, rank) in cases {
            let gens: Vec<Word> = gens.iter().map(|g| w(g)).collect();
            let h = fold(&gens, rank).core();
            let basis = h.basis();
            assert_eq!(basis.len(), h.subgroup_rank());
            assert_eq!(fold(&basis, rank).core(), h);
        }
    }
}
