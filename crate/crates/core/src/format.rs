//! Line-based text format for graphs, morphisms and covers, and the
//! [`Workspace`] that holds what has been loaded.
//!
//! ```text
//! graph C3
//! v 0
//! v 1
//! v 2
//! e a 0 1          # darts a+ (at 0) and a- (at 1)
//! e b 1 2
//! e c 2 0
//! base 0
//!
//! morphism wrap : C6 -> C3
//! vmap 0 0
//! emap a a +       # `-` reverses orientation
//!
//! category cov     # after a morphism block: the morphism is a cover
//! ```
//!
//! A raw dart line `d <did> <vid> <did>` gives a dart, its origin and its
//! reverse directly; it exists so that broken involutions can be written
//! down and rejected by validation.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::cover::{validate_cover, Category, CoveringMap};
use crate::error::{Error, Result};
use crate::graph::{components, validate_graph, DartDescription, DartId, Graph, GraphDescription, GraphMorphism, VertexId};

/// What a loaded block registered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Graph(String),
    Morphism(String),
    Cover(String),
}

/// Named graphs, morphisms and covers, in load order.
///
/// Graph names are unique among graphs; morphism and cover names share one
/// namespace. Loading a graph identical to one already present is a no-op.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    graphs: BTreeMap<String, Arc<Graph>>,
    morphisms: BTreeMap<String, GraphMorphism>,
    covers: BTreeMap<String, CoveringMap>,
    order: Vec<Entry>,
}

fn at(line: usize, e: Error) -> Error {
    match e {
        Error::At { .. } | Error::Parse { .. } => e,
        other => Error::At {
            line,
            source: Box::new(other),
        },
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

struct GraphBlock {
    line: usize,
    desc: GraphDescription,
}

struct MorphismBlock {
    line: usize,
    name: String,
    source: String,
    target: String,
    vmap: Vec<(usize, String, String)>,
    emap: Vec<(usize, String, String, bool)>,
    category: Option<(usize, Category)>,
}

enum Block {
    Graph(GraphBlock),
    Morphism(MorphismBlock),
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn graph(&self, name: &str) -> Result<&Arc<Graph>> {
        self.graphs
            .get(name)
            .ok_or_else(|| Error::Workspace(format!("no graph named `{name}`")))
    }

    pub fn morphism(&self, name: &str) -> Result<&GraphMorphism> {
        self.morphisms
            .get(name)
            .ok_or_else(|| Error::Workspace(format!("no morphism named `{name}`")))
    }

    pub fn cover(&self, name: &str) -> Result<&CoveringMap> {
        self.covers
            .get(name)
            .ok_or_else(|| Error::Workspace(format!("no cover named `{name}`")))
    }

    pub fn entries(&self) -> &[Entry] {
        &self.order
    }

    pub fn graphs(&self) -> impl Iterator<Item = (&str, &Arc<Graph>)> {
        self.order.iter().filter_map(|e| match e {
            Entry::Graph(n) => Some((n.as_str(), &self.graphs[n])),
            _ => None,
        })
    }

    pub fn morphisms(&self) -> impl Iterator<Item = (&str, &GraphMorphism)> {
        self.order.iter().filter_map(|e| match e {
            Entry::Morphism(n) => Some((n.as_str(), &self.morphisms[n])),
            _ => None,
        })
    }

    pub fn covers(&self) -> impl Iterator<Item = (&str, &CoveringMap)> {
        self.order.iter().filter_map(|e| match e {
            Entry::Cover(n) => Some((n.as_str(), &self.covers[n])),
            _ => None,
        })
    }

    /// Registers a graph under its own name.
    pub fn add_graph(&mut self, g: Arc<Graph>) -> Result<Arc<Graph>> {
        check_token("graph name", g.name())?;
        if let Some(old) = self.graphs.get(g.name()) {
            if **old == *g && old.bases() == g.bases() {
                return Ok(old.clone());
            }
            return Err(Error::Workspace(format!("graph `{}` is already defined differently", g.name())));
        }
        self.graphs.insert(g.name().to_string(), g.clone());
        self.order.push(Entry::Graph(g.name().to_string()));
        Ok(g)
    }

    fn check_free(&self, name: &str) -> Result<()> {
        check_token("morphism name", name)?;
        if self.morphisms.contains_key(name) || self.covers.contains_key(name) {
            return Err(Error::Workspace(format!("`{name}` is already defined")));
        }
        Ok(())
    }

    /// Registers a morphism; its graphs are registered too if absent.
    pub fn add_morphism(&mut self, name: &str, f: GraphMorphism) -> Result<()> {
        self.check_free(name)?;
        self.add_graph(f.source().clone())?;
        self.add_graph(f.target().clone())?;
        self.morphisms.insert(name.to_string(), f);
        self.order.push(Entry::Morphism(name.to_string()));
        Ok(())
    }

    /// Registers a cover; its graphs are registered too if absent.
    pub fn add_cover(&mut self, name: &str, p: CoveringMap) -> Result<()> {
        self.check_free(name)?;
        self.add_graph(p.base().clone())?;
        self.add_graph(Arc::new(with_cover_bases(&p)))?;
        self.covers.insert(name.to_string(), p);
        self.order.push(Entry::Cover(name.to_string()));
        Ok(())
    }

    pub fn load_file(&mut self, path: impl AsRef<Path>) -> Result<Vec<Entry>> {
        let text = std::fs::read_to_string(path)?;
        self.load_str(&text)
    }

    /// Parses and validates every block of `text`, registering each in turn.
    /// Blocks before a failing one stay registered.
    pub fn load_str(&mut self, text: &str) -> Result<Vec<Entry>> {
        let before = self.order.len();
        let mut pending: Option<Block> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let Some((&keyword, args)) = tokens.split_first() else {
                continue;
            };
            match keyword {
                "graph" => {
                    let [name] = args else {
                        return Err(parse_error(line, "expected `graph <name>`"));
                    };
                    self.finish(pending.take())?;
                    pending = Some(Block::Graph(GraphBlock {
                        line,
                        desc: GraphDescription {
                            name: name.to_string(),
                            ..Default::default()
                        },
                    }));
                }
                "morphism" => {
                    let [name, ":", source, "->", target] = args else {
                        return Err(parse_error(line, "expected `morphism <name> : <graph> -> <graph>`"));
                    };
                    self.finish(pending.take())?;
                    pending = Some(Block::Morphism(MorphismBlock {
                        line,
                        name: name.to_string(),
                        source: source.to_string(),
                        target: target.to_string(),
                        vmap: Vec::new(),
                        emap: Vec::new(),
                        category: None,
                    }));
                }
                "v" | "e" | "d" | "base" => {
                    let Some(Block::Graph(g)) = pending.as_mut() else {
                        return Err(parse_error(line, format!("`{keyword}` outside a graph block")));
                    };
                    match (keyword, args) {
                        ("v", [v]) => g.desc.vertices.push(v.to_string()),
                        ("e", [e, u, v]) => {
                            g.desc.darts.push(DartDescription {
                                name: format!("{e}+"),
                                origin: u.to_string(),
                                reverse: format!("{e}-"),
                            });
                            g.desc.darts.push(DartDescription {
                                name: format!("{e}-"),
                                origin: v.to_string(),
                                reverse: format!("{e}+"),
                            });
                        }
                        ("d", [d, o, r]) => g.desc.darts.push(DartDescription {
                            name: d.to_string(),
                            origin: o.to_string(),
                            reverse: r.to_string(),
                        }),
                        ("base", [v]) => g.desc.bases.push(v.to_string()),
                        _ => return Err(parse_error(line, format!("wrong number of fields for `{keyword}`"))),
                    }
                }
                "vmap" | "emap" | "category" => {
                    let Some(Block::Morphism(m)) = pending.as_mut() else {
                        return Err(parse_error(line, format!("`{keyword}` outside a morphism block")));
                    };
                    match (keyword, args) {
                        ("vmap", [a, b]) => m.vmap.push((line, a.to_string(), b.to_string())),
                        ("emap", [a, b, sign]) => {
                            let positive = match *sign {
                                "+" => true,
                                "-" => false,
                                other => return Err(parse_error(line, format!("orientation `{other}` is not + or -"))),
                            };
                            m.emap.push((line, a.to_string(), b.to_string(), positive));
                        }
                        ("category", [c]) => {
                            if m.category.is_some() {
                                return Err(parse_error(line, "second `category` line"));
                            }
                            let c: Category = c.parse().map_err(|e: String| parse_error(line, e))?;
                            m.category = Some((line, c));
                        }
                        _ => return Err(parse_error(line, format!("wrong number of fields for `{keyword}`"))),
                    }
                }
                other => return Err(parse_error(line, format!("unknown keyword `{other}`"))),
            }
        }
        self.finish(pending)?;
        Ok(self.order[before..].to_vec())
    }

    fn finish(&mut self, block: Option<Block>) -> Result<()> {
        match block {
            None => Ok(()),
            Some(Block::Graph(g)) => {
                let graph = validate_graph(&g.desc).map_err(|e| at(g.line, e))?;
                self.add_graph(Arc::new(graph)).map_err(|e| at(g.line, e))?;
                Ok(())
            }
            Some(Block::Morphism(m)) => self.finish_morphism(m),
        }
    }

    fn finish_morphism(&mut self, m: MorphismBlock) -> Result<()> {
        let line = m.line;
        let source = self.graph(&m.source).map_err(|e| at(line, e))?.clone();
        let target = self.graph(&m.target).map_err(|e| at(line, e))?.clone();

        let mut vertex_map: Vec<Option<VertexId>> = vec![None; source.vertex_count()];
        for (l, a, b) in &m.vmap {
            let v = source.vertex(a).map_err(|e| at(*l, e))?;
            let w = target.vertex(b).map_err(|e| at(*l, e))?;
            if vertex_map[v.index()].replace(w).is_some() {
                return Err(parse_error(*l, format!("vertex {a} mapped twice")));
            }
        }
        let mut dart_map: Vec<Option<DartId>> = vec![None; source.dart_count()];
        for (l, a, b, positive) in &m.emap {
            let d = resolve_edge(&source, a).ok_or_else(|| parse_error(*l, format!("unknown edge {a}")))?;
            let t = resolve_edge(&target, b).ok_or_else(|| parse_error(*l, format!("unknown edge {b}")))?;
            let t = if *positive { t } else { target.reverse(t) };
            if dart_map[d.index()].replace(t).is_some() || dart_map[source.reverse(d).index()].is_some() {
                return Err(parse_error(*l, format!("edge {a} mapped twice")));
            }
            dart_map[source.reverse(d).index()] = Some(target.reverse(t));
        }
        let vertex_map = source
            .vertices()
            .map(|v| vertex_map[v.index()].ok_or_else(|| parse_error(line, format!("no vmap for vertex {}", source.vertex_name(v)))))
            .collect::<Result<Vec<_>>>()?;
        let dart_map = source
            .darts()
            .map(|d| {
                dart_map[d.index()].ok_or_else(|| {
                    parse_error(line, format!("no emap for edge {}", edge_key(&source, source.positive_dart(d))))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let f = GraphMorphism::new(source.clone(), target, vertex_map, dart_map).map_err(|e| at(line, e))?;

        match m.category {
            None => self.add_morphism(&m.name, f).map_err(|e| at(line, e)),
            Some((cline, category)) => {
                let e0 = if category.is_based() {
                    let b = source.bases().first().copied().ok_or_else(|| {
                        at(
                            cline,
                            Error::MissingBasepoint(format!("{category} cover needs a `base` line in graph {}", source.name())),
                        )
                    })?;
                    Some(b)
                } else {
                    None
                };
                let p = validate_cover(f, category, e0).map_err(|e| at(cline, e))?;
                self.add_cover(&m.name, p).map_err(|e| at(line, e))
            }
        }
    }

    /// The whole workspace in load order, in canonical form.
    pub fn to_text(&self) -> Result<String> {
        let mut out = String::new();
        for (i, e) in self.order.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            match e {
                Entry::Graph(n) => {
                    let g = &self.graphs[n];
                    out += &write_graph(g, g.bases())?;
                }
                Entry::Morphism(n) => out += &write_morphism(n, &self.morphisms[n])?,
                Entry::Cover(n) => {
                    let p = &self.covers[n];
                    out += &write_morphism(n, p.projection())?;
                    writeln!(out, "category {}", p.category()).unwrap();
                }
            }
        }
        Ok(out)
    }
}

/// The total graph of `p` with the cover's basepoint listed first among
/// its declared bases.
fn with_cover_bases(p: &CoveringMap) -> Graph {
    let total = p.total();
    let Some(e0) = p.basepoint() else {
        return (**total).clone();
    };
    if total.bases().first() == Some(&e0) {
        return (**total).clone();
    }
    let parts = components(total);
    let mut bases = vec![e0];
    bases.extend(total.bases().iter().copied().filter(|&b| !parts.same_component(b, e0)));
    (**total).clone().with_bases(bases).expect("one base per component")
}

fn check_token(what: &str, s: &str) -> Result<()> {
    if s.is_empty() || s.contains(char::is_whitespace) || s.contains('#') {
        return Err(Error::Workspace(format!("{what} `{s}` cannot be written as a single token")));
    }
    Ok(())
}

/// The positive dart of the edge written as `key`: `key+` if present,
/// otherwise a dart named `key`.
fn resolve_edge(g: &Graph, key: &str) -> Option<DartId> {
    g.dart_by_name(&format!("{key}+")).or_else(|| g.dart_by_name(key))
}

/// How an edge is referred to in `emap` lines.
fn edge_key(g: &Graph, positive: DartId) -> String {
    let (stem, _) = g.edge_label(positive);
    if g.dart_name(positive) == format!("{stem}+") {
        stem
    } else {
        g.dart_name(positive).to_string()
    }
}

/// A graph block. Edges whose darts follow the `X+`/`X-` convention are
/// written as `e` lines, others as pairs of `d` lines.
pub fn write_graph(g: &Graph, bases: &[VertexId]) -> Result<String> {
    check_token("graph name", g.name())?;
    let mut out = String::new();
    writeln!(out, "graph {}", g.name()).unwrap();
    for v in g.vertices() {
        check_token("vertex", g.vertex_name(v))?;
        writeln!(out, "v {}", g.vertex_name(v)).unwrap();
    }
    for d in g.edges() {
        let pd = g.positive_dart(d);
        let rd = g.reverse(pd);
        let (stem, _) = g.edge_label(pd);
        if g.dart_name(pd) == format!("{stem}+") && g.dart_name(rd) == format!("{stem}-") {
            check_token("edge", &stem)?;
            writeln!(out, "e {stem} {} {}", g.vertex_name(g.origin(pd)), g.vertex_name(g.origin(rd))).unwrap();
        } else {
            for x in [pd, rd] {
                check_token("dart", g.dart_name(x))?;
                writeln!(
                    out,
                    "d {} {} {}",
                    g.dart_name(x),
                    g.vertex_name(g.origin(x)),
                    g.dart_name(g.reverse(x))
                )
                .unwrap();
            }
        }
    }
    for &b in bases {
        writeln!(out, "base {}", g.vertex_name(b)).unwrap();
    }
    Ok(out)
}

/// A morphism block, without the graphs it refers to.
pub fn write_morphism(name: &str, f: &GraphMorphism) -> Result<String> {
    check_token("morphism name", name)?;
    let (x, y) = (f.source(), f.target());
    let mut out = String::new();
    writeln!(out, "morphism {name} : {} -> {}", x.name(), y.name()).unwrap();
    for v in x.vertices() {
        writeln!(out, "vmap {} {}", x.vertex_name(v), y.vertex_name(f.vertex(v))).unwrap();
    }
    for d in x.edges() {
        let pd = x.positive_dart(d);
        let image = f.dart(pd);
        let positive = y.positive_dart(image) == image;
        let sign = if positive { '+' } else { '-' };
        writeln!(out, "emap {} {} {sign}", edge_key(x, pd), edge_key(y, y.positive_dart(image))).unwrap();
    }
    Ok(out)
}

/// A self-contained cover file: the total graph, the projection and the
/// category. The base graph is referred to by name.
pub fn write_cover(name: &str, p: &CoveringMap) -> Result<String> {
    let total = with_cover_bases(p);
    let mut out = write_graph(&total, total.bases())?;
    out.push('\n');
    out += &write_morphism(name, p.projection())?;
    writeln!(out, "category {}", p.category()).unwrap();
    Ok(out)
}

/// Parses `text` into a fresh workspace.
pub fn parse(text: &str) -> Result<Workspace> {
    let mut ws = Workspace::new();
    ws.load_str(text)?;
    Ok(ws)
}

type GraphKey = (String, Vec<String>, BTreeMap<String, (String, String)>, Vec<String>);
type MapKey = (String, String, BTreeMap<String, String>, BTreeMap<String, String>);

fn graph_key(g: &Graph) -> GraphKey {
    let mut vertices: Vec<String> = g.vertices().map(|v| g.vertex_name(v).to_string()).collect();
    vertices.sort();
    let darts = g
        .darts()
        .map(|d| {
            let info = (g.vertex_name(g.origin(d)).to_string(), g.dart_name(g.reverse(d)).to_string());
            (g.dart_name(d).to_string(), info)
        })
        .collect();
    let bases = g.bases().iter().map(|&b| g.vertex_name(b).to_string()).collect();
    (g.name().to_string(), vertices, darts, bases)
}

fn map_key(f: &GraphMorphism) -> MapKey {
    let (x, y) = (f.source(), f.target());
    let vertices = x
        .vertices()
        .map(|v| (x.vertex_name(v).to_string(), y.vertex_name(f.vertex(v)).to_string()))
        .collect();
    let darts = x
        .darts()
        .map(|d| (x.dart_name(d).to_string(), y.dart_name(f.dart(d)).to_string()))
        .collect();
    (x.name().to_string(), y.name().to_string(), vertices, darts)
}

/// Equality of two workspaces by names: same entries, graphs with the same
/// named vertices, darts and bases, maps agreeing name by name, covers with
/// the same category and basepoint. Index order is not compared.
pub fn same_workspace(a: &Workspace, b: &Workspace) -> bool {
    let base_name = |p: &CoveringMap| p.basepoint().map(|e| p.total().vertex_name(e).to_string());
    a.order == b.order
        && a.graphs.len() == b.graphs.len()
        && a.graphs.iter().all(|(n, g)| b.graphs.get(n).is_some_and(|h| graph_key(g) == graph_key(h)))
        && a.morphisms.iter().all(|(n, f)| b.morphisms.get(n).is_some_and(|g| map_key(f) == map_key(g)))
        && a.covers.iter().all(|(n, p)| {
            b.covers.get(n).is_some_and(|q| {
                map_key(p.projection()) == map_key(q.projection())
                    && p.category() == q.category()
                    && base_name(p) == base_name(q)
            })
        })
}
