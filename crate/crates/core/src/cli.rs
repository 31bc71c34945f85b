//! The `pullcov` command line. [`run`] takes the arguments and the two
//! output streams and returns the exit code, so it can be driven in tests.
//!
//! Exit codes: 0 success, 1 validation or parse failure, 2 triad
//! inconsistency, 3 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::cover::Category;
use crate::error::Error;
use crate::format::{write_cover, write_graph, write_morphism, Entry, Workspace};
use crate::functor::{corpus_map, corpus_maps, enumerate_hom, triad, Bounds, TriadReport};
use crate::graph::GraphMorphism;
use crate::pi1::Word;
use crate::pullback::pullback;
use crate::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "pullcov", version, about = "Pullbacks of graph coverings and the connectivity/functor triad")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate graph, morphism and cover files.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Pull a cover back along a morphism; writes total.txt, base.txt and
    /// top.txt into the output directory.
    Pullback {
        map_file: PathBuf,
        cover_file: PathBuf,
        out_dir: PathBuf,
        /// Morphism to pull back along (default: the last one in MAP_FILE).
        #[arg(long)]
        map: Option<String>,
        /// Cover to pull back (default: the last one in COVER_FILE).
        #[arg(long)]
        cover: Option<String>,
    },
    /// Fundamental groups of graphs, induced maps of morphisms and the
    /// subgroups of covers.
    Pi1 {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Test this word (`g0 g1^-1 ...`) for membership in each cover's group.
        #[arg(long)]
        word: Option<String>,
    },
    /// Enumerate the morphisms between two covers over one base.
    Hom {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        category: CategoryArg,
    },
    /// Compare what a morphism does on π₀ and π₁ with faithfulness,
    /// fullness and essential surjectivity of its pullback functor.
    Triad {
        files: Vec<PathBuf>,
        /// Only this morphism from the files.
        #[arg(long)]
        map: Option<String>,
        /// A built-in map by name, or `all` for the whole corpus.
        #[arg(long)]
        corpus: Option<String>,
        #[command(flatten)]
        category: CategoryArg,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
}

#[derive(Args, Debug)]
struct CategoryArg {
    /// cov, scov, bcov, bscov or all.
    #[arg(long, default_value = "cov")]
    category: String,
}

impl CategoryArg {
    fn categories(&self) -> Result<Vec<Category>, String> {
        if self.category == "all" {
            return Ok(Category::ALL.to_vec());
        }
        Ok(vec![self.category.parse()?])
    }
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long, default_value_t = 3)]
    max_sheets: usize,
    #[arg(long, default_value_t = 12)]
    word_length: usize,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Reasons a command stops early, with their exit codes.
enum Failure {
    Invalid(Vec<String>),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.lines())
    }
}

fn load(ws: &mut Workspace, path: &Path) -> Result<Vec<Entry>, Failure> {
    ws.load_file(path).map_err(|e| {
        let name = path.display();
        Failure::Invalid(e.lines().into_iter().map(|l| format!("{name}: {l}")).collect())
    })
}

fn load_all(files: &[PathBuf]) -> Result<Workspace, Failure> {
    let mut ws = Workspace::new();
    for path in files {
        load(&mut ws, path)?;
    }
    Ok(ws)
}

fn lookup<T>(r: crate::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Usage(e.to_string()))
}

/// Runs `pullcov` with `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let mut text = String::new();
    let result = match cli.command {
        Command::Validate { files } => validate(&files, &mut text),
        Command::Pullback {
            map_file,
            cover_file,
            out_dir,
            map,
            cover,
        } => cmd_pullback(&map_file, &cover_file, &out_dir, map, cover, &mut text),
        Command::Pi1 { files, word } => cmd_pi1(&files, word, &mut text),
        Command::Hom {
            files,
            from,
            to,
            category,
        } => cmd_hom(&files, &from, &to, &category, &mut text),
        Command::Triad {
            files,
            map,
            corpus,
            category,
            bounds,
        } => cmd_triad(&files, map, corpus, &category, &bounds, &mut text),
    };
    let _ = out.write_all(text.as_bytes());
    match result {
        Ok(code) => code,
        Err(Failure::Invalid(lines)) => {
            for l in lines {
                let _ = writeln!(err, "{l}");
            }
            EXIT_INVALID
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "usage: {m}");
            EXIT_USAGE
        }
    }
}

fn validate(files: &[PathBuf], out: &mut String) -> Result<i32, Failure> {
    let mut ws = Workspace::new();
    let mut failures = Vec::new();
    for path in files {
        match load(&mut ws, path) {
            Ok(entries) => {
                for e in entries {
                    let line = match e {
                        Entry::Graph(n) => {
                            let g = lookup(ws.graph(&n))?;
                            format!("graph {n}: {} vertices, {} edges", g.vertex_count(), g.edge_count())
                        }
                        Entry::Morphism(n) => {
                            let f = lookup(ws.morphism(&n))?;
                            format!("morphism {n}: {} -> {}", f.source().name(), f.target().name())
                        }
                        Entry::Cover(n) => {
                            let p = lookup(ws.cover(&n))?;
                            format!("cover {n}: {} -> {} ({})", p.total().name(), p.base().name(), p.category())
                        }
                    };
                    out.push_str(&format!("{}: ok {line}\n", path.display()));
                }
            }
            Err(Failure::Invalid(lines)) => failures.extend(lines),
            Err(other) => return Err(other),
        }
    }
    if failures.is_empty() {
        Ok(EXIT_OK)
    } else {
        Err(Failure::Invalid(failures))
    }
}

fn cmd_pullback(
    map_file: &Path,
    cover_file: &Path,
    out_dir: &Path,
    map: Option<String>,
    cover: Option<String>,
    out: &mut String,
) -> Result<i32, Failure> {
    let mut ws = Workspace::new();
    let map_entries = load(&mut ws, map_file)?;
    let cover_entries = load(&mut ws, cover_file)?;
    let map_name = match map {
        Some(n) => n,
        None => map_entries
            .iter()
            .rev()
            .find_map(|e| match e {
                Entry::Morphism(n) => Some(n.clone()),
                _ => None,
            })
            .ok_or_else(|| Failure::Usage(format!("{} defines no morphism", map_file.display())))?,
    };
    let cover_name = match cover {
        Some(n) => n,
        None => cover_entries
            .iter()
            .rev()
            .find_map(|e| match e {
                Entry::Cover(n) => Some(n.clone()),
                _ => None,
            })
            .ok_or_else(|| Failure::Usage(format!("{} defines no cover", cover_file.display())))?,
    };
    let f = lookup(ws.morphism(&map_name))?.clone();
    let p = lookup(ws.cover(&cover_name))?.clone();
    let pb = pullback(&f, &p)?;
    let base_name = format!("{map_name}*{cover_name}");
    let top_name = format!("{base_name}.top");
    let total = pb.total();
    let total_text = write_graph(total, &pb.basepoint().into_iter().collect::<Vec<_>>())?;
    // each file carries the graphs it refers to
    let x = f.source();
    let e = p.total();
    let files = [
        ("total.txt", total_text.clone()),
        (
            "base.txt",
            format!("{}\n{}", write_graph(x, x.bases())?, write_cover(&base_name, pb.proj_base())?),
        ),
        (
            "top.txt",
            format!(
                "{}\n{}\n{}",
                write_graph(e, e.bases())?,
                total_text,
                write_morphism(&top_name, pb.proj_top())?
            ),
        ),
    ];
    std::fs::create_dir_all(out_dir).map_err(Error::from)?;
    for (file, text) in &files {
        std::fs::write(out_dir.join(file), text).map_err(Error::from)?;
    }
    out.push_str(&report::pullback(&pb));
    for (file, _) in &files {
        out.push_str(&format!("  wrote {}\n", out_dir.join(file).display()));
    }
    Ok(EXIT_OK)
}

fn cmd_pi1(files: &[PathBuf], word: Option<String>, out: &mut String) -> Result<i32, Failure> {
    let word: Option<Word> = match word {
        Some(w) => Some(w.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?),
        None => None,
    };
    let ws = load_all(files)?;
    for (_, g) in ws.graphs() {
        out.push_str(&report::presentation(g)?);
    }
    for (name, f) in ws.morphisms() {
        out.push_str(&report::induced(name, f)?);
    }
    for (name, p) in ws.covers() {
        out.push_str(&report::cover_group(name, p, word.as_ref())?);
    }
    Ok(EXIT_OK)
}

fn cmd_hom(files: &[PathBuf], from: &str, to: &str, category: &CategoryArg, out: &mut String) -> Result<i32, Failure> {
    let categories = category.categories().map_err(Failure::Usage)?;
    let ws = load_all(files)?;
    let p = lookup(ws.cover(from))?;
    let q = lookup(ws.cover(to))?;
    for c in categories {
        let p = p.with_category(c)?;
        let q = q.with_category(c)?;
        let hom = enumerate_hom(&p, &q, c)?;
        out.push_str(&report::hom_set(from, to, &hom));
    }
    Ok(EXIT_OK)
}

/// Rechecks every witness in the report; returns how many were checked and
/// how many held.
fn verify_witnesses(f: &GraphMorphism, r: &TriadReport) -> crate::Result<(usize, usize)> {
    let mut checked = 0;
    let mut held = 0;
    for cat in &r.categories {
        let c = cat.category;
        let mut results = Vec::new();
        for w in [&cat.faithful.construction, &cat.faithful.search].into_iter().flatten() {
            results.push(w.verify(f, c)?);
        }
        for w in [&cat.full.construction, &cat.full.search].into_iter().flatten() {
            results.push(w.verify(f, c)?);
        }
        for w in &cat.essential.witnesses {
            results.push(w.verify(f, c)?);
        }
        checked += results.len();
        held += results.iter().filter(|&&b| b).count();
    }
    Ok((checked, held))
}

fn cmd_triad(
    files: &[PathBuf],
    map: Option<String>,
    corpus: Option<String>,
    category: &CategoryArg,
    bounds: &BoundsArgs,
    out: &mut String,
) -> Result<i32, Failure> {
    let categories = category.categories().map_err(Failure::Usage)?;
    let bounds = Bounds {
        max_sheets: bounds.max_sheets,
        word_length: bounds.word_length,
        samples: bounds.samples,
        seed: bounds.seed,
    };
    let mut maps: Vec<(String, GraphMorphism)> = Vec::new();
    match corpus.as_deref() {
        Some("all") => maps.extend(corpus_maps().into_iter().map(|m| (m.name, m.f))),
        Some(name) => {
            let m = corpus_map(name).ok_or_else(|| Failure::Usage(format!("no corpus map named `{name}`")))?;
            maps.push((m.name, m.f));
        }
        None => {}
    }
    let ws = load_all(files)?;
    match &map {
        Some(n) => maps.push((n.clone(), lookup(ws.morphism(n))?.clone())),
        None => maps.extend(ws.morphisms().map(|(n, f)| (n.to_string(), f.clone()))),
    }
    if maps.is_empty() {
        return Err(Failure::Usage("no morphism to analyse (give files or --corpus)".into()));
    }
    let mut code = EXIT_OK;
    for (i, (name, f)) in maps.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let r = triad(f, &categories, &bounds)?;
        out.push_str(&report::triad(name, f, &r));
        let (checked, held) = verify_witnesses(f, &r)?;
        out.push_str(&format!("witnesses verified {held}/{checked}\n"));
        if !r.consistent() || held != checked {
            code = EXIT_INCONSISTENT;
        }
    }
    Ok(code)
}
