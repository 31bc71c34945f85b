//! Builds a cover in memory, writes it in the text format and reads it back.

use pullcov::cover::{validate_cover, Category};
use pullcov::format::{parse, Workspace};
use pullcov::graph::VertexId;
use pullcov::shapes::cycle_wrap;

fn main() -> pullcov::Result<()> {
    let p = validate_cover(cycle_wrap(6, 3), Category::BCov, Some(VertexId::new(0)))?;
    let mut ws = Workspace::new();
    ws.add_graph(p.base().clone())?;
    ws.add_cover("double", p)?;
    let text = ws.to_text()?;
    print!("{text}");

    let back = parse(&text)?;
    let q = back.cover("double")?;
    println!("# read back: {} over {}, {}", q.total().name(), q.base().name(), q.category());

    match parse("graph G\nv a\nd x a x\n") {
        Ok(_) => println!("# unexpectedly valid"),
        Err(e) => e.lines().iter().for_each(|l| println!("# {l}")),
    }
    Ok(())
}
