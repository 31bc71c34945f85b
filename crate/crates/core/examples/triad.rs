//! Runs the faithful/full/essentially surjective checker on corpus maps.
//!
//!     cargo run --example triad -- 'R2->R1'

use pullcov::cover::Category;
use pullcov::functor::{corpus_maps, triad, Bounds};
use pullcov::report;

fn main() -> pullcov::Result<()> {
    let wanted = std::env::args().nth(1);
    for m in corpus_maps() {
        if wanted.as_deref().map_or(m.name != "C6->C3" && m.name != "R2->R1", |w| w != m.name) {
            continue;
        }
        let r = triad(&m.f, &Category::ALL, &Bounds::default())?;
        print!("{}", report::triad(&m.name, &m.f, &r));
        println!();
    }
    Ok(())
}
