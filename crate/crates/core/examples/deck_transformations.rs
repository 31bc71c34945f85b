//! Morphisms between covers of a triangle in each of the four categories.
//! The 3-fold cyclic cover has three deck transformations, only the
//! identity keeps the basepoint.

use pullcov::cover::{validate_cover, Category};
use pullcov::functor::enumerate_hom;
use pullcov::graph::VertexId;
use pullcov::report;
use pullcov::shapes::cycle_wrap;

fn main() -> pullcov::Result<()> {
    let wrap = cycle_wrap(9, 3);
    let c9 = validate_cover(wrap.clone(), Category::BSCov, Some(VertexId::new(0)))?;
    let c3 = validate_cover(cycle_wrap(3, 3), Category::BSCov, Some(VertexId::new(0)))?;
    for cat in Category::ALL {
        let p = c9.with_category(cat)?;
        print!("{}", report::hom_set("C9", "C9", &enumerate_hom(&p, &p, cat)?));
        let q = c3.with_category(cat)?;
        println!("  C9 -> C3: {}, C3 -> C9: {}", enumerate_hom(&p, &q, cat)?.len(), enumerate_hom(&q, &p, cat)?.len());
    }
    Ok(())
}
