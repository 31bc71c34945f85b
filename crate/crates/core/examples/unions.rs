//! Pullback commutes with disjoint unions, on either side.

use pullcov::cover::{validate_cover, Category};
use pullcov::graph::components;
use pullcov::pullback::{pullback_extrinsic_union, pullback_intrinsic_union, pullback_partitioned_union};
use pullcov::shapes::cycle_wrap;

fn main() -> pullcov::Result<()> {
    let f = cycle_wrap(6, 3);
    let covers = [1, 2, 3].map(|n| validate_cover(cycle_wrap(3 * n, 3), Category::Cov, None).unwrap());

    let ext = pullback_extrinsic_union(&f, &covers)?;
    println!(
        "f*(C3 + C6 + C9): {} vertices, iso to f*C3 + f*C6 + f*C9: {}",
        ext.target.total().vertex_count(),
        ext.iso.is_isomorphism()
    );

    let chain = pullback_partitioned_union(&f, &covers, &[vec![0, 2], vec![1]])?;
    println!("grouped as (C3 + C9) + C6: {}", chain.composite()?.is_isomorphism());

    let p = ext.union.cover.clone();
    let parts = components(p.total()).count();
    let blocks = [(0..parts).filter(|c| c % 2 == 0).collect(), (0..parts).filter(|c| c % 2 == 1).collect()];
    let split = pullback_intrinsic_union(&f, &p, &blocks)?;
    for (k, b) in split.blocks.iter().enumerate() {
        println!("block {k}: {} vertices", b.total().vertex_count());
    }
    Ok(())
}
