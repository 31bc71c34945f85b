//! Pulls the n-fold cover of a triangle back along the m-fold wrap and
//! counts what comes out: gcd(m, n) circles.
//!
//!     cargo run --example torus_link -- 4 6

use pullcov::cover::{is_trivial, validate_cover, Category};
use pullcov::graph::components;
use pullcov::pullback::pullback;
use pullcov::report;
use pullcov::shapes::cycle_wrap;

fn main() -> pullcov::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (m, n) = match args[..] {
        [m, n] => (m, n),
        _ => (4, 6),
    };
    let f = cycle_wrap(3 * m, 3);
    let p = validate_cover(cycle_wrap(3 * n, 3), Category::Cov, None)?;
    let pb = pullback(&f, &p)?;
    print!("{}", report::pullback(&pb));

    let parts = components(pb.total());
    println!("{} circles; f*(p) is {}", parts.count(), match is_trivial(pb.proj_base()) {
        Some(_) => "trivial",
        None => "not trivial",
    });
    Ok(())
}
