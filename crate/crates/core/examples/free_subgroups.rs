//! Reads a subgroup of F_2 off a covering graph, folds it, and tests words
//! for membership.

use std::sync::Arc;

use pullcov::cover::Category;
use pullcov::graph::VertexId;
use pullcov::pi1::{based_transitive_reps, cover_from_perm_rep, cover_subgroup, fold, membership, pi1, Word};
use pullcov::shapes::rose;

fn main() -> pullcov::Result<()> {
    // <a^2, b, aba^-1>, the index-2 subgroup missed by R2 -> R1
    let gens: Vec<Word> = ["g0 g0", "g1", "g0 g1 g0^-1"].iter().map(|s| s.parse().unwrap()).collect();
    let h = fold(&gens, 2).core();
    println!("<a^2, b, aba^-1>: index {:?}, rank {}", h.index(), h.subgroup_rank());
    for w in ["g0", "g0 g1 g0", "g1 g0 g0 g1^-1", "g0^-1 g1 g0"] {
        let w: Word = w.parse().unwrap();
        let m = membership(&w, &h);
        match m.preimage {
            Some(pre) => println!("  [{w}] is in, as {pre}"),
            None => println!("  [{w}] is not in"),
        }
    }

    // every index-3 subgroup as a 3-sheeted cover of the rose
    let r2 = Arc::new(rose("R2", 2));
    let pres = pi1(&r2, VertexId::new(0))?;
    let reps = based_transitive_reps(2, 3);
    println!("{} subgroups of index 3", reps.len());
    for rep in reps.iter().take(4) {
        let p = cover_from_perm_rep(&pres, rep, Category::BCov)?;
        let s = cover_subgroup(&p, p.basepoint().unwrap())?;
        let basis: Vec<String> = s.basis().iter().map(|w| format!("[{w}]")).collect();
        println!("  {} -> basis {}", rep.code(), basis.join(" "));
    }
    Ok(())
}
