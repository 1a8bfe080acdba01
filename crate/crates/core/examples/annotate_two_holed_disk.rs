//! Annotations on a disk with two holes.
//!
//! The edges outside the breadth-first tree are e1 = 14, e2 = 12, e3 = 23 and
//! e4 = 13. The cycles of e2 and e3 form the homology basis, so e4, whose
//! cycle winds around both holes, is annotated (1, 1).

use simplex_annotations::generate::two_holed_disk;
use simplex_annotations::{AnnotationIndex, Chain, SimplicialComplex};

fn edge_chain(k: &SimplicialComplex, edges: &[[u32; 2]]) -> Chain {
    k.chain_from_simplices(edges).expect("edges exist")
}

fn main() -> simplex_annotations::Result<()> {
    let k = two_holed_disk();
    let idx = AnnotationIndex::build(&k, 1)?;
    println!("beta_1 = {}", idx.betti());
    for (e, edge) in k.simplices(1).iter().enumerate() {
        let role = if idx.sentinel_structure().is_sentinel(e) {
            "sentinel"
        } else {
            "tree"
        };
        println!("{edge:?}\t{role}\tann = {}", idx.annotation(e));
    }
    for (i, z) in idx.homology_basis().iter().enumerate() {
        let edges: Vec<_> = z.simplices(&k).collect();
        println!("basis cycle {i}: {edges:?}");
    }

    let triangle = edge_chain(&k, &[[1, 2], [2, 3], [1, 3]]);
    println!("e2 + e3 + e4 annotates to {}", idx.annotate_cycle(&triangle)?);
    let outer = edge_chain(&k, &[[0, 3], [1, 3], [1, 4], [0, 4]]);
    let holes = idx.homology_basis()[0].add(&idx.homology_basis()[1])?;
    println!(
        "outer boundary {} vs sum of holes {}",
        idx.annotate_cycle(&outer)?,
        idx.annotate_cycle(&holes)?
    );
    Ok(())
}
