//! Shortest homology basis of the seven-vertex torus and of a randomly
//! weighted complex.

use simplex_annotations::generate::{random_2_complex, rng, torus7, Random2, Weights};
use simplex_annotations::{shortest_homology_basis, SimplicialComplex};

fn report(name: &str, k: &SimplicialComplex) -> simplex_annotations::Result<()> {
    let basis = shortest_homology_basis(k)?;
    println!("{name}: {} cycles, total weight {}", basis.len(), basis.total_weight);
    for c in &basis.cycles {
        let edges: Vec<_> = c.chain.simplices(k).collect();
        println!("  weight {} ann {} {edges:?}", c.weight, c.annotation);
    }
    Ok(())
}

fn main() -> simplex_annotations::Result<()> {
    report("torus", &torus7())?;
    let params = Random2 {
        vertices: 9,
        weights: Weights::Integer(1, 9),
        ..Random2::default()
    };
    report("random", &random_2_complex(&mut rng(11), params))
}
